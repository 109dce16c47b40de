# IMPORTS
import logging as lgg
import math

import numpy as np

from .exceptions import Undetermined
from .structures import modules as md
from .structures import decomposition as dc


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
DEFAULT_CAP = 20


# CLASSES
class DimensionValue:
    """Homological dimension known exactly, only from below, or known to be
    infinite.

    Parameters
    ----------
    kind : str
        'exact', 'at_least' or 'infinite'.
    value : int, optional
        Dimension or its lower bound; ignored for 'infinite'."""

    kinds = ('exact', 'at_least', 'infinite')

    def __init__(self, kind, value=None):
        if kind not in self.kinds:
            raise ValueError(f"Unknown kind of dimension value: {kind!r}.")
        if kind != 'infinite' and value is None:
            raise ValueError(f"Dimension value of kind {kind} needs a value.")
        self.kind = kind
        self.value = None if kind == 'infinite' else int(value)

    @classmethod
    def exact(cls, value):
        return cls('exact', value)

    @classmethod
    def at_least(cls, value):
        return cls('at_least', value)

    @classmethod
    def infinite(cls):
        return cls('infinite')

    def __repr__(self):
        if self.kind == 'infinite':
            return 'DimensionValue.infinite()'
        return f'DimensionValue.{self.kind}({self.value})'

    def __str__(self):
        if self.kind == 'exact':
            return str(self.value)
        if self.kind == 'at_least':
            return f'>={self.value}'
        return 'inf'

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_exact and self.value == other
        if not isinstance(other, DimensionValue):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    @property
    def is_exact(self):
        return self.kind == 'exact'

    @property
    def is_finite(self):
        """True only if finiteness is certified."""
        return self.kind == 'exact'

    @property
    def lower(self):
        return math.inf if self.kind == 'infinite' else self.value

    @property
    def upper(self):
        return self.value if self.kind == 'exact' else math.inf

    def __add__(self, other):
        if isinstance(other, int):
            other = DimensionValue.exact(other)
        if 'infinite' in (self.kind, other.kind):
            return DimensionValue.infinite()
        kind = 'exact' if self.is_exact and other.is_exact else 'at_least'
        return DimensionValue(kind, self.value + other.value)

    __radd__ = __add__

    def __mul__(self, factor):
        if self.kind == 'infinite' or not factor:
            return DimensionValue.exact(0) if not factor else self
        return DimensionValue(self.kind, self.value * factor)

    __rmul__ = __mul__

    def to_dict(self):
        out = {'kind': self.kind}
        if self.value is not None:
            out['value'] = self.value
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(data['kind'], data.get('value'))


def dimension_max(values):
    """Supremum of dimension values; exact only if all of them are exact."""
    values = list(values)
    if not values:
        return DimensionValue.exact(0)
    if any(v.kind == 'infinite' for v in values):
        return DimensionValue.infinite()
    top = max(v.value for v in values)
    if all(v.is_exact for v in values):
        return DimensionValue.exact(top)
    return DimensionValue.at_least(top)


class Resolution:
    """Minimal projective resolution ... -> P1 -> P0 -> M -> 0.

    Terms are computed lazily as projective covers of successive syzygies;
    `status` tells what was established when the resolution was created:
    'terminated' (some syzygy vanished), 'periodic' (some syzygy is
    isomorphic to an earlier one, so the resolution never ends) or
    'truncated' (neither happened up to cap).

    Attributes
    ----------
    target : Module
    covers : list of modules.ModuleMap
        Projective cover of i-th syzygy, P_i -> syzygy_i.
    inclusions : list of modules.ModuleMap
        Inclusion of (i+1)-th syzygy into P_i.
    syzygies : list of Module
        Syzygies, starting with the target itself."""

    def __init__(self, target, cap=DEFAULT_CAP, seed=0,
                 tries=dc.DEFAULT_TRIES, exhaustive_cap=dc.EXHAUSTIVE_CAP):
        if cap < 0:
            raise ValueError("Cap of resolution must be nonnegative.")
        self.target = target
        self.cap = cap
        self.seed = seed
        self.tries = tries
        self.exhaustive_cap = exhaustive_cap
        self.syzygies = [target]
        self.covers = []
        self.inclusions = []
        self.status = 'truncated'
        self.period = None
        self.offset = None
        self._resolve()

    def __repr__(self):
        return f'<Resolution of {self.target.label or "?"} ' \
               f'status={self.status} terms={len(self.covers)}>'

    def _step(self):
        field = self.target.field
        current = self.syzygies[-1]
        cover = md.projective_cover_map(current)
        number = len(self.covers)
        kernel = md.submodule(
            cover.source, field.kernel_basis(cover.matrix),
            f'Omega^{number + 1}({self.target.label})'
        )
        self.covers.append(cover)
        self.inclusions.append(kernel)
        self.syzygies.append(kernel.source)
        return kernel.source

    def _resolve(self):
        if not self.target.dim:
            self.status = 'terminated'
            return
        for _ in range(self.cap + 1):
            syzygy = self._step()
            if not syzygy.dim:
                self.status = 'terminated'
                break
            for number, earlier in enumerate(self.syzygies[:-1]):
                same, _ = dc.is_isomorphic(
                    syzygy, earlier, self.seed, self.tries,
                    self.exhaustive_cap
                )
                if same:
                    self.status = 'periodic'
                    self.offset = number
                    self.period = len(self.syzygies) - 1 - number
                    break
            if self.status == 'periodic':
                break
        logger.debug(
            f"Resolution of {self.target.label or 'module'}: {self.status} "
            f"after {len(self.covers)} terms."
        )

    @property
    def length(self):
        """Number of nonzero terms minus one, for terminated resolutions."""
        if self.status != 'terminated':
            return None
        return len([c for c in self.covers if c.source.dim]) - 1 \
            if self.target.dim else 0

    @property
    def pd(self):
        if self.status == 'terminated':
            return DimensionValue.exact(self.length)
        if self.status == 'periodic':
            return DimensionValue.infinite()
        return DimensionValue.at_least(self.cap)

    def extend(self, depth):
        """Makes sure terms P_0...P_depth are computed."""
        while len(self.covers) <= depth:
            if self.status == 'terminated' and \
                    not self.syzygies[-1].dim:
                return
            self._step()

    def term(self, index):
        """Projective P_index as ProjectiveSum."""
        self.extend(index)
        if index >= len(self.covers):
            return md.ProjectiveSum(self.target.algebra, [], label='0')
        return self.covers[index].source

    @property
    def terms(self):
        """Multiplicity vectors of computed terms."""
        return [
            tuple(int(k) for k in c.source.multiplicities)
            for c in self.covers if c.source.dim
        ]

    def differential(self, index):
        """Map P_index -> P_(index-1); for index 0 the cover P_0 -> M."""
        self.extend(index)
        if index >= len(self.covers):
            source = self.term(index)
            target = self.term(index - 1) if index else self.target
            return md.ModuleMap(
                source, target,
                self.target.field.zeros((target.dim, source.dim))
            )
        if not index:
            return self.covers[0]
        return self.inclusions[index - 1].compose(self.covers[index])

    @property
    def differentials(self):
        return [self.differential(i) for i in range(len(self.covers))]

    def to_dict(self):
        field = self.target.field
        return {
            'module': self.target.label,
            'status': self.status,
            'cap': self.cap,
            'period': self.period,
            'offset': self.offset,
            'pd': self.pd.to_dict(),
            'terms': [list(t) for t in self.terms],
            'differentials': [
                field.encode(d.matrix) for d in self.differentials
                if d.source.dim
            ],
        }


# MODULE FUNCTIONS
def minimal_resolution(module, cap=DEFAULT_CAP, seed=0, tries=dc.DEFAULT_TRIES,
                       exhaustive_cap=dc.EXHAUSTIVE_CAP):
    """Minimal projective resolution of module, reused from module's cache
    if one with at least the same cap is there.

    Raises
    ------
    NonSplit, Inconclusive
        Propagated from projective covers and isomorphism tests."""
    cached = module.cache.get('resolution')
    if cached is not None and (cached.cap >= cap or
                               cached.status != 'truncated'):
        return cached
    resolution = Resolution(module, cap, seed, tries, exhaustive_cap)
    module.cache['resolution'] = resolution
    return resolution


def _hom_from_projective(proj, module):
    """Homomorphisms proj -> module, one per unknown coordinate.

    Homomorphism from a sum of P(lambda_s) is fixed by images n_s of the
    generators, n_s in e_lambda_s * module. Returns (phi, indices), where
    phi has shape (unknowns, module.dim, proj.dim) and indices lists basis
    vectors of module available for each generator."""
    field = module.field
    indices = [np.flatnonzero(module.vertices == lam) for lam in proj.tops]
    unknowns = sum(len(i) for i in indices)
    phi = field.zeros((unknowns, module.dim, proj.dim))
    row = 0
    for block, J, idx in zip(proj.blocks, proj.index_sets, indices):
        for q in idx:
            # column j of block: b_J[j] * m_q
            phi[row][:, block] = module.action[J][:, :, q].T
            row += 1
    return phi, indices


def _coboundary(resolution, module, index):
    """Matrix of Hom(P_(index-1), N) -> Hom(P_index, N), f -> f o d."""
    field = module.field
    source = resolution.term(index - 1)
    target = resolution.term(index)
    _, indices_out = _hom_from_projective(target, module)
    phi, _ = _hom_from_projective(source, module)
    unknowns_out = sum(len(i) for i in indices_out)
    if not len(phi) or not unknowns_out:
        return field.zeros((unknowns_out, len(phi)))
    d = resolution.differential(index).matrix
    generators = np.stack(
        [target.generator(s) for s in range(len(target.tops))], axis=1
    )
    images = field.matmul(field.matmul(phi, d), generators)
    picked = [images[:, idx, s] for s, idx in enumerate(indices_out)]
    return np.concatenate(picked, axis=1).T


def ext(first, second, degree, cap=DEFAULT_CAP, seed=0, route='projective'):
    """Dimension of Ext^degree(first, second).

    Parameters
    ----------
    first, second : Module
    degree : int
    cap : int
        Resolution depth limit.
    route : str
        'projective' resolves the first argument; 'injective' resolves the
        dual of the second one over the opposite algebra.

    Raises
    ------
    Undetermined
        If degree exceeds cap and resolution is not terminated."""
    if route == 'injective':
        return ext(md.dualize(second), md.dualize(first), degree, cap, seed)
    if route != 'projective':
        raise ValueError(f"Unknown route: {route!r}.")
    if first.algebra is not second.algebra:
        raise ValueError("Modules are defined over different algebras.")
    if degree < 0:
        return 0
    if not degree:
        return md.hom_space(first, second).dim
    field = first.field
    resolution = minimal_resolution(first, cap, seed)
    if resolution.status == 'terminated' and degree > resolution.length:
        return 0
    if degree > cap and resolution.status == 'truncated':
        raise Undetermined(
            f"Ext^{degree} needs resolution deeper than cap {cap}."
        )
    incoming = _coboundary(resolution, second, degree)
    outgoing = _coboundary(resolution, second, degree + 1)
    cochains = incoming.shape[0]
    return cochains - field.rank(outgoing) - field.rank(incoming)


def pd(module, cap=DEFAULT_CAP, seed=0):
    """Projective dimension as DimensionValue."""
    return minimal_resolution(module, cap, seed).pd


def id(module, cap=DEFAULT_CAP, seed=0):
    """Injective dimension, the projective dimension of the dual module
    over the opposite algebra."""
    return pd(md.dualize(module), cap, seed)


def gldim(algebra, cap=DEFAULT_CAP, seed=0):
    """Global dimension as the supremum of pd over simple modules."""
    values = [
        pd(md.canonical_module(algebra, 'simple', lam), cap, seed)
        for lam in range(algebra.vertex_count)
    ]
    result = dimension_max(values)
    logger.info(f"Global dimension of {algebra}: {result}.")
    return result
