# IMPORTS
import logging as lgg

import numpy as np

from . import homology as hm
from . import tilting as tl
from .exceptions import (
    Inconclusive, InvalidAlgebraError, NonSplit, NotApplicable,
    VerificationFailed
)
from .stratification import Stratification
from .structures import modules as md
from .structures import decomposition as dc
from .structures.algebra import FDAlgebra


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# CLASSES
class RingelData:
    """Ringel dual R = End_A(T)^op and the functor F = Hom_A(T, -).

    Basis of R consists of bases of Hom(T(x), T(y)) for all pairs of vertex
    positions x, y; element r_a given by map B_a: T(x) -> T(y) lies in
    block e_x * R * e_y, and the product is r_a * r_b = B_b o B_a. Thus
    F(M), with action r_a . f = f o B_a, is a left R-module. Vertices of R
    are listed in the reversed order, so vertex position i of R corresponds
    to position n - 1 - i of A; vertex labels are carried over.

    Parameters
    ----------
    strat : stratification.Stratification
        Stratification of A; characteristic tilting module is computed
        from it.

    Attributes
    ----------
    algebra : FDAlgebra
        The Ringel dual.
    tilting : tilting.TiltingData
    maps : list of numpy.ndarray
        Map B_a for every basis element of R.
    blocks : list of tuple
        Pair (x, y) for every basis element of R.
    sss : bool
        Result of standard stratification test of R."""

    def __init__(self, strat):
        self.strat = strat
        self.tilting = tl.characteristic_tilting(strat)
        self.source = strat.algebra
        self.maps = []
        self.blocks = []
        self._spaces = {}
        self._images = {}
        self.algebra = self._build()
        self.stratification = Stratification(
            self.algebra, strat.seed, strat.tries, strat.exhaustive_cap,
            strat.budget, strat.branches, strat.cap
        )
        self.sss = self.stratification.is_sss()[0]
        if not self.sss:
            logger.error(f"Ringel dual of {self.source} is not standardly "
                         f"stratified with the reversed order.")

    def __repr__(self):
        return f'<RingelData dim={self.algebra.dim} of {self.source}>'

    @property
    def vertex_count(self):
        return self.source.vertex_count

    def vertex(self, lam):
        """Position in R of the vertex at position lam in A."""
        return self.vertex_count - 1 - lam

    def space(self, x, y):
        return self._spaces[(x, y)]

    def _build(self):
        field = self.source.field
        summands = self.tilting.summands
        n = self.vertex_count
        offsets = {}
        for x in range(n):
            for y in range(n):
                space = md.hom_space(summands[x], summands[y])
                offsets[(x, y)] = len(self.maps)
                self._spaces[(x, y)] = space
                for matrix in space.basis:
                    self.maps.append(matrix)
                    self.blocks.append((x, y))
        dim = len(self.maps)
        structconst = field.zeros((dim, dim, dim))
        for a, (xa, ya) in enumerate(self.blocks):
            for b, (xb, yb) in enumerate(self.blocks):
                if ya != xb:
                    continue
                product = field.matmul(self.maps[b], self.maps[a])
                space = self._spaces[(xa, yb)]
                if not space.dim:
                    continue
                start = offsets[(xa, yb)]
                structconst[a, b, start:start + space.dim] = \
                    space.coordinates(product)
        idempotents = field.zeros((n, dim))
        for lam in range(n):
            space = self._spaces[(lam, lam)]
            start = offsets[(lam, lam)]
            idempotents[self.vertex(lam), start:start + space.dim] = \
                space.coordinates(field.eye(summands[lam].dim))
        labels = [
            f'{summands[x].label}->{summands[y].label}#{a - offsets[(x, y)]}'
            for a, (x, y) in enumerate(self.blocks)
        ]
        vertex_labels = list(reversed(self.source.vertex_labels))
        algebra = FDAlgebra(
            field, structconst, field.normalize(idempotents.sum(axis=0)),
            idempotents, labels=labels, vertex_labels=vertex_labels
        )
        problems = algebra.validate()
        if any('primitive' in p for p in problems):
            raise NonSplit(
                f"Endomorphism rings of tilting summands are not split: "
                f"{'; '.join(problems)}"
            )
        if problems:
            raise InvalidAlgebraError('; '.join(problems))
        logger.info(f"Ringel dual of {self.source} has dimension {dim}.")
        return algebra

    def functor(self, module, label=''):
        """R-module F(M) = Hom_A(T, M).

        Returns
        -------
        modules.Module
            Module with basis made of bases of Hom(T(x), M), x ascending."""
        key = id(module)
        cached = self._images.get(key)
        if cached is not None and cached[0] is module:
            return cached[1]
        field = module.field
        summands = self.tilting.summands
        spaces = [md.hom_space(t, module) for t in summands]
        offsets = np.cumsum([0] + [s.dim for s in spaces])
        dim = int(offsets[-1])
        action = field.zeros((self.algebra.dim, dim, dim))
        for a, (x, y) in enumerate(self.blocks):
            source, target = spaces[y], spaces[x]
            if not source.dim or not target.dim:
                continue
            for j, f in enumerate(source.basis):
                image = field.matmul(f, self.maps[a])
                action[a, offsets[x]:offsets[x + 1], offsets[y] + j] = \
                    target.coordinates(image)
        vertices = np.concatenate(
            [np.full(s.dim, self.vertex(x), dtype=int)
             for x, s in enumerate(spaces)] + [np.zeros(0, dtype=int)]
        )
        image = md.Module(self.algebra, action, vertices,
                          label or f'F({module.label})')
        self._images[key] = (module, image)
        return image

    def functor_map(self, hom):
        """F(h): f -> h o f, a map F(source) -> F(target)."""
        field = hom.field
        source = self.functor(hom.source)
        target = self.functor(hom.target)
        matrix = field.zeros((target.dim, source.dim))
        column = 0
        row = 0
        for t in self.tilting.summands:
            first = md.hom_space(t, hom.source)
            second = md.hom_space(t, hom.target)
            for j, f in enumerate(first.basis):
                if second.dim:
                    matrix[row:row + second.dim, column + j] = \
                        second.coordinates(field.matmul(hom.matrix, f))
            column += first.dim
            row += second.dim
        return md.ModuleMap(source, target, matrix)

    def to_dict(self):
        return {
            'dim': self.algebra.dim,
            'vertex_order': self.algebra.vertex_labels,
            'sss': self.sss,
            'hom_dims': {
                f'{self.tilting.summands[x].label}->'
                f'{self.tilting.summands[y].label}': self._spaces[(x, y)].dim
                for x in range(self.vertex_count)
                for y in range(self.vertex_count)
            },
        }


class TwoStepData:
    """Two-step tilting module H, the preimage under F of characteristic
    tilting module of the Ringel dual.

    Attributes
    ----------
    summands : list of Module
        H(lambda) per vertex position of A.
    method : str
        'tensor' if H was found from a presentation of T^(R), 'extension'
        if it was grown from proper costandard modules.
    pd : homology.DimensionValue
    ringel_tilting : tilting.TiltingData
        T^(R), characteristic tilting module of R."""

    def __init__(self, summands, method, ringel_tilting, chains, pd,
                 generalized_tilting):
        self.summands = summands
        self.method = method
        self.ringel_tilting = ringel_tilting
        self.chains = chains
        self.pd = pd
        self.generalized_tilting = generalized_tilting
        self._total = None

    def __repr__(self):
        return f'<TwoStepData dims={[m.dim for m in self.summands]} ' \
               f'pd={self.pd}>'

    @property
    def total(self):
        if self._total is None:
            self._total = md.DirectSum(self.summands, label='H')
        return self._total

    def to_dict(self):
        return {
            'method': self.method,
            'pd': self.pd.to_dict(),
            'ringel_tilting_pd': self.ringel_tilting.dimension.to_dict(),
            'summands': {
                m.label: {
                    'dim': m.dim,
                    'dimension_vector': [int(v) for v in m.dimension_vector]
                }
                for m in self.summands
            },
            'chains': self.chains,
            'generalized_tilting': self.generalized_tilting,
        }


# MODULE FUNCTIONS
def ringel_dual(strat):
    """RingelData of stratified algebra, cached on the algebra."""
    algebra = strat.algebra
    if 'ringel' not in algebra.cache:
        algebra.cache['ringel'] = RingelData(strat)
    return algebra.cache['ringel']


def trace_quotients(data):
    """Modules N(lambda) = T(lambda) / Trace(T^<lambda, T(lambda)), where
    T^<lambda is the sum of T(mu) for mu < lambda."""
    summands = data.tilting.summands
    out = []
    for lam, summand in enumerate(summands):
        name = data.source.vertex_labels[lam]
        if lam:
            smaller = md.DirectSum(summands[:lam])
            inclusion = md.trace(smaller, summand)
            module = md.quotient(summand, inclusion.matrix.T,
                                 f'N({name})').target
        else:
            module = md.Module(summand.algebra, summand.action,
                               summand.vertices, f'N({name})')
        out.append(module)
    return out


def ringel_dual_properly_stratified(data):
    """Tells if the Ringel dual is properly stratified.

    R is properly stratified exactly when every T(lambda) is filtered by
    modules N(mu). When all these searches end, their result is the verdict
    and the properly stratified test run on R must agree with it; otherwise
    the verdict of that test is used.

    Returns
    -------
    tuple
        (bool, dict with evidence)

    Raises
    ------
    VerificationFailed
        If the filtration search and the test on R disagree.
    Inconclusive
        If neither the searches nor the test on R reach a verdict."""
    family = trace_quotients(data)
    evidence = {}
    filtered = True
    conclusive = True
    for summand in data.tilting.summands:
        try:
            found, chain = data.strat.has_filtration(summand, family)
        except Inconclusive as error:
            evidence[summand.label] = {'status': 'inconclusive',
                                       'reason': str(error)}
            conclusive = False
            continue
        filtered &= found
        evidence[summand.label] = {'status': 'found', 'chain': chain.labels} \
            if found else {'status': 'absent'}
    try:
        tested, certificates = data.stratification.is_properly_stratified()
    except Inconclusive as error:
        if not conclusive:
            raise
        tested, certificates = None, {'status': 'inconclusive',
                                      'reason': str(error)}
    if conclusive and tested is not None and tested != filtered:
        raise VerificationFailed(
            f"Filtration of T by modules N disagrees with properly stratified "
            f"test of Ringel dual of {data.source}: {filtered} vs {tested}."
        )
    verdict = filtered if conclusive else tested
    logger.debug(f"Ringel dual of {data.source} properly stratified: "
                 f"{verdict}.")
    return verdict, {
        'ringel_dual': certificates,
        'trace_quotients': {m.label: m.dim for m in family},
        'filtrations': evidence,
    }


def _tensor_preimage(data, module, label):
    """T tensored over R with module, as cokernel of the image of its
    projective presentation."""
    field = data.source.field
    relations, _ = md.presentation(module)
    first, zeroth = relations.source, relations.target
    summands = data.tilting.summands
    n = data.vertex_count
    domain = md.DirectSum(
        [summands[n - 1 - i] for i in first.tops], algebra=data.source
    )
    codomain = md.DirectSum(
        [summands[n - 1 - i] for i in zeroth.tops], algebra=data.source
    )
    matrix = field.zeros((codomain.dim, domain.dim))
    for t in range(len(first.tops)):
        image = relations.apply(first.generator(t))
        lam_t = n - 1 - first.tops[t]
        for s in range(len(zeroth.tops)):
            lam_s = n - 1 - zeroth.tops[s]
            element = zeroth.element(s, image)
            block = field.zeros((summands[lam_s].dim, summands[lam_t].dim))
            for a in np.flatnonzero(element):
                if data.blocks[a] != (lam_t, lam_s):
                    continue
                block = field.normalize(block + data.maps[a] * element[a])
            matrix[codomain.blocks[s], domain.blocks[t]] = block
    return md.quotient(codomain, matrix.T, label).target


def _grown_preimage(strat, lam, label):
    family = strat.proper_costandard
    summand, _ = tl.grow_module(
        family[lam], family, tl.universal_extension, label,
        max(1, strat.algebra.dim ** 2), strat.seed, strat.tries
    )
    return summand


def _matches(data, module, expected):
    return dc.is_isomorphic(
        data.functor(module), expected, data.strat.seed, data.strat.tries,
        data.strat.exhaustive_cap
    )[0]


def two_step_tilting(strat):
    """Two-step tilting module H with F(H) = T^(R).

    H(lambda) is found as T tensored over R with T^(R)(lambda); if F of the
    result does not match, H(lambda) is grown from Nablabar(lambda) by
    universal extensions by proper costandard modules.

    Raises
    ------
    NotApplicable
        If the Ringel dual is not properly stratified.
    VerificationFailed
        If neither construction gives the preimage."""
    algebra = strat.algebra
    if 'two_step' in algebra.cache:
        return algebra.cache['two_step']
    data = ringel_dual(strat)
    proper, _ = ringel_dual_properly_stratified(data)
    if not proper:
        raise NotApplicable(
            f"Ringel dual of {algebra} is not properly stratified."
        )
    ringel_tilting = tl.characteristic_tilting(data.stratification)
    summands, chains = [], {}
    method = 'tensor'
    for lam, name in enumerate(algebra.vertex_labels):
        label = f'H({name})'
        expected = ringel_tilting.summands[data.vertex(lam)]
        module = _tensor_preimage(data, expected, label)
        if not _matches(data, module, expected):
            logger.warning(f"Tensor construction of {label} failed "
                           f"verification, growing it from Nablabar.")
            module = _grown_preimage(strat, lam, label)
            method = 'extension'
            if not _matches(data, module, expected):
                raise VerificationFailed(
                    f"F({label}) is not isomorphic to {expected.label} of "
                    f"the Ringel dual."
                )
        summands.append(module)
        chains[label] = tl.filtration_status(
            strat, module, 'proper_costandard'
        )
    projdim = hm.dimension_max(
        hm.pd(m, strat.cap, strat.seed) for m in summands
    )
    total = md.DirectSum(summands, label='H')
    try:
        verdict, evidence = tl.is_generalized_tilting(
            total, strat.cap, strat.seed, strat.tries, strat.exhaustive_cap
        )
        generalized = {'verdict': verdict, **evidence}
    except Inconclusive as error:
        generalized = {'verdict': None, 'reason': str(error)}
    result = TwoStepData(summands, method, ringel_tilting, chains, projdim,
                         generalized)
    result._total = total
    algebra.cache['two_step'] = result
    logger.info(f"Two-step tilting module of {algebra}: dims "
                f"{[m.dim for m in summands]}, pd {projdim}.")
    return result


def functor_exactness(data, inclusion):
    """Compares dim F(Y) with dim F(X) + dim F(Y/X) for given inclusion
    X -> Y; they agree when all three modules are filtered by proper
    costandard modules.

    Returns
    -------
    tuple
        (bool, list of dimensions of F(X), F(Y), F(Y/X))"""
    cokernel = md.map_spaces(inclusion).cokernel.target
    dims = [data.functor(m).dim
            for m in (inclusion.source, inclusion.target, cokernel)]
    return dims[1] == dims[0] + dims[2], dims
