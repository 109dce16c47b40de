# IMPORTS
import logging as lgg
from collections import namedtuple

import numpy as np

from . import homology as hm
from .exceptions import (
    Inconclusive, NonConvergent, NotApplicable, VerificationFailed
)
from .structures import modules as md
from .structures import decomposition as dc


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
VERIFICATION_MARGIN = 2
Extension = namedtuple('Extension', 'module inclusion projection multiplicity')


# CLASSES
class TiltingData:
    """Characteristic tilting or cotilting module with its certificates.

    Attributes
    ----------
    algebra : FDAlgebra
    kind : str
        'tilting' or 'cotilting'.
    summands : list of Module
        T(lambda) or C(lambda) per vertex position.
    anchors : list of modules.ModuleMap
        Delta(lambda) -> T(lambda) monomorphisms or C(lambda) -> Nabla(lambda)
        epimorphisms.
    chains : dict
        Filtration evidence per summand.
    dimension : homology.DimensionValue
        pd(T) for tilting, id(C) for cotilting module."""

    def __init__(self, algebra, kind, summands, anchors, chains=None,
                 dimension=None):
        self.algebra = algebra
        self.kind = kind
        self.summands = list(summands)
        self.anchors = list(anchors)
        self.chains = chains or {}
        self.dimension = dimension
        self._total = None

    def __repr__(self):
        return f'<TiltingData {self.kind} dims=' \
               f'{[m.dim for m in self.summands]} dimension={self.dimension}>'

    @property
    def total(self):
        if self._total is None:
            self._total = md.DirectSum(
                self.summands, label='T' if self.kind == 'tilting' else 'C'
            )
        return self._total

    def to_dict(self):
        return {
            'kind': self.kind,
            'dimension': None if self.dimension is None else
            self.dimension.to_dict(),
            'summands': {
                m.label: {
                    'dim': m.dim,
                    'dimension_vector': [int(v) for v in m.dimension_vector],
                    'radical_layers': [
                        list(layer) for layer in md.radical_layers(m)
                    ],
                }
                for m in self.summands
            },
            'chains': self.chains,
        }


# MODULE FUNCTIONS
def ext_cocycles(first, second):
    """Homomorphisms from the first syzygy of first into second, which
    classes form a basis of Ext^1(first, second).

    Returns
    -------
    tuple
        (inclusion of syzygy into projective cover, projective cover of
        first, list of cocycle matrices)"""
    field = first.field
    cover = md.projective_cover_map(first)
    kernel = md.submodule(cover.source, field.kernel_basis(cover.matrix))
    syzygy = kernel.source
    if not syzygy.dim or not second.dim:
        return kernel, cover, []
    cocycles = md.hom_space(syzygy, second)
    if not cocycles.dim:
        return kernel, cover, []
    width = second.dim * syzygy.dim
    lifts = md.hom_space(cover.source, second)
    boundaries = field.matmul(lifts.basis, kernel.matrix).reshape(-1, width) \
        if lifts.dim else field.zeros((0, width))
    chosen = field.independent_rows(
        cocycles.basis.reshape(-1, width), boundaries
    )
    return kernel, cover, [cocycles.basis[i] for i in chosen]


def ext1_basis(first, second):
    """Cocycles representing a basis of Ext^1(first, second)."""
    return ext_cocycles(first, second)[2]


def universal_extension(module, other, label=''):
    """Extension 0 -> X -> E -> S^d -> 0 realizing a basis of Ext^1(S, X).

    E is the pushout of d copies of the syzygy sequence of S along the
    cocycles: (X + P^d) / {(sum f_i(k_i), -k_1, ..., -k_d)}. Then
    Ext^1(S, E) = 0.

    Parameters
    ----------
    module : Module
        X, the submodule.
    other : Module
        S, the module extended by.

    Returns
    -------
    Extension
        Namedtuple (E, X -> E, E -> S^d, d)."""
    field = module.field
    kernel, cover, cocycles = ext_cocycles(other, module)
    d = len(cocycles)
    if not d:
        zero = md.DirectSum([], algebra=module.algebra)
        return Extension(
            module, md.ModuleMap(module, module, field.eye(module.dim)),
            md.ModuleMap(module, zero, field.zeros((0, module.dim))), 0
        )
    proj = cover.source
    syzygy = kernel.source
    big = md.DirectSum([module] + [proj] * d)
    relations = []
    for i, cocycle in enumerate(cocycles):
        rows = field.zeros((syzygy.dim, big.dim))
        rows[:, big.blocks[0]] = cocycle.T
        rows[:, big.blocks[i + 1]] = field.normalize(-kernel.matrix.T)
        relations.append(rows)
    label = label or f'E({module.label}, {other.label})'
    projection = md.quotient(big, field.stack(relations, big.dim), label)
    extension = projection.target
    inclusion = projection.compose(big.inclusion(0))
    tops = md.DirectSum([other] * d)
    onto = field.zeros((tops.dim, big.dim))
    for i in range(d):
        onto[tops.blocks[i], big.blocks[i + 1]] = cover.matrix
    logger.debug(f"Universal extension of {module.label} by {d} copies of "
                 f"{other.label} has dimension {extension.dim}.")
    return Extension(
        extension, inclusion,
        md.ModuleMap(extension, tops, onto[:, projection.kept]), d
    )


def universal_coextension(module, other, label=''):
    """Coextension 0 -> S^d -> E -> X -> 0 realizing a basis of
    Ext^1(X, S), found as the dual of universal extension over the
    opposite algebra. Then Ext^1(E, S) = 0.

    Returns
    -------
    Extension
        Namedtuple (E, S^d -> E, E -> X, d)."""
    dual = universal_extension(md.dualize(module), md.dualize(other))
    if not dual.multiplicity:
        field = module.field
        zero = md.DirectSum([], algebra=module.algebra)
        return Extension(
            module, md.ModuleMap(zero, module, field.zeros((module.dim, 0))),
            md.ModuleMap(module, module, field.eye(module.dim)), 0
        )
    extension = md.dualize(
        dual.module, label or f'E*({module.label}, {other.label})'
    )
    return Extension(
        extension, md.dualize_map(dual.projection),
        md.dualize_map(dual.inclusion), dual.multiplicity
    )


def grow_module(start, family, glue, label, step_cap, seed, tries):
    """Glues family members to start until no extension is left; returns
    the indecomposable summand carrying start, relabelled, and its anchor
    map."""
    field = start.field
    module = start
    injective = glue is universal_extension
    anchor = md.ModuleMap(start, start, field.eye(start.dim))
    steps = 0
    clean = False
    while not clean:
        clean = True
        for member in family:
            glued = glue(module, member)
            if not glued.multiplicity:
                continue
            steps += 1
            if steps > step_cap:
                raise NonConvergent(
                    f"Growing {start.label} did not stop in {step_cap} steps."
                )
            anchor = glued.inclusion.compose(anchor) if injective else \
                anchor.compose(glued.projection)
            module = glued.module
            clean = False
    inclusions = dc.split(module, seed, tries)
    projections = dc.summand_projections(inclusions)
    best, best_rank = None, -1
    for inclusion, projection in zip(inclusions, projections):
        restricted = projection.compose(anchor) if injective else \
            anchor.compose(inclusion)
        if restricted.rank > best_rank:
            best, best_rank = restricted, restricted.rank
    piece = best.target if injective else best.source
    summand = md.Module(piece.algebra, piece.action, piece.vertices, label)
    if injective:
        return summand, md.ModuleMap(start, summand, best.matrix)
    return summand, md.ModuleMap(summand, start, best.matrix)


def filtration_status(strat, module, kind):
    try:
        found, chain = strat.has_filtration(module, strat.family(kind))
    except Inconclusive as error:
        return {'status': 'inconclusive', 'reason': str(error)}
    return {'status': 'found', 'chain': chain.labels} if found else \
        {'status': 'absent'}


def _verify_orthogonal(summands, depth, cap, seed, kind):
    for degree in range(1, depth + 1):
        for first in summands:
            for second in summands:
                if hm.ext(first, second, degree, cap, seed):
                    raise VerificationFailed(
                        f"Ext^{degree}({first.label}, {second.label}) does "
                        f"not vanish for {kind} module."
                    )


def characteristic_tilting(strat, step_cap=None):
    """Characteristic tilting module of a standardly stratified algebra.

    T(lambda) grows from Delta(lambda) by universal extensions by Delta(mu),
    mu ascending, until Ext^1(Delta, T(lambda)) = 0.

    Parameters
    ----------
    strat : stratification.Stratification
    step_cap : int, optional
        Limit of extension steps per vertex; dim(A)^2 if omitted.

    Raises
    ------
    NotApplicable
        If the algebra is not standardly stratified.
    NonConvergent
        If extension steps exceed step cap.
    VerificationFailed
        If Ext between summands does not vanish."""
    algebra = strat.algebra
    if 'tilting' in algebra.cache:
        return algebra.cache['tilting']
    if not strat.is_sss()[0]:
        raise NotApplicable(f"{algebra} is not standardly stratified.")
    step_cap = step_cap or max(1, algebra.dim ** 2)
    family = strat.standard
    summands, anchors, chains = [], [], {}
    for lam, name in enumerate(algebra.vertex_labels):
        summand, anchor = grow_module(
            family[lam], family, universal_extension, f"T({name})",
            step_cap, strat.seed, strat.tries
        )
        summands.append(summand)
        anchors.append(anchor)
    dimension = hm.dimension_max(
        hm.pd(m, strat.cap, strat.seed) for m in summands
    )
    depth = min(strat.cap, (dimension.value if dimension.value is not None
                            else strat.cap) + VERIFICATION_MARGIN)
    _verify_orthogonal(summands, depth, strat.cap, strat.seed, 'tilting')
    for summand in summands:
        chains[summand.label] = {
            'standard': filtration_status(strat, summand, 'standard'),
            'proper_costandard':
                filtration_status(strat, summand, 'proper_costandard'),
        }
    data = TiltingData(algebra, 'tilting', summands, anchors, chains,
                       dimension)
    algebra.cache['tilting'] = data
    logger.info(f"Characteristic tilting module of {algebra}: "
                f"dims {[m.dim for m in summands]}, pd {dimension}.")
    return data


def characteristic_cotilting(strat, step_cap=None):
    """Characteristic cotilting module; C(lambda) grows from Nabla(lambda) by
    universal coextensions by Nabla(mu), computed through the opposite
    algebra."""
    algebra = strat.algebra
    if 'cotilting' in algebra.cache:
        return algebra.cache['cotilting']
    if not strat.is_sss()[0]:
        raise NotApplicable(f"{algebra} is not standardly stratified.")
    step_cap = step_cap or max(1, algebra.dim ** 2)
    family = strat.costandard
    summands, anchors, chains = [], [], {}
    for lam, name in enumerate(algebra.vertex_labels):
        summand, anchor = grow_module(
            family[lam], family, universal_coextension, f"C({name})",
            step_cap, strat.seed, strat.tries
        )
        summands.append(summand)
        anchors.append(anchor)
    dimension = hm.dimension_max(
        hm.id(m, strat.cap, strat.seed) for m in summands
    )
    depth = min(strat.cap, (dimension.value if dimension.value is not None
                            else strat.cap) + VERIFICATION_MARGIN)
    _verify_orthogonal(summands, depth, strat.cap, strat.seed, 'cotilting')
    for summand in summands:
        chains[summand.label] = {
            'costandard': filtration_status(strat, summand, 'costandard'),
        }
    data = TiltingData(algebra, 'cotilting', summands, anchors, chains,
                       dimension)
    algebra.cache['cotilting'] = data
    logger.info(f"Characteristic cotilting module of {algebra}: "
                f"dims {[m.dim for m in summands]}, id {dimension}.")
    return data


def _factored_through(field, module, chosen, summand):
    """Homomorphisms module -> summand factoring through the sum of chosen
    maps, flattened into rows."""
    width = summand.dim * module.dim
    if not chosen:
        return field.zeros((0, width))
    target = md.DirectSum([s for s, _ in chosen])
    current = np.vstack([m for _, m in chosen])
    through = md.hom_space(target, summand)
    if not through.dim:
        return field.zeros((0, width))
    return field.matmul(through.basis, current).reshape(-1, width)


def left_approximation(module, summands, seed=0, tries=dc.DEFAULT_TRIES):
    """Minimal left add(summands)-approximation of module.

    Summands are split into indecomposables and maps into these are added
    one at a time, until every homomorphism from module into any of them
    factors through the approximation. Components whose map factors
    through the remaining ones are then dropped; when none does, the
    approximation is left minimal.

    Returns
    -------
    modules.ModuleMap
        Map from module into a direct sum of indecomposable summands."""
    field = module.field
    pieces = [inclusion.source for summand in summands
              for inclusion in dc.split(summand, seed, tries)]
    chosen = []
    progress = True
    while progress:
        progress = False
        for piece in pieces:
            space = md.hom_space(module, piece)
            if not space.dim:
                continue
            flat = space.basis.reshape(space.dim, -1)
            residues = field.reduce(
                flat, _factored_through(field, module, chosen, piece)
            )
            left = [i for i, r in enumerate(residues)
                    if not field.is_zero(r)]
            if not left:
                continue
            chosen.append((piece, space.basis[left[0]]))
            progress = True
    dropped = True
    while dropped:
        dropped = False
        for j, (piece, matrix) in enumerate(chosen):
            rest = chosen[:j] + chosen[j + 1:]
            residue = field.reduce(
                matrix.reshape(1, -1),
                _factored_through(field, module, rest, piece)
            )
            if field.is_zero(residue[0]):
                logger.debug(f"Dropping {piece.label} from approximation "
                             f"of {module.label}.")
                del chosen[j]
                dropped = True
                break
    if not chosen:
        zero = md.DirectSum([], algebra=module.algebra)
        return md.ModuleMap(module, zero, field.zeros((0, module.dim)))
    target = md.DirectSum([s for s, _ in chosen])
    return md.ModuleMap(module, target, np.vstack([m for _, m in chosen]))


def in_additive_closure(module, classes, seed=0, tries=dc.DEFAULT_TRIES,
                        exhaustive_cap=dc.EXHAUSTIVE_CAP):
    """Tells if every indecomposable summand of module is isomorphic to one
    of given indecomposable modules."""
    for inclusion in dc.split(module, seed, tries):
        piece = inclusion.source
        if not any(dc.is_isomorphic(piece, c, seed, tries, exhaustive_cap)[0]
                   for c in classes):
            return False
    return True


def tilting_coresolution(module, cap=hm.DEFAULT_CAP, seed=0,
                         tries=dc.DEFAULT_TRIES,
                         exhaustive_cap=dc.EXHAUSTIVE_CAP):
    """Coresolution 0 -> A -> M_0 -> ... -> M_k -> 0 by add(module).

    Returns
    -------
    list of Module or None
        Terms of the coresolution, or None if some approximation is not
        injective.

    Raises
    ------
    Inconclusive
        If the coresolution does not end in cap steps."""
    classes = [summand for summand, _ in
               dc.decompose(module, seed, tries, exhaustive_cap)]
    current = module.algebra.regular_module()
    terms = []
    for _ in range(cap + 1):
        if in_additive_closure(current, classes, seed, tries,
                               exhaustive_cap):
            terms.append(current)
            return terms
        approximation = left_approximation(current, classes, seed, tries)
        if not approximation.is_injective():
            return None
        terms.append(approximation.target)
        current = md.quotient(
            approximation.target, approximation.matrix.T,
            f'coker{len(terms)}'
        ).target
    raise Inconclusive(
        f"Coresolution by add({module.label}) longer than cap {cap}.",
        certificate={'cap': cap}
    )


def is_generalized_tilting(module, cap=hm.DEFAULT_CAP, seed=0,
                           tries=dc.DEFAULT_TRIES,
                           exhaustive_cap=dc.EXHAUSTIVE_CAP):
    """Tells if module has finite projective dimension, no self-extensions
    and coresolves the regular module in finitely many steps.

    Returns
    -------
    tuple
        (bool, dict with evidence)

    Raises
    ------
    Inconclusive
        If pd is only bounded from below or coresolution exceeds cap."""
    projdim = hm.pd(module, cap, seed)
    if projdim.kind == 'infinite':
        return False, {'pd': projdim.to_dict(),
                       'reason': 'infinite projective dimension'}
    if not projdim.is_exact:
        raise Inconclusive(
            f"Projective dimension of {module.label} is {projdim}.",
            certificate={'cap': cap}
        )
    for degree in range(1, projdim.value + 1):
        if hm.ext(module, module, degree, cap, seed):
            return False, {'pd': projdim.to_dict(),
                           'reason': f'Ext^{degree} does not vanish'}
    terms = tilting_coresolution(module, cap, seed, tries, exhaustive_cap)
    if terms is None:
        return False, {'pd': projdim.to_dict(),
                       'reason': 'regular module does not embed'}
    return True, {
        'pd': projdim.to_dict(),
        'coresolution_length': len(terms) - 1,
        'coresolution_dims': [t.dim for t in terms],
    }
