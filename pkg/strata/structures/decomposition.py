# IMPORTS
import itertools
import logging as lgg
from fractions import Fraction

import numpy as np

from ..exceptions import Inconclusive, NonSplit
from . import modules as md


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
DEFAULT_TRIES = 8
EXHAUSTIVE_CAP = 4096


# MODULE FUNCTIONS
def maximize_rank(space, rng, tries=DEFAULT_TRIES, want=None):
    """Draws random elements of Hom space and keeps the one of highest rank.

    Parameters
    ----------
    space : modules.HomSpace
    rng : numpy.random.Generator
    tries : int
        Number of draws.
    want : int, optional
        Rank, after reaching which search stops early.

    Returns
    -------
    tuple
        (matrix, rank)"""
    field = space.source.field
    best = field.zeros((space.target.dim, space.source.dim))
    best_rank = 0
    if not space.dim:
        return best, best_rank
    for _ in range(tries):
        candidate = space.random_element(rng)
        rank = field.rank(candidate)
        if rank > best_rank:
            best, best_rank = candidate, rank
        if want is not None and best_rank >= want:
            break
    return best, best_rank


def grid_search(space, want, cap=EXHAUSTIVE_CAP):
    """Deterministic search for element of rank at least `want`.

    Every minor of sum c_i * H_i has degree at most min(rank H_i, want) in
    c_i, so it vanishes identically if it vanishes on grid
    {0..r_1} x ... x {0..r_h}; checking the grid is thus a proof.

    Returns
    -------
    numpy.ndarray or None
        Found element, or None if no element of such rank exists.

    Raises
    ------
    Inconclusive
        If the grid has more points than cap."""
    field = space.source.field
    if not space.dim:
        return None
    degrees = [min(field.rank(b), want) for b in space.basis]
    size = int(np.prod([d + 1 for d in degrees], dtype=object))
    if size > cap:
        raise Inconclusive(
            f"Exhaustive search over {size} points exceeds cap {cap}.",
            certificate={'grid': size, 'cap': cap, 'hom_dim': space.dim}
        )
    for point in itertools.product(*(range(d + 1) for d in degrees)):
        candidate = space.combination(list(point))
        if field.rank(candidate) >= want:
            return candidate
    return None


def _dominated(smaller, bigger):
    return all(s <= b for s, b in zip(smaller, bigger))


def find_epimorphism(source, target, seed=0, tries=DEFAULT_TRIES,
                     cap=EXHAUSTIVE_CAP):
    """Surjective homomorphism source -> target or None if there is none."""
    field = source.field
    if not target.dim:
        return md.ModuleMap(source, target, field.zeros((0, source.dim)))
    if not _dominated(target.dimension_vector, source.dimension_vector) or \
            not _dominated(md.radical_layers(target)[0],
                           md.radical_layers(source)[0]):
        return None
    return _full_rank_map(source, target, target.dim, seed, tries, cap)


def find_monomorphism(source, target, seed=0, tries=DEFAULT_TRIES,
                      cap=EXHAUSTIVE_CAP):
    """Injective homomorphism source -> target or None if there is none."""
    field = source.field
    if not source.dim:
        return md.ModuleMap(source, target, field.zeros((target.dim, 0)))
    if not _dominated(source.dimension_vector, target.dimension_vector) or \
            not _dominated(md.socle_layers(source)[0],
                           md.socle_layers(target)[0]):
        return None
    return _full_rank_map(source, target, source.dim, seed, tries, cap)


def _full_rank_map(source, target, want, seed, tries, cap):
    space = md.hom_space(source, target)
    rng = np.random.default_rng(seed)
    best, rank = maximize_rank(space, rng, tries, want=want)
    if rank < want:
        best = grid_search(space, want, cap)
        if best is None:
            return None
    return md.ModuleMap(source, target, best)


def is_isomorphic(first, second, seed=0, tries=DEFAULT_TRIES,
                  cap=EXHAUSTIVE_CAP):
    """Tells if two modules are isomorphic.

    Returns
    -------
    tuple
        (bool, witness isomorphism first -> second or None)

    Raises
    ------
    Inconclusive
        If random search failed and exhaustive search would exceed cap."""
    if first.algebra is not second.algebra:
        raise ValueError("Modules are defined over different algebras.")
    field = first.field
    if md.signature(first) != md.signature(second):
        return False, None
    if not first.dim:
        return True, md.ModuleMap(first, second, field.zeros((0, 0)))
    space = md.hom_space(first, second)
    if space.dim != md.hom_space(first, first).dim or \
            space.dim != md.hom_space(second, second).dim:
        return False, None
    witness = _full_rank_map(first, second, first.dim, seed, tries, cap)
    return witness is not None, witness


def is_local(module, space=None):
    """Exact test of End(M) being local with residue field equal to the
    ground field.

    Shifted endomorphisms f - tr(f)/d * id must span a two-sided ideal of
    codimension one, closed under multiplication and nilpotent."""
    field = module.field
    d = module.dim
    if not d:
        return False
    space = space if space is not None else md.hom_space(module, module)
    if space.dim == 1:
        return True
    inverse_dim = field.scalar(Fraction(1, d))
    identity = field.eye(d)
    shifted = [
        field.normalize(b - identity * field.scalar(
            field.scalar(np.trace(b)) * inverse_dim
        ))
        for b in space.basis
    ]
    ideal, _ = field.row_space(field.stack(
        [s.reshape(-1) for s in shifted], d * d
    ))
    if len(ideal) != space.dim - 1:
        return False
    matrices = ideal.reshape(-1, d, d)

    def products(left):
        prods = field.normalize(
            np.matmul(left[:, None], matrices[None, :])
        )
        return prods.reshape(-1, d * d)

    closed = field.rank(np.vstack([ideal, products(matrices)]))
    if closed != len(ideal):
        return False
    power = matrices
    for _ in range(d + 1):
        rows, _ = field.row_space(products(power))
        if not len(rows):
            return True
        if len(rows) >= len(power):
            return False
        power = rows.reshape(-1, d, d)
    return False


def split(module, seed=0, tries=DEFAULT_TRIES):
    """Splits module into indecomposable summands by Fitting decomposition
    along random endomorphisms.

    Returns
    -------
    list of modules.ModuleMap
        Inclusions of indecomposable summands; together they give
        isomorphism of their direct sum with the module.

    Raises
    ------
    NonSplit
        If some summand has endomorphism ring with residue field bigger
        than the ground field.
    Inconclusive
        If no splitting endomorphism was drawn, but locality could not be
        certified either."""
    rng = np.random.default_rng(seed)
    return _split(module, rng, tries)


def _split(module, rng, tries):
    field = module.field
    if not module.dim:
        return []
    identity = md.ModuleMap(module, module, field.eye(module.dim))
    space = md.hom_space(module, module)
    if space.dim == 1:
        return [identity]
    wide_factor = False
    for _ in range(tries):
        endo = space.random_element(rng)
        factors = field.charpoly_factors(endo)
        if len(factors) > 1:
            coefficients, _ = factors[0]
            fitting = field.power(
                field.poly_eval(coefficients, endo), module.dim
            )
            pieces = (
                md.submodule(module, field.kernel_basis(fitting)),
                md.submodule(module, fitting.T),
            )
            found = []
            for piece in pieces:
                found.extend(
                    piece.compose(inner)
                    for inner in _split(piece.source, rng, tries)
                )
            return found
        if len(factors[0][0]) > 2:
            wide_factor = True
    if is_local(module, space):
        return [identity]
    if wide_factor:
        raise NonSplit(
            f"Endomorphisms of {module.label or 'module'} have irreducible "
            f"characteristic polynomials of degree > 1 over {field}."
        )
    raise Inconclusive(
        f"Could not split {module.label or 'module'} nor prove it "
        f"indecomposable in {tries} tries.",
        certificate={'tries': tries, 'end_dim': space.dim}
    )


def summand_projections(inclusions):
    """Projections onto summands, complementary to given inclusions."""
    if not inclusions:
        return []
    field = inclusions[0].field
    module = inclusions[0].target
    whole = np.hstack([inc.matrix for inc in inclusions])
    inverse = field.inverse(whole)
    offsets = np.cumsum([0] + [inc.source.dim for inc in inclusions])
    return [
        md.ModuleMap(module, inc.source, inverse[start:stop])
        for inc, start, stop in zip(inclusions, offsets[:-1], offsets[1:])
    ]


def decompose(module, seed=0, tries=DEFAULT_TRIES, cap=EXHAUSTIVE_CAP):
    """Indecomposable summands of module up to isomorphism.

    Returns
    -------
    list of tuple
        (indecomposable Module, multiplicity), sorted by module signature:
        dimension, dimension vector, radical layers, socle layers."""
    classes = []
    for inclusion in split(module, seed, tries):
        summand = inclusion.source
        for entry in classes:
            if is_isomorphic(entry[0], summand, seed, tries, cap)[0]:
                entry[1] += 1
                break
        else:
            classes.append([summand, 1])
    classes.sort(key=lambda entry: md.signature(entry[0]))
    for number, entry in enumerate(classes):
        entry[0].label = f'{module.label or "M"}[{number}]'
    logger.debug(
        f"{module.label or 'Module'} decomposed into "
        f"{sum(k for _, k in classes)} indecomposable summands."
    )
    return [(summand, count) for summand, count in classes]


def is_indecomposable(module, seed=0, tries=DEFAULT_TRIES):
    return len(split(module, seed, tries)) == 1
