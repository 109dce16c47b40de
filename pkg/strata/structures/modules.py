# IMPORTS
import logging as lgg
from collections import namedtuple

import numpy as np

from ..exceptions import NonSplit


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
MapSpaces = namedtuple('MapSpaces', 'kernel image cokernel corestriction')
Presentation = namedtuple('Presentation', 'relations cover')
Filtration = namedtuple('Filtration', 'kind map layers')
CANONICAL_KINDS = ('simple', 'projective', 'injective')


# CLASSES
class Module:
    """Finite-dimensional left module over FDAlgebra.

    Module is given by action matrices: action[i] is the matrix of the basis
    element b_i of the algebra, so its column j holds coordinates of b_i * m_j.
    Basis of the module is expected to be homogeneous, i.e. every basis
    vector m_j lies in e_lambda * M for a single lambda, stored as
    vertices[j].

    Parameters
    ----------
    algebra : FDAlgebra
    action : numpy.ndarray
        Array of shape (algebra.dim, dim, dim).
    vertices : iterable of int, optional
        Vertex of every basis vector; found from the idempotents' action if
        omitted (-1 for non-homogeneous vectors).
    label : str, optional
        Name used in reports and logs."""

    def __init__(self, algebra, action, vertices=None, label=''):
        field = algebra.field
        action = field.array(action)
        if action.ndim != 3 or action.shape[0] != algebra.dim or \
                action.shape[1] != action.shape[2]:
            raise ValueError(
                f"Action must have shape (dim A, d, d), got {action.shape}."
            )
        self.algebra = algebra
        self.action = action
        self.label = label
        self.cache = dict()
        if vertices is None:
            vertices = self._find_vertices()
        self.vertices = np.asarray(vertices, dtype=int).reshape(self.dim)

    def __repr__(self):
        return f'<Module {self.label or "?"} dim={self.dim} ' \
               f'dimvec={tuple(int(v) for v in self.dimension_vector)}>'

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return self.action.shape[1]

    @property
    def dimension_vector(self):
        """Number of basis vectors lying at each vertex."""
        homogeneous = self.vertices[self.vertices >= 0]
        return np.bincount(homogeneous, minlength=self.algebra.vertex_count)

    def _find_vertices(self):
        field = self.field
        d = self.dim
        vertices = np.full(d, -1, dtype=int)
        if not d or not self.algebra.vertex_count:
            return vertices
        images = field.contract(self.algebra.idempotents, self.action, 1)
        fixed = np.all(images == field.eye(d)[None], axis=1)
        for j in range(d):
            hits = np.flatnonzero(fixed[:, j])
            if len(hits) == 1:
                vertices[j] = hits[0]
        return vertices

    def act(self, element):
        """Matrix, by which given algebra element acts on the module."""
        return self.field.contract(element, self.action, 1)

    def basis_vector(self, index):
        vec = self.field.zeros(self.dim)
        vec[index] = self.field.one
        return vec

    def validate(self):
        """Lists every violated module axiom; empty list means valid."""
        field = self.field
        problems = []
        if not np.array_equal(self.act(self.algebra.unit), field.eye(self.dim)):
            problems.append("unit does not act as identity")
        if self.dim and self.algebra.dim:
            products = field.normalize(
                np.matmul(self.action[:, None], self.action[None, :])
            )
            expected = field.contract(
                self.algebra.structconst, self.action, ([2], [0])
            )
            if not np.array_equal(products, expected):
                problems.append("action is not multiplicative")
        if (self.vertices < 0).any():
            problems.append("basis is not homogeneous for the idempotents")
        return problems

    def to_dict(self):
        field = self.field
        nonzero = np.argwhere(np.asarray(self.action != 0))
        return {
            'label': self.label,
            'dim': self.dim,
            'vertices': [int(v) for v in self.vertices],
            'action': sorted(
                [int(i), int(r), int(c), field.to_json(self.action[i, r, c])]
                for i, r, c in nonzero
            ),
        }

    @classmethod
    def from_dict(cls, data, algebra):
        field = algebra.field
        d = data['dim']
        action = field.zeros((algebra.dim, d, d))
        for i, r, c, value in data['action']:
            action[i, r, c] = field.from_json(value)
        return cls(algebra, action, data['vertices'], data.get('label', ''))


class DirectSum(Module):
    """Direct sum of modules with block diagonal action.

    Attributes
    ----------
    summands : list of Module
    blocks : list of slice
        Coordinates of each summand in the sum."""

    def __init__(self, summands, label='', algebra=None):
        summands = list(summands)
        if algebra is None:
            if not summands:
                raise ValueError("Empty direct sum needs an algebra.")
            algebra = summands[0].algebra
        field = algebra.field
        offsets = np.cumsum([0] + [m.dim for m in summands])
        total = int(offsets[-1])
        action = field.zeros((algebra.dim, total, total))
        self.blocks = []
        for module, start, stop in zip(summands, offsets[:-1], offsets[1:]):
            block = slice(int(start), int(stop))
            action[:, block, block] = module.action
            self.blocks.append(block)
        vertices = np.concatenate(
            [m.vertices for m in summands] + [np.zeros(0, dtype=int)]
        )
        label = label or ' + '.join(m.label or '?' for m in summands) or '0'
        super().__init__(algebra, action, vertices, label)
        self.summands = summands

    def inclusion(self, index):
        """ModuleMap embedding summand at given position."""
        summand = self.summands[index]
        matrix = self.field.zeros((self.dim, summand.dim))
        matrix[self.blocks[index]] = self.field.eye(summand.dim)
        return ModuleMap(summand, self, matrix)

    def projection(self, index):
        summand = self.summands[index]
        matrix = self.field.zeros((summand.dim, self.dim))
        matrix[:, self.blocks[index]] = self.field.eye(summand.dim)
        return ModuleMap(self, summand, matrix)

    def components(self, vector):
        return [vector[block] for block in self.blocks]


class ProjectiveSum(DirectSum):
    """Direct sum of indecomposable projectives P(lambda) = A * e_lambda.

    Basis of P(lambda) consists of those basis elements of the algebra,
    which right vertex is lambda; a summand vector is an element of
    A * e_lambda written in this basis.

    Parameters
    ----------
    algebra : FDAlgebra
    tops : list of int
        Vertex of every summand, in order of summands."""

    def __init__(self, algebra, tops, label=''):
        self.tops = [int(t) for t in tops]
        summands = [_indecomposable_projective(algebra, t) for t in self.tops]
        super().__init__(summands, label=label, algebra=algebra)
        self.index_sets = [algebra.block_indices(right=t) for t in self.tops]

    @property
    def multiplicities(self):
        return np.bincount(
            np.asarray(self.tops, dtype=int),
            minlength=self.algebra.vertex_count
        )

    def generator(self, index):
        """Vector of e_lambda placed in summand at given position."""
        vec = self.field.zeros(self.dim)
        lam, indices = self.tops[index], self.index_sets[index]
        vec[self.blocks[index]] = self.algebra.idempotents[lam][indices]
        return vec

    def element(self, index, vector):
        """Algebra element represented by component of vector in summand."""
        out = self.field.zeros(self.algebra.dim)
        out[self.index_sets[index]] = vector[self.blocks[index]]
        return out


class ModuleMap:
    """Homomorphism of modules given by matrix of shape
    (target.dim, source.dim)."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = source.field.array(matrix).reshape(
            target.dim, source.dim
        )

    def __repr__(self):
        return f'<ModuleMap {self.source.label or "?"} -> ' \
               f'{self.target.label or "?"} rank={self.rank}>'

    @property
    def field(self):
        return self.source.field

    def validate(self):
        """True if matrix intertwines the actions."""
        field = self.field
        left = field.normalize(np.matmul(self.target.action, self.matrix))
        right = field.normalize(np.matmul(self.matrix, self.source.action))
        return np.array_equal(left, right)

    def compose(self, other):
        """Map self o other, other is applied first."""
        return ModuleMap(
            other.source, self.target,
            self.field.matmul(self.matrix, other.matrix)
        )

    def apply(self, vector):
        return self.field.contract(self.matrix, vector, 1)

    @property
    def rank(self):
        return self.field.rank(self.matrix)

    def is_injective(self):
        return self.rank == self.source.dim

    def is_surjective(self):
        return self.rank == self.target.dim

    def is_isomorphism(self):
        return self.source.dim == self.target.dim and self.is_injective()


class QuotientMap(ModuleMap):
    """Projection onto quotient module, which basis consists of classes of
    `kept` basis vectors of the source."""

    def __init__(self, source, target, matrix, kept):
        super().__init__(source, target, matrix)
        self.kept = list(kept)

    @property
    def section(self):
        """Linear (not module) map sending quotient basis to their lifts."""
        matrix = self.field.zeros((self.source.dim, self.target.dim))
        if self.kept:
            matrix[self.kept, np.arange(len(self.kept))] = self.field.one
        return matrix


class HomSpace:
    """Basis of Hom_A(source, target).

    Basis maps are stored flattened in reduced row echelon form, so the
    basis does not depend on how the space was computed.

    Attributes
    ----------
    basis : numpy.ndarray
        Array of shape (dim, target.dim, source.dim).
    pivots : list of int
        Pivot positions of flattened basis."""

    def __init__(self, source, target, maps):
        field = source.field
        self.source = source
        self.target = target
        width = target.dim * source.dim
        shape = (target.dim, source.dim)
        if width and len(maps):
            flat = np.asarray(maps).reshape(-1, width)
            rows, self.pivots = field.row_space(flat)
        else:
            rows, self.pivots = field.zeros((0, width)), []
        self._flat = rows
        self.basis = rows.reshape((len(rows),) + shape)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f'<HomSpace {self.source.label} -> {self.target.label} ' \
               f'dim={self.dim}>'

    @property
    def dim(self):
        return len(self.basis)

    def maps(self):
        return [ModuleMap(self.source, self.target, m) for m in self.basis]

    def combination(self, coefficients):
        field = self.source.field
        if not self.dim:
            return field.zeros((self.target.dim, self.source.dim))
        return field.contract(field.array(coefficients), self.basis, 1)

    def random_element(self, rng):
        return self.combination(self.source.field.random(self.dim, rng))

    def coordinates(self, matrix):
        """Coefficients of matrix in the basis; valid only for elements of
        the space."""
        flat = np.asarray(matrix).reshape(-1)
        return flat[self.pivots]

    def contains(self, matrix):
        field = self.source.field
        matrix = field.array(matrix)
        return np.array_equal(
            self.combination(self.coordinates(matrix)), matrix
        )


# MODULE FUNCTIONS
def _as_rows(array, width):
    """Reshapes array into rows of given width, also when width is zero."""
    array = np.asarray(array)
    if not width:
        return array.reshape(0, 0)
    return array.reshape(-1, width)


def _indecomposable_projective(algebra, lam):
    key = ('projective', lam)
    if key not in algebra.cache:
        indices = algebra.block_indices(right=lam)
        block = algebra.structconst[:, indices][:, :, indices]
        algebra.cache[key] = Module(
            algebra, np.transpose(block, (0, 2, 1)),
            algebra.left_vertex[indices],
            label=f'P({algebra.vertex_labels[lam]})'
        )
    return algebra.cache[key]


def _split_guard(algebra):
    """Raises NonSplit unless every top of P(lambda) is one-dimensional."""
    if algebra.cache.get('split'):
        return
    for lam in range(algebra.vertex_count):
        proj = _indecomposable_projective(algebra, lam)
        rows, _ = _radical_rows(proj)
        if proj.dim - len(rows) != 1:
            raise NonSplit(
                f"Top of P({algebra.vertex_labels[lam]}) has dimension "
                f"{proj.dim - len(rows)} over {algebra.field}."
            )
    algebra.cache['split'] = True


def submodule(module, vectors, label=''):
    """Submodule spanned by given vectors, which span must be closed under
    the action.

    Returns
    -------
    ModuleMap
        Inclusion of the submodule; submodule's basis is the reduced row
        echelon basis of the span."""
    field = module.field
    rows, pivots = field.row_space(field.stack(vectors, module.dim))
    pivots = np.asarray(pivots, dtype=int)
    inclusion = rows.T
    action = field.normalize(np.matmul(module.action, inclusion))
    sub = Module(
        module.algebra, action[:, pivots, :], module.vertices[pivots],
        label or f'sub({module.label})'
    )
    return ModuleMap(sub, module, inclusion)


def generated_submodule(module, vectors, label=''):
    """Smallest submodule containing given vectors."""
    field = module.field
    vectors = field.stack(vectors, module.dim)
    images = field.contract(module.action, vectors, ([2], [1]))
    rows = _as_rows(np.transpose(images, (0, 2, 1)), module.dim)
    return submodule(module, rows, label)


def quotient(module, vectors, label=''):
    """Quotient of module by submodule spanned by given vectors.

    Returns
    -------
    QuotientMap
        Projection; basis of the quotient are classes of basis vectors,
        which are not pivots of the submodule's echelon basis."""
    field = module.field
    d = module.dim
    rows, pivots = field.row_space(field.stack(vectors, d))
    pivot_set = set(pivots)
    kept = [q for q in range(d) if q not in pivot_set]
    projection = field.zeros((len(kept), d))
    if kept:
        projection[np.arange(len(kept)), kept] = field.one
        if len(pivots):
            projection[:, pivots] = field.normalize(-rows[:, kept].T)
    action = field.normalize(np.matmul(projection, module.action[:, :, kept]))
    target = Module(
        module.algebra, action, module.vertices[kept],
        label or f'{module.label}/sub'
    )
    return QuotientMap(module, target, projection, kept)


def direct_sum(modules, label=''):
    return DirectSum(modules, label=label)


def map_spaces(hom):
    """Kernel, image and cokernel of a module map.

    Returns
    -------
    MapSpaces
        Namedtuple of inclusion of kernel, inclusion of image, projection
        onto cokernel and the map from source onto the image."""
    field = hom.field
    kernel = submodule(
        hom.source, field.kernel_basis(hom.matrix), f'ker({hom.source.label})'
    )
    image = submodule(hom.target, hom.matrix.T, f'im({hom.source.label})')
    _, pivots = field.row_space(hom.matrix.T)
    corestriction = ModuleMap(hom.source, image.source, hom.matrix[pivots])
    cokernel = quotient(
        hom.target, image.matrix.T, f'coker({hom.target.label})'
    )
    return MapSpaces(kernel, image, cokernel, corestriction)


def _radical_rows(module):
    if 'radical_rows' not in module.cache:
        field = module.field
        d = module.dim
        gens = field.contract(module.algebra.generators(), module.action, 1)
        columns = _as_rows(np.transpose(gens, (0, 2, 1)), d)
        module.cache['radical_rows'] = field.row_space(columns)
    return module.cache['radical_rows']


def radical(module):
    """Inclusion of rad M = (rad A) * M."""
    rows, _ = _radical_rows(module)
    return submodule(module, rows, f'rad({module.label})')


def socle(module):
    """Inclusion of the annihilator of rad A in M."""
    field = module.field
    gens = field.contract(module.algebra.generators(), module.action, 1)
    kernel = field.kernel_basis(_as_rows(gens, module.dim))
    return submodule(module, kernel, f'soc({module.label})')


def top_lifts(module):
    """Indices of basis vectors, which classes form a basis of top."""
    _, pivots = _radical_rows(module)
    pivot_set = set(pivots)
    return [q for q in range(module.dim) if q not in pivot_set]


def radical_layers(module):
    """Dimension vectors of rad^i M / rad^(i+1) M, top first."""
    if 'radical_layers' in module.cache:
        return module.cache['radical_layers']
    field = module.field
    d = module.dim
    n = module.algebra.vertex_count
    gens = field.contract(module.algebra.generators(), module.action, 1)

    def counts(pivots):
        return np.bincount(
            module.vertices[np.asarray(pivots, dtype=int)], minlength=n
        )

    current, pivots = field.row_space(field.eye(d))
    layers = []
    while len(current):
        images = field.matmul(gens, current.T)
        rows = _as_rows(np.transpose(images, (0, 2, 1)), d)
        following, next_pivots = field.row_space(rows)
        layers.append(tuple(int(v) for v in counts(pivots) -
                            counts(next_pivots)))
        current, pivots = following, next_pivots
    module.cache['radical_layers'] = layers
    return layers


def socle_layers(module):
    """Dimension vectors of socle series layers, socle first."""
    return radical_layers(dualize(module))


def signature(module):
    """Isomorphism invariant used for sorting and quick rejections."""
    if 'signature' not in module.cache:
        module.cache['signature'] = (
            module.dim,
            tuple(int(v) for v in module.dimension_vector),
            tuple(radical_layers(module)),
            tuple(socle_layers(module)),
        )
    return module.cache['signature']


def structural_filtration(module, kind):
    """Radical, top or socle of module with its layer dimension vectors.

    Parameters
    ----------
    module : Module
    kind : str
        'radical', 'top' or 'socle'.

    Returns
    -------
    Filtration
        Namedtuple (kind, map, layers): inclusion of rad M or soc M, or
        projection onto top M."""
    if kind == 'radical':
        return Filtration(kind, radical(module), radical_layers(module))
    if kind == 'top':
        rows, _ = _radical_rows(module)
        return Filtration(
            kind, quotient(module, rows, f'top({module.label})'),
            radical_layers(module)[:1]
        )
    if kind == 'socle':
        return Filtration(kind, socle(module), socle_layers(module))
    raise ValueError(f"Unknown filtration kind: {kind!r}.")


def projective_cover_map(module):
    """Projective cover P -> M; summands of P follow top lifts sorted by
    vertex, and summand s sends its e_lambda to the s-th lift.

    Raises
    ------
    NonSplit
        If some simple module has dimension bigger than 1."""
    if 'cover' in module.cache:
        return module.cache['cover']
    field = module.field
    algebra = module.algebra
    _split_guard(algebra)
    lifts = sorted(top_lifts(module), key=lambda q: (module.vertices[q], q))
    cover = ProjectiveSum(algebra, [module.vertices[q] for q in lifts],
                          label=f'cover({module.label})')
    blocks = [
        module.action[indices][:, :, q].T
        for indices, q in zip(cover.index_sets, lifts)
    ]
    matrix = np.hstack(blocks) if blocks else field.zeros((module.dim, 0))
    result = ModuleMap(cover, module, matrix)
    module.cache['cover'] = result
    return result


def is_projective(module):
    return projective_cover_map(module).source.dim == module.dim


def presentation(module):
    """Projective presentation P1 -> P0 -> M -> 0 with P1 the projective
    cover of the kernel."""
    field = module.field
    cover = projective_cover_map(module)
    kernel = submodule(cover.source, field.kernel_basis(cover.matrix))
    second = projective_cover_map(kernel.source)
    relations = ModuleMap(
        second.source, cover.source,
        field.matmul(kernel.matrix, second.matrix)
    )
    return Presentation(relations, cover)


def hom_space(source, target):
    """Basis of Hom_A(source, target).

    Homomorphism is determined by images n_s in e_lambda_s * target of the
    generators of source's projective cover; these must kill the kernel of
    the cover. Result is cached on the source.

    Returns
    -------
    HomSpace"""
    key = ('hom', id(target))
    cached = source.cache.get(key)
    if cached is not None and cached[0] is target:
        return cached[1]
    if source.algebra is not target.algebra:
        raise ValueError("Modules are defined over different algebras.")
    field = source.field
    cover = projective_cover_map(source)
    proj = cover.source
    indices = [np.flatnonzero(target.vertices == lam) for lam in proj.tops]
    sizes = [len(i) for i in indices]
    unknowns = sum(sizes)
    maps = []
    if unknowns and target.dim and source.dim:
        kernel = field.kernel_basis(cover.matrix)
        constraints = []
        for block, J, idx in zip(proj.blocks, proj.index_sets, indices):
            rho = field.contract(kernel[:, block], target.action[J], 1)
            constraints.append(rho[:, :, idx])
        constraints = np.concatenate(constraints, axis=2).reshape(
            -1, unknowns
        )
        solutions = field.kernel_basis(constraints)
        offsets = np.cumsum([0] + sizes)
        phi = []
        for s, (J, idx) in enumerate(zip(proj.index_sets, indices)):
            images = field.zeros((len(solutions), target.dim))
            images[:, idx] = solutions[:, offsets[s]:offsets[s + 1]]
            phi.append(np.transpose(
                field.contract(target.action[J], images, ([2], [1])),
                (2, 1, 0)
            ))
        phi = np.concatenate(phi, axis=2)
        _, _, pivots = field.rref(cover.matrix)
        section = field.inverse(cover.matrix[:, pivots])
        maps = field.matmul(phi[:, :, pivots], section)
    space = HomSpace(source, target, maps)
    source.cache[key] = (target, space)
    return space


def trace(generator, module, label=''):
    """Sum of images of all homomorphisms generator -> module.

    Returns
    -------
    ModuleMap
        Inclusion of the trace."""
    field = module.field
    label = label or f'Tr({generator.label}, {module.label})'
    if isinstance(generator, ProjectiveSum):
        tops = set(generator.tops)
        picked = [j for j in range(module.dim) if module.vertices[j] in tops]
        return generated_submodule(module, field.eye(module.dim)[picked],
                                   label)
    space = hom_space(generator, module)
    images = _as_rows(np.transpose(space.basis, (0, 2, 1)), module.dim)
    return submodule(module, images, label)


def _linked_dual(module, label):
    dual = Module(
        module.algebra.opposite(), np.transpose(module.action, (0, 2, 1)),
        module.vertices, label
    )
    module.cache['dual'] = dual
    dual.cache['dual'] = module
    return dual


def dualize(module, label=''):
    """Vector space dual, a module over the opposite algebra with
    transposed action; dualize(dualize(M)) is M."""
    if 'dual' in module.cache:
        return module.cache['dual']
    return _linked_dual(module, label or f'D({module.label})')


def dualize_map(hom):
    return ModuleMap(dualize(hom.target), dualize(hom.source), hom.matrix.T)


def canonical_module(algebra, kind, lam):
    """Simple L(lambda), projective P(lambda) or injective I(lambda).

    Parameters
    ----------
    algebra : FDAlgebra
    kind : str
        One of 'simple', 'projective', 'injective'.
    lam : int
        Position of the vertex.

    Raises
    ------
    NonSplit
        If L(lambda) is not one-dimensional."""
    key = ('canonical', kind, lam)
    if key in algebra.cache:
        return algebra.cache[key]
    name = algebra.vertex_labels[lam]
    if kind == 'projective':
        module = ProjectiveSum(algebra, [lam], label=f'P({name})')
    elif kind == 'simple':
        proj = canonical_module(algebra, 'projective', lam)
        rows, _ = _radical_rows(proj)
        module = quotient(proj, rows, label=f'L({name})').target
        if module.dim != 1:
            raise NonSplit(
                f"L({name}) has dimension {module.dim} over {algebra.field}."
            )
    elif kind == 'injective':
        opposite = canonical_module(algebra.opposite(), 'projective', lam)
        module = _linked_dual(opposite, f'I({name})')
    else:
        raise ValueError(
            f"Unknown kind {kind!r}, expected one of {CANONICAL_KINDS}."
        )
    algebra.cache[key] = module
    return module


def inflate(module, quotient_data, label=''):
    """Module over quotient algebra seen as module over its parent."""
    if module.algebra is not quotient_data.quotient:
        raise ValueError("Module is not defined over the quotient algebra.")
    field = module.field
    action = field.contract(quotient_data.projection.T, module.action, 1)
    retained = np.asarray(quotient_data.retained_indices, dtype=int)
    return Module(
        quotient_data.parent, action, retained[module.vertices],
        label or module.label
    )


def random_module(algebra, rng, max_dim=12, label=''):
    """Random quotient of a random sum of at most two projectives by a
    submodule generated by radical vectors."""
    field = algebra.field
    n = algebra.vertex_count
    for _ in range(100):
        tops = sorted(int(t) for t in rng.integers(0, n, rng.integers(1, 3)))
        proj = ProjectiveSum(algebra, tops)
        rad_rows, _ = _radical_rows(proj)
        count = int(rng.integers(0, 3))
        module = proj
        if len(rad_rows) and count:
            coeffs = field.random((count, len(rad_rows)), rng)
            vectors = field.contract(coeffs, rad_rows, 1)
            sub = generated_submodule(proj, vectors)
            module = quotient(proj, sub.matrix.T).target
        if 0 < module.dim <= max_dim:
            return Module(algebra, module.action, module.vertices,
                          label or 'random')
    raise ValueError(f"No module of dimension at most {max_dim} found.")
