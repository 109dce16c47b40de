# IMPORTS
import logging as lgg
import numpy as np

from .. import linalg as la
from ..exceptions import FieldTooSmall, InvalidAlgebraError


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# MODULE FUNCTIONS
def reverse_label(label):
    """Label of the same basis element read in the opposite algebra."""
    return '*'.join(reversed(label.split('*')))


# CLASSES
class FDAlgebra:
    """Finite-dimensional basic algebra given by structure constants.

    Product of basis elements is b_i * b_j = sum_k c[i, j, k] * b_k.
    Idempotents are listed in the order of the index set, smallest first,
    and the basis is expected to be homogeneous with respect to them: every
    basis element lies in a single block e_mu * A * e_lambda. Its left vertex
    mu and right vertex lambda are found on construction.

    Attributes
    ----------
    field : linalg.FieldSpec
        Ground field.
    structconst : numpy.ndarray
        Array of shape (dim, dim, dim).
    unit : numpy.ndarray
        Coordinates of the unit element.
    idempotents : numpy.ndarray
        Array of shape (n, dim), one primitive idempotent per row.
    labels : list of str
        Names of basis elements.
    vertex_labels : list of str
        Names of the simple modules, in the same order as idempotents.
    left_vertex, right_vertex : numpy.ndarray
        Position of the block of each basis element, -1 if basis element is
        not homogeneous."""

    def __init__(self, field, structconst, unit, idempotents, labels=None,
                 vertex_labels=None, paths=None, presentation=None):
        self.field = field
        self.structconst = field.array(structconst)
        dim = self.structconst.shape[0]
        if self.structconst.shape != (dim, dim, dim):
            raise InvalidAlgebraError(
                f"Structure constants must form a cube, "
                f"got shape {self.structconst.shape}."
            )
        self.unit = field.array(unit).reshape(dim)
        self.idempotents = field.array(idempotents)
        if self.idempotents.ndim != 2:
            self.idempotents = self.idempotents.reshape(-1, dim)
        n = self.idempotents.shape[0]
        self.labels = list(labels) if labels is not None else \
            [f'b{i}' for i in range(dim)]
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None \
            else [str(i + 1) for i in range(n)]
        if len(self.labels) != dim or len(self.vertex_labels) != n:
            raise InvalidAlgebraError(
                "Number of labels does not match the dimension."
            )
        self.paths = paths
        self.presentation = presentation
        self.cache = dict()
        self._opposite = None
        self.left_vertex, self.right_vertex = self._peirce_vertices()

    def __repr__(self):
        return f'<FDAlgebra dim={self.dim} vertices={self.vertex_labels} ' \
               f'over {self.field}>'

    @property
    def dim(self):
        return self.structconst.shape[0]

    @property
    def vertex_count(self):
        return self.idempotents.shape[0]

    @property
    def left_action(self):
        """Matrices of left multiplication, L[i][k, j] = c[i, j, k]."""
        return np.transpose(self.structconst, (0, 2, 1))

    def basis_vector(self, index):
        vec = self.field.zeros(self.dim)
        vec[index] = self.field.one
        return vec

    def multiply(self, x, y):
        partial = self.field.contract(x, self.structconst, 1)
        return self.field.contract(y, partial, 1)

    def left_mult(self, x):
        """Matrix of left multiplication by element x."""
        return self.field.contract(x, self.left_action, 1)

    def right_mult(self, x):
        """Matrix of right multiplication by element x."""
        return self.field.contract(self.structconst, x, ([1], [0])).T

    def _peirce_vertices(self):
        field = self.field
        dim, n = self.dim, self.vertex_count
        left = np.full(dim, -1, dtype=int)
        right = np.full(dim, -1, dtype=int)
        if not dim or not n:
            return left, right
        identity = field.eye(dim)
        # on_left[l][:, i] = e_l * b_i, on_right[l][:, i] = b_i * e_l
        on_left = field.contract(self.idempotents, self.left_action, 1)
        on_right = np.transpose(field.contract(
            self.structconst, self.idempotents, ([1], [1])
        ), (2, 1, 0))
        for which, blocks in ((left, on_left), (right, on_right)):
            for i in range(dim):
                fixed = [
                    lam for lam in range(n)
                    if np.array_equal(blocks[lam][:, i], identity[:, i])
                ]
                if len(fixed) == 1:
                    which[i] = fixed[0]
        return left, right

    def block_indices(self, left=None, right=None):
        """Indices of basis elements lying in e_left * A * e_right."""
        mask = np.ones(self.dim, dtype=bool)
        if left is not None:
            mask &= self.left_vertex == left
        if right is not None:
            mask &= self.right_vertex == right
        return np.flatnonzero(mask)

    def cartan_matrix(self):
        """C[mu][lambda] = dim e_mu * A * e_lambda."""
        n = self.vertex_count
        cartan = np.zeros((n, n), dtype=int)
        for i in range(self.dim):
            cartan[self.left_vertex[i], self.right_vertex[i]] += 1
        return cartan

    def vertex_index(self, label):
        try:
            return self.vertex_labels.index(str(label))
        except ValueError:
            raise KeyError(f"No vertex labeled {label!r} in {self}.")

    # validation
    def validate(self):
        """Lists every violated axiom; empty list means a valid algebra."""
        field = self.field
        c = self.structconst
        dim, n = self.dim, self.vertex_count
        problems = []
        if dim:
            # (b_i b_j) b_k against b_i (b_j b_k)
            left = field.contract(c, c, ([2], [0]))
            right = np.transpose(
                field.contract(c, c, ([2], [1])), (2, 0, 1, 3)
            )
            if not np.array_equal(left, right):
                problems.append("multiplication is not associative")
            identity = field.eye(dim)
            if not np.array_equal(field.contract(self.unit, c, 1), identity):
                problems.append("unit is not a left identity")
            if not np.array_equal(
                    field.contract(c, self.unit, ([1], [0])), identity):
                problems.append("unit is not a right identity")
        if n:
            total = field.normalize(self.idempotents.sum(axis=0))
            if not np.array_equal(total, self.unit):
                problems.append("idempotents do not sum to the unit")
        for lam in range(n):
            for mu in range(n):
                prod = self.multiply(self.idempotents[lam],
                                     self.idempotents[mu])
                expected = self.idempotents[lam] if lam == mu else \
                    field.zeros(dim)
                if not np.array_equal(prod, expected):
                    problems.append(
                        f"idempotents {self.vertex_labels[lam]} and "
                        f"{self.vertex_labels[mu]} are not orthogonal "
                        f"idempotents"
                    )
        if (self.left_vertex < 0).any() or (self.right_vertex < 0).any():
            problems.append("basis is not homogeneous for the idempotents")
        if not problems and n:
            try:
                rad_rows, rad_pivots = self.radical_basis()
            except FieldTooSmall as error:
                problems.append(f"primitivity not checked: {error}")
            else:
                for lam in range(n):
                    local = len(self.block_indices(lam, lam))
                    in_rad = sum(
                        1 for piv in rad_pivots
                        if self.left_vertex[piv] == lam
                        and self.right_vertex[piv] == lam
                    )
                    if local - in_rad != 1:
                        problems.append(
                            f"idempotent {self.vertex_labels[lam]} is not "
                            f"primitive: dim e A e / rad = {local - in_rad}"
                        )
        return problems

    def check(self):
        problems = self.validate()
        if problems:
            raise InvalidAlgebraError('; '.join(problems))
        return self

    # radical
    def radical_basis(self):
        """Basis of Jacobson radical as kernel of the trace form
        (x, y) -> tr(L_xy); valid in characteristic zero or bigger than
        dimension of the algebra.

        Returns
        -------
        tuple
            (rows of reduced echelon form, pivot columns)

        Raises
        ------
        FieldTooSmall
            If field is GF(p) with p <= dim."""
        if 'radical' in self.cache:
            return self.cache['radical']
        field = self.field
        if field.characteristic and field.characteristic <= self.dim:
            raise FieldTooSmall(
                f"Characteristic {field.characteristic} does not exceed "
                f"dimension {self.dim} of the algebra."
            )
        left = self.left_action
        gram = field.contract(left, left, ([1, 2], [2, 1]))
        kernel = field.kernel_basis(gram)
        result = field.row_space(kernel)
        self.cache['radical'] = result
        return result

    def _products(self, xs, ys):
        """Row space of all products x * y, x from xs, y from ys."""
        field = self.field
        if not len(xs) or not len(ys):
            return field.row_space(field.zeros((0, self.dim)))
        partial = field.contract(xs, self.structconst, ([1], [0]))
        prods = field.contract(partial, ys, ([1], [1]))
        prods = np.transpose(prods, (0, 2, 1)).reshape(-1, self.dim)
        return field.row_space(prods)

    def radical_power(self, k):
        """Rows spanning k-th power of the radical."""
        key = ('radical_power', k)
        if key in self.cache:
            return self.cache[key]
        if k <= 0:
            result = self.field.row_space(self.field.eye(self.dim))
        elif k == 1:
            result = self.radical_basis()
        else:
            previous, _ = self.radical_power(k - 1)
            result = self._products(previous, self.radical_basis()[0])
        self.cache[key] = result
        return result

    def loewy_length(self):
        """Smallest k with rad^k = 0."""
        if not self.dim:
            return 0
        for k in range(1, self.dim + 2):
            if not len(self.radical_power(k)[0]):
                return k
        raise InvalidAlgebraError("Radical is not nilpotent.")

    def generators(self):
        """Homogeneous elements of the radical spanning it modulo its
        square; they generate the radical as one-sided ideal."""
        if 'generators' in self.cache:
            return self.cache['generators']
        rad, _ = self.radical_basis()
        square, _ = self.radical_power(2)
        chosen = self.field.independent_rows(rad, square) if len(rad) else []
        gens = rad[chosen] if chosen else self.field.zeros((0, self.dim))
        self.cache['generators'] = gens
        return gens

    # derived algebras
    def opposite(self):
        """Opposite algebra with c'[i, j, k] = c[j, i, k], the same
        idempotents and order. The result is cached both ways, so
        opposite(opposite(a)) is a."""
        if self._opposite is None:
            paths = None if self.paths is None else \
                [tuple(reversed(p)) for p in self.paths]
            op = FDAlgebra(
                self.field, np.transpose(self.structconst, (1, 0, 2)),
                self.unit, self.idempotents,
                labels=[reverse_label(lab) for lab in self.labels],
                vertex_labels=self.vertex_labels, paths=paths
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def quotient_by_idempotent_ideal(self, lam):
        """Quotient by the two-sided ideal A e_lambda A."""
        key = ('quotient', lam)
        if key not in self.cache:
            self.cache[key] = IdempotentIdealQuotient(self, lam)
        return self.cache[key]

    def regular_module(self):
        from .modules import Module
        if 'regular' not in self.cache:
            self.cache['regular'] = Module(
                self, self.left_action, vertices=self.left_vertex, label='A'
            )
        return self.cache['regular']

    # serialization
    def to_dict(self):
        """Canonical json-serializable description: sparse structure
        constants as sorted (i, j, k, value) quadruples."""
        field = self.field
        nonzero = np.argwhere(np.asarray(self.structconst != 0))
        quads = sorted(
            [int(i), int(j), int(k), field.to_json(self.structconst[i, j, k])]
            for i, j, k in nonzero
        )
        return {
            'field': field.to_dict(),
            'dim': self.dim,
            'labels': list(self.labels),
            'structconst': quads,
            'unit': field.encode(self.unit),
            'idempotents': field.encode(self.idempotents),
            'vertex_labels': list(self.vertex_labels),
        }

    @classmethod
    def from_dict(cls, data):
        field = la.FieldSpec.from_dict(data['field'])
        dim = data['dim']
        c = field.zeros((dim, dim, dim))
        for i, j, k, value in data['structconst']:
            c[i, j, k] = field.from_json(value)
        n = len(data['vertex_labels'])
        idempotents = field.decode(data['idempotents']).reshape(n, dim) \
            if n else field.zeros((0, dim))
        return cls(
            field, c, field.decode(data['unit']).reshape(dim), idempotents,
            labels=data['labels'], vertex_labels=data['vertex_labels']
        )


class IdempotentIdealQuotient:
    """Quotient A / A e_lambda A with its projection.

    Quotient basis consists of those parent basis elements, which are not
    pivots of the reduced echelon basis of the ideal; projection of vector
    v is v[Q] - B[:, Q].T @ v[P] for echelon rows B with pivots P.

    Attributes
    ----------
    parent : FDAlgebra
    cut_index : int
        Position of the idempotent, which ideal was factored out.
    quotient : FDAlgebra
    projection : numpy.ndarray
        Matrix of shape (quotient dim, parent dim).
    retained_indices : list of int
        Positions of parent's idempotents surviving in the quotient."""

    def __init__(self, parent, cut_index):
        field = parent.field
        dim = parent.dim
        if not 0 <= cut_index < parent.vertex_count:
            raise IndexError(f"No idempotent at position {cut_index}.")
        self.parent = parent
        self.cut_index = cut_index
        c = parent.structconst
        e = parent.idempotents[cut_index]
        # left[i] = b_i * e, then ideal element (b_i e) b_j
        left = field.contract(c, e, ([1], [0]))
        ideal = field.contract(left, c, ([1], [0])).reshape(-1, dim)
        rows, pivots = field.row_space(ideal)
        keep = [q for q in range(dim) if q not in set(pivots)]
        projection = field.zeros((len(keep), dim))
        if keep:
            projection[np.arange(len(keep)), keep] = field.one
            if len(pivots):
                projection[:, pivots] = field.normalize(-rows[:, keep].T)
        self.ideal = rows
        self.projection = projection
        self.retained_indices = [
            lam for lam in range(parent.vertex_count) if lam != cut_index
        ]
        sub = c[keep][:, keep]
        structconst = field.contract(sub, projection, ([2], [1]))
        idempotents = field.contract(
            parent.idempotents[self.retained_indices], projection, ([1], [1])
        ) if self.retained_indices else field.zeros((0, len(keep)))
        self.quotient = FDAlgebra(
            field, structconst.reshape(len(keep), len(keep), len(keep)),
            field.contract(projection, parent.unit, 1),
            idempotents,
            labels=[parent.labels[q] for q in keep],
            vertex_labels=[parent.vertex_labels[lam]
                           for lam in self.retained_indices],
            paths=None if parent.paths is None else
            [parent.paths[q] for q in keep]
        )
        self.kept = keep
        logger.debug(
            f"Quotient by idempotent {parent.vertex_labels[cut_index]} "
            f"has dimension {len(keep)}."
        )

    def project(self, vector):
        return self.parent.field.contract(self.projection, vector, 1)
