###################
###   IMPORTS   ###
###################

import logging as lgg
from fractions import Fraction
from functools import lru_cache

import galois
import numpy as np
import sympy


##################
###   LOGGER   ###
##################

logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


############################
###   GLOBAL VARIABLES   ###
############################

DEFAULT_PRIME = 32003
RATIONAL_SAMPLE_RANGE = 9


############################
###   MODULE FUNCTIONS   ###
############################

@lru_cache(maxsize=None)
def galois_field(p):
    """Returns galois.GF class for prime p, constructed only once per p."""
    return galois.GF(p)


def to_fraction(value):
    """Converts sympy rational or any python number to fractions.Fraction."""
    if isinstance(value, sympy.Basic):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


###################
###   CLASSES   ###
###################

class FieldSpec:
    """Base class for exact fields. Every matrix used by strata is a numpy
    array of canonical representatives of its field's elements; subclasses
    register themselves under a name given as `kind` keyword argument.

    Subclasses should provide `scalar`, `normalize`, `zeros`, `rref`,
    `random`, `charpoly_factors`, `to_json` and `to_dict` methods."""

    kinds = dict()

    def __init_subclass__(cls, kind='', **kwargs):
        if not kind:
            raise TypeError('Required keyword argument "kind" not found.')
        super().__init_subclass__(**kwargs)
        cls.kind = kind
        FieldSpec.kinds[kind] = cls
        logger.debug(f'Field {cls} registered as {kind}.')

    @staticmethod
    def from_string(text):
        """Creates field from its name as used in presentation files:
        a prime number or 'rational'.

        Raises
        ------
        ValueError
            If text is neither 'rational' nor a prime number."""
        text = str(text).strip().lower()
        if text in ('rational', 'rationals', 'q', 'qq'):
            return RationalField()
        try:
            p = int(text)
        except ValueError:
            raise ValueError(f"Unknown field: {text!r}.")
        return PrimeField(p)

    @staticmethod
    def from_dict(data):
        kind = data['kind']
        try:
            cls = FieldSpec.kinds[kind]
        except KeyError:
            raise ValueError(f"Unknown field kind: {kind!r}.")
        return cls(**{k: v for k, v in data.items() if k != 'kind'})

    # shared linear algebra
    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return self.scalar(0)

    def eye(self, n):
        out = self.zeros((n, n))
        if n:
            out[np.arange(n), np.arange(n)] = self.one
        return out

    def array(self, data):
        return self.normalize(data)

    def stack(self, rows, width):
        """Stacks list of vectors into 2-d array, even if the list is empty."""
        if not width:
            return self.zeros((0, 0))
        rows = [np.asarray(r).reshape(-1, width) for r in rows]
        rows = [r for r in rows if r.shape[0]]
        if not rows:
            return self.zeros((0, width))
        return self.normalize(np.vstack(rows))

    def matmul(self, a, b):
        return self.normalize(np.matmul(a, b))

    def contract(self, a, b, axes=1):
        """Tensor contraction as numpy.tensordot, reduced to canonical
        representatives."""
        return self.normalize(np.tensordot(a, b, axes=axes))

    def is_zero(self, m):
        return not np.any(np.asarray(m) != 0)

    def rank(self, m):
        return self.rref(m)[0]

    def row_space(self, m):
        """Returns rows of reduced row echelon form spanning the row space of
        m, together with pivot columns."""
        rank, reduced, pivots = self.rref(m)
        return reduced[:rank], pivots

    def kernel_basis(self, m):
        """Basis of the right null space of m, one vector per row.

        For every free column f returned vector has 1 at f, zeros at other
        free columns, and values read from reduced form at pivot columns.

        Parameters
        ----------
        m : numpy.ndarray
            Two-dimensional array.

        Returns
        -------
        numpy.ndarray
            Array of shape (cols - rank, cols)."""
        m = self.array(m)
        cols = m.shape[1]
        rank, reduced, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = self.zeros((len(free), cols))
        if free:
            basis[np.arange(len(free)), free] = self.one
            if rank:
                block = reduced[:rank][:, free]
                basis[:, pivots] = self.normalize(-block.T)
        return basis

    def solve(self, a, b):
        """Finds one solution x of a @ x == b, or None if system is
        inconsistent. Free variables of the solution are set to zero."""
        a = self.array(a)
        b = self.array(b)
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        n = a.shape[1]
        rank, reduced, pivots = self.rref(np.hstack([a, b]))
        if any(c >= n for c in pivots):
            return None
        x = self.zeros((n, b.shape[1]))
        if rank:
            x[pivots] = reduced[:rank, n:]
        return x[:, 0] if vector else x

    def inverse(self, m):
        m = self.array(m)
        if m.shape[0] != m.shape[1]:
            raise ValueError("Only square matrices can be inverted.")
        x = self.solve(m, self.eye(m.shape[0]))
        if x is None or self.rank(m) < m.shape[0]:
            raise ValueError("Matrix is singular.")
        return x

    def independent_rows(self, candidates, prefix=None):
        """Indices of candidates, that greedily extend span of prefix rows.

        Parameters
        ----------
        candidates : numpy.ndarray
            Two-dimensional array of candidate vectors.
        prefix : numpy.ndarray, optional
            Vectors, which span is extended; if omitted, empty span is used.

        Returns
        -------
        list
            Indices of chosen candidates in ascending order."""
        candidates = self.array(candidates)
        width = candidates.shape[1]
        prefix = self.zeros((0, width)) if prefix is None else \
            self.array(prefix).reshape(-1, width)
        stacked = np.vstack([prefix, candidates])
        _, _, pivots = self.rref(stacked.T)
        offset = prefix.shape[0]
        return [c - offset for c in pivots if c >= offset]

    def reduce(self, vectors, rows):
        """Residues of vectors modulo the row space of rows.

        Residue has zeros at pivot columns of the reduced form of rows, so it
        vanishes exactly for vectors lying in the row space."""
        vectors = self.array(vectors)
        single = vectors.ndim == 1
        vectors = vectors.reshape(-1, vectors.shape[-1])
        basis, pivots = self.row_space(
            self.array(rows).reshape(-1, vectors.shape[1])
        )
        for row, pivot in zip(basis, pivots):
            vectors = self.normalize(
                vectors - np.outer(vectors[:, pivot], row)
            )
        return vectors[0] if single else vectors

    def complement(self, m, width=None):
        """Indices of coordinates, which unit vectors complement row space
        of m (non-pivot columns of its reduced form)."""
        m = self.array(m)
        width = m.shape[1] if width is None else width
        _, _, pivots = self.rref(m.reshape(-1, width))
        pivot_set = set(pivots)
        return [c for c in range(width) if c not in pivot_set]

    def power(self, m, exponent):
        result = self.eye(m.shape[0])
        for _ in range(exponent):
            result = self.matmul(result, m)
        return result

    def poly_eval(self, coefficients, m):
        """Evaluates polynomial, given by coefficients from the highest
        degree, at square matrix m using Horner's scheme."""
        identity = self.eye(m.shape[0])
        result = self.zeros(m.shape)
        for c in coefficients:
            result = self.normalize(
                self.matmul(result, m) + identity * self.scalar(c)
            )
        return result

    def encode(self, m):
        """Nested lists of json-serializable entries."""
        m = np.asarray(m)
        if m.ndim == 0:
            return self.to_json(m.item())
        return [self.encode(row) for row in m]

    def decode(self, data):
        return self.array(np.array(
            self._decode_nested(data), dtype=object
        ))

    def _decode_nested(self, data):
        if isinstance(data, list):
            return [self._decode_nested(d) for d in data]
        return self.from_json(data)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and \
            self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))


class PrimeField(FieldSpec, kind='prime'):
    """Prime field GF(p); elements are stored as int64 residues 0 <= e < p.

    Elimination is done by hand on int64 arrays, galois is used for
    primality and for factorization of characteristic polynomials."""

    def __init__(self, p=DEFAULT_PRIME):
        p = int(p)
        if p < 2 or not galois.is_prime(p):
            raise ValueError(f"Field characteristic must be prime, got {p}.")
        self.p = p

    def __repr__(self):
        return f'PrimeField({self.p})'

    def __str__(self):
        return f'GF({self.p})'

    def to_dict(self):
        return {'kind': 'prime', 'p': self.p}

    @property
    def characteristic(self):
        return self.p

    def scalar(self, value):
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = value.denominator % self.p
            if not den:
                raise ZeroDivisionError(
                    f"Denominator of {value} vanishes in {self}."
                )
            return num * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def inv_scalar(self, value):
        return pow(int(value), -1, self.p)

    def normalize(self, m):
        arr = np.asarray(m)
        if arr.dtype == object:
            flat = [self.scalar(v) for v in arr.flat]
            arr = np.array(flat, dtype=np.int64).reshape(arr.shape)
        return arr.astype(np.int64) % self.p

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def random(self, shape, rng):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def rref(self, m):
        """Reduced row echelon form with leftmost pivots.

        Returns
        -------
        tuple
            (rank, reduced matrix, list of pivot columns)"""
        p = self.p
        red = self.normalize(m).copy()
        if red.ndim != 2:
            raise ValueError("rref expects two-dimensional array.")
        rows, cols = red.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = np.flatnonzero(red[r:, c])
            if not nonzero.size:
                continue
            k = r + nonzero[0]
            if k != r:
                red[[r, k]] = red[[k, r]]
            red[r] = red[r] * pow(int(red[r, c]), -1, p) % p
            column = red[:, c].copy()
            column[r] = 0
            hit = np.flatnonzero(column)
            if hit.size:
                red[hit] = (red[hit] - np.outer(column[hit], red[r])) % p
            pivots.append(c)
            r += 1
        return r, red, pivots

    def charpoly_factors(self, m):
        """Irreducible monic factors of characteristic polynomial of m with
        multiplicities, coefficients listed from the highest degree."""
        m = self.normalize(m)
        if not m.shape[0]:
            return []
        gf = galois_field(self.p)
        poly = gf(m).characteristic_poly()
        factors, multiplicities = poly.factors()
        found = [
            (tuple(int(c) for c in factor.coeffs), int(e))
            for factor, e in zip(factors, multiplicities)
        ]
        return sorted(found)

    def to_json(self, value):
        return int(value)

    def from_json(self, value):
        return self.scalar(value)


class RationalField(FieldSpec, kind='rational'):
    """Field of rational numbers; elements are fractions.Fraction objects
    in numpy arrays of dtype object. Elimination and polynomial
    factorization are delegated to sympy."""

    def __repr__(self):
        return 'RationalField()'

    def __str__(self):
        return 'QQ'

    def to_dict(self):
        return {'kind': 'rational'}

    @property
    def characteristic(self):
        return 0

    def scalar(self, value):
        if isinstance(value, str):
            return Fraction(value)
        return to_fraction(value)

    def inv_scalar(self, value):
        return 1 / Fraction(value)

    def normalize(self, m):
        arr = np.asarray(m, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for index, value in np.ndenumerate(arr):
            out[index] = to_fraction(value)
        return out

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def random(self, shape, rng):
        ints = rng.integers(
            -RATIONAL_SAMPLE_RANGE, RATIONAL_SAMPLE_RANGE + 1, size=shape
        )
        return self.normalize(ints.astype(object))

    def _to_sympy(self, m):
        rows, cols = m.shape
        return sympy.Matrix(rows, cols, [
            sympy.Rational(v.numerator, v.denominator) for v in m.flat
        ])

    def rref(self, m):
        red = self.normalize(m)
        if red.ndim != 2:
            raise ValueError("rref expects two-dimensional array.")
        rows, cols = red.shape
        if not rows or not cols:
            return 0, red, []
        reduced, pivots = self._to_sympy(red).rref()
        red = np.array(
            [to_fraction(v) for v in reduced], dtype=object
        ).reshape(rows, cols)
        return len(pivots), red, list(pivots)

    def charpoly_factors(self, m):
        m = self.normalize(m)
        if not m.shape[0]:
            return []
        x = sympy.Symbol('x')
        poly = self._to_sympy(m).charpoly(x).as_expr()
        _, factors = sympy.factor_list(poly, x)
        found = []
        for factor, multiplicity in factors:
            coeffs = sympy.Poly(factor, x).all_coeffs()
            lead = coeffs[0]
            found.append((
                tuple(to_fraction(c / lead) for c in coeffs),
                int(multiplicity)
            ))
        return sorted(found)

    def to_json(self, value):
        return str(Fraction(value))

    def from_json(self, value):
        return Fraction(value)
