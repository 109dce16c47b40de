import unittest

import numpy as np

from strata import linalg as la
from strata.extraction import QuiverLoader, evaluate_word
from strata.structures import algebra as al
from strata.exceptions import InvalidAlgebraError, FieldTooSmall


def product_of_fields(field):
    """k x k as algebra with two orthogonal idempotents as basis."""
    c = field.zeros((2, 2, 2))
    c[0, 0, 0] = c[1, 1, 1] = 1
    return c


class TestFDAlgebra(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('MP4')

    def test_dimension(self):
        self.assertEqual(10, self.algebra.dim)
        self.assertEqual(2, self.algebra.vertex_count)

    def test_validate(self):
        self.assertEqual([], self.algebra.validate())
        self.assertIs(self.algebra, self.algebra.check())

    def test_cartan_matrix(self):
        self.assertEqual([[4, 2], [2, 2]],
                         self.algebra.cartan_matrix().tolist())

    def test_peirce_vertices(self):
        index = self.algebra.labels.index('alpha')
        self.assertEqual(1, self.algebra.left_vertex[index])
        self.assertEqual(0, self.algebra.right_vertex[index])
        self.assertEqual(4, len(self.algebra.block_indices(0, 0)))
        self.assertEqual(6, len(self.algebra.block_indices(right=0)))

    def test_radical(self):
        rad, _ = self.algebra.radical_basis()
        self.assertEqual(8, len(rad))
        self.assertEqual(4, len(self.algebra.generators()))
        self.assertEqual(4, self.algebra.loewy_length())

    def test_radical_powers(self):
        dims = [len(self.algebra.radical_power(k)[0]) for k in range(5)]
        self.assertEqual([10, 8, 4, 1, 0], dims)

    def test_multiply_unit(self):
        x = evaluate_word(self.algebra, 'beta*y')
        self.assertEqual(x.tolist(), self.algebra.multiply(
            self.algebra.unit, x).tolist())
        self.assertEqual(x.tolist(), self.algebra.multiply(
            x, self.algebra.unit).tolist())

    def test_left_and_right_mult(self):
        x = evaluate_word(self.algebra, 'beta')
        y = evaluate_word(self.algebra, 'alpha')
        product = evaluate_word(self.algebra, 'beta*alpha')
        field = self.algebra.field
        self.assertEqual(product.tolist(),
                         field.matmul(self.algebra.left_mult(x), y).tolist())
        self.assertEqual(product.tolist(),
                         field.matmul(self.algebra.right_mult(y), x).tolist())

    def test_vertex_index(self):
        self.assertEqual(1, self.algebra.vertex_index('2'))
        self.assertEqual(0, self.algebra.vertex_index(1))
        self.assertRaises(KeyError, self.algebra.vertex_index, '3')

    def test_opposite(self):
        op = self.algebra.opposite()
        self.assertIs(self.algebra, op.opposite())
        self.assertEqual([], op.validate())
        self.assertIn('alpha*beta', op.labels)
        self.assertEqual(self.algebra.cartan_matrix().T.tolist(),
                         op.cartan_matrix().tolist())

    def test_dict_round_trip(self):
        data = self.algebra.to_dict()
        copy = al.FDAlgebra.from_dict(data)
        self.assertTrue(np.array_equal(self.algebra.structconst,
                                       copy.structconst))
        self.assertEqual(self.algebra.labels, copy.labels)
        self.assertEqual(data, copy.to_dict())

    def test_regular_module(self):
        regular = self.algebra.regular_module()
        self.assertEqual('A', regular.label)
        self.assertEqual(10, regular.dim)
        self.assertIs(regular, self.algebra.regular_module())


class TestQuotient(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('MP4')

    def test_quotient_by_top(self):
        data = self.algebra.quotient_by_idempotent_ideal(1)
        self.assertEqual(2, data.quotient.dim)
        self.assertEqual(['1'], data.quotient.vertex_labels)
        self.assertEqual([], data.quotient.validate())
        self.assertEqual(['e1', 'x'], data.quotient.labels)

    def test_projection(self):
        data = self.algebra.quotient_by_idempotent_ideal(1)
        vector = evaluate_word(self.algebra, 'beta*alpha')
        self.assertTrue(self.algebra.field.is_zero(data.project(vector)))

    def test_bad_index(self):
        self.assertRaises(IndexError,
                          self.algebra.quotient_by_idempotent_ideal, 2)

    def test_cached(self):
        self.assertIs(self.algebra.quotient_by_idempotent_ideal(0),
                      self.algebra.quotient_by_idempotent_ideal(0))


class TestInvalid(unittest.TestCase):

    def setUp(self):
        self.field = la.PrimeField()

    def test_not_primitive(self):
        algebra = al.FDAlgebra(self.field, product_of_fields(self.field),
                               [1, 1], [[1, 1]])
        problems = algebra.validate()
        self.assertEqual(1, len(problems))
        self.assertIn('primitive', problems[0])

    def test_split_idempotents(self):
        algebra = al.FDAlgebra(self.field, product_of_fields(self.field),
                               [1, 1], [[1, 0], [0, 1]])
        self.assertEqual([], algebra.validate())
        self.assertEqual(1, algebra.loewy_length())

    def test_broken_unit(self):
        algebra = al.FDAlgebra(self.field, self.field.zeros((1, 1, 1)),
                               [1], [[1]])
        self.assertIn('unit is not a left identity', algebra.validate())
        self.assertRaises(InvalidAlgebraError, algebra.check)

    def test_not_a_cube(self):
        self.assertRaises(InvalidAlgebraError, al.FDAlgebra, self.field,
                          self.field.zeros((2, 2, 1)), [1, 1], [[1, 1]])

    def test_field_too_small(self):
        algebra = QuiverLoader(min_prime=2).algebra('MP4')
        small = al.FDAlgebra(
            la.PrimeField(7), algebra.structconst, algebra.unit,
            algebra.idempotents
        )
        self.assertRaises(FieldTooSmall, small.radical_basis)


class TestReverseLabel(unittest.TestCase):

    def test_reverse(self):
        self.assertEqual('alpha*y*beta', al.reverse_label('beta*y*alpha'))
        self.assertEqual('e1', al.reverse_label('e1'))


if __name__ == '__main__':
    unittest.main()
