import unittest
from fractions import Fraction

from strata.extraction import quiver_parser as qp
from strata.exceptions import QuiverSyntaxError, QuiverTypeError


MP4 = """
# comment line
field 32003
vertices 2
arrow x 1 1
arrow alpha 1 2
arrow beta 2 1
arrow y 2 2
relation alpha*beta
relation x*x
relation y*y
relation x*beta
relation alpha*x
order 1 2
duality alpha->beta, beta->alpha, x->x, y->y
"""


class TestRegexs(unittest.TestCase):

    def test_arrow_line(self):
        self.assertRegex('arrow alpha 1 2', qp.arrow_line)
        self.assertRegex("arrow a' 1 2", qp.arrow_line)
        self.assertNotRegex('arrow 1 2', qp.arrow_line)

    def test_order_line(self):
        self.assertRegex('order 2 1', qp.order_line)
        self.assertNotRegex('order', qp.order_line)

    def test_duality_pair(self):
        self.assertRegex('alpha->beta', qp.duality_pair)
        self.assertRegex(' x -> x ', qp.duality_pair)
        self.assertNotRegex('alpha=>beta', qp.duality_pair)


class TestParseTerms(unittest.TestCase):

    def test_single_word(self):
        self.assertEqual([(Fraction(1), ('x', 'y'))], qp.parse_terms('x*y'))

    def test_combination(self):
        terms = qp.parse_terms('x*y - 2*y*x + 1/2 z*z')
        self.assertEqual(
            [(Fraction(1), ('x', 'y')), (Fraction(-2), ('y', 'x')),
             (Fraction(1, 2), ('z', 'z'))],
            terms
        )

    def test_missing_sign(self):
        self.assertRaises(QuiverSyntaxError, qp.parse_terms, 'x*y y*x')

    def test_empty(self):
        self.assertRaises(QuiverSyntaxError, qp.parse_terms, '')

    def test_line_in_message(self):
        with self.assertRaises(QuiverSyntaxError) as context:
            qp.parse_terms('x*y y*x', 7)
        self.assertEqual(7, context.exception.line)
        self.assertIn('line 7', str(context.exception))


class TestParse(unittest.TestCase):

    def setUp(self):
        self.presentation = qp.parse(MP4)

    def test_counts(self):
        self.assertEqual(2, self.presentation.vertex_count)
        self.assertEqual(4, len(self.presentation.arrows))
        self.assertEqual(5, len(self.presentation.relations))

    def test_arrow(self):
        self.assertEqual(qp.Arrow('alpha', '1', '2'),
                         self.presentation.arrow('alpha'))

    def test_words(self):
        self.assertEqual('2', self.presentation.source(('alpha', 'beta')))
        self.assertEqual('2', self.presentation.target(('alpha', 'beta')))
        self.assertTrue(self.presentation.composes(('beta', 'alpha')))
        self.assertFalse(self.presentation.composes(('alpha', 'alpha')))

    def test_homogeneous(self):
        self.assertTrue(self.presentation.is_homogeneous)

    def test_duality(self):
        self.assertEqual(
            {'alpha': 'beta', 'beta': 'alpha', 'x': 'x', 'y': 'y'},
            self.presentation.duality
        )

    def test_relation_lines(self):
        self.assertEqual([9, 10, 11, 12, 13],
                         [r.line for r in self.presentation.relations])

    def test_with_order(self):
        reversed_order = self.presentation.with_order(['2', '1'])
        self.assertEqual(['2', '1'], reversed_order.order)
        self.assertEqual(['1', '2'], self.presentation.order)
        self.assertEqual(self.presentation.duality, reversed_order.duality)

    def test_rational_field(self):
        presentation = qp.parse('field rational\nvertices 1')
        self.assertEqual(0, presentation.field.characteristic)


class TestParseErrors(unittest.TestCase):

    def test_small_prime(self):
        with self.assertRaises(QuiverSyntaxError) as context:
            qp.parse('field 7\nvertices 1')
        self.assertEqual(1, context.exception.line)

    def test_small_prime_allowed(self):
        presentation = qp.parse('field 7\nvertices 1', min_prime=2)
        self.assertEqual(7, presentation.field.characteristic)

    def test_missing_vertices(self):
        self.assertRaises(QuiverSyntaxError, qp.parse, 'field 32003')

    def test_unknown_line(self):
        with self.assertRaises(QuiverSyntaxError) as context:
            qp.parse('vertices 1\nloop x')
        self.assertEqual(2, context.exception.line)

    def test_unknown_vertex(self):
        with self.assertRaises(QuiverTypeError) as context:
            qp.parse('vertices 2\narrow a 1 3')
        self.assertEqual(2, context.exception.line)

    def test_duplicate_arrow(self):
        self.assertRaises(QuiverSyntaxError, qp.parse,
                          'vertices 1\narrow x 1 1\narrow x 1 1')

    def test_not_composing(self):
        with self.assertRaises(QuiverTypeError) as context:
            qp.parse('vertices 2\narrow a 1 2\nrelation a*a')
        self.assertEqual(3, context.exception.line)

    def test_unknown_arrow(self):
        self.assertRaises(QuiverTypeError, qp.parse,
                          'vertices 1\narrow x 1 1\nrelation x*z')

    def test_not_parallel(self):
        text = 'vertices 2\narrow x 1 1\narrow a 1 2\narrow y 2 2\n' \
               'relation x*x - y*y'
        self.assertRaises(QuiverTypeError, qp.parse, text)

    def test_bad_order(self):
        self.assertRaises(QuiverSyntaxError, qp.parse,
                          'vertices 2\norder 1 3')

    def test_duality_unknown_arrow(self):
        self.assertRaises(QuiverTypeError, qp.parse,
                          'vertices 1\narrow x 1 1\nduality x->z')

    def test_duality_syntax(self):
        self.assertRaises(QuiverSyntaxError, qp.parse,
                          'vertices 1\narrow x 1 1\nduality x=x')


if __name__ == '__main__':
    unittest.main()
