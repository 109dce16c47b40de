import logging as lgg

import numpy as np

from ..exceptions import NonAdmissible, NotFiniteDimensional
from ..structures.algebra import FDAlgebra


##################
###   LOGGER   ###
##################

logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


############################
###   GLOBAL VARIABLES   ###
############################

MAX_COMPLETION_STEPS = 10000


###################
###   CLASSES   ###
###################

class NormalForms:
    """Base class for normal forms of paths modulo relations.

    Path is stored as key (source vertex label, word), where word is a tuple
    of arrow positions written left to right, its last arrow applied first.
    Subclasses provide `words` (keys of all normal paths) and
    `normal_form(source, word)` returning dict {key: coefficient}."""

    def __init__(self, presentation, degree_cap):
        self.presentation = presentation
        self.field = presentation.field
        self.arrows = presentation.arrows
        self.degree_cap = degree_cap
        self.relations = [
            [(self.field.scalar(c), tuple(presentation.arrow_index[a]
                                          for a in word))
             for c, word in rel.terms]
            for rel in presentation.relations
        ]

    def target(self, key):
        source, word = key
        return source if not word else self.arrows[word[0]].target

    def source_of(self, word):
        return self.arrows[word[-1]].source


class GradedNormalForms(NormalForms):
    """Normal words found degree by degree, for relations with all terms of
    equal length.

    Degree d part is spanned by candidates arrow * w, w a normal word of
    degree d-1; relation r of length k times normal words q of degree d-k
    gives linear dependencies among them. Candidates are eliminated in
    descending lexicographic order, so the smallest words are kept."""

    def __init__(self, presentation, degree_cap):
        super().__init__(presentation, degree_cap)
        self.layers = [[(v, ()) for v in presentation.vertex_labels]]
        self.left = []  # left[d][a] maps layer d to layer d + 1
        self.by_length = [
            (len(terms[0][1]), self.source_of(terms[0][1]), terms)
            for terms in self.relations
        ]
        self._build()

    def _apply(self, word, degree, index):
        """Multiplies normal word layers[degree][index] from the left by
        word; returns (degree, coordinates) or None if result vanishes."""
        vector = self.field.zeros(len(self.layers[degree]))
        vector[index] = self.field.one
        for letter in reversed(word):
            if degree >= len(self.left):
                return None
            vector = self.field.contract(self.left[degree][letter], vector, 1)
            degree += 1
        return degree, vector

    def _build(self):
        field = self.field
        degree = 0
        while self.layers[-1]:
            degree += 1
            if degree > self.degree_cap:
                raise NotFiniteDimensional(
                    f"Nonzero paths of length {degree} exceed degree cap "
                    f"{self.degree_cap}."
                )
            previous = self.layers[-1]
            candidates = [
                (a, j) for a, arrow in enumerate(self.arrows)
                for j, key in enumerate(previous)
                if self.target(key) == arrow.source
            ]
            candidates.sort(key=lambda c: (c[0],) + previous[c[1]][1],
                            reverse=True)
            column = {c: i for i, c in enumerate(candidates)}
            rows = []
            for length, source, terms in self.by_length:
                if length > degree:
                    continue
                for q, key in enumerate(self.layers[degree - length]):
                    if self.target(key) != source:
                        continue
                    row = field.zeros(len(candidates))
                    for coeff, word in terms:
                        applied = self._apply(word[1:], degree - length, q)
                        if applied is None:
                            continue
                        rest = applied[1]
                        for j in np.flatnonzero(rest != 0):
                            row[column[(word[0], j)]] += coeff * rest[j]
                    rows.append(field.normalize(row))
            rank, reduced, pivots = field.rref(
                field.stack(rows, len(candidates))
            )
            pivot_set = set(pivots)
            free = [c for c in range(len(candidates)) if c not in pivot_set]
            free.sort(key=lambda c: (candidates[c][0],) +
                      previous[candidates[c][1]][1])
            forms = field.zeros((len(free), len(candidates)))
            if free:
                forms[np.arange(len(free)), free] = field.one
                if rank:
                    forms[:, pivots] = field.normalize(
                        -reduced[:rank][:, free].T
                    )
            tables = []
            for a in range(len(self.arrows)):
                table = field.zeros((len(free), len(previous)))
                for j in range(len(previous)):
                    if (a, j) in column:
                        table[:, j] = forms[:, column[(a, j)]]
                tables.append(table)
            self.left.append(tables)
            self.layers.append([
                (previous[candidates[c][1]][0],
                 (candidates[c][0],) + previous[candidates[c][1]][1])
                for c in free
            ])
        logger.debug(f"Path basis vanishes in degree {degree}.")

    @property
    def words(self):
        return [key for layer in self.layers for key in layer]

    def normal_form(self, source, word):
        start = self.presentation.vertex_labels.index(source)
        applied = self._apply(word, 0, start)
        if applied is None:
            return {}
        degree, vector = applied
        return {
            self.layers[degree][i]: vector[i]
            for i in np.flatnonzero(vector != 0)
        }


class CompletedNormalForms(NormalForms):
    """Normal words modulo a Groebner basis of the relation ideal, found
    by noncommutative Buchberger completion with degree-lexicographic
    ordering of words."""

    def __init__(self, presentation, degree_cap):
        super().__init__(presentation, degree_cap)
        self.basis = self._complete()
        for poly in self.basis:
            if len(self._tip(poly)) < 2:
                raise NonAdmissible(
                    "Relation ideal contains an element with leading path "
                    "shorter than 2."
                )
        self._words = self._enumerate()

    @staticmethod
    def _order(word):
        return len(word), word

    def _tip(self, poly):
        return max(poly, key=self._order)

    def _add(self, poly, word, value):
        total = self.field.scalar(poly.get(word, 0) + value)
        if total:
            poly[word] = total
        else:
            poly.pop(word, None)

    def _monic(self, poly):
        lead = self.field.inv_scalar(poly[self._tip(poly)])
        return {w: self.field.scalar(c * lead) for w, c in poly.items()}

    @staticmethod
    def _find(tip, word):
        size = len(tip)
        for pos in range(len(word) - size + 1):
            if word[pos:pos + size] == tip:
                return pos
        return None

    def _reduce(self, poly, basis):
        poly = dict(poly)
        result = {}
        while poly:
            word = max(poly, key=self._order)
            coeff = poly.pop(word)
            for g in basis:
                tip = self._tip(g)
                pos = self._find(tip, word)
                if pos is not None:
                    before, after = word[:pos], word[pos + len(tip):]
                    for w, c in g.items():
                        if w != tip:
                            self._add(poly, before + w + after, -coeff * c)
                    break
            else:
                result[word] = coeff
        return result

    def _overlaps(self, f, g):
        """S-polynomials f * v - u * g for tips tip(f) = u s, tip(g) = s v."""
        first, second = self._tip(f), self._tip(g)
        found = []
        for k in range(1, min(len(first), len(second))):
            if first[-k:] == second[:k]:
                u, v = first[:-k], second[k:]
                poly = {}
                for w, c in f.items():
                    self._add(poly, w + v, c)
                for w, c in g.items():
                    self._add(poly, u + w, -c)
                found.append(poly)
        return found

    def _complete(self):
        basis = []
        pending = []
        for terms in self.relations:
            poly = {}
            for c, w in terms:
                self._add(poly, w, c)
            pending.append(poly)
        steps = 0
        while pending:
            steps += 1
            if steps > MAX_COMPLETION_STEPS:
                raise NotFiniteDimensional("Completion does not terminate.")
            poly = self._reduce(pending.pop(0), basis)
            if not poly:
                continue
            poly = self._monic(poly)
            tip = self._tip(poly)
            if len(tip) > self.degree_cap:
                raise NotFiniteDimensional(
                    f"Completion produced leading path of length {len(tip)} "
                    f"above degree cap {self.degree_cap}."
                )
            kept = []
            for g in basis:
                if self._find(tip, self._tip(g)) is not None:
                    pending.append(g)
                else:
                    kept.append(g)
            basis = kept
            for g in basis + [poly]:
                pending.extend(self._overlaps(poly, g))
                if g is not poly:
                    pending.extend(self._overlaps(g, poly))
            basis.append(poly)
        logger.debug(f"Groebner basis of {len(basis)} elements found.")
        return basis

    def _enumerate(self):
        tips = [self._tip(g) for g in self.basis]
        layer = [(v, ()) for v in self.presentation.vertex_labels]
        words = list(layer)
        length = 0
        while layer:
            length += 1
            if length > self.degree_cap:
                raise NotFiniteDimensional(
                    f"Normal paths of length {length} exceed degree cap "
                    f"{self.degree_cap}."
                )
            following = []
            for source, word in layer:
                for a, arrow in enumerate(self.arrows):
                    if arrow.source != self.target((source, word)):
                        continue
                    new = (a,) + word
                    if any(new[:len(t)] == t for t in tips):
                        continue
                    following.append((source, new))
            words.extend(following)
            layer = following
        return words

    @property
    def words(self):
        return list(self._words)

    def normal_form(self, source, word):
        if not word:
            return {(source, ()): self.field.one}
        reduced = self._reduce({word: self.field.one}, self.basis)
        return {(source, w): c for w, c in reduced.items()}


############################
###   MODULE FUNCTIONS   ###
############################

def default_degree_cap(presentation):
    return 2 * max(1, len(presentation.arrows)) * presentation.vertex_count


def build_algebra(presentation, degree_cap=None):
    """Path algebra of quiver modulo relations, with basis of normal paths.

    Parameters
    ----------
    presentation : quiver_parser.QuiverPresentation
    degree_cap : int, optional
        Longest path allowed; 2 * arrows * vertices if omitted.

    Returns
    -------
    FDAlgebra
        Basis is ordered by position of path's source in the order, then
        by length, then lexicographically by arrow declaration; vertices
        of the algebra follow the order of the presentation.

    Raises
    ------
    NonAdmissible
        If a relation has a term shorter than 2.
    NotFiniteDimensional
        If normal paths do not vanish below the degree cap."""
    q = presentation
    field = q.field
    for rel in q.relations:
        if any(len(word) < 2 for _, word in rel.terms):
            raise NonAdmissible(
                f"Relation on line {rel.line} has a term of length below 2."
            )
    cap = degree_cap if degree_cap is not None else default_degree_cap(q)
    forms = GradedNormalForms(q, cap) if q.is_homogeneous else \
        CompletedNormalForms(q, cap)
    position = {v: i for i, v in enumerate(q.order)}
    keys = sorted(
        forms.words, key=lambda k: (position[k[0]], len(k[1]), k[1])
    )
    index = {k: i for i, k in enumerate(keys)}
    dim = len(keys)
    c = field.zeros((dim, dim, dim))
    for i, (src_i, word_i) in enumerate(keys):
        for j, key_j in enumerate(keys):
            src_j, word_j = key_j
            if forms.target(key_j) != src_i:
                continue
            if not word_i:
                c[i, j, j] = field.one
                continue
            for key, coeff in forms.normal_form(src_j, word_i + word_j).items():
                c[i, j, index[key]] = coeff
    unit = field.zeros(dim)
    idempotents = field.zeros((len(q.order), dim))
    for lam, v in enumerate(q.order):
        unit[index[(v, ())]] = field.one
        idempotents[lam, index[(v, ())]] = field.one
    names = [a.name for a in q.arrows]
    labels = [
        '*'.join(names[a] for a in word) if word else f'e{src}'
        for src, word in keys
    ]
    paths = [tuple(names[a] for a in word) for _, word in keys]
    algebra = FDAlgebra(
        field, c, unit, idempotents, labels=labels,
        vertex_labels=list(q.order), paths=paths, presentation=q
    )
    logger.info(f"Built {algebra} from {q}.")
    return algebra


def evaluate_word(algebra, text):
    """Element of algebra given by word like 'beta*y'; arrow names and
    trivial paths 'e1' are looked up among basis labels."""
    field = algebra.field
    result = None
    for name in text.split('*'):
        name = name.strip()
        try:
            factor = algebra.basis_vector(algebra.labels.index(name))
        except ValueError:
            raise KeyError(f"No basis element labeled {name!r}.")
        result = factor if result is None else \
            algebra.multiply(result, factor)
    return result if result is not None else field.array(algebra.unit)
