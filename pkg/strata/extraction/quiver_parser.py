import re
import logging as lgg
from collections import namedtuple
from fractions import Fraction

from .. import linalg as la
from ..exceptions import QuiverSyntaxError, QuiverTypeError


##################
###   LOGGER   ###
##################

logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


##################
###   REGEXS   ###
##################

name_pat = r"[A-Za-z_][A-Za-z0-9_']*"
coeff_pat = r'\d+(?:/\d+)?'
word_pat = name_pat + r'(?:\s*\*\s*' + name_pat + r')*'

comment = re.compile(r'#.*$')
field_line = re.compile(r'^field\s+(\S+)$')
vertices_line = re.compile(r'^vertices\s+(\d+)$')
arrow_line = re.compile(
    r'^arrow\s+(' + name_pat + r')\s+(\S+)\s+(\S+)$'
)
relation_line = re.compile(r'^relation\s+(.+)$')
order_line = re.compile(r'^order((?:\s+\S+)+)$')
duality_line = re.compile(r'^duality\s+(.+)$')
term = re.compile(
    r'\s*(?P<sign>[+-])?\s*(?P<coeff>' + coeff_pat + r')?\s*\*?\s*'
    r'(?P<word>' + word_pat + r')\s*'
)
duality_pair = re.compile(
    r'^\s*(' + name_pat + r')\s*->\s*(' + name_pat + r')\s*$'
)


############################
###   GLOBAL VARIABLES   ###
############################

Arrow = namedtuple('Arrow', 'name source target')
Relation = namedtuple('Relation', 'terms line')  # terms: [(Fraction, word)]


###################
###   CLASSES   ###
###################

class QuiverPresentation:
    """Quiver with relations, as read from presentation file.

    Words are tuples of arrow names written left to right; composition is
    function-style, so in word (a, b) arrow b is applied first and
    target(b) must equal source(a).

    Attributes
    ----------
    field : linalg.FieldSpec
    vertex_labels : list of str
        Vertex names '1'...'n'.
    arrows : list of Arrow
    relations : list of Relation
    order : list of str
        Vertex labels in the order of the index set, smallest first.
    duality : dict or None
        Arrow involution as given in file; it is not verified here."""

    def __init__(self, field, vertex_count, arrows, relations, order=None,
                 duality=None):
        self.field = field
        self.vertex_labels = [str(i + 1) for i in range(vertex_count)]
        self.arrows = list(arrows)
        self.relations = list(relations)
        self.order = list(order) if order else list(self.vertex_labels)
        self.duality = duality
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def __repr__(self):
        return f'<QuiverPresentation vertices={len(self.vertex_labels)} ' \
               f'arrows={len(self.arrows)} relations={len(self.relations)}>'

    @property
    def vertex_count(self):
        return len(self.vertex_labels)

    def arrow(self, name):
        return self.arrows[self.arrow_index[name]]

    def source(self, word):
        return self.arrow(word[-1]).source

    def target(self, word):
        return self.arrow(word[0]).target

    def composes(self, word):
        return all(
            self.arrow(outer).source == self.arrow(inner).target
            for outer, inner in zip(word, word[1:])
        )

    @property
    def is_homogeneous(self):
        """True if every relation has all terms of the same length."""
        return all(
            len({len(w) for _, w in rel.terms}) <= 1
            for rel in self.relations
        )

    def with_order(self, order):
        """Copy of this presentation with other order of vertices."""
        return QuiverPresentation(
            self.field, self.vertex_count, self.arrows, self.relations,
            order=order, duality=self.duality
        )


############################
###   MODULE FUNCTIONS   ###
############################

def parse_terms(text, line=None):
    """Splits relation text into list of (coefficient, word) pairs."""
    terms = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = term.match(text, position)
        if not match or match.end() == position:
            raise QuiverSyntaxError(
                f"can not parse relation near {text[position:]!r}", line
            )
        if terms and not match.group('sign'):
            raise QuiverSyntaxError(
                f"terms must be joined by '+' or '-': {text!r}", line
            )
        coeff = Fraction(match.group('coeff') or 1)
        if match.group('sign') == '-':
            coeff = -coeff
        word = tuple(w.strip() for w in match.group('word').split('*'))
        terms.append((coeff, word))
        position = match.end()
    if not terms:
        raise QuiverSyntaxError("empty relation", line)
    return terms


def parse_duality(text, line=None):
    mapping = {}
    for chunk in text.split(','):
        match = duality_pair.match(chunk)
        if not match:
            raise QuiverSyntaxError(
                f"expected 'name->name', got {chunk.strip()!r}", line
            )
        mapping[match.group(1)] = match.group(2)
    return mapping


def parse(text, min_prime=la.DEFAULT_PRIME):
    """Reads quiver with relations from text of presentation file.

    Parameters
    ----------
    text : str
        Contents of the file.
    min_prime : int, optional
        Smallest characteristic accepted for prime fields.

    Returns
    -------
    QuiverPresentation

    Raises
    ------
    QuiverSyntaxError
        If a line does not follow the grammar.
    QuiverTypeError
        If a relation's word does not compose, its terms are not parallel,
        or it refers to unknown arrow or vertex."""
    field = la.PrimeField(la.DEFAULT_PRIME)
    vertex_count = None
    arrows, raw_relations, order, duality = [], [], None, None
    order_lineno = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = comment.sub('', raw).strip()
        if not line:
            continue
        if field_line.match(line):
            value = field_line.match(line).group(1)
            try:
                field = la.FieldSpec.from_string(value)
            except ValueError as error:
                raise QuiverSyntaxError(str(error), lineno)
            if field.characteristic and field.characteristic < min_prime:
                raise QuiverSyntaxError(
                    f"prime {field.characteristic} is smaller than "
                    f"required minimum {min_prime}", lineno
                )
        elif vertices_line.match(line):
            vertex_count = int(vertices_line.match(line).group(1))
            if vertex_count < 1:
                raise QuiverSyntaxError("quiver needs a vertex", lineno)
        elif arrow_line.match(line):
            name, source, target = arrow_line.match(line).groups()
            if any(a.name == name for a, _ in arrows):
                raise QuiverSyntaxError(
                    f"arrow {name!r} declared twice", lineno
                )
            arrows.append((Arrow(name, source, target), lineno))
        elif relation_line.match(line):
            terms = parse_terms(relation_line.match(line).group(1), lineno)
            raw_relations.append(Relation(terms, lineno))
        elif order_line.match(line):
            order = order_line.match(line).group(1).split()
            order_lineno = lineno
        elif duality_line.match(line):
            duality = parse_duality(duality_line.match(line).group(1), lineno)
        else:
            raise QuiverSyntaxError(f"unrecognized line {raw.strip()!r}",
                                    lineno)
    if vertex_count is None:
        raise QuiverSyntaxError("missing 'vertices' declaration")
    labels = [str(i + 1) for i in range(vertex_count)]
    for arrow, lineno in arrows:
        for end in (arrow.source, arrow.target):
            if end not in labels:
                raise QuiverTypeError(
                    f"arrow {arrow.name!r} uses unknown vertex {end!r}",
                    lineno
                )
    if order is not None and sorted(order) != sorted(labels):
        raise QuiverSyntaxError(
            f"order must be a permutation of {' '.join(labels)}",
            order_lineno
        )
    presentation = QuiverPresentation(
        field, vertex_count, [a for a, _ in arrows], [], order, duality
    )
    for relation in raw_relations:
        presentation.relations.append(_checked(presentation, relation))
    if duality is not None:
        for name, image in duality.items():
            for arrow_name in (name, image):
                if arrow_name not in presentation.arrow_index:
                    raise QuiverTypeError(
                        f"duality refers to unknown arrow {arrow_name!r}"
                    )
    logger.debug(f"Parsed {presentation}.")
    return presentation


def _checked(presentation, relation):
    ends = set()
    for _, word in relation.terms:
        for name in word:
            if name not in presentation.arrow_index:
                raise QuiverTypeError(
                    f"unknown arrow {name!r}", relation.line
                )
        if not presentation.composes(word):
            raise QuiverTypeError(
                f"word {'*'.join(word)!r} does not compose", relation.line
            )
        ends.add((presentation.source(word), presentation.target(word)))
    if len(ends) > 1:
        raise QuiverTypeError(
            "terms of relation are not parallel paths", relation.line
        )
    return relation


def load(path, min_prime=la.DEFAULT_PRIME):
    with open(path, 'r', encoding='utf-8') as handle:
        return parse(handle.read(), min_prime=min_prime)
