# IMPORTS
import logging as lgg

import numpy as np

from .exceptions import NotAntiInvolution, NotApplicable
from .structures import modules as md
from .structures import decomposition as dc


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# CLASSES
class Duality:
    """Simple preserving duality M -> M* given by anti-involution of the
    algebra fixing its idempotents.

    M* is the vector space dual of M with a acting as the transpose of
    sigma(a): (a . phi)(m) = phi(sigma(a) m).

    Attributes
    ----------
    algebra : FDAlgebra
    mapping : dict
        Arrow names to arrow names.
    matrix : numpy.ndarray
        Matrix of sigma in the basis of the algebra, column i holds
        sigma(b_i)."""

    def __init__(self, algebra, mapping, matrix):
        self.algebra = algebra
        self.mapping = dict(mapping)
        self.matrix = matrix

    def __repr__(self):
        pairs = ', '.join(f'{k}->{v}' for k, v in sorted(self.mapping.items()))
        return f'<Duality {pairs}>'

    def apply(self, element):
        return self.algebra.field.contract(self.matrix, element, 1)

    def star(self, module, label=''):
        """Module M*, cached on M."""
        if 'star' in module.cache:
            return module.cache['star']
        if module.algebra is not self.algebra:
            raise ValueError("Module is defined over other algebra.")
        field = module.field
        twisted = field.contract(self.matrix.T, module.action, 1)
        image = md.Module(
            self.algebra, np.transpose(twisted, (0, 2, 1)), module.vertices,
            label or f'{module.label}*'
        )
        module.cache['star'] = image
        return image

    def star_map(self, hom):
        return md.ModuleMap(
            self.star(hom.target), self.star(hom.source), hom.matrix.T
        )

    def is_self_dual(self, module, seed=0, tries=dc.DEFAULT_TRIES,
                     exhaustive_cap=dc.EXHAUSTIVE_CAP):
        return dc.is_isomorphic(
            self.star(module), module, seed, tries, exhaustive_cap
        )[0]

    def compare_tilting(self, tilting, seed=0, tries=dc.DEFAULT_TRIES,
                        exhaustive_cap=dc.EXHAUSTIVE_CAP):
        """Tests T* = T for the characteristic tilting module, summand by
        summand; T* is always the characteristic cotilting module, so the
        result tells if T = C.

        Returns
        -------
        dict
            Verdict for every summand and for the whole module."""
        summands = {
            m.label: self.is_self_dual(m, seed, tries, exhaustive_cap)
            for m in tilting.summands
        }
        verdict = all(summands.values())
        logger.info(f"Characteristic tilting module is "
                    f"{'' if verdict else 'not '}self-dual.")
        return {'self_dual': verdict, 'summands': summands}

    def to_dict(self):
        return {'mapping': dict(sorted(self.mapping.items())),
                'verified': True}


# MODULE FUNCTIONS
def _arrow_vector(algebra, name):
    try:
        return algebra.basis_vector(algebra.paths.index((name,)))
    except ValueError:
        raise NotAntiInvolution(f"Arrow {name!r} is not a basis element.")


def _word_image(algebra, images, word):
    """sigma(a_1 * ... * a_k) = sigma(a_k) * ... * sigma(a_1)."""
    result = None
    for name in reversed(word):
        factor = images[name]
        result = factor if result is None else \
            algebra.multiply(result, factor)
    return result


def verify_duality(algebra, mapping=None, seed=0):
    """Checks that arrow involution extends to anti-involution of the
    algebra fixing the idempotents.

    Parameters
    ----------
    algebra : FDAlgebra
        Algebra built from quiver presentation.
    mapping : dict, optional
        Arrow names to arrow names; taken from presentation if omitted.

    Returns
    -------
    Duality

    Raises
    ------
    NotApplicable
        If no involution is given or algebra has no presentation.
    NotAntiInvolution
        If some condition fails; message names the offending arrow,
        relation or basis word."""
    presentation = algebra.presentation
    if presentation is None or algebra.paths is None:
        raise NotApplicable(f"{algebra} is not given by quiver presentation.")
    mapping = presentation.duality if mapping is None else mapping
    if not mapping:
        raise NotApplicable("No arrow involution given.")
    field = algebra.field
    for arrow in presentation.arrows:
        if arrow.name not in mapping:
            raise NotAntiInvolution(f"Arrow {arrow.name!r} has no image.")
        image = presentation.arrow(mapping[arrow.name])
        if mapping.get(image.name) != arrow.name:
            raise NotAntiInvolution(
                f"Involution is not of order 2 at arrow {arrow.name!r}."
            )
        if (image.source, image.target) != (arrow.target, arrow.source):
            raise NotAntiInvolution(
                f"Arrow {arrow.name!r} from {arrow.source} to {arrow.target} "
                f"is sent to {image.name!r} from {image.source} to "
                f"{image.target}, idempotents are not fixed."
            )
    images = {a.name: _arrow_vector(algebra, mapping[a.name])
              for a in presentation.arrows}
    for relation in presentation.relations:
        total = field.zeros(algebra.dim)
        for coeff, word in relation.terms:
            total = field.normalize(
                total + _word_image(algebra, images, word) *
                field.scalar(coeff)
            )
        if not field.is_zero(total):
            text = ' + '.join('*'.join(w) for _, w in relation.terms)
            raise NotAntiInvolution(
                f"Relation {text} on line {relation.line} is not sent into "
                f"the relation ideal."
            )
    matrix = field.zeros((algebra.dim, algebra.dim))
    for i, path in enumerate(algebra.paths):
        matrix[:, i] = _word_image(algebra, images, path) if path else \
            algebra.basis_vector(i)
    if not np.array_equal(field.matmul(matrix, matrix), field.eye(algebra.dim)):
        raise NotAntiInvolution("Extension to the algebra is not of order 2.")
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            product = algebra.multiply(algebra.basis_vector(i),
                                       algebra.basis_vector(j))
            left = field.contract(matrix, product, 1)
            right = algebra.multiply(matrix[:, j], matrix[:, i])
            if not np.array_equal(left, right):
                raise NotAntiInvolution(
                    f"Extension does not reverse product of "
                    f"{algebra.labels[i]} and {algebra.labels[j]}."
                )
    duality = Duality(algebra, mapping, matrix)
    for lam in range(algebra.vertex_count):
        simple = md.canonical_module(algebra, 'simple', lam)
        if not duality.is_self_dual(simple, seed):
            raise NotAntiInvolution(
                f"Simple module {simple.label} is not preserved."
            )
    logger.info(f"Verified {duality} on {algebra}.")
    return duality
