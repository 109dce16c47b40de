# IMPORTS
import logging as lgg
from collections import namedtuple

import numpy as np

from . import homology as hm
from .exceptions import (
    Inconclusive, NotApplicable, Undetermined, VerificationFailed
)
from .structures import modules as md
from .structures import decomposition as dc


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
FILTRATION_BUDGET = 4000
FILTRATION_BRANCHES = 2
KINDS = {
    'standard': 'Delta',
    'proper_standard': 'Deltabar',
    'costandard': 'Nabla',
    'proper_costandard': 'Nablabar',
}
ALIASES = {
    'delta': 'standard', 'deltabar': 'proper_standard',
    'nabla': 'costandard', 'nablabar': 'proper_costandard',
}
Chain = namedtuple('Chain', 'members labels')  # bottom to top


# CLASSES
class StratVerdict:
    """Classification of an algebra with an order of its simple modules,
    with evidence for every positive and negative answer."""

    def __init__(self, sss, properly_stratified, quasi_hereditary,
                 certificates=None):
        if quasi_hereditary and not properly_stratified or \
                properly_stratified and not sss:
            raise ValueError("Inconsistent stratification verdict.")
        self.sss = sss
        self.properly_stratified = properly_stratified
        self.quasi_hereditary = quasi_hereditary
        self.certificates = certificates or {}

    def __repr__(self):
        return f'<StratVerdict sss={self.sss} ' \
               f'properly_stratified={self.properly_stratified} ' \
               f'quasi_hereditary={self.quasi_hereditary}>'

    def to_dict(self):
        return {
            'sss': self.sss,
            'properly_stratified': self.properly_stratified,
            'quasi_hereditary': self.quasi_hereditary,
            'certificates': self.certificates,
        }


class FiltrationSearch:
    """Backtracking search for a filtration with subquotients from family.

    Epimorphisms onto family members are peeled off the top, members with
    bigger position first, and the search recurses on kernels. Absence of
    a filtration is certified, when dimension vectors exclude it or when
    every epimorphism tried had the only possible kernel; otherwise failed
    search is inconclusive.

    Parameters
    ----------
    family : list of Module
    seed, tries, exhaustive_cap
        Passed to epimorphism search.
    budget : int
        Maximal number of epimorphism searches.
    branches : int
        Epimorphisms tried per family member, if kernel is not unique."""

    def __init__(self, family, seed=0, tries=dc.DEFAULT_TRIES,
                 exhaustive_cap=dc.EXHAUSTIVE_CAP, budget=FILTRATION_BUDGET,
                 branches=FILTRATION_BRANCHES):
        self.family = list(family)
        self.seed = seed
        self.tries = tries
        self.exhaustive_cap = exhaustive_cap
        self.budget = budget
        self.branches = max(1, branches)
        self.dimvecs = [tuple(int(v) for v in m.dimension_vector)
                        for m in self.family]
        self._combinable = {}
        self.memo = {}
        self.spent = 0
        self.incomplete = False

    def combinable(self, vector):
        """Tells if vector is a sum of family's dimension vectors."""
        vector = tuple(int(v) for v in vector)
        if not any(vector):
            return True
        if vector in self._combinable:
            return self._combinable[vector]
        found = False
        for dimvec in self.dimvecs:
            if any(dimvec) and all(d <= v for d, v in zip(dimvec, vector)):
                if self.combinable(tuple(v - d for v, d in
                                         zip(vector, dimvec))):
                    found = True
                    break
        self._combinable[vector] = found
        return found

    def unique_kernel(self, module, member):
        """True if all epimorphisms module -> member share their kernel."""
        field = module.field
        space = md.hom_space(module, member)
        stacked = space.basis.reshape(-1, module.dim)
        common = module.dim - field.rank(stacked)
        return common == module.dim - member.dim

    def _recall(self, module):
        for other, result in self.memo.get(md.signature(module), []):
            try:
                same, _ = dc.is_isomorphic(module, other, self.seed,
                                           self.tries, self.exhaustive_cap)
            except Inconclusive:
                continue
            if same:
                return True, result
        return False, None

    def _search(self, module):
        if not module.dim:
            return []
        if not self.combinable(module.dimension_vector):
            return None
        known, result = self._recall(module)
        if known:
            return result
        result = None
        order = sorted(range(len(self.family)), reverse=True)
        for index in order:
            member = self.family[index]
            if not all(m <= d for m, d in zip(self.dimvecs[index],
                                              module.dimension_vector)):
                continue
            for attempt in range(self.branches):
                self.spent += 1
                if self.spent > self.budget:
                    self.incomplete = True
                    return None
                try:
                    epi = dc.find_epimorphism(
                        module, member, self.seed + attempt, self.tries,
                        self.exhaustive_cap
                    )
                except Inconclusive:
                    self.incomplete = True
                    break
                if epi is None:
                    break
                kernel = md.submodule(
                    module, module.field.kernel_basis(epi.matrix)
                )
                rest = self._search(kernel.source)
                if rest is not None:
                    result = rest + [index]
                    break
                if self.unique_kernel(module, member):
                    break
            else:
                self.incomplete = True
            if result is not None:
                break
        self.memo.setdefault(md.signature(module), []).append(
            (module, result)
        )
        return result

    def run(self, module):
        """Returns (True, Chain) or (False, None).

        Raises
        ------
        Inconclusive
            If no filtration was found, but its absence is not certified."""
        self.incomplete = False
        members = self._search(module)
        if members is None:
            if self.incomplete:
                raise Inconclusive(
                    f"Filtration search for {module.label or 'module'} "
                    f"ended without proof of absence.",
                    certificate={'budget': self.budget, 'spent': self.spent,
                                 'branches': self.branches}
                )
            return False, None
        labels = [self.family[i].label for i in members]
        return True, Chain(members, labels)


class Stratification:
    """Standard, proper standard, costandard and proper costandard modules
    of an algebra, which idempotents are listed in the order of the index
    set, and classification tests built on them.

    Costandard modules are duals of (proper) standard modules of the
    opposite algebra, taken with the same order.

    Parameters
    ----------
    algebra : FDAlgebra
    seed : int
    tries : int
        Random draws in isomorphism and epimorphism searches.
    exhaustive_cap : int
        Grid size limit of exhaustive searches.
    budget, branches : int
        Limits of filtration search.
    cap : int
        Resolution depth limit."""

    def __init__(self, algebra, seed=0, tries=dc.DEFAULT_TRIES,
                 exhaustive_cap=dc.EXHAUSTIVE_CAP, budget=FILTRATION_BUDGET,
                 branches=FILTRATION_BRANCHES, cap=hm.DEFAULT_CAP):
        self.algebra = algebra
        self.seed = seed
        self.tries = tries
        self.exhaustive_cap = exhaustive_cap
        self.budget = budget
        self.branches = branches
        self.cap = cap
        self._modules = {}
        self._opposite = None
        self._verdicts = {}

    def __repr__(self):
        return f'<Stratification of {self.algebra}>'

    @property
    def vertex_count(self):
        return self.algebra.vertex_count

    @property
    def opposite(self):
        """Stratification of the opposite algebra with the same order."""
        if self._opposite is None:
            self._opposite = Stratification(
                self.algebra.opposite(), self.seed, self.tries,
                self.exhaustive_cap, self.budget, self.branches, self.cap
            )
            self._opposite._opposite = self
        return self._opposite

    def _label(self, kind, lam):
        return f'{KINDS[kind]}({self.algebra.vertex_labels[lam]})'

    def module(self, kind, lam):
        """Standard-theory module of given kind at vertex position lam."""
        kind = ALIASES.get(kind, kind)
        if kind not in KINDS:
            raise ValueError(f"Unknown kind of module: {kind!r}.")
        key = (kind, lam)
        if key in self._modules:
            return self._modules[key]
        algebra = self.algebra
        label = self._label(kind, lam)
        if kind == 'standard':
            proj = md.canonical_module(algebra, 'projective', lam)
            bigger = list(range(lam + 1, self.vertex_count))
            if bigger:
                generator = md.ProjectiveSum(algebra, bigger)
                inclusion = md.trace(generator, proj)
                module = md.quotient(proj, inclusion.matrix.T, label).target
            else:
                module = md.Module(algebra, proj.action, proj.vertices, label)
        elif kind == 'proper_standard':
            delta = self.module('standard', lam)
            rad = md.radical(delta)
            local = rad.matrix[:, rad.source.vertices == lam].T
            generated = md.generated_submodule(delta, local)
            module = md.quotient(delta, generated.matrix.T, label).target
        else:
            dual_kind = 'standard' if kind == 'costandard' \
                else 'proper_standard'
            module = md.dualize(self.opposite.module(dual_kind, lam))
            module.label = label
        self._modules[key] = module
        return module

    def family(self, kind):
        return [self.module(kind, lam) for lam in range(self.vertex_count)]

    @property
    def standard(self):
        return self.family('standard')

    @property
    def proper_standard(self):
        return self.family('proper_standard')

    @property
    def costandard(self):
        return self.family('costandard')

    @property
    def proper_costandard(self):
        return self.family('proper_costandard')

    def layers(self):
        """Radical layers of all standard-theory modules."""
        return {
            self._label(kind, lam): [
                list(layer) for layer in md.radical_layers(
                    self.module(kind, lam)
                )
            ]
            for kind in KINDS for lam in range(self.vertex_count)
        }

    # classification
    def is_sss(self):
        """Layer-recursive test of A being filtered by standard modules.

        For the biggest vertex m the trace of P(m) in every P(lambda) must be
        a sum of copies of P(m), and A / A e_m A must pass the test with the
        induced order.

        Returns
        -------
        tuple
            (bool, list of per-layer certificates)"""
        if 'sss' not in self._verdicts:
            self._verdicts['sss'] = _sss_layers(self.algebra)
            logger.debug(f"SSS test of {self.algebra}: "
                         f"{self._verdicts['sss'][0]}.")
        return self._verdicts['sss']

    def has_filtration(self, module, family, budget=None, branches=None):
        """Tells if module is filtered by members of family.

        Returns
        -------
        tuple
            (bool, Chain or None)

        Raises
        ------
        Inconclusive
            If search ran out of its budget without proof of absence."""
        search = FiltrationSearch(
            family, self.seed, self.tries, self.exhaustive_cap,
            self.budget if budget is None else budget,
            self.branches if branches is None else branches
        )
        return search.run(module)

    def _chain_or_status(self, module, kind):
        try:
            found, chain = self.has_filtration(module, self.family(kind))
        except Inconclusive as error:
            return {'status': 'inconclusive', 'reason': str(error),
                    'certificate': error.certificate}
        if not found:
            return {'status': 'absent'}
        return {'status': 'found', 'chain': chain.labels}

    def is_properly_stratified(self):
        """Properly stratified test: every P(lambda) is filtered by proper
        standard modules.

        Filtrations found by search decide the verdict. A filtration of
        Delta(lambda) by Deltabar(lambda) forces
        dim Delta(lambda) = d_lambda(Delta(lambda)) * dim Deltabar(lambda),
        so failure of this identity certifies the negative answer without
        search; when it holds, search must find the filtrations.

        Returns
        -------
        tuple
            (bool, dict of certificates)

        Raises
        ------
        Inconclusive
            If some filtration search ended without a result.
        VerificationFailed
            If search and dimension count contradict each other."""
        if 'properly_stratified' in self._verdicts:
            return self._verdicts['properly_stratified']
        sss, _ = self.is_sss()
        certificates = {}
        if not sss:
            result = (False, {'reason': 'not standardly stratified'})
            self._verdicts['properly_stratified'] = result
            return result
        counted = True
        for lam in range(self.vertex_count):
            delta = self.module('standard', lam)
            bar = self.module('proper_standard', lam)
            local = int(delta.dimension_vector[lam])
            holds = delta.dim == local * bar.dim
            counted &= holds
            certificates[self.algebra.vertex_labels[lam]] = {
                'dim_standard': delta.dim,
                'local_dim': local,
                'dim_proper_standard': bar.dim,
                'holds': holds,
            }
        if not counted:
            result = (False, certificates)
            self._verdicts['properly_stratified'] = result
            return result
        statuses = []
        for lam in range(self.vertex_count):
            proj = md.canonical_module(self.algebra, 'projective', lam)
            status = self._chain_or_status(proj, 'proper_standard')
            certificates[self.algebra.vertex_labels[lam]][
                'projective_chain'] = status
            statuses.append(status['status'])
        if 'absent' in statuses:
            raise VerificationFailed(
                f"Dimensions of standard modules of {self.algebra} admit "
                f"proper standard filtrations, but some projective has none."
            )
        if 'inconclusive' in statuses:
            raise Inconclusive(
                f"Proper standard filtrations of projectives of "
                f"{self.algebra} were not found.",
                certificate=certificates
            )
        result = (True, certificates)
        self._verdicts['properly_stratified'] = result
        return result

    def is_quasi_hereditary(self):
        """Properly stratified with Delta(lambda) = Deltabar(lambda); the
        latter is a quotient of the former, so dimensions decide.

        Returns
        -------
        tuple
            (bool, dict of certificates)"""
        if 'quasi_hereditary' in self._verdicts:
            return self._verdicts['quasi_hereditary']
        proper, _ = self.is_properly_stratified()
        certificates = {
            self.algebra.vertex_labels[lam]: {
                'dim_standard': self.module('standard', lam).dim,
                'dim_proper_standard':
                    self.module('proper_standard', lam).dim,
            }
            for lam in range(self.vertex_count)
        }
        equal = all(c['dim_standard'] == c['dim_proper_standard']
                    for c in certificates.values())
        result = (proper and equal, certificates)
        self._verdicts['quasi_hereditary'] = result
        return result

    def sss_alternative_check(self):
        """Tests if every injective I(lambda) is filtered by proper
        costandard modules.

        Raises
        ------
        Inconclusive
            If some filtration search was inconclusive."""
        family = self.proper_costandard
        for lam in range(self.vertex_count):
            injective = md.canonical_module(self.algebra, 'injective', lam)
            found, _ = self.has_filtration(injective, family)
            if not found:
                return False
        return True

    def verdict(self):
        """StratVerdict with certificates of all three tests."""
        sss, layers = self.is_sss()
        proper, proper_cert = self.is_properly_stratified()
        qh, qh_cert = self.is_quasi_hereditary()
        return StratVerdict(sss, proper, qh, {
            'sss': layers,
            'properly_stratified': proper_cert,
            'quasi_hereditary': qh_cert,
        })

    # filtration dimensions
    def _require_sss(self):
        if not self.is_sss()[0]:
            raise NotApplicable(
                f"{self.algebra} is not standardly stratified."
            )

    def delta_dim(self, module):
        """Largest l with Ext^l(N, Nablabar) != 0, for N of finite
        projective dimension.

        Raises
        ------
        Undetermined
            If projective dimension of N is not known to be finite or
            infinite."""
        self._require_sss()
        projdim = hm.pd(module, self.cap, self.seed)
        if projdim.kind == 'infinite':
            return hm.DimensionValue.infinite()
        if not projdim.is_exact:
            raise Undetermined(
                f"Projective dimension of {module.label} is {projdim}."
            )
        family = self.proper_costandard
        for degree in range(projdim.value, 0, -1):
            if any(hm.ext(module, nb, degree, self.cap, self.seed)
                   for nb in family):
                return hm.DimensionValue.exact(degree)
        return hm.DimensionValue.exact(0)

    def standard_pd(self):
        """Projective dimension of the sum of standard modules."""
        return hm.dimension_max(
            hm.pd(delta, self.cap, self.seed) for delta in self.standard
        )

    def nablabar_codim(self, module):
        """Largest l with Ext^l(Delta, N) != 0; bounded by pd of Delta.

        Raises
        ------
        Undetermined
            If pd of standard modules is not known exactly."""
        self._require_sss()
        bound = self.standard_pd()
        if not bound.is_exact:
            raise Undetermined(f"Projective dimension of Delta is {bound}.")
        for degree in range(bound.value, 0, -1):
            if any(hm.ext(delta, module, degree, self.cap, self.seed)
                   for delta in self.standard):
                return hm.DimensionValue.exact(degree)
        return hm.DimensionValue.exact(0)

    def delta_multiplicities(self, module, chain=None):
        """Number of times every Delta(lambda) occurs in a filtration.

        Parameters
        ----------
        module : Module
        chain : Chain, optional
            Certified filtration by standard modules; searched for, if
            omitted.

        Raises
        ------
        ValueError
            If module is not filtered by standard modules."""
        if chain is None:
            found, chain = self.has_filtration(module, self.standard)
            if not found:
                raise ValueError(
                    f"{module.label} is not filtered by standard modules."
                )
        counts = np.bincount(
            np.asarray(chain.members, dtype=int), minlength=self.vertex_count
        )
        expected = [
            md.hom_space(module, nb).dim for nb in self.proper_costandard
        ]
        if list(counts) != expected:
            logger.warning(
                f"Multiplicities {list(counts)} of {module.label} disagree "
                f"with dimensions of Hom into proper costandard modules "
                f"{expected}."
            )
        return counts


# MODULE FUNCTIONS
def _sss_layers(algebra):
    """Certificates of the recursive standard stratification test; every
    layer records, per projective, the top vectors generating the trace of
    the biggest projective and a basis of that trace."""
    n = algebra.vertex_count
    if n <= 1:
        return True, []
    field = algebra.field
    top = n - 1
    name = algebra.vertex_labels[top]
    generator = md.ProjectiveSum(algebra, [top])
    size = generator.dim
    traces = {}
    holds = True
    for lam in range(n - 1):
        proj = md.canonical_module(algebra, 'projective', lam)
        inclusion = md.trace(generator, proj)
        copies = int(
            md.projective_cover_map(inclusion.source).source.multiplicities[top]
        ) if inclusion.source.dim else 0
        ok = inclusion.source.dim == copies * size
        holds &= ok
        generators = [int(j) for j in np.flatnonzero(proj.vertices == top)]
        traces[algebra.vertex_labels[lam]] = {
            'trace_dim': inclusion.source.dim,
            'copies': copies,
            'projective_dim': size,
            'hom_dim': len(generators),
            'generators': generators,
            'trace_basis': field.encode(inclusion.matrix.T),
            'holds': ok,
        }
    layer = {'layer': name, 'traces': traces}
    if not holds:
        return False, [layer]
    quotient = algebra.quotient_by_idempotent_ideal(top).quotient
    rest, layers = _sss_layers(quotient)
    return rest, [layer] + layers


def stratification(algebra, **parameters):
    """Stratification cached on algebra, created on first use."""
    if 'stratification' not in algebra.cache or parameters:
        algebra.cache['stratification'] = Stratification(algebra, **parameters)
    return algebra.cache['stratification']


def strat_module(algebra, kind, lam):
    return stratification(algebra).module(kind, lam)


def is_sss(algebra):
    return stratification(algebra).is_sss()


def is_properly_stratified(algebra):
    return stratification(algebra).is_properly_stratified()


def is_quasi_hereditary(algebra):
    return stratification(algebra).is_quasi_hereditary()


def sss_alternative_check(algebra):
    return stratification(algebra).sss_alternative_check()


def has_filtration(module, family, **parameters):
    return stratification(module.algebra).has_filtration(
        module, family, **parameters
    )


def delta_dim(module):
    return stratification(module.algebra).delta_dim(module)


def nablabar_codim(module):
    return stratification(module.algebra).nablabar_codim(module)


def delta_multiplicities(module, chain=None):
    return stratification(module.algebra).delta_multiplicities(module, chain)
