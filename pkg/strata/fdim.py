# IMPORTS
import logging as lgg
from collections import namedtuple

import numpy as np

from . import homology as hm
from . import ringel as rg
from . import tilting as tl
from .exceptions import (
    Inconclusive, NotApplicable, StrataError, Undetermined
)
from .structures import modules as md
from .structures import decomposition as dc


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
Bound = namedtuple('Bound', 'value source')
CLAIMS = {
    'fdim-twice-pd-tilting':
        'fdim(A) = 2 pd(T) for self-dual T under a duality',
    'gldim-twice-pd-tilting':
        'gldim(A) = 2 pd(T) for quasi-hereditary A with a duality',
    'fdim-upper-delta-plus-tilting': 'fdim(A) <= fdimDelta(A) + pd(T)',
    'fdim-equals-pd-two-step':
        'fdim(A) = pd(H) when the Ringel dual is properly stratified',
    'fdim-twice-pd-ringel-tilting':
        'fdim(A) = 2 pd(T^R) for properly stratified A with a duality and '
        'properly stratified Ringel dual',
    'fdim-lower-twice-delta':
        'fdim(A) >= 2 fdimDelta(A) for properly stratified A with a duality',
    'fdim-delta-equals-pd-ringel-tilting':
        'fdimDelta(A) = pd(T^R) when A and its Ringel dual are properly '
        'stratified',
    'fdim-twice-delta':
        'fdim(A) = 2 fdimDelta(A) for properly stratified A with a duality '
        'and properly stratified Ringel dual',
    'fdim-equals-pd-injective':
        'fdim(A) = pd(I) when I is a generalized tilting module',
    'fdim-at-most-2n-2': 'fdim(A) <= 2n - 2',
    'ifdim-at-most-fdim':
        'ifdim(A) <= fdim(A) when the Ringel dual is properly stratified',
    'bound-chain':
        '2 fdimDelta <= fdim <= fdimDelta + pd(T) <= 2 pd(T)',
}
CONJECTURE = 'fdim-delta-plus-tilting'


# CLASSES
class DeltaEstimate:
    """Finitistic dimension of modules filtered by standard modules, exact
    or known only within bounds.

    Attributes
    ----------
    value : homology.DimensionValue or None
        Exact value, if known.
    bounds : tuple
        Lower and upper bound, None for unknown upper bound.
    certificate : dict"""

    def __init__(self, value=None, bounds=(0, None), certificate=None):
        self.value = value
        self.bounds = bounds
        self.certificate = certificate or {}

    def __repr__(self):
        if self.is_exact:
            return f'<DeltaEstimate exact {self.value}>'
        return f'<DeltaEstimate within {self.bounds}>'

    @property
    def is_exact(self):
        return self.value is not None and self.value.is_exact

    def to_dict(self):
        if self.is_exact:
            return {'kind': 'exact', 'value': self.value.value,
                    'certificate': self.certificate}
        return {'kind': 'unknown', 'bounds': list(self.bounds),
                'certificate': self.certificate}


class FdimReport:
    """Finitistic dimension of an algebra with everything it was found
    from.

    Attributes
    ----------
    lower_bounds, upper_bounds : list of Bound
    fdim : homology.DimensionValue or None
        Exact value if bounds meet.
    theorem_checks : list of dict
        Claim id, verdict and details; verdict is one of 'pass', 'fail',
        'inapplicable', 'undetermined'."""

    def __init__(self, pd_T, id_C, fdim_delta, lower_bounds, upper_bounds,
                 theorem_checks, conjecture_check, chain, ifdim=None,
                 notes=None):
        self.pd_T = pd_T
        self.id_C = id_C
        self.fdim_delta = fdim_delta
        self.lower_bounds = lower_bounds
        self.upper_bounds = upper_bounds
        self.theorem_checks = theorem_checks
        self.conjecture_check = conjecture_check
        self.chain = chain
        self.ifdim = ifdim
        self.notes = notes or []

    def __repr__(self):
        return f'<FdimReport fdim={self.fdim or self.interval}>'

    @property
    def lower(self):
        return max([b.value for b in self.lower_bounds] + [0])

    @property
    def upper(self):
        values = [b.value for b in self.upper_bounds]
        return min(values) if values else None

    @property
    def interval(self):
        return self.lower, self.upper

    @property
    def fdim(self):
        if self.upper is not None and self.lower == self.upper:
            return hm.DimensionValue.exact(self.lower)
        return None

    @property
    def failures(self):
        return [c['claim'] for c in self.theorem_checks
                if c['verdict'] == 'fail']

    def to_dict(self):
        fdim = {'exact': self.fdim.value} if self.fdim is not None else \
            {'interval': list(self.interval)}
        fdim['lower_bounds'] = [
            {'value': b.value, 'source': b.source} for b in self.lower_bounds
        ]
        fdim['upper_bounds'] = [
            {'value': b.value, 'source': b.source} for b in self.upper_bounds
        ]
        out = {
            'pd_T': _encode(self.pd_T),
            'id_C': _encode(self.id_C),
            'fdim_delta': self.fdim_delta.to_dict(),
            'fdim': fdim,
            'chain': self.chain,
            'theorem_checks': self.theorem_checks,
            'conjecture_check': self.conjecture_check,
            'notes': self.notes,
        }
        if self.ifdim is not None:
            out['ifdim'] = self.ifdim
        return out


# MODULE FUNCTIONS
def _encode(value):
    return None if value is None else value.to_dict()


def _exact(value):
    """Integer value of exact DimensionValue, None otherwise."""
    if value is None or not value.is_exact:
        return None
    return value.value


def _radical_rows(tilting, lam):
    """Radical maps out of T(lambda) into summands of T, stacked: all maps
    into other summands and endomorphisms shifted to zero trace."""
    field = tilting.algebra.field
    source = tilting.summands[lam]
    d = source.dim
    rows = []
    for mu, target in enumerate(tilting.summands):
        space = md.hom_space(source, target)
        for h in space.basis:
            if mu == lam:
                shift = field.scalar(np.sum(np.diagonal(h))) * \
                    field.inv_scalar(d)
                h = field.normalize(h - field.eye(d) * field.scalar(shift))
            rows.append(h)
    return rows


def injection_certificate(tilting):
    """Tells if every injection between modules of Add(T) splits.

    It is enough that for every lambda some nonzero vector of T(lambda) is
    killed by all radical maps from T(lambda) into summands of T: radical
    part of an injection restricted to T(lambda) kills that vector.

    Returns
    -------
    tuple
        (bool, dict of common kernel dimensions)"""
    field = tilting.algebra.field
    dims = {}
    for lam, summand in enumerate(tilting.summands):
        rows = _radical_rows(tilting, lam)
        if rows:
            kernel = field.kernel_basis(np.vstack(rows))
            dims[summand.label] = len(kernel)
        else:
            dims[summand.label] = summand.dim
    holds = all(v > 0 for v in dims.values())
    return holds, dims


def fdim_delta_estimate(strat, duality=None):
    """Estimate of fdimDelta(A).

    Through the Ringel dual, if it is properly stratified: fdimDelta equals
    pd of its characteristic tilting module, also checked against
    delta_dim(H). Otherwise zero is certified if injections in Add(T)
    split. Else the value is unknown, bounded by pd(T) when a duality is
    given.

    Raises
    ------
    NotApplicable
        If the algebra is not standardly stratified."""
    strat._require_sss()
    tilting = tl.characteristic_tilting(strat)
    try:
        data = rg.ringel_dual(strat)
        ringel_proper, _ = rg.ringel_dual_properly_stratified(data)
    except StrataError as error:
        logger.warning(f"Ringel dual not available: {error}")
        ringel_proper = False
    if ringel_proper:
        two_step = rg.two_step_tilting(strat)
        value = two_step.ringel_tilting.dimension
        certificate = {'route': 'ringel_tilting',
                       'pd_ringel_tilting': value.to_dict()}
        try:
            check = hm.dimension_max(
                strat.delta_dim(h) for h in two_step.summands
            )
            certificate['delta_dim_H'] = check.to_dict()
            if check != value:
                logger.warning(
                    f"delta_dim(H) = {check} differs from pd of tilting "
                    f"module of Ringel dual {value}."
                )
        except Undetermined as error:
            certificate['delta_dim_H'] = {'kind': 'undetermined',
                                          'reason': str(error)}
        if value.is_exact:
            return DeltaEstimate(value, (value.value, value.value),
                                 certificate)
    holds, dims = injection_certificate(tilting)
    if holds:
        return DeltaEstimate(
            hm.DimensionValue.exact(0), (0, 0),
            {'route': 'injection', 'common_kernel_dims': dims}
        )
    upper = _exact(tilting.dimension) if duality is not None else None
    return DeltaEstimate(None, (0, upper),
                         {'route': 'none', 'common_kernel_dims': dims})


def fcodim_nabla_estimate(strat):
    """Estimate of fcodimNabla(A) found as fdimDelta of the opposite
    algebra; unknown if the opposite algebra is not standardly
    stratified."""
    try:
        return fdim_delta_estimate(strat.opposite)
    except NotApplicable as error:
        return DeltaEstimate(None, (0, None),
                             {'route': 'opposite', 'reason': str(error)})


def _witnesses(strat, tilting, cotilting, two_step):
    algebra = strat.algebra
    modules = list(tilting.summands)
    for kind in ('standard', 'proper_standard', 'costandard',
                 'proper_costandard'):
        modules += strat.family(kind)
    for kind in ('simple', 'injective'):
        modules += [md.canonical_module(algebra, kind, lam)
                    for lam in range(algebra.vertex_count)]
    if cotilting is not None:
        modules += cotilting.summands
    if two_step is not None:
        modules += two_step.summands
    return modules


def _check_equal(value, lower, upper):
    if value is None:
        return 'undetermined'
    if lower == upper and upper is not None:
        return 'pass' if value == lower else 'fail'
    if value < lower or (upper is not None and value > upper):
        return 'fail'
    return 'undetermined'


def _check_at_most(bound, lower, upper):
    if bound is None:
        return 'undetermined'
    if upper is not None and upper <= bound:
        return 'pass'
    if lower > bound:
        return 'fail'
    return 'undetermined'


def _check_at_least(bound, lower, upper):
    if bound is None:
        return 'undetermined'
    if lower >= bound:
        return 'pass'
    if upper is not None and upper < bound:
        return 'fail'
    return 'undetermined'


def _relation(first, second):
    if first is None or second is None:
        return '?'
    return '<' if first < second else '=' if first == second else '>'


def _chain(delta, fdim, pd_T):
    """Evaluated 2 fdimDelta <= fdim <= fdimDelta + pd(T) <= 2 pd(T)."""
    terms = [
        ('2*fdim_delta', None if delta is None else 2 * delta),
        ('fdim', fdim),
        ('fdim_delta+pd_T', None if delta is None or pd_T is None
         else delta + pd_T),
        ('2*pd_T', None if pd_T is None else 2 * pd_T),
    ]
    values = [v for _, v in terms]
    relations = [_relation(a, b) for a, b in zip(values, values[1:])]
    holds = None if None in values else \
        all(a <= b for a, b in zip(values, values[1:]))

    def show(v):
        return '?' if v is None else str(v)

    full = show(values[0])
    for rel, value in zip(relations, values[1:]):
        full += f' {rel} {show(value)}'
    display = f'{show(values[0])} {_relation(values[0], values[1])} ' \
              f'{show(values[1])} {_relation(values[1], values[3])} ' \
              f'{show(values[3])}'
    return {
        'terms': {name: value for name, value in terms},
        'relations': relations,
        'holds': holds,
        'display': display,
        'full': full,
    }


def ifdim_check(strat, duality=None):
    """Compares injective dimensions of sampled modules with pd(H).

    Injections Nablabar(lambda) -> H(lambda) are searched for; modules with
    finite injective dimension are cotilting summands, costandard modules
    and, given a duality, M* for finite pd witnesses M.

    Raises
    ------
    NotApplicable
        If the Ringel dual is not properly stratified."""
    two_step = rg.two_step_tilting(strat)
    bound = _exact(two_step.pd)
    injections = {}
    for lam, summand in enumerate(two_step.summands):
        nabla = strat.module('proper_costandard', lam)
        found = dc.find_monomorphism(
            nabla, summand, strat.seed, strat.tries, strat.exhaustive_cap
        )
        injections[summand.label] = found is not None
    samples = list(tl.characteristic_cotilting(strat).summands) + \
        strat.costandard
    if duality is not None:
        finite = [m for m in tl.characteristic_tilting(strat).summands +
                  strat.standard
                  if hm.pd(m, strat.cap, strat.seed).is_finite]
        samples += [duality.star(m) for m in finite]
    values, violations = {}, []
    for module in samples:
        value = hm.id(module, strat.cap, strat.seed)
        if not value.is_exact:
            continue
        values[module.label] = value.value
        if bound is not None and value.value > bound:
            violations.append(module.label)
            logger.error(f"id({module.label}) = {value} exceeds pd(H) = "
                         f"{bound}.")
    return {
        'pd_H': two_step.pd.to_dict(),
        'injections': injections,
        'sampled_id': values,
        'ifdim_lower_bound': max(values.values(), default=0),
        'violations': violations,
    }


def fdim_report(strat, duality=None):
    """Bounds of finitistic dimension assembled from every applicable
    result, with verdicts of the claims they come from.

    Parameters
    ----------
    strat : stratification.Stratification
    duality : duality.Duality, optional
        Verified simple preserving duality.

    Returns
    -------
    FdimReport

    Raises
    ------
    NotApplicable
        If the algebra is not standardly stratified."""
    strat._require_sss()
    algebra = strat.algebra
    n = algebra.vertex_count
    cap, seed = strat.cap, strat.seed
    notes = []
    tilting = tl.characteristic_tilting(strat)
    pd_T = _exact(tilting.dimension)
    try:
        cotilting = tl.characteristic_cotilting(strat)
    except StrataError as error:
        cotilting = None
        notes.append(f'cotilting module not available: {error}')
    proper = strat.is_properly_stratified()[0]
    quasi_hereditary = strat.is_quasi_hereditary()[0]
    try:
        ringel_proper = rg.ringel_dual_properly_stratified(
            rg.ringel_dual(strat)
        )[0]
    except StrataError as error:
        ringel_proper = False
        notes.append(f'Ringel dual not available: {error}')
    two_step = rg.two_step_tilting(strat) if ringel_proper else None
    if two_step is None:
        notes.append('two-step tilting module not constructed: Ringel dual '
                     'is not properly stratified')
    delta = fdim_delta_estimate(strat, duality)
    delta_value = _exact(delta.value) if delta.is_exact else None
    self_dual = duality.compare_tilting(
        tilting, seed, strat.tries, strat.exhaustive_cap
    )['self_dual'] if duality is not None else False
    pd_H = _exact(two_step.pd) if two_step is not None else None
    pd_ringel_tilting = _exact(two_step.ringel_tilting.dimension) \
        if two_step is not None else None
    injectives = md.DirectSum(
        [md.canonical_module(algebra, 'injective', lam) for lam in range(n)],
        label='I'
    )
    pd_I = hm.pd(injectives, cap, seed)
    try:
        injective_tilting = tl.is_generalized_tilting(
            injectives, cap, seed, strat.tries, strat.exhaustive_cap
        )[0]
    except Inconclusive as error:
        injective_tilting = None
        notes.append(f'generalized tilting test of I inconclusive: {error}')

    upper = [Bound(2 * n - 2, 'fdim-at-most-2n-2')]
    if delta_value is not None and pd_T is not None:
        upper.append(Bound(delta_value + pd_T,
                           'fdim-upper-delta-plus-tilting'))
    if duality is not None and self_dual and pd_T is not None:
        upper.append(Bound(2 * pd_T, 'fdim-twice-pd-tilting'))
    if injective_tilting and pd_I.is_exact:
        upper.append(Bound(pd_I.value, 'fdim-equals-pd-injective'))
    if pd_H is not None:
        upper.append(Bound(pd_H, 'fdim-equals-pd-two-step'))
    lower = []
    witness = None
    for module in _witnesses(strat, tilting, cotilting, two_step):
        value = _exact(hm.pd(module, cap, seed))
        if value is not None and (witness is None or value > witness[0]):
            witness = (value, module.label)
    if witness is not None:
        lower.append(Bound(witness[0], f'pd({witness[1]})'))
    if proper and duality is not None and delta_value is not None:
        lower.append(Bound(2 * delta_value, 'fdim-lower-twice-delta'))
    if pd_H is not None:
        lower.append(Bound(pd_H, 'fdim-equals-pd-two-step'))
    if injective_tilting and pd_I.is_exact:
        lower.append(Bound(pd_I.value, 'fdim-equals-pd-injective'))

    lo = max([b.value for b in lower] + [0])
    hi = min(b.value for b in upper)
    if lo > hi:
        logger.error(f"Lower bound {lo} of fdim exceeds upper bound {hi}.")
    fdim_value = lo if lo == hi else None
    with_duality = duality is not None
    ifdim = None
    if ringel_proper:
        try:
            ifdim = ifdim_check(strat, duality)
        except StrataError as error:
            notes.append(f'ifdim check failed: {error}')
    else:
        notes.append('ifdim-at-most-fdim inapplicable: Ringel dual is not '
                     'properly stratified')

    def twice(value):
        return None if value is None else 2 * value

    checks = []

    def claim(name, hypothesis, verdict, **details):
        checks.append({
            'claim': name,
            'statement': CLAIMS[name],
            'verdict': verdict if hypothesis else 'inapplicable',
            **(details if hypothesis else {}),
        })

    claim('fdim-twice-pd-tilting', with_duality and self_dual,
          _check_equal(twice(pd_T), lo, hi), expected=twice(pd_T))
    if quasi_hereditary and with_duality:
        gldim = hm.gldim(algebra, cap, seed)
        claim('gldim-twice-pd-tilting', True,
              'undetermined' if not gldim.is_exact or pd_T is None else
              'pass' if gldim.value == 2 * pd_T else 'fail',
              gldim=gldim.to_dict(), expected=twice(pd_T))
    else:
        claim('gldim-twice-pd-tilting', False, None)
    claim('fdim-upper-delta-plus-tilting', True,
          _check_at_most(None if delta_value is None or pd_T is None
                         else delta_value + pd_T, lo, hi))
    claim('fdim-equals-pd-two-step', ringel_proper,
          _check_equal(pd_H, lo, hi), expected=pd_H)
    claim('fdim-twice-pd-ringel-tilting',
          proper and with_duality and ringel_proper,
          _check_equal(twice(pd_ringel_tilting), lo, hi),
          expected=twice(pd_ringel_tilting))
    claim('fdim-lower-twice-delta', proper and with_duality,
          _check_at_least(twice(delta_value), lo, hi))
    claim('fdim-delta-equals-pd-ringel-tilting', proper and ringel_proper,
          'undetermined' if delta_value is None or pd_ringel_tilting is None
          else 'pass' if delta_value == pd_ringel_tilting else 'fail',
          expected=pd_ringel_tilting)
    claim('fdim-twice-delta', proper and with_duality and ringel_proper,
          _check_equal(twice(delta_value), lo, hi),
          expected=twice(delta_value))
    claim('fdim-equals-pd-injective', bool(injective_tilting),
          _check_equal(_exact(pd_I), lo, hi), expected=_exact(pd_I))
    claim('fdim-at-most-2n-2', True, _check_at_most(2 * n - 2, lo, hi))
    claim('ifdim-at-most-fdim', ifdim is not None,
          'undetermined' if ifdim is None else
          _check_at_least(ifdim['ifdim_lower_bound'], lo, hi)
          if not ifdim['violations'] else 'fail')
    chain = _chain(delta_value, fdim_value, pd_T)
    claim('bound-chain', proper and with_duality,
          'undetermined' if chain['holds'] is None else
          'pass' if chain['holds'] else 'fail')

    conjectured = None if delta_value is None or pd_T is None else \
        delta_value + pd_T
    conjecture = {
        'claim': CONJECTURE,
        'label': 'conjecture',
        'statement': 'fdim(A) = fdimDelta(A) + pd(T)',
        'expected': conjectured,
        'status': {'pass': 'holds', 'fail': 'violated'}.get(
            _check_equal(conjectured, lo, hi), 'undetermined'
        ),
    }
    report = FdimReport(
        tilting.dimension, None if cotilting is None else
        cotilting.dimension, delta, lower, upper, checks, conjecture, chain,
        ifdim, notes
    )
    for failure in report.failures:
        logger.error(f"Claim {failure} fails for {algebra}.")
    logger.info(f"Finitistic dimension of {algebra}: "
                f"{report.fdim or report.interval}.")
    return report
