# IMPORTS
import re
import logging as lgg

from . import cache as ch
from . import duality as du
from . import extraction as ex
from . import fdim as fd
from . import homology as hm
from . import linalg as la
from . import ringel as rg
from . import stratification as st
from . import tilting as tl
from . import writer as wr
from .exceptions import (
    Inconclusive, NotAntiInvolution, NotApplicable, StrataError, Undetermined
)
from .structures import algebra as al
from .structures import modules as md
from .structures import decomposition as dc


# GLOBAL VARIABLES
__author__ = "Strata developers"
__version__ = "0.1.0"
_DEVELOPMENT = False

COMMANDS = ('basis', 'stratify', 'resolve', 'tilting', 'ringel', 'fdim')
COUNTEREXAMPLE = 'MP4'
module_spec = re.compile(r'^\s*([A-Za-z]+)\s*\(\s*(\S+?)\s*\)\s*$')


# LOGGER
logger = lgg.getLogger(__name__)

mainhandler = lgg.StreamHandler()
mainhandler.setLevel(lgg.DEBUG)
mainhandler.setFormatter(lgg.Formatter(
    '%(levelname)s:%(name)s:%(funcName)s - %(message)s'))

loggers = [
    logger, la.logger, ex.logger, ex.quiver_parser.logger,
    ex.path_algebra.logger, al.logger, md.logger, dc.logger, hm.logger,
    st.logger, tl.logger, du.logger, rg.logger, fd.logger, wr.logger,
    ch.logger,
]
for lgr in loggers:
    lgr.setLevel(lgg.DEBUG if _DEVELOPMENT else lgg.WARNING)
    lgr.addHandler(mainhandler)


def set_verbosity(level):
    for lgr in loggers:
        lgr.setLevel(level)


# CLASSES
class Strata:
    """Analysis of one algebra given by quiver presentation file.

    Typical use:

    >>> strata = Strata('MP4')
    >>> report = strata.run(['stratify', 'fdim'])

    Parameters
    ----------
    source : str
        Path of presentation file or name of shipped fixture.
    order : list of str, optional
        Order of vertices overriding the one given in file.
    parameters : dict, optional
        Values overriding standard parameters.
    cache_dir : str, optional
        Directory of results cache; no cache is used if omitted."""

    _standard_parameters = {
        'cap': hm.DEFAULT_CAP,
        'seed': 0,
        'iso_tries': dc.DEFAULT_TRIES,
        'exhaustive_cap': dc.EXHAUSTIVE_CAP,
        'filtration_budget': st.FILTRATION_BUDGET,
        'filtration_branches': st.FILTRATION_BRANCHES,
        'min_prime': la.DEFAULT_PRIME,
        'degree_cap': None,
    }

    def __init__(self, source, order=None, parameters=None, cache_dir=None):
        self.parameters = self.standard_parameters
        if parameters:
            unknown = set(parameters) - set(self._standard_parameters)
            if unknown:
                raise ValueError(f"Unknown parameters: {sorted(unknown)}.")
            self.parameters.update(
                {k: v for k, v in parameters.items() if v is not None}
            )
        self.loader = ex.QuiverLoader(
            min_prime=self.parameters['min_prime'],
            degree_cap=self.parameters['degree_cap']
        )
        self.source = self.loader.resolve(source)
        self.text = self.loader.read(self.source)
        self.order = order
        self.algebra = self.loader.algebra(self.source, order)
        self.cache = ch.ReportCache(cache_dir, __version__) \
            if cache_dir else None
        self._stratification = None
        self._duality = None
        self.duality_status = None

    def __repr__(self):
        return f'<Strata {self.source}>'

    @property
    def standard_parameters(self):
        return self._standard_parameters.copy()

    @property
    def seed(self):
        return self.parameters['seed']

    @property
    def stratification(self):
        if self._stratification is None:
            p = self.parameters
            self._stratification = st.stratification(
                self.algebra, seed=p['seed'], tries=p['iso_tries'],
                exhaustive_cap=p['exhaustive_cap'],
                budget=p['filtration_budget'],
                branches=p['filtration_branches'], cap=p['cap']
            )
        return self._stratification

    @property
    def duality(self):
        """Verified duality given in presentation file, None if there is
        none or it does not verify."""
        if self.duality_status is None:
            try:
                self._duality = du.verify_duality(self.algebra, seed=self.seed)
                self.duality_status = {'verified': True,
                                       **self._duality.to_dict()}
            except NotApplicable as error:
                self.duality_status = {'verified': False,
                                       'reason': str(error)}
            except NotAntiInvolution as error:
                logger.error(f"Duality does not verify: {error}")
                self.duality_status = {'verified': False,
                                       'error': str(error)}
        return self._duality

    @property
    def duality_report(self):
        self.duality
        return self.duality_status

    # modules
    def module(self, spec):
        """Module given by text like 'L(1)', 'Delta(2)', 'T(1)' or 'A'.

        Raises
        ------
        ValueError
            If text is not understood."""
        spec = spec.strip()
        if spec == 'A':
            return self.algebra.regular_module()
        match = module_spec.match(spec)
        if not match:
            raise ValueError(f"Can not understand module {spec!r}.")
        kind, vertex = match.group(1), match.group(2)
        lam = self.algebra.vertex_index(vertex)
        canonical = {'L': 'simple', 'P': 'projective', 'I': 'injective'}
        if kind in canonical:
            return md.canonical_module(self.algebra, canonical[kind], lam)
        if kind.lower() in st.ALIASES:
            return self.stratification.module(kind.lower(), lam)
        if kind in ('T', 'C'):
            data = self.tilting_data() if kind == 'T' else \
                tl.characteristic_cotilting(self.stratification)
            return data.summands[lam]
        if kind == 'H':
            return rg.two_step_tilting(self.stratification).summands[lam]
        raise ValueError(f"Unknown kind of module {kind!r}.")

    def tilting_data(self):
        """Characteristic tilting module, read from cache if possible."""
        if 'tilting' in self.algebra.cache or self.cache is None:
            return tl.characteristic_tilting(self.stratification)
        key = self.cache.key(self.text, self._key_parameters, 'modules:T')
        stored = self.cache.load(key)
        if stored is not None:
            try:
                summands = [md.Module.from_dict(m, self.algebra)
                            for m in stored['summands']]
                data = tl.TiltingData(
                    self.algebra, 'tilting', summands, [],
                    stored['chains'],
                    hm.DimensionValue.from_dict(stored['dimension'])
                )
                self.algebra.cache['tilting'] = data
                return data
            except (KeyError, TypeError, ValueError, IndexError) as error:
                logger.warning(f"Ignoring cached tilting module: {error}")
        data = tl.characteristic_tilting(self.stratification)
        self.cache.store(key, {
            'summands': [m.to_dict() for m in data.summands],
            'chains': data.chains,
            'dimension': data.dimension.to_dict(),
        })
        return data

    @property
    def _key_parameters(self):
        return {**self.parameters, 'order': self.order}

    # sections
    def basis(self):
        algebra = self.algebra
        return {
            'duality': self.duality_report,
            'field': str(algebra.field),
            'dim': algebra.dim,
            'labels': list(algebra.labels),
            'vertex_order': list(algebra.vertex_labels),
            'cartan_matrix': algebra.cartan_matrix().tolist(),
            'loewy_length': algebra.loewy_length(),
        }

    def stratify(self):
        strat = self.stratification
        out = strat.verdict().to_dict()
        out['modules'] = {
            kind: {m.label: {'dim': m.dim,
                             'radical_layers': [list(layer) for layer in
                                                md.radical_layers(m)]}
                   for m in strat.family(kind)}
            for kind in st.KINDS
        }
        try:
            out['sss_alternative'] = strat.sss_alternative_check()
        except Inconclusive as error:
            out['sss_alternative'] = {'status': 'inconclusive',
                                      'reason': str(error)}
        return out

    def resolve(self, specs=()):
        specs = list(specs) or [
            f'{kind}({v})' for kind in ('L', 'Delta')
            for v in self.algebra.vertex_labels
        ]
        p = self.parameters
        out = {}
        for spec in specs:
            module = self.module(spec)
            resolution = hm.minimal_resolution(
                module, p['cap'], p['seed'], p['iso_tries'],
                p['exhaustive_cap']
            )
            out[spec] = resolution.to_dict()
        return out

    def tilting(self):
        strat = self.stratification
        data = self.tilting_data()
        out = {'tilting': data.to_dict()}
        try:
            verdict, evidence = tl.is_generalized_tilting(
                data.total, self.parameters['cap'], self.seed,
                self.parameters['iso_tries'], self.parameters['exhaustive_cap']
            )
            out['generalized_tilting'] = {'verdict': verdict, **evidence}
        except Inconclusive as error:
            out['generalized_tilting'] = {'status': 'inconclusive',
                                          'reason': str(error)}
        cotilting = tl.characteristic_cotilting(strat)
        out['cotilting'] = cotilting.to_dict()
        cap = self.parameters['cap']
        standard = md.DirectSum(strat.standard, label='Delta')
        identities = {
            'pd_standard': strat.standard_pd().to_dict(),
            'pd_tilting': data.dimension.to_dict(),
            'id_standard': hm.id(standard, cap, self.seed).to_dict(),
            'id_tilting': hm.id(data.total, cap, self.seed).to_dict(),
        }
        try:
            identities['nablabar_codim_regular'] = strat.nablabar_codim(
                self.algebra.regular_module()
            ).to_dict()
        except Undetermined as error:
            identities['nablabar_codim_regular'] = {
                'status': 'undetermined', 'reason': str(error)
            }
        out['identities'] = identities
        out['fcodim_nabla'] = fd.fcodim_nabla_estimate(strat).to_dict()
        duality = self.duality
        out['duality'] = self.duality_report
        if duality is not None:
            out['self_duality'] = duality.compare_tilting(
                data, self.seed, self.parameters['iso_tries'],
                self.parameters['exhaustive_cap']
            )
        return out

    def ringel(self):
        strat = self.stratification
        self.tilting_data()
        data = rg.ringel_dual(strat)
        proper, evidence = rg.ringel_dual_properly_stratified(data)
        projective = {
            t.label: md.is_projective(data.functor(t))
            for t in data.tilting.summands
        }
        out = {
            'ringel_dual': data.to_dict(),
            'functor_images_projective': projective,
            'properly_stratified': proper,
            'evidence': evidence,
        }
        if proper:
            out['two_step'] = rg.two_step_tilting(strat).to_dict()
        else:
            out['two_step'] = {'status': 'not applicable',
                               'reason': 'Ringel dual is not properly '
                                         'stratified'}
        return out

    def fdim(self):
        self.tilting_data()
        report = fd.fdim_report(self.stratification, self.duality)
        out = report.to_dict()
        out['duality'] = self.duality_report
        return out

    # running
    def section(self, name, specs=()):
        """Report section of given command, through cache if one is used.
        Inconclusive and undetermined results are recorded in the section.
        """
        method = getattr(self, name.replace('-', '_'))
        key = None
        if self.cache is not None:
            key = self.cache.key(self.text, self._key_parameters,
                                 f'section:{name}:{",".join(specs)}')
            stored = self.cache.load(key)
            if stored is not None:
                return stored
        try:
            out = method(specs) if name == 'resolve' else method()
        except (Inconclusive, Undetermined) as error:
            logger.warning(f"Command {name} was inconclusive: {error}")
            out = {'status': 'inconclusive', 'reason': str(error)}
            certificate = getattr(error, 'certificate', None)
            if certificate:
                out['certificate'] = certificate
        except NotApplicable as error:
            out = {'status': 'not applicable', 'reason': str(error)}
        if key is not None and out.get('status') != 'inconclusive':
            self.cache.store(key, out)
        return out

    def run(self, commands=COMMANDS, specs=()):
        """Runs commands and assembles json-serializable report.

        Raises
        ------
        ValueError
            If command is unknown."""
        sections = {}
        for name in commands:
            if name not in COMMANDS and name != 'verify-counterexample':
                raise ValueError(f"Unknown command {name!r}.")
            if name == 'verify-counterexample':
                sections[name] = self.verify_counterexample()
            else:
                sections[name] = self.section(name, specs)
        report = {
            'strata_version': __version__,
            'input': self.source,
            'seed': self.seed,
            'parameters': self._key_parameters,
            'sections': sections,
        }
        if self.cache is not None:
            report['cache'] = self.cache.note
        return report

    @staticmethod
    def inconclusive(report):
        return any(isinstance(s, dict) and s.get('status') == 'inconclusive'
                   for s in report.get('sections', {}).values())

    def export(self, report, dest, fmt='json'):
        try:
            writer = wr.Writer.writers[fmt]()
        except KeyError:
            raise ValueError(f'Invalid file format: {fmt}')
        writer.write(dest, report)

    # counterexample
    def verify_counterexample(self):
        """Checks the known properly stratified algebra with fdim(A) = 1 and
        pd(T) = 1, for which fdim(A) < 2 pd(T).

        Works on the algebra of this instance; every failed assertion names
        the expected value it contradicts.

        Returns
        -------
        dict
            'passed' and list of assertions with expected and found
            values."""
        assertions = []

        def check(name, expected, found, display):
            passed = expected == found
            if not passed:
                logger.error(f"{name}: expected {expected}, found {found} "
                             f"({display}).")
            assertions.append({
                'name': name, 'passed': passed, 'expected': expected,
                'found': found, 'display': display,
            })

        def attempt(name, expected, display, compute):
            try:
                found = compute()
            except StrataError as error:
                found = f'error: {error}'
            check(name, expected, found, display)

        algebra = self.algebra
        strat = self.stratification
        labels = algebra.vertex_labels

        def dimensions():
            out = {}
            for kind, symbol in (('projective', 'P'),):
                for lam, v in enumerate(labels):
                    out[f'{symbol}({v})'] = md.canonical_module(
                        algebra, kind, lam
                    ).dim
            for kind in ('standard', 'proper_standard'):
                for m in strat.family(kind):
                    out[m.label] = m.dim
            for m in self.tilting_data().summands:
                out[m.label] = m.dim
            return out

        attempt('module dimensions', {
            'P(1)': 6, 'P(2)': 4, 'Delta(1)': 2, 'Delta(2)': 4,
            'Deltabar(1)': 1, 'Deltabar(2)': 2, 'T(1)': 2, 'T(2)': 8,
        }, 'diagrams of projective, standard, proper standard and tilting '
           'modules', dimensions)
        attempt('properly stratified', True,
                'Delta(2) filtered by two copies of Deltabar(2)',
                lambda: strat.is_properly_stratified()[0])
        attempt('not quasi-hereditary', False,
                'Delta(2) differs from Deltabar(2)',
                lambda: strat.is_quasi_hereditary()[0])
        attempt('duality verified', True,
                'alpha and beta swapped extend to an anti-involution',
                lambda: self.duality is not None)

        def resolution_terms(lam):
            module = self.tilting_data().summands[lam]
            resolution = hm.minimal_resolution(
                module, self.parameters['cap'], self.seed
            )
            return [list(t) for t in resolution.terms]

        attempt('resolution of T(1)', [[1, 0], [0, 1]],
                '0 -> P(2) -> P(1) -> T(1) -> 0',
                lambda: resolution_terms(0))
        attempt('resolution of T(2)', [[2, 0], [0, 1]],
                '0 -> P(2) -> P(1) + P(1) -> T(2) -> 0',
                lambda: resolution_terms(1))
        attempt('pd(T)', 1, 'hence pd(T) = 1',
                lambda: self.tilting_data().dimension.value)
        report = {}

        def fdim_report():
            if 'value' not in report:
                report['value'] = fd.fdim_report(strat, self.duality)
            return report['value']

        attempt('fdimDelta', 0,
                'any injection between tilting modules is an isomorphism',
                lambda: fdim_report().fdim_delta.to_dict().get('value'))
        attempt('fdim', 1, 'fdim(A) = 1', lambda: _value(fdim_report().fdim))
        attempt('strict chain', '0 < 1 < 2',
                '2 fdimDelta(A) = 0 < fdim(A) = 1 < 2 pd(T) = 2',
                lambda: fdim_report().chain['display'])
        attempt('Ringel dual not properly stratified', False,
                'fdim(A) = 1 is odd, so fdim(A) = 2 pd(T^R) can not hold',
                lambda: rg.ringel_dual_properly_stratified(
                    rg.ringel_dual(strat))[0])
        passed = all(a['passed'] for a in assertions)
        logger.info(f"Counterexample verification "
                    f"{'passed' if passed else 'failed'}.")
        return {'passed': passed, 'assertions': assertions}


# MODULE FUNCTIONS
def _value(dimension):
    return None if dimension is None else dimension.value
