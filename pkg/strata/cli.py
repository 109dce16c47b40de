# IMPORTS
import sys
import argparse
import logging as lgg

from . import strata as sr
from . import writer as wr
from .exceptions import StrataError, Inconclusive, Undetermined


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
VERIFY = 'verify-counterexample'


# MODULE FUNCTIONS
def build_parser():
    parser = argparse.ArgumentParser(
        prog='strata',
        description='Stratification, tilting modules and finitistic '
                    'dimension of finite dimensional algebras given by '
                    'quivers with relations.',
        epilog=f"commands: {', '.join(sr.COMMANDS + (VERIFY,))}; module "
               f"specifications like L(1), Delta(2), T(1) or A may follow "
               f"'resolve'; file may be a path or a shipped fixture name, "
               f"and defaults to {sr.COUNTEREXAMPLE} for {VERIFY}."
    )
    parser.add_argument('arguments', nargs='+', metavar='command|file',
                        help='commands followed by presentation file')
    parser.add_argument('--seed', type=int, help='random seed (default 0)')
    parser.add_argument('--cap', type=int,
                        help='resolution length cap (default 20)')
    parser.add_argument('--min-prime', type=int, dest='min_prime',
                        help='smallest accepted field characteristic')
    parser.add_argument('--degree-cap', type=int, dest='degree_cap',
                        help='longest path considered when building algebra')
    parser.add_argument('--order', help='comma separated order of vertices')
    parser.add_argument('--module', action='append', default=[],
                        dest='modules', metavar='SPEC',
                        help='module to resolve, may be repeated')
    parser.add_argument('--cache', dest='cache_dir', metavar='DIR',
                        help='directory of results cache')
    parser.add_argument('--format', choices=sorted(wr.Writer.writers),
                        default=None, help='report format (default json)')
    parser.add_argument('--json', action='store_const', const='json',
                        dest='shorthand', help='same as --format json')
    parser.add_argument('--text', action='store_const', const='txt',
                        dest='shorthand', help='same as --format txt')
    parser.add_argument('--output', '-o', metavar='FILE',
                        help='write report to file instead of stdout')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='log progress information')
    return parser


def split_arguments(arguments):
    """Commands, module specifications and input file from positional
    arguments.

    Raises
    ------
    ValueError
        If no command or more than one file is given."""
    commands, specs, files = [], [], []
    known = set(sr.COMMANDS) | {VERIFY}
    for argument in arguments:
        if argument in known:
            commands.append(argument)
        elif argument == 'A' or sr.module_spec.match(argument):
            specs.append(argument)
        else:
            files.append(argument)
    if not commands:
        raise ValueError('No command given.')
    if len(files) > 1:
        raise ValueError(f'Expected one input file, got {files}.')
    if not files:
        if commands != [VERIFY]:
            raise ValueError('No input file given.')
        files = [sr.COUNTEREXAMPLE]
    return commands, specs, files[0]


def exit_code(report):
    if sr.Strata.inconclusive(report):
        return EXIT_INCONCLUSIVE
    verification = report['sections'].get(VERIFY)
    if verification is not None and not verification['passed']:
        return EXIT_ERROR
    return EXIT_OK


def main(argv=None, stdout=None):
    """Runs command line interface and returns exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    stdout = stdout or sys.stdout
    fmt = args.format or args.shorthand or 'json'
    if args.verbose:
        sr.set_verbosity(lgg.INFO)
    try:
        commands, specs, source = split_arguments(args.arguments)
    except ValueError as error:
        parser.error(str(error))
    if fmt == 'xlsx' and not args.output:
        parser.error('Format xlsx requires --output.')
    parameters = dict(
        seed=args.seed, cap=args.cap, min_prime=args.min_prime,
        degree_cap=args.degree_cap
    )
    order = args.order.split(',') if args.order else None
    try:
        strata = sr.Strata(source, order=order, parameters=parameters,
                           cache_dir=args.cache_dir)
        report = strata.run(commands, specs + args.modules)
    except (Inconclusive, Undetermined) as error:
        print(f'strata: inconclusive: {error}', file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (StrataError, OSError, ValueError, KeyError) as error:
        print(f'strata: error: {error}', file=sys.stderr)
        return EXIT_ERROR
    if args.output:
        strata.export(report, args.output, fmt)
    else:
        stdout.write(wr.Writer.writers[fmt]().render(report))
    return exit_code(report)


if __name__ == '__main__':
    sys.exit(main())
