import argparse
import logging
import sys

from PyQt5 import QtCore

from controllers.experiments import (
    COPS,
    PLACEMENTS,
    ROBBERS,
    fit_capture_scaling,
    make_specs,
    run_lemma,
    run_oracle_suite,
    run_trials,
)
from models.errors import InsufficientData
from models.game import CONTINUOUS, DISCRETE, FAULT
from models.profiles import resolve_profile
from utils.helpers import parse_float_list
from utils.settings import APPLICATION, ORGANIZATION, AppSettings
from views.report_writer import render_mapping, render_positions, render_rows, write_text, write_traces

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

MODE_DEFAULTS = {
    CONTINUOUS: {'r': '0.1', 'n': None, 'profile': 'paper'},
    DISCRETE: {'r': '0.25', 'n': 200000, 'profile': 'desk'},
}


def _common_options(settings):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--d', type=int, default=2, help="dimension of the cube")
    common.add_argument('--r', default=None, help="radius, or a comma separated list of radii")
    common.add_argument('--n', type=int, default=None, help="number of graph vertices")
    common.add_argument('--seed', type=int, default=0, help="master seed")
    common.add_argument('--trials', type=int, default=1, help="trials per radius")
    common.add_argument('--max-rounds', type=int, default=None)
    common.add_argument('--profile', default=None, help="paper, desk, a bundled profile name or a JSON profile file")
    common.add_argument('--out', default=None, help="output file (default: stdout)")
    common.add_argument('--format', choices=('csv', 'json'), default=settings.get('Format'))
    common.add_argument('--trace', default=None, help="JSON-lines trace file")
    common.add_argument('--jobs', type=int, default=settings.get_int('Jobs'))
    common.add_argument('--strict', action='store_true', help="exit 1 on any fault")
    common.add_argument('--verbose', action='store_true')
    common.add_argument('--save-defaults', action='store_true',
                        help="store --jobs, --format and an explicit --profile as defaults")
    return common


def _game_options(parser, mode):
    parser.add_argument('--cop', choices=COPS[mode], default='paper')
    parser.add_argument('--robber', choices=ROBBERS[mode], default='paper')
    parser.add_argument('--placement', choices=PLACEMENTS, default='random')


def build_parser(settings):
    common = _common_options(settings)
    parser = argparse.ArgumentParser(prog='rgg-pursuit',
                                     description="One cop against one robber on [0,1]^d and on G_d(n, r).")
    commands = parser.add_subparsers(dest='command', required=True)

    continuous = commands.add_parser('continuous', parents=[common], help="continuous games")
    _game_options(continuous, CONTINUOUS)
    continuous.add_argument('--on-cornered', choices=('truncate', 'fault'), default='truncate')

    discrete = commands.add_parser('discrete', parents=[common], help="games on a random geometric graph")
    _game_options(discrete, DISCRETE)
    discrete.add_argument('--dump-positions', default=None, help="CSV file for the vertex positions")

    sweep = commands.add_parser('sweep', parents=[common], help="grid over radii and seeds")
    sweep.add_argument('--mode', choices=(CONTINUOUS, DISCRETE, 'both'), default=CONTINUOUS)
    sweep.add_argument('--cop', choices=COPS[CONTINUOUS], default='paper')
    sweep.add_argument('--robber', choices=ROBBERS[CONTINUOUS], default='paper')
    sweep.add_argument('--placement', choices=PLACEMENTS, default='random')

    lemma = commands.add_parser('lemma', parents=[common], help="cover and occupancy checks")
    lemma.add_argument('--c', type=float, default=None,
                       help="check the union bound at the threshold radius for this c")
    lemma.add_argument('--cover-checks', type=int, default=0)
    lemma.add_argument('--occupancy-trials', type=int, default=0)
    lemma.add_argument('--area', type=float, default=None, help="rectangle area for the occupancy trials")

    oracle = commands.add_parser('oracle', parents=[common], help="dismantlable against brute force")
    oracle.add_argument('--max-n', type=int, default=12)
    return parser


def _profile(args, settings, mode):
    name = args.profile
    if name is None:
        name = settings.get('Profile') if settings.contains('Profile') else MODE_DEFAULTS[mode]['profile']
    return resolve_profile(name)


def _radii(args, mode):
    return parse_float_list(args.r if args.r is not None else MODE_DEFAULTS[mode]['r'])


def _n(args, mode):
    return args.n if args.n is not None else MODE_DEFAULTS[mode]['n']


def _game_specs(args, settings, mode, first_trial=0):
    options = {
        'cop': args.cop,
        'robber': args.robber,
        'placement': args.placement,
        'max_rounds': args.max_rounds,
        'keep_trace': args.trace is not None,
    }
    if getattr(args, 'on_cornered', None):
        options['on_cornered'] = args.on_cornered
    if getattr(args, 'dump_positions', None):
        options['keep_graph'] = True
    return make_specs(mode, args.d, _radii(args, mode), args.trials, args.seed,
                      _profile(args, settings, mode), n=_n(args, mode) if mode == DISCRETE else None,
                      first_trial=first_trial, **options)


def _write_rows(args, settings, rows):
    write_text(args.out, render_rows(rows, args.format))
    if args.out not in (None, '-'):
        settings.set_last_output_directory(args.out)


def _report_fit(rows):
    try:
        fit = fit_capture_scaling(rows)
    except InsufficientData as e:
        logging.info(f"No scaling fit: {str(e)}")
        return None
    logging.info(f"Capture rounds ~ {fit.coefficient:.4g} * (1/r^2)^{fit.exponent:.4f} "
                 f"over {fit.radii} radii")
    return fit


def run_games(args, settings):
    if args.command == 'sweep':
        modes = (CONTINUOUS, DISCRETE) if args.mode == 'both' else (args.mode,)
    else:
        modes = (args.command,)
    specs = []
    for mode in modes:
        specs.extend(_game_specs(args, settings, mode, first_trial=len(specs)))

    results = run_trials(specs, jobs=args.jobs)
    rows = [result.row for result in results]
    _write_rows(args, settings, rows)
    if args.trace is not None:
        write_traces(args.trace, results)
    if getattr(args, 'dump_positions', None) and results and results[0].graph is not None:
        write_text(args.dump_positions, render_positions(results[0].graph))
    if args.command == 'sweep':
        for mode in modes:
            _report_fit([row for row in rows if row.mode == mode])

    faults = sum(1 for row in rows if row.outcome == FAULT)
    if faults:
        logging.warning(f"{faults} of {len(rows)} trials ended in a fault")
    return EXIT_FAILURE if args.strict and faults else EXIT_OK


def run_lemma_command(args, settings):
    profile = _profile(args, settings, DISCRETE)
    radius = _radii(args, DISCRETE)[0]
    report = run_lemma(_n(args, DISCRETE), radius, profile, seed=args.seed, c=args.c,
                       cover_checks=args.cover_checks, occupancy=args.occupancy_trials, area=args.area)
    write_text(args.out, render_mapping(report.to_dict(), args.format))
    return EXIT_FAILURE if args.strict and not report.passed else EXIT_OK


def run_oracle_command(args, settings):
    rows = run_oracle_suite(args.trials, args.max_n, master_seed=args.seed)
    _write_rows(args, settings, rows)
    disagreements = sum(1 for row in rows if not row.agree)
    logging.info(f"Oracle suite: {len(rows) - disagreements} of {len(rows)} instances agree")
    return EXIT_FAILURE if args.strict and disagreements else EXIT_OK


COMMANDS = {
    'continuous': run_games,
    'discrete': run_games,
    'sweep': run_games,
    'lemma': run_lemma_command,
    'oracle': run_oracle_command,
}


def main(argv=None, settings=None):
    app = QtCore.QCoreApplication.instance()
    if app is None:
        app = QtCore.QCoreApplication(sys.argv[:1])
    app.setApplicationName(APPLICATION)
    app.setOrganizationName(ORGANIZATION)

    settings = settings or AppSettings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(levelname)s: %(message)s', stream=sys.stderr)

    try:
        status = COMMANDS[args.command](args, settings)
    except ValueError as e:
        # Bad flag combinations surface as ValueError from TrialSpec and resolve_profile.
        logging.error(f"{args.command}: {str(e)}")
        return EXIT_USAGE
    if args.save_defaults:
        settings.save_defaults(args.profile, args.jobs, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
