"""Command line interface.

Run ``sgic --help`` (or ``python -m sgic --help``) for a list of
subcommands.  Results are written as CSV (the default) or JSON to
standard output or to the file given with ``--out``.

Exit codes: 0 on success, 2 for invalid parameters, 3 if a checked
threshold (like the maximal capacity gap) is exceeded.

"""
import argparse
import csv
from fractions import Fraction
import io
import json
import logging
import sys

from . import __version__
from . import bounds
from . import channel
from . import decoder
from . import default
from . import scheme
from . import sim
from . import util

_log = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_THRESHOLD = 3

_GAP_MS = 10, 20, 40
_GAP_ALPHA_STEP = Fraction(1, 120)
_GAP_ALPHA_MAX = 2


def _float_list(text, count):
    try:
        values = [float(x) for x in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected {} comma-separated numbers'.format(count)) from None
    if len(values) != count:
        raise argparse.ArgumentTypeError(
            'expected {} comma-separated numbers'.format(count))
    return values


def _phases(text):
    h11, h12, h21, h22 = _float_list(text, 4)
    try:
        return channel.as_phases([[h11, h12], [h21, h22]])
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected comma-separated integers') from None


def _int_pair(text):
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError('expected two integers')
    return values


def _grid(text):
    try:
        return util.parse_grid(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _jsonable(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


def _csv_value(value):
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, Fraction)):
        return repr(float(value))
    return str(value)


def _emit(records, args, *, table=False):
    """Write a list of flat `dict` records in the requested format."""
    if args.format == 'json':
        data = _jsonable(records if table else records[0])
        text = json.dumps(data, indent=2) + '\n'
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        if records:
            fields = list(records[0])
            writer.writerow(fields)
            for record in records:
                writer.writerow(_csv_value(record[f]) for f in fields)
        text = buffer.getvalue()
    if args.out:
        with open(args.out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_gdof(args):
    """Secure, GWC-TIN and non-secure GDoF curves."""
    rows = bounds.bound_table(args.grid, m=args.m, h=args.h)
    _emit([row._asdict() for row in rows], args, table=True)
    return 0


def cmd_bounds(args):
    """Capacity bounds of one channel."""
    if args.channel:
        cfg = channel.load(args.channel)
    else:
        if args.alpha is None or args.m is None or args.h is None:
            raise ValueError('either --channel or --alpha, --m and --h '
                             'are needed')
        cfg = channel.SymmetricChannel(args.m, args.alpha, args.h).expand()
    report = bounds.capacity_upper(cfg)
    record = dict(channel.as_json(cfg), **report.as_json())
    if args.format == 'csv':
        record = dict(
            m=cfg.m, alpha=record['alpha'], h=record['h'],
            sum_upper_bits=report.sum_upper_bits,
            sum_lower_bits=report.sum_lower_bits,
            user1_upper=report.per_user_upper[0],
            user2_upper=report.per_user_upper[1],
            weighted1=report.weighted_bounds[0],
            weighted2=report.weighted_bounds[1],
            gap_bits=report.gap_bits,
            tin_optimal=report.tin_optimal,
            sum_bound_bits=report.sum_bound_bits,
        )
        record['alpha'] = ' '.join(a for row in record['alpha'] for a in row)
        record['h'] = ' '.join(repr(x) for row in record['h'] for x in row)
    _emit([record], args)
    return 0


def _random_tin_optimal_alphas(rng):
    top = int(_GAP_ALPHA_MAX / _GAP_ALPHA_STEP)
    while True:
        a = [int(x) * _GAP_ALPHA_STEP
             for x in rng.integers(0, top, size=4, endpoint=True)]
        alphas = [[a[0], a[1]], [a[2], a[3]]]
        if bounds.tin_optimality_check(alphas):
            return alphas


def cmd_gap(args):
    """Largest capacity gap over random TIN-optimal channels."""
    if args.count < 1:
        raise ValueError('--count must be at least 1')
    rng = util.rng_stream(args.seed, 4)
    worst = None
    for i in range(args.count):
        m = args.m if args.m is not None else _GAP_MS[i % len(_GAP_MS)]
        alphas = _random_tin_optimal_alphas(rng)
        cfg = channel.ChannelConfig(m, alphas, channel.random_phases(rng))
        value = bounds.gap(cfg)
        if worst is None or value > worst[0]:
            worst = value, cfg
    value, cfg = worst
    record = {
        'count': args.count,
        'seed': args.seed if args.seed is not None else default.seed,
        'max_gap': value,
        'gap_limit': default.gap_limit,
        'worst_m': cfg.m,
        'worst_alpha': ' '.join(str(a) for row in cfg.alpha for a in row),
    }
    _emit([record], args)
    if value > default.gap_limit:
        _log.error('gap of %.4f bits exceeds %s bits', value,
                   default.gap_limit)
        return EXIT_THRESHOLD
    return 0


def cmd_simulate(args):
    """Monte Carlo error rates of the jamming scheme."""
    stats = sim.run_trials(args.alpha, args.m, epsilon=args.epsilon,
                           gamma=args.gamma, n=args.n, seed=args.seed,
                           phases=args.h, zero_noise=args.zero_noise,
                           workers=args.workers)
    sc = scheme.build_config(args.alpha, epsilon=args.epsilon,
                             gamma=args.gamma)
    errors = round(stats.joint_error * stats.n_trials)
    low, high = util.binomial_interval(errors, stats.n_trials)
    record = {'alpha': stats.alpha, 'm': stats.m, 'regime': sc.regime,
              'n': stats.n_trials}
    for stream in sim.STREAMS:
        record['ser_' + stream] = stats.ser_per_stream[stream]
    record.update(
        ser_joint=stats.joint_error,
        ci_low=low,
        ci_high=high,
        gdof_est=sum(sim.secure_rate_estimate(stats, sc, args.m, user=k)
                     .gdof_estimate for k in (1, 2)),
        gdof_theorem=bounds.theorem1_gdof(stats.alpha),
        outage_flag=stats.outage,
        seed=stats.seed,
    )
    _emit([record], args)
    return 0


def cmd_sweep(args):
    """Empirical secure sum GDoF on a grid of exponents."""
    rows = sim.gdof_sweep(args.grid, args.m, n=args.n, seed=args.seed,
                          epsilon=args.epsilon, gamma=args.gamma,
                          phases=args.h, workers=args.workers)
    _emit([row._asdict() for row in rows], args, table=True)
    return 0


def cmd_dmin(args):
    """Minimum distance of a lattice search space."""
    threshold = None
    if args.g is not None:
        if args.a_coeffs is None or args.qmax is None:
            raise ValueError('--g needs --a-coeffs and --qmax')
        A1, A2 = args.a_coeffs
        space = decoder.LatticeSearchSpace(args.qmax, A1, A2, *args.g)
    else:
        if args.alpha is None or args.m is None or args.h is None:
            raise ValueError('either --g or --alpha, --m and --h are needed')
        delta = args.delta if args.delta is not None else default.delta
        sc = scheme.build_config(args.alpha, epsilon=args.epsilon,
                                 gamma=args.gamma)
        space = decoder.lattice_space(sc, args.h, args.m)
        threshold = decoder.outage_threshold(args.alpha, delta, args.m)
    record = dict(space._asdict(), d_min=decoder.min_distance(space))
    if threshold is not None:
        record.update(threshold=threshold,
                      outage_flag=record['d_min'] < threshold)
    _emit([record], args)
    return 0


def cmd_outage(args):
    """Monte Carlo estimate of the outage measure."""
    delta = args.delta if args.delta is not None else default.delta
    epsilon = args.epsilon if args.epsilon is not None else default.epsilon
    rng = util.rng_stream(args.seed, 2)
    estimate = decoder.outage_measure_estimate(
        args.alpha, delta, epsilon, args.m, args.samples, rng,
        gamma=args.gamma)
    _emit([{
        'alpha': args.alpha,
        'm': args.m,
        'delta': delta,
        'epsilon': epsilon,
        'n_samples': estimate.n_samples,
        'outage_fraction': estimate.fraction,
        'ci_low': estimate.ci_low,
        'ci_high': estimate.ci_high,
        'analytic_bound': estimate.analytic_bound,
    }], args)
    return 0


def build_parser():
    """Return the `argparse.ArgumentParser` of the ``sgic`` command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['csv', 'json'], default='csv',
                        help='output format (default: csv)')
    common.add_argument('--out', metavar='FILE',
                        help='write to FILE instead of standard output')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='more log messages (repeatable)')
    common.add_argument('-q', '--quiet', action='count', default=0,
                        help='fewer log messages (repeatable)')

    rational = util.as_rational
    scheme_args = argparse.ArgumentParser(add_help=False)
    scheme_args.add_argument('--epsilon', type=rational,
                             help='constellation slack, like 1/100')
    scheme_args.add_argument('--gamma', type=float,
                             help='amplitude constant <= 1/(4*sqrt(2))')
    scheme_args.add_argument('--seed', type=int,
                             help='seed of all random streams')
    scheme_args.add_argument('--h', type=_phases,
                             metavar='H11,H12,H21,H22',
                             help='channel phases in (1, 2]')

    parser = argparse.ArgumentParser(
        prog='sgic',
        description='Secure two-user Gaussian interference channel: '
                    'bounds, jamming schemes and simulations.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('gdof', parents=[common], help=cmd_gdof.__doc__)
    p.add_argument('--grid', type=_grid, default=_grid('0:1/120:5/2'),
                   metavar='START:STEP:STOP',
                   help='grid of cross-link exponents (inclusive)')
    p.add_argument('--m', type=int, help='power exponent of the gap column')
    p.add_argument('--h', type=_phases, metavar='H11,H12,H21,H22',
                   help='channel phases of the gap column')
    p.set_defaults(func=cmd_gdof)

    p = sub.add_parser('bounds', parents=[common], help=cmd_bounds.__doc__)
    p.add_argument('--channel', metavar='FILE',
                   help='channel configuration as JSON')
    p.add_argument('--alpha', type=rational,
                   help='cross-link exponent of a symmetric channel')
    p.add_argument('--m', type=int, help='power exponent')
    p.add_argument('--h', type=_phases, metavar='H11,H12,H21,H22',
                   help='channel phases in (1, 2]')
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser('gap', parents=[common], help=cmd_gap.__doc__)
    p.add_argument('--count', type=int, default=1000,
                   help='number of random channels (default: 1000)')
    p.add_argument('--m', type=int,
                   help='power exponent (default: cycle through 10, 20, 40)')
    p.add_argument('--seed', type=int, help='seed of the random channels')
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser('simulate', parents=[common, scheme_args],
                       help=cmd_simulate.__doc__)
    p.add_argument('--alpha', type=rational, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int, help='number of channel uses')
    p.add_argument('--zero-noise', action='store_true',
                   help='draw, but do not add the noise')
    p.add_argument('--workers', type=int, help='number of processes')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('sweep', parents=[common, scheme_args],
                       help=cmd_sweep.__doc__)
    p.add_argument('--grid', type=_grid, required=True,
                   metavar='START:STEP:STOP')
    p.add_argument('--m', type=_int_list, required=True, metavar='M1,M2,...')
    p.add_argument('--n', type=int, help='channel uses per point')
    p.add_argument('--workers', type=int, help='number of processes')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('dmin', parents=[common, scheme_args],
                       help=cmd_dmin.__doc__)
    p.add_argument('--g', type=lambda text: _float_list(text, 3),
                   metavar='G0,G1,G2', help='explicit phase products')
    p.add_argument('--a-coeffs', type=_int_pair,
                   metavar='A1,A2', help='explicit integer scale factors')
    p.add_argument('--qmax', type=int, help='explicit half-count')
    p.add_argument('--alpha', type=rational)
    p.add_argument('--m', type=int)
    p.add_argument('--delta', type=rational)
    p.set_defaults(func=cmd_dmin)

    p = sub.add_parser('outage', parents=[common, scheme_args],
                       help=cmd_outage.__doc__)
    p.add_argument('--alpha', type=rational, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--delta', type=rational)
    p.add_argument('--samples', type=int, default=200,
                   help='number of phase draws (default: 200)')
    p.set_defaults(func=cmd_outage)
    return parser


def main(argv=None):
    """Run the ``sgic`` command and return its exit code."""
    args = build_parser().parse_args(argv)
    level = logging.WARNING + 10 * (args.quiet - args.verbose)
    logging.basicConfig(level=min(max(level, logging.DEBUG), logging.CRITICAL),
                        format='%(levelname)s: %(name)s: %(message)s')
    try:
        return args.func(args)
    except ValueError as e:
        _log.error('%s', e)
        return EXIT_INVALID
