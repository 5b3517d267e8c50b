"""
Command-line interface for the F2 PRNG workbench.

Exit codes: 0 success, 1 a battery verdict failed, 2 usage or input error.
Diagnostics go to stderr; stdout carries reports, CSV and raw streams.
"""

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from config import settings
from generators.base import WorkbenchError
from utils.helpers import parse_int, parse_size


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(WorkbenchError):
    """Raised for argument combinations argparse cannot reject on its own."""
    pass


@contextmanager
def _open_output(path, binary=False):
    if path in (None, '-'):
        stream = sys.stdout.buffer if binary and hasattr(sys.stdout, 'buffer') else sys.stdout
        yield stream
        stream.flush()
    else:
        with open(path, 'wb' if binary else 'w') as f:
            yield f


def _print_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


# Subcommands

def cmd_list(args):
    from generators.registry import list_generators
    from utils.formatters import format_flag, print_table

    descriptors = list_generators()
    if args.json:
        _print_json([d.to_dict() for d in descriptors])
        return EXIT_OK
    rows = [[d.id.value, d.family, d.output_width, f"2^{d.period_exponent}", d.state_bits,
             format_flag(d.is_f2_linear_transition), format_flag(d.is_f2_linear_output)]
            for d in descriptors]
    print_table(['Generator', 'Family', 'Width', 'Period', 'State bits', 'F2 transition', 'F2 output'], rows)
    return EXIT_OK


def _export(source, args):
    from core.battery import SinkError, export_stream

    try:
        with _open_output(args.out, binary=True) as sink:
            written = export_stream(source, args.bytes or 0, sink, unlimited=args.unlimited)
    except SinkError as e:
        if not args.unlimited:
            raise
        written = e.bytes_written
    logger.info(f"Wrote {written} bytes")


def cmd_gen(args):
    from generators.registry import create

    if args.bytes is None and not args.unlimited:
        raise UsageError("gen needs --bytes N or --unlimited")
    gen = create(args.generator, args.seed)
    logger.info(f"{gen.label}: seed {args.seed}")
    _export(gen, args)
    return EXIT_OK


def cmd_combine(args):
    from core.cipost import make_combiner

    if args.bytes is None and not args.unlimited:
        raise UsageError("combine needs --bytes N or --unlimited")
    combiner = make_combiner(args.combination, args.seed)
    logger.info(f"{combiner.label}: seed {args.seed}")
    _export(combiner, args)
    return EXIT_OK


def _analysis_bits(args):
    from core.battery import open_source
    from generators.bitstream import bitstream

    source = open_source(args.source, args.seed)
    logger.info(f"{source.label}: seed {args.seed}, {args.bits} bits, policy {args.policy}")
    return bitstream(source, args.bits, args.policy)


def cmd_profile(args):
    from core.lincomplex import (
        complexity_profile, jump_statistics, saturation_point, write_profile_csv,
    )

    profile = complexity_profile(_analysis_bits(args))
    if args.csv:
        with _open_output(args.csv) as stream:
            write_profile_csv(profile, stream)
        if args.csv != '-':
            logger.info(f"Profile written to {args.csv}")
        return EXIT_OK

    stats = jump_statistics(profile)
    k = saturation_point(profile)
    summary = {
        'source': args.source,
        'n_bits': profile.n,
        'linear_complexity': profile.linear_complexity,
        'jumps': stats.count,
        'max_height': stats.max_height,
        'deviation': stats.deviation,
        'saturated_at': k,
    }
    if args.json:
        _print_json(summary)
    else:
        for key, value in summary.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_jumps(args):
    from core.lincomplex import complexity_profile, jump_statistics, jump_test_from_profile, jump_trace
    from utils.formatters import print_verdict

    profile = complexity_profile(_analysis_bits(args))
    stats = jump_statistics(profile)
    verdict = None
    if profile.n >= settings.JUMP_TEST_MIN_BITS:
        verdict = jump_test_from_profile(profile, args.alpha)

    if args.trace:
        with _open_output(args.trace) as stream:
            stream.write("k,jumps\n")
            for k, count in enumerate(jump_trace(profile), 1):
                stream.write(f"{k},{int(count)}\n")

    if args.json:
        data = {'source': args.source, 'n_bits': profile.n, **stats.to_dict()}
        if verdict is not None:
            data['jump_test'] = verdict.to_dict()
        _print_json(data)
    elif args.trace != '-':
        print(f"jumps: {stats.count}")
        print(f"max height: {stats.max_height}")
        print(f"perfect jumps: {stats.perfect_jumps}")
        print(f"deviation from k/2: {stats.deviation:.2f}")
        print(f"linear complexity: {profile.linear_complexity}")
        if verdict is not None:
            print_verdict(verdict)
    return EXIT_OK


def _run_and_report(name, args):
    from core.battery import open_source, run_battery

    source = open_source(name, args.seed)
    logger.info(f"{source.label}: seed {args.seed}")
    # a failed runs prerequisite is a failing verdict, not a usage error
    return run_battery(source, args.bits, args.alpha, args.policy, name=name, seed=args.seed, strict=False)


def cmd_test(args):
    from utils.formatters import print_report

    report = _run_and_report(args.source, args)
    if args.json:
        print(report.to_json())
    else:
        print_report(report)
    if args.save:
        from core.results import get_results_manager
        get_results_manager().save_report(report)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_sweep(args):
    from core.cipost import all_combinations
    from utils.formatters import error, print_table, success

    reports = [_run_and_report(str(c), args) for c in all_combinations()]
    if args.json:
        _print_json([r.to_dict() for r in reports])
    else:
        rows = []
        for r in reports:
            jump = r.verdict('jump')
            status = success("PASS") if r.overall_pass else error("FAIL")
            rows.append([r.source, r.label, jump.details['jumps'], f"{jump.p_value:.4f}", status])
        print_table(['Combination', 'Generators', 'Jumps', 'Jump p', 'Status'], rows)
    return EXIT_OK if all(r.overall_pass for r in reports) else EXIT_FAIL


def cmd_bench(args):
    from core.bench import bench
    from utils.helpers import format_rate, format_time

    result = bench(args.source, args.seconds, args.seed, include_seeding=args.include_seeding)
    if args.json:
        _print_json(result.to_dict())
        return EXIT_OK
    print(f"{result.generator}: {format_rate(result.outputs_per_second)}, "
          f"{result.throughput_gbps:.4f} Gbps over {format_time(result.wall_time)} "
          f"({result.n_outputs} outputs{', seeding included' if result.include_seeding else ''})")
    return EXIT_OK


def cmd_matrix(args):
    from core.f2model import extract_transition_matrix, rank, verify_matrix_model

    A = extract_transition_matrix(args.generator, allow_large=args.allow_large)
    with _open_output(args.out) as stream:
        stream.write(A.to_text())
    logger.info(f"{args.generator}: {A.rows}x{A.cols} matrix, rank {rank(A) if A.rows <= 4096 else 'n/a'}")
    if args.verify:
        ok = verify_matrix_model(args.generator, A, args.verify, args.trials, seed=args.seed)
        logger.info(f"Matrix model {'matches' if ok else 'DOES NOT match'} over {args.verify} steps")
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_calibrate(args):
    from core.calibration import calibrate, save_calibration

    calibration = calibrate(args.streams, args.bits, workers=args.workers, alpha=args.alpha)
    _print_json(calibration.to_dict())
    if not args.dry_run:
        save_calibration(calibration, args.out)
    return EXIT_OK


def cmd_history(args):
    from core.results import get_results_manager

    manager = get_results_manager()
    if args.json:
        _print_json(manager.load_results(limit=args.limit))
    else:
        manager.display_history(limit=args.limit)
    return EXIT_OK


def build_parser():
    """
    Build the argument parser with every subcommand.

    Returns:
        argparse.ArgumentParser: Configured parser
    """
    parser = argparse.ArgumentParser(
        prog="f2prng",
        description=f"{settings.APP_NAME}: F2-linear PRNGs, linear complexity and chaotic-iterations post-processing.",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {settings.VERSION}")
    parser.add_argument('-v', '--verbose', action='store_true', help="Debug logging on stderr")
    parser.add_argument('-q', '--quiet', action='store_true', help="Only warnings and errors on stderr")
    parser.add_argument('--no-color', action='store_true', help="Disable ANSI colors")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def seed_arg(p):
        p.add_argument('--seed', type=parse_int, default=settings.DEFAULT_SEED,
                       help="64-bit seed, decimal or 0x hex (default: %(default)s)")

    def alpha_arg(p):
        p.add_argument('--alpha', type=float, default=settings.DEFAULT_ALPHA,
                       help="Significance level (default: %(default)s)")

    p = sub.add_parser('list', help="List the generator roster")
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_list)

    p = sub.add_parser('gen', help="Write a raw little-endian output stream")
    p.add_argument('generator')
    seed_arg(p)
    p.add_argument('--bytes', type=parse_size)
    p.add_argument('--unlimited', action='store_true', help="Write until the sink closes")
    p.add_argument('--out', default='-', help="Output file (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('combine', help="Write a raw chaotic-iterations combiner stream")
    p.add_argument('combination', help="Triplet ijk, e.g. 011")
    seed_arg(p)
    p.add_argument('--bytes', type=parse_size)
    p.add_argument('--unlimited', action='store_true')
    p.add_argument('--out', default='-')
    p.set_defaults(func=cmd_combine)

    for name, func, help_text in (('profile', cmd_profile, "Linear complexity profile"),
                                  ('jumps', cmd_jumps, "Jump statistics and jump test")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('source', help="Generator id, combination triplet or 'reference'")
        seed_arg(p)
        p.add_argument('--bits', type=parse_size, default=4096)
        p.add_argument('--policy', default=settings.ANALYSIS_POLICY, choices=['lsb', 'msb', 'all'])
        p.add_argument('--json', action='store_true')
        p.set_defaults(func=func)
    sub.choices['profile'].add_argument('--csv', help="Write k,L CSV to a path ('-' for stdout)")
    alpha_arg(sub.choices['jumps'])
    sub.choices['jumps'].add_argument('--trace', help="Write k,jumps CSV to a path ('-' for stdout)")

    p = sub.add_parser('test', help="Run the statistical battery")
    p.add_argument('source', help="Generator id, combination triplet or 'reference'")
    seed_arg(p)
    p.add_argument('--bits', type=parse_size, default=2 ** 16)
    alpha_arg(p)
    p.add_argument('--policy', default=settings.BATTERY_POLICY, choices=['lsb', 'msb', 'all'])
    p.add_argument('--json', action='store_true')
    p.add_argument('--save', action='store_true', help="Store the report for 'history'")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser('sweep', help="Run the battery on every combination")
    seed_arg(p)
    p.add_argument('--bits', type=parse_size, default=2 ** 16)
    alpha_arg(p)
    p.add_argument('--policy', default=settings.BATTERY_POLICY, choices=['lsb', 'msb', 'all'])
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('bench', help="Measure generation throughput")
    p.add_argument('source', help="Generator id or combination triplet")
    seed_arg(p)
    p.add_argument('--seconds', type=float, default=1.0)
    p.add_argument('--include-seeding', action='store_true', help="Reseed inside the timed loop")
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser('matrix', help="Extract the transition matrix")
    p.add_argument('generator')
    p.add_argument('--out', default='-', help="Matrix text file (default: stdout)")
    p.add_argument('--allow-large', action='store_true', help="Permit more than 1024 state bits")
    p.add_argument('--verify', type=int, default=0, metavar='STEPS', help="Check the model over STEPS steps")
    p.add_argument('--trials', type=int, default=4)
    seed_arg(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser('calibrate-jump', help="Regenerate the jump-test calibration")
    p.add_argument('--streams', type=parse_size, default=settings.CALIBRATION_STREAMS)
    p.add_argument('--bits', type=parse_size, default=settings.CALIBRATION_BITS)
    p.add_argument('--workers', type=int, default=1)
    alpha_arg(p)
    p.add_argument('--out', default=None, help="Calibration file (default: shipped file)")
    p.add_argument('--dry-run', action='store_true', help="Print without saving")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser('history', help="Show stored battery reports")
    p.add_argument('--limit', type=int, default=10)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_history)

    return parser


def main(argv=None):
    """
    Parse arguments and dispatch a subcommand.

    Args:
        argv (list): Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Exit code
    """
    from utils.logging import log_invocation, setup_logging

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(verbosity=1 if args.verbose else -1 if args.quiet else 0)
    log_invocation(args.command, args)

    if args.no_color or not sys.stdout.isatty():
        from utils.formatters import disable_color
        disable_color()

    try:
        return args.func(args)
    except (WorkbenchError, ValueError) as e:
        logger.error(str(e))
        sys.stderr.write(parser.format_usage())
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return EXIT_USAGE
    except Exception:
        logger.exception(f"Unexpected error in '{args.command}'")
        return EXIT_USAGE
