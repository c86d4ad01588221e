"""
Command line driver

    pyhmt verify  --theorem all --trials 200 --seed 42 --report report.json
    pyhmt witness --theorem bohr-i --p 3 --seed 7
    pyhmt axioms  --trials 200
    pyhmt demo

Exit codes: 0 pass, 1 verification failure, 2 configuration error, 3 internal error.
"""
from __future__ import print_function
import io
import sys
import logging
import argparse
import pandas as pd
from pyhmt import __version__
from pyhmt.tools import methods, messages
from pyhmt.handler.module import SelfModule, DirectSum
from pyhmt.process import Process, THEOREMS
from pyhmt.pipelines.base import Pipelines, RunConfig, load_config_file, parse_blocks
from pyhmt.pipelines.verifier import Verifier, WITNESSES, classical_checks

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3
CONFIG_ERRORS = (messages.Errors.ConfigError, messages.Errors.UnknownTheorem, messages.Errors.GuardViolation)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='master seed (default 0)')
    common.add_argument('--trials', type=int, default=None, help='trials per theorem (default 200)')
    common.add_argument('--dims', default=None, help='algebra block sizes A..B (default 1..4)')
    common.add_argument('--blocks', default=None, help='block shapes, e.g. "2" or "2+3" or "2,1+1"')
    common.add_argument('--config', default=None, help='JSON file whose keys mirror these flags')
    common.add_argument('--log-dir', dest='log_dir', default=None, help='directory of the debug log file')
    common.add_argument('--quiet', action='store_true', help='no progress bars')
    common.add_argument('--verbose', action='store_true', help='print INFO messages on the console')

    parser = argparse.ArgumentParser(prog='pyhmt', description='Numerical workbench for Bohr-type identities '
                                                               'and inequalities on Hilbert C*-modules')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    sub = parser.add_subparsers(dest='command')

    verify = sub.add_parser('verify', parents=[common], help='run seeded verification suites')
    verify.add_argument('--theorem', default=None,
                        help='theorem id, comma-separated ids or "all" ({})'.format(', '.join(THEOREMS)))
    verify.add_argument('--tol', type=float, default=None, help='verdict tolerance (default 1e-8)')
    verify.add_argument('--report', default=None, help='path of the JSON report')
    verify.add_argument('--trials-csv', dest='trials_csv', default=None, help='path of the per-trial CSV table')
    verify.add_argument('--jobs', default=None, help='threads, an integer or "max"')
    verify.add_argument('--replay', type=int, default=None, help='rerun the single trial with this seed')

    witness = sub.add_parser('witness', parents=[common], help='search pairs violating one-sided forms')
    witness.add_argument('--theorem', default='bohr-i', help='one of {}'.format(', '.join(WITNESSES)))
    witness.add_argument('--p', type=float, required=True, help='exponent p (q is its conjugate)')
    witness.add_argument('--budget', type=int, default=100, help='random pairs to try')
    witness.add_argument('--report', default=None, help='path of the JSON witness report')

    sub.add_parser('axioms', parents=[common], help='module-axiom property run on every family')
    demo = sub.add_parser('demo', parents=[common], help='scalar classical cases')
    demo.add_argument('--p', type=float, default=3.0, help='exponent of the classical Bohr inequality')
    return parser


def _configure(args, ignore=()):
    defaults = load_config_file(args.config) if args.config else None
    return RunConfig.from_args(args, defaults, ignore)


def _print_summary(report):
    table = pd.DataFrame([dict(id=item['id'], trials=item['trials'],
                               max_identity_residual=item['max_identity_residual'],
                               min_loewner_slack=item['min_loewner_slack'],
                               failures=len(item['failures'])) for item in report['per_theorem']])
    print(table.to_string(index=False))
    print('PASS' if report['pass'] else 'FAIL')


def cmd_verify(args):
    config = _configure(args)
    pipe = Pipelines(config)
    if args.replay is not None:
        if len(config.theorems) != 1:
            methods.raiseerror(messages.Errors.ConfigError, '--replay needs a single --theorem')
        label, result = pipe.replay(config.theorems[0], args.replay)
        print('{} {}'.format(config.theorems[0], label))
        for key in ('hypothesis_ok', 'refused', 'identity_residual', 'loewner_slack', 'slack_scale', 'passed',
                    'notes'):
            print('  {:<18} {}'.format(key, getattr(result, key)))
        for key, value in sorted(result.residuals.items()):
            print('  residual {:<30} {:.3e}'.format(key, value))
        for key, value in sorted(result.slacks.items()):
            print('  slack    {:<30} {:.3e}'.format(key, value))
        return EXIT_PASS if result.passed else EXIT_FAIL
    outcome = pipe.run()
    _print_summary(outcome.report)
    return EXIT_PASS if outcome.passed else EXIT_FAIL


def _frame(element):
    return [[[float(v.real), float(v.imag)] for v in row] for row in element.frame]


def cmd_witness(args):
    if args.theorem not in WITNESSES:
        methods.raiseerror(messages.Errors.UnknownTheorem,
                           'Unknown witness "{}"; available: {}'.format(args.theorem, ', '.join(WITNESSES)))
    config = _configure(args, ignore=('theorem',))
    verifier = Verifier(Process(config.guards), tol=config.tol)
    blocks = parse_blocks(args.blocks)
    space = DirectSum(2, blocks[0]) if blocks else SelfModule(1)
    witness = verifier.witness_search(args.theorem, args.p, space=space, budget=args.budget, seed=config.seed)
    q = args.p / (args.p - 1)
    expected = args.p > 2 if args.theorem == 'bohr-i' else args.p < 2
    output = dict(theorem=args.theorem, p=args.p, q=q, space=repr(space), budget=args.budget, seed=config.seed,
                  found=witness is not None, expected=expected)
    if witness is not None:
        output.update(attempts=witness.attempts, violation=float(witness.violation),
                      predicted=float(witness.predicted), x=_frame(witness.x), y=_frame(witness.y))
    text = Pipelines.dumps(output)
    if args.report:
        with io.open(args.report, 'w', encoding='utf-8') as f:
            f.write(text)
    print(text, end='')
    return EXIT_PASS if output['found'] == expected else EXIT_FAIL


def cmd_axioms(args):
    config = _configure(args)
    table, passed = Pipelines(config).run_axioms()
    print(table.to_string(index=False))
    print('PASS' if passed else 'FAIL')
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_demo(args):
    checks = classical_checks(p=args.p)
    table = pd.DataFrame([check._asdict() for check in checks])
    print(table.to_string(index=False))
    return EXIT_PASS if all(check.holds for check in checks) else EXIT_FAIL


COMMANDS = dict(verify=cmd_verify, witness=cmd_witness, axioms=cmd_axioms, demo=cmd_demo)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    level = logging.INFO if args.verbose else logging.ERROR
    logger = methods.get_logger('pyhmt', path=args.log_dir, level=level)
    try:
        return COMMANDS[args.command](args)
    except CONFIG_ERRORS as e:
        logger.error('Config::{}'.format(e))
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.exception('Internal::{}'.format(e))
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
