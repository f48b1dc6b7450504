"""Command line entry point.

Exit codes: 0 success, 1 invariant violation or failed verification,
2 bad input.
"""
import argparse
import json
import logging
import sys

import config
import database
from chromatic import GRAPH_RULES, chromatic_qsym, graph_from_permutation, llt_poly
from errors import InputError, InvariantError, KernelError, SizeMismatch
from hecke import kl_polynomial, kl_table, parse_element, r_polynomial
from perm import Permutation
from qmatrix import immanant, normalize, parse_word
from ring import render
from symfunc import BASES, Partition
from traces import FAMILIES, clear_denominators, trace_family, y_q
from verify import run_suite

logger = logging.getLogger(__name__)


def _lambda(args):
    lam = Partition.parse(args.lambda_)
    if args.n is not None and lam.n != args.n:
        raise SizeMismatch(f"partition {lam} is not of size {args.n}")
    return lam


def emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_klpoly(args):
    u, w = Permutation.parse(args.u), Permutation.parse(args.w)
    P, R = kl_polynomial(u, w), r_polynomial(u, w)
    emit(args, {'u': str(u), 'w': str(w), 'P': str(P), 'R': str(R)},
         f"P_{{{u},{w}}} = {P}\nR_{{{u},{w}}} = {R}")
    return 0


def cmd_kltable(args):
    config.guard(args.n, 'perm')
    table = kl_table(args.n).to_json()
    text = json.dumps(table, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
        logger.info(f"Wrote KL table for n={args.n} to {args.out}")
    else:
        print(text)
    return 0


def cmd_trace(args):
    lam = _lambda(args)
    table = trace_family(args.family, lam.n)[lam]
    if args.at:
        value = table(parse_element(args.at, lam.n))
        emit(args, {'family': args.family, 'lambda': lam.key(), 'at': args.at, 'value': render(value)},
             render(value))
    else:
        emit(args, table.to_json(),
             '\n'.join(f"{w}: {render(v)}" for w, v in table.values.items()))
    return 0


def cmd_ysym(args):
    D = parse_element(args.at)
    F = y_q(D).to(args.basis)
    emit(args, F.to_json(), str(F))
    return 0


def _coloring_command(args, compute):
    w = Permutation.parse(args.w)
    G = graph_from_permutation(w, args.rule)
    F = compute(G, args.N).to(args.basis)
    emit(args, F.to_json(), str(F))
    return 0


def cmd_llt(args):
    return _coloring_command(args, llt_poly)


def cmd_chromatic(args):
    return _coloring_command(args, chromatic_qsym)


def cmd_qnormalize(args):
    E = normalize(parse_word(args.word), args.n, strategy=args.strategy, seed=args.seed)
    emit(args, {'n': E.n, 'terms': {';'.join(f"{a},{b}" for a, b in w): str(c) for w, c in E.terms()}},
         str(E))
    return 0


def cmd_immanant(args):
    lam = _lambda(args)
    table = trace_family(args.family, lam.n)[lam]
    cleared, den = clear_denominators(table.values)
    E = immanant(cleared, lam.n)
    text = str(E) if den == 1 else f"({E}) / ({render(den)})"
    emit(args, {'family': args.family, 'lambda': lam.key(), 'immanant': str(E), 'denominator': render(den)},
         text)
    return 0


def cmd_verify(args):
    reports = run_suite(args.identity, args.n)
    if args.store:
        conn = database.connect()
        try:
            database.init_db(conn)
            for report in reports:
                database.save_report(conn, report)
        finally:
            conn.close()
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for report in reports:
            print(report.line())
    return 0 if all(r.passed for r in reports) else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='machine-readable output')

    parser = argparse.ArgumentParser(prog='hecke-kernel', description='Hecke algebra traces and LLT polynomials')
    parser.add_argument('--log-level', default=None, help='overrides LOG_LEVEL')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('klpoly', parents=[common], help='Kazhdan-Lusztig and R-polynomial of (u, w)')
    p.add_argument('--n', type=int)
    p.add_argument('--u', required=True)
    p.add_argument('--w', required=True)
    p.set_defaults(func=cmd_klpoly)

    p = sub.add_parser('kltable', parents=[common], help='full R/P tables as JSON')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--out')
    p.set_defaults(func=cmd_kltable)

    p = sub.add_parser('trace', parents=[common], help='evaluate a trace family member')
    p.add_argument('--n', type=int)
    p.add_argument('--family', choices=FAMILIES, required=True)
    p.add_argument('--lambda', dest='lambda_', required=True)
    p.add_argument('--at', help='T:<w> or ctilde:<w>; omit for the full table')
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser('ysym', parents=[common], help='Y_q of a Hecke element')
    p.add_argument('--at', required=True)
    p.add_argument('--basis', choices=BASES, default='m')
    p.set_defaults(func=cmd_ysym)

    for name, func in (('llt', cmd_llt), ('chromatic', cmd_chromatic)):
        p = sub.add_parser(name, parents=[common], help=f'{name} polynomial of a 312-avoiding permutation')
        p.add_argument('--w', required=True)
        p.add_argument('--basis', choices=BASES, default='m')
        p.add_argument('--N', type=int, default=None, help='number of variables (default n)')
        p.add_argument('--rule', choices=GRAPH_RULES, default='hessenberg')
        p.set_defaults(func=func)

    p = sub.add_parser('qnormalize', parents=[common], help='straighten a quantum matrix monomial')
    p.add_argument('--n', type=int)
    p.add_argument('--word', required=True, help='letters as "row,col;row,col"')
    p.add_argument('--strategy', choices=('deterministic', 'random'), default='deterministic')
    p.add_argument('--seed', type=int)
    p.set_defaults(func=cmd_qnormalize)

    p = sub.add_parser('immanant', parents=[common], help='immanant of a trace family member')
    p.add_argument('--n', type=int)
    p.add_argument('--family', choices=FAMILIES, required=True)
    p.add_argument('--lambda', dest='lambda_', required=True)
    p.set_defaults(func=cmd_immanant)

    p = sub.add_parser('verify', parents=[common], help='run a verification suite for sizes 1..n')
    p.add_argument('identity')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--store', action='store_true', help='persist reports to DATABASE')
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    config.setup_logging(args.log_level)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e.to_wire()}", file=sys.stderr)
        return e.exit_code
    except InvariantError as e:
        print(f"error: {e.to_wire()}", file=sys.stderr)
        return e.exit_code
    except KernelError as e:
        print(f"error: {e.to_wire()}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
