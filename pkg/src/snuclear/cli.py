"""Command-line entry point: ``snuclear {factor,verify,carleman,sweep,diag,selftest}``.

Exit codes: 0 pass, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bundle
from .carleman import carleman_symbol, read_coefficients, write_coefficients
from .config import DEFAULT
from .experiments import sharpness_sweep
from .factorization import chain_product, factor_product, verify_certificate
from .selftest import run_selftest
from .sequences import dyadic_checkpoints, growth_exponent_fit, lp_partial_profile, membership_verdict

log = logging.getLogger("snuclear")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def cmd_factor(args) -> int:
    chain = bundle.load_chain(args.bundle)
    cert = factor_product(chain)
    bundle.save_certificate(args.out, cert)
    report = verify_certificate(cert, chain_product(chain))
    print(f"r={cert.budget.r:g} " + report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    cert = bundle.load_certificate(args.certificate)
    target = chain_product(bundle.load_chain(args.bundle))
    report = verify_certificate(cert, target)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_carleman(args) -> int:
    sym = carleman_symbol(args.n, args.beta, args.oversample)
    write_coefficients(args.out, sym.coefficients)
    print(f"N={sym.N} beta={sym.beta:g} oversample={args.oversample} sup_norm={sym.sup_norm:.6f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    report = sharpness_sweep(args.n_list, args.beta, args.s_list, seed=args.seed)
    report.to_csv(args.out)
    report.write_metadata(Path(str(args.out) + ".meta.json"))
    for row in report.rows:
        print(f"N={row.N:>6} exponent={row.exponent:<5g} S={row.partial_sum:.6f} "
              f"slope={row.slope:.4f} {row.verdict}")
    flag = " (degenerate symbol)" if report.degenerate else ""
    print(f"inferred r_lower={report.inferred_r_lower:.6g}{flag}")
    return EXIT_OK


def cmd_diag(args) -> int:
    c = read_coefficients(args.coefficients)
    if args.checkpoints:
        cps = args.checkpoints
    else:
        top = 1 << (len(c).bit_length() - 1)
        cps = dyadic_checkpoints(top, DEFAULT.profile_octaves)
    profile = lp_partial_profile(c, args.p, cps)
    profile.to_csv(args.out)
    if len(cps) >= 3 and profile.sums[0] > 0:
        fit = growth_exponent_fit(profile)
        print(f"p={args.p:g} slope={fit.slope:.4f} residual={fit.residual:.2e} "
              f"verdict={membership_verdict(profile)}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed)
    for name, ok in results.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(results.values()) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snuclear", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor an operator chain through S_r")
    p.add_argument("bundle", type=Path)
    p.add_argument("-o", "--out", type=Path, required=True, help="certificate file to write")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("verify", help="check a certificate against an operator bundle")
    p.add_argument("certificate", type=Path)
    p.add_argument("bundle", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("carleman", help="write Carleman-type coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, default=DEFAULT.beta)
    p.add_argument("--oversample", type=int, default=DEFAULT.oversample)
    p.add_argument("-o", "--out", type=Path, required=True)
    p.set_defaults(func=cmd_carleman)

    p = sub.add_parser("sweep", help="sharpness sweep over dyadic N")
    p.add_argument("--n-list", type=_ints, required=True)
    p.add_argument("--beta", type=float, default=DEFAULT.beta)
    p.add_argument("--s-list", type=_floats, default=[0.75, 0.9, 1.0])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diag", help="l_p partial-sum profile of a coefficient file")
    p.add_argument("coefficients", type=Path)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--checkpoints", type=_ints, default=None)
    p.add_argument("-o", "--out", type=Path, required=True)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("selftest", help="run the invariant checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
