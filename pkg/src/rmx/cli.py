"""Command-line surface: drive verifications, emit machine-readable reports.

Subcommands:
  verify-rep   defining relations, unitarity/crossing, rank conditions
  fuse-check   fused-operator checks: ybe, unitarity, idempotent, matsumoto
  spectrum     centralizer decomposition + comparison with catalogued forms
  formula      evaluate a catalogued formula exactly at an explicit point

Exit codes: 0 ok (discrepancies are expected output and do not fail a run),
1 a check FAILed, 2 usage error, 3 admissible-point exhaustion.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
import math
import os
import random
import sys

from . import __version__
from .catalog import UnknownFormula, catalog_get, catalog_names
from .field import BackendMismatch, DegeneratePoint, parse_field
from .formulas import eval_formula, is_universal, universal_params_for
from .points import (AdmissibleExhausted, EvalPoint, sample_admissible_point,
                     sample_spectral_value)
from .report import FAIL, PASS, check, exit_code, make_report, write_report

USAGE_ERROR = 2
EXHAUSTED = 3


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RMX_SEED")
    return int(env) if env else 0


def _field(args):
    try:
        return parse_field(args.field)
    except ValueError as e:
        raise SystemExit(USAGE_ERROR) from e


def _validate_series(args):
    if args.series not in ("so", "sp"):
        print(f"error: unknown series {args.series!r}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    if args.n < 3:
        print("error: n must be >= 3", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    if args.series == "sp" and args.n % 2:
        print("error: sp series requires even n", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _finish(args, report) -> int:
    text = write_report(report, args.out)
    if not args.out:
        sys.stdout.write(text)
    else:
        print(f"report written to {args.out}")
    return exit_code(report)


def cmd_verify_rep(args) -> int:
    from .vectorrep import RelationFailure, build_rep, rank_conditions, relation_suite

    _validate_series(args)
    field = _field(args)
    seed = _seed(args)
    checks = []
    for i in range(args.points):
        try:
            point = sample_admissible_point(args.series, args.n, field, seed=seed + i)
        except AdmissibleExhausted:
            return EXHAUSTED
        try:
            fam = build_rep(args.series, args.n, point,
                            validate=not args.negative_control,
                            _corrupt=args.negative_control)
        except RelationFailure as e:
            checks.append(check(f"build@{i}", "S3:relations", FAIL, witness=str(e)))
            continue
        recs = relation_suite(fam, seed=seed + 1000 + i, probes=args.probes)
        recs += rank_conditions(fam)
        for r in recs:
            r["point"] = i
        checks.extend(recs)
    report = make_report("verify-rep", args.series, args.n, field, [seed], checks,
                         extra={"points": args.points,
                                "sp_specialization": "Q = q^-n" if args.series == "sp" else None})
    return _finish(args, report)


def cmd_fuse_check(args) -> int:
    from . import fusion
    from .vectorrep import build_rep

    _validate_series(args)
    field = _field(args)
    seed = _seed(args)
    wanted = [c.strip() for c in args.checks.split(",") if c.strip()]
    allowed = {"ybe", "unitarity", "idempotent", "matsumoto"}
    bad = set(wanted) - allowed
    if bad:
        print(f"error: unknown checks {sorted(bad)}; allowed: {sorted(allowed)}", file=sys.stderr)
        return USAGE_ERROR
    try:
        point = sample_admissible_point(args.series, args.n, field, seed=seed)
    except AdmissibleExhausted:
        return EXHAUSTED
    fam = build_rep(args.series, args.n, point)
    rng = random.Random(seed + 7)
    checks = []
    normalization = "paper" if args.negative_control else "unitary"

    def fresh_u():
        for _ in range(16):
            try:
                uh = sample_spectral_value(point, rng)
                return field.mul(uh, uh)
            except AdmissibleExhausted:
                continue
        raise AdmissibleExhausted("no admissible spectral value")

    try:
        if "idempotent" in wanted:
            from .vectorrep import rank_conditions
            checks.extend(rank_conditions(fam))
            checks.append(fusion_idempotent_poly_check(fam))
        if "matsumoto" in wanted:
            checks.append(fusion.matsumoto_check(fam, (3, 2, 1, 4), (1, 2, 1), (2, 1, 2),
                                                 probes=args.probes, seed=seed + 11))
            checks.append(fusion.matsumoto_check(fam, (4, 3, 2, 1),
                                                 (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3),
                                                 probes=args.probes, seed=seed + 12))
            checks.append(fusion.matsumoto_check(fam, (4, 3, 2, 1),
                                                 (2, 1, 3, 2, 1, 3), (3, 2, 3, 1, 2, 3),
                                                 probes=args.probes, seed=seed + 13))
        if "unitarity" in wanted:
            for t in range(max(1, args.pairs)):
                rec = fusion.s_unitarity(fam, fresh_u(), probes=args.probes,
                                         seed=seed + 20 + t, normalization=normalization)
                rec["sample"] = t
                checks.append(rec)
            neg = fusion.s_unitarity(fam, fresh_u(), probes=2, seed=seed + 40,
                                     normalization="none")
            checks.append(check("fused:unitarity-unnormalized-control",
                                "S3:fusion-needs-normalizing",
                                PASS if neg["verdict"] == FAIL else FAIL,
                                method=neg["method"],
                                witness={"unnormalized_verdict": neg["verdict"]}))
            checks.append(fusion.annihilates_complement(fam, fresh_u(), seed=seed + 41))
        if "ybe" in wanted:
            for t in range(args.pairs):
                rec = fusion.ybe_residual(fam, fresh_u(), fresh_u(), probes=args.probes,
                                          seed=seed + 60 + t, normalization=normalization,
                                          _corrupt=args.negative_control)
                rec["pair"] = t
                checks.append(rec)
    except (DegeneratePoint, AdmissibleExhausted):
        return EXHAUSTED
    report = make_report("fuse-check", args.series, args.n, field, [seed], checks,
                         extra={"checks_requested": wanted,
                                "negative_control": bool(args.negative_control)})
    return _finish(args, report)


def fusion_idempotent_poly_check(fam):
    """E equals the interpolation polynomial in R(q^-2) through its nonzero
    eigenvalues (the displayed polynomial identity)."""
    F = fam.field
    q = fam.point.q
    Rm = fam.r_two_leg(F.inv(F.mul(q, q))).mat
    # nonzero eigenvalues of R(q^-2) on the two surviving eigenspaces
    p = fam.point
    Qinvq = F.mul(F.inv(p.Q), q)
    qinv = F.inv(q)

    def r_scalar(s):
        u_val = F.inv(F.mul(q, q))
        c1 = F.mul(F.sub(u_val, F.one), qinv)
        c2 = F.neg(F.mul(F.sub(F.one, F.inv(u_val)), Qinvq))
        c3 = F.neg(F.mul(p.q_minus_qinv, F.sub(Qinvq, qinv)))
        return F.add(F.add(F.mul(c1, s), F.mul(c2, F.inv(s))), c3)

    a = r_scalar(F.neg(qinv))
    b = r_scalar(Qinvq)
    if F.is_zero(a) or F.is_zero(b) or F.eq(a, b):
        return check("idempotent:poly-in-R(q^-2)", "S3:E-as-polynomial", FAIL,
                     witness="degenerate eigenvalues")
    # E = ((a+b) R - R^2) / (a b)
    R2 = F.matmul(Rm, Rm)
    Em = F.arr_scale(F.arr_sub(F.arr_scale(Rm, F.add(a, b)), R2),
                     F.inv(F.mul(a, b)))
    ok = not F.arr_sub(Em, fam.e_op.mat).any() if F.kind == "prime" and Em.dtype != object \
        else all(F.is_zero(x) for x in F.arr_sub(Em, fam.e_op.mat).flat)
    return check("idempotent:poly-in-R(q^-2)", "S3:E-as-polynomial",
                 PASS if ok else FAIL, method="matrix")


def cmd_spectrum(args) -> int:
    from .vectorrep import build_rep
    from .driver import spectrum_analysis

    _validate_series(args)
    field = _field(args)
    if field.kind != "prime":
        print("error: spectrum requires a prime-field backend", file=sys.stderr)
        return USAGE_ERROR
    seed = _seed(args)
    compare = [c.strip() for c in args.compare.split(",") if c.strip()]
    allowed = {"table", "prop1", "prop2", "universal"}
    bad = set(compare) - allowed
    if bad:
        print(f"error: unknown comparisons {sorted(bad)}; allowed: {sorted(allowed)}",
              file=sys.stderr)
        return USAGE_ERROR
    try:
        point = sample_admissible_point(args.series, args.n, field, seed=seed)
        fam = build_rep(args.series, args.n, point)
        checks, extra = spectrum_analysis(fam, seed=seed, u_points=args.points,
                                          compare=compare, deep=args.deep)
    except AdmissibleExhausted:
        return EXHAUSTED
    report = make_report("spectrum", args.series, args.n, field, [seed], checks, extra=extra)
    return _finish(args, report)


def _parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _exact_sqrt(fr: Fraction):
    if fr < 0:
        return None
    rn, rd = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
    if rn * rn == fr.numerator and rd * rd == fr.denominator:
        return Fraction(rn, rd)
    return None


def cmd_formula(args) -> int:
    try:
        expr = catalog_get(args.name)
    except UnknownFormula:
        print(f"error: unknown formula {args.name!r}; names:", file=sys.stderr)
        for n in catalog_names():
            print(f"  {n}", file=sys.stderr)
        return USAGE_ERROR
    if args.name == "matP":
        print(expr)
        return 0
    _validate_series(args)
    field = _field(args)

    def halfpow(opt_h, opt_full, label):
        if opt_h is not None:
            return field.from_fraction(_parse_rational(opt_h)) if field.kind == "rational" \
                else field.from_int(int(opt_h))
        if opt_full is None:
            print(f"error: provide --{label}h or --{label}", file=sys.stderr)
            raise SystemExit(USAGE_ERROR)
        if field.kind == "rational":
            root = _exact_sqrt(_parse_rational(opt_full))
            if root is None:
                print(f"error: --{label} {opt_full} is not a perfect rational square; "
                      f"pass the half power via --{label}h", file=sys.stderr)
                raise SystemExit(USAGE_ERROR)
            return field.from_fraction(root)
        from .fusion import _sqrt
        root = _sqrt(field, field.from_int(int(opt_full)))
        if root is None:
            print(f"error: --{label} has no square root in the prime field; "
                  f"pass --{label}h", file=sys.stderr)
            raise SystemExit(USAGE_ERROR)
        return root

    try:
        qh = halfpow(args.qh, args.q, "q")
        uh = halfpow(args.uh, args.u, "u")
        point = EvalPoint(args.series, args.n, field, qh, uh)
        params = None
        if is_universal(expr):
            params = universal_params_for(args.series, args.n)
        value = eval_formula(expr, point, params)
    except (DegeneratePoint, BackendMismatch, NotImplementedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rmx", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=f"rmx {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_field=True):
        p.add_argument("--series", required=True, choices=["so", "sp"])
        p.add_argument("--n", required=True, type=int)
        if with_field:
            p.add_argument("--field", default="prime:2305843009213693951",
                           help="rational | prime:<p> (default: prime:2^61-1)")
        p.add_argument("--seed", type=int, default=None,
                       help="default: env RMX_SEED, else 0")
        p.add_argument("--out", default=None, help="write the JSON report here")

    pv = sub.add_parser("verify-rep", help="defining-relation suite")
    common(pv)
    pv.add_argument("--points", type=int, default=8)
    pv.add_argument("--probes", type=int, default=5)
    pv.add_argument("--negative-control", action="store_true",
                    help="corrupt one braid entry; the run must fail (exit 1)")
    pv.set_defaults(func=cmd_verify_rep)

    pf = sub.add_parser("fuse-check", help="fused-operator checks")
    common(pf)
    pf.add_argument("--checks", default="ybe,unitarity",
                    help="comma list from: ybe,unitarity,idempotent,matsumoto")
    pf.add_argument("--probes", type=int, default=5)
    pf.add_argument("--pairs", type=int, default=3)
    pf.add_argument("--negative-control", action="store_true",
                    help="mis-normalize and corrupt one spectral argument (exit 1 by design)")
    pf.set_defaults(func=cmd_fuse_check)

    ps = sub.add_parser("spectrum", help="centralizer blocks and spectra comparison")
    common(ps)
    ps.add_argument("--points", type=int, default=3, help="spectral values per run")
    ps.add_argument("--compare", default="table,prop1,prop2,universal")
    ps.add_argument("--deep", action="store_true",
                    help="also run full restricted charpolys (perfect-power checks)")
    ps.set_defaults(func=cmd_spectrum)

    pq = sub.add_parser("formula", help="evaluate a catalogued formula")
    pq.add_argument("--name", required=True)
    common(pq)
    pq.add_argument("--q", default=None, help="value of q (must be a perfect square)")
    pq.add_argument("--qh", default=None, help="value of q^(1/2) (overrides --q)")
    pq.add_argument("--u", default=None)
    pq.add_argument("--uh", default=None)
    pq.set_defaults(func=cmd_formula)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse uses exit code 2 for usage errors already
        raise
    try:
        return args.func(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    except AdmissibleExhausted:
        return EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
