#!/usr/bin/env python3
"""Walk through the scalar layer: evaluation points, generalized quantum
integers, and the named formula catalog.

Run:  python demos/demo_brackets_and_formulas.py
"""
from fractions import Fraction

from rmx.brackets import BracketTriple, brace_eval, bracket_eval
from rmx.catalog import catalog_get, catalog_names
from rmx.field import PrimeField, RationalField
from rmx.formulas import eval_formula, identity_test, universal_params_for
from rmx.points import EvalPoint, sample_admissible_point

print("== exact rational backend ==")
F = RationalField()
pt = EvalPoint("so", 9, F, Fraction(3, 2), Fraction(5, 3))
print(f"point: q = {pt.q}, u = {pt.u}, Q = q^9 = {pt.Q}")
for (a2, b2, c2), label in (((0, 0, 2), "[1]"), ((0, 0, 4), "[2]"),
                            ((2, 0, -2), "[n-1]"), ((1, 1, -2), "[n/2+x-1]")):
    t = BracketTriple(a2, b2, c2)
    print(f"  {label:12s} = {bracket_eval(t, pt)}")
print(f"  {{n/2-1}}     = {brace_eval(BracketTriple(1, 0, -2), pt)}")

print("\n== doubling identity {t}[t] = [2t] at random prime-field points ==")
Fp = PrimeField()
ptp = sample_admissible_point("so", 9, Fp, seed=1)
t = BracketTriple(1, 1, -2)
lhs = Fp.mul(brace_eval(t, ptp), bracket_eval(t, ptp))
rhs = bracket_eval(t.double(), ptp)
print(f"  holds exactly mod 2^61-1: {Fp.eq(lhs, rhs)}")

print("\n== the catalog ==")
print(f"{len(catalog_names())} named expressions, e.g.:")
for name in ("table_so.p22", "propA.a12", "propC.c33", "k_norm"):
    print(f"  {name}")

print("\n== randomized identity testing ==")
params = universal_params_for("so", 9)
v = identity_test(catalog_get("universal.C.c21"), catalog_get("propC.c21"),
                  "so", 9, trials=8, seed=0, params=params)
print(f"universal c21 == series c21: {v.status}")
v = identity_test(catalog_get("universal.C.c12"), catalog_get("propC.c12"),
                  "so", 9, trials=8, seed=0, params=params)
print(f"universal c12 == series c12: {v.status}  (ratio {v.detail.get('ratio_name')})")
print("the universal c12 display carries one extra factor [2]; the comparator")
print("reports such mismatches instead of silently passing or failing.")
