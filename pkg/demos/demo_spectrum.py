#!/usr/bin/env python3
"""Decompose the centralizer algebra on the fused square, extract the
multiplicity-space spectra of the fused operator, and compare with the
catalogued closed forms (with machine arbitration of the displays that
disagree).

Run:  python demos/demo_spectrum.py   (a few minutes)
"""
from rmx.driver import spectrum_analysis
from rmx.field import PrimeField
from rmx.points import sample_admissible_point
from rmx.vectorrep import build_rep

F = PrimeField()
pt = sample_admissible_point("so", 9, F, seed=42)
fam = build_rep("so", 9, pt)
checks, extra = spectrum_analysis(fam, seed=0, u_points=2,
                                  compare=("table", "prop1", "prop2", "universal"))
print(f"blocks (mult, dim, label): {extra['blocks']}")
print()
width = max(len(c["name"]) for c in checks)
for c in checks:
    line = f"[{c['verdict']:<11s}] {c['name']:<{width}s}"
    if c["verdict"] == "DISCREPANCY" and isinstance(c.get("witness"), dict):
        hint = c["witness"].get("computed_over_displayed") or \
            c["witness"].get("ratio_name") or c["witness"].get("note", "")
        line += f"  {hint}"
    print(line)
print()
print("DERIVED records carry machine ground truth (for instance the value of")
print("the blank symmetric-matrix entry); DISCREPANCY records document the")
print("displays that the computed spectra overrule.")
