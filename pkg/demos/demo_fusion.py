#!/usr/bin/env python3
"""The fusion construction: permutation operators from reduced words,
well-definedness, and the fused operator with its Yang-Baxter equation and
unitarity on the adjoint-plus-trivial square.

Run:  python demos/demo_fusion.py   (about a minute)
"""
import random

from rmx import fusion
from rmx.field import PrimeField
from rmx.points import sample_admissible_point, sample_spectral_value
from rmx.vectorrep import build_rep

F = PrimeField()
pt = sample_admissible_point("so", 9, F, seed=42)
fam = build_rep("so", 9, pt)
rng = random.Random(3)

print("== words and well-definedness ==")
for perm, wa, wb in (((3, 2, 1, 4), (1, 2, 1), (2, 1, 2)),
                     ((4, 3, 2, 1), (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3))):
    rec = fusion.matsumoto_check(fam, perm, wa, wb, probes=5, seed=1)
    print(f"  {wa} vs {wb} for {perm}: {rec['verdict']}")

print("\n== fused operator on the adjoint-plus-trivial square ==")
uh = sample_spectral_value(pt, rng)
u = F.mul(uh, uh)
print(f"  S annihilates the complement: "
      f"{fusion.annihilates_complement(fam, u, seed=2)['verdict']}")
print(f"  S(u)S(1/u) = 1 with the derived normalizer: "
      f"{fusion.s_unitarity(fam, u, probes=4, seed=2)['verdict']}")
print(f"  ... with the displayed normalizer (known deviation): "
      f"{fusion.s_unitarity(fam, u, probes=2, seed=2, normalization='paper')['verdict']}")
print(f"  ... unnormalized: "
      f"{fusion.s_unitarity(fam, u, probes=2, seed=2, normalization='none')['verdict']}")

print("\n== Yang-Baxter on six legs (exact, probe vectors) ==")
vh = sample_spectral_value(pt, rng)
v = F.mul(vh, vh)
print(f"  S1(u)S2(uv)S1(v) = S2(v)S1(uv)S2(u): "
      f"{fusion.ybe_residual(fam, u, v, probes=3, seed=4)['verdict']}")
print(f"  corrupted spectral argument (control): "
      f"{fusion.ybe_residual(fam, u, v, probes=2, seed=4, _corrupt=True)['verdict']}")
