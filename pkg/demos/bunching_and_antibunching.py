"""Coincidence bump and dip versus detector mismatch.

Sweeps the dimensionless mode overlap x for thermal bosons and fermions
and prints the mode count M(x) together with the coincidence ratio
K = 1 +/- 1/M.  Bosons show a bump (K > 1, bunching) that decays from
K = 2 at perfect overlap; fermions show the mirror-image dip (K < 1,
antibunching) starting from K = 0.
"""

import numpy as np

from hbtcount import ModeProfile, coincidence_curve

profile = ModeProfile("lorentzian")
sweep = np.linspace(0.0, 8.0, 17)

print(f"{'x':>6}  {'M':>8}  {'K boson':>8}  {'K fermion':>9}")
boson = coincidence_curve("boson", True, profile, sweep)
fermion = coincidence_curve("fermion", True, profile, sweep)
for (x, m, kb), (_, _, kf) in zip(boson, fermion):
    print(f"{x:6.2f}  {m:8.4f}  {kb:8.4f}  {kf:9.4f}")

print()
print("At x = 0 a single coherence cell is observed and the two-particle")
print("effect is maximal; for large x the contrast |K - 1| = 1/M fades as")
print("many independent cells average the correlations away.")
