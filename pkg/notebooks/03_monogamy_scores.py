"""
Monogamy scores and their lower bounds
======================================

For a nodal qubit A and leaves B1..Bm the score is
q(A:B1..Bm) - sum_k q(A:Bk). It may be negative, but never below
-(m-1) S(rho_A) in the three-qubit samples checked here.
"""

from qmonogamy import verify, ghz, w_state, haar_pure, SeedSpec

for name, psi in [("ghz", ghz(3)), ("w", w_state(3))]:
    print(name)
    for rec in verify(psi):
        print(f"  {rec.measure.value:28s} delta={rec.delta:+.5f}  bound={rec.bound_entropy:+.5f}  x0={rec.x0:.5f}  pass={rec.passed}")

# %%
# A handful of Haar-random states. ``delta + S_A`` is the histogram quantity.

worst = {}
for i in range(20):
    for rec in verify(haar_pure((2, 2, 2), SeedSpec(1, i))):
        key = rec.measure.value
        worst[key] = min(worst.get(key, 1.0), rec.delta + rec.entropy_a)
for key, val in worst.items():
    print(f"min(delta + S_A) over 20 states, {key}: {val:.4f}")
