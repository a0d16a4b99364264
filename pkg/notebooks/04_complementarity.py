"""
Purity plus correlation
=======================

The sum x0 of the nodal purity and the normalized correlation across A:rest.
For discord and work-deficit on pure states it sits at 1; negativity-type
measures can go above 1 for weakly entangled states.
"""

import math

from qmonogamy import BipartiteCut, PureState, SeedSpec, haar_pure, complementarity_x0, tripartite_complementarity, ghz

for eps in (0.5, 0.1, 0.01, 1e-4):
    psi = PureState([math.sqrt(1 - eps), 0, 0, math.sqrt(eps)], (2, 2))
    cut = BipartiteCut(psi, [0])
    xs = {k: complementarity_x0(k, cut) for k in ("negativity", "log_negativity", "discord")}
    print(f"eps={eps:g}", {k: round(v, 4) for k, v in xs.items()})

psi = haar_pure((2, 2, 2), SeedSpec(3, 0))
print("haar x0 with work-deficit:", complementarity_x0("wd", BipartiteCut(psi, [0])))

# %%
# The AB:C version with halved mutual information tops out at 3/2 for GHZ.

print("GHZ:", tripartite_complementarity(ghz(3)))
