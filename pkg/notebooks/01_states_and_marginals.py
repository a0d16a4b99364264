"""
Building states and looking at their marginals
==============================================

GHZ, W and Dicke states, the one-parameter family mixing them, and how the
single-qubit marginal of that family compares with a numeric partial trace.
"""

import numpy as np

from qmonogamy import ghz, w_state, dicke, ghz_w, GhzwParams
from qmonogamy import reduced_qubit_analytic, largest_eig_analytic
from qmonogamy.measures import von_neumann_entropy, binary_entropy

# GHZ marginals are maximally mixed, W marginals are not
for name, psi in [("ghz", ghz(3)), ("w", w_state(3))]:
    rho_a = psi.reduced([0])
    print(name, np.round(rho_a.matrix.real, 4).tolist(), "S =", round(von_neumann_entropy(rho_a), 5))

# Dicke states with r excitations: the marginal has eigenvalues r/n and (n-r)/n
n = 6
for r in range(1, n):
    vals = dicke(n, r).reduced([0]).spectrum
    print(f"dicke n={n} r={r}:", np.round(vals, 6))

# %%
# The mixed GHZ/W family has a closed-form qubit marginal.
# Compare it with the numeric reduction for a random point.

rng = np.random.default_rng(0)
z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
p = GhzwParams(5, *(z / np.linalg.norm(z)))
closed = reduced_qubit_analytic(p).matrix
numeric = ghz_w(p).reduced([0]).matrix
print("largest entry gap:", np.abs(closed - numeric).max())

e = largest_eig_analytic(p)
print("e =", e, " entropy-only bound -(n-2) h(e) =", -(p.n - 2) * binary_entropy(e))
