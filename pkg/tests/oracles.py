"""Independent reference computations used to check the library.

Everything here goes through dense numpy linear algebra (LAPACK eigensolvers,
explicit projectors, einsum partial traces) rather than the package's own
Jacobi solver or rank-reduced conditional states.
"""

import itertools
import math

import numpy as np


def dm(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def ptrace(rho, dims, keep):
    n = len(dims)
    letters = "abcdefghijklmnop"
    row = list(letters[:n])
    col = [letters[n + i] if i in keep else row[i] for i in range(n)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    t = np.einsum("".join(row) + "".join(col) + "->" + out, rho.reshape(list(dims) * 2))
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def entropy(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def h2(x):
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def partial_transpose_first(rho, d_a):
    d_b = rho.shape[0] // d_a
    return rho.reshape(d_a, d_b, d_a, d_b).transpose(2, 1, 0, 3).reshape(rho.shape)


def negativity(rho, d_a=2):
    return (np.abs(np.linalg.eigvalsh(partial_transpose_first(rho, d_a))).sum() - 1) / 2


def projector(theta, phi):
    v = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    p0 = np.outer(v, v.conj())
    return p0, np.eye(2) - p0


def measured_terms(rho, theta, phi):
    """Conditional entropy and post-dephasing entropy with dense projectors."""
    d_b = rho.shape[0] // 2
    cond = 0.0
    dephased = np.zeros_like(rho)
    for p in projector(theta, phi):
        big = np.kron(p, np.eye(d_b))
        post = big @ rho @ big
        dephased += post
        prob = np.trace(post).real
        if prob > 1e-14:
            cond += prob * entropy(ptrace(post / prob, [2, d_b], [1]))
    return cond, entropy(dephased)


def brute_force_minima(rho, n_theta=61, n_phi=61):
    """Grid minima of the conditional entropy and of the dephased entropy."""
    best_c, best_d = math.inf, math.inf
    for theta in np.linspace(0, math.pi, n_theta):
        for phi in np.linspace(0, 2 * math.pi, n_phi, endpoint=False):
            c, d = measured_terms(rho, theta, phi)
            best_c = min(best_c, c)
            best_d = min(best_d, d)
    return best_c, best_d


def discord_and_deficit(rho, **grid):
    d_b = rho.shape[0] // 2
    c, d = brute_force_minima(rho, **grid)
    s_ab = entropy(rho)
    s_a = entropy(ptrace(rho, [2, d_b], [0]))
    return s_a - s_ab + c, d - s_ab


def concurrence(rho):
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    r = rho @ yy @ rho.conj() @ yy
    mu = np.sort(np.sqrt(np.abs(np.linalg.eigvals(r))))[::-1]
    return max(0.0, mu[0] - mu[1] - mu[2] - mu[3])


def random_unitary(d, rng):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(d, rng, rank=None):
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_ket(d, rng):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def weight_states(n, r):
    """Basis indices of n-bit strings with r ones, by explicit enumeration."""
    return [i for i, bits in enumerate(itertools.product([0, 1], repeat=n)) if sum(bits) == r]
