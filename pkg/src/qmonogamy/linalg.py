"""Dense complex-matrix kernel for small multiqubit systems.

Subsystem 0 is the leftmost tensor factor and composite indices are
row-major, so a state on dims ``(2, 3)`` has basis order ``|00>, |01>, |02>,
|10>, ...``.

The Hermitian eigensolver is a cyclic complex Jacobi iteration that works on
stacks of matrices, which is what the measurement optimizer needs when it
evaluates thousands of conditional states at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-9

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class Spectrum(NamedTuple):
    """Eigenvalues sorted descending, with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def kron(*ops) -> np.ndarray:
    """Tensor product of any number of matrices or vectors, left to right."""
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op))
    return out


def hermiticity_error(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2))), initial=0.0))


def _check_hermitian(m, tol=HERMITIAN_TOL):
    err = hermiticity_error(m)
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dag| = {err:.3g})")


def _jacobi(a: np.ndarray, want_vectors: bool, tol: float, max_sweeps: int):
    """Cyclic Jacobi on a (B, n, n) stack of Hermitian matrices.

    Returns unsorted diagonals and, optionally, the accumulated unitaries.
    """
    batch, n, _ = a.shape
    a = a.astype(complex, copy=True)
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if want_vectors else None
    if n == 1:
        return a[:, :, 0].real.copy(), v
    if n == 2 and not want_vectors:
        return _jacobi_2x2_values(a)

    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    limit = tol * np.maximum(scale, np.finfo(float).tiny)
    # Entries below this are left alone; dividing by them loses the phase.
    negligible = 1e-30 * scale
    diag_idx = np.arange(n)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    upper = np.triu_indices(n, 1)

    for _ in range(max_sweeps):
        offdiag = np.sqrt(2.0 * np.sum(np.abs(a[:, upper[0], upper[1]]) ** 2, axis=1))
        if np.all(offdiag <= limit):
            break
        for p, q in pairs:
            apq = a[:, p, q]
            mag = np.abs(apq)
            active = mag > negligible
            safe = np.where(active, mag, 1.0)
            tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phase = np.where(active, np.conj(apq) / safe, 1.0)
            # U on the (p, q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
            upp, upq = c, s
            uqp, uqq = -s * phase, c * phase

            col_p = a[:, :, p].copy()
            col_q = a[:, :, q]
            a[:, :, p] = col_p * upp[:, None] + col_q * uqp[:, None]
            a[:, :, q] = col_p * upq[:, None] + col_q * uqq[:, None]
            row_p = a[:, p, :].copy()
            row_q = a[:, q, :]
            a[:, p, :] = upp[:, None] * row_p + np.conj(uqp)[:, None] * row_q
            a[:, q, :] = upq[:, None] * row_p + np.conj(uqq)[:, None] * row_q
            a[:, p, q] = 0.0
            a[:, q, p] = 0.0
            a[:, p, p] = a[:, p, p].real
            a[:, q, q] = a[:, q, q].real

            if v is not None:
                vp = v[:, :, p].copy()
                vq = v[:, :, q]
                v[:, :, p] = vp * upp[:, None] + vq * uqp[:, None]
                v[:, :, q] = vp * upq[:, None] + vq * uqq[:, None]
    else:
        raise RuntimeError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

    return a[:, diag_idx, diag_idx].real.copy(), v


def _jacobi_2x2_values(a: np.ndarray):
    # One rotation diagonalizes a 2x2 block exactly.
    app = a[:, 0, 0].real
    aqq = a[:, 1, 1].real
    mag = np.abs(a[:, 0, 1])
    active = mag > 1e-30 * (np.abs(app) + np.abs(aqq) + mag)
    safe = np.where(active, mag, 1.0)
    tau = (aqq - app) / (2.0 * safe)
    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    t = np.where(active, t, 0.0)
    return np.stack([app - t * mag, aqq + t * mag], axis=1), None


def eigh(m, check=True, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix (or a stack of them).

    Eigenvalues come back in descending order along the last axis, and the
    columns of ``eigenvectors`` follow the same order.
    """
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {m.shape}")
    if check:
        _check_hermitian(m)
    lead = m.shape[:-2]
    n = m.shape[-1]
    vals, vecs = _jacobi(m.reshape(-1, n, n), True, tol, max_sweeps)
    order = np.argsort(-vals, axis=1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=1)
    vecs = np.take_along_axis(vecs, order[:, None, :], axis=2)
    return Spectrum(vals.reshape(lead + (n,)), vecs.reshape(lead + (n, n)))


def eigvalsh(m, check=True, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Descending real eigenvalues of a Hermitian matrix or a stack of them."""
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {m.shape}")
    if check:
        _check_hermitian(m)
    lead = m.shape[:-2]
    n = m.shape[-1]
    vals, _ = _jacobi(m.reshape(-1, n, n), False, tol, max_sweeps)
    vals = -np.sort(-vals, axis=1)
    return vals.reshape(lead + (n,))


def trace_norm(m, check=True) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(m, check=check))))


def _normalize_indices(indices, n: int) -> list[int]:
    if isinstance(indices, (int, np.integer)):
        indices = [int(indices)]
    out = []
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"subsystem index {i} out of range for {n} subsystems")
        out.append(int(i))
    if len(set(out)) != len(out):
        raise ValueError(f"repeated subsystem index in {list(indices)}")
    return out


def partial_trace_matrix(m: np.ndarray, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems stay in their original order.
    """
    dims = list(dims)
    n = len(dims)
    keep = sorted(_normalize_indices(keep, n))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    t = np.asarray(m).reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # Contract from the highest index down so remaining axes keep their positions.
    for i in reversed(traced):
        half = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=i + half)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def partial_trace_pure(psi: np.ndarray, dims: Sequence[int], keep) -> np.ndarray:
    """Reduced density matrix of a pure state vector without forming |psi><psi|."""
    dims = list(dims)
    n = len(dims)
    keep = sorted(_normalize_indices(keep, n))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    traced = [i for i in range(n) if i not in keep]
    d_keep = int(np.prod([dims[i] for i in keep]))
    t = np.asarray(psi).reshape(dims).transpose(keep + traced).reshape(d_keep, -1)
    return t @ t.conj().T


def partial_transpose_matrix(m: np.ndarray, dims: Sequence[int], party) -> np.ndarray:
    """Transpose the listed subsystem(s) of an operator on ``dims``."""
    dims = list(dims)
    n = len(dims)
    parties = _normalize_indices(party, n)
    t = np.asarray(m).reshape(dims + dims)
    axes = list(range(2 * n))
    for i in parties:
        axes[i], axes[i + n] = axes[i + n], axes[i]
    d = int(np.prod(dims))
    return t.transpose(axes).reshape(d, d)


def permute_subsystems(m: np.ndarray, dims: Sequence[int], order) -> np.ndarray:
    """Reorder the tensor factors of an operator so factor ``order[k]`` lands at slot k."""
    dims = list(dims)
    n = len(dims)
    order = _normalize_indices(order, n)
    if len(order) != n:
        raise ValueError("order must be a permutation of all subsystems")
    d = int(np.prod(dims))
    t = np.asarray(m).reshape(dims + dims)
    return t.transpose(order + [n + i for i in order]).reshape(d, d)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace positive Hermitian operator with its tensor-factor dimensions."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, matrix, dims=None, check=True):
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {matrix.shape}")
        if dims is None:
            dims = (matrix.shape[0],)
        dims = tuple(int(d) for d in dims)
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 2, got {dims}")
        if int(np.prod(dims)) != matrix.shape[0]:
            raise ValueError(f"dims {dims} do not match matrix side {matrix.shape[0]}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dims", dims)
        if check:
            self.validate()

    def validate(self):
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr:.12g}, expected 1")
        _check_hermitian(self.matrix)
        lowest = self.spectrum[-1]
        if lowest < -POSITIVITY_TOL:
            raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {lowest:.3g})")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def spectrum(self) -> np.ndarray:
        """Descending eigenvalues, computed once."""
        cached = self.__dict__.get("_spectrum")
        if cached is None:
            cached = eigvalsh(self.matrix, check=False)
            cached.setflags(write=False)
            self.__dict__["_spectrum"] = cached
        return cached

    def eigh(self) -> Spectrum:
        cached = self.__dict__.get("_eigh")
        if cached is None:
            cached = eigh(self.matrix, check=False)
            self.__dict__["_eigh"] = cached
            self.__dict__.setdefault("_spectrum", cached.eigenvalues)
        return cached

    def ptrace(self, keep) -> "DensityMatrix":
        keep = sorted(_normalize_indices(keep, self.n_parties))
        if keep == list(range(self.n_parties)):
            return self
        m = partial_trace_matrix(self.matrix, self.dims, keep)
        return DensityMatrix(m, [self.dims[i] for i in keep], check=False)

    def permute(self, order) -> "DensityMatrix":
        order = _normalize_indices(order, self.n_parties)
        if order == list(range(self.n_parties)):
            return self
        m = permute_subsystems(self.matrix, self.dims, order)
        return DensityMatrix(m, [self.dims[i] for i in order], check=False)

    def is_pure(self, tol=1e-10) -> bool:
        return bool(self.spectrum[0] >= 1.0 - tol)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


def as_density_matrix(state, dims=None) -> DensityMatrix:
    """Accept a DensityMatrix, a PureState-like object, or a raw array."""
    if isinstance(state, DensityMatrix):
        return state
    to_dm = getattr(state, "to_density_matrix", None)
    if to_dm is not None:
        return to_dm()
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        arr = np.outer(arr, arr.conj())
    return DensityMatrix(arr, dims)


def partial_trace(rho, keep) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (original order preserved)."""
    return as_density_matrix(rho).ptrace(keep)


def partial_transpose(rho, party) -> np.ndarray:
    """Partial transpose of a density matrix over one subsystem (or several)."""
    rho = as_density_matrix(rho)
    return partial_transpose_matrix(rho.matrix, rho.dims, party)
