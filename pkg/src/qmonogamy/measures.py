"""Entropies and bipartite correlation measures.

All logarithms are base 2. Measures that need a measurement on the nodal
side (measured mutual information, discord, work-deficit) restrict it to
rank-1 projective measurements on a single qubit, parameterized by two Bloch
angles and optimized by :func:`optimize_qubit_measurement`. Because the
optimizer can only overshoot the true minimum of the conditional entropy,
computed discord and work-deficit are upper bounds of the exact values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .linalg import DensityMatrix, as_density_matrix, eigh, eigvalsh, partial_transpose_matrix, trace_norm

RANK_CUTOFF = 1e-14


class MeasureKind(enum.Enum):
    NEGATIVITY = "negativity"
    LOG_NEGATIVITY = "log_negativity"
    MUTUAL_INFORMATION = "mutual_information"
    MEASURED_MUTUAL_INFORMATION = "measured_mutual_information"
    DISCORD = "discord"
    WORK_DEFICIT = "work_deficit"
    TANGLE = "tangle"
    EOF = "eof"

    @property
    def scale(self) -> float:
        """Extra factor in the normalizer; mutual informations are halved."""
        if self in (MeasureKind.MUTUAL_INFORMATION, MeasureKind.MEASURED_MUTUAL_INFORMATION):
            return 2.0
        return 1.0

    @property
    def optimized(self) -> bool:
        return self in (
            MeasureKind.MEASURED_MUTUAL_INFORMATION,
            MeasureKind.DISCORD,
            MeasureKind.WORK_DEFICIT,
        )

    @classmethod
    def parse(cls, name: "str | MeasureKind") -> "MeasureKind":
        if isinstance(name, cls):
            return name
        key = name.strip().lower().replace("-", "_")
        if key in _ALIASES:
            return _ALIASES[key]
        return cls(key)


_ALIASES = {
    "n": MeasureKind.NEGATIVITY,
    "neg": MeasureKind.NEGATIVITY,
    "l": MeasureKind.LOG_NEGATIVITY,
    "logneg": MeasureKind.LOG_NEGATIVITY,
    "i": MeasureKind.MUTUAL_INFORMATION,
    "mi": MeasureKind.MUTUAL_INFORMATION,
    "j": MeasureKind.MEASURED_MUTUAL_INFORMATION,
    "mmi": MeasureKind.MEASURED_MUTUAL_INFORMATION,
    "d": MeasureKind.DISCORD,
    "wd": MeasureKind.WORK_DEFICIT,
    "delta": MeasureKind.WORK_DEFICIT,
    "tau": MeasureKind.TANGLE,
}

# The six measures of the three-qubit histograms.
DEFAULT_MEASURES = (
    MeasureKind.NEGATIVITY,
    MeasureKind.LOG_NEGATIVITY,
    MeasureKind.DISCORD,
    MeasureKind.WORK_DEFICIT,
    MeasureKind.MUTUAL_INFORMATION,
    MeasureKind.MEASURED_MUTUAL_INFORMATION,
)


def normalizer(kind: MeasureKind, d_a: int, d_b: int) -> float:
    return kind.scale * min(math.log2(d_a), math.log2(d_b))


@dataclass(frozen=True)
class OptimizerSettings:
    n_theta: int = 64
    n_phi: int = 128
    diameter_tol: float = 1e-7
    max_iter: int = 5000


@dataclass(frozen=True)
class QubitMeasurementBasis:
    theta: float
    phi: float

    def vector(self) -> np.ndarray:
        return np.array([math.cos(self.theta / 2), np.exp(1j * self.phi) * math.sin(self.theta / 2)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        v = self.vector()
        p0 = np.outer(v, v.conj())
        return p0, np.eye(2) - p0


@dataclass(frozen=True)
class OptimizerReport:
    grid_best: float
    refined_best: float
    iterations: int
    evaluations: int

    def as_dict(self) -> dict:
        return {
            "grid_best": self.grid_best,
            "refined_best": self.refined_best,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class MeasureValue:
    kind: MeasureKind
    raw: float
    normalized: float
    optimizer_report: OptimizerReport | None = None
    basis: QubitMeasurementBasis | None = None


def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    # theta -> 2pi - theta with phi -> phi + pi gives the same projector pair.
    theta = math.fmod(theta, 2 * math.pi)
    if theta < 0:
        theta += 2 * math.pi
    if theta > math.pi:
        theta = 2 * math.pi - theta
        phi += math.pi
    phi = math.fmod(phi, 2 * math.pi)
    if phi < 0:
        phi += 2 * math.pi
    return theta, phi


def optimize_qubit_measurement(
    objective: Callable[[np.ndarray, np.ndarray], np.ndarray],
    settings: OptimizerSettings = OptimizerSettings(),
) -> tuple[QubitMeasurementBasis, float, OptimizerReport]:
    """Minimize ``objective(theta, phi)`` over qubit measurement directions.

    ``objective`` must accept equal-shape arrays of angles and return values
    of the same shape. A fixed grid is scanned first, then a downhill simplex
    is run from the best grid point until the simplex diameter drops below
    ``settings.diameter_tol``. The returned value never exceeds the grid best.
    """
    thetas = np.linspace(0.0, math.pi, settings.n_theta)
    phis = 2 * math.pi * np.arange(settings.n_phi) / settings.n_phi
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    values = np.broadcast_to(np.asarray(objective(tt, pp), dtype=float), tt.shape)
    k = int(np.argmin(values))
    grid_best = float(values[k])
    start = np.array([tt[k], pp[k]])

    def f(x):
        return float(np.asarray(objective(np.array([x[0]]), np.array([x[1]])), dtype=float).reshape(-1)[0])

    h_theta = math.pi / max(settings.n_theta - 1, 1)
    h_phi = 2 * math.pi / settings.n_phi
    simplex = np.array([start, start + [h_theta, 0.0], start + [0.0, h_phi]])
    # scipy stops when every vertex is within xatol of the best one (per coordinate),
    # which bounds the diameter by 2*sqrt(2)*xatol.
    res = minimize(
        f,
        start,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": settings.diameter_tol / (2 * math.sqrt(2)),
            "fatol": np.inf,
            "maxiter": settings.max_iter,
            "maxfev": 4 * settings.max_iter,
        },
    )
    if res.fun < grid_best:
        best_x, best = res.x, float(res.fun)
    else:
        best_x, best = start, grid_best
    theta, phi = _canonical_angles(float(best_x[0]), float(best_x[1]))
    report = OptimizerReport(grid_best, best, int(res.nit), int(res.nfev) + tt.size)
    return QubitMeasurementBasis(theta, phi), best, report


# --- entropies ------------------------------------------------------------------


def entropy_from_eigenvalues(vals) -> float:
    lam = np.clip(np.asarray(vals, dtype=float), 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho) -> float:
    """Entropy in bits; eigenvalues are clamped to [0, 1] before the logarithm."""
    return entropy_from_eigenvalues(as_density_matrix(rho).spectrum)


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def normalized_purity(rho) -> float:
    rho = as_density_matrix(rho)
    log_d = math.log2(rho.dim)
    return (log_d - von_neumann_entropy(rho)) / log_d


# --- cuts -----------------------------------------------------------------------


class BipartiteCut:
    """A density matrix split into side A and side B.

    Subsystems belonging to neither side are traced out. Derived quantities
    (marginals, entropies, optimizer results) are cached, so one cut can be
    shared by every measure evaluated on it.
    """

    def __init__(self, rho, side_a, side_b=None, pure=None):
        state = rho
        rho = as_density_matrix(rho)
        n = rho.n_parties
        side_a = (side_a,) if isinstance(side_a, (int, np.integer)) else tuple(side_a)
        if side_b is None:
            side_b = tuple(i for i in range(n) if i not in side_a)
        side_b = (side_b,) if isinstance(side_b, (int, np.integer)) else tuple(side_b)
        for i in side_a + side_b:
            if not 0 <= i < n:
                raise IndexError(f"subsystem index {i} out of range for {n} subsystems")
        if not side_a or not side_b:
            raise ValueError("both sides of a cut must be nonempty")
        if set(side_a) & set(side_b):
            raise ValueError(f"sides overlap: {side_a} and {side_b}")
        if len(set(side_a)) != len(side_a) or len(set(side_b)) != len(side_b):
            raise ValueError("repeated subsystem index in cut")
        self.parent = rho
        self.side_a = side_a
        self.side_b = side_b
        self.d_a = int(np.prod([rho.dims[i] for i in side_a]))
        self.d_b = int(np.prod([rho.dims[i] for i in side_b]))
        covers = len(side_a) + len(side_b) == n
        if pure is None and covers and hasattr(state, "amplitudes"):
            pure = True
        self._pure_hint = pure if covers else None
        self._optimized: dict = {}

    @cached_property
    def rho(self) -> DensityMatrix:
        """The cut state as a two-party operator on (d_a, d_b)."""
        keep = sorted(self.side_a + self.side_b)
        reduced = self.parent.ptrace(keep)
        order = [keep.index(i) for i in self.side_a + self.side_b]
        m = reduced.permute(order).matrix
        return DensityMatrix(m, (self.d_a, self.d_b), check=False)

    @cached_property
    def rho_a(self) -> DensityMatrix:
        return self.rho.ptrace([0])

    @cached_property
    def rho_b(self) -> DensityMatrix:
        return self.rho.ptrace([1])

    @cached_property
    def entropy_ab(self) -> float:
        if self._pure_hint:
            return 0.0
        return von_neumann_entropy(self.rho)

    @cached_property
    def entropy_a(self) -> float:
        return von_neumann_entropy(self.rho_a)

    @cached_property
    def entropy_b(self) -> float:
        return von_neumann_entropy(self.rho_b)

    @property
    def is_pure(self) -> bool:
        if self._pure_hint is not None:
            return bool(self._pure_hint)
        return self.rho.is_pure()

    @cached_property
    def _factor(self) -> np.ndarray:
        """W with rho = sum_k w_k w_k^dag, shaped (2, d_b, rank)."""
        spec = self.rho.eigh()
        vals = np.clip(spec.eigenvalues, 0.0, None)
        rank = max(int(np.sum(vals > RANK_CUTOFF)), 1)
        w = spec.eigenvectors[:, :rank] * np.sqrt(vals[:rank])
        return w.reshape(self.d_a, self.d_b, rank)

    def conditional_terms(self, theta, phi):
        """Outcome probabilities and conditional entropies on side B.

        Returns ``(probs, entropies)``, each of shape ``(2,) + theta.shape``,
        for a projective measurement of the (qubit) side A along (theta, phi).
        """
        if self.d_a != 2:
            raise ValueError(f"measured side must be a single qubit, got dimension {self.d_a}")
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        shape = theta.shape
        c = np.cos(theta.ravel() / 2)
        s = np.sin(theta.ravel() / 2)
        e = np.exp(1j * phi.ravel())
        w = self._factor
        # (<v| x I) w_k for |v> = (c, e s) and its orthogonal partner (-e* s, c)
        u0 = c[:, None, None] * w[0] + (np.conj(e) * s)[:, None, None] * w[1]
        u1 = -(e * s)[:, None, None] * w[0] + c[:, None, None] * w[1]
        u = np.concatenate([u0, u1])
        d_b, rank = w.shape[1], w.shape[2]
        if rank <= d_b:
            blocks = np.einsum("nbk,nbl->nkl", u.conj(), u)
        else:
            blocks = np.einsum("nbk,nck->nbc", u, u.conj())
        vals = np.clip(eigvalsh(blocks, check=False), 0.0, None)
        probs = vals.sum(axis=1)
        safe = np.where(probs > 0, probs, 1.0)
        x = np.clip(vals / safe[:, None], 0.0, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(x > 0, -x * np.log2(np.where(x > 0, x, 1.0)), 0.0)
        ent = terms.sum(axis=1)
        return probs.reshape((2,) + shape), ent.reshape((2,) + shape)

    def conditional_entropy(self, theta, phi):
        p, h = self.conditional_terms(theta, phi)
        return np.sum(p * h, axis=0)

    def dephased_entropy(self, theta, phi):
        """Entropy of the state after dephasing side A in the given basis."""
        p, h = self.conditional_terms(theta, phi)
        with np.errstate(divide="ignore", invalid="ignore"):
            shannon = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        return np.sum(shannon + p * h, axis=0)

    def optimized(self, which: str, settings: OptimizerSettings):
        key = (which, settings)
        if key not in self._optimized:
            objective = self.conditional_entropy if which == "conditional" else self.dephased_entropy
            self._optimized[key] = optimize_qubit_measurement(objective, settings)
        return self._optimized[key]


def as_cut(x, side_a=(0,), side_b=None) -> BipartiteCut:
    if isinstance(x, BipartiteCut):
        return x
    return BipartiteCut(x, side_a, side_b)


def _value(kind, raw, cut, report=None, basis=None) -> MeasureValue:
    raw = float(raw)
    return MeasureValue(kind, raw, raw / normalizer(kind, cut.d_a, cut.d_b), report, basis)


# --- measures -----------------------------------------------------------------


def negativity(cut) -> MeasureValue:
    cut = as_cut(cut)
    pt = partial_transpose_matrix(cut.rho.matrix, cut.rho.dims, 0)
    return _value(MeasureKind.NEGATIVITY, (trace_norm(pt, check=False) - 1) / 2, cut)


def log_negativity(cut) -> MeasureValue:
    cut = as_cut(cut)
    n = negativity(cut).raw
    return _value(MeasureKind.LOG_NEGATIVITY, math.log2(2 * n + 1), cut)


def mutual_information(cut) -> MeasureValue:
    cut = as_cut(cut)
    raw = cut.entropy_a + cut.entropy_b - cut.entropy_ab
    return _value(MeasureKind.MUTUAL_INFORMATION, raw, cut)


def measured_mutual_information(cut, settings: OptimizerSettings = OptimizerSettings()) -> MeasureValue:
    """S(rho_B) minus the smallest conditional entropy after measuring A."""
    cut = as_cut(cut)
    if cut.d_a != 2:
        raise ValueError(f"measured side must be a single qubit, got dimension {cut.d_a}")
    basis, best, report = cut.optimized("conditional", settings)
    return _value(MeasureKind.MEASURED_MUTUAL_INFORMATION, cut.entropy_b - best, cut, report, basis)


def quantum_discord(cut, settings: OptimizerSettings = OptimizerSettings(), analytic_pure=True) -> MeasureValue:
    """Mutual information minus measured mutual information, measuring side A.

    For a pure cut the discord equals S(rho_A); that shortcut is used unless
    ``analytic_pure`` is False.
    """
    cut = as_cut(cut)
    if cut.d_a != 2:
        raise ValueError(f"measured side must be a single qubit, got dimension {cut.d_a}")
    if analytic_pure and cut.is_pure:
        return _value(MeasureKind.DISCORD, cut.entropy_a, cut)
    basis, best, report = cut.optimized("conditional", settings)
    raw = cut.entropy_a - cut.entropy_ab + best
    return _value(MeasureKind.DISCORD, raw, cut, report, basis)


def work_deficit(cut, settings: OptimizerSettings = OptimizerSettings()) -> MeasureValue:
    """One-way work-deficit with projective dephasing of side A.

    Restricting the local operations to a single dephasing on A makes this an
    upper bound of the work-deficit over all closed LOCC protocols.
    """
    cut = as_cut(cut)
    if cut.d_a != 2:
        raise ValueError(f"dephased side must be a single qubit, got dimension {cut.d_a}")
    basis, best, report = cut.optimized("dephased", settings)
    return _value(MeasureKind.WORK_DEFICIT, best - cut.entropy_ab, cut, report, basis)


_SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def _two_qubit_matrix(rho) -> np.ndarray:
    if isinstance(rho, BipartiteCut):
        rho = rho.rho
    rho = as_density_matrix(rho)
    if rho.dim != 4 or rho.dims not in ((2, 2), (4,)):
        raise ValueError(f"expected a two-qubit state, got dims {rho.dims}")
    return rho.matrix


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state."""
    m = _two_qubit_matrix(rho)
    spec = eigh(m, check=False)
    root = (spec.eigenvectors * np.sqrt(np.clip(spec.eigenvalues, 0.0, None))) @ spec.eigenvectors.conj().T
    flipped = _SIGMA_YY @ m.conj() @ _SIGMA_YY
    r = root @ flipped @ root
    r = (r + r.conj().T) / 2
    mu = np.sqrt(np.clip(eigvalsh(r, check=False), 0.0, None))
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def tangle(rho) -> float:
    return concurrence(rho) ** 2


def tangle_pure_cut(psi, nodal: int = 0) -> float:
    """4 det(rho_A) for a pure state and a qubit nodal party."""
    if not hasattr(psi, "amplitudes"):
        raise TypeError("tangle_pure_cut needs a pure state")
    if psi.dims[nodal] != 2:
        raise ValueError(f"nodal party must be a qubit, got dimension {psi.dims[nodal]}")
    m = psi.reduced([nodal]).matrix
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    return float(max(4 * det, 0.0))


def eof_two_qubit(rho) -> float:
    c = min(concurrence(rho), 1.0)
    return binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def eof_pure_cut(psi, nodal: int = 0) -> float:
    return von_neumann_entropy(psi.reduced([nodal]))


def _tangle_value(cut: BipartiteCut) -> MeasureValue:
    if cut.d_a == 2 and cut.d_b == 2:
        raw = tangle(cut.rho)
    elif cut.d_a == 2 and cut.is_pure:
        m = cut.rho_a.matrix
        raw = max(4 * (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real, 0.0)
    else:
        raise ValueError("tangle of a mixed state beyond two qubits needs a convex roof; not supported")
    return _value(MeasureKind.TANGLE, raw, cut)


def _eof_value(cut: BipartiteCut) -> MeasureValue:
    if cut.d_a == 2 and cut.d_b == 2:
        raw = eof_two_qubit(cut.rho)
    elif cut.is_pure:
        raw = cut.entropy_a
    else:
        raise ValueError("entanglement of formation is only closed-form for two qubits or pure cuts")
    return _value(MeasureKind.EOF, raw, cut)


def evaluate(kind, cut, settings: OptimizerSettings = OptimizerSettings(), analytic_pure=True) -> MeasureValue:
    """Evaluate any measure on a cut, sharing the cut's cached intermediates."""
    kind = MeasureKind.parse(kind)
    cut = as_cut(cut)
    if kind is MeasureKind.NEGATIVITY:
        return negativity(cut)
    if kind is MeasureKind.LOG_NEGATIVITY:
        return log_negativity(cut)
    if kind is MeasureKind.MUTUAL_INFORMATION:
        return mutual_information(cut)
    if kind is MeasureKind.MEASURED_MUTUAL_INFORMATION:
        return measured_mutual_information(cut, settings)
    if kind is MeasureKind.DISCORD:
        return quantum_discord(cut, settings, analytic_pure=analytic_pure)
    if kind is MeasureKind.WORK_DEFICIT:
        return work_deficit(cut, settings)
    if kind is MeasureKind.TANGLE:
        return _tangle_value(cut)
    return _eof_value(cut)
