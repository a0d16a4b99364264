"""Named multiqubit state families, Haar sampling and the state file format."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .linalg import DensityMatrix, partial_trace_pure

NORM_TOL = 1e-12
PARAM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, amplitudes, dims=None, check=True):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if dims is None:
            n = int(round(math.log2(amps.size)))
            if 2**n != amps.size:
                raise ValueError("dims are required for a non-qubit register")
            dims = (2,) * n
        dims = tuple(int(d) for d in dims)
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 2, got {dims}")
        if int(np.prod(dims)) != amps.size:
            raise ValueError(f"dims {dims} do not match {amps.size} amplitudes")
        if check:
            norm2 = float(np.vdot(amps, amps).real)
            if abs(norm2 - 1.0) > NORM_TOL:
                raise ValueError(f"state is not normalized (squared norm {norm2:.15g})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def to_density_matrix(self) -> DensityMatrix:
        psi = self.amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()), self.dims, check=False)

    def reduced(self, keep) -> DensityMatrix:
        """Marginal on ``keep`` computed directly from the amplitudes."""
        if isinstance(keep, (int, np.integer)):
            keep = [int(keep)]
        keep = sorted(keep)
        m = partial_trace_pure(self.amplitudes, self.dims, keep)
        return DensityMatrix(m, [self.dims[i] for i in keep], check=False)

    def __repr__(self):
        return f"PureState(dims={self.dims})"


@dataclass(frozen=True)
class GhzwParams:
    """Amplitudes of alpha|0..0> + beta|1..1> + gamma|W_n>."""

    n: int
    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need at least 3 qubits, got n={self.n}")
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.gamma) ** 2
        if abs(total - 1.0) > PARAM_TOL:
            raise ValueError(f"|alpha|^2 + |beta|^2 + |gamma|^2 = {total:.12g}, expected 1")


@dataclass(frozen=True)
class SeedSpec:
    base_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.base_seed < 2**64:
            raise ValueError("base_seed must be a 64-bit unsigned integer")
        if self.stream_index < 0:
            raise ValueError("stream_index must be nonnegative")

    def generator(self) -> np.random.Generator:
        # spawn_key gives each stream an independent child of the same root sequence.
        seq = np.random.SeedSequence(entropy=self.base_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(seq))


def basis_state(bits: str, dims=None) -> PureState:
    """Computational basis ket, e.g. ``basis_state('010')``."""
    digits = [int(b) for b in bits]
    dims = tuple(dims) if dims is not None else (2,) * len(digits)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[np.ravel_multi_index(digits, dims)] = 1.0
    return PureState(amps, dims)


def _weight_indices(n: int, r: int) -> list[int]:
    return [sum(1 << (n - 1 - k) for k in ones) for ones in combinations(range(n), r)]


def ghz_w(p: GhzwParams) -> PureState:
    n = p.n
    amps = np.zeros(2**n, dtype=complex)
    amps[0] += p.alpha
    amps[-1] += p.beta
    amps[_weight_indices(n, 1)] += p.gamma / math.sqrt(n)
    return PureState(amps, (2,) * n)


def ghz(n: int = 3) -> PureState:
    s = 1 / math.sqrt(2)
    return ghz_w(GhzwParams(n, s, s, 0.0))


def w_state(n: int = 3) -> PureState:
    return ghz_w(GhzwParams(n, 0.0, 0.0, 1.0))


def dicke(n: int, r: int) -> PureState:
    """Equal superposition of all n-qubit basis states with r excitations."""
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got n={n}")
    if not 1 <= r <= n - 1:
        raise ValueError(f"excitation number r={r} outside 1..{n - 1}")
    amps = np.zeros(2**n, dtype=complex)
    amps[_weight_indices(n, r)] = 1.0 / math.sqrt(math.comb(n, r))
    return PureState(amps, (2,) * n)


def bell_state() -> PureState:
    s = 1 / math.sqrt(2)
    return PureState([s, 0, 0, s], (2, 2))


def reduced_qubit_analytic(p: GhzwParams) -> DensityMatrix:
    """Closed-form single-qubit marginal of ``ghz_w(p)``."""
    n = p.n
    a2, b2, g2 = abs(p.alpha) ** 2, abs(p.beta) ** 2, abs(p.gamma) ** 2
    off = p.alpha * np.conj(p.gamma) / math.sqrt(n)
    m = np.array(
        [[a2 + (n - 1) * g2 / n, off], [np.conj(off), g2 / n + b2]],
        dtype=complex,
    )
    return DensityMatrix(m, (2,), check=False)


def largest_eig_analytic(p: GhzwParams) -> float:
    n = p.n
    a2, b2, g2 = abs(p.alpha) ** 2, abs(p.beta) ** 2, abs(p.gamma) ** 2
    radicand = 1 - 4 * a2 * b2 - 4 * (n - 1) / n * g2 * (b2 + g2 / n)
    if radicand < -1e-12:
        raise ValueError(f"negative radicand {radicand:.3g}; parameters are inconsistent")
    return 0.5 * (1 + math.sqrt(max(radicand, 0.0)))


def haar_pure(dims: Sequence[int], seed: SeedSpec) -> PureState:
    """Haar-uniform pure state from normalized complex Gaussian amplitudes."""
    dims = tuple(int(d) for d in dims)
    d = int(np.prod(dims))
    if d < 2:
        raise ValueError("total dimension must be at least 2")
    z = seed.generator().standard_normal((2, d))
    amps = z[0] + 1j * z[1]
    return PureState(amps / np.linalg.norm(amps), dims)


def haar_rank2_threequbit(seed: SeedSpec) -> DensityMatrix:
    """Three-qubit state of rank <= 2: a Haar 4-qubit pure state with the last qubit traced out."""
    return haar_pure((2, 2, 2, 2), seed).reduced([0, 1, 2])


# --- state files -------------------------------------------------------------


def _encode_complex(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values).reshape(-1)]


def _decode_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "kind": "pure", "data": _encode_complex(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"dims": list(state.dims), "kind": "mixed", "data": _encode_complex(state.matrix)}
    raise TypeError(f"cannot serialize {type(state).__name__}")


def state_from_dict(obj: dict, check=True):
    dims = tuple(obj["dims"])
    data = _decode_complex(obj["data"])
    kind = obj["kind"]
    if kind == "pure":
        return PureState(data, dims, check=check)
    if kind == "mixed":
        d = int(np.prod(dims))
        return DensityMatrix(data.reshape(d, d), dims, check=check)
    raise ValueError(f"unknown state kind {kind!r}")


def save_states(path, entries: Sequence[dict], **meta):
    """Write entries ``{"id", "family", "rank", "state"}`` plus run metadata."""
    states = []
    for e in entries:
        row = {"id": e["id"], "family": e.get("family", ""), "rank": e.get("rank")}
        row.update(state_to_dict(e["state"]))
        states.append(row)
    with open(path, "w") as fh:
        json.dump({**meta, "states": states}, fh, indent=1)
        fh.write("\n")


def load_states(path, check=True) -> list[dict]:
    """Read a state file; a bare state object or a list of them is also accepted."""
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, dict) and "states" in obj:
        raw = obj["states"]
    elif isinstance(obj, dict):
        raw = [obj]
    else:
        raw = obj
    out = []
    for i, row in enumerate(raw):
        state = state_from_dict(row, check=check)
        rank = row.get("rank")
        if rank is None:
            rank = 1 if isinstance(state, PureState) else None
        out.append(
            {
                "id": row.get("id", f"state-{i:06d}"),
                "family": row.get("family", ""),
                "rank": rank,
                "state": state,
            }
        )
    return out
