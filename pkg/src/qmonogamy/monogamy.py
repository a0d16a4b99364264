"""Monogamy scores, the complementarity sum and lower bounds on the score."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import as_density_matrix
from .measures import (
    BipartiteCut,
    MeasureKind,
    OptimizerSettings,
    evaluate,
    normalized_purity,
    mutual_information,
)

CLOSED_FORM_TOL = 1e-6
OPTIMIZER_TOL = 5e-4


def tolerance_for(kind: MeasureKind) -> float:
    return OPTIMIZER_TOL if kind.optimized else CLOSED_FORM_TOL


@dataclass(frozen=True)
class PartitionSpec:
    nodal: int
    leaves: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(int(i) for i in self.leaves))
        if self.nodal in self.leaves:
            raise ValueError("nodal party cannot also be a leaf")
        if len(set(self.leaves)) != len(self.leaves):
            raise ValueError("repeated leaf index")
        if not self.leaves:
            raise ValueError("need at least one leaf party")

    @classmethod
    def star(cls, n_parties: int, nodal: int = 0) -> "PartitionSpec":
        return cls(nodal, tuple(i for i in range(n_parties) if i != nodal))

    def check(self, n_parties: int):
        covered = sorted((self.nodal,) + self.leaves)
        if covered != list(range(n_parties)):
            raise ValueError(f"partition {self} does not cover all {n_parties} subsystems")

    @property
    def m(self) -> int:
        return len(self.leaves)


@dataclass
class MonogamyRecord:
    state_id: str
    measure: MeasureKind
    q_whole: float
    q_pairs: list[float]
    delta: float
    entropy_a: float
    purity_a: float
    x0: float
    xk: list[float]
    b0: float
    bk: list[float]
    bound_trivial: float
    bound_improved: float
    bound_entropy: float
    q_whole_raw: float
    q_pairs_raw: list[float]
    delta_raw: float
    tol: float
    pass_entropy: bool | None = None
    pass_improved: bool | None = None
    pass_x0: bool | None = None
    family: str = ""
    rank: int | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def entropy_bound_applicable(self) -> bool:
        """The entropy-only bound follows from the improved one when x0 >= 1."""
        return self.x0 >= 1.0

    @property
    def m(self) -> int:
        return len(self.q_pairs)

    def set_flags(self):
        self.pass_entropy = bool(self.delta >= self.bound_entropy - self.tol)
        self.pass_improved = bool(self.delta >= self.bound_improved - self.tol)
        self.pass_x0 = bool(self.x0 <= self.b0 + self.tol)
        return self

    @property
    def passed(self) -> bool:
        return bool(self.pass_entropy and self.pass_improved and self.pass_x0)


def bound_b(d_x: int, d_y: int) -> float:
    """Ceiling of purity plus normalized correlation across an X:Y cut."""
    if d_x < 2 or d_y < 2:
        raise ValueError("dimensions must be at least 2")
    if d_x <= d_y:
        return 1.0
    return 2.0 - math.log2(d_y) / math.log2(d_x)


def lower_bounds(purity_a: float, x0: float, m: int, d_a: int = 2, leaf_dims: Sequence[int] = ()):
    """Trivial, improved and entropy-only lower bounds on the normalized score.

    The improved and entropy bounds rely on every leaf ceiling b_k being 1,
    which holds only when the nodal party is no larger than each leaf.
    """
    if m < 1:
        raise ValueError("need at least one leaf")
    for d in leaf_dims:
        if d_a > d:
            raise ValueError(f"bound chain needs d_A <= d_B for every leaf (d_A={d_a}, leaf {d})")
    trivial = -(m - 1.0)
    entropy = -(m - 1.0) * (1.0 - purity_a)
    improved = entropy - (1.0 - x0)
    return trivial, improved, entropy


class _StateCuts:
    """Nodal-vs-rest cut and the nodal-vs-leaf pair cuts of one state."""

    def __init__(self, state, part: PartitionSpec):
        self.rho = as_density_matrix(state)
        part.check(self.rho.n_parties)
        if self.rho.dims[part.nodal] != 2:
            raise ValueError(f"nodal party must be a qubit, got dimension {self.rho.dims[part.nodal]}")
        self.part = part
        self.whole = BipartiteCut(state, (part.nodal,), part.leaves)
        self.pairs = [BipartiteCut(self.rho, (part.nodal,), (leaf,)) for leaf in part.leaves]

    def leaf_dims(self):
        return [self.rho.dims[i] for i in self.part.leaves]


def _score(kind, cuts: _StateCuts, settings, state_id, analytic_pure=True) -> MonogamyRecord:
    whole = evaluate(kind, cuts.whole, settings, analytic_pure=analytic_pure)
    pairs = [evaluate(kind, c, settings, analytic_pure=analytic_pure) for c in cuts.pairs]
    d_a = cuts.whole.d_a
    entropy_a = cuts.whole.entropy_a
    purity_a = (math.log2(d_a) - entropy_a) / math.log2(d_a)
    q_pairs = [p.normalized for p in pairs]
    x0 = purity_a + whole.normalized
    m = cuts.part.m
    trivial, improved, entropy = lower_bounds(purity_a, x0, m, d_a, cuts.leaf_dims())
    diagnostics = {}
    reports = [whole.optimizer_report] + [p.optimizer_report for p in pairs]
    if any(r is not None for r in reports):
        diagnostics["optimizer"] = [None if r is None else r.as_dict() for r in reports]
    return MonogamyRecord(
        state_id=state_id,
        measure=kind,
        q_whole=whole.normalized,
        q_pairs=q_pairs,
        delta=whole.normalized - sum(q_pairs),
        entropy_a=entropy_a,
        purity_a=purity_a,
        x0=x0,
        xk=[purity_a + q for q in q_pairs],
        b0=bound_b(d_a, cuts.whole.d_b),
        bk=[bound_b(d_a, c.d_b) for c in cuts.pairs],
        bound_trivial=trivial,
        bound_improved=improved,
        bound_entropy=entropy,
        q_whole_raw=whole.raw,
        q_pairs_raw=[p.raw for p in pairs],
        delta_raw=whole.raw - sum(p.raw for p in pairs),
        tol=tolerance_for(kind),
        diagnostics=diagnostics,
    )


def monogamy_score(measure, rho, part: PartitionSpec | None = None, settings=OptimizerSettings(), state_id="", analytic_pure=True) -> MonogamyRecord:
    """Score of one measure: correlation across nodal:rest minus the pairwise sum."""
    kind = MeasureKind.parse(measure)
    if part is None:
        part = PartitionSpec.star(as_density_matrix(rho).n_parties)
    return _score(kind, _StateCuts(rho, part), settings, state_id, analytic_pure)


def complementarity_x0(measure, cut, settings=OptimizerSettings()) -> float:
    """Normalized purity of side A plus the normalized correlation across the cut."""
    kind = MeasureKind.parse(measure)
    if not isinstance(cut, BipartiteCut):
        cut = BipartiteCut(cut, (0,))
    purity = (math.log2(cut.d_a) - cut.entropy_a) / math.log2(cut.d_a)
    return purity + evaluate(kind, cut, settings).normalized


def tripartite_complementarity(rho) -> float:
    """Purity of AB plus half the AB:C mutual information, normalized."""
    rho = as_density_matrix(rho)
    if rho.n_parties != 3 or len(set(rho.dims)) != 1:
        raise ValueError(f"need three subsystems of equal dimension, got dims {rho.dims}")
    cut = BipartiteCut(rho, (0, 1), (2,))
    return normalized_purity(cut.rho_a) + mutual_information(cut).normalized


def verify(rho, part: PartitionSpec | None = None, measures=None, settings=OptimizerSettings(), state_id="", family="", rank=None) -> list[MonogamyRecord]:
    """Score every measure on one state and flag each bound check."""
    from .measures import DEFAULT_MEASURES

    kinds = [MeasureKind.parse(k) for k in (measures or DEFAULT_MEASURES)]
    if part is None:
        part = PartitionSpec.star(as_density_matrix(rho).n_parties)
    cuts = _StateCuts(rho, part)
    records = []
    for kind in kinds:
        rec = _score(kind, cuts, settings, state_id)
        rec.family = family
        rec.rank = rank
        records.append(rec.set_flags())
    return records
