"""Seeded Monte-Carlo campaigns, record files, histograms and analytic tables."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .linalg import eigvalsh
from .measures import DEFAULT_MEASURES, MeasureKind, OptimizerSettings, binary_entropy
from .monogamy import MonogamyRecord, PartitionSpec, verify
from .states import (
    GhzwParams,
    SeedSpec,
    dicke,
    ghz,
    ghz_w,
    haar_pure,
    largest_eig_analytic,
    load_states,
    reduced_qubit_analytic,
    save_states,
    w_state,
)

log = logging.getLogger(__name__)

FAMILIES = ("haar-pure", "haar-rank2", "ghz", "w", "dicke", "ghzw")


@dataclass
class CampaignConfig:
    family: str
    n_qubits: int = 3
    count: int = 1
    base_seed: int = 0
    measures: Sequence = DEFAULT_MEASURES
    nodal: int = 0
    settings: OptimizerSettings = field(default_factory=OptimizerSettings)
    r: int = 1
    workers: int = 1
    records_path: str | None = None
    report_path: str | None = None
    states_path: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.n_qubits < 3:
            raise ValueError("n_qubits must be at least 3")
        if not 0 <= self.nodal < self.n_qubits:
            raise ValueError(f"nodal index {self.nodal} outside 0..{self.n_qubits - 1}")
        self.measures = tuple(MeasureKind.parse(k) for k in self.measures)


def _random_ghzw(n: int, seed: SeedSpec) -> GhzwParams:
    z = seed.generator().standard_normal((2, 3))
    c = z[0] + 1j * z[1]
    c /= np.linalg.norm(c)
    return GhzwParams(n, complex(c[0]), complex(c[1]), complex(c[2]))


def generate_states(family: str, n: int = 3, count: int = 1, base_seed: int = 0, r: int = 1) -> list[dict]:
    """State entries ``{"id", "family", "rank", "state"}``; entry i uses stream i."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    entries = []
    for i in range(count):
        seed = SeedSpec(base_seed, i)
        rank = 1
        if family == "haar-pure":
            state = haar_pure((2,) * n, seed)
        elif family == "haar-rank2":
            state = haar_pure((2,) * (n + 1), seed).reduced(list(range(n)))
            rank = 2
        elif family == "ghz":
            state = ghz(n)
        elif family == "w":
            state = w_state(n)
        elif family == "dicke":
            state = dicke(n, r)
        else:
            state = ghz_w(_random_ghzw(n, seed))
        entries.append({"id": f"{family}-{i:06d}", "family": family, "rank": rank, "state": state})
    return entries


def _score_entry(args):
    entry, kinds, nodal, settings = args
    state = entry["state"]
    part = PartitionSpec.star(len(state.dims), nodal)
    return verify(state, part, kinds, settings, entry["id"], entry.get("family", ""), entry.get("rank"))


def score_entries(entries, measures=DEFAULT_MEASURES, nodal=0, settings=OptimizerSettings(), workers=1) -> list[MonogamyRecord]:
    """Score every entry; output order depends only on the state ids."""
    kinds = tuple(MeasureKind.parse(k) for k in measures)
    jobs = [(e, kinds, nodal, settings) for e in sorted(entries, key=lambda e: e["id"])]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_score_entry, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        batches = [_score_entry(j) for j in jobs]
    return [rec for batch in batches for rec in batch]


# --- record files ---------------------------------------------------------------

BASE_COLUMNS = ("state_id", "family", "rank", "measure", "q_whole")
TAIL_COLUMNS = (
    "delta",
    "entropy_a",
    "purity_a",
    "x0",
    "b0",
    "bound_trivial",
    "bound_improved",
    "bound_entropy",
    "pass_entropy",
    "pass_improved",
    "pass_x0",
)

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, MeasureKind):
        return x.value
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def record_columns(m: int) -> list[str]:
    pairs = [f"q_pair_{k}" for k in range(1, m + 1)]
    raw_pairs = [f"q_pair_raw_{k}" for k in range(1, m + 1)]
    return list(BASE_COLUMNS) + pairs + list(TAIL_COLUMNS) + ["q_whole_raw"] + raw_pairs + ["delta_raw", "entropy_bound_applicable", "tol"]


def record_row(rec: MonogamyRecord) -> dict:
    row = {
        "state_id": rec.state_id,
        "family": rec.family,
        "rank": rec.rank,
        "measure": rec.measure,
        "q_whole": rec.q_whole,
        "delta": rec.delta,
        "entropy_a": rec.entropy_a,
        "purity_a": rec.purity_a,
        "x0": rec.x0,
        "b0": rec.b0,
        "bound_trivial": rec.bound_trivial,
        "bound_improved": rec.bound_improved,
        "bound_entropy": rec.bound_entropy,
        "pass_entropy": rec.pass_entropy,
        "pass_improved": rec.pass_improved,
        "pass_x0": rec.pass_x0,
        "q_whole_raw": rec.q_whole_raw,
        "delta_raw": rec.delta_raw,
        "entropy_bound_applicable": rec.entropy_bound_applicable,
        "tol": rec.tol,
    }
    for k, (q, qr) in enumerate(zip(rec.q_pairs, rec.q_pairs_raw), start=1):
        row[f"q_pair_{k}"] = q
        row[f"q_pair_raw_{k}"] = qr
    return row


def records_csv(records: Sequence[MonogamyRecord]) -> str:
    m = max((r.m for r in records), default=0)
    cols = record_columns(m)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        row = record_row(rec)
        writer.writerow([_fmt(row.get(c)) for c in cols])
    return buf.getvalue()


def write_records_csv(records, path):
    with open(path, "w", newline="") as fh:
        fh.write(records_csv(records))


def _record_json(rec: MonogamyRecord) -> dict:
    out = {k: v for k, v in record_row(rec).items()}
    out["measure"] = rec.measure.value
    out.update(
        q_pairs=rec.q_pairs,
        q_pairs_raw=rec.q_pairs_raw,
        xk=rec.xk,
        bk=rec.bk,
        diagnostics=rec.diagnostics,
    )
    for k in list(out):
        if k.startswith("q_pair_"):
            del out[k]
    return out


def summarize(records: Sequence[MonogamyRecord]) -> dict:
    by_measure: dict = {}
    for rec in records:
        s = by_measure.setdefault(
            rec.measure.value,
            {"records": 0, "fail_entropy": 0, "fail_improved": 0, "fail_x0": 0, "min_delta_plus_entropy": math.inf, "max_x0": -math.inf},
        )
        s["records"] += 1
        s["fail_entropy"] += not rec.pass_entropy
        s["fail_improved"] += not rec.pass_improved
        s["fail_x0"] += not rec.pass_x0
        s["min_delta_plus_entropy"] = min(s["min_delta_plus_entropy"], rec.delta + rec.entropy_a)
        s["max_x0"] = max(s["max_x0"], rec.x0)
    failures = sum(not r.passed for r in records)
    return {"records": len(records), "failing_records": failures, "by_measure": by_measure}


def report_dict(records, config: dict | None = None) -> dict:
    return {
        "config": config or {},
        "summary": summarize(records),
        "records": [_record_json(r) for r in records],
    }


def write_report_json(records, path, config: dict | None = None):
    with open(path, "w") as fh:
        json.dump(report_dict(records, config), fh, indent=1, sort_keys=True)
        fh.write("\n")


def config_dict(cfg: CampaignConfig) -> dict:
    return {
        "family": cfg.family,
        "n_qubits": cfg.n_qubits,
        "count": cfg.count,
        "base_seed": cfg.base_seed,
        "measures": [k.value for k in cfg.measures],
        "nodal": cfg.nodal,
        "r": cfg.r,
        "settings": asdict(cfg.settings),
    }


def run_campaign(cfg: CampaignConfig) -> list[MonogamyRecord]:
    """Generate, score and (optionally) write one campaign.

    Output bytes depend only on the config, never on ``cfg.workers``.
    """
    entries = generate_states(cfg.family, cfg.n_qubits, cfg.count, cfg.base_seed, cfg.r)
    if cfg.states_path:
        save_states(cfg.states_path, entries, family=cfg.family, base_seed=cfg.base_seed)
    log.info("scoring %d %s states with %d worker(s)", len(entries), cfg.family, cfg.workers)
    records = score_entries(entries, cfg.measures, cfg.nodal, cfg.settings, cfg.workers)
    if cfg.records_path:
        write_records_csv(records, cfg.records_path)
    if cfg.report_path:
        write_report_json(records, cfg.report_path, config_dict(cfg))
    return records


def score_file(path, measures=DEFAULT_MEASURES, nodal=0, settings=OptimizerSettings(), workers=1):
    return score_entries(load_states(path), measures, nodal, settings, workers)


# --- record analysis ------------------------------------------------------------


def read_records_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def column_values(rows: Iterable[dict], column: str, measure=None) -> np.ndarray:
    """Values of a column, or of a derived one.

    ``neg_entropy`` is ``-entropy_a``; ``a+b`` sums columns and a leading
    ``-`` negates a term, so ``delta+entropy_a`` gives the histogram quantity.
    """
    rows = list(rows)
    if measure is not None:
        name = MeasureKind.parse(measure).value
        rows = [r for r in rows if r.get("measure") == name]
    aliases = {"neg_entropy": ("entropy_a", -1.0)}
    terms = []
    for term in column.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        sign = -1.0 if term.startswith("-") else 1.0
        name = term.lstrip("-")
        name, flip = aliases.get(name, (name, 1.0))
        terms.append((sign * flip, name))
    if not terms:
        raise KeyError(f"unknown column {column!r}")
    if rows:
        for _, name in terms:
            if name not in rows[0]:
                raise KeyError(f"unknown column {name!r}")
    out = np.zeros(len(rows))
    for sign, name in terms:
        out += sign * np.array([float(r[name]) for r in rows])
    return out


@dataclass(frozen=True)
class HistogramSpec:
    column: str
    bins: int = 50
    range: tuple[float, float] | None = None

    def __post_init__(self):
        if self.bins < 1:
            raise ValueError("bin count must be at least 1")


def histogram(values, spec: HistogramSpec) -> list[tuple[float, float, int]]:
    """(left, right, frequency) rows; every value lands in exactly one bin."""
    values = np.asarray(values, dtype=float)
    if spec.range is not None:
        lo, hi = spec.range
        if values.size and (values.min() < lo or values.max() > hi):
            raise ValueError(f"values fall outside the histogram range [{lo}, {hi}]")
    counts, edges = np.histogram(values, bins=spec.bins, range=spec.range)
    return [(float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(spec.bins)]


def histogram_csv(rows: Sequence[tuple[float, float, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bin_left", "bin_right", "frequency"])
    for left, right, f in rows:
        w.writerow([_fmt(left), _fmt(right), f])
    return buf.getvalue()


def scatter_export(rows, x: str = "delta", y: str = "neg_entropy", measure=None) -> list[tuple[float, float]]:
    xs = column_values(rows, x, measure)
    ys = column_values(rows, y, measure)
    return list(zip(xs.tolist(), ys.tolist()))


def scatter_csv(points, x: str = "delta", y: str = "neg_entropy") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([x, y])
    for a, b in points:
        w.writerow([_fmt(a), _fmt(b)])
    return buf.getvalue()


# --- analytic families ------------------------------------------------------------

ANALYTIC_COLUMNS = ("family", "n", "r", "alpha2", "beta2", "gamma2", "e", "h_e", "entropy_bound", "e_numeric", "abs_diff")


def _numeric_top_eig(state) -> float:
    return float(eigvalsh(state.reduced([0]).matrix, check=False)[0])


def analytic_table(family: str, n: int, sweep: int = 11) -> list[dict]:
    """Closed-form reduced eigenvalue e and the bound -(n-2) h(e) per parameter point.

    Each row carries the top eigenvalue of the numerically reduced state for
    comparison. ``sweep`` is the number of grid points per amplitude axis.
    """
    if n < 3:
        raise ValueError("need at least 3 qubits")
    if sweep < 1:
        raise ValueError("sweep must be at least 1")
    grid = np.linspace(0.0, 1.0, sweep) if sweep > 1 else np.array([0.5])
    rows = []

    def add(params: GhzwParams | None, r, state, e):
        h = binary_entropy(min(max(1 - e, 0.0), 1.0))
        e_num = _numeric_top_eig(state)
        a2 = abs(params.alpha) ** 2 if params else float("nan")
        b2 = abs(params.beta) ** 2 if params else float("nan")
        g2 = abs(params.gamma) ** 2 if params else float("nan")
        rows.append(
            dict(family=family, n=n, r=r, alpha2=a2, beta2=b2, gamma2=g2, e=e, h_e=h,
                 entropy_bound=-(n - 2) * h, e_numeric=e_num, abs_diff=abs(e - e_num))
        )

    if family == "dicke":
        for r in range(1, n):
            e = max(r, n - r) / n
            add(None, r, dicke(n, r), e)
    elif family == "w":
        p = GhzwParams(n, 0.0, 0.0, 1.0)
        add(p, 1, ghz_w(p), largest_eig_analytic(p))
    elif family == "ghz":
        for a2 in grid:
            p = GhzwParams(n, math.sqrt(a2), math.sqrt(max(1 - a2, 0.0)), 0.0)
            add(p, "", ghz_w(p), largest_eig_analytic(p))
    elif family == "ghzw":
        for a2 in grid:
            for g2 in grid:
                if a2 + g2 > 1 + 1e-12:
                    continue
                b2 = max(1 - a2 - g2, 0.0)
                p = GhzwParams(n, math.sqrt(a2), math.sqrt(b2), math.sqrt(g2))
                add(p, "", ghz_w(p), largest_eig_analytic(p))
    else:
        raise ValueError(f"unknown analytic family {family!r}")
    return rows


def analytic_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ANALYTIC_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in ANALYTIC_COLUMNS])
    return buf.getvalue()


def reduced_mismatch(p: GhzwParams) -> float:
    """Largest entrywise gap between the closed-form and numeric qubit marginals."""
    return float(np.max(np.abs(reduced_qubit_analytic(p).matrix - ghz_w(p).reduced([0]).matrix)))
