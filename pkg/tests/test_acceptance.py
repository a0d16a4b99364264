"""Acceptance checks, one test (or one parametrized group) per criterion.

Test names start with ``test_c<k>_``; the hook in conftest.py folds the
outcomes into one PASS/FAIL line per criterion at the end of the run.
Tolerances are written out literally here on purpose. Measured extremes go
through ``record_property("detail", ...)`` so they show up in that summary.
"""

import math
import os
import time

import numpy as np
import pytest

import oracles
from qmonogamy.campaign import generate_states, score_entries
from qmonogamy.cli import main as cli_main
from qmonogamy.linalg import eigvalsh
from qmonogamy.measures import DEFAULT_MEASURES, BipartiteCut, MeasureKind, quantum_discord, work_deficit
from qmonogamy.monogamy import monogamy_score, tripartite_complementarity
from qmonogamy.states import (
    GhzwParams,
    SeedSpec,
    dicke,
    ghz,
    ghz_w,
    haar_pure,
    largest_eig_analytic,
    reduced_qubit_analytic,
    w_state,
)

N_RANK1 = 2000
N_RANK2 = 2000
RANK1_SEED = 20140
RANK2_SEED = 20141  # a different base seed, so the two ensembles share no normals
WORKERS = os.cpu_count() or 1

TOL_CLOSED = 1e-6
TOL_OPTIMIZED = 5e-4
OPTIMIZED = {MeasureKind.DISCORD, MeasureKind.WORK_DEFICIT, MeasureKind.MEASURED_MUTUAL_INFORMATION}


def tol(kind):
    return TOL_OPTIMIZED if kind in OPTIMIZED else TOL_CLOSED


@pytest.fixture(scope="module")
def campaign():
    start = time.perf_counter()
    entries = generate_states("haar-pure", 3, N_RANK1, RANK1_SEED)
    entries += generate_states("haar-rank2", 3, N_RANK2, RANK2_SEED)
    records = score_entries(entries, DEFAULT_MEASURES, workers=WORKERS)
    return {"entries": entries, "records": records, "seconds": time.perf_counter() - start}


@pytest.fixture(scope="module")
def pure500():
    return [haar_pure((2, 2, 2), SeedSpec(RANK1_SEED, i)) for i in range(500)]


def test_c1_lower_bound_property(campaign, record_property):
    records = campaign["records"]
    assert len(records) == (N_RANK1 + N_RANK2) * 6
    bad = [(r.state_id, r.measure.value, r.delta + r.entropy_a) for r in records if r.delta + r.entropy_a < -tol(r.measure)]
    worst = ", ".join(f"{k.value}={min(r.delta + r.entropy_a for r in records if r.measure is k):.4g}" for k in DEFAULT_MEASURES)
    record_property("detail", f"min(delta + S_A): {worst}; campaign took {campaign['seconds']:.0f} s")
    assert not bad, bad[:5]
    assert campaign["seconds"] <= 30 * 60


def test_c2_x0_below_two(campaign, record_property):
    worst = max(r.x0 for r in campaign["records"])
    record_property("detail", f"max x0 over every state and measure: {worst:.6f}")
    assert worst < 2


NEGATIVITIES = {MeasureKind.NEGATIVITY, MeasureKind.LOG_NEGATIVITY}


@pytest.mark.parametrize(
    "kind",
    [
        pytest.param(
            k,
            id=k.value,
            marks=pytest.mark.xfail(
                strict=True,
                reason="negativity-type measures exceed the qubit ceiling on weakly entangled pure states",
            ),
        )
        if k in NEGATIVITIES
        else pytest.param(k, id=k.value)
        for k in DEFAULT_MEASURES
    ],
)
def test_c2_x0_within_ceiling(campaign, kind, record_property):
    recs = [r for r in campaign["records"] if r.measure is kind]
    assert all(r.b0 == 1.0 for r in recs)
    over = [(r.state_id, r.x0) for r in recs if r.x0 > 1.0 + tol(kind)]
    record_property("detail", f"{kind.value}: {len(over)} of {len(recs)} records above b0 + tol; max x0 {max(r.x0 for r in recs):.6f}")
    assert not over, over[:5]


@pytest.mark.parametrize("kind", [MeasureKind.DISCORD, MeasureKind.WORK_DEFICIT], ids=lambda k: k.value)
def test_c3_rank_one_saturation(pure500, kind, record_property):
    worst = 0.0
    for psi in pure500:
        cut = BipartiteCut(psi, [0])
        purity = 1.0 - cut.entropy_a
        if kind is MeasureKind.DISCORD:
            q = quantum_discord(cut, analytic_pure=False).normalized
        else:
            q = work_deficit(cut).normalized
        worst = max(worst, abs(purity + q - 1.0))
    record_property("detail", f"{kind.value}: max |x0 - 1| = {worst:.3e}")
    assert worst <= 5e-4


def test_c4_ckw(record_property):
    worst = math.inf
    for i in range(N_RANK1):
        worst = min(worst, monogamy_score("tau", haar_pure((2, 2, 2), SeedSpec(RANK1_SEED, i))).delta)
    record_property("detail", f"min delta_tau = {worst:.3e}")
    assert worst >= -1e-9
    assert abs(monogamy_score("tau", ghz(3)).delta - 1.0) <= 1e-9
    assert abs(monogamy_score("tau", w_state(3)).delta) <= 1e-9


def test_c5_analytic_reduction(record_property):
    rng = np.random.default_rng(5)
    worst_entry = worst_eig = 0.0
    for k in range(1000):
        n = 3 + k % 6
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        p = GhzwParams(n, *(z / np.linalg.norm(z)))
        numeric = oracles.ptrace(oracles.dm(ghz_w(p).amplitudes), [2] * n, [0])
        worst_entry = max(worst_entry, float(np.max(np.abs(reduced_qubit_analytic(p).matrix - numeric))))
        worst_eig = max(worst_eig, abs(largest_eig_analytic(p) - np.linalg.eigvalsh(numeric)[-1]))
    record_property("detail", f"max entry gap {worst_entry:.2e}, max eigenvalue gap {worst_eig:.2e}")
    assert worst_entry <= 1e-12
    assert worst_eig <= 1e-10


def test_c6_dicke_spectrum():
    for n in range(2, 9):
        for r in range(1, n):
            vals = np.sort(eigvalsh(dicke(n, r).reduced([0]).matrix))
            expected = np.sort([r / n, (n - r) / n])
            assert np.max(np.abs(vals - expected)) <= 1e-12, (n, r)


@pytest.mark.parametrize("kind", [MeasureKind.DISCORD, MeasureKind.WORK_DEFICIT], ids=lambda k: k.value)
def test_c7_pure_state_identity(pure500, kind, record_property):
    worst = 0.0
    for psi in pure500:
        cut = BipartiteCut(psi, [0])
        if kind is MeasureKind.DISCORD:
            raw = quantum_discord(cut, analytic_pure=False).raw
        else:
            raw = work_deficit(cut).raw
        worst = max(worst, abs(raw - cut.entropy_a))
    record_property("detail", f"{kind.value}: max |numeric - S_A| = {worst:.3e}")
    assert worst <= 5e-4


def test_c8_ghz_saturation():
    assert abs(tripartite_complementarity(ghz(3)) - 1.5) <= 1e-9


def test_c9_haar_purity(record_property):
    total = 0.0
    for i in range(10_000):
        rho_a = haar_pure((2, 2, 2), SeedSpec(99, i)).reduced([0]).matrix
        total += np.trace(rho_a @ rho_a).real
    mean = total / 10_000
    record_property("detail", f"mean marginal purity {mean:.5f}")
    assert abs(mean - 2 / 3) <= 0.01


def test_c10_verify_determinism(tmp_path):
    states = tmp_path / "states.json"
    assert cli_main(["gen", "--family", "haar-rank2", "--count", "12", "--seed", "7", "--out", str(states)]) == 0
    reports = []
    for k, workers in enumerate((1, 1, 4)):
        path = tmp_path / f"report{k}.json"
        cli_main(["verify", "--in", str(states), "--measures", "all", "--workers", str(workers), "--report", str(path)])
        reports.append(path.read_bytes())
    assert reports[0] == reports[1], "two identical runs differ"
    assert reports[0] == reports[2], "worker count changed the report"
