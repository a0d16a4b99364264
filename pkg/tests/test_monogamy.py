import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

import oracles
from qmonogamy.linalg import DensityMatrix
from qmonogamy.measures import DEFAULT_MEASURES, BipartiteCut, MeasureKind, binary_entropy
from qmonogamy.monogamy import (
    PartitionSpec,
    bound_b,
    complementarity_x0,
    lower_bounds,
    monogamy_score,
    tolerance_for,
    tripartite_complementarity,
    verify,
)
from qmonogamy.states import (
    GhzwParams,
    PureState,
    SeedSpec,
    basis_state,
    ghz,
    ghz_w,
    haar_pure,
    haar_rank2_threequbit,
    largest_eig_analytic,
    w_state,
)

H13 = binary_entropy(1 / 3)


def test_tangle_scores():
    assert_allclose(monogamy_score("tau", ghz(3)).delta, 1.0, atol=1e-7)
    rec = monogamy_score("tau", w_state(3))
    assert_allclose(rec.q_whole, 8 / 9, atol=1e-7)
    assert_allclose(rec.q_pairs, [4 / 9, 4 / 9], atol=1e-7)
    assert abs(rec.delta) <= 1e-7


def test_mutual_information_score_ghz():
    rec = monogamy_score(MeasureKind.MUTUAL_INFORMATION, ghz(3))
    assert_allclose(rec.q_whole, 1.0, atol=1e-12)
    assert_allclose(rec.q_pairs, [0.5, 0.5], atol=1e-12)
    assert abs(rec.delta) <= 1e-12


def test_bound_b():
    assert bound_b(2, 4) == 1.0
    assert bound_b(4, 2) == 1.5
    for d in (2, 3, 5):
        assert bound_b(d, d) == 1.0
    assert_allclose(bound_b(8, 2), 2 - 1 / 3)
    with pytest.raises(ValueError):
        bound_b(1, 2)


def test_x0_examples():
    assert_allclose(complementarity_x0("d", BipartiteCut(basis_state("000"), [0])), 1.0, atol=1e-12)
    assert_allclose(complementarity_x0("d", BipartiteCut(ghz(3), [0])), 1.0, atol=1e-12)


def test_x0_rank_one_discord_and_deficit():
    for i in range(40):
        cut = BipartiteCut(haar_pure((2, 2, 2), SeedSpec(8, i)), [0])
        assert abs(complementarity_x0("d", cut) - 1) <= 5e-4
        assert abs(complementarity_x0("wd", cut) - 1) <= 5e-4


def test_lower_bounds_three_qubits():
    rng = np.random.default_rng(3)
    for _ in range(20):
        s = rng.uniform(0, 1)
        x0 = rng.uniform(0, 1.5)
        trivial, improved, entropy = lower_bounds(1 - s, x0, m=2)
        assert trivial == -1.0
        assert_allclose(entropy, -s, atol=1e-15)
        assert_allclose(improved, entropy - (1 - x0), atol=1e-15)


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_lower_bounds_ghzw(n):
    rng = np.random.default_rng(n)
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    p = GhzwParams(n, *(z / np.linalg.norm(z)))
    rec = monogamy_score("d", ghz_w(p))
    assert_allclose(rec.bound_entropy, -(n - 2) * binary_entropy(largest_eig_analytic(p)), atol=1e-10)


def test_lower_bounds_product():
    trivial, improved, entropy = lower_bounds(1.0, 1.0, m=2)
    assert improved == entropy == 0.0
    assert trivial == -1.0


def test_lower_bounds_errors():
    with pytest.raises(ValueError):
        lower_bounds(1.0, 1.0, m=0)
    with pytest.raises(ValueError):
        lower_bounds(1.0, 1.0, m=2, d_a=4, leaf_dims=[2, 4])


def test_tripartite_complementarity():
    assert_allclose(tripartite_complementarity(ghz(3)), 1.5, atol=1e-12)
    assert_allclose(tripartite_complementarity(basis_state("000")), 1.0, atol=1e-12)
    assert abs(tripartite_complementarity(DensityMatrix(np.eye(8) / 8, (2, 2, 2)))) <= 1e-12
    with pytest.raises(ValueError):
        tripartite_complementarity(PureState(np.eye(12)[0], (2, 2, 3)))


def test_tripartite_complementarity_bound(rng):
    for k in range(200):
        rho = oracles.random_density(8, rng, rank=1 + k % 8)
        assert tripartite_complementarity(DensityMatrix(rho, (2, 2, 2))) <= 1.5 + 1e-9
    for i in range(50):
        assert tripartite_complementarity(haar_pure((3, 3, 3), SeedSpec(4, i))) <= 1.5 + 1e-9


def test_verify_ghz_all_pass():
    records = verify(ghz(3), state_id="ghz")
    assert [r.measure for r in records] == list(DEFAULT_MEASURES)
    for r in records:
        assert r.passed, r.measure
        assert r.state_id == "ghz"


def test_verify_w_discord():
    (rec,) = verify(w_state(3), measures=["d"])
    assert rec.delta >= -H13 - rec.tol
    assert_allclose(rec.bound_entropy, -H13, atol=1e-12)
    assert rec.pass_entropy


def test_verify_product():
    for r in verify(basis_state("000")):
        assert abs(r.delta) <= r.tol
        assert r.bound_entropy == 0.0 and abs(r.bound_improved) <= 1e-12
        assert r.passed


def test_tolerance_split():
    assert tolerance_for(MeasureKind.DISCORD) == 5e-4
    assert tolerance_for(MeasureKind.WORK_DEFICIT) == 5e-4
    assert tolerance_for(MeasureKind.MEASURED_MUTUAL_INFORMATION) == 5e-4
    assert tolerance_for(MeasureKind.NEGATIVITY) == 1e-6
    assert tolerance_for(MeasureKind.MUTUAL_INFORMATION) == 1e-6


def test_record_consistency():
    rho = haar_rank2_threequbit(SeedSpec(2, 0))
    for r in verify(rho):
        assert abs(r.delta - (r.q_whole - sum(r.q_pairs))) <= 1e-12
        assert abs(r.x0 - (r.purity_a + r.q_whole)) <= 1e-12
        assert r.entropy_bound_applicable == (r.x0 >= 1)
        assert r.b0 == 1.0 and r.bk == [1.0, 1.0]


def test_partition_errors():
    with pytest.raises(ValueError):
        PartitionSpec(0, (0, 1))
    with pytest.raises(ValueError):
        PartitionSpec(0, (1, 1))
    with pytest.raises(ValueError):
        PartitionSpec(0, ())
    with pytest.raises(ValueError):
        monogamy_score("n", ghz(4), PartitionSpec(0, (1, 2)))


def test_non_qubit_nodal_rejected():
    psi = haar_pure((3, 3, 3), SeedSpec(1, 0))
    with pytest.raises(ValueError):
        monogamy_score("n", psi)


def test_qutrit_leaves():
    psi = haar_pure((2, 3, 3), SeedSpec(5, 5))
    rec = monogamy_score("n", psi)
    assert rec.b0 == 1.0 and rec.bk == [1.0, 1.0]
    assert abs(rec.delta - (rec.q_whole - sum(rec.q_pairs))) <= 1e-12


def test_nodal_choice():
    psi = haar_pure((2, 2, 2), SeedSpec(6, 1))
    a = monogamy_score("i", psi, PartitionSpec.star(3, nodal=1))
    b = monogamy_score("i", psi.to_density_matrix().permute([1, 0, 2]))
    assert abs(a.delta - b.delta) <= 1e-12


# --- invariants over sampled states ---


@pytest.fixture(scope="module")
def sampled_records():
    records = []
    for i in range(60):
        records += verify(haar_pure((2, 2, 2), SeedSpec(500, i)), state_id=f"p{i}")
        records += verify(haar_rank2_threequbit(SeedSpec(501, i)), state_id=f"m{i}")
    return records


def test_delta_plus_entropy_nonnegative(sampled_records):
    for r in sampled_records:
        assert r.delta + r.entropy_a >= -r.tol, (r.state_id, r.measure)


def test_bound_orderings(sampled_records):
    for r in sampled_records:
        assert r.bound_entropy >= r.bound_trivial
        assert abs(r.bound_improved - (r.bound_entropy - (1 - r.x0))) <= 1e-15


def test_x0_below_two(sampled_records):
    assert max(r.x0 for r in sampled_records) < 2


def test_tangle_monogamous_on_pure_states():
    for i in range(200):
        assert monogamy_score("tau", haar_pure((2, 2, 2), SeedSpec(900, i))).delta >= -1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**63), st.sampled_from(["n", "l", "i", "j", "d", "wd"]), st.booleans())
def test_leaf_relabeling(seed, measure, mixed):
    state = haar_rank2_threequbit(SeedSpec(seed)) if mixed else haar_pure((2, 2, 2), SeedSpec(seed))
    a = monogamy_score(measure, state, PartitionSpec(0, (1, 2)))
    b = monogamy_score(measure, state, PartitionSpec(0, (2, 1)))
    assert abs(a.delta - b.delta) <= 1e-12
