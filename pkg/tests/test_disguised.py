import numpy as np
import pytest

from toricpath.config import SearchBudget
from toricpath.disguised import (
    DisguisedCertificate,
    connect_members,
    disguised_locus_membership,
    disguised_membership,
    fiber_path,
    iter_samples,
    positive_steady_state,
    verify_realization,
)
from toricpath.dynamics import massaction_rhs
from toricpath.egraph import new_egraph
from toricpath.errors import ClassMismatch, MembershipFailure, NotWeaklyReversible
from toricpath.networks import three_cycle, two_cycle
from toricpath.toric import fiber_rate_vector, phi, toric_membership


def _condition_52b(k):
    k12, k23, k34, k43 = k
    if k12 <= 0 or k43 <= 0:
        return False
    if k34 > 0 > k23:
        return k12 * k43 + k34 * k23 >= 0
    return True


def test_positive_rates_all_members(collinear, rng):
    G_tilde, G = collinear
    for _ in range(10):
        k = rng.uniform(0.1, 10, 4)
        cert = disguised_membership(G, k, G_tilde)
        assert cert.member, cert.reason
        ok, res = verify_realization(G, k, G_tilde, cert.realized_rates, cert.steady_state)
        assert ok and res["equivalence"] <= 1e-8
        assert np.all(cert.realized_rates > 0)


def test_signed_condition(collinear):
    G_tilde, G = collinear
    cases = [
        ([1, -0.5, 1.0, 1], True),
        ([1, -2.0, 1.0, 1], False),
        ([1, 0.5, -1.0, 1], True),
        ([1, -1.0, -1.0, 1], True),
        ([2, -1.0, 1.5, 1], True),
        ([1, -1.5, 1.5, 1], False),
    ]
    for k, expected in cases:
        assert _condition_52b(k) == expected
        cert = disguised_membership(G, k, G_tilde, signed=True)
        assert cert.member == expected, (k, cert.reason)
        if not expected:
            assert cert.search_exhausted


def test_unsigned_needs_positive_rates(collinear):
    G_tilde, G = collinear
    with pytest.raises(ValueError):
        disguised_membership(G, [1, -1, 1, 1], G_tilde)


def test_target_must_be_wr(collinear):
    G_tilde, G = collinear
    with pytest.raises(NotWeaklyReversible):
        disguised_membership(G_tilde, np.ones(12), G)


def test_target_equal_to_graph_keeps_rates():
    G = three_cycle()
    k = phi(G, [2.0, 2.0, 2.0], [0.5, 3.0])
    cert = disguised_membership(G, k, G)
    assert cert.member and np.array_equal(cert.realized_rates, k)
    # generic rates on this deficiency-one cycle are proven non-members
    cert = disguised_membership(G, [1.0, 2.0, 3.0], G)
    assert not cert.member and cert.search_exhausted


def test_steady_state_search(collinear, rng):
    _, G = collinear
    k = rng.uniform(0.1, 10, 4)
    x = positive_steady_state(G, k)
    assert np.all(x > 0)
    f = massaction_rhs(G, k, x)
    assert np.max(np.abs(f)) <= 1e-9 * max(1.0, np.max(k))
    # pure outflow has no positive steady state
    drain = new_egraph([(1,), (0,)], [(0, 1)])
    assert positive_steady_state(drain, [1.0], SearchBudget(starts=4)) is None


def test_locus_membership():
    G = two_cycle()
    cert = disguised_locus_membership(G, [2.0, 3.0])
    assert cert.member and cert.target_graph.is_subgraph_of(G)
    drain = new_egraph([(1,), (0,)], [(0, 1)])
    cert = disguised_locus_membership(drain, [1.0])
    assert not cert.member and cert.search_exhausted


def test_locus_member_on_collinear(collinear, rng):
    _, G = collinear
    cert = disguised_locus_membership(G, rng.uniform(0.5, 2, 4))
    assert cert.member
    assert toric_membership(cert.target_graph, cert.realized_rates).member


def test_certificate_serializes(collinear):
    G_tilde, G = collinear
    d = disguised_membership(G, np.ones(4), G_tilde).to_dict()
    assert d["member"] and len(d["realized_rates"]) == 12
    assert DisguisedCertificate(False).to_dict()["target_graph"] is None


# -- paths ------------------------------------------------------------------


def test_fiber_path_constant_at_own_state():
    G = two_cycle()
    cert = disguised_membership(G, [2.0, 3.0], G)
    seg = fiber_path(G, [2.0, 3.0], cert, cert.steady_state, samples=5)
    for r in seg.rates:
        assert np.allclose(r, [2.0, 3.0], rtol=1e-14)


def test_fiber_path_samples(collinear, rng):
    G_tilde, G = collinear
    k = rng.uniform(0.5, 2, 4)
    cert = disguised_membership(G, k, G_tilde)
    x1 = cert.steady_state
    x_target = x1 + 0.3 * min(x1) * np.array([1.0, -1.0])
    seg = fiber_path(G, k, cert, x_target, samples=9)
    assert np.array_equal(seg.rates[0], k)
    assert np.allclose(seg.rates[-1], fiber_rate_vector(G, k, x_target, x1))
    for r, c in zip(seg.rates, seg.certificates):
        assert c.member and np.all(r > 0)
        assert disguised_membership(G, r, G_tilde).member
    with pytest.raises(ClassMismatch):
        fiber_path(G, k, cert, x1 * 2.0)
    with pytest.raises(MembershipFailure):
        fiber_path(G, k, DisguisedCertificate(False), x1)


def test_hand_computed_fiber_on_two_cycle():
    G = two_cycle()
    cert = disguised_membership(G, [2.0, 3.0], G)
    cert.steady_state = np.array([1.2, 0.8])
    seg = fiber_path(G, [2.0, 3.0], cert, [0.6, 1.4], samples=3)
    assert np.allclose(seg.rates[-1], [4.0, 12 / 7])


def test_degenerate_path(collinear):
    G_tilde, G = collinear
    k = np.array([1.0, 2.0, 1.5, 0.5])
    x = disguised_membership(G, k, G_tilde).steady_state
    path = connect_members(G, k, k, x0=x, samples=6)
    assert len(path.segments) == 3
    for seg in path.segments:
        assert all(np.allclose(r, seg.rates[0]) for r in seg.rates)
    assert np.array_equal(path.segments[0].rates[0], k)
    assert np.array_equal(path.segments[-1].rates[-1], k)


def _assert_path_structure(path, k_a, k_b, signed):
    segs = path.segments
    assert [s.kind for s in segs] == ["fiber", "line", "fiber"]
    assert np.array_equal(segs[0].rates[0], k_a)
    assert np.array_equal(segs[-1].rates[-1], k_b)
    assert np.array_equal(segs[0].rates[-1], segs[1].rates[0])
    assert np.array_equal(segs[1].rates[-1], segs[2].rates[0])
    for _, _, k, c in iter_samples(path):
        assert c.member
        assert signed or np.all(k > 0)


def test_connect_positive_members(collinear, rng):
    _, G = collinear
    k_a, k_b = rng.uniform(0.1, 10, 4), rng.uniform(0.1, 10, 4)
    path = connect_members(G, k_a, k_b, samples=11)
    _assert_path_structure(path, k_a, k_b, signed=False)
    d = path.to_dict()
    assert len(d["segments"]) == 3 and len(d["summary"]) == 3


def test_connect_signed_members(collinear):
    _, G = collinear
    k_a = np.array([1.0, -0.5, 1.0, 1.0])
    k_b = np.array([2.0, 0.5, -1.0, 1.0])
    path = connect_members(G, k_a, k_b, signed=True, samples=9)
    _assert_path_structure(path, k_a, k_b, signed=True)


def test_connect_rejects_non_member(collinear):
    G_tilde, G = collinear
    with pytest.raises(MembershipFailure):
        connect_members(G, np.array([1.0, -2.0, 1.0, 1.0]), np.ones(4), signed=True, samples=3,
                        target=G_tilde)


def test_line_segment_convexity(collinear, rng):
    G_tilde, G = collinear
    k_a, k_b = rng.uniform(0.5, 5, 4), rng.uniform(0.5, 5, 4)
    path = connect_members(G, k_a, k_b, samples=11, target=G_tilde)
    line = path.segments[1]
    x0 = np.ones(2)
    for t, k, c in zip(line.t, line.rates, line.certificates):
        assert c.member
        assert np.allclose(c.steady_state, x0)
        # the realization itself is complex-balanced at x0
        assert toric_membership(c.target_graph, c.realized_rates).member
    mid = line.certificates[5]
    assert line.t[5] == pytest.approx(0.5)
    assert np.allclose(line.rates[5], 0.5 * (line.rates[0] + line.rates[-1]))
    assert mid.target_graph.is_subgraph_of(path.merged_graph)


def test_sampling_refinement_shrinks_steps(collinear, rng):
    _, G = collinear
    k_a, k_b = rng.uniform(0.5, 5, 4), rng.uniform(0.5, 5, 4)
    coarse = connect_members(G, k_a, k_b, samples=16)
    fine = connect_members(G, k_a, k_b, samples=64)
    for a, b in zip(coarse.segments, fine.segments):
        if a.max_step() > 1e-12:
            assert b.max_step() <= a.max_step() / 3


def test_path_is_deterministic(collinear):
    _, G = collinear
    k_a, k_b = np.array([1.0, 2.0, 3.0, 4.0]), np.array([4.0, 0.5, 0.25, 1.0])
    a = connect_members(G, k_a, k_b, samples=5).to_dict()
    b = connect_members(G, k_a, k_b, samples=5).to_dict()
    assert a == b
