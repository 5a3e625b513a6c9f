import math

import pytest

from substream import (build_g1, build_g2,
                       make_directed_cut, verify_preemption_counterexample,
                       verify_ratio_swap_counterexample, w_sequence,
                       w_sequence_closed_form, w_sequence_total)
from substream.counterexamples import brute_optimum_matches


def test_w_sequence_examples():
    assert w_sequence(1) == [2.0]
    assert w_sequence(2) == [2.0, 2.5]
    ws = w_sequence(3)
    assert abs(ws[1] - 7.0 / 3.0) <= 1e-12
    assert abs(ws[2] - 25.0 / 9.0) <= 1e-12
    assert abs(sum(ws) - 64.0 / 9.0) <= 1e-12


def test_w_sequence_closed_form_agrees():
    for rho in range(1, 65):
        rec = w_sequence(rho)
        closed = w_sequence_closed_form(rho)
        for a, b in zip(rec, closed):
            assert abs(a - b) <= 1e-9
        assert abs(sum(rec) - w_sequence_total(rho)) <= 1e-9


def test_w_sequence_values_bounded():
    for rho in (1, 2, 5, 16, 64):
        for w in w_sequence(rho):
            assert w <= 1.0 + math.e + 1e-9


def test_w_sequence_rejects_nonpositive_rho():
    with pytest.raises(ValueError):
        w_sequence(0)


def test_instance_topology():
    inst = build_g1(3, 0.5)
    assert inst.graph.n_vertices == 10
    assert inst.stream == tuple(range(1, 10))
    assert 0 not in inst.stream  # the sink never streams
    assert inst.early == (1, 2, 3)
    assert inst.planted_opt == (4, 5, 6)
    assert inst.late == (7, 8, 9)


def test_g1_marginal_schedule():
    rho, eps = 4, 0.25
    inst = build_g1(rho, eps)
    f = make_directed_cut(inst.graph)
    # first wave: unit marginal on arrival against any earlier prefix
    for i, u in enumerate(inst.early):
        prefix = set(inst.early[:i])
        assert abs(f.marginal(u, prefix) - 1.0) <= 1e-12
    # planted optimum: worth rho^2 alone, worthless next to the first wave
    assert abs(f.value(inst.planted_opt) - rho * rho) <= 1e-12
    for u in inst.planted_opt:
        assert abs(f.marginal(u, set(inst.early))) <= 1e-12
    # late wave: constant 2 + eps marginal against any early/late mixture
    mix = set(inst.early[:2]) | set(inst.late[:1])
    for u in inst.late[1:]:
        assert abs(f.marginal(u, mix) - (2 + eps)) <= 1e-12
    assert abs(f.value(inst.late) - (2 + eps) * rho) <= 1e-12


def test_g2_marginal_schedule():
    rho = 4
    inst = build_g2(rho)
    f = make_directed_cut(inst.graph)
    ws = w_sequence(rho)
    assert abs(f.value(inst.planted_opt) - rho * rho) <= 1e-12
    # swapping an optimum element for any first-wave element changes nothing
    early = set(inst.early)
    base = f.value(early)
    for u in inst.planted_opt:
        for v in inst.early:
            swapped = (early - {v}) | {u}
            assert abs(f.value(swapped) - base) <= 1e-12
    assert abs(f.value(inst.late) - sum(ws)) <= 1e-9


def test_verify_g1_reports():
    r = verify_preemption_counterexample(4, 0.01)
    assert r.holds
    assert abs(r.f_S - 8.04) <= 1e-9
    assert abs(r.f_opt - 16.0) <= 1e-9
    assert r.checks["opt_block_untouched"]
    payload = r.as_json()
    assert set(payload) == {"rho", "epsilon", "f_S", "f_opt", "f_union",
                            "bound", "holds"}


def test_verify_g1_single_element():
    r = verify_preemption_counterexample(1, 1.0)
    assert r.holds and abs(r.f_S - 3.0) <= 1e-9


def test_verify_g2_reports():
    r = verify_ratio_swap_counterexample(4)
    assert r.holds
    expected = 8 + 4 * (1.25 ** 4 - 2)
    assert abs(r.f_S - expected) <= 1e-9
    assert r.f_S <= math.e * 4 + 1e-9
    assert r.bound == pytest.approx(math.e / 4 * r.f_union)


def test_verify_g2_requires_rho_at_least_four():
    with pytest.raises(ValueError):
        verify_ratio_swap_counterexample(3)


def test_brute_force_confirms_planted_optimum():
    # needs rho >= 3: at rho = 2 the bait block value (2 + eps) * rho
    # edges out rho^2 and the planted block is not optimal
    for family in ("g1", "g2"):
        for rho in (3, 4, 5):
            assert brute_optimum_matches(family, rho)
