import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtschur.superdata import ParityData, cartan, node_parity
from qtschur.verify import (
    ConfigError,
    RunConfig,
    _expr_terms,
    _lb,
    _leaf,
    _mode_tuples,
    _SuiteContext,
    affine_instances,
    run_affine_suite,
    run_daha_suite,
    run_finite_suite,
    run_rotation_suite,
    run_suite,
    run_toroidal_suite,
    toroidal_instances,
)

PD31 = ParityData.standard(3, 1)


# mode tuple enumeration


def test_mode_tuple_counts():
    assert len(_mode_tuples(1, 2)) == 5
    assert len(_mode_tuples(2, 2)) == 13
    assert len(_mode_tuples(3, 2)) == 25
    assert len(_mode_tuples(4, 2)) == 41
    assert _mode_tuples(2, 0) == [(0, 0)]


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(0, 3))
def test_mode_tuples_exact(k, bound):
    tuples = _mode_tuples(k, bound)
    assert len(set(tuples)) == len(tuples)
    for t in tuples:
        assert sum(abs(v) for v in t) <= bound
    # enumeration is complete: count by brute force over the box
    import itertools

    box = [
        t
        for t in itertools.product(range(-bound, bound + 1), repeat=k)
        if sum(abs(v) for v in t) <= bound
    ]
    assert sorted(tuples) == sorted(box)


# deformed bracket expansion


def test_bracket_expansion_even_nodes():
    # lb{E1[0], lb{E1[1], E2[0]}} over the standard (3,1) parity:
    # inner pairing (a1|a2) = -1, outer pairing (a1|a1+a2) = 1
    A, B, C = ("E", 1, 0), ("E", 1, 1), ("E", 2, 0)
    expr = _lb(_leaf(*A), _lb(_leaf(*B), _leaf(*C)))
    terms, weight, parity = _expr_terms(PD31, expr)
    assert weight == {1: 2, 2: 1}
    assert parity == 0
    assert sorted(terms) == sorted(
        [
            ((A, B, C), 1, 0),
            ((A, C, B), -1, 1),
            ((B, C, A), -1, -1),
            ((C, B, A), 1, 0),
        ]
    )


def test_bracket_expansion_super_sign():
    # nodes 3 and 0 are both odd for (3,1), so the flip sign is -1 and
    # the cyclic pairing (a3|a0) = -s_4 = 1
    X, Y = ("E", 3, 0), ("E", 0, 0)
    expr = _lb(_leaf(*X), _leaf(*Y))
    terms, _, parity = _expr_terms(PD31, expr)
    assert parity == 0
    assert sorted(terms) == sorted([((X, Y), 1, 0), ((Y, X), 1, -1)])


def test_bracket_weight_lowering():
    terms, weight, _ = _expr_terms(PD31, _lb(_leaf("F", 1, 0), _leaf("F", 2, 0)))
    assert weight == {1: -1, 2: -1}
    assert len(terms) == 2


# instance enumeration


def test_toroidal_instances_cover_all_relations():
    inst = toroidal_instances(PD31, 1)
    relations = {rel for rel, _, _, _ in inst}
    assert relations == {
        "CK",
        "KK1",
        "KK2",
        "KE",
        "KF",
        "EF",
        "EEFF-zero",
        "EE-quadratic",
        "FF-quadratic",
        "Serre1",
        "Serre2",
        "Serre3",
        "Serre4",
        "Serre5",
        "Serre6",
        "weights",
        "K-chain",
    }
    assert sum(1 for rel, _, _, _ in inst if rel == "Serre5") == 1
    assert sum(1 for rel, _, _, _ in inst if rel == "Serre6") == 1
    for rel, nodes, modes, form in inst:
        assert all(abs(r) <= 2 for r in modes)
        if rel == "EEFF-zero":
            assert cartan(PD31, *nodes) == 0
        if rel in ("EE-quadratic", "FF-quadratic"):
            assert cartan(PD31, *nodes) != 0
        if rel == "KK1" and form == "+":
            assert all(r >= 0 for r in modes)
        if rel == "KK1" and form == "-":
            assert all(r <= 0 for r in modes)
        if rel == "KK2":
            assert modes[0] <= 0 <= modes[1]
        if rel in ("Serre1", "Serre2"):
            assert node_parity(PD31, nodes[0]) == 0
        if rel in ("Serre3", "Serre4"):
            assert node_parity(PD31, nodes[0]) == 1


def test_affine_instances_both_variants():
    inst = affine_instances(PD31)
    variants = {form for _, _, _, form in inst}
    assert variants == {"affine", "vertical"}
    per = {v: sum(1 for _, _, _, f in inst if f == v) for v in variants}
    assert per["affine"] == per["vertical"]
    chains = [form for rel, _, _, form in inst if rel == "t-chain"]
    assert sorted(chains) == ["affine", "vertical"]


# suite smoke runs (small parameters, symbolic and numeric agree)


def test_daha_suite_passes_and_is_seeded():
    cfg = RunConfig(ell=1, mode="both", seed=3)
    rep = run_daha_suite(cfg)
    assert rep.ok()
    assert rep.params == {
        "m": 3,
        "n": 1,
        "ell": 1,
        "R": 2,
        "parity": "+++-",
        "mode": "both",
    }
    names = [row["vector"] for row in rep.results]
    assert any(name.startswith("rand0:") for name in names)
    again = run_daha_suite(cfg)
    assert rep.to_json() == again.to_json()
    other = run_daha_suite(RunConfig(ell=1, mode="both", seed=4))
    assert [r["vector"] for r in other.results] != names


def test_daha_suite_contains_twist_row():
    rep = run_daha_suite(RunConfig(ell=1, mode="symbolic"))
    relations = {row["relation"] for row in rep.results}
    assert "Q Y_l Q^-1 = zeta Y1" in relations
    assert "w Q Y_l Q^-1 = zeta w Y1" in relations


def test_finite_suite_passes():
    rep = run_finite_suite(RunConfig(m=2, n=2, ell=2, mode="both"))
    assert rep.ok()
    for row in rep.results:
        assert row["numeric"] == "pass"
        assert row["symbolic"] == "pass"


def test_rotation_suite_families():
    rep = run_rotation_suite(RunConfig(ell=1, modes=1, mode="symbolic"))
    assert rep.ok()
    relations = {row["relation"] for row in rep.results}
    assert {"rot-E", "rot-F", "rot-K+", "rot-K-"} <= relations
    assert {"wrap-E", "wrap-F-as-F", "wrap-K+", "wrap-K-"} <= relations


def test_rotation_suite_balance_cases_need_two_slots():
    # exchange balance compares adjacent slots, so it only appears
    # from two tensor factors on
    rep = run_rotation_suite(RunConfig(ell=2, modes=0, mode="symbolic"))
    assert rep.ok()
    relations = {row["relation"] for row in rep.results}
    assert {
        "psi-balance-plain-plain",
        "psi-balance-plain-wrap",
        "psi-balance-wrap-plain",
        "psi-balance-wrap-wrap",
    } <= relations


def test_toroidal_suite_small():
    rep = run_toroidal_suite(RunConfig(ell=1, modes=0, mode="both"))
    summary = rep.summary()
    assert summary["fail"] == 0
    assert summary["excluded"] == 2
    for row in rep.results:
        assert set(row) >= {"relation", "nodes", "modes", "vector", "status"}
        if row["status"] == "excluded":
            assert row["relation"] in ("Serre5", "Serre6")
    payload = json.loads(rep.to_json())
    assert set(payload) == {"suite", "params", "results", "summary"}
    assert set(payload["params"]) == {"m", "n", "ell", "R", "parity", "mode"}


def test_affine_suite_small():
    rep = run_affine_suite(RunConfig(ell=1, mode="symbolic"))
    assert rep.ok()
    assert {row["form"] for row in rep.results} == {"affine", "vertical"}


def test_jobs_do_not_change_report():
    base = run_toroidal_suite(RunConfig(ell=1, modes=0, mode="symbolic", jobs=1))
    split = run_toroidal_suite(RunConfig(ell=1, modes=0, mode="symbolic", jobs=2))
    assert base.to_json() == split.to_json()


def test_run_suite_dispatch():
    with pytest.raises(ConfigError):
        run_suite("nope", RunConfig())


# gating mechanics: a numeric failure suppresses the symbolic pass


def test_numeric_failure_gates_symbolic(monkeypatch):
    ctx = _SuiteContext("toroidal", RunConfig(ell=1, modes=0, mode="both"))
    idx = next(
        i for i, inst in enumerate(ctx.instances) if inst[0] == "EF"
    )

    def broken_diff(space, pd, relation, nodes, modes, form, u):
        return u

    monkeypatch.setattr(ctx, "diff", broken_diff)
    rows = ctx.rows_for(idx)
    assert rows
    for row in rows:
        assert row["status"] == "fail"
        assert row["numeric"] == "fail"
        assert row["symbolic"] == "skipped"
        assert row["residual"]


# configuration validation


def test_validate_rejects_bad_input():
    with pytest.raises(ConfigError, match="κ ≥ 4 required"):
        RunConfig(m=2, n=1).validate("toroidal")
    with pytest.raises(ConfigError, match="m = n"):
        RunConfig(m=2, n=2).validate("daha")
    with pytest.raises(ConfigError):
        RunConfig(ell=0).validate("daha")
    with pytest.raises(ConfigError):
        RunConfig(mode="fast").validate("daha")
    with pytest.raises(ConfigError):
        RunConfig(parity="++*-").validate("toroidal")
    with pytest.raises(ConfigError):
        RunConfig(parity="++++").validate("toroidal")
    with pytest.raises(ConfigError):
        RunConfig(ell=1).validate("finite")
    with pytest.raises(ConfigError):
        RunConfig(q0="0").validate("toroidal")
    with pytest.raises(ConfigError):
        RunConfig(q0="x").validate("toroidal")


def test_validate_warns_outside_equivalence_regime():
    assert RunConfig(m=3, n=1, ell=1).validate("toroidal") == []
    warnings = RunConfig(m=3, n=1, ell=2).validate("toroidal")
    assert len(warnings) == 1 and "equivalence" in warnings[0]


def test_parity_word_round_trip():
    cfg = RunConfig(m=2, n=2, parity="+-+-")
    assert cfg.parity_data().to_string() == "+-+-"
