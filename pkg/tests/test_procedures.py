from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from twodist.coloring import list_color, verify_coloring
from twodist.gadgets import GADGET_IDS, build_gadget
from twodist.procedures import (
    BRANCHES,
    ProcedureFailure,
    cross_check_procedure,
    extend_procedure,
    planted_assignment,
)


def test_a_equal_lists_colors_u3_first():
    res = extend_procedure("a", {"u1": [1, 2], "u2": [1, 2], "u3": [1, 2, 3], "u4": [1, 3]})
    col = res.by_label()
    assert col["u3"] == 3
    assert res.trace[1] == "a: color u3 = 3"
    assert [ln.split()[2] for ln in res.trace[1:]] == ["u3", "u4", "u2", "u1"]
    assert verify_coloring(build_gadget("a").constraints, res.coloring) is None


def test_a_different_lists_takes_early_exit():
    res = extend_procedure("a", {"u1": [1, 2], "u2": [2, 3], "u3": [2, 3, 4], "u4": [4, 5]})
    assert res.branch == "L(u1)=L(u2)"  # the claim failed
    assert "claim L(u1)=L(u2): fails" in res.trace[0]
    assert res.by_label()["u2"] == 3


def test_extra_colors_are_trimmed_from_the_top():
    res = extend_procedure("a", {"u1": [1, 2, 9], "u2": [1, 2, 8], "u3": [1, 2, 3, 7], "u4": [1, 3]})
    assert res.by_label()["u3"] == 3
    assert max(res.coloring) <= 3


def test_short_list_is_a_structured_failure():
    with pytest.raises(ProcedureFailure) as err:
        extend_procedure("a", {"u1": [1], "u2": [1, 2], "u3": [1, 2, 3], "u4": [1, 3]})
    assert err.value.gid == "a"


@pytest.mark.parametrize("gid", GADGET_IDS)
def test_disjoint_lists(gid):
    gad = build_gadget(gid)
    lists, nxt = [], 0
    for s in gad.profile:
        lists.append(list(range(nxt, nxt + s)))
        nxt += s
    res = extend_procedure(gid, lists)
    assert verify_coloring(gad.constraints, res.coloring) is None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(GADGET_IDS), st.integers(0, 10**9))
def test_procedure_output_is_valid_and_list_respecting(gid, seed):
    gad = build_gadget(gid)
    lists = planted_assignment(random.Random(seed), gad.profile)
    res = extend_procedure(gid, lists)
    assert verify_coloring(gad.constraints, res.coloring) is None
    assert all(c in lst for c, lst in zip(res.coloring, lists))
    assert res.branch in BRANCHES[gid]


@pytest.mark.parametrize("gid, trials", [("a", 1000), ("e", 1000), ("j", 200)])
def test_cross_check_examples(gid, trials):
    rep = cross_check_procedure(gid, trials=trials, seed=7)
    assert rep.ok and rep.valid == trials


def test_cross_check_agrees_with_solver():
    rep = cross_check_procedure("h", trials=300, seed=1)
    assert rep.ok
    assert sum(rep.coverage.values()) == 300
    assert "RESULT: PASS" in rep.render()


def test_planted_lists_meet_profile():
    rng = random.Random(3)
    for gid in GADGET_IDS:
        gad = build_gadget(gid)
        for _ in range(50):
            lists = planted_assignment(rng, gad.profile)
            assert [len(set(x)) for x in lists] == list(gad.profile)
            assert list_color(gad.constraints, lists) is not None
