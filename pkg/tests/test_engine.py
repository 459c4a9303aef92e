"""Engine behavior: propagation fixpoint, search, trail, determinism."""

from __future__ import annotations

import random

import pytest

from helpers import snapshot, solutions_within, tighten_randomly
from tdsolve.engine import Solver, Status, Strategy
from tdsolve.propagators import (
    AtLeastOne,
    CardinalityAtMost,
    FixValue,
    ForbidValue,
    LexLeq,
    UnionEquals,
)


def test_forbid_fixes_remaining_value():
    s = Solver()
    x = s.int_var(1, 2)
    s.post(ForbidValue(x, 1))
    assert s.propagate()
    assert x.value() == 2


def test_cardinality_zero_with_required_element_fails():
    s = Solver()
    x = s.set_var(1)
    x.require_mask(0b1)
    s.post(CardinalityAtMost(x, 0))
    assert not s.propagate()


def test_no_constraints_zero_propagations():
    s = Solver()
    s.int_var(0, 3)
    assert s.propagate()
    assert s.propagations == 0


def test_search_single_free_variable():
    s = Solver()
    s.int_var(0, 1)
    report = s.solve()
    assert report.status is Status.SAT
    assert report.decisions <= 1


def test_search_wipeout_is_unsat():
    s = Solver()
    x = s.int_var(0, 1)
    s.post(ForbidValue(x, 0))
    s.post(ForbidValue(x, 1))
    report = s.solve()
    assert report.status is Status.UNSAT


def test_search_fixes_set_vars_through_fallback():
    s = Solver()
    x = s.set_var(3)
    s.post(UnionEquals([x], 0b111))
    report = s.solve()
    assert report.status is Status.SAT
    assert report.witness[x] == frozenset({0, 1, 2})


def test_witness_satisfies_all_constraints():
    s = Solver()
    a = s.int_var(0, 1)
    b = s.int_var(0, 1)
    c = s.int_var(0, 1)
    s.post(AtLeastOne([a, b, c]))
    s.post(ForbidValue(a, 1))
    report = s.solve()
    assert report.status is Status.SAT
    assert s.check_witness(report.witness)


def test_value_order_descending():
    s = Solver()
    x = s.int_var(0, 5)
    report = s.solve(strategy=Strategy(value="descending"))
    assert report.witness[x] == 5


def test_input_order_variable_selection():
    s = Solver()
    x = s.int_var(0, 5)
    y = s.int_var(0, 1)
    report = s.solve(strategy=Strategy(variable="input_order"))
    assert report.status is Status.SAT
    # x branched first despite its larger domain
    assert report.witness[x] == 0


def test_min_domain_ties_break_by_position():
    # y before x in the decision list: branching y=1 leaves x open (two
    # decisions); picking x first would fix y by propagation (one).
    s = Solver()
    x = s.int_var(0, 1)
    y = s.int_var(0, 1)
    s.post(LexLeq([x], [y]))
    report = s.solve(decision_vars=[y, x], strategy=Strategy(value="descending"))
    assert report.status is Status.SAT
    assert report.witness[x] == 1 and report.witness[y] == 1
    assert report.decisions == 2


def test_decision_limit_returns_indeterminate():
    s = Solver()
    for _ in range(8):
        s.int_var(0, 1)
    report = s.solve(decision_limit=0)
    assert report.status is Status.INDETERMINATE


def test_fixpoint_idempotent():
    s = Solver()
    xs = [s.set_var(3) for _ in range(2)]
    s.post(UnionEquals(xs, 0b111))
    s.post(CardinalityAtMost(xs[0], 1))
    assert s.propagate()
    before = snapshot(s)
    for prop in s.propagators:
        s._schedule(prop)
    assert s.propagate()
    assert snapshot(s) == before


def _random_micro_model(rng):
    s = Solver()
    ints = [s.int_var(0, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    sets = [s.set_var(rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
    tighten_randomly(s, rng)
    bits = [v for v in ints if v.mask & ~0b11 == 0]
    if len(bits) >= 2 and rng.random() < 0.7:
        s.post(AtLeastOne(bits))
    if rng.random() < 0.7:
        s.post(CardinalityAtMost(sets[0], rng.randint(0, 2)))
    if len(sets) >= 2 and rng.random() < 0.5:
        s.post(UnionEquals(sets, sets[0].possible | sets[1].possible))
    if rng.random() < 0.5:
        s.post(ForbidValue(ints[0], rng.randint(0, 3)))
    if rng.random() < 0.3:
        s.post(FixValue(ints[-1], rng.randint(0, 3)))
    return s


def test_search_complete_against_enumeration():
    rng = random.Random(4242)
    for _ in range(150):
        s = _random_micro_model(rng)
        ints, sets = snapshot(s)
        expected = bool(solutions_within(s, ints, sets))
        report = s.solve()
        assert (report.status is Status.SAT) == expected
        if report.status is Status.SAT:
            assert s.check_witness(report.witness)


def test_trail_restores_bounds_exactly():
    rng = random.Random(99)
    for _ in range(300):
        s = _random_micro_model(rng)
        if not s.propagate():
            continue
        marks = [s._mark()]
        states = [snapshot(s)]
        for _ in range(rng.randint(1, 6)):
            choice = rng.random()
            unfixed_ints = [v for v in s.int_vars if not v.is_fixed()]
            open_sets = [v for v in s.set_vars if v.undecided()]
            if choice < 0.5 and unfixed_ints:
                var = rng.choice(unfixed_ints)
                var.assign(rng.choice(var.domain()))
            elif open_sets:
                svar = rng.choice(open_sets)
                undecided = svar.undecided()
                elems = [i for i in range(undecided.bit_length()) if undecided >> i & 1]
                e = rng.choice(elems)
                if rng.random() < 0.5:
                    svar.include(e)
                else:
                    svar.exclude(e)
            else:
                break
            s.propagate()
            marks.append(s._mark())
            states.append(snapshot(s))
        # unwind to a random prefix and compare
        back_to = rng.randrange(len(marks))
        s._undo_to(marks[back_to])
        assert snapshot(s) == states[back_to]
        s._undo_to(marks[0])
        assert snapshot(s) == states[0]


def test_deterministic_statistics():
    def run():
        s = Solver()
        xs = [s.set_var(4) for _ in range(3)]
        s.post(UnionEquals(xs, 0b1111))
        for x in xs:
            s.post(CardinalityAtMost(x, 2))
        report = s.solve()
        return report.status, report.decisions, report.propagations, report.fails

    assert run() == run()


def test_bad_domain_rejected():
    s = Solver()
    with pytest.raises(ValueError):
        s.int_var(2, 1)
    with pytest.raises(ValueError):
        s.int_var(-1, 1)
    with pytest.raises(ValueError):
        s.set_var(-2)
