import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chronorefine.clocks import (
    Clock,
    InvalidClockError,
    PreservationStatus,
    RefinementPreconditionError,
    check_clock_refinement,
    check_subclock,
    check_subclock_preservation,
    check_union,
    check_union_preservation,
    clock_refines,
    valid_clocks,
    validate_clock,
)
from chronorefine.mod5 import abstract_generators, concrete_generators
from chronorefine.order import InstantRangeError, structure
from chronorefine.refinement import refines
from chronorefine.search import (
    Lemma,
    SearchReport,
    exhaustive_preservation,
    random_preservation,
    random_refinement_pair,
    random_subclock_instance,
    random_union_instance,
)


@pytest.fixture(scope="module")
def mod5():
    conc = structure(15, *concrete_generators(3))
    abs_ = structure(15, *abstract_generators(3))
    return conc, abs_


def test_clock_normalizes_ticks():
    c = Clock("c", [3, 1, 3])
    assert c.ticks == frozenset({1, 3}) and len(c) == 2
    assert c.sorted_ticks() == [1, 3]
    assert c.mask == 0b1010
    with pytest.raises(ValueError):
        Clock("c", [-1])


def test_validate_clock():
    s = structure(4, coincide=[(2, 3)], precede=[(0, 1), (1, 2)])
    assert validate_clock(s, Clock("c", [0, 1, 2])).holds
    assert validate_clock(s, Clock("c", [])).holds
    assert validate_clock(s, Clock("c", [3])).holds
    # coincident distinct ticks are not strictly ordered
    v = validate_clock(s, Clock("c", [0, 2, 3]))
    assert (v.holds, v.witness, v.clause) == (False, 2, "total")
    with pytest.raises(InstantRangeError):
        validate_clock(s, Clock("c", [4]))


def test_validate_clock_independent_ticks():
    s = structure(3, precede=[(0, 1)])
    assert validate_clock(s, Clock("c", [1, 2])).witness == 1


def test_subclock_examples(mod5):
    conc, _ = mod5
    c1 = Clock("c1", [1, 6, 11])
    c2 = Clock("c2", [0, 5, 10])
    assert check_subclock(conc, c1, c2).holds
    assert check_subclock(conc, c2, c1).holds
    v = check_subclock(conc, Clock("c3", [2, 7]), c2)
    assert (v.holds, v.witness, v.clause) == (False, 2, "subclock")
    with pytest.raises(InvalidClockError):
        check_subclock(conc, Clock("bad", [0, 1]), c2)


def test_subclock_is_reflexive_and_transitive():
    s = structure(3, coincide=[(0, 1)], precede=[(0, 2)])
    clocks = valid_clocks(s)
    for a in clocks:
        assert check_subclock(s, a, a).holds
    for a, b, c in itertools.product(clocks, repeat=3):
        if check_subclock(s, a, b).holds and check_subclock(s, b, c).holds:
            assert check_subclock(s, a, c).holds


def test_union_examples():
    chain = structure(3, precede=[(0, 1), (1, 2)])
    c1, c2 = Clock("c1", [0]), Clock("c2", [1])
    assert check_union(chain, Clock("c", [0, 1]), c1, c2).holds
    v = check_union(chain, Clock("c", [0, 1, 2]), c1, c2)
    assert (v.holds, v.witness, v.clause) == (False, 2, "union-covered")
    v = check_union(chain, Clock("c", [0]), c1, c2)
    assert (v.witness, v.clause) == (1, "operands-covered")


def test_union_up_to_coincidence():
    s = structure(4, coincide=[(0, 2), (1, 3)], precede=[(0, 1)])
    c1 = Clock("c1", [0, 1])
    assert check_union(s, Clock("c", [2, 3]), c1, c1).holds


def test_union_is_commutative():
    for s in [structure(3, precede=[(0, 1)]), structure(3, coincide=[(1, 2)], precede=[(0, 1)])]:
        clocks = valid_clocks(s)
        for c, a, b in itertools.product(clocks, repeat=3):
            assert check_union(s, c, a, b) == check_union(s, c, b, a)


def test_clock_refinement_on_mod5(mod5):
    conc, abs_ = mod5
    assert check_clock_refinement(conc, abs_, Clock("x", [1, 6, 11]), Clock("y", [0, 5, 10])).holds
    # a concrete tick in a group with no abstract tick
    v = check_clock_refinement(conc, abs_, Clock("x", [1, 6, 11]), Clock("y", [0, 5]))
    assert (v.holds, v.witness, v.clause) == (False, 11, "concrete-covered")
    v = check_clock_refinement(conc, abs_, Clock("x", [1]), Clock("y", [0, 5]))
    assert (v.witness, v.clause) == (5, "abstract-covered")


def test_clock_refinement_needs_refining_structures(mod5):
    conc, abs_ = mod5
    with pytest.raises(RefinementPreconditionError):
        check_clock_refinement(abs_, conc, Clock("x", [0]), Clock("y", [0]))
    # the bare covering check has no such precondition
    assert clock_refines(abs_, conc, Clock("x", [0]), Clock("y", [0])).holds


def test_subclock_preservation_on_mod5(mod5):
    conc, abs_ = mod5
    c1 = Clock("c1", [1, 6, 11])
    c2 = Clock("c2", [1, 2, 6, 7, 11, 12])
    c0 = Clock("c0", [0, 5, 10])
    assert validate_clock(conc, c2).holds
    v = check_subclock_preservation(conc, abs_, c1, c2, c0, c0)
    assert v.status is PreservationStatus.SATISFIED
    v = check_subclock_preservation(conc, abs_, c1, Clock("c2", [0, 5, 10]), c0, c0)
    assert v.status is PreservationStatus.SATISFIED
    # on the abstract level a whole group is one instant, so no chain spans it twice
    with pytest.raises(InvalidClockError):
        check_subclock_preservation(conc, abs_, c1, c2, c0, Clock("c22", [0, 1]))


def test_subclock_preservation_vacuous_reports_first_failed_hypothesis(mod5):
    conc, abs_ = mod5
    c1 = Clock("c1", [2, 7])
    c2 = Clock("c2", [0, 5, 10])
    c11 = Clock("c11", [0, 5])
    v = check_subclock_preservation(conc, abs_, c1, c2, c11, Clock("c22", [0, 5, 10]))
    assert v.status is PreservationStatus.VACUOUS
    assert v.failed_hypothesis == "subclock"
    v = check_subclock_preservation(abs_, conc, c2, c2, c11, c11)
    assert v.failed_hypothesis == "refines"


def test_union_preservation_on_mod5(mod5):
    conc, abs_ = mod5
    c1 = Clock("c1", [1, 6, 11])
    c2 = Clock("c2", [2, 7, 12])
    c0 = Clock("c0", [0, 2, 5, 7, 10, 12])
    c = Clock("c", [0, 5, 10])
    v = check_union_preservation(conc, abs_, c0, c1, c2, c)
    assert v.status is PreservationStatus.SATISFIED
    v = check_union_preservation(conc, abs_, Clock("c0", [0, 5, 10]), c1, c2, c)
    assert (v.status, v.failed_hypothesis) == (PreservationStatus.VACUOUS, "union")


# --- search harness -------------------------------------------------------------


def test_exhaustive_small_counts():
    for lemma in Lemma:
        report = exhaustive_preservation(lemma, 2)
        assert report.holds and report.violated == 0
        assert report.instances == sum(report.outcomes.values())
        assert report.outcomes[PreservationStatus.SATISFIED] > 0


def test_exhaustive_guard():
    with pytest.raises(ValueError):
        exhaustive_preservation(Lemma.UNION, 4)
    with pytest.raises(ValueError):
        exhaustive_preservation("associativity", 2)


def test_random_pairs_always_refine():
    rng = random.Random(7)
    for n in (1, 2, 5, 8):
        for _ in range(200):
            assert refines(*random_refinement_pair(rng, n))


@given(st.integers(0, 2**32), st.integers(1, 8))
def test_random_instances_use_valid_clocks(seed, n):
    rng = random.Random(seed)
    for make in (random_subclock_instance, random_union_instance):
        conc, abs_, clocks = make(rng, n)
        levels = (conc, conc, abs_, abs_) if make is random_subclock_instance else (conc, conc, conc, abs_)
        for s, c in zip(levels, clocks):
            assert validate_clock(s, c).holds


def test_guided_instances_reach_satisfied_verdicts():
    for lemma in Lemma:
        report = random_preservation(lemma, 400, n=6, seed=3)
        assert report.holds
        assert report.outcomes[PreservationStatus.SATISFIED] > 50


def test_random_search_is_deterministic_per_seed():
    a = random_preservation(Lemma.UNION, 200, seed=11)
    b = random_preservation(Lemma.UNION, 200, seed=11)
    assert a.outcomes == b.outcomes


def test_harness_finds_counterexample_to_a_false_lemma(monkeypatch):
    import chronorefine.search as search

    # false claim: whenever the lemma's conclusion holds, the reverse subclocking does too
    def run(lemma, conc, abs_, clocks):
        v = search.check_subclock_preservation(conc, abs_, *clocks)
        if v.status is not PreservationStatus.SATISFIED:
            return v
        c1, c2, c11, c22 = clocks
        flipped = check_subclock(abs_, c22, c11)
        return search.PreservationVerdict(
            PreservationStatus.SATISFIED if flipped.holds else PreservationStatus.VIOLATED,
            flipped,
        )

    monkeypatch.setattr(search, "_run", run)
    report = exhaustive_preservation(Lemma.SUBCLOCK, 2)
    assert not report.holds and report.violated == 1
    conc, abs_, c1, c2, c11, c22 = report.counterexample
    assert check_subclock(abs_, c11, c22).holds
    assert not check_subclock(abs_, c22, c11).holds
    report = random_preservation(Lemma.SUBCLOCK, 500, n=5, seed=1)
    assert not report.holds


def test_search_report_keeps_first_counterexample():
    from chronorefine.clocks import PreservationVerdict

    r = SearchReport(Lemma.UNION, "random", 3)
    bad = PreservationVerdict(PreservationStatus.VIOLATED)
    assert r.record(bad, ("first",))
    assert not r.record(bad, ("second",))
    assert r.counterexample == ("first",) and r.violated == 2
