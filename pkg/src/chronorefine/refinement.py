"""Instant refinement between two levels of observation on one universe.

``check_refinement(concrete, abstract)`` decides whether the concrete
(lower) level refines the abstract (higher) one.  The four predicates, for
every pair of instants ``(i, j)``:

* precedence abstraction:  i <c j  implies  i <a j  or  i ≈a j
* precedence embodiment:   i <a j  implies  i <c j
* coincidence abstraction: i ≈c j  implies  i ≈a j
* coincidence embodiment:  i ≈a j  implies  i ≈c j  or  i <c j  or  j <c i
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .order import (
    InvalidStructureError,
    NotClosedError,
    Pair,
    TimeStructure,
    UniverseMismatchError,
    _lowest,
    enumerate_structures,
    is_valid,
)


class Predicate(Enum):
    PRECEDENCE_ABSTRACTION = "precedence-abstraction"
    PRECEDENCE_EMBODIMENT = "precedence-embodiment"
    COINCIDENCE_ABSTRACTION = "coincidence-abstraction"
    COINCIDENCE_EMBODIMENT = "coincidence-embodiment"


@dataclass(frozen=True)
class PredicateResult:
    predicate: Predicate
    holds: bool
    witness: Pair | None = None


@dataclass(frozen=True)
class RefinementReport:
    results: tuple[PredicateResult, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, predicate: Predicate) -> PredicateResult:
        for r in self.results:
            if r.predicate is predicate:
                return r
        raise KeyError(predicate)

    @property
    def failures(self) -> list[PredicateResult]:
        return [r for r in self.results if not r.holds]


def _require_pair(s1: TimeStructure, s2: TimeStructure) -> None:
    for s in (s1, s2):
        if not s.closed:
            raise NotClosedError("refinement is decided on closed structures")
        if not is_valid(s):
            raise InvalidStructureError("structure breaches irreflexivity toward coincidence")
    if s1.size != s2.size:
        raise UniverseMismatchError(
            f"structures live on different universes ({s1.size} vs {s2.size})"
        )


def evaluate_predicate(
    predicate: Predicate, concrete: TimeStructure, abstract: TimeStructure, i: int, j: int
) -> bool:
    """Evaluate one refinement predicate on a single pair, literally."""
    pc, ca = concrete.precedence, abstract.coincidence
    cc, pa = concrete.coincidence, abstract.precedence
    if predicate is Predicate.PRECEDENCE_ABSTRACTION:
        return (i, j) not in pc or (i, j) in pa or (i, j) in ca
    if predicate is Predicate.PRECEDENCE_EMBODIMENT:
        return (i, j) not in pa or (i, j) in pc
    if predicate is Predicate.COINCIDENCE_ABSTRACTION:
        return (i, j) not in cc or (i, j) in ca
    return (i, j) not in ca or (i, j) in cc or (i, j) in pc or (j, i) in pc


def _least_violation(premise: tuple[int, ...], allowed: tuple[int, ...]) -> Pair | None:
    for i, (p, a) in enumerate(zip(premise, allowed)):
        bad = p & ~a
        if bad:
            return (i, _lowest(bad))
    return None


def check_refinement(concrete: TimeStructure, abstract: TimeStructure) -> RefinementReport:
    """Evaluate all four predicates; each failure carries its least witness pair."""
    _require_pair(concrete, abstract)
    cc, pc = concrete.coincidence.rows, concrete.precedence.rows
    pc_t = concrete.precedence.transpose.rows
    ca, pa = abstract.coincidence.rows, abstract.precedence.rows

    checks = [
        (Predicate.PRECEDENCE_ABSTRACTION, pc, tuple(p | c for p, c in zip(pa, ca))),
        (Predicate.PRECEDENCE_EMBODIMENT, pa, pc),
        (Predicate.COINCIDENCE_ABSTRACTION, cc, ca),
        (
            Predicate.COINCIDENCE_EMBODIMENT,
            ca,
            tuple(c | p | q for c, p, q in zip(cc, pc, pc_t)),
        ),
    ]
    results = []
    for predicate, premise, allowed in checks:
        w = _least_violation(premise, allowed)
        results.append(PredicateResult(predicate, w is None, w))
    return RefinementReport(tuple(results))


def refines(concrete: TimeStructure, abstract: TimeStructure) -> bool:
    return check_refinement(concrete, abstract).holds


class Inclusion(Enum):
    """The four inclusions making up extensional equality of two structures."""

    COINCIDENCE_FORWARD = "coincidence-first-in-second"
    COINCIDENCE_BACKWARD = "coincidence-second-in-first"
    PRECEDENCE_FORWARD = "precedence-first-in-second"
    PRECEDENCE_BACKWARD = "precedence-second-in-first"


@dataclass(frozen=True)
class EquivalenceReport:
    holds: bool
    witness: tuple[Inclusion, Pair] | None = None


def check_equivalence(s1: TimeStructure, s2: TimeStructure) -> EquivalenceReport:
    _require_pair(s1, s2)
    checks = [
        (Inclusion.COINCIDENCE_FORWARD, s1.coincidence.rows, s2.coincidence.rows),
        (Inclusion.COINCIDENCE_BACKWARD, s2.coincidence.rows, s1.coincidence.rows),
        (Inclusion.PRECEDENCE_FORWARD, s1.precedence.rows, s2.precedence.rows),
        (Inclusion.PRECEDENCE_BACKWARD, s2.precedence.rows, s1.precedence.rows),
    ]
    for inclusion, sub, sup in checks:
        w = _least_violation(sub, sup)
        if w is not None:
            return EquivalenceReport(False, (inclusion, w))
    return EquivalenceReport(True)


class Law(Enum):
    REFLEXIVITY = "reflexivity"
    TRANSITIVITY = "transitivity"
    ANTISYMMETRY = "antisymmetry"


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of checking one algebraic law over every enumerated structure.

    ``instances_checked`` counts the tuples on which the law's conclusion
    was actually evaluated, i.e. whose hypotheses held.
    """

    law: Law
    n: int
    instances_checked: int
    counterexample: tuple[TimeStructure, ...] | None = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


ALGEBRA_LIMIT = 3


def verify_algebra(n: int, law: Law | str) -> PropertyReport:
    """Check a law of the refinement relation over all structures on ``n`` instants."""
    law = Law(law)
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= ALGEBRA_LIMIT:
        raise ValueError(f"algebra oracle is guarded to 1 <= n <= {ALGEBRA_LIMIT}, got {n!r}")
    structs = list(enumerate_structures(n))

    if law is Law.REFLEXIVITY:
        for s in structs:
            if not refines(s, s):
                return PropertyReport(law, n, structs.index(s) + 1, (s,))
        return PropertyReport(law, n, len(structs))

    table = [[refines(a, b) for b in structs] for a in structs]
    count = 0
    if law is Law.TRANSITIVITY:
        for a, b, c in itertools.product(range(len(structs)), repeat=3):
            if table[a][b] and table[b][c]:
                count += 1
                if not refines(structs[a], structs[c]):
                    return PropertyReport(law, n, count, (structs[a], structs[b], structs[c]))
        return PropertyReport(law, n, count)

    for a, b in itertools.product(range(len(structs)), repeat=2):
        if table[a][b] and table[b][a]:
            count += 1
            if not check_equivalence(structs[a], structs[b]).holds:
                return PropertyReport(law, n, count, (structs[a], structs[b]))
    return PropertyReport(law, n, count)
