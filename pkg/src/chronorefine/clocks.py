"""CCSL-style clocks over a time structure.

A clock is a named set of ticks (instants); on its structure the ticks must
form one timeline, i.e. distinct ticks are strictly ordered by precedence.
Only the operators needed to talk about refinement are provided: subclocking,
union and clock refinement, plus instance-level preservation checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .order import (
    TimeStructure,
    UniverseMismatchError,
    _bits,
    _check_range,
    _closed,
)
from .refinement import check_refinement


class ClockError(ValueError):
    pass


class InvalidClockError(ClockError):
    pass


class RefinementPreconditionError(ClockError):
    """Clock refinement was asked for on structures that do not refine."""


@dataclass(frozen=True)
class Clock:
    name: str
    ticks: frozenset[int]

    def __init__(self, name: str, ticks: Iterable[int] = ()):
        object.__setattr__(self, "name", name)
        ticks = frozenset(int(t) for t in ticks)
        if any(t < 0 for t in ticks):
            raise ValueError("tick ids are non-negative")
        object.__setattr__(self, "ticks", ticks)

    @property
    def mask(self) -> int:
        m = 0
        for t in self.ticks:
            m |= 1 << t
        return m

    def __len__(self) -> int:
        return len(self.ticks)

    def sorted_ticks(self) -> list[int]:
        return sorted(self.ticks)


@dataclass(frozen=True)
class ConstraintVerdict:
    """``witness`` is the tick lacking a partner; ``clause`` names the failing conjunct."""

    holds: bool
    witness: int | None = None
    clause: str | None = None


_OK = ConstraintVerdict(True)


def _in_range(s: TimeStructure, c: Clock) -> None:
    _check_range(s.size, *c.ticks)


def validate_clock(s: TimeStructure, c: Clock) -> ConstraintVerdict:
    """Every two distinct ticks must be strictly ordered."""
    _closed(s)
    _in_range(s, c)
    prec, prec_t = s.precedence.rows, s.precedence.transpose.rows
    mask = c.mask
    for x in c.sorted_ticks():
        others = mask & ~(1 << x)
        if others & ~(prec[x] | prec_t[x]):
            return ConstraintVerdict(False, x, "total")
    return _OK


def _require_valid(s: TimeStructure, *clocks: Clock) -> None:
    for c in clocks:
        v = validate_clock(s, c)
        if not v.holds:
            raise InvalidClockError(f"clock {c.name!r}: tick {v.witness} is not totally ordered")


def _uncovered(coin: tuple[int, ...], sources: Iterable[int], target: int) -> int | None:
    """Least source tick with no coincident partner in ``target``."""
    for x in sorted(sources):
        if coin[x] & target == 0:
            return x
    return None


def check_subclock(s: TimeStructure, c1: Clock, c2: Clock) -> ConstraintVerdict:
    """``c1 ⊑ c2``: every tick of c1 coincides with some tick of c2."""
    _require_valid(s, c1, c2)
    w = _uncovered(s.coincidence.rows, c1.ticks, c2.mask)
    return _OK if w is None else ConstraintVerdict(False, w, "subclock")


def check_union(s: TimeStructure, c: Clock, c1: Clock, c2: Clock) -> ConstraintVerdict:
    """``c ≡ c1 ∪ c2`` up to coincidence, in both directions."""
    _require_valid(s, c, c1, c2)
    coin = s.coincidence.rows
    w = _uncovered(coin, c1.ticks | c2.ticks, c.mask)
    if w is not None:
        return ConstraintVerdict(False, w, "operands-covered")
    w = _uncovered(coin, c.ticks, c1.mask | c2.mask)
    if w is not None:
        return ConstraintVerdict(False, w, "union-covered")
    return _OK


def clock_refines(
    concrete: TimeStructure, abstract: TimeStructure, c_conc: Clock, c_abs: Clock
) -> ConstraintVerdict:
    """The two covering conjuncts of clock refinement, without the structure precondition.

    Both conjuncts are read under the abstract coincidence.
    """
    _require_valid(concrete, c_conc)
    _require_valid(abstract, c_abs)
    coin = abstract.coincidence.rows
    w = _uncovered(coin, c_abs.ticks, c_conc.mask)
    if w is not None:
        return ConstraintVerdict(False, w, "abstract-covered")
    w = _uncovered(coin, c_conc.ticks, c_abs.mask)
    if w is not None:
        return ConstraintVerdict(False, w, "concrete-covered")
    return _OK


def _same_universe(concrete: TimeStructure, abstract: TimeStructure) -> None:
    if concrete.size != abstract.size:
        raise UniverseMismatchError(
            f"structures live on different universes ({concrete.size} vs {abstract.size})"
        )


def check_clock_refinement(
    concrete: TimeStructure, abstract: TimeStructure, c_conc: Clock, c_abs: Clock
) -> ConstraintVerdict:
    """``c_conc refc c_abs``; raises if the structures themselves do not refine."""
    _same_universe(concrete, abstract)
    report = check_refinement(concrete, abstract)
    if not report.holds:
        names = ", ".join(r.predicate.value for r in report.failures)
        raise RefinementPreconditionError(f"structures do not refine ({names})")
    return clock_refines(concrete, abstract, c_conc, c_abs)


class PreservationStatus(Enum):
    VACUOUS = "vacuous"
    SATISFIED = "satisfied"
    VIOLATED = "violated"


@dataclass(frozen=True)
class PreservationVerdict:
    status: PreservationStatus
    detail: ConstraintVerdict | None = None
    failed_hypothesis: str | None = None


def _vacuous(hypothesis: str, verdict: ConstraintVerdict | None = None) -> PreservationVerdict:
    return PreservationVerdict(PreservationStatus.VACUOUS, verdict, hypothesis)


def _conclude(verdict: ConstraintVerdict) -> PreservationVerdict:
    if verdict.holds:
        return PreservationVerdict(PreservationStatus.SATISFIED)
    return PreservationVerdict(PreservationStatus.VIOLATED, verdict)


def check_subclock_preservation(
    concrete: TimeStructure,
    abstract: TimeStructure,
    c1: Clock,
    c2: Clock,
    c11: Clock,
    c22: Clock,
) -> PreservationVerdict:
    """If c1 ⊑ c2 below, c1 refc c11 and c2 refc c22, then c11 ⊑ c22 above."""
    _same_universe(concrete, abstract)
    _require_valid(concrete, c1, c2)
    _require_valid(abstract, c11, c22)
    if not check_refinement(concrete, abstract).holds:
        return _vacuous("refines")
    for name, verdict in (
        ("subclock", lambda: check_subclock(concrete, c1, c2)),
        ("clockrefines-1", lambda: clock_refines(concrete, abstract, c1, c11)),
        ("clockrefines-2", lambda: clock_refines(concrete, abstract, c2, c22)),
    ):
        v = verdict()
        if not v.holds:
            return _vacuous(name, v)
    return _conclude(check_subclock(abstract, c11, c22))


def check_union_preservation(
    concrete: TimeStructure,
    abstract: TimeStructure,
    c0: Clock,
    c1: Clock,
    c2: Clock,
    c: Clock,
) -> PreservationVerdict:
    """If c1 refc c, c2 refc c and c0 ≡ c1 ∪ c2 below, then c0 refc c."""
    _same_universe(concrete, abstract)
    _require_valid(concrete, c0, c1, c2)
    _require_valid(abstract, c)
    if not check_refinement(concrete, abstract).holds:
        return _vacuous("refines")
    for name, verdict in (
        ("clockrefines-1", lambda: clock_refines(concrete, abstract, c1, c)),
        ("clockrefines-2", lambda: clock_refines(concrete, abstract, c2, c)),
        ("union", lambda: check_union(concrete, c0, c1, c2)),
    ):
        v = verdict()
        if not v.holds:
            return _vacuous(name, v)
    return _conclude(clock_refines(concrete, abstract, c0, c))


def valid_clocks(s: TimeStructure, name: str = "c") -> list[Clock]:
    """Every tick subset of ``s`` that forms a valid clock (exponential; small ``s`` only)."""
    _closed(s)
    prec, prec_t = s.precedence.rows, s.precedence.transpose.rows
    out = []
    for mask in range(1 << s.size):
        ok = all(
            (mask & ~(1 << x)) & ~(prec[x] | prec_t[x]) == 0 for x in _bits(mask)
        )
        if ok:
            out.append(Clock(name, _bits(mask)))
    return out
