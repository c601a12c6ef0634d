"""Evaluate the claims of a parsed document, in order."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from .clocks import (
    ClockError,
    PreservationStatus,
    check_clock_refinement,
    check_subclock,
    check_subclock_preservation,
    check_union,
    check_union_preservation,
)
from .dsl import Claim, ClaimKind, SpecDocument
from .order import PairClassification, StructureError, check_spo, classify_pair, is_valid
from .refinement import check_refinement


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"
    ERROR = "error"


@dataclass(frozen=True)
class Expectation:
    """An expected classification of one instant pair on one level."""

    level: str
    i: int
    j: int
    expected: PairClassification
    line: int = 0

    def __str__(self) -> str:
        return f"classify {self.level} {self.i} {self.j} {self.expected.value}"


@dataclass(frozen=True)
class ClaimResult:
    claim: Claim | Expectation
    status: Status
    report: Any = None
    message: str | None = None

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.VACUOUS)


@dataclass(frozen=True)
class RunSummary:
    claims_total: int
    claims_passed: int
    claims_failed: int
    claims_vacuous: int

    @property
    def exit_code(self) -> int:
        return 0 if self.claims_failed == 0 else 1

    @classmethod
    def of(cls, results: list[ClaimResult]) -> RunSummary:
        count = {s: sum(r.status is s for r in results) for s in Status}
        return cls(
            len(results),
            count[Status.PASS],
            count[Status.FAIL] + count[Status.ERROR],
            count[Status.VACUOUS],
        )


def parse_expectations(text: str) -> list[Expectation]:
    """Lines of ``<level> <i> <j> <classification>``; ``#`` comments allowed."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected '<level> <i> <j> <classification>'")
        level, i, j, cls = parts
        out.append(Expectation(level, int(i), int(j), PairClassification(cls), lineno))
    return out


def _valid_structure(doc: SpecDocument, level: str):
    s = doc.structure(level)
    if not is_valid(s):
        raise StructureError(f"level {level!r} breaches irreflexivity toward coincidence")
    return s


def evaluate_claim(doc: SpecDocument, claim: Claim) -> ClaimResult:
    ops = claim.operands
    kind = claim.kind
    try:
        if kind is ClaimKind.SPO:
            report = check_spo(doc.structure(ops[0]))
            return ClaimResult(claim, Status.PASS if report.holds else Status.FAIL, report)
        if kind is ClaimKind.REFINES:
            conc, abs_ = (_valid_structure(doc, lv) for lv in ops)
            report = check_refinement(conc, abs_)
        elif kind is ClaimKind.SUBCLOCK:
            s = _valid_structure(doc, doc.level_of(ops[0]))
            report = check_subclock(s, *(doc.clock(c) for c in ops))
        elif kind is ClaimKind.UNION:
            s = _valid_structure(doc, doc.level_of(ops[0]))
            report = check_union(s, *(doc.clock(c) for c in ops))
        elif kind is ClaimKind.CLOCK_REFINES:
            conc = _valid_structure(doc, doc.level_of(ops[0]))
            abs_ = _valid_structure(doc, doc.level_of(ops[1]))
            report = check_clock_refinement(conc, abs_, doc.clock(ops[0]), doc.clock(ops[1]))
        else:
            # both lemmas: the first operand lives below, the last one above
            conc = _valid_structure(doc, doc.level_of(ops[0]))
            abs_ = _valid_structure(doc, doc.level_of(ops[-1]))
            check = (
                check_subclock_preservation
                if kind is ClaimKind.PRESERVE_SUBCLOCK
                else check_union_preservation
            )
            report = check(conc, abs_, *(doc.clock(c) for c in ops))
            status = {
                PreservationStatus.SATISFIED: Status.PASS,
                PreservationStatus.VACUOUS: Status.VACUOUS,
                PreservationStatus.VIOLATED: Status.FAIL,
            }[report.status]
            return ClaimResult(claim, status, report)
    except (StructureError, ClockError) as exc:
        return ClaimResult(claim, Status.ERROR, None, str(exc))
    return ClaimResult(claim, Status.PASS if report.holds else Status.FAIL, report)


def evaluate_expectation(doc: SpecDocument, exp: Expectation) -> ClaimResult:
    try:
        if exp.level not in doc.levels:
            raise StructureError(f"unknown level {exp.level!r}")
        got = classify_pair(_valid_structure(doc, exp.level), exp.i, exp.j)
    except StructureError as exc:
        return ClaimResult(exp, Status.ERROR, None, str(exc))
    status = Status.PASS if got is exp.expected else Status.FAIL
    return ClaimResult(exp, status, got, None if got is exp.expected else f"got {got.value}")


def run_document(
    doc: SpecDocument, expectations: list[Expectation] = ()
) -> tuple[list[ClaimResult], RunSummary]:
    results = [evaluate_claim(doc, c) for c in doc.claims]
    results += [evaluate_expectation(doc, e) for e in expectations]
    return results, RunSummary.of(results)
