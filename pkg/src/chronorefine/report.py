"""JSON rendering of every report type (schema in ``schema/report.schema.json``).

Field order is fixed: ``schemaVersion`` first on top-level documents, then
the claim name and operands, then the verdict, then details.  Witness pairs
are rendered as two-element integer arrays.
"""

from __future__ import annotations

import json
from functools import singledispatch
from importlib import resources
from typing import Any

from .clocks import Clock, ConstraintVerdict, PreservationVerdict
from .order import PairClassification, SpoReport, TimeStructure
from .refinement import EquivalenceReport, PropertyReport, RefinementReport
from .runner import ClaimResult, Expectation, RunSummary
from .search import SearchReport

SCHEMA_VERSION = 1


def _seq(w):
    return None if w is None else [int(x) for x in w]


@singledispatch
def to_dict(report: Any) -> dict:
    raise TypeError(f"no JSON rendering for {type(report).__name__}")


@to_dict.register
def _(report: RefinementReport) -> dict:
    return {
        "holds": report.holds,
        "predicates": [
            {"predicate": r.predicate.value, "holds": r.holds, "witness": _seq(r.witness)}
            for r in report.results
        ],
    }


@to_dict.register
def _(report: SpoReport) -> dict:
    return {
        "holds": report.holds,
        "axioms": [
            {"axiom": a.axiom.value, "holds": a.holds, "witness": _seq(a.witness)}
            for a in report.axioms
        ],
        "violations": [_seq(v.witness) for v in report.violations],
    }


@to_dict.register
def _(report: EquivalenceReport) -> dict:
    witness = None
    if report.witness is not None:
        inclusion, pair = report.witness
        witness = {"inclusion": inclusion.value, "pair": _seq(pair)}
    return {"holds": report.holds, "witness": witness}


@to_dict.register
def _(report: ConstraintVerdict) -> dict:
    return {"holds": report.holds, "witness": report.witness, "clause": report.clause}


@to_dict.register
def _(report: PreservationVerdict) -> dict:
    out: dict = {"status": report.status.value}
    if report.failed_hypothesis is not None:
        out["failedHypothesis"] = report.failed_hypothesis
    if report.detail is not None:
        out["detail"] = to_dict(report.detail)
    return out


@to_dict.register
def _(report: TimeStructure) -> dict:
    return {
        "universe": report.size,
        "coincidence": [list(p) for p in report.coincidence.pairs()],
        "precedence": [list(p) for p in report.precedence.pairs()],
    }


@to_dict.register
def _(report: Clock) -> dict:
    return {"name": report.name, "ticks": report.sorted_ticks()}


def _instance(items) -> list | None:
    return None if items is None else [to_dict(x) for x in items]


@to_dict.register
def _(report: PropertyReport) -> dict:
    return {
        "law": report.law.value,
        "n": report.n,
        "holds": report.holds,
        "instancesChecked": report.instances_checked,
        "counterexample": _instance(report.counterexample),
    }


@to_dict.register
def _(report: SearchReport) -> dict:
    return {
        "lemma": report.lemma.value,
        "mode": report.mode,
        "n": report.n,
        "holds": report.holds,
        "instancesChecked": report.instances,
        "outcomes": {s.value: c for s, c in sorted(report.outcomes.items(), key=lambda kv: kv[0].value)},
        "counterexample": _instance(report.counterexample),
    }


@to_dict.register
def _(report: PairClassification) -> dict:
    return {"classification": report.value}


@to_dict.register
def _(report: RunSummary) -> dict:
    return {
        "claimsTotal": report.claims_total,
        "claimsPassed": report.claims_passed,
        "claimsFailed": report.claims_failed,
        "claimsVacuous": report.claims_vacuous,
        "exitCode": report.exit_code,
    }


@to_dict.register
def _(result: ClaimResult) -> dict:
    claim = result.claim
    if isinstance(claim, Expectation):
        out = {
            "claim": "classify",
            "operands": [claim.level, str(claim.i), str(claim.j)],
            "status": result.status.value,
            "expected": claim.expected.value,
        }
    else:
        out = {
            "claim": claim.kind.value,
            "operands": list(claim.operands),
            "status": result.status.value,
        }
    if result.report is not None:
        body = to_dict(result.report)
        if isinstance(claim, Expectation):
            body = {"holds": result.status.value == "pass", **body}
        body.pop("status", None)
        out.update(body)
    if result.message is not None:
        out["message"] = result.message
    return out


def emit_report(report: Any, claim: str | None = None, operands=None, indent: int | None = 2) -> str:
    """A standalone JSON document for any report, optionally labelled with its claim."""
    doc: dict = {"schemaVersion": SCHEMA_VERSION}
    if claim is not None:
        doc["claim"] = claim
    if operands is not None:
        doc["operands"] = list(operands)
    doc.update(to_dict(report))
    return json.dumps(doc, indent=indent)


def emit_run(results: list[ClaimResult], summary: RunSummary, source: str | None = None) -> str:
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "source": source,
        "results": [to_dict(r) for r in results],
        "summary": to_dict(summary),
    }
    return json.dumps(doc, indent=2)


def load_schema() -> dict:
    text = resources.files("chronorefine").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)
