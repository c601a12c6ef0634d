"""Counterexample search for the preservation checks.

Exhaustive mode walks every pair of structures on ``n <= 3`` instants that
stand in refinement and every combination of valid clocks on them.  Random
mode draws seeded instances on larger universes, mostly built so that the
hypotheses hold (otherwise almost every instance would be vacuous).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .clocks import (
    Clock,
    PreservationStatus,
    PreservationVerdict,
    check_subclock_preservation,
    check_union_preservation,
    valid_clocks,
)
from .order import TimeStructure, enumerate_structures, structure
from .refinement import refines


class Lemma(Enum):
    SUBCLOCK = "subclock"
    UNION = "union"


@dataclass
class SearchReport:
    lemma: Lemma
    mode: str
    n: int
    instances: int = 0
    outcomes: Counter = field(default_factory=Counter)
    counterexample: tuple | None = None

    @property
    def violated(self) -> int:
        return self.outcomes[PreservationStatus.VIOLATED]

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def record(self, verdict: PreservationVerdict, instance: tuple) -> bool:
        self.instances += 1
        self.outcomes[verdict.status] += 1
        if verdict.status is PreservationStatus.VIOLATED and self.counterexample is None:
            self.counterexample = instance
            return True
        return False


def _run(lemma: Lemma, conc, abs_, clocks) -> PreservationVerdict:
    if lemma is Lemma.SUBCLOCK:
        return check_subclock_preservation(conc, abs_, *clocks)
    return check_union_preservation(conc, abs_, *clocks)


EXHAUSTIVE_LIMIT = 3


def exhaustive_preservation(lemma: Lemma | str, n: int) -> SearchReport:
    """Every refining structure pair on ``n`` instants, every valid clock combination."""
    lemma = Lemma(lemma)
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search is guarded to 1 <= n <= {EXHAUSTIVE_LIMIT}")
    report = SearchReport(lemma, "exhaustive", n)
    structs = list(enumerate_structures(n))
    clocks = {s: valid_clocks(s) for s in structs}
    for conc, abs_ in itertools.product(structs, repeat=2):
        if not refines(conc, abs_):
            continue
        lo, hi = clocks[conc], clocks[abs_]
        if lemma is Lemma.SUBCLOCK:
            combos = itertools.product(lo, lo, hi, hi)
        else:
            combos = itertools.product(lo, lo, lo, hi)
        for combo in combos:
            if report.record(_run(lemma, conc, abs_, combo), (conc, abs_) + combo):
                return report
    return report


# --- random instances ----------------------------------------------------------


def _random_order(rng: random.Random, m: int, density: float) -> list[tuple[int, int]]:
    """Random strict order on ``range(m)``: forward pairs of a random permutation."""
    perm = list(range(m))
    rng.shuffle(perm)
    return [
        (perm[a], perm[b])
        for a in range(m)
        for b in range(a + 1, m)
        if rng.random() < density
    ]


def random_refinement_pair(rng: random.Random, n: int) -> tuple[TimeStructure, TimeStructure]:
    """A concrete/abstract pair guaranteed to stand in refinement.

    The abstract level is a random partition with a random order on its
    classes.  The concrete level keeps the same order across classes and
    splits each abstract class into a random weak order, so that all
    instants of one abstract class stay pairwise related.
    """
    groups = rng.randint(1, n)
    label = [rng.randrange(groups) for _ in range(n)]
    used = sorted(set(label))
    rename = {g: k for k, g in enumerate(used)}
    label = [rename[g] for g in label]
    members = [[i for i in range(n) if label[i] == g] for g in range(len(used))]

    class_order = _random_order(rng, len(members), rng.uniform(0.2, 0.9))
    abs_coincide = [(ms[0], x) for ms in members for x in ms[1:]]
    abs_precede = [(members[a][0], members[b][0]) for a, b in class_order]

    conc_coincide, conc_precede = [], []
    for a, b in class_order:
        conc_precede.append((members[a][0], members[b][0]))
    for ms in members:
        levels = rng.randint(1, len(ms))
        slot = {x: rng.randrange(levels) for x in ms}
        by_level = [[x for x in ms if slot[x] == lv] for lv in range(levels)]
        by_level = [blk for blk in by_level if blk]
        for blk in by_level:
            conc_coincide += [(blk[0], x) for x in blk[1:]]
        for lo, hi in zip(by_level, by_level[1:]):
            conc_precede.append((lo[0], hi[0]))
    # cross-class order must hold for every member, not only class leaders
    for a, b in class_order:
        conc_precede += [(x, y) for x in members[a] for y in members[b]]

    concrete = structure(n, conc_coincide, conc_precede)
    abstract = structure(n, abs_coincide, abs_precede)
    return concrete, abstract


def random_chain(rng: random.Random, s: TimeStructure, name: str = "c") -> Clock:
    """Greedy random chain: a valid clock on ``s``."""
    candidates = list(range(s.size))
    rng.shuffle(candidates)
    keep = rng.randint(0, s.size)
    prec = s.precedence
    ticks: list[int] = []
    for x in candidates[:keep]:
        if all((x, y) in prec or (y, x) in prec for y in ticks):
            ticks.append(x)
    return Clock(name, ticks)


def _representatives(rng: random.Random, s: TimeStructure, ticks, name: str) -> Clock:
    """One random member of each coincidence class of ``s`` touched by ``ticks``."""
    ticks = set(ticks)
    return Clock(name, [rng.choice(sorted(cl)) for cl in s.classes if cl & ticks])


def _sub_chain(rng: random.Random, c: Clock, name: str) -> Clock:
    return Clock(name, [t for t in c.ticks if rng.random() < 0.6])


def random_subclock_instance(rng: random.Random, n: int, guided: float = 0.8):
    conc, abs_ = random_refinement_pair(rng, n)
    if rng.random() >= guided:
        return conc, abs_, tuple(
            random_chain(rng, s, nm)
            for s, nm in ((conc, "c1"), (conc, "c2"), (abs_, "c11"), (abs_, "c22"))
        )
    c2 = random_chain(rng, conc, "c2")
    c1 = _sub_chain(rng, c2, "c1")
    c11 = _representatives(rng, abs_, c1.ticks, "c11")
    c22 = _representatives(rng, abs_, c2.ticks, "c22")
    return conc, abs_, (c1, c2, c11, c22)


def random_union_instance(rng: random.Random, n: int, guided: float = 0.8):
    conc, abs_ = random_refinement_pair(rng, n)
    if rng.random() >= guided:
        return conc, abs_, tuple(
            random_chain(rng, s, nm)
            for s, nm in ((conc, "c0"), (conc, "c1"), (conc, "c2"), (abs_, "c"))
        )
    c = random_chain(rng, abs_, "c")
    operands = []
    for nm in ("c1", "c2"):
        ticks = []
        for t in sorted(c.ticks):
            group = next(g for g in abs_.classes if t in g)
            # a chain picks at most one instant per concrete class inside the group
            options = sorted({min(k) for k in conc.classes if k <= group})
            ticks += [x for x in options if rng.random() < 0.5] or [rng.choice(options)]
        operands.append(Clock(nm, ticks))
    c0 = _representatives(rng, conc, operands[0].ticks | operands[1].ticks, "c0")
    return conc, abs_, (c0, operands[0], operands[1], c)


def random_preservation(
    lemma: Lemma | str, count: int, n: int = 8, seed: int = 0, guided: float = 0.8
) -> SearchReport:
    """``count`` seeded random instances on ``n`` instants."""
    lemma = Lemma(lemma)
    rng = random.Random(seed)
    make = random_subclock_instance if lemma is Lemma.SUBCLOCK else random_union_instance
    report = SearchReport(lemma, "random", n)
    for _ in range(count):
        conc, abs_, clocks = make(rng, n, guided)
        if report.record(_run(lemma, conc, abs_, clocks), (conc, abs_) + clocks):
            break
    return report
