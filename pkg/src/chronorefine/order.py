"""Finite time structures: instants bound by coincidence and precedence.

A structure lives on the universe ``0 .. size-1``.  Relations are stored as
one bitmask per row (``rows[i]`` has bit ``j`` set iff ``(i, j)`` is in the
relation), which keeps closure and the pairwise checks cheap at desk scale
and makes relations hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

import numpy as np

MAX_UNIVERSE = 4096

Pair = tuple[int, int]


class StructureError(ValueError):
    """Base class for misuse of time structures."""


class NotClosedError(StructureError):
    pass


class InvalidStructureError(StructureError):
    """The closed relations breach irreflexivity of precedence toward coincidence."""


class UniverseMismatchError(StructureError):
    pass


class InstantRangeError(StructureError, IndexError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Relation:
    """A binary relation over ``range(size)`` stored as row bitmasks."""

    size: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.size:
            raise ValueError(f"expected {self.size} rows, got {len(self.rows)}")
        limit = 1 << self.size
        if any(r < 0 or r >= limit for r in self.rows):
            raise InstantRangeError("row mask reaches outside the universe")

    @classmethod
    def empty(cls, size: int) -> Relation:
        return cls(size, (0,) * size)

    @classmethod
    def identity(cls, size: int) -> Relation:
        return cls(size, tuple(1 << i for i in range(size)))

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[Pair]) -> Relation:
        rows = [0] * size
        for i, j in pairs:
            _check_range(size, i, j)
            rows[i] |= 1 << j
        return cls(size, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> Relation:
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("relation matrix must be square")
        return cls.from_pairs(m.shape[0], zip(*np.nonzero(m)))

    def __contains__(self, pair: Pair) -> bool:
        i, j = pair
        if not (0 <= i < self.size and 0 <= j < self.size):
            return False
        return bool(self.rows[i] >> j & 1)

    def __len__(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def __iter__(self) -> Iterator[Pair]:
        return self.pairs()

    def pairs(self) -> Iterator[Pair]:
        """Yield the pairs in lexicographic order."""
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                yield (i, j)

    def successors(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    @cached_property
    def transpose(self) -> Relation:
        rows = [0] * self.size
        for i, j in self.pairs():
            rows[j] |= 1 << i
        return Relation(self.size, tuple(rows))

    def issubset(self, other: Relation) -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __or__(self, other: Relation) -> Relation:
        return Relation(self.size, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: Relation) -> Relation:
        return Relation(self.size, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        for i, j in self.pairs():
            m[i, j] = True
        return m


def _check_range(size: int, *ids: int) -> None:
    for x in ids:
        if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
            raise TypeError(f"instant ids are integers, got {x!r}")
        if not 0 <= x < size:
            raise InstantRangeError(f"instant {x} outside universe of size {size}")


def _pairset(pairs: Iterable[Pair]) -> frozenset[Pair]:
    return frozenset((int(i), int(j)) for i, j in pairs)


@dataclass(frozen=True)
class TimeStructure:
    """Instants ``0 .. size-1`` with generator and (once closed) closed relations.

    ``coincidence`` and ``precedence`` are ``None`` until the structure is
    passed through :func:`close_structure`.  Structures that breach the
    irreflexivity axiom are representable; :func:`validate_spo` reports them.
    """

    size: int
    coincidence_gen: frozenset[Pair] = frozenset()
    precedence_gen: frozenset[Pair] = frozenset()
    coincidence: Relation | None = field(default=None, compare=True)
    precedence: Relation | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        if isinstance(self.size, bool) or not isinstance(self.size, int):
            raise TypeError("universe size must be an integer")
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise InstantRangeError(
                f"universe size must lie in 1..{MAX_UNIVERSE}, got {self.size}"
            )
        object.__setattr__(self, "coincidence_gen", _pairset(self.coincidence_gen))
        object.__setattr__(self, "precedence_gen", _pairset(self.precedence_gen))
        for i, j in itertools.chain(self.coincidence_gen, self.precedence_gen):
            _check_range(self.size, i, j)
        if (self.coincidence is None) != (self.precedence is None):
            raise ValueError("closed relations come in pairs")
        for rel in (self.coincidence, self.precedence):
            if rel is not None and rel.size != self.size:
                raise UniverseMismatchError("closed relation has the wrong size")

    @property
    def closed(self) -> bool:
        return self.coincidence is not None

    def coincident(self, i: int, j: int) -> bool:
        return (i, j) in _closed(self).coincidence

    def precedes(self, i: int, j: int) -> bool:
        return (i, j) in _closed(self).precedence

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        """Coincidence classes, ordered by least member."""
        rows = _closed(self).coincidence.rows
        seen = 0
        out = []
        for i in range(self.size):
            if not seen >> i & 1:
                out.append(frozenset(_bits(rows[i])))
                seen |= rows[i]
        return tuple(out)


def _closed(s: TimeStructure) -> TimeStructure:
    if not s.closed:
        raise NotClosedError("operation needs a closed structure; call close_structure")
    return s


def structure(
    size: int, coincide: Iterable[Pair] = (), precede: Iterable[Pair] = ()
) -> TimeStructure:
    """Build and close a structure from generator pairs."""
    return close_structure(TimeStructure(size, frozenset(coincide), frozenset(precede)))


def close_structure(s: TimeStructure) -> TimeStructure:
    """Least closed pair of relations containing the generators.

    Coincidence is the equivalence closure of its generators; the
    precedence rules never add coincidences.  Precedence is then the
    transitive closure of the generators lifted to coincidence classes,
    which is the least relation that is transitive and respects
    coincidence on both sides.
    """
    if s.closed:
        return s
    n = s.size
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in s.coincidence_gen:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    roots = [find(i) for i in range(n)]
    index: dict[int, int] = {}
    members: list[int] = []
    for i, r in enumerate(roots):
        if r not in index:
            index[r] = len(members)
            members.append(0)
        members[index[r]] |= 1 << i
    cls = [index[r] for r in roots]
    m = len(members)

    graph = [0] * m
    for i, j in s.precedence_gen:
        graph[cls[i]] |= 1 << cls[j]
    for k in range(m):
        bit, row_k = 1 << k, graph[k]
        for c in range(m):
            if graph[c] & bit:
                graph[c] |= row_k

    expanded = []
    for c in range(m):
        mask = 0
        for d in _bits(graph[c]):
            mask |= members[d]
        expanded.append(mask)

    coincidence = Relation(n, tuple(members[cls[i]] for i in range(n)))
    precedence = Relation(n, tuple(expanded[cls[i]] for i in range(n)))
    return TimeStructure(n, s.coincidence_gen, s.precedence_gen, coincidence, precedence)


class ViolationKind(Enum):
    IRREFLEXIVITY_TOWARD_COINCIDENCE = "irreflexivity-toward-coincidence"


@dataclass(frozen=True)
class SpoViolation:
    kind: ViolationKind
    witness: Pair


# Literal axiom recheck is quadratic in big-int operations; skip it on huge universes.
_RECHECK_LIMIT = 512


def validate_spo(s: TimeStructure) -> list[SpoViolation]:
    """Pairs that are both coincident and ordered, in lexicographic order."""
    _closed(s)
    coin, prec = s.coincidence.rows, s.precedence.rows
    out = [
        SpoViolation(ViolationKind.IRREFLEXIVITY_TOWARD_COINCIDENCE, (i, j))
        for i in range(s.size)
        for j in _bits(prec[i] & coin[i])
    ]
    if __debug__ and s.size <= _RECHECK_LIMIT:
        generative = [a for a in spo_axioms(s) if a.axiom is not Axiom.PRECEDENCE_IRREFLEXIVE]
        assert all(a.holds for a in generative), generative
    return out


def is_valid(s: TimeStructure) -> bool:
    _closed(s)
    return all(p & c == 0 for p, c in zip(s.precedence.rows, s.coincidence.rows))


class Axiom(Enum):
    COINCIDENCE_REFLEXIVE = "coincidence-reflexive"
    COINCIDENCE_TRANSITIVE = "coincidence-transitive"
    COINCIDENCE_SYMMETRIC = "coincidence-symmetric"
    PRECEDENCE_IRREFLEXIVE = "precedence-irreflexive-toward-coincidence"
    PRECEDENCE_TRANSITIVE = "precedence-transitive"
    PRECEDENCE_RESPECTS_LEFT = "precedence-respects-coincidence-left"
    PRECEDENCE_RESPECTS_RIGHT = "precedence-respects-coincidence-right"


@dataclass(frozen=True)
class AxiomCheck:
    axiom: Axiom
    holds: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class SpoReport:
    axioms: tuple[AxiomCheck, ...]
    violations: tuple[SpoViolation, ...]

    @property
    def holds(self) -> bool:
        return all(a.holds for a in self.axioms)


def _first_failure(n: int, probe) -> tuple[int, ...] | None:
    for i in range(n):
        w = probe(i)
        if w is not None:
            return w
    return None


def spo_axioms(s: TimeStructure) -> tuple[AxiomCheck, ...]:
    """Check the seven strict-partial-order conjuncts on the closed relations.

    Each failing conjunct carries its lexicographically least witness:
    a singleton for reflexivity, a pair for symmetry and irreflexivity,
    and a triple ``(i, j, k)`` for the transitivity and respect rules.
    """
    _closed(s)
    n = s.size
    coin, prec = s.coincidence.rows, s.precedence.rows
    prec_t = s.precedence.transpose.rows
    coin_t = s.coincidence.transpose.rows

    def reflexive(i):
        return None if coin[i] >> i & 1 else (i,)

    def symmetric(i):
        bad = coin[i] & ~coin_t[i]
        return (i, _lowest(bad)) if bad else None

    def triple(rel_ij, rel_jk, rel_ik):
        # least (i, j, k) with (i,j) in rel_ij, (j,k) in rel_jk, (i,k) not in rel_ik
        def probe(i):
            for j in _bits(rel_ij[i]):
                bad = rel_jk[j] & ~rel_ik[i]
                if bad:
                    return (i, j, _lowest(bad))
            return None

        return probe

    def irreflexive(i):
        bad = prec[i] & coin[i]
        return (i, _lowest(bad)) if bad else None

    def respects_left(i):
        # i ≈ j and i ≺ k imply j ≺ k
        for j in _bits(coin[i]):
            bad = prec[i] & ~prec[j]
            if bad:
                return (i, j, _lowest(bad))
        return None

    def respects_right(i):
        # i ≈ j and k ≺ i imply k ≺ j
        for j in _bits(coin[i]):
            bad = prec_t[i] & ~prec_t[j]
            if bad:
                return (i, j, _lowest(bad))
        return None

    probes = [
        (Axiom.COINCIDENCE_REFLEXIVE, reflexive),
        (Axiom.COINCIDENCE_TRANSITIVE, triple(coin, coin, coin)),
        (Axiom.COINCIDENCE_SYMMETRIC, symmetric),
        (Axiom.PRECEDENCE_IRREFLEXIVE, irreflexive),
        (Axiom.PRECEDENCE_TRANSITIVE, triple(prec, prec, prec)),
        (Axiom.PRECEDENCE_RESPECTS_LEFT, respects_left),
        (Axiom.PRECEDENCE_RESPECTS_RIGHT, respects_right),
    ]
    out = []
    for axiom, probe in probes:
        w = _first_failure(n, probe)
        out.append(AxiomCheck(axiom, w is None, w))
    return tuple(out)


def check_spo(s: TimeStructure) -> SpoReport:
    return SpoReport(spo_axioms(s), tuple(validate_spo(s)))


class PairClassification(Enum):
    COINCIDENT = "coincident"
    PRECEDES = "precedes"
    PRECEDED_BY = "preceded-by"
    INDEPENDENT = "independent"


def classify_pair(s: TimeStructure, i: int, j: int) -> PairClassification:
    _closed(s)
    _check_range(s.size, i, j)
    coincident = (i, j) in s.coincidence
    before = (i, j) in s.precedence
    after = (j, i) in s.precedence
    if coincident + before + after > 1:
        raise InvalidStructureError(f"pair ({i}, {j}) is both coincident and ordered")
    if coincident:
        return PairClassification.COINCIDENT
    if before:
        return PairClassification.PRECEDES
    if after:
        return PairClassification.PRECEDED_BY
    return PairClassification.INDEPENDENT


# --- brute-force enumeration -------------------------------------------------

ENUMERATION_LIMIT = 4


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n``: block label per element."""

    def grow(prefix: list[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    if n == 0:
        yield ()
        return
    yield from grow([0], 0)


@lru_cache(maxsize=None)
def strict_orders(m: int) -> tuple[tuple[int, ...], ...]:
    """Every strict partial order on ``m`` labelled elements, as row bitmasks."""
    off_diag = [(a, b) for a in range(m) for b in range(m) if a != b]
    out = []
    for mask in range(1 << len(off_diag)):
        rows = [0] * m
        for bit, (a, b) in enumerate(off_diag):
            if mask >> bit & 1:
                rows[a] |= 1 << b
        if all(rows[b] & ~rows[a] == 0 for a in range(m) for b in _bits(rows[a])) and all(
            not rows[a] >> a & 1 for a in range(m)
        ):
            out.append(tuple(rows))
    return tuple(out)


def enumerate_structures(n: int) -> Iterator[TimeStructure]:
    """All closed, valid structures on ``n`` instants, each exactly once.

    Built as every set partition (the coincidence classes) crossed with
    every strict partial order on the classes.
    """
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is guarded to 1 <= n <= {ENUMERATION_LIMIT}, got {n!r}")
    for labels in set_partitions(n):
        m = max(labels) + 1
        members = [0] * m
        for i, b in enumerate(labels):
            members[b] |= 1 << i
        for order in strict_orders(m):
            expanded = []
            for b in range(m):
                mask = 0
                for d in _bits(order[b]):
                    mask |= members[d]
                expanded.append(mask)
            coincidence = Relation(n, tuple(members[b] for b in labels))
            precedence = Relation(n, tuple(expanded[b] for b in labels))
            yield TimeStructure(
                n,
                frozenset(coincidence.pairs()),
                frozenset(precedence.pairs()),
                coincidence,
                precedence,
            )
