"""The two-level "switch on" example, instantiated on the naturals.

Each switch-on occurrence spans five consecutive instants ``5q .. 5q+4``
(power, second on-line, stack, compute, store).  Writing ``a = 5q + r``:

* abstract level: ``a ≈ a'`` iff ``q = q'``; ``a ≺ a'`` iff ``q < q'``
* concrete level: ``a ≈ a'`` iff ``q = q'`` and either both remainders are
  in ``{0, 1}`` or they are equal; ``a ≺ a'`` iff ``q < q'``, or ``q = q'``
  and ``r < r'`` with ``r' != 1``

Only a finite prefix of ``k`` groups is generated; pairs that would cross
the end of the prefix do not exist.
"""

from __future__ import annotations

from .dsl import Claim, ClaimKind, ClockDecl, LevelDecl, SpecDocument

GROUP = 5
LINES = ("on1", "on2", "stack", "comp", "store")


def euclid(a: int) -> tuple[int, int]:
    return divmod(a, GROUP)


def abstract_coincident(a: int, b: int) -> bool:
    return euclid(a)[0] == euclid(b)[0]


def abstract_precedes(a: int, b: int) -> bool:
    return euclid(a)[0] < euclid(b)[0]


def concrete_coincident(a: int, b: int) -> bool:
    (q1, r1), (q2, r2) = euclid(a), euclid(b)
    return q1 == q2 and ((r1 in (0, 1) and r2 in (0, 1)) or (r1 == r2 and r1 not in (0, 1)))


def concrete_precedes(a: int, b: int) -> bool:
    (q1, r1), (q2, r2) = euclid(a), euclid(b)
    return q1 < q2 or (q1 == q2 and r1 < r2 and r2 != 1)


def abstract_generators(k: int) -> tuple[set, set]:
    """Each group's first instant is tied to the rest of its group and to the next group's first."""
    n = GROUP * k
    coincide = {(a, b) for a in range(0, n, GROUP) for b in range(a + 1, a + GROUP)}
    precede = {(a, a + GROUP) for a in range(0, n - GROUP, GROUP)}
    assert all(abstract_coincident(a, b) for a, b in coincide)
    assert all(abstract_precedes(a, b) for a, b in precede)
    return coincide, precede


def concrete_generators(k: int) -> tuple[set, set]:
    """Successor pairs, sorted into coincident and preceding ones by the formulas."""
    n = GROUP * k
    coincide = {(a, a + 1) for a in range(n - 1) if concrete_coincident(a, a + 1)}
    precede = {(a, a + 1) for a in range(n - 1) if concrete_precedes(a, a + 1)}
    return coincide, precede


def mod5_document(k: int) -> SpecDocument:
    """Both levels over ``5k`` instants, one clock per line and level, and the claims to check."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"need at least one group, got {k!r}")
    a_coin, a_prec = abstract_generators(k)
    c_coin, c_prec = concrete_generators(k)
    levels = {
        "abstract": LevelDecl("abstract", frozenset(a_coin), frozenset(a_prec)),
        "concrete": LevelDecl("concrete", frozenset(c_coin), frozenset(c_prec)),
    }
    clocks = {}
    for r, line in enumerate(LINES):
        ticks = frozenset(GROUP * q + r for q in range(k))
        clocks[f"abs_{line}"] = ClockDecl(f"abs_{line}", "abstract", ticks)
        clocks[f"conc_{line}"] = ClockDecl(f"conc_{line}", "concrete", ticks)
    claims = [
        Claim(ClaimKind.SPO, ("abstract",)),
        Claim(ClaimKind.SPO, ("concrete",)),
        Claim(ClaimKind.REFINES, ("concrete", "abstract")),
    ]
    claims += [Claim(ClaimKind.CLOCK_REFINES, (f"conc_{ln}", f"abs_{ln}")) for ln in LINES]
    claims.append(
        Claim(ClaimKind.PRESERVE_SUBCLOCK, ("conc_on2", "conc_on1", "abs_on2", "abs_on1"))
    )
    return SpecDocument(GROUP * k, levels, clocks, tuple(claims))
