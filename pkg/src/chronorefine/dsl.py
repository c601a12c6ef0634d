"""Parser and canonical serializer for ``.chrono`` specification files.

Grammar (``#`` starts a comment running to end of line)::

    file   := stmt*
    stmt   := ( "universe" INT
              | "level" NAME "{" rel* "}"
              | "clock" NAME "@" NAME "=" "{" [ INT ("," INT)* ] "}"
              | claim ) ";"
    rel    := ("coincide" | "precede") INT INT ";"
    claim  := "assert" ( "spo" NAME
                       | "refines" NAME NAME
                       | "subclock" NAME NAME
                       | "union" NAME NAME NAME
                       | "clockrefines" NAME NAME
                       | "preserve-subclock" NAME NAME NAME NAME
                       | "preserve-union" NAME NAME NAME NAME )

Errors are collected rather than raised one at a time: a broken statement
is skipped up to its terminating ``;`` and parsing resumes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping

from .clocks import Clock
from .order import MAX_UNIVERSE, Pair, TimeStructure, structure


class DiagnosticKind(Enum):
    SYNTAX = "syntax"
    RESOLUTION = "resolution"
    RANGE = "range"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    kind: DiagnosticKind

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind.value} error: {self.message}"


class SpecParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


class ClaimKind(Enum):
    SPO = "spo"
    REFINES = "refines"
    SUBCLOCK = "subclock"
    UNION = "union"
    CLOCK_REFINES = "clockrefines"
    PRESERVE_SUBCLOCK = "preserve-subclock"
    PRESERVE_UNION = "preserve-union"


ARITY = {
    ClaimKind.SPO: 1,
    ClaimKind.REFINES: 2,
    ClaimKind.SUBCLOCK: 2,
    ClaimKind.UNION: 3,
    ClaimKind.CLOCK_REFINES: 2,
    ClaimKind.PRESERVE_SUBCLOCK: 4,
    ClaimKind.PRESERVE_UNION: 4,
}


@dataclass(frozen=True)
class Claim:
    kind: ClaimKind
    operands: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.operands) != ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} takes {ARITY[self.kind]} operands")

    def __str__(self) -> str:
        return " ".join((self.kind.value,) + self.operands)


@dataclass(frozen=True)
class LevelDecl:
    name: str
    coincide: frozenset[Pair] = frozenset()
    precede: frozenset[Pair] = frozenset()


@dataclass(frozen=True)
class ClockDecl:
    name: str
    level: str
    ticks: frozenset[int] = frozenset()


@dataclass(frozen=True, eq=False)
class SpecDocument:
    universe: int
    levels: Mapping[str, LevelDecl]
    clocks: Mapping[str, ClockDecl] = field(default_factory=dict)
    claims: tuple[Claim, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", MappingProxyType(dict(self.levels)))
        object.__setattr__(self, "clocks", MappingProxyType(dict(self.clocks)))
        object.__setattr__(self, "claims", tuple(self.claims))
        object.__setattr__(self, "_structures", {})

    def __eq__(self, other):
        if not isinstance(other, SpecDocument):
            return NotImplemented
        return (
            self.universe == other.universe
            and dict(self.levels) == dict(other.levels)
            and dict(self.clocks) == dict(other.clocks)
            and self.claims == other.claims
        )

    __hash__ = None

    def structure(self, level: str) -> TimeStructure:
        """The closed structure of ``level`` (cached)."""
        cache = self._structures
        if level not in cache:
            decl = self.levels[level]
            cache[level] = structure(self.universe, decl.coincide, decl.precede)
        return cache[level]

    def clock(self, name: str) -> Clock:
        return Clock(name, self.clocks[name].ticks)

    def level_of(self, clock: str) -> str:
        return self.clocks[clock].level


# --- lexer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n\f\v]+)|(?P<comment>#[^\n]*)|(?P<int>[0-9]+)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_\-]*)|(?P<punct>[{};@=,])"
)
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "word", "punct", "bad", "eof"
    text: str
    line: int
    column: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            # reported by the parser, so the statement holding it is dropped
            tokens.append(_Token("bad", ch, line, col))
            if ch == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
            continue
        kind = m.lastgroup
        chunk = m.group()
        if kind in ("int", "word", "punct"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    if tokens:
        last = tokens[-1]
        tokens.append(_Token("eof", "", last.line, last.column))
    else:
        tokens.append(_Token("eof", "", 1, 1))
    return tokens


# --- parser ----------------------------------------------------------------


class _Fail(Exception):
    def __init__(self, token: _Token, message: str, kind=DiagnosticKind.SYNTAX):
        self.token, self.message, self.kind = token, message, kind


def _describe(tok: _Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "bad":
        return f"unexpected character {tok.text!r}"
    return repr(tok.text)


class _Parser:
    def __init__(self, tokens: list[_Token], diags: list[ParseDiagnostic]):
        self.toks = tokens
        self.pos = 0
        self.diags = diags
        self.universe: list[tuple[int, _Token]] = []
        self.levels: list[tuple[str, _Token, list, list]] = []
        self.clocks: list[tuple[str, _Token, str, _Token, list]] = []
        self.claims: list[tuple[ClaimKind, list[tuple[str, _Token]], _Token]] = []

    # token helpers
    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self) -> _Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind not in ("word", "punct") or tok.text != text:
            raise _Fail(tok, f"expected {text!r}, found {_describe(tok)}")
        return self.take()

    def integer(self) -> tuple[int, _Token]:
        tok = self.peek()
        if tok.kind != "int":
            raise _Fail(tok, f"expected an integer, found {_describe(tok)}")
        self.take()
        return int(tok.text), tok

    def name(self) -> tuple[str, _Token]:
        tok = self.peek()
        if tok.kind != "word":
            raise _Fail(tok, f"expected a name, found {_describe(tok)}")
        if not _IDENT.match(tok.text):
            raise _Fail(tok, f"{tok.text!r} is not an identifier")
        self.take()
        return tok.text, tok

    def report(self, fail: _Fail) -> None:
        t = fail.token
        self.diags.append(ParseDiagnostic(t.line, t.column, fail.message, fail.kind))

    def sync(self, in_block: bool = False) -> None:
        """Skip past the next ``;`` at this brace depth.

        Inside a level block, stop in front of the block's closing brace.
        """
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            if tok.kind == "punct":
                if tok.text == "{":
                    depth += 1
                elif tok.text == "}":
                    if depth == 0 and in_block:
                        return
                    depth = max(depth - 1, 0)
                elif tok.text == ";" and depth == 0:
                    self.take()
                    return
            self.take()

    # grammar
    def parse(self) -> None:
        while self.peek().kind != "eof":
            try:
                self.statement()
            except _Fail as fail:
                self.report(fail)
                self.sync()

    def statement(self) -> None:
        tok = self.peek()
        if tok.kind != "word":
            raise _Fail(tok, f"expected a statement, found {_describe(tok)}")
        handler = {
            "universe": self.universe_stmt,
            "level": self.level_stmt,
            "clock": self.clock_stmt,
            "assert": self.assert_stmt,
        }.get(tok.text)
        if handler is None:
            raise _Fail(tok, f"unknown statement {tok.text!r}")
        self.take()
        handler(tok)

    def universe_stmt(self, head: _Token) -> None:
        value, tok = self.integer()
        self.expect(";")
        self.universe.append((value, tok))

    def level_stmt(self, head: _Token) -> None:
        name, name_tok = self.name()
        self.expect("{")
        coincide: list[tuple[int, int, _Token, _Token]] = []
        precede: list[tuple[int, int, _Token, _Token]] = []
        while not (self.peek().kind == "punct" and self.peek().text == "}"):
            if self.peek().kind == "eof":
                raise _Fail(self.peek(), "unterminated level block, expected '}'")
            try:
                kw = self.peek()
                if kw.kind != "word" or kw.text not in ("coincide", "precede"):
                    raise _Fail(kw, f"expected 'coincide' or 'precede', found {_describe(kw)}")
                self.take()
                i, ti = self.integer()
                j, tj = self.integer()
                self.expect(";")
                (coincide if kw.text == "coincide" else precede).append((i, j, ti, tj))
            except _Fail as fail:
                self.report(fail)
                self.sync(in_block=True)
        self.expect("}")
        self.expect(";")
        self.levels.append((name, name_tok, coincide, precede))

    def clock_stmt(self, head: _Token) -> None:
        name, name_tok = self.name()
        self.expect("@")
        level, level_tok = self.name()
        self.expect("=")
        self.expect("{")
        ticks: list[tuple[int, _Token]] = []
        if self.peek().kind == "int":
            ticks.append(self.integer())
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.take()
                ticks.append(self.integer())
        self.expect("}")
        self.expect(";")
        self.clocks.append((name, name_tok, level, level_tok, ticks))

    def assert_stmt(self, head: _Token) -> None:
        kw = self.peek()
        try:
            kind = ClaimKind(kw.text) if kw.kind == "word" else None
        except ValueError:
            kind = None
        if kind is None:
            raise _Fail(kw, f"unknown claim {_describe(kw)}")
        self.take()
        operands = [self.name() for _ in range(ARITY[kind])]
        self.expect(";")
        self.claims.append((kind, operands, kw))


def _resolve(p: _Parser, diags: list[ParseDiagnostic]) -> SpecDocument | None:
    def err(tok: _Token, msg: str, kind: DiagnosticKind) -> None:
        diags.append(ParseDiagnostic(tok.line, tok.column, msg, kind))

    universe = None
    if not p.universe:
        err(_Token("eof", "", 1, 1), "universe missing", DiagnosticKind.SYNTAX)
    else:
        universe, tok = p.universe[0]
        for _, dup in p.universe[1:]:
            err(dup, "universe declared more than once", DiagnosticKind.SYNTAX)
        if universe < 1:
            err(tok, f"universe must hold at least one instant, got {universe}", DiagnosticKind.RANGE)
            universe = None
        elif universe > MAX_UNIVERSE:
            err(tok, f"universe capped at {MAX_UNIVERSE} instants, got {universe}", DiagnosticKind.RANGE)
            universe = None

    def in_range(value: int, tok: _Token) -> bool:
        if universe is not None and value >= universe:
            err(tok, f"instant {value} outside universe 0..{universe - 1}", DiagnosticKind.RANGE)
            return False
        return True

    levels: dict[str, LevelDecl] = {}
    for name, tok, coincide, precede in p.levels:
        if name in levels:
            err(tok, f"level {name!r} declared more than once", DiagnosticKind.RESOLUTION)
            continue
        rels = []
        for entries in (coincide, precede):
            keep = set()
            for i, j, ti, tj in entries:
                ok_i, ok_j = in_range(i, ti), in_range(j, tj)
                if ok_i and ok_j:
                    keep.add((i, j))
            rels.append(frozenset(keep))
        levels[name] = LevelDecl(name, rels[0], rels[1])

    clocks: dict[str, ClockDecl] = {}
    for name, tok, level, level_tok, ticks in p.clocks:
        if name in clocks:
            err(tok, f"clock {name!r} declared more than once", DiagnosticKind.RESOLUTION)
            continue
        if level not in levels:
            err(level_tok, f"unknown level {level!r}", DiagnosticKind.RESOLUTION)
        kept = frozenset(t for t, ttok in ticks if in_range(t, ttok))
        clocks[name] = ClockDecl(name, level, kept)

    claims = []
    for kind, operands, kw in p.claims:
        bad = False
        if kind in (ClaimKind.SPO, ClaimKind.REFINES):
            for name, tok in operands:
                if name not in levels:
                    err(tok, f"unknown level {name!r}", DiagnosticKind.RESOLUTION)
                    bad = True
        else:
            for name, tok in operands:
                if name not in clocks:
                    err(tok, f"unknown clock {name!r}", DiagnosticKind.RESOLUTION)
                    bad = True
            if not bad:
                groups = {
                    ClaimKind.SUBCLOCK: [(0, 1)],
                    ClaimKind.UNION: [(0, 1, 2)],
                    ClaimKind.CLOCK_REFINES: [],
                    ClaimKind.PRESERVE_SUBCLOCK: [(0, 1), (2, 3)],
                    ClaimKind.PRESERVE_UNION: [(0, 1, 2)],
                }[kind]
                for group in groups:
                    lv = {clocks[operands[k][0]].level for k in group}
                    if len(lv) > 1:
                        err(
                            operands[group[-1]][1],
                            f"clocks {', '.join(operands[k][0] for k in group)} "
                            "must live on one level",
                            DiagnosticKind.RESOLUTION,
                        )
                        bad = True
        if not bad:
            claims.append(Claim(kind, tuple(name for name, _ in operands)))

    if diags:
        return None
    return SpecDocument(universe, levels, clocks, tuple(claims))


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    start = text.rfind("\n", 0, index) + 1
    return line, index - start + 1


def parse(source: str | bytes) -> SpecDocument:
    """Parse a ``.chrono`` source; raise :class:`SpecParseError` carrying every diagnostic."""
    diags: list[ParseDiagnostic] = []
    if isinstance(source, (bytes, bytearray)):
        try:
            text = bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            text = bytes(source).decode("utf-8", errors="replace")
            prefix = bytes(source)[: exc.start].decode("utf-8", errors="replace")
            line, col = _position(prefix + "x", len(prefix))
            diags.append(ParseDiagnostic(line, col, "input is not valid UTF-8", DiagnosticKind.SYNTAX))
    else:
        text = source
    tokens = _lex(text)
    p = _Parser(tokens, diags)
    p.parse()
    doc = _resolve(p, diags)
    if diags:
        diags.sort(key=lambda d: (d.line, d.column))
        raise SpecParseError(diags)
    return doc


def parse_file(path) -> SpecDocument:
    with open(path, "rb") as fh:
        return parse(fh.read())


def _pairs(pairs) -> list[Pair]:
    return sorted(pairs)


def serialize(doc: SpecDocument) -> str:
    """Canonical text: levels and clocks sorted by name, pairs lexicographic.

    Claims keep their order since they are evaluated in sequence.
    """
    out = [f"universe {doc.universe};", ""]
    for name in sorted(doc.levels):
        decl = doc.levels[name]
        out.append(f"level {name} {{")
        out += [f"  coincide {i} {j};" for i, j in _pairs(decl.coincide)]
        out += [f"  precede {i} {j};" for i, j in _pairs(decl.precede)]
        out += ["};", ""]
    if doc.clocks:
        for name in sorted(doc.clocks):
            decl = doc.clocks[name]
            ticks = ", ".join(str(t) for t in sorted(decl.ticks))
            out.append(f"clock {name} @ {decl.level} = {{{ticks}}};")
        out.append("")
    for claim in doc.claims:
        out.append(f"assert {claim};")
    return "\n".join(out).rstrip("\n") + "\n"
