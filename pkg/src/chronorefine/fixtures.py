"""Bundled example specifications."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .dsl import SpecDocument, parse
from .runner import Expectation, parse_expectations

FIXTURES = {
    "morning": "morning.chrono",
    "light": "light.chrono",
    "mod5_k3": "mod5_k3.chrono",
    "broken_embodiment": "broken_embodiment.chrono",
}
# companion files holding expected pair classifications
EXPECTATIONS = {"morning": "morning.expected"}


def _files():
    return resources.files("chronorefine").joinpath("fixtures")


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return _files().joinpath(FIXTURES[name]).read_text(encoding="utf-8")


def load_fixture(name: str) -> SpecDocument:
    return parse(fixture_text(name))


def fixture_expectations(name: str) -> list[Expectation]:
    if name not in EXPECTATIONS:
        return []
    return parse_expectations(_files().joinpath(EXPECTATIONS[name]).read_text(encoding="utf-8"))


def emit_fixture(name: str, out_dir) -> list[Path]:
    """Copy a fixture (and its expectation file, if any) into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fname in (FIXTURES[name], EXPECTATIONS.get(name)):
        if fname is None:
            continue
        target = out_dir / fname
        target.write_text(_files().joinpath(fname).read_text(encoding="utf-8"), encoding="utf-8")
        written.append(target)
    return written
