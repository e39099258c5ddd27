"""Parsers for the network and reference-trajectory text formats.

Network file: `#` starts a comment anywhere on a line; blank lines are
ignored.  Three key-value lines declare the dimensions, then the two matrix
sections list 1-based column indices (values may continue onto following
lines until the expected count is reached)::

    # 6 states, 2 inputs, 2 outputs
    N 6
    M 2
    P 2
    L: 2 2 4 5 5 5  4 3 1 2 6 5
    H: 1 1 2 1 2 1

The `L:` row concatenates the per-input transition blocks, input 1 first.

Trajectory file: an optional line `periodic`, then `T <int>`, then `y:`
followed by exactly T output indices::

    periodic
    T 3
    y: 1 1 2
"""

from __future__ import annotations

import warnings
from pathlib import Path

from .finite import ReferenceTrajectory
from .network import Bcn
from .periodic import PeriodicReference
from .stp import LogicalMatrix


class ParseError(ValueError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _logical_lines(text: str):
    """Yield (line_number, tokens) with comments stripped and blanks skipped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {token!r}", line) from None


class _Sections:
    """Shared walk over key-value lines and multi-line integer sections."""

    def __init__(self, text: str):
        self.lines = list(_logical_lines(text))
        self.pos = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.lines)

    def peek(self):
        return self.lines[self.pos]

    def take(self):
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def take_scalar(self, key: str) -> int:
        if self.at_end():
            raise ParseError(f"missing `{key}` line")
        number, tokens = self.take()
        if tokens[0] != key or len(tokens) != 2:
            raise ParseError(f"expected `{key} <int>`, got {' '.join(tokens)!r}", number)
        value = _parse_int(tokens[1], key, number)
        if value < 1:
            raise ParseError(f"{key} must be >= 1, got {value}", number)
        return value

    def take_section(self, key: str, count: int) -> list[int]:
        """Read `key:` followed by exactly ``count`` integers, possibly spanning
        several lines."""
        if self.at_end():
            raise ParseError(f"missing `{key}:` section")
        number, tokens = self.take()
        if tokens[0] != f"{key}:":
            raise ParseError(f"expected `{key}:` section, got {' '.join(tokens)!r}", number)
        values = [_parse_int(t, key, number) for t in tokens[1:]]
        while len(values) < count and not self.at_end():
            nxt_number, nxt_tokens = self.peek()
            if nxt_tokens[0].endswith(":") or nxt_tokens[0] in ("N", "M", "P", "T"):
                break
            self.take()
            values.extend(_parse_int(t, key, nxt_number) for t in nxt_tokens)
            number = nxt_number
        if len(values) != count:
            raise ParseError(
                f"{key}: expected {count} values, got {len(values)}", number
            )
        return values


def parse_network(text: str) -> Bcn:
    """Build a network from the text format; warns on non-power-of-two sizes."""
    sections = _Sections(text)
    n = sections.take_scalar("N")
    m = sections.take_scalar("M")
    p = sections.take_scalar("P")
    transition_cols = sections.take_section("L", n * m)
    output_cols = sections.take_section("H", n)
    if not sections.at_end():
        number, tokens = sections.peek()
        raise ParseError(f"unexpected trailing content {' '.join(tokens)!r}", number)
    for name, value in (("N", n), ("M", m), ("P", p)):
        if value & (value - 1):
            warnings.warn(
                f"{name} = {value} is not a power of two; the algebraic form "
                f"usually encodes 2^k values",
                stacklevel=2,
            )
    try:
        return Bcn(LogicalMatrix(n, transition_cols), LogicalMatrix(p, output_cols))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_reference(text: str) -> ReferenceTrajectory | PeriodicReference:
    """Build a finite or periodic reference from the text format."""
    sections = _Sections(text)
    periodic = False
    if not sections.at_end() and sections.peek()[1] == ["periodic"]:
        sections.take()
        periodic = True
    horizon = sections.take_scalar("T")
    outputs = sections.take_section("y", horizon)
    if not sections.at_end():
        number, tokens = sections.peek()
        raise ParseError(f"unexpected trailing content {' '.join(tokens)!r}", number)
    try:
        if periodic:
            return PeriodicReference(tuple(outputs))
        return ReferenceTrajectory(tuple(outputs))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_network(path: str | Path) -> Bcn:
    return parse_network(Path(path).read_text())


def load_reference(path: str | Path) -> ReferenceTrajectory | PeriodicReference:
    return parse_reference(Path(path).read_text())
