"""The .pmx text format for partial matrices.

One row per line over the alphabet 0, 1, *; the j-th character is
column j.  '#' starts a comment, blank lines are skipped, and all rows
must have equal length.
"""

from __future__ import annotations

from .errors import ParseError
from .partial import PartialMatrix

_ALPHABET = {"0", "1", "*"}


def parse_pmx(text: str) -> PartialMatrix:
    """Parse .pmx text; errors carry the line and column at fault."""
    rows: list[tuple[int, int]] = []
    width = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line:
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in _ALPHABET:
                raise ParseError(f"illegal character {ch!r}", line_no, col)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ParseError(
                f"row of length {len(line)}, expected {width}",
                line_no,
                min(len(line), width) + 1,
            )
        a = s = 0
        for j, ch in enumerate(line):
            if ch == "1":
                a |= 1 << j
            elif ch == "*":
                s |= 1 << j
        rows.append((a, s))
    if width is None:
        raise ParseError("no matrix rows found", 1, 1)
    return PartialMatrix(width, tuple(r[0] for r in rows), tuple(r[1] for r in rows))


def row_text(a: int, s: int, n: int) -> str:
    chars = []
    for j in range(n):
        if (s >> j) & 1:
            chars.append("*")
        elif (a >> j) & 1:
            chars.append("1")
        else:
            chars.append("0")
    return "".join(chars)


def emit_pmx(A: PartialMatrix) -> str:
    """Serialize a matrix; parse_pmx(emit_pmx(A)) == A."""
    return "\n".join(row_text(a, s, A.n) for a, s in zip(A.ones, A.stars)) + "\n"


def compact(A: PartialMatrix) -> str:
    """One-line form with rows joined by '/', for log records."""
    return "/".join(row_text(a, s, A.n) for a, s in zip(A.ones, A.stars))
