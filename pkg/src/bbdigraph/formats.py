"""The BBD text format.

::

    a 2
    10
    01

    10
    01

Line 1 is the header, then ``a`` rows of the x->y matrix, an empty line, and
``a`` rows of the y->x matrix.  Every line, including the last, ends in ``\\n``.
"""

from __future__ import annotations

import re

from .core import BalancedBipartiteDigraph
from .errors import ParseError

_HEADER_RE = re.compile(r"a ([1-9][0-9]*)")
_ROW_RE = re.compile(r"[01]*")


def render_bbd(D: BalancedBipartiteDigraph) -> str:
    a = D.a
    lines = [f"a {a}"]
    lines += ["".join("1" if r >> j & 1 else "0" for j in range(a)) for r in D.rows1]
    lines.append("")
    lines += ["".join("1" if r >> j & 1 else "0" for j in range(a)) for r in D.rows2]
    return "\n".join(lines) + "\n"


def parse_bbd(text: str) -> BalancedBipartiteDigraph:
    if not text.endswith("\n"):
        raise ParseError(max(1, text.count("\n") + 1), "missing trailing newline")
    lines = text[:-1].split("\n")
    m = _HEADER_RE.fullmatch(lines[0])
    if not m:
        raise ParseError(1, f"expected header 'a <integer>', got {lines[0]!r}")
    a = int(m.group(1))
    expected = 2 * a + 2
    rows1, rows2 = [], []
    for lineno, line in enumerate(lines[:expected], start=1):
        if lineno == 1:
            continue
        if lineno == a + 2:
            if line:
                raise ParseError(lineno, "expected an empty separator line")
            continue
        if not _ROW_RE.fullmatch(line):
            bad = next(c for c in line if c not in "01")
            raise ParseError(lineno, f"illegal character {bad!r}")
        if len(line) != a:
            raise ParseError(lineno, f"row has {len(line)} entries, expected {a}")
        row = sum(1 << j for j, c in enumerate(line) if c == "1")
        (rows1 if lineno <= a + 1 else rows2).append(row)
    if len(lines) < expected:
        raise ParseError(len(lines) + 1, f"expected {expected} lines, input ends early")
    if len(lines) > expected:
        raise ParseError(expected + 1, "unexpected content after the last row")
    return BalancedBipartiteDigraph.from_rows(a, rows1, rows2)
