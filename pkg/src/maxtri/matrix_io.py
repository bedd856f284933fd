"""Plain-text matrix files.

Grammar: the order n, then n*n nonnegative decimals in row-major order, all
separated by whitespace.  ``#`` starts a comment running to end of line.
Serialization writes the shortest decimal that round-trips each float.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .core import MaxMatrix
from .errors import ParseError

_DECIMAL = re.compile(r"\+?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_INTEGER = re.compile(r"\+?\d+")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", line):
            yield m.group(), lineno, m.start() + 1


def parse_matrix(data: str | bytes) -> MaxMatrix:
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"non-ASCII byte at offset {exc.start}") from None
    toks = list(_tokens(data))
    if not toks:
        raise ParseError("empty input: expected matrix order")
    head, line, col = toks[0]
    if not _INTEGER.fullmatch(head):
        raise ParseError(f"matrix order must be a positive integer, got {head!r}", line, col)
    n = int(head)
    if n < 1:
        raise ParseError(f"matrix order must be at least 1, got {n}", line, col)
    body = toks[1:]
    if len(body) != n * n:
        where = body[n * n] if len(body) > n * n else (toks[-1] if body else toks[0])
        raise ParseError(f"expected {n * n} entries for order {n}, found {len(body)}", where[1], where[2])
    values = np.empty(n * n)
    for k, (tok, line, col) in enumerate(body):
        if tok.startswith("-"):
            raise ParseError(f"negative entry {tok!r}", line, col)
        if not _DECIMAL.fullmatch(tok):
            raise ParseError(f"not a finite nonnegative decimal: {tok!r}", line, col)
        x = float(tok)
        if not math.isfinite(x):
            raise ParseError(f"entry overflows to infinity: {tok!r}", line, col)
        values[k] = x
    return MaxMatrix(values.reshape(n, n))


def serialize_matrix(A: MaxMatrix) -> str:
    lines = [str(A.n)]
    lines.extend(" ".join(repr(float(x)) for x in row) for row in A.array)
    return "\n".join(lines) + "\n"


def load_matrix(path: str | Path) -> MaxMatrix:
    return parse_matrix(Path(path).read_bytes())


def save_matrix(A: MaxMatrix, path: str | Path) -> None:
    Path(path).write_text(serialize_matrix(A), encoding="ascii")
