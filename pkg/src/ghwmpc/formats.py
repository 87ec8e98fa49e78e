"""Text formats for codes and matrices.

Both share one grammar::

    # comments run to end of line
    q 3^1
    rows 2 cols 8
    -1 0 1 1 -1 1 -1 0
     1 1 0 1 -1 -1 -1 -1

Entries are integer encodings of field elements; over prime fields negative
literals are read mod p.  A code file is a matrix file whose rows generate
the code (any rank; it is canonicalized on load).
"""

from __future__ import annotations

import hashlib
from importlib import resources
from pathlib import Path

from .codes import LinearCode, code_from_generator
from .families import parse_family, parse_q
from .gfield import Field
from .linalg import Matrix


class FormatError(ValueError):
    pass


def _tokens(text: str) -> list[list[str]]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    return lines


def parse_matrix(text: str, source: str = "<text>") -> Matrix:
    lines = _tokens(text)
    try:
        head = lines[0]
        if len(head) != 2 or head[0] != "q":
            raise FormatError(f"{source}: expected 'q <p>^<m>' header, got {' '.join(head)!r}")
        F = parse_q(head[1])
        shape = lines[1]
        if len(shape) != 4 or shape[0] != "rows" or shape[2] != "cols":
            raise FormatError(f"{source}: expected 'rows <k> cols <n>', got {' '.join(shape)!r}")
        nrows, ncols = int(shape[1]), int(shape[3])
        body = lines[2:]
        if len(body) != nrows:
            raise FormatError(f"{source}: header says {nrows} rows, found {len(body)}")
        rows = []
        for i, row in enumerate(body):
            if len(row) != ncols:
                raise FormatError(f"{source}: row {i + 1} has {len(row)} entries, expected {ncols}")
            rows.append([F.element(int(x)) for x in row])
    except FormatError:
        raise
    except (IndexError, ValueError) as exc:
        raise FormatError(f"{source}: {exc or 'truncated file'}") from None
    return Matrix.from_rows(F, rows, ncols)


def format_matrix(M: Matrix) -> str:
    F = M.field
    lines = [f"q {F.p}^{F.m}", f"rows {M.nrows} cols {M.ncols}"]
    lines += [" ".join(str(x) for x in r) for r in M.rows]
    return "\n".join(lines) + "\n"


def parse_code(text: str, source: str = "<text>") -> LinearCode:
    M = parse_matrix(text, source)
    return code_from_generator(M.field, M)


def format_code(C: LinearCode) -> str:
    return format_matrix(C.gen)


def read_matrix(path: str | Path) -> Matrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text, str(path))


def read_code(path: str | Path) -> LinearCode:
    M = read_matrix(path)
    return code_from_generator(M.field, M)


def write_code(C: LinearCode, path: str | Path) -> None:
    Path(path).write_text(format_code(C))


def load_code_source(source: str) -> LinearCode:
    """A path to a code file, or a family literal such as ``rs:q=4,n=4,k=2``."""
    if source.startswith(("rs:", "rm:")):
        try:
            return parse_family(source).build()
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    return read_code(source)


def fixture_text(name: str) -> str:
    return resources.files("ghwmpc.data").joinpath(name).read_text()


def fixture_code(name: str) -> LinearCode:
    return parse_code(fixture_text(name), name)


def fixture_matrix(name: str) -> Matrix:
    return parse_matrix(fixture_text(name), name)


def digest(*items: LinearCode | Matrix | str) -> str:
    h = hashlib.sha256()
    for it in items:
        if isinstance(it, LinearCode):
            it = format_code(it)
        elif isinstance(it, Matrix):
            it = format_matrix(it)
        h.update(it.encode())
        h.update(b"\0")
    return h.hexdigest()[:12]


def field_of(M: Matrix | LinearCode) -> Field:
    return M.field
