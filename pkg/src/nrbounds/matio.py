"""Reading and writing dense complex matrices.

Two formats:

* JSON: ``{"rows": R, "cols": C, "data": [[re, im], ...]}``, row-major.
* Matrix Market: ``array`` and ``coordinate`` layouts with ``real``,
  ``integer``, ``complex`` or ``pattern`` fields and ``general``,
  ``symmetric``, ``hermitian`` or ``skew-symmetric`` symmetry.
  Coordinate files are densified.

Writers emit shortest round-trip float text, so write-then-read is exact.
"""

import json
import math
import os

import numpy as np

from .errors import DimensionMismatch, ParseError

FORMATS = ("json", "matrix-market")


def guess_format(path) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    return "matrix-market" if ext in (".mtx", ".mm") else "json"


def read_matrix(path, fmt: str = None) -> np.ndarray:
    fmt = fmt or guess_format(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "json":
        return parse_json(text)
    if fmt == "matrix-market":
        return parse_matrix_market(text)
    raise ValueError(f"unknown matrix format {fmt!r}")


def write_matrix(path, a, fmt: str = None) -> None:
    fmt = fmt or guess_format(path)
    text = dump_json(a) if fmt == "json" else dump_matrix_market(a)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# JSON ------------------------------------------------------------------

def parse_json(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(data, list):
        raise ParseError("data must be a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise DimensionMismatch(f"expected {rows * cols} entries, got {len(data)}")
    vals = np.empty(rows * cols, dtype=complex)
    for i, e in enumerate(data):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"entry {i} is not an [re, im] pair of numbers")
        if not (math.isfinite(e[0]) and math.isfinite(e[1])):
            raise ParseError(f"entry {i} is not finite")
        vals[i] = complex(e[0], e[1])
    return vals.reshape(rows, cols)


def dump_json(a) -> str:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    data = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return json.dumps({"rows": m.shape[0], "cols": m.shape[1], "data": data}) + "\n"


# Matrix Market ---------------------------------------------------------

_FIELDS = ("real", "integer", "complex", "pattern")
_SYMM = ("general", "symmetric", "hermitian", "skew-symmetric")


def _tokens(lines, start):
    """Yield ``(lineno, tokens)`` for non-comment, non-blank lines."""
    for no, line in enumerate(lines[start:], start + 1):
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        yield no, s.split()


def _number(tok, no, col):
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"bad number {tok!r}", no, col) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite number {tok!r}", no, col)
    return x


def _columns(line):
    cols, pos = [], 0
    for tok in line.split():
        pos = line.index(tok, pos)
        cols.append(pos + 1)
        pos += len(tok)
    return cols


def parse_matrix_market(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError("missing %%MatrixMarket header", 1, 1)
    head = lines[0].lower().split()
    if len(head) != 5 or head[1] != "matrix":
        raise ParseError("header must read '%%MatrixMarket matrix LAYOUT FIELD SYMMETRY'", 1, 1)
    layout, field, symm = head[2:]
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unknown layout {layout!r}", 1, lines[0].lower().index(layout) + 1)
    if field not in _FIELDS or (field == "pattern" and layout == "array"):
        raise ParseError(f"unsupported field {field!r}", 1, lines[0].lower().index(field) + 1)
    if symm not in _SYMM:
        raise ParseError(f"unknown symmetry {symm!r}", 1, lines[0].lower().rindex(symm) + 1)

    body = _tokens(lines, 1)
    try:
        no, size = next(body)
    except StopIteration:
        raise ParseError("missing size line", len(lines) + 1) from None
    want = 2 if layout == "array" else 3
    if len(size) != want:
        raise ParseError(f"size line needs {want} integers", no, 1)
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError("size line must contain integers", no, 1) from None
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise DimensionMismatch("matrix dimensions must be positive", no, 1)
    if symm != "general" and rows != cols:
        raise DimensionMismatch(f"{symm} matrix must be square", no, 1)

    per = 2 if field == "complex" else (0 if field == "pattern" else 1)
    m = np.zeros((rows, cols), dtype=complex)

    def value(toks, offset, no, line_cols):
        if per == 0:
            return 1.0
        re = _number(toks[offset], no, line_cols[offset])
        im = _number(toks[offset + 1], no, line_cols[offset + 1]) if per == 2 else 0.0
        return complex(re, im)

    def put(i, j, v):
        m[i, j] = v
        if i != j:
            if symm == "symmetric":
                m[j, i] = v
            elif symm == "hermitian":
                m[j, i] = np.conj(v)
            elif symm == "skew-symmetric":
                m[j, i] = -v

    if layout == "array":
        # column-major; non-general files store the lower triangle only
        slots = [(i, j) for j in range(cols) for i in range(rows)
                 if symm == "general" or i > j or (i == j and symm != "skew-symmetric")]
        k = 0
        for no, toks in body:
            if k >= len(slots):
                raise DimensionMismatch(f"more than {len(slots)} entries", no, 1)
            if len(toks) != per:
                raise ParseError(f"expected {per} value(s) per line", no, 1)
            put(*slots[k], value(toks, 0, no, _columns(lines[no - 1])))
            k += 1
        if k != len(slots):
            raise DimensionMismatch(f"expected {len(slots)} entries, got {k}", len(lines))
        return m

    nnz = dims[2]
    k = 0
    for no, toks in body:
        if k >= nnz:
            raise DimensionMismatch(f"more than {nnz} entries", no, 1)
        if len(toks) != 2 + per:
            raise ParseError(f"expected {2 + per} fields per entry", no, 1)
        lc = _columns(lines[no - 1])
        try:
            i, j = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("row/column indices must be integers", no, 1) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise DimensionMismatch(f"index ({i}, {j}) outside {rows} x {cols}", no, lc[0])
        put(i - 1, j - 1, value(toks, 2, no, lc))
        k += 1
    if k != nnz:
        raise DimensionMismatch(f"expected {nnz} entries, got {k}", len(lines))
    return m


def dump_matrix_market(a) -> str:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    out = ["%%MatrixMarket matrix array complex general", f"{m.shape[0]} {m.shape[1]}"]
    for z in m.T.ravel():
        out.append(f"{float(z.real)!r} {float(z.imag)!r}")
    return "\n".join(out) + "\n"
