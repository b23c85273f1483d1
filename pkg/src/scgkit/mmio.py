"""Matrix Market coordinate reader and writer (real general/symmetric only)."""

from __future__ import annotations

import io
import os
from typing import BinaryIO, TextIO, Union

import numpy as np

from .errors import MatrixMarketError, UnsupportedFormatError
from .sparse import SparseMatrix

Source = Union[str, os.PathLike, bytes, BinaryIO, TextIO]


def _lines(source: Source):
    if isinstance(source, bytes):
        return io.StringIO(source.decode("ascii")), True
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="ascii"), True
    if isinstance(source, io.TextIOBase):
        return source, False
    return io.StringIO(source.read().decode("ascii")), True


def read_matrix_market(source: Source) -> SparseMatrix:
    """Parse a ``matrix coordinate real {general,symmetric}`` file.

    ``source`` may be a path, raw bytes, or an open binary/text stream.
    Indices are converted to 0-based, symmetric storage is expanded and
    duplicate entries are summed.
    """
    fh, owned = _lines(source)
    try:
        return _parse(fh)
    finally:
        if owned:
            fh.close()


def _parse(fh) -> SparseMatrix:
    header = fh.readline()
    lineno = 1
    tokens = header.strip().split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("missing %%MatrixMarket header", lineno)
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise UnsupportedFormatError(f"object '{obj}' not supported", lineno)
    if fmt != "coordinate":
        raise UnsupportedFormatError(f"format '{fmt}' not supported", lineno)
    if field != "real":
        raise UnsupportedFormatError(f"field '{field}' not supported", lineno)
    if symmetry not in ("general", "symmetric"):
        raise UnsupportedFormatError(f"symmetry '{symmetry}' not supported", lineno)

    size = None
    for line in fh:
        lineno += 1
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        size = s.split()
        break
    if size is None:
        raise MatrixMarketError("missing size line", lineno)
    try:
        nrows, ncols, nnz = (int(t) for t in size)
    except ValueError:
        raise MatrixMarketError("size line must hold three integers", lineno) from None
    if nrows < 0 or ncols < 0 or nnz < 0:
        raise MatrixMarketError("negative dimension", lineno)

    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    vals = np.empty(nnz)
    k = 0
    for line in fh:
        lineno += 1
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        if k >= nnz:
            raise MatrixMarketError("more entries than declared", lineno)
        parts = s.split()
        if len(parts) != 3:
            raise MatrixMarketError("expected 'row col value'", lineno)
        try:
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise MatrixMarketError(f"cannot parse entry '{s}'", lineno) from None
        if not (1 <= i <= nrows and 1 <= j <= ncols):
            raise MatrixMarketError(f"index ({i}, {j}) out of range", lineno)
        rows[k], cols[k], vals[k] = i - 1, j - 1, v
        k += 1
    if k != nnz:
        raise MatrixMarketError(f"expected {nnz} entries, found {k}", lineno)

    if symmetry == "symmetric":
        off = rows != cols
        rows, cols, vals = (
            np.concatenate([rows, cols[off]]),
            np.concatenate([cols, rows[off]]),
            np.concatenate([vals, vals[off]]),
        )
    return SparseMatrix.from_coo(rows, cols, vals, (nrows, ncols))


def write_matrix_market(a: SparseMatrix, dest=None, comment: str | None = None) -> bytes | None:
    """Write ``a`` as ``coordinate real general``.

    Values are printed with 17 significant digits so a read gives back the
    same floats. Returns the bytes when ``dest`` is None.
    """
    out = io.StringIO()
    out.write("%%MatrixMarket matrix coordinate real general\n")
    if comment:
        for c in comment.splitlines():
            out.write(f"% {c}\n")
    out.write(f"{a.nrows} {a.ncols} {a.nnz}\n")
    counts = np.diff(a.row_offsets)
    rows = np.repeat(np.arange(a.nrows), counts)
    for i, j, v in zip(rows, a.col_indices, a.values):
        out.write(f"{i + 1} {j + 1} {v:.17g}\n")
    data = out.getvalue().encode("ascii")
    if dest is None:
        return data
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "wb") as f:
            f.write(data)
    else:
        dest.write(data)
    return None
