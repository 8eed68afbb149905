"""Exact rational scalars and matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive denominator).
Matrices are immutable row-major grids of fractions; elimination is done
fraction-free (Bareiss) on integer-scaled rows with first-nonzero pivoting.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch, ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text, path=""):
    """Parse ``"p"`` or ``"p/q"``; ints are accepted as-is. Floats are rejected."""
    if isinstance(text, bool):
        raise ParseError(f"expected rational string, got {text!r}", path)
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {text!r}", path)
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", path)
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", path)
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return parse_rational(x)
    raise TypeError(f"cannot use {x!r} as an exact rational")


class RatMatrix:
    """Immutable ``rows x cols`` matrix of fractions."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, entries, rows=None, cols=None):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"ragged or mis-sized matrix data for shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def zeros(cls, rows, cols):
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n):
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def scalar(cls, x):
        return cls._raw(((_as_fraction(x),),), 1, 1)

    @classmethod
    def column(cls, values):
        vals = [_as_fraction(v) for v in values]
        return cls._raw(tuple((v,) for v in vals), len(vals), 1)

    @classmethod
    def row(cls, values):
        vals = tuple(_as_fraction(v) for v in values)
        return cls._raw((vals,), 1, len(vals))

    @classmethod
    def permutation(cls, perm):
        """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        one, z = Fraction(1), Fraction(0)
        grid = [[z] * n for _ in range(n)]
        for j, i in enumerate(perm):
            grid[i][j] = one
        return cls._raw(tuple(tuple(r) for r in grid), n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def tolist(self):
        return [list(r) for r in self._data]

    def row_tuple(self, i):
        return self._data[i]

    def col_tuple(self, j):
        return tuple(r[j] for r in self._data)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                    for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return RatMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                    for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _as_fraction(c)
        return RatMatrix._raw(tuple(tuple(c * a for a in r) for r in self._data),
                              self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        z = Fraction(0)
        out = []
        for r in self._data:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), z) for c in cols))
        return RatMatrix._raw(tuple(out), self.rows, other.cols)

    def apply(self, vector):
        """Multiply by a plain sequence of fractions, returning a tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.shape} matrix")
        z = Fraction(0)
        return tuple(sum((a * b for a, b in zip(r, vector) if a and b), z) for r in self._data)

    @property
    def T(self):
        if self.rows == 0:
            return RatMatrix.zeros(self.cols, 0)
        return RatMatrix._raw(tuple(zip(*self._data)), self.cols, self.rows)

    def kron(self, other):
        data = []
        for r in self._data:
            for s in other._data:
                data.append(tuple(a * b for a in r for b in s))
        return RatMatrix._raw(tuple(data), self.rows * other.rows, self.cols * other.cols)

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatch(f"trace of non-square {self.shape} matrix")
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self):
        return all(not a for r in self._data for a in r)

    def is_identity(self):
        return self.rows == self.cols and self == RatMatrix.identity(self.rows)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch(f"hstack of {self.shape} and {other.shape}")
        return RatMatrix._raw(tuple(r + s for r, s in zip(self._data, other._data)),
                              self.rows, self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch(f"vstack of {self.shape} and {other.shape}")
        return RatMatrix._raw(self._data + other._data, self.rows + other.rows, self.cols)

    def submatrix(self, row_idx, col_idx):
        return RatMatrix._raw(tuple(tuple(self._data[i][j] for j in col_idx) for i in row_idx),
                              len(row_idx), len(col_idx))

    def reshape(self, rows, cols):
        flat = [a for r in self._data for a in r]
        if len(flat) != rows * cols:
            raise DimensionMismatch(f"cannot reshape {self.shape} to {(rows, cols)}")
        return RatMatrix._raw(tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)),
                              rows, cols)

    # elimination

    def rank(self):
        return len(_echelon(self)[1])

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        return _rref(self)

    def kernel(self):
        """Kernel basis as the columns of a ``cols x nullity`` matrix."""
        return rref_rank_kernel(self)[1]

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch(f"inverse of non-square {self.shape} matrix")
        n = self.rows
        rref, pivots = _rref(self.hstack(RatMatrix.identity(n)))
        if pivots[:n] != list(range(n)):
            raise DimensionMismatch("matrix is singular")
        return rref.submatrix(range(n), range(n, 2 * n))

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def to_json(self):
        return [[format_rational(a) for a in r] for r in self._data]

    @classmethod
    def from_json(cls, value, path="", rows=None, cols=None):
        if not isinstance(value, list):
            raise ParseError("matrix must be an array of rows", path)
        grid = []
        for i, r in enumerate(value):
            if not isinstance(r, list):
                raise ParseError("matrix row must be an array", f"{path}[{i}]")
            grid.append([parse_rational(a, f"{path}[{i}][{j}]") for j, a in enumerate(r)])
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ParseError(f"matrix is not {rows}x{cols}", path)
        return cls._raw(tuple(tuple(r) for r in grid), rows, cols)


def block_diagonal(blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = Fraction(0)
    grid = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            grid[r0 + i][c0:c0 + b.cols] = b.row_tuple(i)
        r0 += b.rows
        c0 += b.cols
    return RatMatrix._raw(tuple(tuple(r) for r in grid), rows, cols)


def _integer_rows(m):
    out = []
    for r in m._data:
        d = lcm(*(a.denominator for a in r)) if r else 1
        out.append([a.numerator * (d // a.denominator) for a in r])
    return out


def _bareiss(rows, ncols):
    """Fraction-free forward elimination in place; returns pivot columns."""
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - lead * prow[j]) // prev
            row[c] = 0
        # rows above r keep their values; rows below are now scaled by piv/prev
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _echelon(m):
    rows = _integer_rows(m)
    pivots = _bareiss(rows, m.cols)
    return rows, pivots


def _rref(m):
    rows, pivots = _echelon(m)
    frac = [[Fraction(a) for a in row] for row in rows[:len(pivots)]]
    for k, c in enumerate(pivots):
        piv = frac[k][c]
        frac[k] = [a / piv for a in frac[k]]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        pr = frac[k]
        for i in range(k):
            f = frac[i][c]
            if f:
                frac[i] = [a - f * b for a, b in zip(frac[i], pr)]
    z = Fraction(0)
    frac.extend([[z] * m.cols for _ in range(m.rows - len(pivots))])
    return RatMatrix._raw(tuple(tuple(r) for r in frac), m.rows, m.cols), pivots


class Solver:
    """Solves ``M x = b`` exactly; returns ``None`` for inconsistent systems.

    A vector right-hand side gives a tuple, a matrix right-hand side a matrix.
    """

    def __init__(self, matrix):
        self.matrix = matrix

    def solve(self, b):
        m = self.matrix
        if isinstance(b, RatMatrix):
            return self._solve_many(b)
        b = tuple(_as_fraction(x) for x in b)
        if len(b) != m.rows:
            raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.shape} system")
        aug = m.hstack(RatMatrix.column(b)) if m.rows else RatMatrix.zeros(0, m.cols + 1)
        rref, pivots = _rref(aug)
        if pivots and pivots[-1] == m.cols:
            return None
        x = [Fraction(0)] * m.cols
        for k, c in enumerate(pivots):
            x[c] = rref[k, m.cols]
        return tuple(x)

    def _solve_many(self, b):
        if b.rows != self.matrix.rows:
            raise DimensionMismatch(f"right-hand side {b.shape} for {self.matrix.shape} system")
        cols = []
        for j in range(b.cols):
            x = self.solve(b.col_tuple(j))
            if x is None:
                return None
            cols.append(x)
        if not cols:
            return RatMatrix.zeros(self.matrix.cols, 0)
        return RatMatrix(list(zip(*cols)), self.matrix.cols, len(cols))


def rref_rank_kernel(m):
    """Return ``(rank, kernel basis as columns, Solver)`` for ``m``."""
    rref, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -rref[k, f]
        basis.append(v)
    if basis:
        kernel = RatMatrix(list(zip(*basis)), m.cols, len(basis))
    else:
        kernel = RatMatrix.zeros(m.cols, 0)
    return len(pivots), kernel, Solver(m)


def solve_left(a, b):
    """Find ``X`` with ``X @ a == b``, or ``None``."""
    xt = Solver(a.T).solve(b.T)
    if xt is None:
        return None
    return xt.T
