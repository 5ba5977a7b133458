"""Exact dense linear algebra over the rationals.

Indices in docstrings are 1-based, storage is 0-based row-major.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .arith import binom, format_rational


class LinAlgError(ValueError):
    pass


class NotSquareError(LinAlgError):
    pass


class SingularMatrixError(LinAlgError):
    pass


class InconsistentSystemError(LinAlgError):
    """Raised when a linear system has no solution."""


class QMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise LinAlgError("ragged matrix rows")
            ncols = widths.pop()
        else:
            ncols = cols or 0
        if cols is not None and cols != ncols:
            raise LinAlgError("column count mismatch")
        self._data = data
        self.rows = len(data)
        self.cols = ncols

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> list:
        return [r[j] for r in self._data]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def _check_same_shape(self, other: "QMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise LinAlgError("inner dimensions differ")
        ocols = other.column
        cols_of_other = [ocols(j) for j in range(other.cols)]
        return QMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols_of_other] for r in self._data],
            cols=other.cols,
        )

    def transpose(self) -> "QMatrix":
        return QMatrix([list(c) for c in zip(*self._data)] if self.rows else [], cols=self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    def is_strictly_lower_triangular(self) -> bool:
        return all(self._data[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if j >= i)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._data for a in r)

    def __repr__(self):
        return f"QMatrix({[[format_rational(a) for a in r] for r in self._data]})"

    def __str__(self):
        cells = [[format_rational(a) for a in r] for r in self._data]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def _require_square(m: QMatrix):
    if not m.is_square:
        raise NotSquareError(f"expected a square matrix, got {m.rows}x{m.cols}")


def det(m: QMatrix) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.tolist()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division by the previous pivot (Sylvester's identity)
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pivot
    return sign * a[n - 1][n - 1]


def rref(m: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (leftmost nonzero pivot rule)."""
    a = m.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ri = a[i]
                rr = a[r]
                a[i] = [x - f * y for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
    return a, pivots


def solve(a: QMatrix, rhs: Sequence) -> list[Fraction]:
    """Solve ``a x = rhs`` exactly.

    Square nonsingular systems get their unique solution. Any consistent
    system gets the reduced-echelon solution with free variables set to zero.
    Raises InconsistentSystemError when no solution exists.
    """
    if len(rhs) != a.rows:
        raise LinAlgError("right-hand side length does not match row count")
    aug = QMatrix([list(r) + [b] for r, b in zip(a.tolist(), rhs)], cols=a.cols + 1)
    red, pivots = rref(aug)
    if a.cols in pivots:
        raise InconsistentSystemError("linear system is inconsistent")
    x = [Fraction(0)] * a.cols
    for row, c in enumerate(pivots):
        x[c] = red[row][a.cols]
    return x


def nullspace(a: QMatrix) -> list[list[Fraction]]:
    red, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for row, c in enumerate(pivots):
            v[c] = -red[row][f]
        basis.append(v)
    return basis


def anti_transpose(m: QMatrix) -> QMatrix:
    """J m^T J: entry (i, j) is m[n+1-j, n+1-i]."""
    _require_square(m)
    n = m.rows
    return QMatrix([[m[n - 1 - j, n - 1 - i] for j in range(n)] for i in range(n)], cols=n)


def binomial_band_matrix(n_choose: int, size: int) -> QMatrix:
    """Upper unipotent matrix with (i, j) entry binom(n_choose, j - i)."""
    return QMatrix(
        [[binom(n_choose, j - i) if j >= i else 0 for j in range(size)] for i in range(size)], cols=size
    )


def lower_triangular_binomial_matrix(n: int) -> QMatrix:
    """Lower unipotent n x n matrix with (i, j) entry binom(n, i - j)."""
    return QMatrix([[binom(n, i - j) if i >= j else 0 for j in range(n)] for i in range(n)], cols=n)


def lower_left_minor(a: QMatrix, m: int) -> QMatrix:
    _require_square(a)
    if not 1 <= m <= a.rows:
        raise LinAlgError(f"minor size {m} out of range 1..{a.rows}")
    n = a.rows
    return a.submatrix(range(n - m, n), range(m))


def upper_right_minor(a: QMatrix, m: int) -> QMatrix:
    _require_square(a)
    if not 1 <= m <= a.rows:
        raise LinAlgError(f"minor size {m} out of range 1..{a.rows}")
    n = a.rows
    return a.submatrix(range(m), range(n - m, n))


def check_antisymmetric_rhs(b: QMatrix):
    """Validate the right-hand side for solve_antidiagonal."""
    _require_square(b)
    n = b.rows
    if any(b[i, n - 1 - i] != 0 for i in range(n)):
        raise LinAlgError("right-hand side has a nonzero anti-diagonal entry")
    if anti_transpose(b) != -b:
        raise LinAlgError("right-hand side is not anti-symmetric under the anti-transpose")


def solve_antidiagonal(a: QMatrix, b: QMatrix) -> QMatrix:
    """Unique strictly lower-triangular X with a X - (a X)^tau = b.

    Columns are solved right to left. Column i of X has n - i unknowns
    (1-based) and its equations are the entries of column i above the
    anti-diagonal; their coefficient block is the (n-i) x (n-i) upper-right
    minor of a, and the tau-term only involves columns already solved.
    """
    _require_square(a)
    check_antisymmetric_rhs(b)
    n = a.rows
    if b.rows != n:
        raise LinAlgError("a and b differ in size")
    x = [[Fraction(0)] * n for _ in range(n)]

    def ax_entry(p: int, q: int) -> Fraction:
        return sum((a[p, r] * x[r][q] for r in range(q + 1, n)), Fraction(0))

    for q in range(n - 2, -1, -1):
        size = n - 1 - q
        block = upper_right_minor(a, size)
        if det(block) == 0:
            raise SingularMatrixError(f"upper-right minor of size {size} is singular")
        rhs = [b[p, q] + ax_entry(n - 1 - q, n - 1 - p) for p in range(size)]
        sol = solve(block, rhs)
        for k, v in enumerate(sol):
            x[q + 1 + k][q] = v
    result = QMatrix(x, cols=n)
    ax = a @ result
    if ax - anti_transpose(ax) != b:
        raise InconsistentSystemError("anti-diagonal system has a nonzero residual")
    return result


def solve_antidiagonal_dense(a: QMatrix, b: QMatrix) -> QMatrix:
    """Same problem as solve_antidiagonal, solved as one vectorized system.

    Unknowns are the n(n-1)/2 strictly-lower entries of X; equations are all
    n^2 entries of a X - (a X)^tau - b. Used as an independent check.
    """
    _require_square(a)
    n = a.rows
    unknowns = [(r, c) for c in range(n) for r in range(c + 1, n)]
    index = {rc: k for k, rc in enumerate(unknowns)}
    rows = []
    rhs = []
    for p in range(n):
        for q in range(n):
            coeffs = [Fraction(0)] * len(unknowns)
            # (aX)[p][q] = sum_r a[p][r] X[r][q]
            for r in range(q + 1, n):
                coeffs[index[(r, q)]] += a[p, r]
            # (aX)^tau[p][q] = (aX)[n-1-q][n-1-p]
            qq = n - 1 - p
            for r in range(qq + 1, n):
                coeffs[index[(r, qq)]] -= a[n - 1 - q, r]
            rows.append(coeffs)
            rhs.append(b[p, q])
    sol = solve(QMatrix(rows, cols=len(unknowns)), rhs)
    x = [[Fraction(0)] * n for _ in range(n)]
    for (r, c), v in zip(unknowns, sol):
        x[r][c] = v
    return QMatrix(x, cols=n)
