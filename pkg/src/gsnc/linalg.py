"""Exact rational matrices and fraction-free rank.

Matrices act on column vectors: a map V -> W between spaces of dimension
``n`` and ``m`` is stored as an ``m x n`` matrix.  Empty shapes (0 rows or
0 columns) are legal and common, so the shape is always carried explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings such as ``"3/4"`` or ``"-2"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        data = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        zero = Fraction(0)
        return cls(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_of_other = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            out.append(tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                             for col in cols_of_other))
        return QMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return QMatrix(self.rows, self.cols,
                       tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, c) -> "QMatrix":
        c = to_fraction(c)
        return QMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    @property
    def T(self) -> "QMatrix":
        if self.rows == 0:
            return QMatrix.zeros(self.cols, 0)
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def rank(self) -> int:
        return rank(self.entries, self.cols)

    def inverse(self) -> "QMatrix":
        return inverse(self)

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


def kron(a: QMatrix, b: QMatrix) -> QMatrix:
    rows = []
    for ra in a.entries:
        for rb in b.entries:
            rows.append(tuple(x * y for x in ra for y in rb))
    return QMatrix(a.rows * b.rows, a.cols * b.cols, tuple(rows))


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Iterable[tuple[int, int, QMatrix]]) -> QMatrix:
    """Assemble a matrix from ``(block_row, block_col, matrix)`` triples.

    Blocks landing on the same position are summed.
    """
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    data = [[Fraction(0)] * col_off[-1] for _ in range(row_off[-1])]
    for bi, bj, m in blocks:
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block ({bi},{bj}) has shape {m.shape}, expected "
                             f"{(row_sizes[bi], col_sizes[bj])}")
        r0, c0 = row_off[bi], col_off[bj]
        for i, row in enumerate(m.entries):
            target = data[r0 + i]
            for j, x in enumerate(row):
                if x:
                    target[c0 + j] += x
    return QMatrix(row_off[-1], col_off[-1], tuple(tuple(r) for r in data))


def _integer_rows(entries: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # Scaling a row by a nonzero constant does not change the rank.
    out = []
    for row in entries:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank(entries: Sequence[Sequence[Fraction]], cols: int | None = None) -> int:
    """Rank over Q by Bareiss fraction-free elimination on integers."""
    a = _integer_rows(entries)
    a = [r for r in a if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            # Bareiss step: exact division by the previous pivot.
            for j in range(c, n):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
        prev = p
        r += 1
        if r == m:
            break
    return r


def inverse(m: QMatrix) -> QMatrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` when singular."""
    n = m.rows
    if m.cols != n:
        raise ValueError(f"cannot invert non-square {m.shape} matrix")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return QMatrix(n, n, tuple(tuple(r[n:]) for r in aug))


def homology_dims(dims: Sequence[int], diffs: Sequence[QMatrix]) -> list[int]:
    """Cohomology dimensions of ``C^0 -> C^1 -> ...``.

    ``diffs[i]`` maps ``C^i`` to ``C^{i+1}``; a missing trailing differential
    is treated as zero.
    """
    ranks = [d.rank() for d in diffs]
    out = []
    for i, dim in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(dim - r_out - r_in)
    return out
