"""Exact rational scalars and dense rational matrices.

Scalars are :class:`fractions.Fraction` throughout; they are always kept in
lowest terms with a positive denominator, which is exactly the canonical form
we need.  :class:`RatMatrix` is a small immutable dense matrix on top of them
with the handful of operations the rest of the package uses (products, powers,
inverse, rank, reduced row echelon form, right kernel).

    >>> M = RatMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    >>> [v.column(0) for v in kernel_basis(M)]
    [(Fraction(1, 1), Fraction(-1, 1), Fraction(0, 1))]
"""
from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "RatMatrix",
    "as_rational",
    "format_rational",
    "kernel_basis",
    "rational_arith",
]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, accepting ints and "p/q" strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(q))


_BINARY = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational_arith(a: RationalLike, b: RationalLike | None = None, op: str = "add"):
    """Apply ``op`` to exact rationals.

    ``op`` is one of add, sub, mul, div, neg (unary, ``b`` ignored) or cmp,
    which returns -1, 0 or 1.  Division by zero raises ZeroDivisionError.
    """
    a = as_rational(a)
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"operation {op!r} needs two operands")
    b = as_rational(b)
    if op == "cmp":
        return (a > b) - (a < b)
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"division of {format_rational(a)} by zero")
    try:
        return _BINARY[op](a, b)
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[RationalLike]):
        entries = tuple(as_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def column_vector(cls, values: Sequence[RationalLike]) -> "RatMatrix":
        return cls(len(values), 1, values)

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -------------------------------------------------------
    def _check_same_shape(self, other: "RatMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, map(operator.add, self.entries, other.entries))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, map(operator.sub, self.entries, other.entries))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, (-e for e in self.entries))

    def scale(self, c: RationalLike) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix(self.rows, self.cols, (c * e for e in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def __pow__(self, n: int) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("only square matrices have powers")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RatMatrix.identity(self.rows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, (e for j in range(self.cols) for e in self.column(j)))

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"RatMatrix([{body}])"

    # -- elimination ------------------------------------------------------
    def rref(self) -> tuple["RatMatrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns."""
        a = self.to_rows()
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if a[i][c]), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [e * inv for e in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [e - f * g for e, g in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return RatMatrix(self.rows, self.cols, [e for row in a for e in row]), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("only square matrices are invertible")
        n = self.rows
        aug = RatMatrix(n, 2 * n, [
            e for i in range(n) for e in self.row(i) + RatMatrix.identity(n).row(i)
        ])
        red, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix(n, n, [e for i in range(n) for e in red.row(i)[n:]])


def kernel_basis(M: RatMatrix) -> list[RatMatrix]:
    """Basis of the right null space of ``M`` as column vectors.

    One vector per free column of the RREF; each is scaled so its first
    nonzero entry is 1.
    """
    red, pivots = M.rref()
    basis = []
    for free in (c for c in range(M.cols) if c not in pivots):
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -red[row, free]
        lead = next(e for e in v if e)
        basis.append(RatMatrix.column_vector([e / lead for e in v]))
    return basis
