"""Exact rational linear algebra.

Matrices over Q with fraction-free determinants, canonical integer kernel
bases, p-adic valuations and square classes.  Scalars are
``fractions.Fraction`` throughout; no floating point enters anywhere in the
package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

Rational = Fraction

DEFAULT_FACTOR_BOUND = 10**6


class FactorBoundExceeded(ArithmeticError):
    """Squarefree-part extraction ran out of trial divisors.

    Recoverable: callers that only need the valuation at one prime should use
    :func:`ord_p`, which never factorises anything.
    """

    def __init__(self, cofactor: int, bound: int) -> None:
        super().__init__(
            "cannot determine squarefree part: cofactor %d has no prime "
            "factor <= %d and is not a perfect square" % (cofactor, bound)
        )
        self.cofactor = cofactor
        self.bound = bound


class QMatrix:
    """Immutable dense matrix over Q, stored as a row-major tuple of tuples."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        self.data = data
        self.nrows = len(data)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged rows in matrix")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row width")
            self.ncols = width
        else:
            self.ncols = 0 if ncols is None else ncols

    @staticmethod
    def identity(n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return QMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "QMatrix":
        zero = Fraction(0)
        return QMatrix([[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @staticmethod
    def from_columns(cols: Sequence[Sequence], nrows: int | None = None) -> "QMatrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return QMatrix([[] for _ in range(nrows or 0)], ncols=0)
        n = len(cols[0])
        return QMatrix([[c[i] for c in cols] for i in range(n)], ncols=len(cols))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self.data), ncols=self.nrows) if self.data else QMatrix(
            [[] for _ in range(self.ncols)], ncols=0
        )

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch in product")
        if self.ncols == 0:
            return QMatrix.zeros(self.nrows, other.ncols)
        other_cols = tuple(zip(*other.data))
        rows = [
            tuple(sum(a * b for a, b in zip(r, c)) for c in other_cols)
            for r in self.data
        ]
        return QMatrix(rows, ncols=other.ncols)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("matrix shape mismatch in sum")
        return QMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            ncols=self.ncols,
        )

    def scale(self, s) -> "QMatrix":
        s = Fraction(s)
        return QMatrix([[s * x for x in row] for row in self.data], ncols=self.ncols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.nrows)
            for j in range(i)
        )

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("trace of non-square matrix")
        return sum((self.data[i][i] for i in range(self.nrows)), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.data, self.ncols))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"QMatrix({self.nrows}x{self.ncols}: {rows})"


def rref(M: QMatrix) -> tuple[QMatrix, tuple[int, ...]]:
    """Reduced row-echelon form of M together with its pivot columns."""
    rows = [list(r) for r in M.data]
    nrows, ncols = M.nrows, M.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                ri, rr = rows[i], rows[r]
                rows[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return QMatrix(rows, ncols=ncols), tuple(pivots)


def rank(M: QMatrix) -> int:
    return len(rref(M)[1])


def _primitive_integer(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to integers with content 1 and first
    nonzero entry positive."""
    m = lcm(*(x.denominator for x in v))
    ints = [int(x * m) for x in v]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def kernel_basis(M: QMatrix) -> list[tuple[int, ...]]:
    """Canonical integer basis of the right kernel of M.

    Vectors come from the reduced echelon form (one per free column, in
    column order), scaled to content 1 with positive leading entry.  A
    full-column-rank matrix yields the empty list.
    """
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for fc in range(M.ncols):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * M.ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            if pc < fc:
                v[pc] = -R.data[r][fc]
        basis.append(_primitive_integer(v))
    return basis


def determinant(M: QMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; intermediate entries stay integral and
    of bounded size, which matters for the large Gram matrices of induced
    modules.
    """
    if M.nrows != M.ncols:
        raise ValueError("determinant of non-square matrix")
    n = M.nrows
    if n == 0:
        return Fraction(1)
    denom = 1
    a: list[list[int]] = []
    for row in M.data:
        m = lcm(*(x.denominator for x in row))
        denom *= m
        a.append([int(x * m) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pr is None:
                return Fraction(0)
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], denom)


def inverse(M: QMatrix) -> QMatrix:
    """Exact inverse via row reduction of the augmented matrix."""
    if M.nrows != M.ncols:
        raise ValueError("inverse of non-square matrix")
    n = M.nrows
    one, zero = Fraction(1), Fraction(0)
    aug = QMatrix(
        [
            list(M.data[i]) + [one if j == i else zero for j in range(n)]
            for i in range(n)
        ]
    )
    R, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return QMatrix([row[n:] for row in R.data], ncols=n)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3):
        if n % q == 0:
            return n == q
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/Q*^2: a sign and a squarefree positive radical.

    Construct through :func:`square_class`; the radical is not re-checked for
    squarefreeness here.
    """

    sign: int
    radical: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.radical < 1:
            raise ValueError("radical must be a positive integer")

    @staticmethod
    def one() -> "SquareClass":
        return SquareClass(1, 1)

    @property
    def is_trivial(self) -> bool:
        return self.sign == 1 and self.radical == 1

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        g = gcd(self.radical, other.radical)
        return SquareClass(
            self.sign * other.sign, (self.radical // g) * (other.radical // g)
        )

    def __pow__(self, n: int) -> "SquareClass":
        return self if n % 2 else SquareClass(1, 1)

    def __str__(self) -> str:
        return str(self.sign * self.radical)


def square_class(q, bound: int = DEFAULT_FACTOR_BOUND) -> SquareClass:
    """Class of a nonzero rational in Q*/Q*^2.

    The radical is the squarefree part of numerator*denominator, found by
    trial division up to ``bound``.  A leftover cofactor that is a perfect
    square (common in regulator products) or provably prime is still
    resolved; anything else raises :class:`FactorBoundExceeded`.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 has no square class")
    sign = 1 if q > 0 else -1
    n = abs(q.numerator) * q.denominator
    radical = 1
    p = 2
    while n > 1:
        if p * p > n:
            radical *= n  # leftover cofactor is prime
            break
        if p > bound:
            root = isqrt(n)
            if root * root == n:
                break  # perfect square contributes nothing
            if n < bound * bound:
                radical *= n  # no factor <= bound and below bound^2: prime
                break
            raise FactorBoundExceeded(n, bound)
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                radical *= p
            if n > 1:
                root = isqrt(n)
                if root * root == n:
                    break
        p = 3 if p == 2 else p + 2
    return SquareClass(sign, radical)


def ord_p(q, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational (negative allowed)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("ord_p(0) is undefined")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    n = abs(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v
