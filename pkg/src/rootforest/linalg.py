"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints, so every value is an
arbitrary-precision integer and nothing is ever rounded.  The kernel is
Bareiss fraction-free elimination; ranks, characteristic polynomials and
Smith forms are all built on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

Matrix = list[list[int]]


def shape(M: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for row in M:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError(f"cannot multiply {n}x{k} by {k2}x{m}")
    if n and not k:
        return zeros(n, 0 if not B else m)
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def is_zero(M: Sequence[Sequence[int]]) -> bool:
    return all(v == 0 for row in M for v in row)


def submatrix(M: Sequence[Sequence[int]], row_idx: Sequence[int],
              col_idx: Sequence[int]) -> Matrix:
    """Rows `row_idx` and columns `col_idx` of M, in the order given."""
    rows, cols = shape(M)
    for name, idx, bound in (("row", row_idx, rows), ("column", col_idx, cols)):
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicated {name} index in {list(idx)}")
        for i in idx:
            if not 0 <= i < bound:
                raise IndexError(f"{name} index {i} out of range for size {bound}")
    return [[M[i][j] for j in col_idx] for i in row_idx]


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss elimination.  The 0x0 determinant is 1."""
    n, m = shape(M)
    if n != m:
        raise ValueError(f"determinant of non-square {n}x{m} matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free row reduction."""
    rows, cols = shape(M)
    A = [list(row) for row in M]
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, rows):
            a = A[i][c]
            A[i] = [(p * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = p
        r += 1
    return r


class Echelon:
    """Incremental independence test for integer vectors.

    Vectors are pushed and popped in stack order, which is what the
    backtracking enumerators need.  Each stored row has a pivot column
    where every later row is zero; rows are kept primitive (content 1) so
    entries stay small.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[tuple[int, list[int]]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for p, u in self._rows:
            a = v[p]
            if a:
                b = u[p]
                v = [b * x - a * y for x, y in zip(v, u)]
                g = 0
                for x in v:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    v = [x // g for x in v]
        return v

    def push(self, v: Sequence[int]) -> bool:
        """Add v if it is independent of the stored rows; report whether it was."""
        w = self.reduce(v)
        for p, x in enumerate(w):
            if x:
                self._rows.append((p, w))
                return True
        return False

    def pop(self) -> None:
        self._rows.pop()


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, coefficients listed low degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots_powers(cls, factors: Iterable[tuple[int, int]]) -> "IntPoly":
        """Product of (x + a)^e over the (a, e) pairs."""
        p = cls([1])
        for a, e in factors:
            for _ in range(e):
                p = p * cls([a, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out


def _newton_interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    n = len(xs)
    table = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form into monomial coefficients
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + table[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += table[i]
    return coeffs


def char_poly_shifted(M: Sequence[Sequence[int]]) -> IntPoly:
    """det(M + x*Id) as an integer polynomial.

    Evaluated at x = 0..m with `det`, then interpolated over the rationals.
    """
    m, m2 = shape(M)
    if m != m2:
        raise ValueError(f"characteristic polynomial of non-square {m}x{m2} matrix")
    xs = list(range(m + 1))
    ys = []
    for t in xs:
        A = [list(row) for row in M]
        for i in range(m):
            A[i][i] += t
        ys.append(det(A))
    coeffs = _newton_interpolate(xs, ys)
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer coefficient {c} in characteristic polynomial")
    poly = IntPoly(int(c) for c in coeffs)
    if poly.degree != m or poly.coeff(m) != 1:
        raise ArithmeticError("characteristic polynomial is not monic of full degree")
    return poly


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (zeros last)."""

    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    @property
    def torsion_order(self) -> int:
        return prod(d for d in self.invariant_factors if d)


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form by elementary row and column operations.

    The pivot at each stage is the entry of smallest nonzero absolute value
    in the remaining block.  Returns min(rows, cols) factors.
    """
    rows, cols = shape(M)
    A = [list(row) for row in M]
    n = min(rows, cols)
    for t in range(n):
        while True:
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return SmithForm(tuple(abs(A[i][i]) for i in range(t)) + (0,) * (n - t))
            i, j = piv
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
    return SmithForm(tuple(abs(A[i][i]) for i in range(n)))
