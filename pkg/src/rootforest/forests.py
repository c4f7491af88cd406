"""Forests, roots and rooted forests of a d-dimensional complex.

Everything is phrased through the top boundary matrix D (rows: ridges,
columns: facets).  A forest is a set of independent columns, a root is a
set of ridges whose complement indexes a row basis, and (F, R) is a rooted
forest exactly when |F| = |R complement| and det(D[R complement, F]) != 0.
Its weight is |det(D[R complement, F])|, the order of the relative homology
group H_{d-1}(F, R).

Face subsets are passed around as sorted tuples of indices into the
lexicographically sorted face lists of the complex.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .complexes import Complex
from .linalg import (Echelon, IntPoly, Matrix, SmithForm, char_poly_shifted, det,
                     rank, smith_normal_form, submatrix, transpose)

DEFAULT_FACET_CAP = 20
DEFAULT_RIDGE_CAP = 20


class CapExceeded(RuntimeError):
    """The complex is too large for exhaustive enumeration under the current caps."""


class NotRootedForest(ValueError):
    """(F, R) is not a rooted forest; `reason` is 'size' or 'singular'."""

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


def face_subset(indices: Iterable[int], size: int, what: str = "face") -> tuple[int, ...]:
    """Validate and normalise a set of face indices into a sorted tuple."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate {what} index in {idx}")
    for i in idx:
        if not 0 <= i < size:
            raise IndexError(f"{what} index {i} out of range 0..{size - 1}")
    return tuple(sorted(idx))


def complement(G: Complex, R: Iterable[int]) -> tuple[int, ...]:
    """Ridges not in R, in order."""
    Rs = set(R)
    return tuple(i for i in range(len(G.ridges)) if i not in Rs)


def check_caps(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
               ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> None:
    nf, nr = len(G.facets), len(G.ridges)
    if facet_cap is not None and nf > facet_cap:
        raise CapExceeded(f"{nf} facets exceeds the cap of {facet_cap}")
    if ridge_cap is not None and nr > ridge_cap:
        raise CapExceeded(f"{nr} ridges exceeds the cap of {ridge_cap}")


@dataclass(frozen=True, order=True)
class RootedForest:
    facets: tuple[int, ...]
    root: tuple[int, ...]
    weight: int = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.facets)


@dataclass
class WeightAssignment:
    """Integer values for the indeterminates of the weighted identities.

    x: ridge index -> x_r;  y: facet index -> y_f;
    w: (ridge index, facet index) for each incident pair -> w_{r,f}.
    """

    x: dict[int, int] = field(default_factory=dict)
    y: dict[int, int] = field(default_factory=dict)
    w: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def random(cls, G: Complex, rng: random.Random, lo: int = 1, hi: int = 5) -> "WeightAssignment":
        D = G.top_boundary()
        nr, nf = len(G.ridges), len(G.facets)
        return cls(
            x={r: rng.randint(lo, hi) for r in range(nr)},
            y={f: rng.randint(lo, hi) for f in range(nf)},
            w={(r, f): rng.randint(lo, hi) for r in range(nr) for f in range(nf) if D[r][f]},
        )

    @classmethod
    def uniform(cls, G: Complex, x: int = 1, y: int = 1, w: int = 1) -> "WeightAssignment":
        D = G.top_boundary()
        nr, nf = len(G.ridges), len(G.facets)
        return cls(
            x={r: x for r in range(nr)},
            y={f: y for f in range(nf)},
            w={(r, f): w for r in range(nr) for f in range(nf) if D[r][f]},
        )


def _lookup(table: dict, key, name: str) -> int:
    try:
        return table[key]
    except KeyError:
        raise KeyError(f"weight assignment has no value for {name}{key}") from None


# ----------------------------------------------------------------------
# Laplacians

def laplacian(G: Complex) -> Matrix:
    """L = D D^T, indexed by ridges."""
    D = G.top_boundary()
    return [[sum(a * b for a, b in zip(ri, rj)) for rj in D] for ri in D]


def weighted_laplacian(G: Complex, a: WeightAssignment, mode: str = "facet_y") -> Matrix:
    """D Y D^T (mode 'facet_y') or D^w D^T (mode 'general_w')."""
    D = G.top_boundary()
    nr, nf = len(D), len(G.facets)
    if mode == "facet_y":
        y = [_lookup(a.y, f, "y") for f in range(nf)]
        left = [[D[r][f] * y[f] for f in range(nf)] for r in range(nr)]
    elif mode == "general_w":
        left = [[D[r][f] * _lookup(a.w, (r, f), "w") if D[r][f] else 0 for f in range(nf)]
                for r in range(nr)]
    else:
        raise ValueError(f"unknown weighting mode {mode!r}")
    return [[sum(p * q for p, q in zip(li, rj)) for rj in D] for li in left]


# ----------------------------------------------------------------------
# predicates

def _columns(G: Complex, F: Sequence[int]) -> Matrix:
    D = G.top_boundary()
    return [[row[f] for f in F] for row in D]


def is_forest(G: Complex, F: Iterable[int]) -> bool:
    F = face_subset(F, len(G.facets), "facet")
    return rank(_columns(G, F)) == len(F)


def is_spanning(G: Complex, F: Iterable[int]) -> bool:
    F = face_subset(F, len(G.facets), "facet")
    return rank(_columns(G, F)) == rank(G.top_boundary())


def is_spanning_forest(G: Complex, F: Iterable[int]) -> bool:
    return is_forest(G, F) and is_spanning(G, F)


def _complement_rows(G: Complex, R: Iterable[int]) -> Matrix:
    R = face_subset(R, len(G.ridges), "ridge")
    D = G.top_boundary()
    return [D[i] for i in complement(G, R)]


def is_relatively_free(G: Complex, R: Iterable[int]) -> bool:
    """Rows outside R have full rank (R contains no boundary)."""
    return rank(_complement_rows(G, R)) == rank(G.top_boundary())


def is_relatively_generating(G: Complex, R: Iterable[int]) -> bool:
    """Rows outside R are independent."""
    rows = _complement_rows(G, R)
    return rank(rows) == len(rows)


def is_root(G: Complex, R: Iterable[int]) -> bool:
    rows = _complement_rows(G, R)
    return len(rows) == rank(G.top_boundary()) and rank(rows) == len(rows)


def boundary_minor(G: Complex, F: Iterable[int], R: Iterable[int]) -> Matrix:
    """D restricted to rows outside R and columns in F (both in lexicographic order)."""
    F = face_subset(F, len(G.facets), "facet")
    R = face_subset(R, len(G.ridges), "ridge")
    return submatrix(G.top_boundary(), complement(G, R), F)


def is_rooted_forest(G: Complex, F: Iterable[int], R: Iterable[int]) -> bool:
    F = face_subset(F, len(G.facets), "facet")
    R = face_subset(R, len(G.ridges), "ridge")
    if len(F) + len(R) != len(G.ridges):
        return False
    return det(boundary_minor(G, F, R)) != 0


def _rooted_minor(G: Complex, F: Iterable[int], R: Iterable[int]) -> Matrix:
    F = face_subset(F, len(G.facets), "facet")
    R = face_subset(R, len(G.ridges), "ridge")
    nbar = len(G.ridges) - len(R)
    if len(F) != nbar:
        raise NotRootedForest(
            f"not a rooted forest: size mismatch, |F| = {len(F)} but the root complement has {nbar} ridges",
            "size")
    M = boundary_minor(G, F, R)
    if det(M) == 0:
        raise NotRootedForest("not a rooted forest: the boundary minor is singular", "singular")
    return M


def homology_weight(G: Complex, F: Iterable[int], R: Iterable[int]) -> int:
    """|H_{d-1}(F, R)| = |det D[R complement, F]|."""
    return abs(det(_rooted_minor(G, F, R)))


def homology_structure(G: Complex, F: Iterable[int], R: Iterable[int]) -> SmithForm:
    """Invariant factors of D[R complement, F]; H_{d-1}(F, R) is the sum of Z/d_i."""
    return smith_normal_form(_rooted_minor(G, F, R))


# ----------------------------------------------------------------------
# enumeration

def enumerate_forests(G: Complex) -> Iterator[tuple[int, ...]]:
    """All forests, as sorted facet tuples in lexicographic order."""
    cols = transpose(G.top_boundary()) if G.ridges else [[] for _ in G.facets]
    m = len(cols)
    ech = Echelon(len(G.ridges))
    chosen: list[int] = []

    def walk(start: int) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for j in range(start, m):
            if ech.push(cols[j]):
                chosen.append(j)
                yield from walk(j + 1)
                chosen.pop()
                ech.pop()

    yield from walk(0)


def enumerate_row_bases(rows: Sequence[Sequence[int]], k: int) -> Iterator[tuple[int, ...]]:
    """Index sets of k independent rows (k = number of columns), lexicographically."""
    n = len(rows)
    ech = Echelon(k)
    chosen: list[int] = []

    def walk(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, n - (k - len(chosen)) + 1):
            if ech.push(rows[i]):
                chosen.append(i)
                yield from walk(i + 1)
                chosen.pop()
                ech.pop()

    yield from walk(0)


def roots_of_forest(G: Complex, F: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Roots R of the forest F, i.e. complements of row bases of D[:, F]."""
    cols = _columns(G, F)
    nr = len(G.ridges)
    for basis in enumerate_row_bases(cols, len(F)):
        inside = set(basis)
        yield tuple(i for i in range(nr) if i not in inside)


def enumerate_rooted_forests(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
                             ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> Iterator[RootedForest]:
    """Every rooted forest exactly once, forests in lexicographic order and
    roots (by their complements) in lexicographic order within each forest."""
    check_caps(G, facet_cap, ridge_cap)
    D = G.top_boundary()
    nr = len(G.ridges)
    for F in enumerate_forests(G):
        cols = [[row[f] for f in F] for row in D]
        for basis in enumerate_row_bases(cols, len(F)):
            w = abs(det([cols[i] for i in basis]))
            inside = set(basis)
            yield RootedForest(F, tuple(i for i in range(nr) if i not in inside), w)


def roots(G: Complex, ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> Iterator[tuple[int, ...]]:
    """All roots of G."""
    check_caps(G, None, ridge_cap)
    D = G.top_boundary()
    nr = len(D)
    r = rank(D)
    # a row basis of D is a row basis of any column basis of D
    basis_cols: list[int] = []
    ech = Echelon(nr)
    for j, col in enumerate(transpose(D) if D else []):
        if ech.push(col):
            basis_cols.append(j)
    cols = [[row[j] for j in basis_cols] for row in D]
    assert len(basis_cols) == r
    for rows in enumerate_row_bases(cols, r):
        inside = set(rows)
        yield tuple(i for i in range(nr) if i not in inside)


def spanning_forests(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP) -> Iterator[tuple[int, ...]]:
    check_caps(G, facet_cap, None)
    r = rank(G.top_boundary())
    return (F for F in enumerate_forests(G) if len(F) == r)


def rooted_forest_polynomial(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
                             ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> IntPoly:
    """sum over rooted forests of weight^2 x^|R|."""
    coeffs = [0] * (len(G.ridges) + 1)
    for rf in enumerate_rooted_forests(G, facet_cap, ridge_cap):
        coeffs[len(rf.root)] += rf.weight ** 2
    return IntPoly(coeffs)


def laplacian_polynomial(G: Complex) -> IntPoly:
    """det(L + x Id)."""
    return char_poly_shifted(laplacian(G))


def forest_statistics(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
                      ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> dict:
    """One enumeration pass: polynomial, counts by root size, weight histogram."""
    coeffs = [0] * (len(G.ridges) + 1)
    by_root = Counter()
    weights = Counter()
    total = 0
    for rf in enumerate_rooted_forests(G, facet_cap, ridge_cap):
        coeffs[len(rf.root)] += rf.weight ** 2
        by_root[len(rf.root)] += 1
        weights[rf.weight] += 1
        total += 1
    return {"polynomial": IntPoly(coeffs), "count_by_root_size": dict(sorted(by_root.items())),
            "weight_histogram": dict(sorted(weights.items())), "rooted_forests": total}


def weighted_rooted_forest_sum(G: Complex, a: WeightAssignment,
                               facet_cap: int | None = DEFAULT_FACET_CAP,
                               ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> tuple[int, int]:
    """(enumeration side, determinant side) of the x/y-weighted forest identity."""
    nr = len(G.ridges)
    x = [_lookup(a.x, r, "x") for r in range(nr)]
    y = [_lookup(a.y, f, "y") for f in range(len(G.facets))]
    lhs = 0
    for rf in enumerate_rooted_forests(G, facet_cap, ridge_cap):
        term = rf.weight ** 2
        for r in rf.root:
            term *= x[r]
        for f in rf.facets:
            term *= y[f]
        lhs += term
    M = weighted_laplacian(G, a, "facet_y")
    for r in range(nr):
        M[r][r] += x[r]
    return lhs, det(M)


def reduced_laplacian(G: Complex, R: Iterable[int]) -> Matrix:
    R = face_subset(R, len(G.ridges), "ridge")
    keep = complement(G, R)
    return submatrix(laplacian(G), keep, keep)


def matrix_tree_rhs(G: Complex, R: Iterable[int]) -> int:
    """det of the Laplacian with the rows and columns of the root R deleted."""
    R = face_subset(R, len(G.ridges), "ridge")
    if not is_root(G, R):
        raise ValueError(f"{list(R)} is not a root of the complex")
    return det(reduced_laplacian(G, R))


def matrix_tree_lhs(G: Complex, R: Iterable[int],
                    facet_cap: int | None = DEFAULT_FACET_CAP) -> int:
    """sum of weight^2 over spanning forests rooted at R."""
    R = face_subset(R, len(G.ridges), "ridge")
    rows = complement(G, R)
    D = G.top_boundary()
    total = 0
    for F in spanning_forests(G, facet_cap):
        if len(F) == len(rows):
            total += det([[D[r][f] for f in F] for r in rows]) ** 2
    return total
