"""Fitting orientations of rooted forests and their signs.

A fitting orientation of (F, R) sends every ridge outside R to a distinct
facet of F containing it.  Expanding det D[R complement, F] as a sum over
bijections shows that only fitting orientations contribute; the signed
terms give Lambda(phi), and the sum of Lambda over all fitting orientations
is the homological weight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .complexes import Complex
from .forests import (DEFAULT_FACET_CAP, DEFAULT_RIDGE_CAP, NotRootedForest,
                      WeightAssignment, _lookup, _rooted_minor, complement,
                      enumerate_rooted_forests, face_subset, weighted_laplacian)
from .linalg import IntPoly, det


@dataclass(frozen=True)
class FittingOrientation:
    """ridges[i] is sent to facets[i]; ridges are listed in increasing order."""

    ridges: tuple[int, ...]
    facets: tuple[int, ...]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.ridges, self.facets))

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.ridges, self.facets))


@dataclass(frozen=True)
class StripDecomposition:
    fixed_points: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    oriented: tuple[bool, ...]

    @property
    def oriented_strips(self) -> int:
        return sum(self.oriented)

    @property
    def sign(self) -> int:
        return -1 if self.oriented_strips % 2 else 1


def _normalise_pair(G: Complex, F, R) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    F = face_subset(F, len(G.facets), "facet")
    R = face_subset(R, len(G.ridges), "ridge")
    Rbar = complement(G, R)
    if len(F) != len(Rbar):
        raise NotRootedForest(
            f"not a rooted forest: size mismatch, |F| = {len(F)} but {len(Rbar)} ridges lie outside the root", "size")
    return F, R, Rbar


def enumerate_fitting_orientations(G: Complex, F, R) -> Iterator[FittingOrientation]:
    """All containment-respecting bijections from the ridges outside R onto F.

    Ridges are assigned in increasing order, each to an unused facet
    (in increasing order) whose boundary contains it.
    """
    F, R, Rbar = _normalise_pair(G, F, R)
    D = G.top_boundary()
    options = [[f for f in F if D[r][f]] for r in Rbar]
    used: set[int] = set()
    image: list[int] = []

    def walk(i: int) -> Iterator[FittingOrientation]:
        if i == len(Rbar):
            yield FittingOrientation(Rbar, tuple(image))
            return
        for f in options[i]:
            if f not in used:
                used.add(f)
                image.append(f)
                yield from walk(i + 1)
                image.pop()
                used.discard(f)

    yield from walk(0)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 0..n-1, via its cycle count."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def lambda_value(G: Complex, phi: FittingOrientation, row_order: Sequence[int] | None = None,
                 col_order: Sequence[int] | None = None) -> int:
    """sign(pi) * prod D[r, phi(r)] for the orderings of ridges and facets given."""
    alpha = list(row_order) if row_order is not None else list(phi.ridges)
    beta = list(col_order) if col_order is not None else sorted(phi.facets)
    if sorted(alpha) != sorted(phi.ridges) or sorted(beta) != sorted(phi.facets):
        raise ValueError("orderings must permute the orientation's ridges and facets")
    D = G.top_boundary()
    where = {f: j for j, f in enumerate(beta)}
    mapping = phi.as_dict()
    perm = [where[mapping[r]] for r in alpha]
    value = permutation_sign(perm)
    for r in alpha:
        value *= D[r][mapping[r]]
    return value


def orientation_sign(G: Complex, F, R, phi: FittingOrientation,
                     row_order: Sequence[int] | None = None,
                     col_order: Sequence[int] | None = None) -> int:
    """Lambda(phi): the sign of det D reordered by (alpha, beta) times lambda.

    alpha orders the ridges outside R and beta orders F; both default to
    lexicographic.  For simplicial complexes the value is +1 or -1 whatever
    orderings are used.
    """
    F, R, Rbar = _normalise_pair(G, F, R)
    M = _rooted_minor(G, F, R)
    alpha = list(row_order) if row_order is not None else list(Rbar)
    beta = list(col_order) if col_order is not None else list(F)
    ri = {r: i for i, r in enumerate(Rbar)}
    ci = {f: j for j, f in enumerate(F)}
    reordered = [[M[ri[r]][ci[f]] for f in beta] for r in alpha]
    s = 1 if det(reordered) > 0 else -1
    return s * lambda_value(G, phi, alpha, beta)


def signed_orientation_sum(G: Complex, F, R) -> int:
    """sum of Lambda(phi) over the fitting orientations of a rooted forest."""
    F, R, Rbar = _normalise_pair(G, F, R)
    s = 1 if det(_rooted_minor(G, F, R)) > 0 else -1
    return s * sum(lambda_value(G, phi) for phi in enumerate_fitting_orientations(G, F, R))


def sum_lambda_unrooted(G: Complex, F, R) -> int:
    """sum of lambda(phi) with lexicographic orderings; (F, R) need only be size-matched.

    This equals det D[R complement, F], so it vanishes when (F, R) is not a
    rooted forest.
    """
    return sum(lambda_value(G, phi) for phi in enumerate_fitting_orientations(G, F, R))


def strip_decomposition(G: Complex, phi: FittingOrientation,
                        phi_prime: FittingOrientation) -> StripDecomposition:
    """Cycles of theta = phi^-1 o phi', each tagged oriented or not.

    A cycle r_1 -> r_2 -> ... -> r_k (r_{i+1} = theta(r_i), f_i = phi'(r_i)
    = phi(r_{i+1})) is an oriented strip when the sign of
    prod D[r_i, f_i] D[r_{i+1}, f_i] is (-1)^k.
    """
    if phi.ridges != phi_prime.ridges or sorted(phi.facets) != sorted(phi_prime.facets):
        raise ValueError("orientations do not belong to the same rooted forest")
    D = G.top_boundary()
    for o in (phi, phi_prime):
        for r, f in o.pairs():
            if not D[r][f]:
                raise ValueError(f"ridge {r} is not on the boundary of facet {f}")
    inverse = {f: r for r, f in phi.pairs()}
    prime = phi_prime.as_dict()
    theta = {r: inverse[prime[r]] for r in phi.ridges}
    fixed, cycles, oriented = [], [], []
    seen: set[int] = set()
    for start in phi.ridges:
        if start in seen:
            continue
        if theta[start] == start:
            seen.add(start)
            fixed.append(start)
            continue
        cycle = []
        r = start
        while r not in seen:
            seen.add(r)
            cycle.append(r)
            r = theta[r]
        product = 1
        for i, ri in enumerate(cycle):
            f = prime[ri]
            nxt = cycle[(i + 1) % len(cycle)]
            product *= D[ri][f] * D[nxt][f]
        want = -1 if len(cycle) % 2 else 1
        cycles.append(tuple(cycle))
        oriented.append((product > 0) == (want > 0))
    return StripDecomposition(tuple(fixed), tuple(cycles), tuple(oriented))


@dataclass
class OrientedForest:
    """A rooted forest with its fitting orientations and their signs."""

    facets: tuple[int, ...]
    root: tuple[int, ...]
    weight: int
    orientations: list[FittingOrientation]
    signs: list[int]


def oriented_forests(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
                     ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> Iterator[OrientedForest]:
    for rf in enumerate_rooted_forests(G, facet_cap, ridge_cap):
        Rbar = complement(G, rf.root)
        D = G.top_boundary()
        s = 1 if det([[D[r][f] for f in rf.facets] for r in Rbar]) > 0 else -1
        orients = list(enumerate_fitting_orientations(G, rf.facets, rf.root))
        yield OrientedForest(rf.facets, rf.root, rf.weight, orients,
                             [s * lambda_value(G, phi) for phi in orients])


def bidirected_polynomials(G: Complex, facet_cap: int | None = DEFAULT_FACET_CAP,
                           ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> tuple[IntPoly, IntPoly]:
    """Signed count of bi-directed rooted forests by root size, two ways.

    The first polynomial weighs (F, R, phi, phi') by Lambda(phi) Lambda(phi'),
    the second by (-1)^(number of oriented strips of (phi, phi')).
    """
    by_sign = [0] * (len(G.ridges) + 1)
    by_strip = [0] * (len(G.ridges) + 1)
    for of in oriented_forests(G, facet_cap, ridge_cap):
        k = len(of.root)
        for phi, s in zip(of.orientations, of.signs):
            for phi2, s2 in zip(of.orientations, of.signs):
                by_sign[k] += s * s2
                by_strip[k] += strip_decomposition(G, phi, phi2).sign
    return IntPoly(by_sign), IntPoly(by_strip)


def bidirected_polynomial(G: Complex, method: str = "signs",
                          facet_cap: int | None = DEFAULT_FACET_CAP,
                          ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> IntPoly:
    signs, strips = bidirected_polynomials(G, facet_cap, ridge_cap)
    if method == "signs":
        return signs
    if method == "strips":
        return strips
    raise ValueError(f"unknown method {method!r}")


def weighted_bidirected_sum(G: Complex, a: WeightAssignment,
                            facet_cap: int | None = DEFAULT_FACET_CAP,
                            ridge_cap: int | None = DEFAULT_RIDGE_CAP) -> tuple[int, int]:
    """(enumeration side, determinant side) of the w/x-weighted bi-directed identity.

    The enumeration side sums Lambda(phi) Lambda(phi') prod w_{r,phi(r)} prod x_r
    over all bi-directed rooted forests; the determinant side is det(D^w D^T + X).
    """
    nr = len(G.ridges)
    x = [_lookup(a.x, r, "x") for r in range(nr)]
    M = weighted_laplacian(G, a, "general_w")
    lhs = 0
    for of in oriented_forests(G, facet_cap, ridge_cap):
        xprod = 1
        for r in of.root:
            xprod *= x[r]
        weighted = []
        for phi in of.orientations:
            p = 1
            for r, f in phi.pairs():
                p *= _lookup(a.w, (r, f), "w")
            weighted.append(p)
        for p, s in zip(weighted, of.signs):
            for s2 in of.signs:
                lhs += s * s2 * p * xprod
    for r in range(nr):
        M[r][r] += x[r]
    return lhs, det(M)


def random_orderings(phi: FittingOrientation, rng: random.Random) -> tuple[list[int], list[int]]:
    alpha = list(phi.ridges)
    beta = sorted(phi.facets)
    rng.shuffle(alpha)
    rng.shuffle(beta)
    return alpha, beta
