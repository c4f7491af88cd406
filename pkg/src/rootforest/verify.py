"""Run every enumerative identity on one complex and collect verdicts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from .complexes import Complex
from .forests import (DEFAULT_FACET_CAP, DEFAULT_RIDGE_CAP, WeightAssignment, check_caps,
                      enumerate_rooted_forests, homology_structure, is_rooted_forest,
                      laplacian_polynomial, matrix_tree_rhs, roots,
                      weighted_rooted_forest_sum)
from .linalg import IntPoly, det, rank
from .orientations import (oriented_forests, orientation_sign, random_orderings,
                           strip_decomposition, sum_lambda_unrooted,
                           weighted_bidirected_sum)

DEFAULT_SEED = 1729


@dataclass
class Check:
    name: str
    passed: bool
    checked: int = 0
    counterexample: Any = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"name": self.name, "verdict": "PASS" if self.passed else "FAIL",
               "checked": self.checked}
        if self.detail:
            out["detail"] = self.detail
        if not self.passed:
            out["counterexample"] = self.counterexample
        return out


def poly_strings(p: IntPoly, length: int) -> list[str]:
    return [str(p.coeff(k)) for k in range(length)]


def _poly_check(name: str, got: IntPoly, want: IntPoly, length: int) -> Check:
    ok = got == want
    return Check(name, ok, 1, None if ok else {"got": poly_strings(got, length),
                                                "expected": poly_strings(want, length)})


def sample_size_matched_pairs(G: Complex, rng: random.Random, count: int,
                              rooted: bool | None = False,
                              max_attempts: int = 20000) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Random (F, R) with |F| = |R complement|; `rooted` filters on rooted-forest status."""
    nf, nr = len(G.facets), len(G.ridges)
    D = G.top_boundary()
    out = []
    for _ in range(max_attempts):
        if len(out) == count:
            break
        k = rng.randint(0, min(nf, nr))
        F = tuple(sorted(rng.sample(range(nf), k)))
        Rbar = sorted(rng.sample(range(nr), k))
        nonsingular = det([[D[r][f] for f in F] for r in Rbar]) != 0
        if rooted is None or nonsingular == rooted:
            inside = set(Rbar)
            out.append((F, tuple(i for i in range(nr) if i not in inside)))
    return out


def run_checks(G: Complex, seed: int = DEFAULT_SEED, full: bool = False,
               facet_cap: int | None = DEFAULT_FACET_CAP,
               ridge_cap: int | None = DEFAULT_RIDGE_CAP,
               points: int = 3, root_cap: int = 5000,
               annihilation_samples: int = 100, ordering_samples: int = 200) -> list[Check]:
    """Verify the identities on G.

    Always: the rooted-forest polynomial against det(L + x Id), nonnegative
    coefficients, and the x/y-weighted identity at `points` seeded integer
    points.  With `full`: the matrix-tree corollary for every root (up to
    `root_cap` roots), both bi-directed polynomials, the w/x-weighted
    identity, the per-forest orientation propositions, sign independence
    on a sample of forests, and annihilation on sampled non-rooted pairs.
    """
    check_caps(G, facet_cap, ridge_cap)
    rng = random.Random(seed)
    nr = len(G.ridges)
    length = nr + 1
    charpoly = laplacian_polynomial(G)
    checks = [Check("charpoly_nonnegative", all(c >= 0 for c in charpoly.coeffs), 1,
                    None, {"charpoly": poly_strings(charpoly, length)})]

    coeffs = [0] * length
    spanning_by_root: dict[tuple[int, ...], int] = {}
    r = rank(G.top_boundary())
    structure = Check("homology_structure", True)
    forests = list(enumerate_rooted_forests(G, facet_cap, ridge_cap))
    for rf in forests:
        coeffs[len(rf.root)] += rf.weight ** 2
        if len(rf.facets) == r:
            spanning_by_root[rf.root] = spanning_by_root.get(rf.root, 0) + rf.weight ** 2
    checks.append(_poly_check("rooted_forest_identity", IntPoly(coeffs), charpoly, length))

    sample = forests if len(forests) <= ordering_samples else rng.sample(forests, ordering_samples)
    for rf in sample:
        structure.checked += 1
        if homology_structure(G, rf.facets, rf.root).torsion_order != rf.weight:
            structure.passed = False
            structure.counterexample = {"facets": list(rf.facets), "root": list(rf.root)}
            break
    checks.append(structure)

    weighted = Check("weighted_forest_identity", True)
    for _ in range(points):
        a = WeightAssignment.random(G, rng)
        lhs, rhs = weighted_rooted_forest_sum(G, a, facet_cap, ridge_cap)
        weighted.checked += 1
        if lhs != rhs and weighted.passed:
            weighted.passed = False
            weighted.counterexample = {"lhs": str(lhs), "rhs": str(rhs)}
    checks.append(weighted)
    if not full:
        return checks

    corollary = Check("matrix_tree_corollary", True)
    for R in roots(G, ridge_cap):
        if corollary.checked >= root_cap:
            break
        corollary.checked += 1
        lhs = spanning_by_root.get(R, 0)
        rhs = matrix_tree_rhs(G, R)
        if lhs != rhs:
            corollary.passed = False
            corollary.counterexample = {"root": list(R), "lhs": str(lhs), "rhs": str(rhs)}
            break
    corollary.detail = {"roots": corollary.checked}
    checks.append(corollary)

    by_sign = [0] * length
    by_strip = [0] * length
    signed_sum = Check("signed_orientation_sum", True)
    lower = Check("orientation_count_lower_bound", True)
    strip = Check("strip_sign", True)
    independence = Check("sign_independence", True)
    sampled = {(rf.facets, rf.root) for rf in sample}
    for of in oriented_forests(G, facet_cap, ridge_cap):
        k = len(of.root)
        signed_sum.checked += 1
        lower.checked += 1
        if sum(of.signs) != of.weight and signed_sum.passed:
            signed_sum.passed = False
            signed_sum.counterexample = {"facets": list(of.facets), "root": list(of.root),
                                         "sum": sum(of.signs), "weight": of.weight}
        if len(of.orientations) < of.weight and lower.passed:
            lower.passed = False
            lower.counterexample = {"facets": list(of.facets), "root": list(of.root),
                                    "count": len(of.orientations), "weight": of.weight}
        for phi, s in zip(of.orientations, of.signs):
            for phi2, s2 in zip(of.orientations, of.signs):
                parity = strip_decomposition(G, phi, phi2).sign
                by_sign[k] += s * s2
                by_strip[k] += parity
                strip.checked += 1
                if s * s2 != parity and strip.passed:
                    strip.passed = False
                    strip.counterexample = {"facets": list(of.facets), "root": list(of.root),
                                            "phi": phi.pairs(), "phi_prime": phi2.pairs()}
        if (of.facets, of.root) in sampled:
            for phi, s in zip(of.orientations, of.signs):
                for _ in range(5):
                    alpha, beta = random_orderings(phi, rng)
                    independence.checked += 1
                    if orientation_sign(G, of.facets, of.root, phi, alpha, beta) != s \
                            and independence.passed:
                        independence.passed = False
                        independence.counterexample = {"facets": list(of.facets),
                                                       "root": list(of.root),
                                                       "phi": phi.pairs(),
                                                       "alpha": alpha, "beta": beta}
    checks.append(_poly_check("bidirected_sign_identity", IntPoly(by_sign), charpoly, length))
    checks.append(_poly_check("bidirected_strip_identity", IntPoly(by_strip), charpoly, length))
    checks += [signed_sum, lower, strip, independence]

    wb = Check("weighted_bidirected_identity", True)
    for _ in range(points):
        a = WeightAssignment.random(G, rng)
        lhs, rhs = weighted_bidirected_sum(G, a, facet_cap, ridge_cap)
        wb.checked += 1
        if lhs != rhs and wb.passed:
            wb.passed = False
            wb.counterexample = {"lhs": str(lhs), "rhs": str(rhs)}
    checks.append(wb)

    annihilation = Check("annihilation", True)
    for F, R in sample_size_matched_pairs(G, rng, annihilation_samples, rooted=False):
        annihilation.checked += 1
        value = sum_lambda_unrooted(G, F, R)
        if value != 0 or is_rooted_forest(G, F, R):
            annihilation.passed = False
            annihilation.counterexample = {"facets": list(F), "root": list(R), "sum": value}
            break
    checks.append(annihilation)
    return checks


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)

