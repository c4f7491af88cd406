"""Simplicial and cell complexes with their integer boundary matrices.

Faces of a simplicial complex are strictly increasing tuples of positive
vertex labels.  Within each grade the faces are kept in lexicographic order
and that order indexes the rows and columns of every boundary matrix, so
determinant signs downstream are reproducible.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Any, Iterable, Sequence

from .linalg import Matrix, is_zero, matmul


class ComplexError(ValueError):
    """Malformed complex: bad facets, bad file, or a boundary map with D.D != 0."""


class _Complex:
    dimension: int

    def faces(self, k: int) -> list:
        raise NotImplementedError

    def boundary_matrix(self, k: int) -> Matrix:
        raise NotImplementedError

    def face_counts(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dimension + 1)]

    @property
    def facets(self) -> list:
        """The top-dimensional faces (columns of the top boundary matrix)."""
        return self.faces(self.dimension)

    @property
    def ridges(self) -> list:
        """The codimension-one faces (rows of the top boundary matrix)."""
        return self.faces(self.dimension - 1)

    def top_boundary(self) -> Matrix:
        return self.boundary_matrix(self.dimension)

    def _check_grade(self, k: int) -> None:
        if not 1 <= k <= self.dimension:
            raise ValueError(f"boundary grade {k} outside 1..{self.dimension}")


class SimplicialComplex(_Complex):
    """A simplicial complex stored as graded, lexicographically sorted faces."""

    kind = "simplicial"

    def __init__(self, faces_by_dim: Sequence[Sequence[tuple[int, ...]]]):
        self.faces_by_dim = [sorted(set(grade)) for grade in faces_by_dim]
        self.dimension = len(self.faces_by_dim) - 1
        self.index = [{f: i for i, f in enumerate(grade)} for grade in self.faces_by_dim]
        self._boundaries: dict[int, Matrix] = {}
        for k in range(1, self.dimension + 1):
            for f in self.faces_by_dim[k]:
                for sub in combinations(f, k):
                    if sub not in self.index[k - 1]:
                        raise ComplexError(f"face {f} has missing subface {sub}")

    @property
    def vertex_count(self) -> int:
        return len(self.faces_by_dim[0])

    def faces(self, k: int) -> list[tuple[int, ...]]:
        return self.faces_by_dim[k]

    def maximal_faces(self) -> list[tuple[int, ...]]:
        """Faces not contained in a larger face, by grade then lexicographically."""
        covered = set()
        for k in range(1, self.dimension + 1):
            for f in self.faces_by_dim[k]:
                covered.update(combinations(f, k))
        return [f for grade in self.faces_by_dim for f in grade if f not in covered]

    def boundary_matrix(self, k: int) -> Matrix:
        self._check_grade(k)
        if k not in self._boundaries:
            rows = self.index[k - 1]
            cols = self.faces_by_dim[k]
            D = [[0] * len(cols) for _ in rows]
            for c, f in enumerate(cols):
                for j in range(k + 1):
                    r = rows[f[:j] + f[j + 1:]]
                    D[r][c] = -1 if j % 2 else 1
            self._boundaries[k] = D
        return [row[:] for row in self._boundaries[k]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.faces_by_dim == other.faces_by_dim

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dimension}, f={self.face_counts()})"


class CellComplex(_Complex):
    """A cell complex given by face identifiers and incidence matrices.

    `incidence[k]` has rows indexed by the (k-1)-faces and columns by the
    k-faces, for k = 1..dimension.  Consecutive maps must compose to zero.
    """

    kind = "cell"

    def __init__(self, face_ids_by_dim: Sequence[Sequence[Any]],
                 incidence_by_dim: dict[int, Matrix]):
        self.face_ids_by_dim = [list(grade) for grade in face_ids_by_dim]
        self.dimension = len(self.face_ids_by_dim) - 1
        if self.dimension < 1:
            raise ComplexError("cell complex needs dimension >= 1")
        for k, grade in enumerate(self.face_ids_by_dim):
            if len(set(grade)) != len(grade):
                raise ComplexError(f"duplicate face id in grade {k}")
        self.incidence = {}
        for k in range(1, self.dimension + 1):
            if k not in incidence_by_dim:
                raise ComplexError(f"missing incidence matrix for grade {k}")
            D = [list(map(int, row)) for row in incidence_by_dim[k]]
            rows, cols = len(self.face_ids_by_dim[k - 1]), len(self.face_ids_by_dim[k])
            if len(D) != rows or any(len(row) != cols for row in D):
                raise ComplexError(f"incidence matrix {k} is not {rows}x{cols}")
            self.incidence[k] = D
        for k in range(2, self.dimension + 1):
            if not is_zero(matmul(self.incidence[k - 1], self.incidence[k])):
                raise ComplexError(f"boundary maps {k - 1} and {k} do not compose to zero")

    def faces(self, k: int) -> list:
        return self.face_ids_by_dim[k]

    def boundary_matrix(self, k: int) -> Matrix:
        self._check_grade(k)
        return [row[:] for row in self.incidence[k]]

    def __repr__(self) -> str:
        return f"CellComplex(dim={self.dimension}, f={self.face_counts()})"


Complex = SimplicialComplex | CellComplex


def build_simplicial(facets: Iterable[Iterable[int]], dimension: int | None = None) -> SimplicialComplex:
    """Downward closure of a facet list.

    `dimension` may be given to declare a d-dimensional complex whose facets
    are all of lower dimension (it then has no d-faces at all).
    """
    tops = []
    for facet in facets:
        verts = list(facet)
        if any(not isinstance(v, int) or isinstance(v, bool) or v <= 0 for v in verts):
            raise ComplexError(f"vertex labels must be positive integers: {verts}")
        if len(set(verts)) != len(verts):
            raise ComplexError(f"repeated vertex in facet {verts}")
        if len(verts) < 2:
            raise ComplexError(f"facets must have dimension >= 1: {verts}")
        tops.append(tuple(sorted(verts)))
    if not tops:
        raise ComplexError("no facets given")
    top = max(len(f) for f in tops) - 1
    if dimension is None:
        dimension = top
    elif dimension < top:
        raise ComplexError(f"declared dimension {dimension} below facet dimension {top}")
    grades: list[set[tuple[int, ...]]] = [set() for _ in range(dimension + 1)]
    for f in tops:
        for k in range(len(f)):
            grades[k].update(combinations(f, k + 1))
    return SimplicialComplex(grades)


def gen_complete(n: int, d: int) -> SimplicialComplex:
    """The complete d-dimensional complex on n vertices."""
    if not 1 <= d < n:
        raise ValueError(f"complete complex needs 1 <= d < n, got n={n}, d={d}")
    return build_simplicial(combinations(range(1, n + 1), d + 1))


def gen_simplex_boundary(n: int) -> SimplicialComplex:
    """All proper subsets of [n]: a triangulated (n-2)-sphere."""
    if n < 3:
        raise ValueError(f"simplex boundary needs n >= 3, got {n}")
    return build_simplicial(combinations(range(1, n + 1), n - 1))


def gen_bipyramid() -> SimplicialComplex:
    """Equatorial bipyramid: apexes 1 and 5 over the triangle 2,3,4, plus the equator."""
    facets = [f for f in combinations(range(1, 6), 3) if not (1 in f and 5 in f)]
    return build_simplicial(facets)


RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
]


def gen_projective_plane_6() -> SimplicialComplex:
    """Six-vertex triangulation of the real projective plane."""
    return build_simplicial(RP2_FACETS)


def _cube_face_id(free: Sequence[int], fixed: dict[int, int], n: int) -> str:
    return "".join("*" if i in free else str(fixed[i]) for i in range(n))


def gen_hypercube(n: int, d: int) -> CellComplex:
    """The d-skeleton of the n-cube as a cubical complex.

    A k-face is a string over {0, 1, *} with k stars marking its free
    coordinates.  For free coordinates j_1 < ... < j_k the boundary is
    sum_i (-1)^(i-1) (face at x_{j_i} = 1  -  face at x_{j_i} = 0).
    """
    if not 1 <= d <= n:
        raise ValueError(f"hypercube skeleton needs 1 <= d <= n, got n={n}, d={d}")
    grades = []
    for k in range(d + 1):
        ids = []
        for free in combinations(range(n), k):
            rest = [i for i in range(n) if i not in free]
            for bits in range(2 ** len(rest)):
                fixed = {i: (bits >> b) & 1 for b, i in enumerate(rest)}
                ids.append(_cube_face_id(free, fixed, n))
        grades.append(sorted(ids))
    incidence = {}
    for k in range(1, d + 1):
        rows = {fid: i for i, fid in enumerate(grades[k - 1])}
        D = [[0] * len(grades[k]) for _ in grades[k - 1]]
        for c, fid in enumerate(grades[k]):
            stars = [i for i, ch in enumerate(fid) if ch == "*"]
            for pos, j in enumerate(stars):
                sign = -1 if pos % 2 else 1
                for bit, s in (("1", sign), ("0", -sign)):
                    D[rows[fid[:j] + bit + fid[j + 1:]]][c] = s
        incidence[k] = D
    return CellComplex(grades, incidence)


# ----------------------------------------------------------------------
# complex file format (JSON)

def to_document(G: Complex) -> dict:
    if isinstance(G, SimplicialComplex):
        doc: dict[str, Any] = {"type": "simplicial",
                               "facets": [list(f) for f in G.maximal_faces()]}
        top = max(len(f) for f in G.maximal_faces()) - 1
        if top != G.dimension:
            doc["dimension"] = G.dimension
        return doc
    return {
        "type": "cell",
        "dimension": G.dimension,
        "faces": {str(k): list(G.faces(k)) for k in range(G.dimension + 1)},
        "incidence": {
            str(k): [[i, j, v] for i, row in enumerate(G.incidence[k])
                     for j, v in enumerate(row) if v]
            for k in range(1, G.dimension + 1)
        },
    }


def from_document(doc: Any) -> Complex:
    if not isinstance(doc, dict):
        raise ComplexError("complex document must be a JSON object")
    kind = doc.get("type")
    if kind == "simplicial":
        facets = doc.get("facets")
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise ComplexError("simplicial document needs a list of facets")
        return build_simplicial(facets, doc.get("dimension"))
    if kind == "cell":
        try:
            d = int(doc["dimension"])
            faces = doc["faces"]
            grades = [list(faces[str(k)]) for k in range(d + 1)]
            incidence = {}
            for k in range(1, d + 1):
                D = [[0] * len(grades[k]) for _ in grades[k - 1]]
                for i, j, v in doc["incidence"][str(k)]:
                    if not (0 <= i < len(grades[k - 1]) and 0 <= j < len(grades[k])):
                        raise ComplexError(f"incidence triplet ({i}, {j}) out of range in grade {k}")
                    if D[i][j]:
                        raise ComplexError(f"duplicate incidence triplet ({i}, {j}) in grade {k}")
                    D[i][j] = int(v)
                incidence[k] = D
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ComplexError):
                raise
            raise ComplexError(f"malformed cell document: {exc!r}") from exc
        return CellComplex(grades, incidence)
    raise ComplexError(f"unknown complex type {kind!r}")


def load(path: str) -> Complex:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"{path}: not valid JSON ({exc})") from exc
    return from_document(doc)


def dumps(G: Complex) -> str:
    return json.dumps(to_document(G), sort_keys=True) + "\n"


def euler_characteristic(G: Complex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(G.face_counts()))


def boundary_matrix(G: Complex, k: int) -> Matrix:
    """The k-th incidence matrix: rows are (k-1)-faces, columns k-faces."""
    return G.boundary_matrix(k)
