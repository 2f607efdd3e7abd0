"""Graded right modules at finite depth: point modules, multiplicity-2 fat
point modules through the 2x2 matrix embedding, restriction/decomposition
between the algebra and its twist, and annihilator-based point recovery."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sklytwist.freealg import NGENS, NcPoly
from sklytwist.klein import KleinElement
from sklytwist.linalg import dense_kernel, dense_rank
from sklytwist.points import MultilinearSystem, Point, g_action, successor
from sklytwist.presentations import Presentation
from sklytwist.scalars import FieldSpec, TowerScalar

Matrix = list[list[TowerScalar]]


class NotEnoughNonzeroCoordinates(Exception):
    """Fat-point constructions need a base point with >= 3 nonzero coordinates."""


class IdentificationFailure(Exception):
    """A degree-1 annihilator did not have point-module shape."""


@dataclass
class PointModuleData:
    """A point module truncated at depth D: row j holds the coordinates of the
    j-fold successor of the base point, which are the action scalars
    m_j · (generator i) = row[j][i] · m_{j+1}."""

    system: MultilinearSystem
    base: Point
    rows: list[Point]

    @property
    def depth(self) -> int:
        return len(self.rows) - 1

    def row(self, j: int) -> tuple[TowerScalar, ...]:
        return self.rows[j].coords


def point_module(system: MultilinearSystem, p: Point, depth: int) -> PointModuleData:
    """Iterate the successor map; fails with the kernel errors when the scheme
    does not support a point module of this depth at p."""
    rows = [p]
    current = p
    for _ in range(depth):
        current = successor(system, current)
        rows.append(current)
    return PointModuleData(system, p, rows)


@dataclass
class ModuleSlice:
    """A graded right module truncated at degree D, given extensionally:
    per-degree dimensions and one action matrix per generator per degree.
    Vectors are rows; acting by generator i maps degree j to j+1 via
    v -> v · actions[i][j]."""

    spec: FieldSpec
    dims: list[int]
    actions: list[list[Matrix]]  # [generator][degree]

    @property
    def depth(self) -> int:
        return len(self.dims) - 1

    def act(self, vector: Sequence[TowerScalar], gen: int, degree: int) -> list[TowerScalar]:
        matrix = self.actions[gen][degree]
        ncols = self.dims[degree + 1]
        out = [self.spec.zero()] * ncols
        for r, coeff in enumerate(vector):
            if coeff.is_zero():
                continue
            row = matrix[r]
            for c in range(ncols):
                if not row[c].is_zero():
                    out[c] = out[c] + coeff * row[c]
        return out

    def word_matrix(self, word: tuple[int, ...], degree: int) -> Matrix:
        """Product of action matrices realizing a word from the given degree."""
        size = self.dims[degree]
        acc: Matrix = [
            [self.spec.one() if r == c else self.spec.zero() for c in range(size)]
            for r in range(size)
        ]
        d = degree
        for letter in word:
            nxt = self.actions[letter][d]
            acc = _mat_mul(acc, nxt, self.spec)
            d += 1
        return acc


def _mat_mul(a: Matrix, b: Matrix, spec: FieldSpec) -> Matrix:
    rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[spec.zero()] * cols for _ in range(rows)]
    for r in range(rows):
        for k in range(mid):
            v = a[r][k]
            if v.is_zero():
                continue
            for c in range(cols):
                if not b[k][c].is_zero():
                    out[r][c] = out[r][c] + v * b[k][c]
    return out


def slice_satisfies(module: ModuleSlice, pres: Presentation) -> bool:
    """Every relation evaluates to the zero matrix at every degree of the slice."""
    spec = module.spec
    for rel in pres.relations:
        d = rel.degree()
        for j in range(module.depth - d + 1):
            size_in, size_out = module.dims[j], module.dims[j + d]
            total = [[spec.zero()] * size_out for _ in range(size_in)]
            for w, c in rel.terms.items():
                m = module.word_matrix(w, j)
                for r in range(size_in):
                    for col in range(size_out):
                        if not m[r][col].is_zero():
                            total[r][col] = total[r][col] + c * m[r][col]
            if any(not e.is_zero() for row in total for e in row):
                return False
    return True


# -- fat points via the 2x2 embedding ----------------------------------------------


def _pair_action_matrices(
    row: tuple[TowerScalar, ...], spec: FieldSpec
) -> list[Matrix]:
    """Degree-j action of the four twisted generators on coordinate pairs,
    coming from diag(x0,x0), diag(x1,-x1), antidiag(x2,x2), antidiag(-x3,x3)."""
    a0, a1, a2, a3 = row
    z = spec.zero()
    return [
        [[a0, z], [z, a0]],
        [[a1, z], [z, -a1]],
        [[z, a2], [a2, z]],
        [[z, -a3], [a3, z]],
    ]


def fat_point(pm: PointModuleData, twisted: Presentation, depth: int) -> ModuleSlice:
    """The multiplicity-2 module on pairs of point-module coordinates, acted on
    by the twisted generators through their matrix model.  The twisted
    relations are checked to annihilate the slice."""
    if pm.base.nonzero_count() < 3:
        raise NotEnoughNonzeroCoordinates(
            f"base point {pm.base!r} has fewer than 3 nonzero coordinates"
        )
    if depth > pm.depth:
        raise ValueError("point module data is too shallow for the requested depth")
    spec = twisted.spec
    actions = [[None] * depth for _ in range(NGENS)]  # type: ignore[list-item]
    for j in range(depth):
        mats = _pair_action_matrices(pm.row(j), spec)
        for i in range(NGENS):
            actions[i][j] = mats[i]
    module = ModuleSlice(spec, [2] * (depth + 1), actions)  # type: ignore[arg-type]
    if not slice_satisfies(module, twisted):
        raise AssertionError("twisted relations do not annihilate the fat-point slice")
    return module


def point_module_slice(pm: PointModuleData, depth: int | None = None) -> ModuleSlice:
    """The rank-1 slice of the point module itself."""
    depth = pm.depth if depth is None else depth
    spec = pm.base.spec
    actions = [
        [[[pm.row(j)[i]]] for j in range(depth)]
        for i in range(NGENS)
    ]
    return ModuleSlice(spec, [1] * (depth + 1), actions)


# -- span growth checks ----------------------------------------------------------------


def _span_dimension(vectors: list[list[TowerScalar]]) -> int:
    return dense_rank(vectors) if vectors else 0


def generated_in_degree_zero(module: ModuleSlice) -> bool:
    """Iterated images of the full degree-0 component span every degree."""
    spec = module.spec
    basis = [
        [spec.one() if c == r else spec.zero() for c in range(module.dims[0])]
        for r in range(module.dims[0])
    ]
    for j in range(module.depth):
        images = [module.act(v, i, j) for v in basis for i in range(NGENS)]
        if _span_dimension(images) < module.dims[j + 1]:
            return False
        basis = images
    return True


def cyclic_codimension_check(
    module: ModuleSlice, vector: Sequence[TowerScalar], degree: int
) -> bool:
    """The submodule generated by a degree-j vector reaches the whole
    degree-(j+1) component in one step."""
    vec = list(vector)
    if all(c.is_zero() for c in vec):
        raise ValueError("cyclic generator must be nonzero")
    images = [module.act(vec, i, degree) for i in range(NGENS)]
    return _span_dimension(images) == module.dims[degree + 1]


# -- restriction and decomposition -------------------------------------------------------


def _quad_action_matrices(
    row: tuple[TowerScalar, ...], spec: FieldSpec
) -> list[Matrix]:
    """Degree-j action of the partner algebra's generators on quadruples,
    i.e. the 4x4 embedding diag, diag(1,-1,-1,1)·x1, and the antidiagonal
    x2, x3 blocks."""
    a0, a1, a2, a3 = row
    z = spec.zero()
    return [
        [[a0, z, z, z], [z, a0, z, z], [z, z, a0, z], [z, z, z, a0]],
        [[a1, z, z, z], [z, -a1, z, z], [z, z, -a1, z], [z, z, z, a1]],
        [[z, z, z, a2], [z, z, a2, z], [z, a2, z, z], [a2, z, z, z]],
        [[z, z, z, a3], [z, z, -a3, z], [z, -a3, z, z], [a3, z, z, z]],
    ]


def quad_slice(pm: PointModuleData, depth: int) -> ModuleSlice:
    """The double of the fat point as a module over the partner algebra."""
    if depth > pm.depth:
        raise ValueError("point module data is too shallow for the requested depth")
    spec = pm.base.spec
    actions = [[None] * depth for _ in range(NGENS)]  # type: ignore[list-item]
    for j in range(depth):
        mats = _quad_action_matrices(pm.row(j), spec)
        for i in range(NGENS):
            actions[i][j] = mats[i]
    return ModuleSlice(spec, [4] * (depth + 1), actions)  # type: ignore[arg-type]


@dataclass
class DecompositionReport:
    summands: list[tuple[list[TowerScalar], Point]]

    def points(self) -> list[Point]:
        return [p for _, p in self.summands]

    def to_json_dict(self) -> dict:
        from sklytwist.scalars import scalar_to_str

        return {
            "summands": [
                {
                    "generator": [scalar_to_str(c) for c in vec],
                    "point": p.to_strings(),
                }
                for vec, p in self.summands
            ]
        }


def annihilator_degree1(
    module: ModuleSlice, vector: Sequence[TowerScalar], spec: FieldSpec | None = None
) -> list[NcPoly]:
    """Basis of the degree-1 elements sum(c_i · gen_i) killing a degree-0 vector."""
    spec = spec or module.spec
    vec = list(vector)
    if all(c.is_zero() for c in vec):
        raise ValueError("annihilator of the zero vector is everything")
    images = [module.act(vec, i, 0) for i in range(NGENS)]
    ncols = module.dims[1]
    matrix = [[images[i][c] for i in range(NGENS)] for c in range(ncols)]
    kernel = dense_kernel(matrix, spec)
    basis = []
    for coeffs in kernel:
        basis.append(
            NcPoly(spec, {(i,): c for i, c in enumerate(coeffs) if not c.is_zero()})
        )
    return basis


def identify_point(annihilator: list[NcPoly], spec: FieldSpec) -> Point:
    """The unique point whose hyperplane of degree-1 annihilators is the given
    3-dimensional subspace."""
    if len(annihilator) != 3:
        raise IdentificationFailure(
            f"annihilator dimension {len(annihilator)} != 3: not a point module"
        )
    rows = [[f.coeff((i,)) for i in range(NGENS)] for f in annihilator]
    kernel = dense_kernel(rows, spec)
    if len(kernel) != 1:
        raise IdentificationFailure("annihilator does not cut out a single point")
    return Point(kernel[0])


_SUMMAND_PATTERNS: tuple[tuple[tuple[int, int, int, int], KleinElement], ...] = (
    ((1, 0, 0, 1), KleinElement.E),
    ((1, 0, 0, -1), KleinElement.G1),
    ((0, 1, 1, 0), KleinElement.G2),
    ((0, 1, -1, 0), KleinElement.G1G2),
)


def restrict_and_decompose(pm: PointModuleData, depth: int) -> DecompositionReport:
    """Split the quadruple module into its four cyclic summands and identify
    each summand's point by its degree-1 annihilator.

    The expected points are the group translates of the base point; each
    summand line must stay 1-dimensional per degree and the four lines must
    jointly span."""
    if pm.base.nonzero_count() < 3:
        raise NotEnoughNonzeroCoordinates(
            f"base point {pm.base!r} has fewer than 3 nonzero coordinates"
        )
    module = quad_slice(pm, depth)
    spec = module.spec
    summands = []
    per_degree_lines: list[list[list[TowerScalar]]] = [[] for _ in range(depth + 1)]
    for pattern, _ in _SUMMAND_PATTERNS:
        vec = [spec.rational(c) for c in pattern]
        anni = annihilator_degree1(module, vec, spec)
        point = identify_point(anni, spec)
        # walk the cyclic submodule: it must remain a line at every degree
        current = [vec]
        per_degree_lines[0].append(vec)
        for j in range(depth):
            images = [module.act(v, i, j) for v in current for i in range(NGENS)]
            dim = _span_dimension(images)
            if dim != 1:
                raise IdentificationFailure(
                    f"cyclic summand is {dim}-dimensional in degree {j + 1}"
                )
            rep = next(v for v in images if any(not c.is_zero() for c in v))
            current = [rep]
            per_degree_lines[j + 1].append(rep)
        summands.append((vec, point))
    for j, lines in enumerate(per_degree_lines):
        if _span_dimension(lines) != 4:
            raise IdentificationFailure(f"summands do not span in degree {j}")
    return DecompositionReport(summands)


# -- intertwiners and annihilation by central elements --------------------------------------


_INTERTWINERS: dict[KleinElement, tuple[tuple[int, int], tuple[int, int]]] = {
    KleinElement.E: ((1, 0), (0, 1)),
    KleinElement.G1: ((1, 0), (0, -1)),
    KleinElement.G2: ((0, 1), (1, 0)),
    KleinElement.G1G2: ((0, -1), (1, 0)),
}


def group_intertwiner_check(pm: PointModuleData, g: KleinElement, depth: int) -> bool:
    """Right multiplication by the 2x2 matrix of g intertwines the pair modules
    at the base point and its g-translate, degree by degree (up to the
    per-degree scalar coming from projective row normalization)."""
    translated = point_module(pm.system, g_action(pm.base, g), depth)
    spec = pm.base.spec
    T = [[spec.rational(c) for c in row] for row in _INTERTWINERS[g]]
    for j in range(depth):
        mats_p = _pair_action_matrices(pm.row(j), spec)
        mats_q = _pair_action_matrices(translated.row(j), spec)
        lhs = [_mat_mul(mats_p[i], T, spec) for i in range(NGENS)]
        rhs = [_mat_mul(T, mats_q[i], spec) for i in range(NGENS)]
        ratio: TowerScalar | None = None
        for i in range(NGENS):
            for r in range(2):
                for c in range(2):
                    a, b = lhs[i][r][c], rhs[i][r][c]
                    if a.is_zero() != b.is_zero():
                        return False
                    if a.is_zero():
                        continue
                    q = a * b.invert()
                    if ratio is None:
                        ratio = q
                    elif not (q - ratio).is_zero():
                        return False
    return True


def theta_kills(pm: PointModuleData, theta: NcPoly) -> bool:
    """Whether a degree-2 central element annihilates the degree-0 generator of
    the point module: sum of coeff · row0[a] · row1[b] over the words (a, b)."""
    spec = pm.base.spec
    total = spec.zero()
    row0, row1 = pm.row(0), pm.row(1)
    for w, c in theta.terms.items():
        if len(w) != 2:
            raise ValueError("theta must be homogeneous of degree 2")
        total = total + c * row0[w[0]] * row1[w[1]]
    return total.is_zero()
