"""The point scheme machinery: multilinearized relations, successor maps by
kernel extraction, the 20 closed points of the twisted algebra with their
group action and orbits, the curve quadrics, and the two-zero-coordinate
rank exclusion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from sklytwist.klein import GROUP, KleinElement
from sklytwist.linalg import dense_kernel
from sklytwist.presentations import Presentation
from sklytwist.scalars import (
    FieldSpec,
    MissingRadicalError,
    Rational,
    TowerScalar,
    scalar_to_str,
    sqrt_in,
)


class KernelDimZero(Exception):
    """The coefficient matrix has a trivial kernel: not a point of the scheme."""


class KernelDimHigh(Exception):
    """Kernel dimension >= 2: fat or degenerate locus, no unique successor."""


class DegenerateSeed(Exception):
    """Curve-point seed produced a point with fewer than three nonzero coordinates."""


class Point:
    """Projective point of P^3 over the tower, normalized so the first nonzero
    coordinate is 1."""

    __slots__ = ("spec", "coords")

    def __init__(self, coords: Sequence[TowerScalar]):
        coords = tuple(coords)
        if len(coords) != 4:
            raise ValueError("a point needs four coordinates")
        lead = next((c for c in coords if not c.is_zero()), None)
        if lead is None:
            raise ValueError("(0,0,0,0) is not a projective point")
        inv = lead.invert()
        self.coords = tuple(c * inv for c in coords)
        self.spec = coords[0].spec

    def __getitem__(self, j: int) -> TowerScalar:
        return self.coords[j]

    def nonzero_count(self) -> int:
        return sum(not c.is_zero() for c in self.coords)

    def projectively_equal(self, other: "Point") -> bool:
        """All 2x2 cross products vanish (robust independent of normalization)."""
        a, b = self.coords, other.coords
        for i in range(4):
            for j in range(i + 1, 4):
                if not (a[i] * b[j] - a[j] * b[i]).is_zero():
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.projectively_equal(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "Point(" + ", ".join(scalar_to_str(c) for c in self.coords) + ")"

    def to_strings(self) -> list[str]:
        return [scalar_to_str(c) for c in self.coords]


def g_action(p: Point, g: KleinElement) -> Point:
    """Sign action on coordinates: g1 flips the last two, g2 the odd ones,
    g1g2 the middle two."""
    signs = _SIGNS[g]
    return Point(tuple(c if s > 0 else -c for c, s in zip(p.coords, signs)))


_SIGNS = {
    KleinElement.E: (1, 1, 1, 1),
    KleinElement.G1: (1, 1, -1, -1),
    KleinElement.G2: (1, -1, 1, -1),
    KleinElement.G1G2: (1, -1, -1, 1),
}


class MultilinearSystem:
    """Six bilinear forms on P^3 x P^3, one per quadratic relation; the form
    tensor of relation k is forms[k][a][b] = coeff of the word (a, b)."""

    __slots__ = ("spec", "forms")

    def __init__(self, spec: FieldSpec, forms: Sequence[Sequence[Sequence[TowerScalar]]]):
        self.spec = spec
        self.forms = [[list(row) for row in form] for form in forms]

    def evaluate(self, k: int, p: Point, q: Point) -> TowerScalar:
        total = self.spec.zero()
        form = self.forms[k]
        for a in range(4):
            if p[a].is_zero():
                continue
            for b in range(4):
                c = form[a][b]
                if not c.is_zero():
                    total = total + c * p[a] * q[b]
        return total

    def vanishes_at(self, p: Point, q: Point) -> bool:
        return all(self.evaluate(k, p, q).is_zero() for k in range(len(self.forms)))


def multilinearize(pres: Presentation) -> MultilinearSystem:
    """Split each quadratic relation across two copies of the coordinate space."""
    spec = pres.spec
    zero = spec.zero()
    forms = []
    for rel in pres.relations:
        if rel.degree() != 2:
            raise ValueError("multilinearization needs quadratic relations")
        form = [[zero] * 4 for _ in range(4)]
        for (a, b), c in rel.terms.items():
            form[a][b] = form[a][b] + c
        forms.append(form)
    return MultilinearSystem(spec, forms)


def coefficient_matrix(system: MultilinearSystem, p: Point) -> list[list[TowerScalar]]:
    """The 6x4 matrix M(p) with M(p)·q = 0 characterizing the successors of p."""
    zero = system.spec.zero()
    rows = []
    for form in system.forms:
        row = []
        for j in range(4):
            total = zero
            for a in range(4):
                c = form[a][j]
                if not c.is_zero() and not p[a].is_zero():
                    total = total + c * p[a]
            row.append(total)
        rows.append(row)
    return rows


def successor(system: MultilinearSystem, p: Point) -> Point:
    """The unique projective kernel vector of M(p).

    For the untwisted system this computes the shift automorphism's image; for
    the twisted system it computes the order-2 automorphism of the 20-point
    scheme.
    """
    kernel = dense_kernel(coefficient_matrix(system, p), system.spec)
    if not kernel:
        raise KernelDimZero(f"{p!r} is not on the point scheme")
    if len(kernel) > 1:
        raise KernelDimHigh(f"kernel dimension {len(kernel)} at {p!r}")
    return Point(kernel[0])


# -- the 20 known points -------------------------------------------------------


def exceptional_points(spec: FieldSpec) -> list[Point]:
    one, zero = spec.one(), spec.zero()
    pts = []
    for j in range(4):
        coords = [zero] * 4
        coords[j] = one
        pts.append(Point(coords))
    return pts


def _point_radicals(
    alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar
) -> dict[str, TowerScalar]:
    """Inverse square roots needed by the closed points; raises when the tower
    lacks a radical (nothing is adjoined silently)."""
    spec = alpha.spec
    needed = {
        "a": alpha,
        "b": beta,
        "c": gamma,
        "ab": alpha * beta,
        "ac": alpha * gamma,
        "bc": beta * gamma,
    }
    out = {}
    missing = []
    for key, value in needed.items():
        root = spec.find_sqrt(value)
        if root is None:
            missing.append(f"sqrt of {scalar_to_str(value)}")
        else:
            out[key] = root.invert()
    if missing:
        raise MissingRadicalError(
            "field tower lacks required radicals: " + ", ".join(missing),
            tuple(missing),
        )
    return out


def known_point_pairs(
    alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar
) -> list[tuple[Point, Point]]:
    """The sixteen (p, successor p) pairs of the twisted point scheme beyond the
    coordinate points, exactly as displayed row by row."""
    spec = alpha.spec
    r = _point_radicals(alpha, beta, gamma)
    one, i = spec.one(), spec.i
    ra, rb, rc = r["a"], r["b"], r["c"]
    rab, rac, rbc = r["ab"], r["ac"], r["bc"]

    def pt(c1, c2, c3) -> Point:
        return Point((one, c1, c2, c3))

    pairs: list[tuple[Point, Point]] = []
    # phi-fixed quadruple (1, ±i, ±i, 1), (1, ±i, ∓i, -1)
    for s in (1, -1):
        fixed = pt(s * i, s * i, one)
        pairs.append((fixed, fixed))
    for s in (1, -1):
        fixed = pt(s * i, -s * i, -one)
        pairs.append((fixed, fixed))
    # (1, -(bc)^-1/2, ∓c^-1/2, ∓b^-1/2) -> sign-flipped partner
    for s in (1, -1):
        pairs.append((pt(-rbc, -s * rc, -s * rb), pt(-rbc, s * rc, s * rb)))
    # (1, (bc)^-1/2, ∓c^-1/2, ±b^-1/2)
    for s in (1, -1):
        pairs.append((pt(rbc, -s * rc, s * rb), pt(rbc, s * rc, -s * rb)))
    # (1, ±i c^-1/2, (ac)^-1/2, ±i a^-1/2)
    for s in (1, -1):
        pairs.append((pt(s * i * rc, rac, s * i * ra), pt(-s * i * rc, rac, -s * i * ra)))
    # (1, ∓i c^-1/2, -(ac)^-1/2, ±i a^-1/2)
    for s in (1, -1):
        pairs.append((pt(-s * i * rc, -rac, s * i * ra), pt(s * i * rc, -rac, -s * i * ra)))
    # (1, ±b^-1/2, ±i a^-1/2, i (ab)^-1/2)
    for s in (1, -1):
        pairs.append((pt(s * rb, s * i * ra, i * rab), pt(-s * rb, -s * i * ra, i * rab)))
    # (1, ±b^-1/2, ∓i a^-1/2, -i (ab)^-1/2)
    for s in (1, -1):
        pairs.append((pt(s * rb, -s * i * ra, -i * rab), pt(-s * rb, s * i * ra, -i * rab)))
    return pairs


def known_points(
    alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar
) -> list[Point]:
    """The four coordinate points plus the sixteen displayed points."""
    return exceptional_points(alpha.spec) + [p for p, _ in known_point_pairs(alpha, beta, gamma)]


# -- orbits ------------------------------------------------------------------------


@dataclass
class Orbit:
    members: list[Point]
    phi_label: KleinElement | None


@dataclass
class OrbitReport:
    orbits: list[Orbit]

    @property
    def sizes(self) -> list[int]:
        return sorted(len(o.members) for o in self.orbits)

    def labels(self) -> list[KleinElement | None]:
        return [o.phi_label for o in self.orbits]

    def to_json_dict(self) -> dict:
        return {
            "orbits": [
                {
                    "size": len(o.members),
                    "phi_label": o.phi_label.label if o.phi_label is not None else None,
                    "points": [p.to_strings() for p in o.members],
                }
                for o in self.orbits
            ]
        }


def orbit_report(points: Sequence[Point], system: MultilinearSystem) -> OrbitReport:
    """Partition a G-closed point list into orbits and attach to each orbit of
    size > 1 the group element whose action matches the successor map."""
    points = list(points)
    remaining = list(range(len(points)))

    def find(p: Point) -> int | None:
        for k in remaining:
            if points[k].projectively_equal(p):
                return k
        return None

    orbits: list[Orbit] = []
    while remaining:
        seed = points[remaining[0]]
        member_idx = []
        for g in GROUP:
            q = g_action(seed, g)
            k = find(q)
            if k is None:
                raise ValueError("point list is not closed under the group action")
            if k not in member_idx:
                member_idx.append(k)
        members = [points[k] for k in member_idx]
        for k in member_idx:
            remaining.remove(k)
        orbits.append(Orbit(members, _phi_label(members, system)))
    return OrbitReport(orbits)


def _phi_label(members: list[Point], system: MultilinearSystem) -> KleinElement | None:
    if len(members) == 1:
        return None
    succs = [successor(system, p) for p in members]
    for h in GROUP:
        if all(s.projectively_equal(g_action(p, h)) for p, s in zip(members, succs)):
            return h
    return None


# -- the curve --------------------------------------------------------------------


def curve_membership(
    p: Point, alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar
) -> bool:
    """The two quadrics: sum of squares, and
    y3^2 + ((1-gamma)/(1+alpha))·y1^2 + ((1+gamma)/(1-beta))·y2^2."""
    spec = p.spec
    one = spec.one()
    alpha, beta, gamma = (spec.coerce(v) for v in (alpha, beta, gamma))
    sq = [c * c for c in p.coords]
    q1 = sq[0] + sq[1] + sq[2] + sq[3]
    lam1 = (one - gamma) * (one + alpha).invert()
    lam2 = (one + gamma) * (one - beta).invert()
    q2 = sq[3] + lam1 * sq[1] + lam2 * sq[2]
    return q1.is_zero() and q2.is_zero()


def curve_point(
    alpha: TowerScalar,
    beta: TowerScalar,
    gamma: TowerScalar,
    seed: TowerScalar | Rational,
) -> tuple[FieldSpec, Point]:
    """A point on the curve with p0 = 1, p1 = seed: the quadrics are linear in
    p2^2 and p3^2, so solve and take square roots, adjoining radicals as
    needed.  Returns the (possibly extended) tower together with the point."""
    spec = alpha.spec
    one = spec.one()
    seed = spec.coerce(seed)
    lam1 = (one - gamma) * (one + alpha).invert()
    lam2 = (one + gamma) * (one - beta).invert()
    s2 = seed * seed
    # 1 + s2 + p2sq + p3sq = 0 and p3sq + lam1 s2 + lam2 p2sq = 0
    p2sq = (one + (one - lam1) * s2) * (lam2 - one).invert()
    p3sq = -(one + s2 + p2sq)
    spec2, p2 = sqrt_in(spec, p2sq, "rp2")
    spec3, p3 = sqrt_in(spec2, spec2.coerce(p3sq), "rp3")
    point = Point((spec3.one(), spec3.coerce(seed), spec3.coerce(p2), p3))
    if point.nonzero_count() < 3:
        raise DegenerateSeed(f"seed {seed} gives a zero square: {point!r}")
    if not curve_membership(point, spec3.coerce(alpha), spec3.coerce(beta), spec3.coerce(gamma)):
        raise AssertionError("constructed point fails the curve equations")
    return spec3, point


# -- rank exclusion -----------------------------------------------------------------


class Poly2:
    """Polynomials in two commuting indeterminates with tower coefficients;
    just enough arithmetic for symbolic minors."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: dict[tuple[int, int], TowerScalar] | None = None):
        self.spec = spec
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def scalar(cls, value: TowerScalar) -> "Poly2":
        return cls(value.spec, {(0, 0): value})

    @classmethod
    def variable(cls, spec: FieldSpec, which: int) -> "Poly2":
        exp = (1, 0) if which == 0 else (0, 1)
        return cls(spec, {exp: spec.one()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc = out.get(e)
            v = c if acc is None else acc + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return Poly2(self.spec, out)

    def __neg__(self) -> "Poly2":
        return Poly2(self.spec, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        out: dict[tuple[int, int], TowerScalar] = {}
        for (e1, e2), c1 in self.coeffs.items():
            for (f1, f2), c2 in other.coeffs.items():
                e = (e1 + f1, e2 + f2)
                v = c1 * c2
                acc = out.get(e)
                v = v if acc is None else acc + v
                if v.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = v
        return Poly2(self.spec, out)

    def monomial_value(self) -> tuple[tuple[int, int], TowerScalar] | None:
        """(exponents, coefficient) when the polynomial is a single term."""
        if len(self.coeffs) != 1:
            return None
        ((e, c),) = self.coeffs.items()
        return e, c

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly2(0)"
        terms = [f"({scalar_to_str(c)})·t0^{e[0]}·t1^{e[1]}" for e, c in sorted(self.coeffs.items())]
        return "Poly2(" + " + ".join(terms) + ")"


def _poly2_det(matrix: list[list[Poly2]]) -> Poly2:
    """Determinant by cofactor expansion along the first column."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    spec = matrix[0][0].spec
    total = Poly2(spec)
    for r in range(n):
        entry = matrix[r][0]
        if entry.is_zero():
            continue
        minor = [row[1:] for k, row in enumerate(matrix) if k != r]
        term = entry * _poly2_det(minor)
        total = total + (term if r % 2 == 0 else -term)
    return total


ZERO_PATTERNS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(4), 2))


def symbolic_coefficient_matrix(
    system: MultilinearSystem, nonzero: tuple[int, int]
) -> list[list[Poly2]]:
    """M(p) with the two coordinates in ``nonzero`` treated as fresh commuting
    indeterminates and the other two set to zero."""
    spec = system.spec
    coords = [Poly2(spec) for _ in range(4)]
    coords[nonzero[0]] = Poly2.variable(spec, 0)
    coords[nonzero[1]] = Poly2.variable(spec, 1)
    rows = []
    for form in system.forms:
        row = []
        for j in range(4):
            total = Poly2(spec)
            for a in range(4):
                c = form[a][j]
                if not c.is_zero():
                    total = total + Poly2.scalar(c) * coords[a]
            row.append(total)
        rows.append(row)
    return rows


def monomial_minor(
    system: MultilinearSystem, nonzero: tuple[int, int]
) -> tuple[tuple[int, ...], Poly2] | None:
    """A 4x4 minor of the symbolic M(p) that is a nonzero monomial in the two
    indeterminates, if one exists.  Such a minor certifies rank >= 4 at every
    point with exactly that pair of coordinates nonzero."""
    matrix = symbolic_coefficient_matrix(system, nonzero)
    for rows in itertools.combinations(range(6), 4):
        det = _poly2_det([matrix[r] for r in rows])
        if det.is_zero():
            continue
        if det.monomial_value() is not None:
            return rows, det
    return None


def two_zero_exclusion(system: MultilinearSystem) -> bool:
    """True iff every pattern of exactly two zero coordinates is excluded from
    the point scheme by a monomial minor."""
    return all(res["excluded"] for res in two_zero_exclusion_report(system))


def two_zero_exclusion_report(system: MultilinearSystem) -> list[dict]:
    report = []
    for zeros in ZERO_PATTERNS:
        nonzero = tuple(j for j in range(4) if j not in zeros)
        found = monomial_minor(system, nonzero)  # type: ignore[arg-type]
        entry = {
            "zero_coordinates": list(zeros),
            "excluded": found is not None,
        }
        if found is not None:
            rows, det = found
            entry["minor_rows"] = list(rows)
            entry["minor"] = repr(det)
        report.append(entry)
    return report
