"""Noncommutative polynomials: finite linear combinations of words in four
generators with tower-scalar coefficients."""

from __future__ import annotations

from typing import Mapping

from sklytwist.klein import KleinElement
from sklytwist.scalars import FieldSpec, Rational, TowerScalar

Word = tuple[int, ...]

NGENS = 4


class NcPoly:
    """Sparse word -> coefficient map; no zero coefficients are stored."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: Mapping[Word, TowerScalar] | None = None):
        self.spec = spec
        self.terms: dict[Word, TowerScalar] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec) -> "NcPoly":
        return cls(spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> "NcPoly":
        return cls(spec, {(): spec.one()})

    @classmethod
    def gen(cls, spec: FieldSpec, j: int) -> "NcPoly":
        if not 0 <= j < NGENS:
            raise ValueError(f"generator index {j} out of range")
        return cls(spec, {(j,): spec.one()})

    @classmethod
    def word(cls, spec: FieldSpec, w: Word, coeff: TowerScalar | Rational = 1) -> "NcPoly":
        return cls(spec, {tuple(w): spec.coerce(coeff)})

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """N-degree of a homogeneous polynomial."""
        degs = {len(w) for w in self.terms}
        if len(degs) != 1:
            raise ValueError("zero or inhomogeneous polynomial has no degree")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def g_degree(self, gdegrees: tuple[KleinElement, ...]) -> KleinElement | None:
        """G-degree under a grading, or None when not G-homogeneous."""
        found: KleinElement | None = None
        for w in self.terms:
            d = word_g_degree(w, gdegrees)
            if found is None:
                found = d
            elif d is not found:
                return None
        return found

    def coeff(self, w: Word) -> TowerScalar:
        return self.terms.get(tuple(w), self.spec.zero())

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            v = c if acc is None else acc + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        return NcPoly(self.spec, out)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other: "NcPoly | TowerScalar | Rational") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.scale(other)
        out: dict[Word, TowerScalar] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                acc = out.get(w)
                v = c if acc is None else acc + c
                if v.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = v
        return NcPoly(self.spec, out)

    def __rmul__(self, other: "TowerScalar | Rational") -> "NcPoly":
        return self.scale(other)

    def scale(self, c: TowerScalar | Rational) -> "NcPoly":
        c = self.spec.coerce(c)
        if c.is_zero():
            return NcPoly(self.spec)
        return NcPoly(self.spec, {w: v * c for w, v in self.terms.items()})

    def map_coeffs(self, fn) -> "NcPoly":
        return NcPoly(self.spec, {w: fn(w, c) for w, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"NcPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def wname(w: Word) -> str:
            return "·".join(f"x{j}" for j in w) if w else "1"
        return " + ".join(f"({c})·{wname(w)}" for w, c in sorted(self.terms.items()))


def word_g_degree(w: Word, gdegrees: tuple[KleinElement, ...]) -> KleinElement:
    d = KleinElement.E
    for j in w:
        d = d * gdegrees[j]
    return d


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def anticommutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b + b * a


def apply_group_element(
    f: NcPoly, g: KleinElement, gdegrees: tuple[KleinElement, ...]
) -> NcPoly:
    """The diagonal action of g: each generator x_j is scaled by chi_{deg x_j}(g)."""
    from sklytwist.klein import character

    out: dict[Word, TowerScalar] = {}
    for w, c in f.terms.items():
        sign = 1
        for j in w:
            sign *= character(gdegrees[j], g)
        out[w] = c if sign == 1 else -c
    return NcPoly(f.spec, out)
