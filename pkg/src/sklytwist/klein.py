"""The Klein four-group, its 2-cocycles, coboundaries and regular-representation
gradings on four generators."""

from __future__ import annotations

import itertools
from enum import IntEnum
from typing import Iterable, Mapping

from sklytwist.scalars import FieldSpec, TowerScalar


class KleinElement(IntEnum):
    """g1^p g2^q encoded as p + 2q; the group law is bitwise xor."""

    E = 0
    G1 = 1
    G2 = 2
    G1G2 = 3

    @property
    def p(self) -> int:
        return self & 1

    @property
    def q(self) -> int:
        return (self >> 1) & 1

    def __mul__(self, other: "KleinElement") -> "KleinElement":  # type: ignore[override]
        return KleinElement(int(self) ^ int(other))

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "KleinElement":
        try:
            return _BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown Klein element {label!r}") from None


_LABELS = {
    KleinElement.E: "e",
    KleinElement.G1: "g1",
    KleinElement.G2: "g2",
    KleinElement.G1G2: "g1g2",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}

GROUP = (KleinElement.E, KleinElement.G1, KleinElement.G2, KleinElement.G1G2)


def mu_sign(g: KleinElement, h: KleinElement) -> int:
    """The 2-cocycle (-1)^(p·s) for g = g1^p g2^q, h = g1^r g2^s."""
    return -1 if (g.p and h.q) else 1


def character(g: KleinElement, h: KleinElement) -> int:
    """chi_g(h) under the fixed identification of the group with its dual."""
    if g is KleinElement.E or h is KleinElement.E or g is h:
        return 1
    return -1


class CocycleTable:
    """A normalized 2-cocycle of the Klein four-group with values in a tower."""

    def __init__(self, values: Mapping[tuple[KleinElement, KleinElement], TowerScalar]):
        self.values = dict(values)
        if len(self.values) != 16:
            raise ValueError("a cocycle table needs all 16 group pairs")

    @classmethod
    def standard(cls, spec: FieldSpec) -> "CocycleTable":
        return cls({(g, h): spec.rational(mu_sign(g, h)) for g in GROUP for h in GROUP})

    def __call__(self, g: KleinElement, h: KleinElement) -> TowerScalar:
        return self.values[(g, h)]

    def is_cocycle(self) -> bool:
        """Normalization plus the cocycle identity over all 64 triples."""
        e = KleinElement.E
        for g in GROUP:
            if not (self(e, g).is_one() and self(g, e).is_one()):
                return False
        for g in GROUP:
            for h in GROUP:
                for l in GROUP:
                    if self(g, h) * self(g * h, l) != self(g, h * l) * self(h, l):
                        return False
        return True

    def pullback(self, aut: Mapping[KleinElement, KleinElement]) -> "CocycleTable":
        """The cocycle (g, h) -> mu(aut(g), aut(h))."""
        return CocycleTable({(g, h): self(aut[g], aut[h]) for g in GROUP for h in GROUP})

    def grid(self) -> list[list[str]]:
        """4x4 scalar-string grid in the group order e, g1, g2, g1g2."""
        from sklytwist.scalars import scalar_to_str

        return [[scalar_to_str(self(g, h)) for h in GROUP] for g in GROUP]


class Coboundary:
    """A function rho: G -> k^x with rho(e) = 1, all values invertible."""

    def __init__(self, values: Mapping[KleinElement, TowerScalar]):
        self.values = dict(values)
        if not self.values[KleinElement.E].is_one():
            raise ValueError("coboundary must be normalized: rho(e) = 1")
        for g, v in self.values.items():
            v.invert()  # raises on a non-invertible value

    def __call__(self, g: KleinElement) -> TowerScalar:
        return self.values[g]


def coboundary_equivalent(mu1: CocycleTable, mu2: CocycleTable, rho: Coboundary) -> bool:
    """True iff mu2(g,h) = mu1(g,h)·rho(g)·rho(h)·rho(gh)^{-1} for all g, h."""
    for g in GROUP:
        for h in GROUP:
            if mu2(g, h) != mu1(g, h) * rho(g) * rho(h) * rho(g * h).invert():
                return False
    return True


class GradingAssignment:
    """A bijection generators -> {e, g1, g2, g1g2}, i.e. a regular-representation
    grading, encoded by the tuple of generator degrees (equivalently a
    permutation of {0,1,2,3} under the identification e,g1,g2,g1g2 <-> 0,1,2,3).
    """

    __slots__ = ("degrees",)

    def __init__(self, degrees: Iterable[KleinElement]):
        degs = tuple(degrees)
        if sorted(degs) != sorted(GROUP):
            raise ValueError("grading must hit each group element exactly once")
        self.degrees: tuple[KleinElement, ...] = degs

    @classmethod
    def standard(cls) -> "GradingAssignment":
        return cls(GROUP)

    @classmethod
    def from_permutation(cls, perm: Iterable[int]) -> "GradingAssignment":
        return cls(KleinElement(j) for j in perm)

    @property
    def permutation(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.degrees)

    @property
    def identity_slot(self) -> int:
        """Which generator carries the identity degree (the class index j of H_j)."""
        return self.degrees.index(KleinElement.E)

    def labels(self) -> tuple[str, ...]:
        return tuple(d.label for d in self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradingAssignment):
            return NotImplemented
        return self.degrees == other.degrees

    def __hash__(self) -> int:
        return hash(self.degrees)

    def __repr__(self) -> str:
        return f"GradingAssignment({', '.join(self.labels())})"


def enumerate_gradings() -> dict[int, list[GradingAssignment]]:
    """All 24 regular-representation gradings, partitioned into the classes H_j
    by which generator carries the identity degree."""
    classes: dict[int, list[GradingAssignment]] = {0: [], 1: [], 2: [], 3: []}
    for perm in itertools.permutations(range(4)):
        grading = GradingAssignment.from_permutation(perm)
        classes[grading.identity_slot].append(grading)
    return classes


def automorphism_from_permutation(perm: tuple[int, ...]) -> dict[KleinElement, KleinElement]:
    """The group automorphism sending element #j to element #perm[j].

    Only permutations fixing 0 (the H_0 subgroup) give automorphisms; any
    permutation of the three involutions does.
    """
    if perm[0] != 0:
        raise ValueError("an automorphism must fix the identity, so perm[0] == 0")
    return {KleinElement(j): KleinElement(perm[j]) for j in range(4)}


def invert_permutation(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for j, v in enumerate(perm):
        inv[v] = j
    return tuple(inv)


def coboundary_table_rows(spec: FieldSpec) -> list[tuple[tuple[int, ...], Coboundary]]:
    """The five nontrivial rows (sigma, rho) for which mu and its pullback along
    sigma^{-1} are cohomologous via rho.  Permutations act on {1,2,3}; values
    need i in the tower."""
    one = spec.one()
    i = spec.i
    minus = spec.rational(-1)
    rows = [
        ((0, 2, 1, 3), (one, minus, one, one)),        # (12)
        ((0, 3, 2, 1), (one, i, one, i)),              # (13)
        ((0, 1, 3, 2), (one, one, i, i)),              # (23)
        ((0, 2, 3, 1), (one, i, minus, i)),            # (123)
        ((0, 3, 1, 2), (one, one, i, -i)),             # (132)
    ]
    return [
        (perm, Coboundary({g: vals[int(g)] for g in GROUP}))
        for perm, vals in rows
    ]
