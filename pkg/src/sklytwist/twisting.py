"""Cocycle twisting of presentations, the 2x2 matrix model of the twist, and
the scaling isomorphisms between twists built from different gradings."""

from __future__ import annotations

from typing import Sequence

from sklytwist.freealg import NcPoly, Word
from sklytwist.klein import CocycleTable, GradingAssignment, KleinElement
from sklytwist.linalg import span_equal
from sklytwist.presentations import InhomogeneousRelation, Presentation
from sklytwist.scalars import FieldSpec, TowerScalar


def word_twist_factor(
    w: Word, grading: GradingAssignment, mu: CocycleTable
) -> TowerScalar:
    """Cumulative cocycle factor converting a word of the original algebra into
    the corresponding word of twisted generators: prod mu(deg prefix, deg next)."""
    degrees = grading.degrees
    spec = next(iter(mu.values.values())).spec
    factor = spec.one()
    acc = KleinElement.E
    for idx, letter in enumerate(w):
        if idx > 0:
            factor = factor * mu(acc, degrees[letter])
        acc = acc * degrees[letter]
    return factor


def twist_poly(f: NcPoly, grading: GradingAssignment, mu: CocycleTable) -> NcPoly:
    """Rewrite each word with its coefficient scaled by the inverse cocycle factor."""
    out = {}
    for w, c in f.terms.items():
        out[w] = c * word_twist_factor(w, grading, mu).invert()
    return NcPoly(f.spec, out)


def twist_presentation(
    pres: Presentation, grading: GradingAssignment, mu: CocycleTable
) -> Presentation:
    """The cocycle twist: same generators, each relation rewritten monomial by
    monomial with coefficients scaled by mu(deg a, deg b)^{-1}.

    Relations must be G-homogeneous under the chosen grading.  The twisted
    presentation keeps that grading on its generators.
    """
    degrees = grading.degrees
    for rel in pres.relations:
        if rel.g_degree(degrees) is None:
            raise InhomogeneousRelation(
                "relation is not G-homogeneous under the chosen grading"
            )
    twisted = [twist_poly(rel, grading, mu) for rel in pres.relations]
    label = f"{pres.label}^twist" if pres.label else "twist"
    return Presentation(
        pres.spec,
        twisted,
        pres.params,
        degrees,
        label=label,
        degree_bound=pres.degree_bound,
        gen_names=tuple(f"v{j}" for j in range(4)),
    )


def relation_rows(pres: Presentation) -> list[dict[int, TowerScalar]]:
    """Relations as sparse vectors over a fixed word enumeration (degree-wise)."""
    rows = []
    for rel in pres.relations:
        d = rel.degree()
        row = {}
        for w, c in rel.terms.items():
            idx = 0
            for letter in w:
                idx = idx * 4 + letter
            row[(d << 24) + idx] = c  # degree-tagged column so degrees never collide
        rows.append(row)
    return rows


def relation_span_equal(a: Presentation, b: Presentation) -> bool:
    """Span equality of relation sets (relations are only defined up to
    invertible linear combinations)."""
    return span_equal(relation_rows(a), relation_rows(b))


# -- matrix model ----------------------------------------------------------------

Mat2 = tuple[tuple[NcPoly, NcPoly], tuple[NcPoly, NcPoly]]


def _gen_matrices(spec: FieldSpec) -> list[Mat2]:
    """Images of the twisted generators inside 2x2 matrices over the original
    algebra: v0 -> diag(x0, x0), v1 -> diag(x1, -x1), v2 -> antidiag(x2, x2),
    v3 -> antidiag(-x3, x3)."""
    x = [NcPoly.gen(spec, j) for j in range(4)]
    zero = NcPoly.zero(spec)
    return [
        ((x[0], zero), (zero, x[0])),
        ((x[1], zero), (zero, -x[1])),
        ((zero, x[2]), (x[2], zero)),
        ((zero, -x[3]), (x[3], zero)),
    ]


def _mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(2)), NcPoly.zero(a[0][0].spec)) for c in range(2))
        for r in range(2)
    )  # type: ignore[return-value]


def _mat_add(a: Mat2, b: Mat2) -> Mat2:
    return tuple(
        tuple(a[r][c] + b[r][c] for c in range(2)) for r in range(2)
    )  # type: ignore[return-value]


def _mat_scale(a: Mat2, c: TowerScalar) -> Mat2:
    return tuple(
        tuple(entry.scale(c) for entry in row) for row in a
    )  # type: ignore[return-value]


def matrix_model(f: NcPoly) -> Mat2:
    """The algebra map determined by the generator matrices, applied to a
    polynomial in the twisted generators."""
    spec = f.spec
    gens = _gen_matrices(spec)
    zero = NcPoly.zero(spec)
    one = NcPoly.one(spec)
    total: Mat2 = ((zero, zero), (zero, zero))
    for w, c in f.terms.items():
        acc: Mat2 = ((one, zero), (zero, one))
        for letter in w:
            acc = _mat_mul(acc, gens[letter])
        total = _mat_add(total, _mat_scale(acc, c))
    return total


# -- scaling isomorphisms -----------------------------------------------------------


def scale_poly(f: NcPoly, scale: Sequence[TowerScalar]) -> NcPoly:
    """Substitute generator j -> scale[j]·generator j."""
    out = {}
    for w, c in f.terms.items():
        factor = f.spec.one()
        for letter in w:
            factor = factor * scale[letter]
        out[w] = c * factor
    return NcPoly(f.spec, out)


def scaling_isomorphism_check(
    pres: Presentation,
    grading: GradingAssignment,
    mu: CocycleTable,
    scale: Sequence[TowerScalar],
    target: Presentation,
) -> bool:
    """Twist ``pres`` with ``grading``, rescale the generators, and compare the
    relation span against ``target`` (both inclusions)."""
    for c in scale:
        c.invert()  # raises on a non-invertible scale entry
    twisted = twist_presentation(pres, grading, mu)
    scaled = [scale_poly(rel, scale) for rel in twisted.relations]
    scaled_pres = Presentation(
        pres.spec,
        scaled,
        target.params,
        grading.degrees,
        label="scaled-twist",
        degree_bound=pres.degree_bound,
    )
    return relation_span_equal(scaled_pres, target)


def scaling_table_rows(
    spec: FieldSpec,
    alpha: TowerScalar,
    beta: TowerScalar,
    gamma: TowerScalar,
) -> list[dict]:
    """The three grading/scale/target rows relating twists built from the
    transposition gradings to twists at reciprocal parameters.

    Needs sqrt(alpha), sqrt(beta), sqrt(gamma) available in the tower.
    """
    from sklytwist.scalars import MissingRadicalError

    i = spec.i
    one = spec.one()
    roots = {}
    for name, value in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        root = spec.find_sqrt(value)
        if root is None:
            raise MissingRadicalError(f"sqrt({name}) not in the field tower", (name,))
        roots[name] = root
    ra, rb, rc = roots["alpha"], roots["beta"], roots["gamma"]
    inva, invb, invc = alpha.invert(), beta.invert(), gamma.invert()
    E, G1, G2, G12 = (
        KleinElement.E,
        KleinElement.G1,
        KleinElement.G2,
        KleinElement.G1G2,
    )
    return [
        {
            "grading": GradingAssignment((G1, E, G2, G12)),
            "scale": (one, i * (rb * rc).invert(), -rc.invert(), -(i * rb.invert())),
            "target_params": (alpha, invb, invc),
        },
        {
            "grading": GradingAssignment((G2, G1, E, G12)),
            "scale": (one, i * rc.invert(), i * (ra * rc).invert(), ra.invert()),
            "target_params": (inva, beta, invc),
        },
        {
            "grading": GradingAssignment((G12, G1, G2, E)),
            "scale": (one, i * rb.invert(), ra.invert(), i * (ra * rb).invert()),
            "target_params": (inva, invb, gamma),
        },
    ]
