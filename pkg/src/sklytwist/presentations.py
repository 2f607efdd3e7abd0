"""Graded presentations on four generators: the Sklyanin family, its quotients,
and the degree-2 central elements of both the algebra and its twist."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from sklytwist.freealg import NcPoly, anticommutator, commutator
from sklytwist.klein import GROUP, KleinElement
from sklytwist.scalars import FieldSpec, TowerScalar, scalar_from_str, scalar_to_str

DEFAULT_DEGREE_BOUND = 6

STANDARD_GDEGREES = GROUP  # x0 -> e, x1 -> g1, x2 -> g2, x3 -> g1g2


class InvalidParameters(Exception):
    """Parameter triple outside the admissible family.

    ``constraint_violated`` flags a nonzero alpha+beta+gamma+alpha*beta*gamma;
    ``degenerate`` lists the parameter names whose value lies in {0, +1, -1}.
    """

    def __init__(self, constraint_violated: bool, degenerate: tuple[str, ...]):
        self.constraint_violated = constraint_violated
        self.degenerate = degenerate
        problems = []
        if constraint_violated:
            problems.append("alpha + beta + gamma + alpha*beta*gamma != 0")
        if degenerate:
            problems.append(f"degenerate value(s) in {{0, 1, -1}}: {', '.join(degenerate)}")
        super().__init__("; ".join(problems))


class InhomogeneousRelation(Exception):
    """A relation is not homogeneous in the N-grading or the G-grading."""


def derive_alpha(beta: Fraction, gamma: Fraction) -> Fraction:
    """alpha = -(beta+gamma)/(1+beta*gamma), the unique solution of the sum constraint."""
    denom = 1 + beta * gamma
    if denom == 0:
        raise InvalidParameters(True, ())
    return Fraction(-(beta + gamma), 1) / denom


def parameter_violations(
    alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar
) -> tuple[bool, tuple[str, ...]]:
    total = alpha + beta + gamma + alpha * beta * gamma
    degenerate = tuple(
        name
        for name, value in (("alpha", alpha), ("beta", beta), ("gamma", gamma))
        if value == 0 or value == 1 or value == -1
    )
    return (not total.is_zero(), degenerate)


def validate_parameters(alpha: TowerScalar, beta: TowerScalar, gamma: TowerScalar) -> None:
    """Raise :class:`InvalidParameters` unless the triple is admissible."""
    constraint, degenerate = parameter_violations(alpha, beta, gamma)
    if constraint or degenerate:
        raise InvalidParameters(constraint, degenerate)


class Presentation:
    """Four generators with N- and G-gradings and homogeneous relations.

    Instances are immutable; derived data (normal-form tables) is cached
    externally keyed on object identity.
    """

    __slots__ = ("spec", "gdegrees", "relations", "params", "label",
                 "degree_bound", "gen_names", "__weakref__")

    def __init__(
        self,
        spec: FieldSpec,
        relations: Sequence[NcPoly],
        params: tuple[TowerScalar, TowerScalar, TowerScalar],
        gdegrees: tuple[KleinElement, ...] = STANDARD_GDEGREES,
        label: str = "",
        degree_bound: int = DEFAULT_DEGREE_BOUND,
        gen_names: tuple[str, ...] = ("x0", "x1", "x2", "x3"),
    ):
        self.spec = spec
        self.gdegrees = gdegrees
        self.relations = tuple(relations)
        self.params = params
        self.label = label
        self.degree_bound = degree_bound
        self.gen_names = gen_names
        for rel in self.relations:
            if rel.is_zero() or not rel.is_homogeneous():
                raise InhomogeneousRelation("relations must be homogeneous and nonzero")
            if rel.g_degree(self.gdegrees) is None:
                raise InhomogeneousRelation("relation is not G-homogeneous")

    def quotient(self, extra: Iterable[NcPoly], label: str = "") -> "Presentation":
        """The presentation with ``extra`` added to the relations."""
        extra = tuple(extra)
        return Presentation(
            self.spec,
            self.relations + extra,
            self.params,
            self.gdegrees,
            label or self.label,
            self.degree_bound,
            self.gen_names,
        )

    def relations_of_degree(self, d: int) -> list[NcPoly]:
        return [r for r in self.relations if r.degree() == d]

    def __repr__(self) -> str:
        name = self.label or "Presentation"
        return f"<{name}: {len(self.relations)} relations over {self.spec.names}>"

    # -- JSON round trip ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.gen_names),
            "g_degrees": [d.label for d in self.gdegrees],
            "parameters": {
                "alpha": scalar_to_str(self.params[0]),
                "beta": scalar_to_str(self.params[1]),
                "gamma": scalar_to_str(self.params[2]),
            },
            "field": field_spec_to_json(self.spec),
            "relations": [
                [
                    {"word": list(w), "coeff": scalar_to_str(c)}
                    for w, c in sorted(rel.terms.items())
                ]
                for rel in self.relations
            ],
            "degree_bound": self.degree_bound,
            "label": self.label,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Presentation":
        spec = field_spec_from_json(data["field"])
        relations = [
            NcPoly(
                spec,
                {
                    tuple(t["word"]): scalar_from_str(spec, t["coeff"])
                    for t in rel
                },
            )
            for rel in data["relations"]
        ]
        params = tuple(
            scalar_from_str(spec, data["parameters"][k]) for k in ("alpha", "beta", "gamma")
        )
        gdegrees = tuple(KleinElement.from_label(lbl) for lbl in data["g_degrees"])
        return cls(
            spec,
            relations,
            params,  # type: ignore[arg-type]
            gdegrees,
            data.get("label", ""),
            data.get("degree_bound", DEFAULT_DEGREE_BOUND),
            tuple(data.get("generators", ("x0", "x1", "x2", "x3"))),
        )

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        return cls.from_json_dict(json.loads(text))


def field_spec_to_json(spec: FieldSpec) -> list[dict]:
    out = []
    for j, name in enumerate(spec.names):
        square = TowerScalar(spec, dict(spec.square_coords(j)))
        out.append({"name": name, "square": scalar_to_str(square)})
    return out


def field_spec_from_json(data: list[dict]) -> FieldSpec:
    if not data or data[0]["name"] != "i":
        raise ValueError("field tower must start with i")
    spec = FieldSpec.gaussian()
    for entry in data[1:]:
        spec = spec.adjoin_sqrt(scalar_from_str(spec, entry["square"]), entry["name"])
    return spec


def sklyanin_presentation(
    alpha: TowerScalar,
    beta: TowerScalar,
    gamma: TowerScalar,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> Presentation:
    """The algebra on x0..x3 with the six quadratic relations for (alpha, beta, gamma).

    Generators carry the standard regular-representation G-grading
    x0 -> e, x1 -> g1, x2 -> g2, x3 -> g1g2.
    """
    validate_parameters(alpha, beta, gamma)
    spec = alpha.spec
    x = [NcPoly.gen(spec, j) for j in range(4)]
    relations = [
        commutator(x[0], x[1]) - alpha * anticommutator(x[2], x[3]),
        anticommutator(x[0], x[1]) - commutator(x[2], x[3]),
        commutator(x[0], x[2]) - beta * anticommutator(x[3], x[1]),
        anticommutator(x[0], x[2]) - commutator(x[3], x[1]),
        commutator(x[0], x[3]) - gamma * anticommutator(x[1], x[2]),
        anticommutator(x[0], x[3]) - commutator(x[1], x[2]),
    ]
    a, b, g = scalar_to_str(alpha), scalar_to_str(beta), scalar_to_str(gamma)
    return Presentation(
        spec,
        relations,
        (alpha, beta, gamma),
        label=f"A({a}, {b}, {g})",
        degree_bound=degree_bound,
    )


def omega_elements(pres: Presentation) -> tuple[NcPoly, NcPoly]:
    """The two degree-2 central elements of the untwisted algebra:
    -x0^2 + x1^2 + x2^2 + x3^2 and x1^2 + c2·x2^2 + c3·x3^2
    with c2 = (1+alpha)/(1-beta), c3 = (1-alpha)/(1+gamma)."""
    alpha, beta, gamma = pres.params
    spec = pres.spec
    one = spec.one()
    c2 = (one + alpha) * (one - beta).invert()
    c3 = (one - alpha) * (one + gamma).invert()
    sq = [NcPoly.word(spec, (j, j)) for j in range(4)]
    omega1 = -sq[0] + sq[1] + sq[2] + sq[3]
    omega2 = sq[1] + c2 * sq[2] + c3 * sq[3]
    return omega1, omega2


def theta_elements(pres: Presentation) -> tuple[NcPoly, NcPoly]:
    """The twisted counterparts of the degree-2 central pair:
    -v0^2 + v1^2 + v2^2 - v3^2 and v1^2 + c2·v2^2 - c3·v3^2."""
    alpha, beta, gamma = pres.params
    spec = pres.spec
    one = spec.one()
    c2 = (one + alpha) * (one - beta).invert()
    c3 = (one - alpha) * (one + gamma).invert()
    sq = [NcPoly.word(spec, (j, j)) for j in range(4)]
    theta1 = -sq[0] + sq[1] + sq[2] - sq[3]
    theta2 = sq[1] + c2 * sq[2] - c3 * sq[3]
    return theta1, theta2
