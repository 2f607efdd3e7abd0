from fractions import Fraction

import pytest

from sklytwist.freealg import NcPoly, anticommutator, commutator
from sklytwist.klein import CocycleTable, GradingAssignment, KleinElement
from sklytwist.normalforms import ideal_membership
from sklytwist.presentations import (
    InhomogeneousRelation,
    Presentation,
    omega_elements,
    sklyanin_presentation,
    theta_elements,
    validate_parameters,
)
from sklytwist.twisting import (
    matrix_model,
    relation_span_equal,
    scale_poly,
    scaling_isomorphism_check,
    scaling_table_rows,
    twist_poly,
    twist_presentation,
)

from .conftest import ALPHA, BETA, GAMMA


def _display_relations(spec, alpha, beta, gamma):
    v = [NcPoly.gen(spec, j) for j in range(4)]
    return [
        commutator(v[0], v[1]) - alpha * commutator(v[2], v[3]),
        anticommutator(v[0], v[1]) - anticommutator(v[2], v[3]),
        commutator(v[0], v[2]) - beta * commutator(v[3], v[1]),
        anticommutator(v[0], v[2]) - anticommutator(v[3], v[1]),
        commutator(v[0], v[3]) + gamma * commutator(v[1], v[2]),
        anticommutator(v[0], v[3]) + anticommutator(v[1], v[2]),
    ]


class TestTwist:
    def test_reproduces_display_coefficient_exactly(self, twist, gaussian_spec):
        spec = gaussian_spec
        display = _display_relations(
            spec, spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA)
        )
        for derived, expected in zip(twist.relations, display):
            assert derived == expected

    def test_sign_pin_on_fifth_relation(self, twist, gaussian_spec):
        # the commutator/anticommutator pattern flips sign exactly here
        spec = gaussian_spec
        v = [NcPoly.gen(spec, j) for j in range(4)]
        gamma = spec.rational(GAMMA)
        assert twist.relations[4] == commutator(v[0], v[3]) + gamma * commutator(v[1], v[2])

    def test_twist_is_involution_up_to_span(self, sklyanin, twist, gaussian_spec):
        again = twist_presentation(
            twist, GradingAssignment.standard(), CocycleTable.standard(gaussian_spec)
        )
        assert relation_span_equal(again, sklyanin)

    def test_span_equality_with_display(self, twist, gaussian_spec):
        spec = gaussian_spec
        display = _display_relations(
            spec, spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA)
        )
        display_pres = Presentation(spec, display, twist.params)
        assert relation_span_equal(twist, display_pres)

    def test_omega_twists_to_theta(self, sklyanin, twist, gaussian_spec):
        omega1, omega2 = omega_elements(sklyanin)
        theta1, theta2 = theta_elements(twist)
        grading = GradingAssignment.standard()
        mu = CocycleTable.standard(gaussian_spec)
        assert twist_poly(omega1, grading, mu) == theta1
        assert twist_poly(omega2, grading, mu) == theta2

    def test_inhomogeneous_grading_rejected(self, gaussian_spec):
        spec = gaussian_spec
        params = (spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA))
        # homogeneous when x0 and x1 both sit in the identity component ...
        pres = Presentation(
            spec,
            [NcPoly.word(spec, (0, 0)) + NcPoly.word(spec, (0, 1))],
            params,
            gdegrees=(KleinElement.E, KleinElement.E, KleinElement.G2, KleinElement.G1G2),
        )
        # ... but not under a regular-representation grading
        mixed = GradingAssignment(
            (KleinElement.G1, KleinElement.E, KleinElement.G2, KleinElement.G1G2)
        )
        with pytest.raises(InhomogeneousRelation):
            twist_presentation(pres, mixed, CocycleTable.standard(spec))


class TestMatrixModel:
    def test_generator_images(self, gaussian_spec):
        spec = gaussian_spec
        v2 = matrix_model(NcPoly.gen(spec, 2))
        assert v2[0][0].is_zero() and v2[1][1].is_zero()
        assert v2[0][1] == NcPoly.gen(spec, 2)
        assert v2[1][0] == NcPoly.gen(spec, 2)

    def test_product_image(self, gaussian_spec):
        spec = gaussian_spec
        image = matrix_model(NcPoly.gen(spec, 1) * NcPoly.gen(spec, 2))
        x1x2 = NcPoly.word(spec, (1, 2))
        assert image[0][1] == x1x2
        assert image[1][0] == -x1x2
        assert image[0][0].is_zero() and image[1][1].is_zero()

    def test_every_twisted_relation_maps_into_the_ideal(self, sklyanin, twist):
        for rel in twist.relations:
            matrix = matrix_model(rel)
            for row in matrix:
                for entry in row:
                    member, cert = ideal_membership(sklyanin, entry)
                    assert member
                    from sklytwist.normalforms import evaluate_certificate

                    assert evaluate_certificate(sklyanin, cert) == entry


@pytest.fixture(scope="module")
def setup(radical_spec):
    spec = radical_spec
    alpha = spec.rational(ALPHA)
    beta = spec.rational(BETA)
    gamma = spec.rational(GAMMA)
    pres = sklyanin_presentation(alpha, beta, gamma)
    mu = CocycleTable.standard(spec)
    return spec, pres, mu, (alpha, beta, gamma)


class TestScalingTable:
    def test_all_three_rows(self, setup):
        spec, pres, mu, (alpha, beta, gamma) = setup
        std = GradingAssignment.standard()
        rows = scaling_table_rows(spec, alpha, beta, gamma)
        assert len(rows) == 3
        for row in rows:
            ta, tb, tg = row["target_params"]
            validate_parameters(ta, tb, tg)  # reciprocal triples stay admissible
            target = twist_presentation(sklyanin_presentation(ta, tb, tg), std, mu)
            assert scaling_isomorphism_check(pres, row["grading"], mu, row["scale"], target)

    def test_identity_row(self, setup):
        spec, pres, mu, _ = setup
        std = GradingAssignment.standard()
        target = twist_presentation(pres, std, mu)
        ones = (spec.one(),) * 4
        assert scaling_isomorphism_check(pres, std, mu, ones, target)

    def test_wrong_target_fails(self, setup):
        spec, pres, mu, (alpha, beta, gamma) = setup
        std = GradingAssignment.standard()
        rows = scaling_table_rows(spec, alpha, beta, gamma)
        # row 1 against the *untouched* parameter twist must fail
        target = twist_presentation(pres, std, mu)
        assert not scaling_isomorphism_check(
            pres, rows[0]["grading"], mu, rows[0]["scale"], target
        )

    def test_scale_poly(self, gaussian_spec):
        spec = gaussian_spec
        f = NcPoly.word(spec, (0, 1), Fraction(3))
        scaled = scale_poly(f, (spec.rational(2), spec.i, spec.one(), spec.one()))
        assert scaled.coeff((0, 1)) == spec.rational(6) * spec.i
