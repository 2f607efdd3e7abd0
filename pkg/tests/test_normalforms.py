from fractions import Fraction

import pytest

from sklytwist.freealg import NcPoly
from sklytwist.normalforms import (
    DegreeBoundExceeded,
    NonCentralInput,
    central_subspace,
    engine_for,
    evaluate_certificate,
    hilbert_values,
    homogeneous_dimension,
    ideal_membership,
    is_central,
    regular_sequence_check,
)
from sklytwist.linalg import Echelon
from sklytwist.presentations import omega_elements, theta_elements

from .oracles import naive_homogeneous_dimension, series_factor_dims, series_free_dims


class TestDimensions:
    def test_degree_zero_is_one(self, sklyanin):
        assert homogeneous_dimension(sklyanin, 0) == 1

    def test_degree_two_is_ten(self, sklyanin):
        assert homogeneous_dimension(sklyanin, 2) == 10

    def test_free_series_up_to_six(self, sklyanin, twist):
        expected = series_free_dims(6)
        assert hilbert_values(sklyanin, 6) == expected
        assert hilbert_values(twist, 6) == expected

    def test_factor_degree_three(self, factor):
        assert homogeneous_dimension(factor, 3) == 12

    def test_factor_series(self, factor, twisted_factor):
        expected = series_factor_dims(6)
        assert hilbert_values(factor, 6) == expected
        assert hilbert_values(twisted_factor, 6) == expected

    def test_degree_bound_enforced(self, sklyanin):
        with pytest.raises(DegreeBoundExceeded):
            homogeneous_dimension(sklyanin, sklyanin.degree_bound + 1)

    @pytest.mark.parametrize("degree", [0, 1, 2, 3, 4])
    def test_against_naive_rank_oracle(self, sklyanin, degree):
        assert homogeneous_dimension(sklyanin, degree) == naive_homogeneous_dimension(
            sklyanin, degree
        )

    @pytest.mark.parametrize("degree", [2, 3])
    def test_naive_oracle_on_quotients(self, twisted_factor, degree):
        assert homogeneous_dimension(twisted_factor, degree) == naive_homogeneous_dimension(
            twisted_factor, degree
        )

    def test_pinned_word_order(self, sklyanin):
        # rewriting eliminates the lexicographically largest words (x0 < x1 <
        # x2 < x3, first letter most significant), so the degree-2 basis is:
        engine = engine_for(sklyanin)
        engine.ensure(2)
        assert engine.levels[2].normals == [
            (0, 0), (0, 1), (0, 2), (0, 3),
            (1, 0), (1, 1), (1, 2), (1, 3),
            (2, 2), (3, 3),
        ]
        assert sorted(engine.levels[2].expansions) == [
            (2, 0), (2, 1), (2, 3), (3, 0), (3, 1), (3, 2),
        ]


class TestMembership:
    def test_relation_is_member_with_unit_certificate(self, sklyanin):
        member, cert = ideal_membership(sklyanin, sklyanin.relations[0])
        assert member
        assert cert == {(0, (), ()): sklyanin.spec.one()}

    def test_normal_word_is_not_member(self, sklyanin, gaussian_spec):
        member, cert = ideal_membership(sklyanin, NcPoly.word(gaussian_spec, (0, 0)))
        assert not member and cert is None

    def test_certificate_reevaluates_exactly(self, sklyanin, gaussian_spec):
        spec = gaussian_spec
        f = (
            NcPoly.gen(spec, 1)
            * sklyanin.relations[3]
            * NcPoly.word(spec, (2,), Fraction(5, 3))
            + sklyanin.relations[0] * NcPoly.word(spec, (0, 1))
            + NcPoly.word(spec, (3, 2)) * sklyanin.relations[5]
        )
        member, cert = ideal_membership(sklyanin, f)
        assert member
        assert evaluate_certificate(sklyanin, cert) == f

    def test_membership_tracks_dimension(self, sklyanin, gaussian_spec):
        # degree-2 slice of the ideal is 6-dimensional: a random normal word
        # plus relations distinguishes inside/outside
        inside = sklyanin.relations[2] + sklyanin.relations[4]
        member, _ = ideal_membership(sklyanin, inside)
        assert member
        outside = inside + NcPoly.word(gaussian_spec, (1, 1))
        member, _ = ideal_membership(sklyanin, outside)
        assert not member

    def test_nilpotent_square_certificate(self, twisted_factor, gaussian_spec):
        spec = gaussian_spec
        i = spec.i
        v = [NcPoly.gen(spec, j) for j in range(4)]
        nil = v[0] - i * v[1] - i * v[2] - v[3]
        member, cert = ideal_membership(twisted_factor, nil * nil)
        assert member
        # the combination is unique in degree 2: -Theta1 - i f2 - i f4 - f6
        expected = {
            (6, (), ()): spec.rational(-1),
            (1, (), ()): -i,
            (3, (), ()): -i,
            (5, (), ()): spec.rational(-1),
        }
        assert set(cert) == set(expected)
        for key, value in expected.items():
            assert cert[key] == value
        assert evaluate_certificate(twisted_factor, cert) == nil * nil

    def test_inhomogeneous_rejected(self, sklyanin, gaussian_spec):
        with pytest.raises(ValueError):
            ideal_membership(
                sklyanin, NcPoly.one(gaussian_spec) + NcPoly.gen(gaussian_spec, 0)
            )

    def test_top_degree_certificate(self, sklyanin, gaussian_spec):
        spec = gaussian_spec
        f = (
            NcPoly.word(spec, (0, 1, 2)) * sklyanin.relations[3] * NcPoly.gen(spec, 2)
            + NcPoly.word(spec, (3,)) * sklyanin.relations[0] * NcPoly.word(spec, (1, 0, 2))
            + sklyanin.relations[5] * NcPoly.word(spec, (2, 2, 1, 0))
        )
        member, cert = ideal_membership(sklyanin, f)
        assert member
        assert evaluate_certificate(sklyanin, cert) == f
        perturbed = f + NcPoly.word(spec, (0,) * 6)
        member, _ = ideal_membership(sklyanin, perturbed)
        assert not member


class TestCentrality:
    def test_omegas_central_in_sklyanin(self, sklyanin):
        omega1, omega2 = omega_elements(sklyanin)
        assert is_central(sklyanin, omega1)
        assert is_central(sklyanin, omega2)

    def test_thetas_central_in_twist(self, twist):
        theta1, theta2 = theta_elements(twist)
        assert is_central(twist, theta1)
        assert is_central(twist, theta2)

    def test_generator_is_not_central(self, twist, gaussian_spec):
        assert not is_central(twist, NcPoly.gen(gaussian_spec, 0))

    def test_degree_one_subspace_trivial(self, twist):
        assert central_subspace(twist, 1) == []

    def test_central_subspace_members_are_central(self, twist):
        for z in central_subspace(twist, 2):
            assert is_central(twist, z)

    def test_degree_two_subspace(self, twist):
        basis = central_subspace(twist, 2)
        assert len(basis) == 2
        theta1, theta2 = theta_elements(twist)
        engine = engine_for(twist)
        ech = Echelon()
        for z in basis:
            _, coords = engine.poly_coords(z)
            ech.insert(coords)
        for theta in (theta1, theta2):
            _, coords = engine.poly_coords(theta)
            assert ech.contains(coords)

    def test_degree_four_contains_theta_monomials(self, twist):
        basis = central_subspace(twist, 4)
        theta1, theta2 = theta_elements(twist)
        engine = engine_for(twist)
        ech = Echelon()
        for z in basis:
            _, coords = engine.poly_coords(z)
            ech.insert(coords)
        monomials = [theta1 * theta1, theta1 * theta2, theta2 * theta2]
        span = Echelon()
        count = 0
        for m in monomials:
            _, coords = engine.poly_coords(m)
            assert ech.contains(coords)
            if span.insert(coords) is not None:
                count += 1
        assert count == 3  # the monomials span a 3-dimensional subspace
        assert len(basis) == 3


class TestRegularSequences:
    def test_omega_pair_regular(self, sklyanin):
        omega1, omega2 = omega_elements(sklyanin)
        assert regular_sequence_check(sklyanin, omega1, omega2, 6)

    def test_theta_pair_regular(self, twist):
        theta1, theta2 = theta_elements(twist)
        assert regular_sequence_check(twist, theta1, theta2, 6)

    def test_repeated_element_fails_at_degree_four(self, sklyanin):
        omega1, _ = omega_elements(sklyanin)
        assert not regular_sequence_check(sklyanin, omega1, omega1, 4)

    def test_non_central_rejected(self, sklyanin, gaussian_spec):
        omega1, _ = omega_elements(sklyanin)
        with pytest.raises(NonCentralInput):
            regular_sequence_check(
                sklyanin, omega1, NcPoly.word(gaussian_spec, (0, 1)), 4
            )
