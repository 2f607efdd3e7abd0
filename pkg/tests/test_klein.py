import pytest

from sklytwist.klein import (
    GROUP,
    CocycleTable,
    Coboundary,
    GradingAssignment,
    KleinElement,
    automorphism_from_permutation,
    character,
    coboundary_equivalent,
    coboundary_table_rows,
    enumerate_gradings,
    invert_permutation,
    mu_sign,
)


class TestGroup:
    def test_group_law_is_xor(self):
        assert KleinElement.G1 * KleinElement.G2 is KleinElement.G1G2
        assert KleinElement.G1 * KleinElement.G1 is KleinElement.E
        for g in GROUP:
            assert g * KleinElement.E is g

    def test_labels_round_trip(self):
        for g in GROUP:
            assert KleinElement.from_label(g.label) is g

    def test_character_identification(self):
        # chi_g(h) = 1 exactly when g = e or h in {e, g}
        assert character(KleinElement.G1, KleinElement.G1) == 1
        assert character(KleinElement.G1, KleinElement.G2) == -1
        assert character(KleinElement.E, KleinElement.G1G2) == 1


class TestCocycle:
    def test_defining_sign(self):
        assert mu_sign(KleinElement.G1, KleinElement.G2) == -1
        assert mu_sign(KleinElement.G2, KleinElement.G1) == 1
        assert mu_sign(KleinElement.E, KleinElement.G1G2) == 1

    def test_standard_table_values(self, gaussian_spec):
        mu = CocycleTable.standard(gaussian_spec)
        assert mu(KleinElement.G1, KleinElement.G2) == -1
        assert mu(KleinElement.G2, KleinElement.G1) == 1
        assert mu(KleinElement.E, KleinElement.G1G2) == 1

    def test_cocycle_identity_all_triples(self, gaussian_spec):
        assert CocycleTable.standard(gaussian_spec).is_cocycle()

    def test_broken_table_rejected(self, gaussian_spec):
        mu = CocycleTable.standard(gaussian_spec)
        values = dict(mu.values)
        values[(KleinElement.E, KleinElement.G1)] = gaussian_spec.rational(-1)
        assert not CocycleTable(values).is_cocycle()


class TestCoboundaries:
    def test_all_table_rows_verify(self, gaussian_spec):
        mu = CocycleTable.standard(gaussian_spec)
        rows = coboundary_table_rows(gaussian_spec)
        assert len(rows) == 5
        for perm, rho in rows:
            aut = automorphism_from_permutation(invert_permutation(perm))
            pulled = mu.pullback(aut)
            assert pulled.is_cocycle()
            assert coboundary_equivalent(mu, pulled, rho)

    def test_trivial_coboundary_fails_on_distinct_cocycles(self, gaussian_spec):
        mu = CocycleTable.standard(gaussian_spec)
        aut = automorphism_from_permutation((0, 2, 1, 3))
        pulled = mu.pullback(aut)
        one = gaussian_spec.one()
        trivial = Coboundary({g: one for g in GROUP})
        assert not coboundary_equivalent(mu, pulled, trivial)

    def test_coboundary_requires_normalization(self, gaussian_spec):
        values = {g: gaussian_spec.rational(-1) for g in GROUP}
        with pytest.raises(ValueError):
            Coboundary(values)


class TestGradings:
    def test_enumeration(self):
        classes = enumerate_gradings()
        assert sum(len(v) for v in classes.values()) == 24
        assert all(len(v) == 6 for v in classes.values())

    def test_identity_in_class_zero(self):
        classes = enumerate_gradings()
        assert GradingAssignment.standard() in classes[0]

    def test_regular_representation_required(self):
        with pytest.raises(ValueError):
            GradingAssignment((KleinElement.E,) * 4)

    def test_permutation_round_trip(self):
        g = GradingAssignment.from_permutation((2, 0, 3, 1))
        assert g.permutation == (2, 0, 3, 1)
        assert g.identity_slot == 1
