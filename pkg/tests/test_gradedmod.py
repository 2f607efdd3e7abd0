import pytest

from sklytwist.gradedmod import (
    IdentificationFailure,
    ModuleSlice,
    NotEnoughNonzeroCoordinates,
    PointModuleData,
    annihilator_degree1,
    cyclic_codimension_check,
    fat_point,
    generated_in_degree_zero,
    group_intertwiner_check,
    identify_point,
    point_module,
    point_module_slice,
    quad_slice,
    restrict_and_decompose,
    slice_satisfies,
    theta_kills,
)
from sklytwist.klein import GROUP, CocycleTable, GradingAssignment, KleinElement
from sklytwist.points import (
    Point,
    curve_point,
    exceptional_points,
    g_action,
    known_points,
    multilinearize,
    orbit_report,
)
from sklytwist.presentations import sklyanin_presentation, theta_elements
from sklytwist.twisting import twist_presentation

from .conftest import ALPHA, BETA, GAMMA

DEPTH = 5


@pytest.fixture(scope="module")
def curve_setup(gaussian_spec):
    spec0 = gaussian_spec
    spec, p = curve_point(
        spec0.rational(ALPHA), spec0.rational(BETA), spec0.rational(GAMMA), 1
    )
    pres = sklyanin_presentation(
        spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA)
    )
    twist = twist_presentation(
        pres, GradingAssignment.standard(), CocycleTable.standard(spec)
    )
    return spec, p, pres, twist


@pytest.fixture(scope="module")
def curve_pm(curve_setup):
    spec, p, pres, twist = curve_setup
    return point_module(multilinearize(pres), p, DEPTH)


@pytest.fixture(scope="module")
def curve_fat(curve_setup, curve_pm):
    _, _, _, twist = curve_setup
    return fat_point(curve_pm, twist, DEPTH)


@pytest.fixture(scope="module")
def twist_scheme(radical_twist):
    return multilinearize(radical_twist)


class TestPointModule:
    def test_coordinate_point_has_constant_rows(self, gaussian_spec, sklyanin):
        system = multilinearize(sklyanin)
        e0 = exceptional_points(gaussian_spec)[0]
        pm = point_module(system, e0, 4)
        for row in pm.rows:
            assert row.projectively_equal(e0)
        # only the first generator acts with a nonzero scalar
        assert pm.row(0)[0].is_one()
        assert all(pm.row(0)[j].is_zero() for j in (1, 2, 3))

    def test_fixed_point_constant_over_twist(self, radical_spec, twist_scheme):
        spec = radical_spec
        fixed = Point((spec.one(), spec.i, spec.i, spec.one()))
        pm = point_module(twist_scheme, fixed, 4)
        for row in pm.rows:
            assert row.projectively_equal(fixed)

    def test_order_two_orbit_alternates(self, radical_spec, twist_scheme, radical_sklyanin):
        alpha, beta, gamma = radical_sklyanin.params
        report = orbit_report(known_points(alpha, beta, gamma), twist_scheme)
        rep_g1 = next(
            o for o in report.orbits if o.phi_label is KleinElement.G1
        ).members[0]
        pm = point_module(twist_scheme, rep_g1, 4)
        translate = g_action(rep_g1, KleinElement.G1)
        assert pm.rows[0].projectively_equal(rep_g1)
        assert pm.rows[1].projectively_equal(translate)
        assert pm.rows[2].projectively_equal(rep_g1)
        assert pm.rows[3].projectively_equal(translate)


class TestFatPoint:
    def test_hilbert_function_two(self, curve_fat):
        assert curve_fat.dims == [2] * (DEPTH + 1)

    def test_relations_annihilate(self, curve_setup, curve_fat):
        _, _, _, twist = curve_setup
        assert slice_satisfies(curve_fat, twist)

    def test_proof_action_identity(self, curve_setup, curve_pm, curve_fat):
        # (m0, c m0)·(v0 + (a0/a1) v1) = (2 a0 m1, 0) whenever a0, a1 != 0
        spec, _, _, _ = curve_setup
        a = curve_pm.row(0)
        assert not a[0].is_zero() and not a[1].is_zero()
        lam = spec.i  # arbitrary nonzero second component
        vec = (spec.one(), lam)
        ratio = a[0] * a[1].invert()
        image0 = curve_fat.act(vec, 0, 0)
        image1 = curve_fat.act(vec, 1, 0)
        combined = [x + ratio * y for x, y in zip(image0, image1)]
        assert combined[0] == 2 * a[0]
        assert combined[1].is_zero()

    def test_requires_three_nonzero_coordinates(self, curve_setup, gaussian_spec, sklyanin):
        system = multilinearize(sklyanin)
        e0 = exceptional_points(gaussian_spec)[0]
        pm = point_module(system, e0, 3)
        _, _, _, twist = curve_setup
        with pytest.raises(NotEnoughNonzeroCoordinates):
            fat_point(pm, twist, 3)

    def test_generated_in_degree_zero(self, curve_fat):
        assert generated_in_degree_zero(curve_fat)

    def test_zeroed_action_not_generated(self, curve_fat):
        spec = curve_fat.spec
        zero_mat = [[spec.zero()] * 2 for _ in range(2)]
        actions = [
            [zero_mat if j == 2 else curve_fat.actions[i][j] for j in range(DEPTH)]
            for i in range(4)
        ]
        broken = ModuleSlice(spec, list(curve_fat.dims), actions)
        assert not generated_in_degree_zero(broken)

    def test_point_module_slice_cyclic(self, curve_pm):
        assert generated_in_degree_zero(point_module_slice(curve_pm))


class TestCyclicCodimension:
    @pytest.mark.parametrize("degree", [0, 1])
    def test_three_proof_cases(self, curve_setup, curve_fat, degree):
        spec = curve_setup[0]
        one, zero, i = spec.one(), spec.zero(), spec.i
        for vec in ((one, one), (one, i), (one, zero), (zero, one)):
            assert cyclic_codimension_check(curve_fat, vec, degree)

    def test_zero_vector_rejected(self, curve_setup, curve_fat):
        spec = curve_setup[0]
        with pytest.raises(ValueError):
            cyclic_codimension_check(curve_fat, (spec.zero(), spec.zero()), 0)


class TestDecomposition:
    def test_summands_identify_group_translates(self, curve_setup, curve_pm):
        spec, p, _, _ = curve_setup
        report = restrict_and_decompose(curve_pm, DEPTH)
        expected = [
            p,
            g_action(p, KleinElement.G1),
            g_action(p, KleinElement.G2),
            g_action(p, KleinElement.G1G2),
        ]
        assert len(report.summands) == 4
        for (vec, point), target in zip(report.summands, expected):
            assert point.projectively_equal(target)

    def test_quadruple_satisfies_untwisted_relations(self, curve_setup, curve_pm):
        _, _, pres, twist = curve_setup
        quad = quad_slice(curve_pm, DEPTH)
        assert slice_satisfies(quad, pres)
        assert not slice_satisfies(quad, twist)

    def test_dual_direction_recovers_twisted_points(self, radical_spec, radical_sklyanin, radical_twist, twist_scheme):
        alpha, beta, gamma = radical_sklyanin.params
        report = orbit_report(known_points(alpha, beta, gamma), twist_scheme)
        recovered_total = 0
        for orbit in report.orbits:
            if orbit.phi_label is None:
                continue
            q = orbit.members[0]
            pm = point_module(twist_scheme, q, DEPTH)
            fat = fat_point(pm, radical_sklyanin, DEPTH)  # module over the untwisted algebra
            assert slice_satisfies(fat, radical_sklyanin)
            dec = restrict_and_decompose(pm, DEPTH)
            quad = quad_slice(pm, DEPTH)
            assert slice_satisfies(quad, radical_twist)
            translates = [g_action(q, g) for g in GROUP]
            found = dec.points()
            for x in found:
                assert any(x.projectively_equal(t) for t in translates)
            for a in range(4):
                for b in range(a + 1, 4):
                    assert not found[a].projectively_equal(found[b])
            recovered_total += 4
        assert recovered_total == 16  # one orbit of point modules per label

    def test_coordinate_point_rejected(self, gaussian_spec, sklyanin):
        system = multilinearize(sklyanin)
        e1 = exceptional_points(gaussian_spec)[1]
        pm = point_module(system, e1, 3)
        with pytest.raises(NotEnoughNonzeroCoordinates):
            restrict_and_decompose(pm, 3)


class TestIntertwiners:
    @pytest.mark.parametrize("g", list(GROUP))
    def test_all_group_elements(self, curve_pm, g):
        assert group_intertwiner_check(curve_pm, g, DEPTH)

    def test_identity_is_trivial(self, curve_pm):
        assert group_intertwiner_check(curve_pm, KleinElement.E, DEPTH)


class TestAnnihilators:
    def test_point_module_round_trip(self, curve_setup, curve_pm):
        spec, p, _, _ = curve_setup
        slice1 = point_module_slice(curve_pm)
        basis = annihilator_degree1(slice1, (spec.one(),))
        assert len(basis) == 3
        assert identify_point(basis, spec).projectively_equal(p)

    def test_twisted_point_module_recovers_translate(self, curve_setup):
        spec, p, pres, _ = curve_setup
        system = multilinearize(pres)
        translate = g_action(p, KleinElement.G1)
        pm = point_module(system, translate, 2)
        slice1 = point_module_slice(pm)
        basis = annihilator_degree1(slice1, (spec.one(),))
        assert identify_point(basis, spec).projectively_equal(translate)

    def test_fat_diagonal_vector_is_not_a_point(self, curve_setup, curve_fat):
        spec = curve_setup[0]
        basis = annihilator_degree1(curve_fat, (spec.one(), spec.one()))
        assert len(basis) == 2
        with pytest.raises(IdentificationFailure):
            identify_point(basis, spec)

    def test_translate_annihilators_match_the_group_action(self, curve_setup):
        # applying g to the annihilator of the g-translate's point module gives
        # back the annihilator of the base point module, as subspaces
        from sklytwist.freealg import apply_group_element
        from sklytwist.linalg import span_equal

        spec, p, pres, _ = curve_setup
        system = multilinearize(pres)

        def annihilator_rows(point):
            pm = point_module(system, point, 1)
            basis = annihilator_degree1(point_module_slice(pm), (spec.one(),))
            return basis

        base_rows = [
            {i: f.coeff((i,)) for i in range(4) if not f.coeff((i,)).is_zero()}
            for f in annihilator_rows(p)
        ]
        for g in GROUP:
            mapped = []
            for f in annihilator_rows(g_action(p, g)):
                fg = apply_group_element(f, g, pres.gdegrees)
                mapped.append(
                    {i: fg.coeff((i,)) for i in range(4) if not fg.coeff((i,)).is_zero()}
                )
            assert span_equal(mapped, base_rows)


class TestThetaKills:
    def test_coordinate_point_survives(self, radical_spec, radical_twist, twist_scheme):
        theta1, _ = theta_elements(radical_twist)
        e0 = exceptional_points(radical_spec)[0]
        pm = point_module(twist_scheme, e0, 1)
        assert not theta_kills(pm, theta1)

    def test_all_twenty_points_fail_a_theta(self, radical_spec, radical_sklyanin, radical_twist, twist_scheme):
        alpha, beta, gamma = radical_sklyanin.params
        theta1, theta2 = theta_elements(radical_twist)
        for p in known_points(alpha, beta, gamma):
            pm = point_module(twist_scheme, p, 1)
            assert not (theta_kills(pm, theta1) and theta_kills(pm, theta2))

    def test_synthetic_zero_pairing(self, radical_spec, radical_twist, twist_scheme):
        # rows supported on disjoint coordinates pair to zero against the
        # squares in theta, so the formula reports annihilation
        spec = radical_spec
        theta1, _ = theta_elements(radical_twist)
        e = exceptional_points(spec)
        pm = PointModuleData(twist_scheme, e[0], [e[0], e[1]])
        assert theta_kills(pm, theta1)
