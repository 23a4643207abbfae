import pytest

from cubicell.homology import (
    ANTICANONICAL_PULLBACK_R3,
    BudgetError,
    EulerBudget,
    H2ModelR3,
    coker_theta,
    coker_xi_r3,
    cw_invariants,
    euler_of_F,
    feasible_intersections,
    minimality_dichotomy,
    plane_cubic_by_code,
    plane_cubic_table,
    surface_b2,
    surface_euler_number,
)
from cubicell.lattice import DivClass, FgAbGroup, blowup_class


def cls(a, *b):
    return blowup_class(a, b)


E = [DivClass(tuple(1 if j == i else 0 for j in range(7))) for i in range(7)]
SIGMA = DivClass((1, 0))
FIBER = DivClass((0, 1))


class TestEulerBudget:
    def test_values(self):
        assert euler_of_F(EulerBudget(3, 0, 1, 1, 1)) == 2
        assert euler_of_F(EulerBudget(1, 1, 1, 1, 1)) == 2
        # Genus 2 would force a plane cubic of Euler number 4 on a surface
        # of Euler number 1, which only the three-line section achieves;
        # the budget records the arithmetic.
        assert euler_of_F(EulerBudget(1, 2, 1, 1, 1)) == 4

    def test_linear_in_counts(self):
        base = euler_of_F(EulerBudget(3, 0, 2, 1, 1))
        assert euler_of_F(EulerBudget(3, 0, 3, 1, 1)) == base + 1
        assert euler_of_F(EulerBudget(3, 1, 2, 1, 1)) == base + 2

    def test_minimal_profile_shifts_surface_euler(self):
        # With genus 0 and a minimal incidence profile the section carries
        # one Euler point less than the cubic surface.
        for eu in (1, 2, 3, 4):
            assert euler_of_F(EulerBudget(eu, 0, 1, 0, 0)) == eu - 1
            assert euler_of_F(EulerBudget(eu, 0, 1, 1, 1)) == eu - 1
        # At genus 1 the two offsets cancel.
        for eu in (1, 2, 3, 4):
            assert euler_of_F(EulerBudget(eu, 1, 1, 1, 1)) == eu + 1

    def test_invariants(self):
        with pytest.raises(BudgetError):
            EulerBudget(3, 0, 0, 1, 0)
        with pytest.raises(BudgetError):
            EulerBudget(3, 0, 1, 1, 2)


class TestMinimality:
    def test_examples(self):
        assert minimality_dichotomy(1, 0, 0).is_minimal
        assert minimality_dichotomy(1, 1, 1).is_minimal
        result = minimality_dichotomy(2, 1, 1)
        assert result.value == 2 and not result.is_minimal

    def test_brute_force_dichotomy(self):
        for n1 in range(1, 7):
            for n2 in range(0, 7):
                for n12 in range(0, min(n1, n2) + 1):
                    result = minimality_dichotomy(n1, n2, n12)
                    assert result.value >= 1
                    assert result.is_minimal == ((n1, n2, n12) in ((1, 0, 0), (1, 1, 1)))

    def test_invalid_triple(self):
        with pytest.raises(BudgetError):
            minimality_dichotomy(0, 0, 0)
        with pytest.raises(BudgetError):
            minimality_dichotomy(1, 1, 2)


class TestPlaneCubics:
    def test_table(self):
        table = {e.label: (e.eu, e.b1, e.b2) for e in plane_cubic_table()}
        assert table == {
            "SMOOTH": (0, 2, 1),
            "NODAL": (1, 1, 1),
            "CUSPIDAL": (2, 0, 1),
            "TRIPLE_LINE": (2, 0, 1),
            "CONIC_TANGENT_LINE": (3, 0, 2),
            "LINE_PLUS_DOUBLE_LINE": (3, 0, 2),
            "THREE_CONCURRENT_LINES": (4, 0, 3),
            "TRIANGLE": (3, 1, 3),
            "CONIC_TRANSVERSE_LINE": (2, 1, 2),
        }

    def test_admitted_exactly_b1_zero_eu_at_least_two(self):
        for entry in plane_cubic_table():
            assert entry.admitted == (entry.b1 == 0 and entry.eu >= 2)
            assert entry.eu == 1 - entry.b1 + entry.b2

    def test_cw_oracle_directly(self):
        # Three spheres through one common point: 3*2 - 2.
        assert cw_invariants(["sphere"] * 3, [[(0, 0), (1, 0), (2, 0)]]) == (4, 1, 0, 3)
        # Triangle: pairwise gluings create one loop.
        assert cw_invariants(
            ["sphere"] * 3, [[(0, 0), (1, 0)], [(1, 1), (2, 0)], [(2, 1), (0, 1)]]
        ) == (3, 1, 1, 3)
        assert cw_invariants(["torus"], []) == (0, 1, 2, 1)

    def test_codes(self):
        assert plane_cubic_by_code("CU").eu == 2
        assert plane_cubic_by_code("L3").b2 == 3
        with pytest.raises(KeyError):
            plane_cubic_by_code("XX")


class TestFeasibleIntersections:
    def test_rows(self):
        assert feasible_intersections(1) == [
            ("CU", 1), ("L1", 1), ("L2", 2), ("L3", 3), ("QL", 2),
        ]
        assert feasible_intersections(2) == [("L2", 1), ("L3", 2), ("QL", 1)]
        assert feasible_intersections(3) == [("L3", 1)]

    def test_out_of_range(self):
        with pytest.raises(BudgetError):
            feasible_intersections(4)
        with pytest.raises(BudgetError):
            feasible_intersections(0)


class TestSurfaceTopology:
    def test_euler_numbers(self, catalog):
        expected = {
            "G1": 3, "G2": 3, "G3": 3, "G4": 4, "G5": 4, "G6": 4, "G7": 4,
            "G8": 4, "G9": 5, "G10": 5, "G11": 5, "G12": 5, "G13": 5,
            "G14": 5, "G15": 5, "R1": 3, "R2": 2, "R3": 4, "R4": 3,
            "ELLIPTIC_CONE": 1,
        }
        for sid, eu in expected.items():
            assert surface_euler_number(catalog[sid]) == eu

    def test_b2(self, catalog):
        assert surface_b2(catalog["G1"]) == 1
        assert surface_b2(catalog["G4"]) == 2
        assert surface_b2(catalog["G9"]) == 3
        assert surface_b2(catalog["R3"]) == 2
        assert surface_b2(catalog["ELLIPTIC_CONE"]) == 1

    def test_euler_is_two_plus_b2_on_normal_models(self, catalog):
        for s in catalog:
            if s.id.startswith("G"):
                assert surface_euler_number(s) == 2 + surface_b2(s)


class TestThetaCokernels:
    def test_displayed_ledger(self, catalog):
        h = cls(1, 0, 0, 0, 0, 0, 0)
        assert coker_theta(catalog["G1"], [(h, 1)]) == FgAbGroup(0, (3,))
        assert coker_theta(
            catalog["G4"], [(E[4], 1), (cls(1, 1, 0, 0, 0, 0, 0), 1)]
        ) == FgAbGroup(1)
        assert coker_theta(
            catalog["G4"], [(E[5], 1), (cls(1, 0, 0, 0, 0, 1, 0), 1)]
        ) == FgAbGroup(0, (3,))
        assert coker_theta(
            catalog["G4"], [(E[6], 1), (cls(1, 0, 0, 0, 0, 0, 1), 1)]
        ) == FgAbGroup(0, (3,))
        assert coker_theta(
            catalog["G5"],
            [(cls(1, 1, 0, 0, 0, 0, 1), 1), (cls(1, 1, 0, 0, 0, 0, 0), 1)],
        ) == FgAbGroup(0, (2,))
        assert coker_theta(
            catalog["G5"], [(cls(1, 1, 0, 0, 0, 0, 1), 1), (E[6], 2)]
        ) == FgAbGroup(0, (2,))

    def test_admitted_configurations_are_surjective(self, catalog):
        assert coker_theta(catalog["G1"], [(E[6], 3)]).is_trivial
        assert coker_theta(catalog["G2"], [(E[4], 1), (E[6], 2)]).is_trivial
        assert coker_theta(
            catalog["G4"], [(E[4], 1), (E[5], 1), (E[6], 1)]
        ).is_trivial
        assert coker_theta(
            catalog["G5"], [(E[5], 1), (cls(1, 0, 0, 0, 0, 0, 1), 1)]
        ).is_trivial
        assert coker_theta(
            catalog["G5"], [(cls(1, 1, 0, 0, 0, 0, 1), 1), (E[5], 2)]
        ).is_trivial

    def test_requires_lattice_model(self, catalog):
        with pytest.raises(ValueError):
            coker_theta(catalog["G3"], [(E[6], 1)])
        with pytest.raises(ValueError):
            coker_theta(catalog["G1"], [(DivClass((1, 0)), 1)])

    def test_invariance_under_reordering(self, catalog):
        comps = [(E[4], 1), (cls(1, 1, 0, 0, 0, 0, 0), 1)]
        assert coker_theta(catalog["G4"], comps) == coker_theta(
            catalog["G4"], list(reversed(comps))
        )


class TestXi:
    def test_l1_case(self):
        result = coker_xi_r3([(SIGMA, 1), (FIBER, 2)])
        assert result.injective
        assert result.coker == FgAbGroup(1, (2,))
        assert not result.admissible

    def test_ql_case(self):
        result = coker_xi_r3([(FIBER, 1), (DivClass((1, 1)), 1)])
        assert result.injective
        assert result.coker == FgAbGroup(1, (2,))

    def test_l3_case_not_injective(self):
        result = coker_xi_r3([(FIBER, 1), (FIBER, 1), (SIGMA, 1)])
        assert not result.injective

    def test_decomposition_precondition(self):
        with pytest.raises(ValueError):
            coker_xi_r3([(SIGMA, 1), (FIBER, 1)])
        with pytest.raises(ValueError):
            coker_xi_r3([(SIGMA, 1), (FIBER, 0)])

    def test_h2_model(self):
        model = H2ModelR3()
        assert model.relation_holds()
        assert model.pushforward(SIGMA) == DivClass((2, -1))
        assert model.pushforward(FIBER) == DivClass((0, 1))
        assert ANTICANONICAL_PULLBACK_R3 == DivClass((1, 2))
