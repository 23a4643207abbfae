"""Euler-number budgets, plane-cubic topology, and boundary cokernels.

Three bookkeeping devices drive the exclusion arguments:

* the Euler budget eu(F) = eu(S2) + 2 p_a(C) + N1 + N2 - N12 - 2 relating
  the hyperplane section F to the incidence counts of the blown-up curve;
* the classification of plane cubics by (eu, b1, b2), computed here from
  normalization gluing data rather than copied in;
* cokernels of the span of boundary components inside the rank-7 Picard
  lattice (Theta) or inside H2(plane) + H2(surface) for the non-normal
  surface with a rank-2 homology model (xi).  A configuration can only
  bound a homology cell when the relevant cokernel is trivial (Theta),
  or infinite cyclic and torsion-free (xi).
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import SurfaceModel
from .lattice import DivClass, FgAbGroup, cokernel, smith_normal_form


class BudgetError(ValueError):
    """Incidence counts violating their structural inequalities."""


# ---------------------------------------------------------------------------
# Euler budget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerBudget:
    """Euler data of one boundary configuration.

    N1, N2, N12 count exceptional curves over C inside the hyperplane
    divisor, the cubic divisor, and both; equivalently the points of
    C meeting S1, Sing S2, and S1 together with Sing S2.
    """

    eu_S2: int
    pa_C: int
    N1: int
    N2: int
    N12: int

    def __post_init__(self) -> None:
        if self.pa_C < 0 or self.N1 < 0 or self.N2 < 0 or self.N12 < 0:
            raise BudgetError("counts must be nonnegative")
        if self.N1 < 1:
            raise BudgetError("the curve always meets the hyperplane: N1 >= 1")
        if self.N12 > min(self.N1, self.N2):
            raise BudgetError("N12 cannot exceed min(N1, N2)")


def euler_of_F(budget: EulerBudget) -> int:
    """eu(F) forced by the budget: eu(S2) + 2 p_a(C) + N1 + N2 - N12 - 2."""
    return budget.eu_S2 + 2 * budget.pa_C + budget.N1 + budget.N2 - budget.N12 - 2


@dataclass(frozen=True)
class MinimalityResult:
    value: int
    is_minimal: bool
    minimal_profile: tuple[int, int, int] | None


def minimality_dichotomy(n1: int, n2: int, n12: int) -> MinimalityResult:
    """N1 + N2 - N12 >= 1, with equality exactly at (1,0,0) and (1,1,1)."""
    if n1 < 1 or n2 < 0 or n12 < 0 or n12 > min(n1, n2):
        raise BudgetError(f"invalid incidence triple ({n1}, {n2}, {n12})")
    value = n1 + n2 - n12
    profile = (n1, n2, n12)
    is_minimal = value == 1
    return MinimalityResult(value, is_minimal, profile if is_minimal else None)


# ---------------------------------------------------------------------------
# Plane cubics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneCubicType:
    label: str
    code: str | None
    eu: int
    b1: int
    b2: int

    @property
    def admitted(self) -> bool:
        """Types that can appear as F when the complement is a homology cell."""
        return self.b1 == 0 and self.eu >= 2


#: Normalization gluing data: components are spheres or tori, and each
#: gluing set identifies one marked point on several components (or the
#: same component twice) to a single point of the curve.
_CUBIC_GLUING: dict[str, tuple[str | None, list[str], list[list[tuple[int, int]]]]] = {
    "SMOOTH": (None, ["torus"], []),
    "NODAL": (None, ["sphere"], [[(0, 0), (0, 1)]]),
    "CUSPIDAL": ("CU", ["sphere"], []),
    "TRIPLE_LINE": ("L1", ["sphere"], []),
    "CONIC_TANGENT_LINE": ("QL", ["sphere", "sphere"], [[(0, 0), (1, 0)]]),
    "LINE_PLUS_DOUBLE_LINE": ("L2", ["sphere", "sphere"], [[(0, 0), (1, 0)]]),
    "THREE_CONCURRENT_LINES": ("L3", ["sphere"] * 3, [[(0, 0), (1, 0), (2, 0)]]),
    "TRIANGLE": (None, ["sphere"] * 3,
                 [[(0, 0), (1, 0)], [(1, 1), (2, 0)], [(2, 1), (0, 1)]]),
    "CONIC_TRANSVERSE_LINE": (None, ["sphere", "sphere"],
                              [[(0, 0), (1, 0)], [(0, 1), (1, 1)]]),
}

_COMPONENT_EULER = {"sphere": 2, "torus": 0}


def cw_invariants(
    components: list[str], gluings: list[list[tuple[int, int]]]
) -> tuple[int, int, int, int]:
    """(eu, b0, b1, b2) of closed surfaces glued at points.

    Euler number by point counting: each gluing set collapses k marked
    points to one.  b2 is one fundamental class per component, b0 comes
    from the incidence graph, and b1 closes the alternating sum.
    """
    eu = sum(_COMPONENT_EULER[c] for c in components)
    eu -= sum(len(g) - 1 for g in gluings)
    parent = list(range(len(components)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gluings:
        anchor = find(g[0][0])
        for comp, _ in g[1:]:
            parent[find(comp)] = anchor
    b0 = len({find(i) for i in range(len(components))})
    b2 = len(components)
    # Point gluings add no 2-cells, so eu = b0 - b1 + b2 closes the count.
    b1 = b0 + b2 - eu
    return eu, b0, b1, b2


def plane_cubic_table() -> list[PlaneCubicType]:
    """All plane-cubic support types with (eu, b1, b2) from the CW oracle."""
    out = []
    for label, (code, components, gluings) in _CUBIC_GLUING.items():
        eu, b0, b1, b2 = cw_invariants(components, gluings)
        if b0 != 1:
            raise AssertionError(f"{label}: plane cubics are connected")
        out.append(PlaneCubicType(label, code, eu, b1, b2))
    return out


def plane_cubic_by_code(code: str) -> PlaneCubicType:
    for entry in plane_cubic_table():
        if entry.code == code:
            return entry
    raise KeyError(f"no admitted plane-cubic type with code {code!r}")


def feasible_intersections(b2_s2: int) -> list[tuple[str, int]]:
    """Admitted (F type, number of points of C on F) pairs for given B2(S2).

    Derived from B2(F) = B2(S2) + #(C on F) - 1 with B1(F) = 0 and at
    least one intersection point.
    """
    if not 1 <= b2_s2 <= 3:
        raise BudgetError("B2(S2) must be between 1 and 3")
    out = []
    for entry in sorted(plane_cubic_table(), key=lambda e: e.code or ""):
        if not entry.admitted:
            continue
        count = entry.b2 - b2_s2 + 1
        if count >= 1:
            out.append((entry.code, count))
    return out


# ---------------------------------------------------------------------------
# Surface topology from catalog data
# ---------------------------------------------------------------------------

_SINGULARITY_RANK_LETTERS = {"A", "D", "E"}


def singularity_rank(label: str) -> int:
    if not label or label[0] not in _SINGULARITY_RANK_LETTERS:
        raise ValueError(f"unknown singularity label {label!r}")
    return int(label[1:])


def surface_b2(surface: SurfaceModel) -> int:
    """Second Betti number of a catalog surface.

    Normal rational cubics: 7 minus the total rank of the singularities
    (each exceptional chain eats that many classes).  The non-normal
    surfaces and the elliptic cone carry H2 of rank 1, except the one
    whose conductor stays irreducible upstairs, where H2 has rank 2.
    """
    if surface.id.startswith("G"):
        return 7 - sum(singularity_rank(t) for _, t in surface.singular_points)
    if surface.id == "R3":
        return 2
    return 1


def surface_euler_number(surface: SurfaceModel) -> int:
    """Topological Euler number of a catalog surface.

    For normal rational cubics: the minimal resolution has eu 9; each
    chain of k exceptional spheres is a tree with eu k + 1 and collapses
    to a point.  Cones over plane cubics: eu(base) + 1.  For the ruled
    non-normal surfaces: eu(resolution) - eu(conductor upstairs) +
    eu(line), with the conductor upstairs a single sphere when it is
    irreducible and two spheres through a point otherwise.
    """
    if surface.id.startswith("G"):
        total = 9
        for _, label in surface.singular_points:
            total -= singularity_rank(label)  # eu(chain) - 1 per point
        return total
    if surface.cone_over is not None:
        base = next(
            e for e in plane_cubic_table() if e.label == surface.cone_over
            or e.code == surface.cone_over
        )
        return base.eu + 1
    if surface.conductor_upstairs == "irreducible":
        return 4 - 2 + 2
    if surface.conductor_upstairs == "reducible":
        return 4 - 3 + 2
    raise ValueError(f"{surface.id}: no Euler data")


# ---------------------------------------------------------------------------
# Theta cokernels
# ---------------------------------------------------------------------------

def coker_theta(
    surface: SurfaceModel, f_components: list[tuple[DivClass, int]]
) -> FgAbGroup:
    """Cokernel of the span of boundary classes in the rank-7 lattice.

    Generators are the fundamental classes of the irreducible components
    of the hyperplane section (multiplicities do not enter: each component
    generates once) together with all exceptional (-2)-classes.  The
    configuration can bound a homology cell only if the cokernel is
    trivial.
    """
    if surface.lattice is None or surface.lattice_model != "cubic":
        raise ValueError(f"{surface.id}: no rank-7 lattice model")
    generators = [cls for cls, _ in f_components]
    for cls in generators:
        if len(cls) != 7:
            raise ValueError("component classes must live in the rank-7 lattice")
    generators.extend(s for chain in surface.chains for s in chain.classes)
    return cokernel(generators, 7)


# ---------------------------------------------------------------------------
# The rank-2 homology model of the non-normal surface R3 and xi
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class H2ModelR3:
    """H2 of the non-normal surface whose conductor is irreducible upstairs.

    Free of rank 2 with basis ([E], pushforward of the fiber class); the
    normalization map sends Sigma + f to twice the conductor class, so
    Sigma pushes to 2[E] - f*.
    """

    basis_labels: tuple[str, str] = ("[E]", "mu*[f]")

    def pushforward(self, cls: DivClass) -> DivClass:
        """Image of a*Sigma + b*f in the ([E], mu*[f]) basis."""
        if len(cls) != 2:
            raise ValueError("rank-2 ruled class expected")
        a, b = cls.coeffs
        return DivClass((2 * a, b - a))

    def relation_holds(self) -> bool:
        """Sigma + f pushes to 2[E]."""
        return self.pushforward(DivClass((1, 1))) == DivClass((2, 0))


ANTICANONICAL_PULLBACK_R3 = DivClass((1, 2))


@dataclass(frozen=True)
class XiResult:
    injective: bool
    coker: FgAbGroup
    images: tuple[tuple[DivClass, DivClass], ...]

    @property
    def admissible(self) -> bool:
        """xi must be injective with cokernel Z and no torsion."""
        return self.injective and self.coker == FgAbGroup(1)


def coker_xi_r3(decomposition: list[tuple[DivClass, int]]) -> XiResult:
    """Map from hyperplane-section components into H2(plane) + H2(surface).

    Each irreducible component a*Sigma + b*f contributes once, mapping to
    (plane degree, pushforward) in the basis ([plane hyperplane], [E],
    mu*[f]); the multiplicities only enter the precondition that the
    weighted sum of the components is the anticanonical pullback
    Sigma + 2f.
    """
    model = H2ModelR3()
    total = DivClass((0, 0))
    for cls, mult in decomposition:
        if len(cls) != 2 or mult < 1:
            raise ValueError("decomposition entries are (rank-2 class, multiplicity >= 1)")
        total = total + mult * cls
    if total != ANTICANONICAL_PULLBACK_R3:
        raise ValueError(
            f"components sum to {total.coeffs}, not the anticanonical pullback (1, 2)"
        )
    images = []
    columns = []
    for cls, _ in decomposition:
        a, b = cls.coeffs
        plane_degree = a + b
        push = model.pushforward(cls)
        image = DivClass((plane_degree, *push.coeffs))
        images.append((cls, image))
        columns.append(image)
    matrix = [[col.coeffs[i] for col in columns] for i in range(3)]
    rank = smith_normal_form(matrix).rank
    injective = rank == len(columns)
    return XiResult(injective, cokernel(columns, 3), tuple(images))
