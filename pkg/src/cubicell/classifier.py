"""Case classifier for symbolic triple descriptors.

A descriptor records the discrete data of a triple (curve, plane, cubic):
genus and degree of the curve, the catalog id of the cubic, the chosen
plane, incidence counts, and optionally the homology-isomorphism flag for
the three pairs that need it.  ``classify`` decides which of the six
admissible shapes (a)-(f) the descriptor fits, or rejects it citing the
violated predicate.  Plane matching is literal: a concrete linear form is
matched against the finitely many admitted patterns (including their
one-parameter families); no general projective-equivalence testing is
attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import Catalog, SurfaceModel
from .lattice import DivClass
from .poly import MultiPoly, parse_poly

VAR_INDEX = {"x": 0, "y": 1, "z": 2, "t": 3}

ISO_A3 = "A3"
ISO_A1XW32 = "A1xW32"
ISO_UNKNOWN = "UNKNOWN"

F_TYPES = ("CU", "L1", "QL", "L2", "L3", "RULINGS", "SMOOTH_ELLIPTIC")


class DescriptorError(ValueError):
    """Structurally invalid triple descriptor."""


@dataclass(frozen=True)
class HyperplaneChoice:
    """A plane in P^3 together with the shape of its cubic section."""

    surface_id: str
    form: MultiPoly
    f_type: str
    f_components: tuple[tuple[DivClass, int], ...] = ()

    def __post_init__(self) -> None:
        self.form.linear_coefficients()  # raises unless homogeneous linear
        if self.f_type not in F_TYPES:
            raise DescriptorError(f"unknown section type {self.f_type!r}")

    def coefficients(self) -> tuple[Fraction, ...]:
        return self.form.linear_coefficients()


@dataclass(frozen=True)
class TripleDescriptor:
    curve_genus: int
    curve_degree: int
    surface_id: str
    hyperplane: HyperplaneChoice
    incidence: tuple[int, int, int]
    sharp_c_cap_s1: int
    b2_f: int
    delta_iso: bool | None = None
    curve_class: DivClass | None = None

    def __post_init__(self) -> None:
        if self.curve_genus < 0:
            raise DescriptorError("genus must be nonnegative")
        if self.curve_degree < 1:
            raise DescriptorError("degree must be positive")
        n1, n2, n12 = self.incidence
        if n1 < 1 or n2 < 0 or n12 < 0 or n12 > min(n1, n2):
            raise DescriptorError(f"invalid incidence triple {self.incidence}")
        if self.sharp_c_cap_s1 != n1:
            raise DescriptorError("#(C on S1) must equal N1")
        if self.b2_f < 1:
            raise DescriptorError("B2(F) must be positive")
        if self.surface_id != self.hyperplane.surface_id:
            raise DescriptorError("hyperplane tagged for a different surface")


@dataclass(frozen=True)
class Reason:
    rule: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CaseOutcome:
    case: str
    iso_class: str
    reasons: tuple[Reason, ...]

    def __post_init__(self) -> None:
        expected = ISO_UNKNOWN
        if self.case in "abcde":
            expected = ISO_A3
        elif self.case == "f":
            expected = ISO_A1XW32
        if self.iso_class != expected:
            raise ValueError(f"case {self.case} forces iso class {expected}")

    @property
    def accepted(self) -> bool:
        return self.case != "REJECT"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "case": self.case,
            "iso_class": self.iso_class,
            "reasons": [
                {"rule": r.rule, "passed": r.passed, "detail": r.detail}
                for r in self.reasons
            ],
        }


def _outcome(case: str, reasons: list[Reason]) -> CaseOutcome:
    iso = ISO_A3 if case in "abcde" else ISO_A1XW32 if case == "f" else ISO_UNKNOWN
    return CaseOutcome(case, iso, tuple(reasons))


# ---------------------------------------------------------------------------
# Plane patterns
# ---------------------------------------------------------------------------

def _is_proportional(coeffs: tuple[Fraction, ...], target: tuple[int, ...]) -> bool:
    if not any(coeffs):
        return False
    for i in range(4):
        for j in range(i + 1, 4):
            if coeffs[i] * target[j] != coeffs[j] * target[i]:
                return False
    return True


def _in_span(coeffs: tuple[Fraction, ...], variables: tuple[str, ...]) -> bool:
    allowed = {VAR_INDEX[v] for v in variables}
    return any(coeffs) and all(
        c == 0 for i, c in enumerate(coeffs) if i not in allowed
    )


def _gamma_of(coeffs: tuple[Fraction, ...], numerator: str, denominator: str) -> Fraction | str:
    """gamma in {denominator = gamma * numerator}; 'inf' when the form is
    proportional to the numerator variable."""
    num = coeffs[VAR_INDEX[numerator]]
    den = coeffs[VAR_INDEX[denominator]]
    if den == 0:
        return "inf"
    return -num / den


_EXACT_FORMS = {
    "y": (0, 1, 0, 0),
    "t": (0, 0, 0, 1),
    "x": (1, 0, 0, 0),
    "z": (0, 0, 1, 0),
    "x-t": (1, 0, 0, -1),
}

#: Fixed-plane admitted pairs and their target forms.
_EXACT_TARGETS = {
    "d:G1:y": _EXACT_FORMS["y"],
    "d:G6:t": _EXACT_FORMS["t"],
    "d:G9:y": _EXACT_FORMS["y"],
    "d:G10:y": _EXACT_FORMS["y"],
    "d:G11:x-t": _EXACT_FORMS["x-t"],
    "d:R1:x": _EXACT_FORMS["x"],
    "d:R4:x": _EXACT_FORMS["x"],
    "e:G2:y": _EXACT_FORMS["y"],
    "e:G4:y": _EXACT_FORMS["y"],
}


@dataclass(frozen=True)
class AdmittedPair:
    key: str
    surface_id: str
    hyperplane: str
    case: str
    gamma_domain: str | None
    supported_by: tuple[str, ...]
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "surface": self.surface_id,
            "hyperplane": self.hyperplane,
            "case": self.case,
            "gamma_domain": self.gamma_domain,
            "supported_by": list(self.supported_by),
            "notes": list(self.notes),
        }


ADMITTED_PAIRS: tuple[AdmittedPair, ...] = (
    AdmittedPair("d:G1:y", "G1", "y = 0", "d", None,
                 ("coker-theta-G1-admitted-L1", "curve-classes-G1")),
    AdmittedPair("d:G5:z-gy", "G5", "z = g*y", "d", "P1",
                 ("coker-theta-G5-admitted-QL", "coker-theta-G5-admitted-L2",
                  "curve-classes-G5")),
    AdmittedPair("d:G6:t", "G6", "t = 0", "d", None,
                 ("catalog-verify", "feasible-intersections")),
    AdmittedPair("d:G9:y", "G9", "y = 0", "d", None,
                 ("catalog-verify", "feasible-intersections")),
    AdmittedPair("d:G10:y", "G10", "y = 0", "d", None,
                 ("catalog-verify", "feasible-intersections")),
    AdmittedPair("d:G11:x-t", "G11", "x = t", "d", None,
                 ("catalog-verify", "feasible-intersections")),
    AdmittedPair("d:R1:x", "R1", "x = 0", "d", None,
                 ("euler-minimality-dichotomy", "degree-genus-R12")),
    AdmittedPair("d:R3:y-gx", "R3", "y = g*x", "d", "P1",
                 ("coker-xi-R3-L1", "coker-xi-R3-QL", "coker-xi-R3-L3",
                  "h2-model-R3"),
                 notes=("gamma = inf admitted verbatim from the classification "
                        "statement; flagged for review",)),
    AdmittedPair("d:R4:x", "R4", "x = 0", "d", None,
                 ("degree-genus-R34",)),
    AdmittedPair("e:G2:y", "G2", "y = 0", "e", None,
                 ("coker-theta-G2-admitted-L2", "curve-classes-G2")),
    AdmittedPair("e:G4:y", "G4", "y = 0", "e", None,
                 ("coker-theta-G4-admitted-L3", "curve-classes-G4")),
    AdmittedPair("e:R4:y-gx", "R4", "y = g*x", "e", "A1",
                 ("degree-genus-R34",)),
)


def admitted_pairs() -> tuple[AdmittedPair, ...]:
    """The nine case-(d) and three case-(e) plane/surface pairs."""
    return ADMITTED_PAIRS


def _match_admitted(surface_id: str, coeffs: tuple[Fraction, ...]) -> AdmittedPair | None:
    for pair in ADMITTED_PAIRS:
        if pair.surface_id != surface_id:
            continue
        if pair.key in _EXACT_TARGETS:
            if _is_proportional(coeffs, _EXACT_TARGETS[pair.key]):
                return pair
        elif pair.key == "d:G5:z-gy":
            if _in_span(coeffs, ("y", "z")):
                return pair
        elif pair.key == "d:R3:y-gx":
            if _in_span(coeffs, ("x", "y")):
                return pair
        elif pair.key == "e:R4:y-gx":
            # gamma runs over the affine line only; the plane x = 0 is case d.
            if _in_span(coeffs, ("x", "y")) and coeffs[VAR_INDEX["y"]] != 0:
                return pair
    return None


def _solve_rational(columns: list[DivClass], target: DivClass) -> list[Fraction] | None:
    """Unique rational solution of sum(x_i * columns[i]) = target, or None."""
    rows = len(target)
    width = len(columns)
    aug = [
        [Fraction(col.coeffs[r]) for col in columns] + [Fraction(target.coeffs[r])]
        for r in range(rows)
    ]
    pivot_cols: list[int] = []
    row = 0
    for col in range(width):
        pick = next((r for r in range(row, rows) if aug[r][col] != 0), None)
        if pick is None:
            continue
        aug[row], aug[pick] = aug[pick], aug[row]
        lead = aug[row][col]
        aug[row] = [v / lead for v in aug[row]]
        for r in range(rows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
    for r in range(row, rows):
        if aug[r][width] != 0:
            return None  # inconsistent
    if len(pivot_cols) != width:
        return None  # underdetermined; catalog class lists are independent
    solution = [Fraction(0)] * width
    for r, col in enumerate(pivot_cols):
        solution[col] = aug[r][width]
    return solution


def validate_hyperplane_components(
    surface: SurfaceModel, components: tuple[tuple[DivClass, int], ...]
) -> None:
    """The weighted components must account for the anticanonical pullback.

    On the rank-7 models the difference between the anticanonical class
    and the weighted component sum must be a nonnegative integer
    combination of the exceptional (-2)-classes (the part of the pullback
    supported on the resolution).
    """
    if not components:
        return
    if surface.lattice is None or surface.lattice_model != "cubic":
        raise DescriptorError(f"{surface.id}: components need a rank-7 lattice model")
    total = DivClass((0,) * 7)
    for cls, mult in components:
        if mult < 1:
            raise DescriptorError("component multiplicities are positive")
        total = total + mult * cls
    residue = -surface.lattice.canonical_class - total
    weights = _solve_rational(list(surface.neg2_classes), residue)
    if weights is None or any(w.denominator != 1 or w < 0 for w in weights):
        raise DescriptorError(
            f"{surface.id}: components plus exceptional classes do not sum "
            "to the anticanonical pullback"
        )


def infer_delta_iso(surface: SurfaceModel, curve_class: DivClass) -> bool:
    """Lattice shortcut for the homology-isomorphism flag on G2 and G4.

    The ruling away from the section of the open part is cut by H - E1;
    the induced map on first homology is an isomorphism exactly when the
    curve meets a general member once.
    """
    if surface.lattice is None or surface.lattice_model != "cubic":
        raise DescriptorError(f"{surface.id}: no rank-7 lattice model")
    h_minus_e1 = DivClass((1, -1, 0, 0, 0, 0, 0))
    return surface.lattice.pair(curve_class, h_minus_e1) == 1


# ---------------------------------------------------------------------------
# The decision procedure
# ---------------------------------------------------------------------------

def classify(descriptor: TripleDescriptor, catalog: Catalog) -> CaseOutcome:
    """Decide the case of a symbolic triple, or reject with a cited rule.

    Total and deterministic: every structurally valid descriptor yields
    exactly one outcome.
    """
    d = descriptor
    surface = catalog[d.surface_id]
    validate_hyperplane_components(surface, d.hyperplane.f_components)
    coeffs = d.hyperplane.coefficients()
    n1 = d.incidence[0]
    reasons: list[Reason] = []

    def check(rule: str, passed: bool, detail: str) -> bool:
        reasons.append(Reason(rule, passed, detail))
        return passed

    if not check("genus-at-most-one", d.curve_genus <= 1,
                 f"p_a(C) = {d.curve_genus}"):
        return _outcome("REJECT", reasons)

    if d.curve_genus == 1:
        if not check("genus-one-needs-cone", surface.id == "ELLIPTIC_CONE",
                     f"surface {surface.id}"):
            return _outcome("REJECT", reasons)
        if not check("case-a-degree", d.curve_degree in (3, 4),
                     f"degree {d.curve_degree}"):
            return _outcome("REJECT", reasons)
        if not check("case-a-vertex", d.hyperplane.f_type == "RULINGS",
                     f"section type {d.hyperplane.f_type}"):
            return _outcome("REJECT", reasons)
        if not check("case-a-incidence", n1 == d.b2_f,
                     f"N1 = {n1}, B2(F) = {d.b2_f}"):
            return _outcome("REJECT", reasons)
        return _outcome("a", reasons)

    # Rational curve.  The cones over singular cubics carry their own cases.
    if surface.id == "R1":
        if _is_proportional(coeffs, _EXACT_FORMS["z"]):
            if not check("case-f-degree", d.curve_degree == 1,
                         f"degree {d.curve_degree}"):
                return _outcome("REJECT", reasons)
            if not check("case-f-incidence", n1 == 1, f"N1 = {n1}"):
                return _outcome("REJECT", reasons)
            check("case-f-triple", True, "plane z = 0 on the cuspidal cone with a line")
            return _outcome("f", reasons)
        if _in_span(coeffs, ("x", "y")) and coeffs[VAR_INDEX["y"]] != 0:
            gamma = _gamma_of(coeffs, "x", "y")
            check("case-b-pair", True, f"plane y = {gamma}*x on the cuspidal cone")
            if not check("case-b-degree", d.curve_degree in (3, 4),
                         f"degree {d.curve_degree}"):
                return _outcome("REJECT", reasons)
            if not check("case-b-incidence", n1 == d.b2_f,
                         f"N1 = {n1}, B2(F) = {d.b2_f}"):
                return _outcome("REJECT", reasons)
            return _outcome("b", reasons)
    if surface.id == "R2":
        if _in_span(coeffs, ("x", "y")):
            gamma = _gamma_of(coeffs, "x", "y")
            check("case-c-pair", True, f"plane y = {gamma}*x on the nodal cone")
            if not check("case-c-degree", d.curve_degree in (3, 4),
                         f"degree {d.curve_degree}"):
                return _outcome("REJECT", reasons)
            if not check("case-c-incidence", n1 == d.b2_f + 1,
                         f"N1 = {n1}, B2(F) + 1 = {d.b2_f + 1}"):
                return _outcome("REJECT", reasons)
            return _outcome("c", reasons)

    pair = _match_admitted(surface.id, coeffs)
    if not check("admitted-pair", pair is not None,
                 "plane/surface pair "
                 + ("matches " + pair.key if pair else "is not admitted")):
        return _outcome("REJECT", reasons)
    assert pair is not None

    if pair.case == "d":
        if not check("case-d-incidence", n1 == 1, f"N1 = {n1}"):
            return _outcome("REJECT", reasons)
        return _outcome("d", reasons)

    delta = d.delta_iso
    if delta is None and d.curve_class is not None and surface.id in ("G2", "G4"):
        delta = infer_delta_iso(surface, d.curve_class)
        check("delta-inferred-from-class", True,
              f"pairing shortcut gives delta_iso = {delta}")
    if not check("case-e-delta", delta is True,
                 f"delta_iso = {delta}"):
        return _outcome("REJECT", reasons)
    if not check("case-e-incidence", n1 == 2,
                 f"N1 = {n1} (a homology-cell complement forces 2)"):
        return _outcome("REJECT", reasons)
    return _outcome("e", reasons)


# ---------------------------------------------------------------------------
# Canonical descriptors
# ---------------------------------------------------------------------------

_E5 = DivClass((0, 0, 0, 0, 0, 1, 0))
_E6 = DivClass((0, 0, 0, 0, 0, 0, 1))
_E4 = DivClass((0, 0, 0, 0, 1, 0, 0))
_H_MINUS_E6 = DivClass((1, 0, 0, 0, 0, 0, -1))
_H_MINUS_E1_E6 = DivClass((1, -1, 0, 0, 0, 0, -1))
_H_MINUS_E5 = DivClass((1, 0, 0, 0, 0, -1, 0))

#: Accepting descriptor data per case key: (surface, form, f_type,
#: components, genus, degree, incidence, B2(F), delta_iso, curve_class).
_CANONICAL_DESCRIPTORS: dict[str, tuple] = {
    "a:ELLIPTIC_CONE": ("ELLIPTIC_CONE", "x", "RULINGS", (), 1, 3, (2, 1, 1), 2, None, None),
    "b:R1": ("R1", "y - x", "L2", (), 0, 3, (2, 1, 1), 2, None, None),
    "c:R2": ("R2", "y - x", "L2", (), 0, 3, (3, 2, 2), 2, None, None),
    "d:G1:y": ("G1", "y", "L1", ((_E6, 3),), 0, 1, (1, 1, 1), 1, None, None),
    "d:G5:z-gy": ("G5", "z - y", "QL", ((_E5, 1), (_H_MINUS_E6, 1)), 0, 1, (1, 1, 1), 2, None, None),
    "d:G6:t": ("G6", "t", "L2", (), 0, 1, (1, 1, 1), 2, None, None),
    "d:G9:y": ("G9", "y", "L3", (), 0, 1, (1, 1, 1), 3, None, None),
    "d:G10:y": ("G10", "y", "L3", (), 0, 1, (1, 1, 1), 3, None, None),
    "d:G11:x-t": ("G11", "x - t", "L3", (), 0, 1, (1, 1, 1), 3, None, None),
    "d:R1:x": ("R1", "x", "L1", (), 0, 1, (1, 1, 1), 1, None, None),
    "d:R3:y-gx": ("R3", "y - x", "L2", (), 0, 1, (1, 1, 1), 2, None, None),
    "d:R4:x": ("R4", "x", "L1", (), 0, 1, (1, 1, 1), 1, None, None),
    "e:G2:y": ("G2", "y", "L2", ((_E4, 1), (_E6, 2)), 0, 2, (2, 2, 2), 2, True, _H_MINUS_E5),
    "e:G4:y": ("G4", "y", "L3", ((_E4, 1), (_E5, 1), (_E6, 1)), 0, 2, (2, 1, 1), 3, True, _H_MINUS_E5),
    "e:R4:y-gx": ("R4", "y - x", "L2", (), 0, 2, (2, 1, 1), 2, True, None),
    "f:R1:z": ("R1", "z", "L1", (), 0, 1, (1, 1, 1), 1, None, None),
}


def canonical_descriptor(key: str) -> TripleDescriptor:
    """Reference descriptor accepted into the case named by ``key``."""
    surface_id, form, f_type, comps, genus, degree, incidence, b2_f, delta, cls = (
        _CANONICAL_DESCRIPTORS[key]
    )
    return TripleDescriptor(
        curve_genus=genus,
        curve_degree=degree,
        surface_id=surface_id,
        hyperplane=HyperplaneChoice(surface_id, parse_poly(form), f_type, comps),
        incidence=incidence,
        sharp_c_cap_s1=incidence[0],
        b2_f=b2_f,
        delta_iso=delta,
        curve_class=cls,
    )


def canonical_descriptor_keys() -> tuple[str, ...]:
    return tuple(_CANONICAL_DESCRIPTORS)


# ---------------------------------------------------------------------------
# The distinguished non-cell witness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExampleCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ExampleVerification:
    checks: tuple[ExampleCheck, ...]
    w32_numerator: str
    w32_denominator: str

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "passed": self.passed,
            "w32": {"numerator": self.w32_numerator, "denominator": self.w32_denominator},
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def verify_example_non_a3(catalog: Catalog) -> ExampleVerification:
    """Exact checks behind the unique non-affine-space homology cell.

    The witness triple is the line {x = y = -z}, the plane {z = 0} and the
    cuspidal cone; its complement is a product of a line with a
    contractible surface of logarithmic Kodaira dimension one, recorded
    here by its defining rational equation.
    """
    surface = catalog["R1"]
    assert surface.equation is not None
    checks: list[ExampleCheck] = []

    # C = {x = y = -z} parametrized by [s : u] -> [s : s : -s : u].
    c_images = [(1, 0), (1, 0), (-1, 0), (0, 1)]
    on_surface = surface.equation.compose_linear(c_images, ("s", "u"))
    checks.append(ExampleCheck(
        "curve-on-cubic", on_surface.is_zero,
        f"restriction of the cone equation to the line: {on_surface}"))

    plane = parse_poly("z")
    on_plane = plane.compose_linear(c_images, ("s", "u"))
    checks.append(ExampleCheck(
        "curve-not-in-plane", not on_plane.is_zero,
        f"restriction of z to the line: {on_plane}"))

    # z pulls back to -s, so the plane meets the line exactly at s = 0,
    # which is the point [0:0:0:1].
    expected = MultiPoly({(1, 0): -1}, ("s", "u"))
    meets_once = on_plane == expected
    checks.append(ExampleCheck(
        "single-plane-point", meets_once,
        "plane section of the line vanishes exactly at [0:0:0:1]"))

    # The family {y = a*x, z = -a^2*y} maps to the witness line under the
    # scaling x -> x, y -> y/a, z -> z/a^3, t -> t.
    rescale_ok = True
    for a in (Fraction(2), Fraction(3), Fraction(-5), Fraction(1, 3)):
        member = [(1, 0), (a, 0), (-a**3, 0), (0, 1)]
        image = [member[0], (member[1][0] / a, 0), (member[2][0] / a**3, 0), (0, 1)]
        if image != c_images:
            rescale_ok = False
    checks.append(ExampleCheck(
        "coordinate-change", rescale_ok,
        "scaling automorphism carries each family member to {x = y = -z}"))

    zx1 = parse_poly("z*x + 1")
    zy1 = parse_poly("z*y + 1")
    numerator = zx1 * zx1 - zy1 * zy1 * zy1 - parse_poly("y")
    checks.append(ExampleCheck(
        "w32-recorded", not numerator.is_zero,
        "contractible-surface equation recorded"))

    return ExampleVerification(tuple(checks), str(numerator), "y")
