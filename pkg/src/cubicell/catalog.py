"""Machine-readable catalog of the cubic surfaces under study.

The catalog ships as JSON (``data/catalog.json`` with a JSON Schema next to
it) and holds, per surface: the defining cubic, its singular points with
type labels, the lines it contains, and, for the four surfaces whose
divisor arithmetic the enumerator needs, a rank-7 lattice model with the
(-2)-classes, their grouping into exceptional chains over each singular
point, the known (-1)-curve classes, and the line-to-class assignments
that are explicitly pinned down elsewhere in the toolkit's checks.

The chain groupings and (-2)-class lists are data, not derived: the
blow-up point configurations behind them are specified only pictorially
upstream, so the catalog records their conclusions and verifies everything
that is verifiable (incidence, self-intersections, degrees) at load time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import jsonschema

from .lattice import (
    DivClass,
    IntLattice,
    cubic_blowup_lattice,
    hirzebruch_lattice,
)
from .poly import (
    LineP3,
    MultiPoly,
    PointP3,
    jacobian_vanishes,
    kernel_basis,
    parse_poly,
    restrict_to_line,
)

CATALOG_ENV_VAR = "CLV_CATALOG"

#: Number of lines each G-surface must carry (index i-1 for G_i).
EXPECTED_G_LINE_COUNTS = (1, 2, 3, 3, 3, 4, 5, 5, 6, 6, 6, 7, 7, 8, 9)

LATTICE_MODELS = {
    "cubic": lambda: cubic_blowup_lattice(),
    "F3": lambda: hirzebruch_lattice(3),
    "F1": lambda: hirzebruch_lattice(1),
    "F3_elliptic": lambda: hirzebruch_lattice(3, base_genus=1),
}

#: Pullback of the anticanonical degree class to the ruled models.
RULED_DEGREE_CLASS = {
    "F3": DivClass((1, 3)),
    "F3_elliptic": DivClass((1, 3)),
    "F1": DivClass((1, 2)),
}


class CatalogError(ValueError):
    """Catalog file rejected: schema violation or failed invariant."""


@dataclass(frozen=True)
class Chain:
    """Exceptional (-2)-classes over one singular point, in chain order."""

    singular_point: int
    classes: tuple[DivClass, ...]
    designated: bool


@dataclass(frozen=True)
class SurfaceModel:
    id: str
    normal: bool
    cone: bool = False
    equation: MultiPoly | None = None
    family: tuple[MultiPoly, MultiPoly] | None = None
    family_parameter: tuple[int, int] | None = None
    singular_points: tuple[tuple[PointP3, str], ...] = ()
    lines: tuple[LineP3, ...] = ()
    lattice: IntLattice | None = None
    lattice_model: str | None = None
    neg2_classes: tuple[DivClass, ...] = ()
    chains: tuple[Chain, ...] = ()
    minus_one_curves: tuple[DivClass, ...] = ()
    line_classes: tuple[tuple[int, DivClass], ...] = ()
    conductor_line_index: int | None = None
    cone_over: str | None = None
    conductor_upstairs: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def line_class_map(self) -> dict[int, DivClass]:
        return dict(self.line_classes)

    def designated_chain(self) -> Chain | None:
        for chain in self.chains:
            if chain.designated:
                return chain
        return None

    def profile_chain(self) -> Chain:
        """Chain used for incidence profiles: the designated one, else the
        chain of the unique singular point."""
        chain = self.designated_chain()
        if chain is not None:
            return chain
        if len(self.chains) == 1:
            return self.chains[0]
        raise CatalogError(f"{self.id}: no designated chain and {len(self.chains)} chains")


class Catalog:
    """Immutable collection of surface models, indexed by id."""

    def __init__(self, surfaces: Sequence[SurfaceModel]):
        self.surfaces = tuple(surfaces)
        self._by_id = {s.id: s for s in self.surfaces}
        if len(self._by_id) != len(self.surfaces):
            raise CatalogError("duplicate surface ids")

    def __iter__(self) -> Iterator[SurfaceModel]:
        return iter(self.surfaces)

    def __contains__(self, surface_id: str) -> bool:
        return surface_id in self._by_id

    def __getitem__(self, surface_id: str) -> SurfaceModel:
        try:
            return self._by_id[surface_id]
        except KeyError:
            raise CatalogError(f"unknown surface {surface_id!r}") from None


# ---------------------------------------------------------------------------
# Loading and dumping
# ---------------------------------------------------------------------------

def _data_text(name: str) -> str:
    return resources.files("cubicell.data").joinpath(name).read_text("utf-8")


def default_catalog_path() -> str | None:
    return os.environ.get(CATALOG_ENV_VAR)


def _parse_line(pair: Sequence[str]) -> LineP3:
    return LineP3(parse_poly(pair[0]), parse_poly(pair[1]))


def _build_surface(entry: Mapping, g13_parameter: tuple[int, int]) -> SurfaceModel:
    sid = entry["id"]
    equation = None
    family = None
    family_parameter = None
    if "equation" in entry:
        equation = parse_poly(entry["equation"])
    if "equation_family" in entry:
        fam = entry["equation_family"]
        first = parse_poly(fam["first"])
        second = parse_poly(fam["second"])
        family = (first, second)
        family_parameter = tuple(g13_parameter)
        if family_parameter == (0, 0):
            raise CatalogError(f"{sid}: family parameter must be nonzero")
        equation = family_parameter[0] * first + family_parameter[1] * second

    lattice = None
    model = None
    neg2: tuple[DivClass, ...] = ()
    chains: tuple[Chain, ...] = ()
    minus_one: tuple[DivClass, ...] = ()
    line_classes: tuple[tuple[int, DivClass], ...] = ()
    if "lattice" in entry:
        lat = entry["lattice"]
        model = lat["model"]
        lattice = LATTICE_MODELS[model]()
        neg2 = tuple(DivClass(tuple(c)) for c in lat.get("neg2_classes", ()))
        chains = tuple(
            Chain(
                singular_point=c["singular_point"],
                classes=tuple(DivClass(tuple(v)) for v in c["classes"]),
                designated=c["designated"],
            )
            for c in lat.get("chains", ())
        )
        minus_one = tuple(DivClass(tuple(c)) for c in lat.get("minus_one_curves", ()))
        line_classes = tuple(
            sorted(
                (int(k), DivClass(tuple(v)))
                for k, v in lat.get("line_classes", {}).items()
            )
        )

    return SurfaceModel(
        id=sid,
        normal=entry["normal"],
        cone=entry.get("cone", False),
        equation=equation,
        family=family,
        family_parameter=family_parameter,
        singular_points=tuple(
            (PointP3(sp["point"]), sp["type"])
            for sp in entry.get("singular_points", ())
        ),
        lines=tuple(_parse_line(pair) for pair in entry.get("lines", ())),
        lattice=lattice,
        lattice_model=model,
        neg2_classes=neg2,
        chains=chains,
        minus_one_curves=minus_one,
        line_classes=line_classes,
        conductor_line_index=entry.get("conductor_line_index"),
        cone_over=entry.get("cone_over"),
        conductor_upstairs=entry.get("conductor_upstairs"),
        notes=tuple(entry.get("notes", ())),
    )


def load_catalog(
    path: str | Path | None = None,
    g13_parameter: tuple[int, int] = (1, 1),
    verify: bool = True,
) -> Catalog:
    """Load and schema-validate the catalog.

    ``path`` defaults to the ``CLV_CATALOG`` environment variable, then the
    packaged data file.  With ``verify`` the load fails loudly on the first
    catalog whose invariants do not hold; pass ``verify=False`` to inspect a
    deliberately broken file through :func:`verify_catalog` instead.
    """
    if path is None:
        path = default_catalog_path()
    text = Path(path).read_text("utf-8") if path is not None else _data_text("catalog.json")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    schema = json.loads(_data_text("catalog.schema.json"))
    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as exc:
        raise CatalogError(f"catalog schema violation: {exc.message}") from exc

    catalog = Catalog([_build_surface(e, g13_parameter) for e in payload["surfaces"]])
    if verify:
        report = verify_catalog(catalog)
        if not report.passed:
            first = report.failures[0]
            raise CatalogError(
                f"catalog invariant failed for {first.surface_id}: {first.detail}"
                f" ({len(report.failures)} failure(s) total)"
            )
    return catalog


def _class_array(c: DivClass) -> list[int]:
    return list(c.coeffs)


def dump_catalog(catalog: Catalog) -> str:
    """Canonical JSON serialization; loading then dumping the shipped file
    reproduces it byte for byte."""
    surfaces = []
    for s in catalog:
        entry: dict = {"id": s.id, "normal": s.normal}
        if s.cone:
            entry["cone"] = True
        elif s.id.startswith(("G", "R")):
            entry["cone"] = False
        if s.cone_over is not None:
            entry["cone_over"] = s.cone_over
        if s.conductor_upstairs is not None:
            entry["conductor_upstairs"] = s.conductor_upstairs
        if s.family is not None:
            entry["equation_family"] = {
                "first": str(s.family[0]),
                "second": str(s.family[1]),
                "default_parameter": list(s.family_parameter or (1, 1)),
            }
        elif s.equation is not None:
            entry["equation"] = str(s.equation)
        if s.singular_points:
            entry["singular_points"] = [
                {"point": [int(c) for c in pt.coords], "type": typ}
                for pt, typ in s.singular_points
            ]
        if s.lines:
            entry["lines"] = [[str(f) for f in line.forms] for line in s.lines]
        if s.conductor_line_index is not None:
            entry["conductor_line_index"] = s.conductor_line_index
        if s.lattice_model is not None:
            lat: dict = {
                "basis": "H,E1..E6" if s.lattice_model == "cubic" else "Sigma,f",
                "model": s.lattice_model,
            }
            if s.lattice_model == "cubic":
                lat["neg2_classes"] = [_class_array(c) for c in s.neg2_classes]
                lat["chains"] = [
                    {
                        "singular_point": chain.singular_point,
                        "designated": chain.designated,
                        "classes": [_class_array(c) for c in chain.classes],
                    }
                    for chain in s.chains
                ]
                lat["minus_one_curves"] = [_class_array(c) for c in s.minus_one_curves]
                lat["line_classes"] = {
                    str(i): _class_array(c) for i, c in s.line_classes
                }
            entry["lattice"] = lat
        if s.notes:
            entry["notes"] = list(s.notes)
        surfaces.append(entry)
    payload = {"schema": 1, "surfaces": surfaces}
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckFailure:
    surface_id: str
    kind: str
    entry: str
    detail: str


@dataclass
class SurfaceReport:
    surface_id: str
    line_checks: int = 0
    singular_point_checks: int = 0
    neg2_checks: int = 0
    failures: list[CheckFailure] = field(default_factory=list)
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class CatalogReport:
    surfaces: list[SurfaceReport]

    @property
    def failures(self) -> list[CheckFailure]:
        return [f for s in self.surfaces for f in s.failures]

    @property
    def passed(self) -> bool:
        return not self.failures

    def totals(self) -> dict[str, int]:
        return {
            "line_checks": sum(s.line_checks for s in self.surfaces),
            "line_checks_G": sum(
                s.line_checks for s in self.surfaces if s.surface_id.startswith("G")
            ),
            "singular_point_checks": sum(s.singular_point_checks for s in self.surfaces),
            "singular_point_checks_G": sum(
                s.singular_point_checks
                for s in self.surfaces
                if s.surface_id.startswith("G")
            ),
            "neg2_checks": sum(s.neg2_checks for s in self.surfaces),
            "failures": len(self.failures),
        }

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "passed": self.passed,
            "totals": self.totals(),
            "surfaces": [
                {
                    "id": s.surface_id,
                    "passed": s.passed,
                    "line_checks": s.line_checks,
                    "singular_point_checks": s.singular_point_checks,
                    "neg2_checks": s.neg2_checks,
                    "failures": [
                        {
                            "kind": f.kind,
                            "entry": f.entry,
                            "detail": f.detail,
                        }
                        for f in s.failures
                    ],
                    "notes": list(s.notes),
                }
                for s in self.surfaces
            ],
        }


def _chain_hits(lattice: IntLattice, chain: Chain, cls: DivClass) -> list[int]:
    return [lattice.pair(cls, c) for c in chain.classes]


def exceptional_chain_profile(
    surface: SurfaceModel, cls: DivClass, chain: Chain | None = None
) -> tuple[int, list[tuple[DivClass, int]]]:
    """Total multiplicity with which ``cls`` meets an exceptional chain.

    Uses the surface's designated chain (or its only chain) unless one is
    passed explicitly; returns the sum of the pairings and the per-class
    list in chain order.
    """
    if surface.lattice is None or not surface.chains:
        raise CatalogError(f"{surface.id}: no exceptional chain data")
    if chain is None:
        chain = surface.profile_chain()
    hits = _chain_hits(surface.lattice, chain, cls)
    return sum(hits), list(zip(chain.classes, hits))


def _verify_g_surface(s: SurfaceModel, report: SurfaceReport) -> None:
    index = int(s.id[1:]) - 1
    expected = EXPECTED_G_LINE_COUNTS[index]
    if len(s.lines) != expected:
        report.failures.append(
            CheckFailure(s.id, "line-count", str(len(s.lines)), f"expected {expected} lines")
        )


def _verify_lattice_data(s: SurfaceModel, report: SurfaceReport) -> None:
    lat = s.lattice
    assert lat is not None
    minus_k = -lat.canonical_class
    for c in s.neg2_classes:
        report.neg2_checks += 1
        if lat.selfint(c) != -2:
            report.failures.append(
                CheckFailure(s.id, "neg2-selfint", str(c.coeffs), f"c.c = {lat.selfint(c)}")
            )
        if lat.pair(c, minus_k) != 0:
            report.failures.append(
                CheckFailure(s.id, "neg2-degree", str(c.coeffs), f"c.(-K) = {lat.pair(c, minus_k)}")
            )
    neg2_set = set(s.neg2_classes)
    chain_classes = [c for chain in s.chains for c in chain.classes]
    if sorted(c.coeffs for c in chain_classes) != sorted(c.coeffs for c in s.neg2_classes):
        report.failures.append(
            CheckFailure(s.id, "chain-partition", "-", "chains must partition the (-2)-classes")
        )
    for chain in s.chains:
        if chain.singular_point >= len(s.singular_points):
            report.failures.append(
                CheckFailure(s.id, "chain-point", str(chain.singular_point), "no such singular point")
            )
        for c in chain.classes:
            if c not in neg2_set:
                report.failures.append(
                    CheckFailure(s.id, "chain-class", str(c.coeffs), "not a listed (-2)-class")
                )
        # Mutual intersections inside one chain are 0 or 1 and connect it.
        k = len(chain.classes)
        adj = [[False] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                p = lat.pair(chain.classes[i], chain.classes[j])
                if p not in (0, 1):
                    report.failures.append(
                        CheckFailure(s.id, "chain-pairing", f"{i},{j}", f"pairing {p}")
                    )
                adj[i][j] = adj[j][i] = p == 1
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(k):
                if adj[i][j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != k:
            report.failures.append(
                CheckFailure(s.id, "chain-connected", "-", "chain graph is disconnected")
            )
    for c in s.minus_one_curves:
        if lat.selfint(c) != -1 or lat.degree(c) != 1:
            report.failures.append(
                CheckFailure(s.id, "minus-one", str(c.coeffs), "not a (-1)-class of degree 1")
            )
    for line_index, cls in s.line_classes:
        if line_index >= len(s.lines):
            report.failures.append(
                CheckFailure(s.id, "line-class-index", str(line_index), "no such line")
            )
            continue
        if lat.selfint(cls) != -1 or lat.degree(cls) != 1:
            report.failures.append(
                CheckFailure(s.id, "line-class-shape", str(cls.coeffs), "line classes are degree-1 (-1)-classes")
            )
        # The class must meet each chain exactly when its line passes
        # through the corresponding singular point.
        line = s.lines[line_index]
        for chain in s.chains:
            point = s.singular_points[chain.singular_point][0]
            m = sum(_chain_hits(lat, chain, cls))
            on_line = line.contains(point)
            if on_line != (m >= 1):
                report.failures.append(
                    CheckFailure(
                        s.id,
                        "line-class-incidence",
                        f"line {line_index} vs chain at point {chain.singular_point}",
                        f"line contains point: {on_line}, chain multiplicity {m}",
                    )
                )


def verify_surface(s: SurfaceModel) -> SurfaceReport:
    report = SurfaceReport(surface_id=s.id, notes=s.notes)
    eq = s.equation
    if eq is not None:
        if not (eq.is_homogeneous() and eq.total_degree() == 3):
            report.failures.append(
                CheckFailure(s.id, "equation", str(eq), "not a homogeneous cubic")
            )
            return report
        for line_index, line in enumerate(s.lines):
            report.line_checks += 1
            if not restrict_to_line(eq, line).is_zero:
                report.failures.append(
                    CheckFailure(s.id, "line-on-surface", str(line), "restriction is nonzero")
                )
        for pt, typ in s.singular_points:
            report.singular_point_checks += 1
            if not jacobian_vanishes(eq, pt):
                report.failures.append(
                    CheckFailure(s.id, "singular-point", f"{[str(c) for c in pt.coords]} ({typ})",
                                 "Jacobian does not vanish")
                )
        if not s.normal:
            # Non-normal surfaces are singular along the whole conductor line.
            if s.conductor_line_index is None or s.conductor_line_index >= len(s.lines):
                report.failures.append(
                    CheckFailure(s.id, "conductor", "-", "missing conductor line")
                )
            else:
                conductor = s.lines[s.conductor_line_index]
                for pt in conductor.sample_points(5):
                    report.singular_point_checks += 1
                    if not jacobian_vanishes(eq, pt):
                        report.failures.append(
                            CheckFailure(
                                s.id,
                                "conductor-singular",
                                str([str(c) for c in pt.coords]),
                                "conductor point is smooth",
                            )
                        )
    # Pairwise distinctness: two listed lines never share more than a point.
    for i in range(len(s.lines)):
        for j in range(i + 1, len(s.lines)):
            stacked = s.lines[i].coefficient_matrix() + s.lines[j].coefficient_matrix()
            if len(kernel_basis(stacked)) > 1:
                report.failures.append(
                    CheckFailure(s.id, "line-pair", f"{i},{j}", "lines coincide")
                )
    if s.id.startswith("G"):
        _verify_g_surface(s, report)
    if s.lattice is not None and s.lattice_model == "cubic":
        _verify_lattice_data(s, report)
    return report


def verify_catalog(catalog: Catalog) -> CatalogReport:
    """Run every per-surface invariant and collect a pass/fail report."""
    return CatalogReport([verify_surface(s) for s in catalog])
