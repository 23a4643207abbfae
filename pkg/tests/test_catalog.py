import json
from dataclasses import replace
from pathlib import Path

import pytest

from cubicell.catalog import (
    EXPECTED_G_LINE_COUNTS,
    CatalogError,
    dump_catalog,
    exceptional_chain_profile,
    load_catalog,
    verify_catalog,
    verify_surface,
)
from cubicell.lattice import DivClass, blowup_class
from cubicell.poly import LineP3, PointP3, parse_poly


def cls(a, *b):
    return blowup_class(a, b)


# Retyped from the (-2)-class table, independently of the catalog file.
TABLE_NEG2 = {
    "G1": {cls(1, 1, 1, 1, 0, 0, 0), cls(0, -1, 1, 0, 0, 0, 0), cls(0, 0, -1, 1, 0, 0, 0),
           cls(0, 0, 0, -1, 1, 0, 0), cls(0, 0, 0, 0, -1, 1, 0), cls(0, 0, 0, 0, 0, -1, 1)},
    "G2": {cls(1, 1, 1, 1, 0, 0, 0), cls(0, -1, 1, 0, 0, 0, 0), cls(0, 0, -1, 1, 0, 0, 0),
           cls(1, 1, 0, 0, 0, 1, 1), cls(0, 0, 0, -1, 1, 0, 0), cls(0, 0, 0, 0, 0, -1, 1)},
    "G4": {cls(1, 1, 1, 1, 0, 0, 0), cls(0, -1, 1, 0, 0, 0, 0), cls(0, 0, -1, 1, 0, 0, 0),
           cls(1, 1, 0, 0, 0, 1, 1), cls(0, 0, 0, -1, 1, 0, 0)},
    "G5": {cls(1, 1, 1, 1, 0, 0, 0), cls(0, -1, 1, 0, 0, 0, 0), cls(0, 0, -1, 1, 0, 0, 0),
           cls(0, 0, 0, -1, 1, 0, 0), cls(0, 0, 0, 0, -1, 1, 0)},
}


class TestLoading:
    def test_inventory(self, catalog):
        ids = [s.id for s in catalog]
        assert ids[:15] == [f"G{i}" for i in range(1, 16)]
        assert ids[15:] == ["R1", "R2", "R3", "R4", "ELLIPTIC_CONE"]

    def test_row_one(self, catalog):
        g1 = catalog["G1"]
        assert g1.equation == parse_poly("x*y^2 + y*t^2 + z^3")
        assert len(g1.singular_points) == 1
        point, label = g1.singular_points[0]
        assert point == PointP3((1, 0, 0, 0))
        assert label == "E6"
        assert len(g1.lines) == 1
        assert g1.lines[0] == LineP3(parse_poly("y"), parse_poly("z"))

    def test_row_fifteen(self, catalog):
        g15 = catalog["G15"]
        assert len(g15.singular_points) == 4
        assert len(g15.lines) == 9

    def test_non_normal_cone(self, catalog):
        r1 = catalog["R1"]
        assert r1.equation == parse_poly("x^2*z + y^3")
        assert not r1.normal
        assert r1.cone
        assert r1.conductor_line_index == 0

    def test_line_counts(self, catalog):
        for i, expected in enumerate(EXPECTED_G_LINE_COUNTS, start=1):
            assert len(catalog[f"G{i}"].lines) == expected

    def test_g13_parameter_override(self):
        default = load_catalog()
        g13 = default["G13"]
        assert g13.family is not None
        other = load_catalog(g13_parameter=(2, 5))
        assert other["G13"].equation != g13.equation
        # Lines and singular points hold for every member of the family.
        assert verify_surface(other["G13"]).passed

    def test_g13_zero_parameter_rejected(self):
        with pytest.raises(CatalogError):
            load_catalog(g13_parameter=(0, 0))

    def test_unknown_surface(self, catalog):
        with pytest.raises(CatalogError):
            catalog["G99"]

    def test_env_override(self, tmp_path, monkeypatch):
        target = tmp_path / "catalog.json"
        target.write_text(dump_catalog(load_catalog()), encoding="utf-8")
        monkeypatch.setenv("CLV_CATALOG", str(target))
        assert load_catalog()["G1"].id == "G1"
        target.write_text("{}", encoding="utf-8")
        with pytest.raises(CatalogError):
            load_catalog()

    def test_schema_violation(self, tmp_path):
        payload = json.loads(dump_catalog(load_catalog()))
        payload["surfaces"][0]["id"] = "bogus name"
        target = tmp_path / "broken.json"
        target.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(CatalogError, match="schema"):
            load_catalog(path=target)


class TestVerification:
    def test_full_catalog_passes(self, catalog):
        report = verify_catalog(catalog)
        assert report.passed
        totals = report.totals()
        assert totals["line_checks_G"] == 75
        assert totals["singular_point_checks_G"] == 30
        assert totals["neg2_checks"] == 22

    def test_flagged_rows_carry_notes(self, catalog):
        report = verify_catalog(catalog)
        noted = {s.surface_id: s.notes for s in report.surfaces if s.notes}
        assert "G5" in noted and "G14" in noted

    def test_roundtrip_bytes(self, catalog):
        shipped = (
            Path(__file__).resolve().parents[1]
            / "src" / "cubicell" / "data" / "catalog.json"
        ).read_text("utf-8")
        assert dump_catalog(catalog) == shipped

    def test_table_neg2_exact(self, catalog):
        for gid, expected in TABLE_NEG2.items():
            surface = catalog[gid]
            assert set(surface.neg2_classes) == expected
            lat = surface.lattice
            for c in expected:
                assert lat.selfint(c) == -2
                assert lat.pair(c, -lat.canonical_class) == 0

    def test_g5_neg2_spot_value(self, catalog):
        lat = catalog["G5"].lattice
        c = cls(1, 1, 1, 1, 0, 0, 0)
        assert lat.selfint(c) == -2
        assert lat.degree(c) == 0


class TestNegativeControls:
    def test_extra_line_is_caught(self, catalog):
        g1 = catalog["G1"]
        bogus = LineP3(parse_poly("y"), parse_poly("t"))
        mutated = replace(g1, lines=g1.lines + (bogus,))
        report = verify_surface(mutated)
        assert not report.passed
        kinds = {f.kind for f in report.failures}
        assert "line-on-surface" in kinds
        assert "line-count" in kinds

    def test_corrupted_neg2_is_caught(self, catalog):
        g5 = catalog["G5"]
        bad = g5.neg2_classes[:-1] + (cls(1, 1, 0, 0, 0, 0, 0),)
        mutated = replace(g5, neg2_classes=bad)
        report = verify_surface(mutated)
        assert any(f.kind.startswith("neg2") for f in report.failures)

    def test_corrupted_singular_point_is_caught(self, catalog):
        g1 = catalog["G1"]
        mutated = replace(g1, singular_points=((PointP3((0, 1, 0, 0)), "E6"),))
        report = verify_surface(mutated)
        assert any(f.kind == "singular-point" for f in report.failures)

    def test_duplicate_line_is_caught(self, catalog):
        g2 = catalog["G2"]
        mutated = replace(g2, lines=g2.lines + (g2.lines[0],))
        report = verify_surface(mutated)
        assert any(f.kind == "line-pair" for f in report.failures)

    def test_corrupted_line_class_is_caught(self, catalog):
        g5 = catalog["G5"]
        # Claim the line through the singular point misses it.
        swapped = ((1, DivClass((0, 0, 0, 0, 0, 0, 1))),)
        mutated = replace(g5, line_classes=swapped)
        report = verify_surface(mutated)
        assert any(f.kind == "line-class-incidence" for f in report.failures)

    def test_broken_equation_is_caught(self, catalog):
        g1 = catalog["G1"]
        mutated = replace(g1, equation=parse_poly("x^2 + y^2"))
        report = verify_surface(mutated)
        assert any(f.kind == "equation" for f in report.failures)

    def test_verifying_load_rejects_broken_file(self, tmp_path):
        payload = json.loads(dump_catalog(load_catalog()))
        for entry in payload["surfaces"]:
            if entry["id"] == "G1":
                entry["lines"].append(["y", "t"])
        target = tmp_path / "broken.json"
        target.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(CatalogError, match="G1"):
            load_catalog(path=target)
        # The same file loads for inspection without verification.
        broken = load_catalog(path=target, verify=False)
        assert not verify_catalog(broken).passed


class TestChainProfiles:
    def test_g1_profiles(self, catalog):
        g1 = catalog["G1"]
        m, hits = exceptional_chain_profile(g1, cls(0, 0, 0, 0, 0, 0, -1))
        assert m == 1
        hit_classes = [c for c, value in hits if value == 1]
        assert hit_classes == [cls(0, 0, 0, 0, 0, -1, 1)]
        m, _ = exceptional_chain_profile(g1, cls(1, 1, 0, 0, 0, 0, 0))
        assert m == 1

    def test_g2_profile(self, catalog):
        m, _ = exceptional_chain_profile(catalog["G2"], cls(2, 1, 1, 0, 0, 1, 0))
        assert m == 1

    def test_no_chain_data(self, catalog):
        with pytest.raises(CatalogError):
            exceptional_chain_profile(catalog["G3"], cls(1, 0, 0, 0, 0, 0, 0))
