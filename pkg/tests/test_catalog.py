"""The identity registry and its exact verification runner."""

import pytest

from qcfrac import catalog
from qcfrac.catalog import IdentityEntry, IdentityReport
from qcfrac.errors import UnknownIdentity
from qcfrac.families import DEFAULT_POINT, ParamPoint, sample_params
from qcfrac.rationals import rational
from qcfrac.series import QSeries


def first_valid_point(entry, seed=0):
    for p in sample_params(seed, 64):
        if entry.constraint_failure(p) is None:
            return p
    raise AssertionError(f"no valid point for {entry.id}")


def test_registry_size_and_uniqueness():
    entries = catalog.register_all()
    assert len(entries) >= 27
    ids = [e.id for e in entries]
    assert len(set(ids)) == len(ids)
    assert catalog.entry_ids() == ids


def test_lookup():
    entry = catalog.lookup("RR_CF")
    assert entry.kind == "cf_equals_series_ratio"
    with pytest.raises(UnknownIdentity):
        catalog.lookup("NOT_A_THING")


def test_every_kind_is_known():
    kinds = {
        "cf_equals_series_ratio",
        "cf_equals_product_ratio",
        "series_transformation",
        "product_identity",
        "recurrence",
    }
    for entry in catalog.register_all():
        assert entry.kind in kinds
        assert entry.source  # each identity carries a literature pointer


@pytest.mark.parametrize("entry", catalog.register_all(), ids=lambda e: e.id)
def test_entry_passes_at_sampled_point(entry):
    point = first_valid_point(entry)
    report = catalog.verify(entry.id, point)
    assert report.status == "pass", (report.reason, report.first_mismatch_power)
    assert report.order == entry.default_order
    assert report.depth == entry.default_depth


def test_verify_uses_entry_defaults():
    report = catalog.verify("RR_CF", ParamPoint(1, 1, 1))
    assert (report.order, report.depth) == (40, 8)


def test_verify_known_points():
    r = catalog.verify("RR_CF", ParamPoint(1, rational(1, 2), rational(1, 3)),
                       40, 10)
    assert r.status == "pass"
    r = catalog.verify("PROD_RATIO", DEFAULT_POINT, 40, 12)
    assert r.status == "pass"


def test_constraint_violation_is_skipped_not_failed():
    r = catalog.verify("RR_CF", ParamPoint(0, 1, 1))
    assert r.status == "skipped"
    assert "a = 0" in r.reason
    assert r.first_mismatch_power is None


def test_cf_failure_reports_finite_mismatch():
    entry = catalog.perturbed_entry("G_CFRAC_g2")
    point = first_valid_point(entry)
    report = catalog.verify_entry(entry, point)
    assert report.status == "fail"
    assert isinstance(report.first_mismatch_power, int)
    assert report.mismatch_rows  # coefficient context for the dump
    power, lhs, rhs = report.mismatch_rows[0]
    assert power == report.first_mismatch_power
    assert lhs != rhs


def test_perturbed_rejects_non_cf():
    with pytest.raises(ValueError):
        catalog.perturbed_entry("POCH_IDS")


def test_reduction_links_registered():
    pairs = {(link.source, link.target) for link in catalog.REDUCTION_LINKS}
    assert pairs == {
        ("RR_SPECIAL", "RR_CF"),
        ("G_CFRAC_g2", "RR_CF"),
        ("RAMANUJAN_G1", "G_CFRAC_g1"),
        ("HIRSCHHORN", "G_CFRAC_g3"),
        ("HEINE_CF", "G_CFRAC_g2"),
    }


@pytest.mark.parametrize("src,tgt", [
    ("RR_SPECIAL", "RR_CF"),
    ("G_CFRAC_g2", "RR_CF"),
    ("RAMANUJAN_G1", "G_CFRAC_g1"),
    ("HIRSCHHORN", "G_CFRAC_g3"),
    ("HEINE_CF", "G_CFRAC_g2"),
])
def test_check_reduction(src, tgt):
    assert catalog.check_reduction(src, tgt)


def test_check_reduction_substitution_must_match():
    assert catalog.check_reduction("RR_SPECIAL", "RR_CF", {"a": "1"})
    with pytest.raises(ValueError):
        catalog.check_reduction("RR_SPECIAL", "RR_CF", {"a": "2"})
    with pytest.raises(UnknownIdentity):
        catalog.check_reduction("RR_CF", "RR_SPECIAL")


def test_verify_all_is_clean_and_deterministic():
    reports, summary = catalog.verify_all(seed=2, points=1, order=30, depth=6)
    assert summary["fail"] == 0
    assert summary["suspected_cancellation"] == []
    assert summary["pass"] == sum(r.status == "pass" for r in reports)
    # entries plus the five reduction links, all sorted by id
    assert [r.id for r in reports] == sorted(r.id for r in reports)
    again, _ = catalog.verify_all(seed=2, points=1, order=30, depth=6)
    assert again == reports  # elapsed is excluded from comparison


def test_verify_all_counts_points_per_entry():
    reports, summary = catalog.verify_all(seed=0, points=2, order=24, depth=5)
    checked = [r for r in reports if "->" not in r.id and r.status != "skipped"]
    assert len(checked) == 2 * len(catalog.register_all())
    links = [r for r in reports if "->" in r.id]
    assert len(links) == len(catalog.REDUCTION_LINKS)
    assert all(r.status == "pass" for r in links)


def test_escalation_on_mixed_verdicts():
    """A verdict that flips between sampled points triggers five extra
    draws, so an accidental zero cannot masquerade as a clean pass."""

    def pairs(p, order):
        rhs = QSeries.one(order)
        if p.a > 0:
            rhs = QSeries.from_monomials([(1, 0), (1, 3)], order)
        return [("sign-dependent", QSeries.one(order), rhs)]

    synthetic = IdentityEntry(
        id="SYNTHETIC", kind="series_transformation",
        source="test fixture", pairs=pairs,
    )
    reports = catalog.run_entry(synthetic, seed=0, points=3, order=12, depth=4)
    statuses = {r.status for r in reports}
    assert statuses == {"pass", "fail"}
    assert sum(r.escalated for r in reports) == 5


def test_json_round_trip():
    reports, summary = catalog.verify_all(seed=0, points=1, order=24, depth=5)
    run = {"seed": 0, "points": 1, "order": 24, "depth": 5}
    text = catalog.reports_to_json(reports, summary, run)
    run2, reports2, summary2 = catalog.reports_from_json(text)
    assert run2 == run
    assert summary2 == summary
    assert reports2 == reports
    assert catalog.reports_to_json(reports2, summary2, run2) == text


def test_failure_table_formats():
    clean = catalog.failure_table([])
    assert clean == "# all pass\n"
    bad = catalog.verify_entry(catalog.perturbed_entry("RR_CF"),
                               ParamPoint(1, 1, 1))
    table = catalog.failure_table([bad])
    lines = table.splitlines()
    assert lines[0].startswith("# RR_CF @ a=1")
    assert lines[1] == "power\tlhs\trhs"
    assert "\t" in lines[2]


def test_report_equality_ignores_timing():
    a = IdentityReport("X", None, 10, 2, "pass", elapsed=1.0)
    b = IdentityReport("X", None, 10, 2, "pass", elapsed=2.0)
    assert a == b
