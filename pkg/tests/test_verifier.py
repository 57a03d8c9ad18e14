import json

import pytest

from zmsum.verifier import (
    FAMILIES,
    GroupSpec,
    build_corpus,
    build_group,
    evaluate_spec,
    report_record,
    run_corpus,
    verify_corollary,
    verify_gauss_identity,
    verify_lattice_bijection,
    verify_pgroup_phi_nonzero,
    verify_theorem,
)
from zmsum.zm import ZmParams, validate_zm_params


def spec(label: str) -> GroupSpec:
    family, _, params = label.partition(":")
    if family == "product":
        factors = tuple(int(p.split(":")[1].rstrip(")")) for p in params.split("x"))
        return GroupSpec("product", factors, label)
    return GroupSpec(family, tuple(int(v) for v in params.split(",")), label)


# -- corpus ------------------------------------------------------------------

def test_corpus_max_order_one_is_just_the_trivial_group():
    assert [s.label for s in build_corpus(1)] == ["cyclic:1"]


def test_corpus_zm_only_keeps_the_trivial_triple():
    labels = [s.label for s in build_corpus(8, families=["zm"])]
    assert "zm:3,2,2" in labels
    assert [f"zm:1,{k},0" for k in range(1, 9)] == [l for l in labels if l.startswith("zm:1,")]
    assert all(s.params[0] * s.params[1] <= 8 for s in build_corpus(8, families=["zm"]))


def test_corpus_covers_required_families():
    labels = {s.label for s in build_corpus(24)}
    assert {"cyclic:1", "cyclic:24", "symmetric:3", "symmetric:4", "alternating:4",
            "dicyclic:2", "dihedral:4", "zm:3,2,2",
            "product:(cyclic:2)x(cyclic:2)"} <= labels


def test_corpus_dicyclic_within_bound():
    labels = [s.label for s in build_corpus(8, families=["dicyclic"])]
    assert labels == ["dicyclic:2"]  # Q8; 4k <= 8 only for k = 2


def test_corpus_is_deterministic():
    assert build_corpus(32) == build_corpus(32)


def test_corpus_rejects_unknown_family():
    with pytest.raises(ValueError):
        build_corpus(8, families=["cyclic", "simple"])


def test_corpus_orders_within_bound():
    for s in build_corpus(20):
        assert build_group(s).order <= 20


def test_corpus_has_enough_strictness_witnesses():
    results = run_corpus(build_corpus(16))
    strict = [r for r in results if not r.report.equality]
    assert len(strict) >= 10
    for r in strict:
        assert not r.report.sylow_cyclic
        assert r.report.s_value > r.report.order


# -- single-spec checks ------------------------------------------------------

@pytest.mark.parametrize("label,order,s,equality,sylow", [
    ("zm:3,2,2", 6, 6, True, True),
    ("product:(cyclic:2)x(cyclic:2)", 4, 7, False, False),
    ("dicyclic:2", 8, 14, False, False),
    ("symmetric:4", 24, 42, False, False),
    ("alternating:4", 12, 15, False, False),
])
def test_verify_theorem_reports(label, order, s, equality, sylow):
    report = verify_theorem(spec(label))
    assert report.order == order
    assert report.s_value == s
    assert report.equality is equality
    assert report.sylow_cyclic is sylow
    assert report.consistent


def test_verify_theorem_zm_formula_agrees():
    report = verify_theorem(spec("zm:5,4,2"))
    assert report.formula_s == report.s_value == report.order == 20


def test_verify_theorem_non_zm_has_no_formula():
    assert verify_theorem(spec("cyclic:6")).formula_s is None


@pytest.mark.parametrize("label", ["dicyclic:2", "cyclic:1", "symmetric:4", "metacyclic:8,2,3"])
def test_verify_gauss_identity(label):
    assert verify_gauss_identity(spec(label))


@pytest.mark.parametrize("m,n,r", [(3, 2, 2), (1, 12, 0), (5, 4, 2)])
def test_verify_lattice_bijection(m, n, r):
    params = validate_zm_params(m, n, r)
    assert isinstance(params, ZmParams)
    assert verify_lattice_bijection(params)


def test_verify_corollary_cyclic_case():
    assert verify_corollary(spec("cyclic:12")) is True


def test_verify_corollary_strict_case():
    assert verify_corollary(spec("product:(cyclic:2)x(cyclic:2)")) is True


def test_verify_corollary_not_applicable_to_s3():
    # S3 realizes equality without being cyclic; only admissible because
    # S3 is not nilpotent, so the corollary must skip it
    report = verify_theorem(spec("symmetric:3"))
    assert report.equality
    assert verify_corollary(spec("symmetric:3")) is None


@pytest.mark.parametrize("label,expected", [
    ("dicyclic:2", True),
    ("product:(cyclic:2)x(cyclic:2)x(cyclic:2)", True),
    ("cyclic:6", None),
])
def test_verify_pgroup_phi_nonzero(label, expected):
    assert verify_pgroup_phi_nonzero(spec(label)) is expected


def test_evaluate_spec_collects_no_violations_on_good_groups():
    for label in ("zm:3,2,2", "dicyclic:2", "cyclic:9", "metacyclic:8,2,5"):
        result = evaluate_spec(spec(label))
        assert result.violations == ()
        assert result.gauss_ok


# -- corpus runs and records --------------------------------------------------

def test_run_corpus_sorted_and_parallel_invariant():
    specs = build_corpus(16)
    serial = run_corpus(specs)
    labels = [r.report.spec.label for r in serial]
    assert labels == sorted(labels)
    parallel = run_corpus(specs, parallel=True)
    assert [report_record(r.report) for r in parallel] == \
           [report_record(r.report) for r in serial]


def test_default_corpus_consistent():
    results = run_corpus(build_corpus(32))
    assert all(r.report.consistent for r in results)
    assert all(not r.violations for r in results)
    assert all(r.gauss_ok for r in results)


def test_report_record_schema_and_roundtrip():
    report = verify_theorem(spec("zm:5,4,2"))
    rec = report_record(report)
    assert list(rec) == ["label", "family", "order", "s", "phi", "exponent",
                         "sylow_cyclic", "equality", "consistent", "formula_s", "ms"]
    parsed = json.loads(json.dumps(rec))
    assert parsed["label"] == report.spec.label
    assert parsed["family"] == report.spec.family
    assert parsed["order"] == report.order
    assert parsed["s"] == report.s_value
    assert parsed["phi"] == report.phi_value
    assert parsed["exponent"] == report.exponent
    assert parsed["sylow_cyclic"] is report.sylow_cyclic
    assert parsed["equality"] is report.equality
    assert parsed["consistent"] is report.consistent
    assert parsed["formula_s"] == report.formula_s
    assert parsed["ms"] == 0  # timings are opt-in to keep runs byte-identical


def test_report_record_omits_formula_for_non_zm():
    rec = report_record(verify_theorem(spec("cyclic:6")))
    assert "formula_s" not in rec


def test_report_record_timings_opt_in():
    report = verify_theorem(spec("cyclic:6"))
    assert report.ms > 0
    assert report_record(report, timings=True)["ms"] == round(report.ms, 3)


def test_families_filter():
    for s in build_corpus(12, families=["dihedral", "dicyclic"]):
        assert s.family in ("dihedral", "dicyclic")
    assert set(FAMILIES) == {"cyclic", "dihedral", "dicyclic", "symmetric",
                             "alternating", "product", "metacyclic", "zm"}
