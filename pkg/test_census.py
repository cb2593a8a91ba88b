"""
Tests for census specs, suite execution and report aggregation.
"""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

import census
from census import CensusSpec, GeneratorSpec, fingerprint, load_census_spec, plot_census, run_census

DEFAULT_SPEC = Path(__file__).parent / "census_specs" / "default.json"


def _spec(**fields) -> CensusSpec:
    return CensusSpec.model_validate(fields)


def test_generator_expansion():
    assert GeneratorSpec(expr="Zn({n})", n_values=[2, 3]).expand() == ["Zn(2)", "Zn(3)"]
    assert GeneratorSpec(expr="Tri(2, Zn({n}))", n_min=2, n_max=3).expand() == ["Tri(2, Zn(2))", "Tri(2, Zn(3))"]
    assert GeneratorSpec(expr="Zn(6)").expand() == ["Zn(6)"]


def test_spec_validation():
    with pytest.raises(ValidationError):
        _spec(generators=[])
    with pytest.raises(ValidationError):
        _spec(generators=[{"expr": "Zn(6)"}], suites=["thm-9.9"])
    with pytest.raises(ValidationError):
        _spec(generators=[{"expr": "Zn({n})"}])
    with pytest.raises(ValidationError):
        _spec(generators=[{"expr": "Zn(6)"}], brute_cap=0)


def test_spec_fills_caps_and_deduplicates():
    spec = _spec(generators=[{"expr": "Zn({n})", "n_values": [2, 3]}, {"expr": "Zn(3)"}])
    assert spec.sources() == ["Zn(2)", "Zn(3)"]
    assert spec.brute_cap == 16
    assert spec.raw_cap == 10


def test_fingerprint(z6):
    assert fingerprint(z6, "Zn(6)") == {"order": 6, "characteristic": 6, "units": 2, "blocks": 2,
                                        "source": "Zn(6)"}


@pytest.mark.slow
def test_cyclic_family_census():
    spec = _spec(generators=[{"expr": "Zn({n})", "n_min": 2, "n_max": 16}], suites=["thm-1.8", "radical-oracle"])
    report = run_census(spec)
    assert report.verdict == "ok"
    assert len(report.rings) == 15
    assert report.counterexamples == []


def test_triangular_family_census():
    spec = _spec(generators=[{"expr": "Tri(2, Zn({n}))", "n_values": [2]}], suites=["maxden-oracle", "thm-1.4"])
    assert run_census(spec).verdict == "ok"


@pytest.mark.slow
def test_triangular_family_with_raised_cap():
    spec = _spec(generators=[{"expr": "Tri(2, Zn({n}))", "n_values": [2, 3]}], suites=["maxden-oracle"],
                 brute_cap=27)
    report = run_census(spec)
    assert report.verdict == "ok"
    assert len(report.rings) == 2


def test_brute_cap_records_a_skip():
    spec = _spec(generators=[{"expr": "Zn(6)"}], suites=["maxden-oracle"], brute_cap=4)
    report = run_census(spec)
    assert report.verdict == "ok-with-skips"
    assert report.ok
    assert report.skips[0]["suite"] == "maxden-oracle"


def test_oversized_ring_is_skipped():
    spec = _spec(generators=[{"expr": "Mat(2, Zn(5))"}], suites=["axioms"])
    report = run_census(spec)
    assert report.verdict == "ok-with-skips"
    assert report.skips[0]["suite"] is None


def test_failing_suite_becomes_counterexample(monkeypatch):
    monkeypatch.setitem(census.SUITES, "axioms", lambda R, spec: [("forced failure", (1,))])
    report = run_census(_spec(generators=[{"expr": "Zn(4)"}], suites=["axioms"]))
    assert report.verdict == "fail"
    assert report.counterexamples == [{"source": "Zn(4)", "suite": "axioms", "label": "forced failure",
                                       "witness": [1]}]


def test_report_is_ordered_by_fingerprint():
    spec = _spec(generators=[{"expr": "Zn(5)"}, {"expr": "Tri(2, Zn(2))"}, {"expr": "Zn(4)"}],
                 suites=["axioms", "thm-2.4", "cor-3.1", "gr"])
    report = run_census(spec)
    assert [entry["fingerprint"]["source"] for entry in report.rings] == ["Zn(4)", "Zn(5)", "Tri(2, Zn(2))"]
    assert json.loads(report.to_json())["verdict"] == "ok"


@pytest.mark.slow
def test_report_does_not_depend_on_jobs():
    fields = {"generators": [{"expr": "Zn({n})", "n_min": 2, "n_max": 9}, {"expr": "Prod(Zn(2), Zn(2))"}],
              "suites": ["radical-oracle", "thm-4.2", "prop-4.8"]}
    serial = run_census(_spec(**fields, jobs=1)).to_json()
    assert run_census(_spec(**fields, jobs=1)).to_json() == serial
    assert run_census(_spec(**fields, jobs=2)).to_json() == serial


@pytest.mark.slow
def test_every_suite_on_small_rings():
    spec = _spec(generators=[{"expr": "Zn({n})", "n_values": [4, 6, 8]}, {"expr": "Tri(2, Zn(2))"},
                             {"expr": "Prod(Zn(2), Zn(2))"}, {"expr": "Quot(Zn(8), [4])"}],
                 suites=sorted(census.SUITES))
    report = run_census(spec)
    assert report.counterexamples == []


def test_plot_census(tmp_path):
    report = run_census(_spec(generators=[{"expr": "Zn(4)"}, {"expr": "Zn(6)"}], suites=["axioms"]))
    target = tmp_path / "census.png"
    plot_census(report, str(target))
    assert target.exists() and target.stat().st_size > 0


@pytest.mark.slow
def test_default_census_passes_every_suite():
    spec = load_census_spec(str(DEFAULT_SPEC))
    assert set(spec.suites) == set(census.SUITES)
    report = run_census(spec)
    assert len(report.rings) >= 40
    assert any(source.startswith("Prod(Zn(4)") for source in spec.sources())
    assert any(source.startswith("Quot(") for source in spec.sources())
    assert report.counterexamples == []
    assert report.skips == []
    assert report.verdict == "ok"
