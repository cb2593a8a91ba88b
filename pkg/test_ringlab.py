"""
Tests for the ringlab command line: exit codes, reports and output files.
"""

import json

from ringlab import build_parser, run_command

BROKEN_FILE = """ring broken
order 2
one 1
add:
0 1
1 0
mul:
0 0
0 0
end
"""


def test_parser_requires_a_subcommand():
    code, _ = run_command([])
    assert code == 2


def test_unknown_flag_is_a_usage_error():
    code, report = run_command(["info", "Zn(4)", "--frobnicate"])
    assert code == 2
    assert report == {"error": "usage"}


def test_global_options_precede_the_subcommand():
    args = build_parser().parse_args(["--brute-cap", "8", "maxden", "Zn(6)", "--method", "ideals"])
    assert args.brute_cap == 8
    assert args.method == "ideals"


def test_info_on_triangular():
    code, report = run_command(["info", "Tri(2, Zn(2))"])
    assert code == 0
    assert report["n"] == [0, 2]
    assert report["nu"] == 1
    assert report["s"] == 2
    assert report["C"] == [5, 7]
    assert report["block_orders"] == [2, 2]


def test_info_rejects_the_zero_ring():
    code, report = run_command(["info", "Zn(1)"])
    assert code == 2
    assert report["error"] == "ParseError"


def test_radical_of_z8():
    code, report = run_command(["radical", "Zn(8)"])
    assert code == 0
    assert report["radical"] == [0, 2, 4, 6]
    assert report["nu"] == 2
    assert report["oracle_agrees"]


def test_maxden_of_z6():
    code, report = run_command(["maxden", "Zn(6)"])
    assert code == 0
    assert report["count"] == 2
    assert report["localization_radical"] == [0]


def test_brute_cap_from_the_command_line():
    code, report = run_command(["--brute-cap", "4", "maxden", "Zn(6)", "--method", "brute"])
    assert code == 2
    assert report["error"] == "RingResourceError"


def test_localize_z6():
    code, report = run_command(["localize", "Zn(6)", "--set", "1,4"])
    assert code == 0
    assert report["localization"]["order"] == 3
    assert report["ass"] == [0, 3]
    assert report["saturation"] == [1, 2, 4, 5]


def test_localize_outside_denominator_sets():
    code, report = run_command(["localize", "Tri(2, Zn(2))", "--set", "4,6"])
    assert code == 2
    assert report["witness"] == [2, 4]


def test_localize_zero_absorbed():
    code, report = run_command(["localize", "Zn(6)", "--set", "3,4"])
    assert code == 1
    assert report["zero_absorbed"]


def test_localize_bad_set():
    code, _ = run_command(["localize", "Zn(6)", "--set", "one"])
    assert code == 2


def test_criteria_1_2_on_z4():
    code, report = run_command(["criteria", "Zn(4)", "--which=1.2"])
    assert code == 0
    assert len(report["criteria"]["1.2"]["conditions"]) == 6


def test_all_criteria_on_triangular():
    code, report = run_command(["criteria", "Tri(2, Zn(2))"])
    assert sorted(report["criteria"]) == ["1.1", "1.2", "1.3", "2.4", "2.5", "4.2"]
    assert report["criteria"]["1.1"]["skipped"]
    assert code == 0


def test_gr_of_z4():
    code, report = run_command(["gr", "Zn(4)"])
    assert code == 0
    assert report["characteristic"] == 2
    assert report["layer_sizes"] == [2, 2]


def test_export_to_file(tmp_path):
    target = tmp_path / "z3.ring"
    code, _ = run_command(["--out", str(target), "export", "Zn(3)"])
    assert code == 0
    assert target.read_text(encoding="utf-8").startswith("ring Zn(3)")


def test_validate_accepts_a_ring_file(tmp_path):
    target = tmp_path / "z3.ring"
    run_command(["--out", str(target), "export", "Zn(3)"])
    code, report = run_command(["validate", str(target)])
    assert code == 0
    assert report["valid"]


def test_validate_reports_broken_axioms(tmp_path):
    path = tmp_path / "broken.ring"
    path.write_text(BROKEN_FILE, encoding="utf-8")
    code, report = run_command(["validate", str(path)])
    assert code == 1
    assert not report["valid"]
    assert report["report"]["violations"]


def test_census_from_the_command_line(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"generators": [{"expr": "Zn({n})", "n_values": [2, 3, 4]}],
                                "suites": ["axioms", "thm-1.2"]}), encoding="utf-8")
    chart = tmp_path / "census.png"
    code, report = run_command(["census", "--spec", str(spec), "--plot", str(chart)])
    assert code == 0
    assert report["verdict"] == "ok"
    assert report["ring_count"] == 3
    assert chart.exists()


def test_census_spec_errors(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"generators": [], "suites": ["axioms"]}), encoding="utf-8")
    code, _ = run_command(["census", "--spec", str(spec)])
    assert code == 2
    code, _ = run_command(["census", "--spec", str(tmp_path / "missing.json")])
    assert code == 2


def test_output_options_after_the_subcommand(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"generators": [{"expr": "Zn(6)"}], "suites": ["axioms"]}), encoding="utf-8")
    target = tmp_path / "census.json"
    code, report = run_command(["census", "--spec", str(spec), "--out", str(target), "--verbose"])
    assert code == 0
    assert json.loads(target.read_text(encoding="utf-8"))["verdict"] == report["verdict"] == "ok"


def test_output_option_positions():
    parser = build_parser()
    assert parser.parse_args(["--out", "a.json", "info", "Zn(4)"]).out == "a.json"
    assert parser.parse_args(["info", "Zn(4)", "--out", "b.json"]).out == "b.json"
    plain = parser.parse_args(["info", "Zn(4)"])
    assert plain.out is None and plain.verbose is False
