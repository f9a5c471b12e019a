import json

import pytest

from mfaho.cli import main
from mfaho.digraph import build_digraph
from mfaho.generate import gen_smd
from mfaho.harness import SolveReport, classify, solve, verify_report
from mfaho.instance_io import ParseError, parse_instance, serialize_instance


def test_parse_text_triangle():
    inst = parse_instance("3 3\n0 1\n1 2\n2 0\n")
    assert inst.digraph.n == 3 and inst.digraph.m == 3
    assert inst.warnings == []


def test_parse_json_digon():
    inst = parse_instance('{"n": 2, "arcs": [[0, 1], [1, 0]]}')
    assert inst.digraph.m == 2


def test_parse_out_of_range_names_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_instance("2 1\n0 2\n")


def test_parse_self_loop_is_error():
    with pytest.raises(ParseError, match="self-loop"):
        parse_instance("3 1\n1 1\n")


def test_parse_duplicate_arc_is_warning():
    inst = parse_instance("2 2\n0 1\n0 1\n")
    assert inst.digraph.m == 1
    assert any("duplicate" in w for w in inst.warnings)


def test_parse_comments_and_parts():
    text = "# a comment\n3 2\n0 1\n1 2\n part 0 2\npart 1\n"
    inst = parse_instance(text)
    assert inst.parts is not None
    assert inst.parts.parts[0] == frozenset({0, 2})


def test_roundtrip_text_and_json():
    d, parts = gen_smd((2, 2, 1), seed=5)
    for fmt in ("text", "json"):
        text = serialize_instance(d, parts, fmt=fmt)
        back = parse_instance(text)
        assert back.digraph == d
        assert back.parts is not None
        assert set(back.parts.parts) == set(parts.parts)


def test_classify_triangle():
    rep = classify(build_digraph(3, [(0, 1), (1, 2), (2, 0)]))
    assert rep.is_smd and rep.is_lsd and rep.strong and rep.semicomplete
    assert rep.partite_sizes == (1, 1, 1)
    assert rep.hc_majority is True


def test_classify_acyclic_path():
    rep = classify(build_digraph(3, [(0, 1), (1, 2)]))
    assert rep.is_smd and rep.is_lsd
    assert rep.partite_sizes == (2, 1)
    assert not rep.strong and not rep.two_connected


def test_classify_neither():
    # 0-3 and 1-2 nonadjacent but 2-3 adjacent: non-adjacency is not
    # transitive, and the out-neighbourhood of 0 is not semicomplete
    rep = classify(build_digraph(4, [(0, 1), (0, 2), (2, 3)]))
    assert not rep.is_smd and not rep.is_lsd


def test_classify_out_star():
    # an out-oriented star is complete bipartite underneath, hence an SMD;
    # the leaves make the centre's out-neighbourhood non-semicomplete
    rep = classify(build_digraph(4, [(0, 1), (0, 2), (0, 3)]))
    assert rep.is_smd and rep.partite_sizes == (3, 1)
    assert not rep.is_lsd


def test_solve_semicomplete_runs_both_and_agrees():
    d = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    rep = solve(d, "mfahoc")
    assert rep.detected_class == "both"
    assert rep.sigma == 3
    assert rep.branch.startswith("both:")


def test_solve_lsd_path_problem():
    d = build_digraph(4, [(0, 1), (1, 0), (1, 2), (0, 2), (2, 3)])
    assert classify(d).is_lsd and not classify(d).is_smd
    rep = solve(d, "mfahop")
    assert rep.sigma == 3 and rep.branch == "lsd-path"


def test_solve_none_case_reports_zero_for_lsd_cycle():
    # LSD but not SMD (2,3 adjacent while both miss 0), with 1 a cut vertex
    d = build_digraph(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    rep = solve(d, "mfahoc")
    assert rep.detected_class == "lsd"
    assert rep.status == "none"
    assert rep.sigma == 0


def test_verify_detects_tampered_sigma():
    d = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    rep = solve(d, "mfahoc")
    assert verify_report(d, rep) == []
    tampered = SolveReport.from_dict({**rep.to_dict(), "sigma": rep.sigma + 1})
    problems = verify_report(d, tampered)
    assert any("sigma mismatch" in p for p in problems)


def test_verify_names_nonadjacent_pair():
    d = build_digraph(3, [(0, 1), (1, 2)])
    rep = solve(d, "mfahop")
    bad = SolveReport.from_dict({**rep.to_dict(), "walk": [1, 0, 2], "forward_mask": None})
    problems = verify_report(d, bad)
    assert any("nonadjacent pair" in p for p in problems)


# --- command-line entry points ---------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_gen_solve_verify_pipeline(tmp_path, capsys):
    inst = tmp_path / "smd.dg"
    code, _, _ = run_cli(
        capsys, "gen", "smd", "--sizes", "2,2,1", "--seed", "7", "-o", str(inst)
    )
    assert code == 0
    code, out, err = run_cli(capsys, "solve", str(inst), "--problem", "mfahoc")
    assert code == 0
    report = tmp_path / "report.json"
    report.write_text(out)
    code, out, _ = run_cli(capsys, "verify", str(inst), str(report))
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_cli_gen_is_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "gen", "smd", "--sizes", "3,2", "--seed", "11")
    code2, out2, _ = run_cli(capsys, "gen", "smd", "--sizes", "3,2", "--seed", "11")
    assert code1 == code2 == 0
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "gen", "smd", "--sizes", "3,2", "--seed", "12")
    assert out3 != out1


def test_cli_gen_rejects_single_part(capsys):
    code, _, err = run_cli(capsys, "gen", "smd", "--sizes", "5", "--seed", "1")
    assert code == 3
    assert "2 partite sets" in err


def test_cli_gen_lsd_variants(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "gen", "lsd", "--components", "1,2,1", "--seed", "1")
    assert code == 0
    inst = parse_instance(out)
    assert classify(inst.digraph).is_lsd
    code, out, _ = run_cli(capsys, "gen", "lsd", "--strong", "--n", "8", "--seed", "2")
    assert code == 0
    rep = classify(parse_instance(out).digraph)
    assert rep.is_lsd and rep.strong


def test_cli_solve_no_structure_exits_2(tmp_path, capsys):
    inst = tmp_path / "p.dg"
    inst.write_text("3 2\n0 1\n1 2\n")
    code, out, _ = run_cli(capsys, "solve", str(inst), "--problem", "mfahoc")
    assert code == 2
    assert json.loads(out)["sigma"] == 0


def test_cli_solve_unsupported_class_exits_3(tmp_path, capsys):
    inst = tmp_path / "bad.dg"
    inst.write_text("4 3\n0 1\n0 2\n2 3\n")
    code, _, err = run_cli(capsys, "solve", str(inst), "--problem", "mfahoc")
    assert code == 3
    assert "neither" in err


def test_cli_malformed_input_exits_3_with_line(tmp_path, capsys):
    inst = tmp_path / "m.dg"
    inst.write_text("2 1\n0 7\n")
    code, _, err = run_cli(capsys, "solve", str(inst), "--problem", "mfahop")
    assert code == 3
    assert "line 2" in err


def test_cli_verify_fail_exits_4(tmp_path, capsys):
    inst = tmp_path / "t.dg"
    inst.write_text("3 3\n0 1\n1 2\n2 0\n")
    code, out, _ = run_cli(capsys, "solve", str(inst), "--problem", "mfahoc")
    payload = json.loads(out)
    payload["sigma"] = 1
    rep = tmp_path / "r.json"
    rep.write_text(json.dumps(payload))
    code, out, _ = run_cli(capsys, "verify", str(inst), str(rep))
    assert code == 4
    assert json.loads(out)["verified"] is False


def test_cli_oracle_subcommand(tmp_path, capsys):
    inst = tmp_path / "t.dg"
    inst.write_text("3 3\n0 1\n1 2\n2 0\n")
    code, out, _ = run_cli(capsys, "oracle", str(inst), "--problem", "mfahoc")
    assert code == 0
    assert json.loads(out)["value"] == 3


def test_cli_oracle_bound_exits_3(tmp_path, capsys):
    arcs = [(i, (i + 1) % 12) for i in range(12)]
    inst = tmp_path / "big.dg"
    inst.write_text(serialize_instance(build_digraph(12, arcs)))
    code, _, err = run_cli(capsys, "oracle", str(inst), "--problem", "mfahoc")
    assert code == 3
    assert "bound" in err


def test_cli_batch_mode(tmp_path, capsys):
    for seed in (1, 2):
        d, parts = gen_smd((2, 2), seed=seed)
        (tmp_path / f"s{seed}.dg").write_text(serialize_instance(d, parts))
    (tmp_path / "broken.dg").write_text("2 1\n0 9\n")
    code, out, err = run_cli(
        capsys, "solve", "--batch", str(tmp_path), "--problem", "mfahop"
    )
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 3
    assert sum(1 for rec in lines if "error" in rec) == 1
    assert code == 3  # the broken file dominates the exit code


def test_cli_stdin_instance(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("3 3\n0 1\n1 2\n2 0\n"))
    code, out, _ = run_cli(capsys, "solve", "-", "--problem", "mfahoc")
    assert code == 0
    assert json.loads(out)["sigma"] == 3


def test_cli_time_limit_generous_passes(tmp_path, capsys):
    inst = tmp_path / "t.dg"
    inst.write_text("3 3\n0 1\n1 2\n2 0\n")
    code, out, _ = run_cli(
        capsys, "solve", str(inst), "--problem", "mfahoc", "--time-limit", "30"
    )
    assert code == 0


def test_cli_time_limit_expiry_exits_3(tmp_path, capsys, monkeypatch):
    import mfaho.cli as cli_mod

    inst = tmp_path / "t.dg"
    inst.write_text("3 3\n0 1\n1 2\n2 0\n")

    def stall(*args, **kwargs):
        import time as _time

        _time.sleep(5)

    monkeypatch.setattr(cli_mod, "_solve_one", stall)
    code, _, err = run_cli(
        capsys, "solve", str(inst), "--problem", "mfahoc", "--time-limit", "0.05"
    )
    assert code == 3
    assert "time limit" in err
