import json

import pytest

from src.cli import RunConfig, main, resolve_graph
from src.corpus import complete_graph
from src.errors import ConfigError


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_homology_both_models_agree(capsys):
    code, report = run_json(capsys, "homology", "--graph", "K3", "--model", "both", "--no-timing")
    assert code == 0
    assert report["ok"] is True
    assert report["diff"] == []
    assert report["models"]["full"]["states"] == 8
    assert report["models"]["nbc"]["states"] == 6
    assert report["models"]["full"]["groups"] == report["models"]["nbc"]["groups"]
    assert "build_seconds" not in report["models"]["full"]


def test_homology_k4_state_counts(capsys):
    code, report = run_json(capsys, "homology", "--graph", "K4", "--model", "both", "--no-timing")
    assert code == 0
    assert (report["models"]["full"]["states"], report["models"]["nbc"]["states"]) == (64, 24)


def test_homology_k2_groups(capsys):
    code, report = run_json(capsys, "homology", "--graph", "K2", "--model", "nbc", "--no-timing")
    assert code == 0
    entry = report["models"]["nbc"]
    assert entry["groups"] == [
        {"i": 0, "j": 1, "free": 1, "torsion": []},
        {"i": 0, "j": 2, "free": 1, "torsion": []},
    ]
    assert entry["support"] == [0, 0, 1, 2]
    assert entry["poincare"] == "q**2 + q"
    assert entry["torsion"] == []
    assert "diff" not in report


def test_output_is_deterministic_without_timing(capsys):
    argv = ["homology", "--graph", "diamond", "--algebra", "am:3", "--no-timing"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_tree_complexes_coincide(capsys):
    code, report = run_json(capsys, "homology", "--graph", "P4", "--model", "both", "--no-timing")
    assert code == 0
    assert report["models"]["full"]["states"] == report["models"]["nbc"]["states"] == 8


def test_homology_dump(capsys, tmp_path):
    target = tmp_path / "dump.json"
    main(["homology", "--graph", "K2", "--model", "both", "--no-timing", "--dump", str(target)])
    capsys.readouterr()
    dump = json.loads(target.read_text())
    assert set(dump) == {"full", "nbc"}
    assert dump["full"]["model"] == "full"


def test_info(capsys):
    code, report = run_json(capsys, "info", "--graph", "K4")
    assert code == 0
    assert report["states"] == 64
    assert report["nbc_states"] == 24
    assert report["bc_states"] == 40
    assert report["chromatic"] == [0, -6, 11, -6, 1]


def test_nbc_and_matching(capsys):
    _, nbc = run_json(capsys, "nbc", "--graph", "C4")
    assert nbc["nbc_count"] == 14
    assert nbc["full_count"] == 16

    _, matching = run_json(capsys, "matching", "--graph", "K3")
    assert matching["pairs"] == [{"lower": [0, 1], "upper": [0, 1, 2], "edge": 2}]
    assert [row["edges"] for row in matching["linear_extension"]] == [[0, 1], [0, 1, 2]]


def test_chromatic_and_csf(capsys):
    code, report = run_json(capsys, "chromatic", "--graph", "K3")
    assert code == 0
    assert report["coefficients"]["delcon"] == [0, 2, -3, 1]
    assert report["ok"] is True

    code, report = run_json(capsys, "csf", "--graph", "K3")
    assert code == 0
    assert report["nbc"] == {"1,1,1": 1, "2,1": -3, "3": 2}


def test_verify_edgeless_graph(capsys):
    code, report = run_json(capsys, "verify", "--graph", "E3", "--verify", "paranoid")
    assert code == 0
    assert report["ok"] is True


def test_verify_summary_lines(capsys):
    code = main(["verify", "--graph", "K3", "--format", "tsv"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    total = len(out) - 1
    assert out[-1] == f"{total}/{total} properties hold"
    assert all(line.startswith("pass") for line in out[:-1])


def test_bench(capsys):
    code, report = run_json(capsys, "bench", "--graph", "K3", "--no-timing")
    assert code == 0
    row = report["bench"][0]
    assert (row["full_states"], row["nbc_states"]) == (8, 6)
    assert "speedup" not in row

    _, report = run_json(capsys, "bench", "--graph", "K2")
    assert report["bench"][0]["full_states"] == report["bench"][0]["nbc_states"] == 2
    assert "speedup" in report["bench"][0]


@pytest.mark.slow
def test_bench_k5(capsys):
    _, report = run_json(capsys, "bench", "--graph", "K5")
    row = report["bench"][0]
    assert (row["full_states"], row["nbc_states"]) == (1024, 120)
    assert row["speedup"] > 0


def test_bench_c8_state_counts(capsys):
    _, report = run_json(capsys, "bench", "--graph", "C8", "--algebra", "am:1", "--no-timing")
    assert (report["bench"][0]["full_states"], report["bench"][0]["nbc_states"]) == (256, 254)


def test_tsv_output(capsys):
    code = main(["homology", "--graph", "K2", "--format", "tsv", "--no-timing"])
    out = capsys.readouterr().out
    assert code == 0
    assert "# models.full.groups" in out
    assert "algebra\tA_2" in out


def test_bad_graph_file_exits_2(capsys, tmp_path):
    path = tmp_path / "loop.txt"
    path.write_text("n 3\n0 1\n2 2\n")
    assert main(["homology", "--graph", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_unknown_graph_exits_2(capsys):
    assert main(["info", "--graph", "nonsense"]) == 2


def test_missing_graph_exits_2(capsys):
    assert main(["homology"]) == 2


def test_invalid_choice_is_rejected_by_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["homology", "--graph", "K3", "--model", "sideways"])
    assert info.value.code == 2


def test_resolve_graph(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text("n 3\n0 1\n0 2\n1 2\n")
    assert resolve_graph(str(path)) == complete_graph(3)
    assert resolve_graph("K3") == complete_graph(3)
    assert resolve_graph("bowtie").n_edges == 6


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(command="homology", graph="K3", model="sideways")
    with pytest.raises(ConfigError):
        RunConfig(command="frobnicate", graph="K3")
    assert RunConfig(command="verify", corpus=True).graph is None


@pytest.mark.parametrize("name", ["C0", "C1", "C2"])
def test_short_cycle_name_exits_2(capsys, name):
    assert main(["info", "--graph", name]) == 2
    assert "at least 3 vertices" in capsys.readouterr().err


def test_algebra_directory_exits_2(capsys, tmp_path):
    assert main(["homology", "--graph", "K2", "--algebra", str(tmp_path)]) == 2
    assert "cannot read" in capsys.readouterr().err
