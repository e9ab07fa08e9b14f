#!/usr/bin/env python

import json
import os
import pytest
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.append(parent_dir)

from coverlattice import (  # noqa: E402
    global_vars,
    graph,
    lattice,
    main,
    series,
    toric,
)


@pytest.fixture(autouse=True)
def clean_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("COVERLATTICE_THREADS", raising=False)
    monkeypatch.delenv("COVERLATTICE_TIMING", raising=False)
    yield
    global_vars.reset()


@pytest.fixture
def write(tmp_path):
    def write_file(name, g_or_text):
        path = tmp_path / name
        if isinstance(g_or_text, str):
            path.write_text(g_or_text)
        else:
            path.write_text(graph.write_graph(g_or_text))
        return str(path)

    return write_file


@pytest.fixture
def g3_path(write):
    return write("g3.json", graph.graph_from_poset(3, [(2, 3), (3, 2)]))


def run_json(capsys, argv):
    code = main.run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_check(capsys, g3_path, write):
    code, report = run_json(capsys, ["check", g3_path])
    assert code == 0
    assert report["unmixed"] is True
    assert report["unmixed_bruteforce"] is True
    assert report["cohen_macaulay"] is False
    assert report["relabeling"] == [1, 2, 3]

    chain = write("chain.json", graph.chain_graph(3))
    code, report = run_json(capsys, ["check", chain])
    assert code == 0
    assert report["cohen_macaulay"] is True


def test_check_path_graph(capsys, write):
    path = write("path.json", '{"n": 2, "edges": [[1, 1], [2, 1]]}')
    assert main.run(["check", path]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "isolated" in captured.err


def test_check_not_unmixed(write):
    path = write(
        "c4.json",
        '{"n": 3, "edges": [[1, 1], [1, 2], [2, 1], [2, 2], [1, 3], '
        "[3, 3]]}",
    )
    assert main.run(["check", path]) == 2


def test_io_and_parse_errors(tmp_path, write):
    assert main.run(["check", str(tmp_path / "missing.json")]) == 1
    assert main.run(["check", write("bad.json", "{")]) == 1
    out_of_range = write("range.json", '{"n": 1, "edges": [[1, 2]]}')
    assert main.run(["check", out_of_range]) == 1


def test_drop_isolated(capsys, write):
    path = write("iso.json", '{"n": 3, "edges": [[1, 1], [3, 3]]}')
    assert main.run(["check", path]) == 2
    capsys.readouterr()
    code, report = run_json(capsys, ["check", path, "--drop-isolated"])
    assert code == 0
    assert report["n"] == 2


def test_hilbert(capsys, write, g3_path):
    k33 = write("k33.json", graph.complete_graph(3))
    code, report = run_json(capsys, ["hilbert", k33])
    assert code == 0
    assert report["h"] == [1, 1, 1, 1]
    assert report["denom_power"] == 7
    assert report["multiplicity"] == 4
    assert report["bounds"] == [4, 16]
    assert report["gorenstein_symmetric"] is True
    assert report["a_invariant"] == -4
    assert report["knn"] is True

    code, report = run_json(capsys, ["hilbert", g3_path])
    assert report["h"] == [1, 3, 3, 1]
    assert report["f_vector"] == [1, 4, 5, 2]
    assert report["basic_h_vector"] == [1, 1, 0, 0]
    assert report["lattice"]["elements"] == [[], [1], [2, 3], [1, 2, 3]]

    antichain = write("antichain.json", graph.antichain_graph(3))
    code, report = run_json(capsys, ["hilbert", antichain])
    assert report["multiplicity"] == 16


def test_hilbert_text(capsys, g3_path):
    assert main.run(["hilbert", g3_path, "--text"]) == 0
    out = capsys.readouterr().out
    assert "multiplicity: 8" in out
    assert "h: [1, 3, 3, 1]" in out


def test_json_is_stable(capsys, g3_path):
    main.run(["hilbert", g3_path, "--json"])
    first = capsys.readouterr().out
    main.run(["hilbert", g3_path, "--json", "--threads", "1"])
    second = capsys.readouterr().out
    assert first == second
    assert "\033[" not in first


def test_groebner(capsys, write):
    k22 = write("k22.json", graph.complete_graph(2))
    assert main.run(["groebner", k22]) == 0
    assert "x1*x2*u{} - y1*y2*u{1,2}" in capsys.readouterr().out
    code, report = run_json(capsys, ["groebner", k22])
    assert report["u_order"] == ["u{}", "u{1,2}"]
    assert len(report["basis"]) == 1


def test_verify(capsys, g3_path, write):
    k22 = write("k22.json", graph.complete_graph(2))
    assert main.run(["verify", k22]) == 0
    assert "SUCCESS" in capsys.readouterr().out
    assert main.run(["verify", g3_path, "--level", "full"]) == 0
    capsys.readouterr()


def test_verify_corrupted_basis(capsys, monkeypatch, g3_path):
    real = toric.groebner_basis

    def corrupted(g, lattice=None):
        return real(g, lattice)[:-1]

    monkeypatch.setattr(toric, "groebner_basis", corrupted)
    assert main.run(["verify", g3_path]) == 3
    assert "FAILED" in capsys.readouterr().out


def test_lattice(capsys, g3_path):
    code, report = run_json(capsys, ["lattice", g3_path])
    assert code == 0
    assert report["rank"] == 2
    assert report["maximal_chains"] == 2
    assert report["cm_reduction"] == [1, 2]
    assert report["nu"] == [
        [[], []],
        [[1], [1]],
        [[2], [2, 3]],
        [[1, 2], [1, 2, 3]],
    ]


def test_limit_flags(capsys, write):
    k33 = write("k33.json", graph.complete_graph(3))
    code, report = run_json(capsys, ["verify", k33, "--max-n", "2"])
    assert code == 0
    statuses = {c["name"]: c["status"] for c in report["verification"]}
    assert statuses["direct_counting"] == "skip"
    assert main.run(["check", k33, "--threads", "0"]) == 1


def test_config_flag(capsys, tmp_path, g3_path):
    config = tmp_path / "limits.ini"
    config.write_text("[limits]\nmax_direct_n = 2\n")
    code, report = run_json(
        capsys, ["verify", g3_path, "--config", str(config)]
    )
    statuses = {c["name"]: c["status"] for c in report["verification"]}
    assert statuses["direct_counting"] == "skip"
    assert main.run(["check", g3_path, "--config", "nope.ini"]) == 1


def test_timing(capsys, monkeypatch, g3_path):
    monkeypatch.setenv("COVERLATTICE_TIMING", "1")
    assert main.run(["check", g3_path]) == 0
    assert "Timers:" in capsys.readouterr().err


def test_main_exits(g3_path):
    with pytest.raises(SystemExit) as e:
        main.main(["check", g3_path])
    assert e.value.code == 0


def test_hilbert_sweeps_once_and_clears_caches(capsys, monkeypatch, g3_path):
    real = series._sweep
    terms = []

    def counting(g, term):
        terms.append(term)
        return real(g, term)

    monkeypatch.setattr(series, "_sweep", counting)
    code, report = run_json(capsys, ["hilbert", g3_path])
    assert code == 0
    assert report["multiplicity"] == 8
    assert len(terms) == 1
    assert lattice.subset_lattice.cache_info().currsize == 0
