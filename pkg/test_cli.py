"""
End-to-end tests for the command line.

Most tests run main.py in a subprocess the way a user would; the rest call
permprofile.cli.main in-process and compare against the library operation
each subcommand wraps.
"""

import json
import subprocess
import sys

import pytest

from conftest import MATRIX_DIR, ROOT, W
from permprofile.antichain_gen import (
    generate_antichain,
    generate_pbar,
    thue_morse,
    tm_substitute,
    verify_antichain,
    widderschin,
)
from permprofile.cli import main, parse_sizes
from permprofile.matrix_io import format_matrix_text, format_permutations, parse_matrix_text, read_matrix
from permprofile.perm_core import Permutation
from permprofile.plotting import plot_svg, spec_for_matrix, spec_for_state
from permprofile.profile import enumerate_m_partitions, enumerate_profile_class
from permprofile.pwo_graph import bipartite_graph, classify_graph, is_pwo
from permprofile.sign_matrix import matrix_perm, perm_matrix
from permprofile.walks import WalkOptions

W2 = "12,1,10,3,7,5,8,9,11,6,13,4,14,15,2"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "main.py", *args],
        capture_output=True,
        text=True,
        timeout=120,
        cwd=ROOT,
    )


def matrix_arg(name: str) -> str:
    return str(MATRIX_DIR / name)


class TestDecide:
    def test_forest(self):
        result = run_cli("decide", "-m", matrix_arg("fig1.mat"))
        assert result.returncode == 0, result.stderr
        assert result.stdout.strip() == "pwo: yes (forest)"

    def test_cycle(self):
        result = run_cli("decide", "-m", matrix_arg("w.mat"), "--edges")
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "pwo: no (single cycle of length 4)"
        assert lines[1:] == ["x1-y1", "x1-y2", "x2-y1", "x2-y2"]

    def test_json_input_and_output(self):
        result = run_cli("decide", "-m", matrix_arg("fig1.json"), "--format", "json")
        document = json.loads(result.stdout)
        assert document["schema"] == "permprofile/decision/1"
        assert document["pwo"] is True
        assert document["shape"] == "forest"

        result = run_cli("decide", "-m", matrix_arg("w.mat"), "--format", "json")
        document = json.loads(result.stdout)
        assert document["pwo"] is False
        assert document["cycle"] == [[1, 1], [1, 2], [2, 2], [2, 1]]

    def test_json_edges(self):
        result = run_cli("decide", "-m", matrix_arg("w.mat"), "--edges", "--format", "json")
        document = json.loads(result.stdout)
        assert document["edges"] == ["x1-y1", "x1-y2", "x2-y1", "x2-y2"]
        result = run_cli("decide", "-m", matrix_arg("fig1.mat"), "--format", "json")
        assert "edges" not in json.loads(result.stdout)


class TestEnumerate:
    def test_complement(self):
        result = run_cli("enumerate", "-m", matrix_arg("column_ppm.mat"), "-n", "4", "--complement")
        assert result.returncode == 0, result.stderr
        assert result.stdout == "3 2 1 4\n4 2 1 3\n4 3 1 2\n"

    def test_json_count(self):
        result = run_cli("enumerate", "-m", matrix_arg("column_pmp.mat"), "-n", "4", "--format", "json")
        document = json.loads(result.stdout)
        assert document["schema"] == "permprofile/permutations/1"
        assert document["count"] == 19

    def test_bound(self):
        result = run_cli("enumerate", "-m", matrix_arg("w.mat"), "-n", "6", "--bound", "5")
        assert result.returncode == 1
        assert "ResourceError" in result.stderr


class TestGenerate:
    def test_printed_p6(self):
        result = run_cli("generate", "-m", matrix_arg("w.mat"), "-n", "6", "--format", "text")
        assert result.returncode == 0, result.stderr
        expected = "# P_6\n" + format_matrix_text(perm_matrix(Permutation.parse("71265384")))
        assert result.stdout == expected

    def test_pbar_one_line_with_last_cell(self):
        result = run_cli(
            "generate", "-m", matrix_arg("w.mat"), "--ns", "1-12",
            "--no-expand", "--one-line", "--last-cell", "1,1",
        )
        assert result.returncode == 0, result.stderr
        assert result.stdout.splitlines() == [
            "Pbar_1: 1",
            "Pbar_5: 4 1 2 5 3",
            "Pbar_9: " + str(matrix_perm(generate_antichain(W, [9], WalkOptions(expand=False))[0])),
        ]

    def test_odd_parity(self):
        result = run_cli("generate", "-m", matrix_arg("oneminus.mat"), "-n", "6")
        assert result.returncode == 1
        assert "ParityError" in result.stderr
        result = run_cli("generate", "-m", matrix_arg("oneminus.mat"), "-n", "6", "--auto-double")
        assert result.returncode == 0, result.stderr
        assert result.stdout.startswith("# P_6\n")

    def test_flower_word(self):
        word = str(tm_substitute(thue_morse(6)))
        result = run_cli(
            "generate", "-m", matrix_arg("flower.mat"), "--mode", "flower",
            "--word", word, "-n", "20", "--format", "json",
        )
        assert result.returncode == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["schema"] == "permprofile/antichain/1"
        assert document["elements"][0]["matrix"]["rows"] == 22

    def test_unknown_mode(self):
        result = run_cli("generate", "-m", matrix_arg("w.mat"), "-n", "4", "--mode", "spiral")
        assert result.returncode == 1
        assert "spiral" in result.stderr

    def test_missing_file(self):
        result = run_cli("generate", "-m", matrix_arg("nope.mat"), "-n", "4")
        assert result.returncode == 1
        assert "MatrixFormatError" in result.stderr


class TestVerify:
    def test_printed_antichain(self):
        result = run_cli("verify", "-m", matrix_arg("w.mat"), "--ns", "9,13,17,21")
        assert result.returncode == 0, result.stderr
        assert result.stdout.strip() == "antichain: yes"

    def test_comparable_elements(self):
        result = run_cli("verify", "-p", "1", "-p", "12")
        assert result.returncode == 1
        assert result.stdout.splitlines() == ["antichain: no", "1 <= 1 2"]

    def test_json(self):
        result = run_cli("verify", "-m", matrix_arg("w.mat"), "--ns", "9,13", "--threads", "2", "--format", "json")
        document = json.loads(result.stdout)
        assert document == {
            "schema": "permprofile/verification/1",
            "antichain": True,
            "size": 2,
            "comparable": [],
        }


class TestPartitions:
    def test_printed_partition(self):
        result = run_cli("partitions", "-m", matrix_arg("w.mat"), "-p", W2)
        assert result.returncode == 0, result.stderr
        assert "I=[1,7,16] J=[1,7,16]" in result.stdout.splitlines()

    def test_count_and_none(self):
        result = run_cli("partitions", "-m", matrix_arg("w.mat"), "-p", "10,1,8,2,7,6,4,9,5,11,3", "--count")
        assert result.stdout.strip() == "1"
        result = run_cli("partitions", "-m", matrix_arg("fig1.mat"), "-p", "4321")
        assert result.stdout.strip() == "no M-partition"


class TestPlot:
    def test_p6_plot(self):
        result = run_cli("plot", "-m", matrix_arg("w.mat"), "-n", "6")
        assert result.returncode == 0, result.stderr
        assert result.stdout.count('id="dot-') == 8
        assert result.stdout.count('id="arrow-') == 5

    def test_single_point(self):
        svg = plot_svg(spec_for_matrix(perm_matrix(Permutation.of(1))))
        assert svg.count('id="dot-') == 1
        assert 'id="arrow-' not in svg

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        for target in (first, second):
            result = run_cli("plot", "-p", "3142", "-o", str(target))
            assert result.returncode == 0, result.stderr
        assert first.read_bytes() == second.read_bytes()


class TestWords:
    def test_thue(self):
        assert run_cli("thue", "-g", "6").stdout.strip() == "abbabaabbaababbabaababbaabbabaab"
        assert run_cli("thue", "-g", "6", "--substitute").stdout.strip() == "2102012101202101"

    def test_widderschin(self):
        assert run_cli("widderschin", "-k", "1").stdout.strip() == "8 1 5 3 6 7 9 4 10 11 2"


class TestUsage:
    def test_unknown_command(self):
        result = run_cli("frobnicate")
        assert result.returncode == 2
        assert "usage" in result.stderr

    def test_missing_required_flag(self):
        result = run_cli("generate", "-m", matrix_arg("w.mat"))
        assert result.returncode == 2

    def test_version(self):
        result = run_cli("--version")
        assert result.returncode == 0
        assert "permprofile" in result.stdout

    def test_parse_sizes(self):
        assert parse_sizes("9,13,17") == [9, 13, 17]
        assert parse_sizes("9-12,20") == [9, 10, 11, 12, 20]


class TestThinWrappers:
    @pytest.mark.parametrize("name", ["fig1.mat", "w.mat", "flower.mat", "shared_edge.mat"])
    def test_decide(self, capsys, name):
        assert main(["decide", "-m", matrix_arg(name)]) == 0
        matrix = read_matrix(MATRIX_DIR / name)
        verdict = "yes" if is_pwo(matrix) else "no"
        shape = classify_graph(bipartite_graph(matrix))
        assert capsys.readouterr().out == f"pwo: {verdict} ({shape})\n"

    def test_verify_antichain(self, capsys):
        assert main(["verify", "-m", matrix_arg("w.mat"), "--ns", "9,13,17"]) == 0
        report = verify_antichain(generate_antichain(W, [9, 13, 17]))
        assert report.comparable == ()
        assert capsys.readouterr().out == "antichain: yes\n"

    def test_verify_comparable(self, capsys):
        elements = [Permutation.parse(text) for text in ("12", "1", "21")]
        assert main(["verify", "-p", "12", "-p", "1", "-p", "21"]) == 1
        report = verify_antichain([perm_matrix(p) for p in elements])
        expected = ["antichain: no"] + [
            f"{elements[pair.lower]} <= {elements[pair.upper]}" for pair in report.comparable
        ]
        assert capsys.readouterr().out.splitlines() == expected
        assert len(report.comparable) == 2

    def test_plot(self, capsys):
        assert main(["plot", "-m", matrix_arg("w.mat"), "-n", "6"]) == 0
        assert capsys.readouterr().out == plot_svg(spec_for_state(generate_pbar(W, 6)))
        assert main(["plot", "-p", "3142"]) == 0
        assert capsys.readouterr().out == plot_svg(spec_for_matrix(perm_matrix(Permutation.parse("3142"))))

    def test_enumerate(self, capsys):
        assert main(["enumerate", "-m", matrix_arg("column_pmp.mat"), "-n", "4"]) == 0
        members = enumerate_profile_class(read_matrix(MATRIX_DIR / "column_pmp.mat"), 4)
        assert capsys.readouterr().out == format_permutations(members)

    def test_generate(self, capsys):
        assert main(["generate", "-m", matrix_arg("w.mat"), "--ns", "9,13", "--one-line"]) == 0
        elements = generate_antichain(W, [9, 13])
        assert capsys.readouterr().out.splitlines() == [
            f"P_{n}: {matrix_perm(P)}" for n, P in zip([9, 13], elements)
        ]

    def test_partitions(self, capsys):
        assert main(["partitions", "-m", matrix_arg("w.mat"), "-p", W2]) == 0
        found = enumerate_m_partitions(Permutation.parse(W2), W)
        assert capsys.readouterr().out.splitlines() == [str(p) for p in found]

    def test_widderschin_and_thue(self, capsys):
        assert main(["widderschin", "-k", "3"]) == 0
        assert capsys.readouterr().out.strip() == str(widderschin(3))
        assert main(["thue", "-g", "8", "--substitute"]) == 0
        assert capsys.readouterr().out.strip() == str(tm_substitute(thue_morse(8)))


@pytest.mark.parametrize("path", sorted(MATRIX_DIR.glob("*.mat")), ids=lambda p: p.name)
def test_matrix_files_round_trip(path):
    text = path.read_text()
    assert format_matrix_text(parse_matrix_text(text)).rstrip() == text.rstrip()


def test_matrix_text_accepts_comments():
    text = "# the 2x2 cycle matrix\n1 -1\n-1 1\n\n"
    assert parse_matrix_text(text) == W
    assert format_matrix_text(parse_matrix_text(text)) == "1 -1\n-1 1\n\n"


def test_json_twin_matches_text():
    assert read_matrix(MATRIX_DIR / "fig1.json") == read_matrix(MATRIX_DIR / "fig1.mat")
