"""Command line driver: worked examples, formats, and exit codes."""

import json

import pytest

from qschub import selftest
from qschub.cli import main
from qschub.poly import polynomial_from_json
from qschub.quantum_ring import StructureTable
from qschub.schubert import schubert_polynomial


def run(capsys, *argv):
    exit_code = main(list(argv))
    captured = capsys.readouterr()
    return exit_code, captured.out.rstrip("\n"), captured.err


class TestPoly:
    def test_quantum_double_example(self, capsys):
        exit_code, out, _ = run(
            capsys, "poly", "--w", "[3,1,2]", "--family", "quantum-double"
        )
        assert exit_code == 0
        assert out == "x1^2 - x1*a1 - x1*a2 + a1*a2 - q1"

    def test_classical_identity(self, capsys):
        exit_code, out, _ = run(capsys, "poly", "--w", "[1]", "--family", "classical")
        assert exit_code == 0
        assert out == "1"

    def test_default_family_is_quantum_double(self, capsys):
        exit_code, out, _ = run(capsys, "poly", "--w", "[3,1,2]")
        assert exit_code == 0
        assert out == "x1^2 - x1*a1 - x1*a2 + a1*a2 - q1"

    def test_parabolic_member(self, capsys):
        from qschub.parabolic import parabolic_q_double_schubert
        from qschub.poly import format_polynomial
        from qschub.weyl import ParabolicContext

        exit_code, out, _ = run(
            capsys, "poly", "--parabolic", "2,1,3", "--w", "[5,6,4,1,2,3]"
        )
        assert exit_code == 0
        expected = parabolic_q_double_schubert(
            ParabolicContext((2, 1, 3)), (5, 6, 4, 1, 2, 3)
        )
        assert out == format_polynomial(expected)

    def test_json_round_trip(self, capsys):
        exit_code, out, _ = run(
            capsys, "poly", "--w", "[3,1,2]", "--format", "json"
        )
        assert exit_code == 0
        assert polynomial_from_json(json.loads(out)) == schubert_polynomial(
            (3, 1, 2), "quantum_double"
        )

    def test_malformed_permutation(self, capsys):
        exit_code, _, err = run(capsys, "poly", "--w", "[3,1,2")
        assert exit_code == 2
        assert "permutation" in err

    def test_family_conflicts_with_parabolic(self, capsys):
        exit_code, _, err = run(
            capsys,
            "poly", "--w", "[2,1]", "--family", "classical", "--parabolic", "1,1",
        )
        assert exit_code == 2
        assert "does not combine" in err

    def test_non_minimal_parabolic_input(self, capsys):
        exit_code, _, err = run(capsys, "poly", "--parabolic", "2,1", "--w", "[2,1,3]")
        assert exit_code == 2
        assert "minimal" in err

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "member.txt"
        exit_code, out, _ = run(
            capsys, "poly", "--w", "[2,1]", "--out", str(target)
        )
        assert exit_code == 0
        assert out == ""
        assert target.read_text().strip() == "x1 - a1"


class TestExpand:
    def test_quantum_basis(self, capsys):
        exit_code, out, _ = run(
            capsys, "expand", "--poly", "x1*x2 + q1", "--family", "quantum"
        )
        assert exit_code == 0
        assert out == "[2,3,1]: 1"

    def test_zero_polynomial(self, capsys):
        exit_code, out, _ = run(capsys, "expand", "--poly", "0", "--family", "classical")
        assert exit_code == 0
        assert out == "0"

    def test_json_format(self, capsys):
        exit_code, out, _ = run(
            capsys,
            "expand", "--poly", "x1^2", "--family", "classical", "--format", "json",
        )
        assert exit_code == 0
        payload = json.loads(out)
        assert [item["w"] for item in payload] == ["[3,1,2]"]

    def test_parabolic_expansion_round_trips_members(self, capsys):
        exit_code, member_text, _ = run(
            capsys, "poly", "--parabolic", "2,2", "--w", "[3,4,1,2]"
        )
        assert exit_code == 0
        exit_code, out, _ = run(
            capsys, "expand", "--poly", member_text, "--parabolic", "2,2"
        )
        assert exit_code == 0
        assert out == "[3,4,1,2]: 1"

    def test_parse_error(self, capsys):
        exit_code, _, err = run(capsys, "expand", "--poly", "x1 +* q1")
        assert exit_code == 2
        assert err

    def test_outside_span(self, capsys):
        exit_code, _, err = run(
            capsys, "expand", "--poly", "x1", "--parabolic", "2,1"
        )
        assert exit_code == 2
        assert "span" in err


class TestVerify:
    @pytest.mark.parametrize(
        "suite", ["chevalley", "cauchy", "quantization", "stability", "bijection"]
    )
    def test_suites_verify(self, capsys, suite):
        exit_code, out, _ = run(capsys, "verify", suite, "--max-n", "3")
        assert exit_code == 0
        assert "verified" in out

    def test_flavor_flag(self, capsys):
        exit_code, out, _ = run(
            capsys,
            "verify", "chevalley", "--flavor", "quantum-double", "--max-n", "3",
        )
        assert exit_code == 0

    def test_falsified_suite_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr(
            selftest, "check_cauchy", lambda max_n=4: (False, "planted difference q1")
        )
        exit_code, out, _ = run(capsys, "verify", "cauchy")
        assert exit_code == 1
        assert "FALSIFIED" in out and "q1" in out


class TestTable:
    def test_json_matches_in_memory(self, capsys):
        exit_code, out, _ = run(capsys, "table", "--n", "3")
        assert exit_code == 0
        assert StructureTable.from_json(out) == StructureTable.build(3)

    def test_parabolic_text(self, capsys):
        exit_code, out, _ = run(
            capsys, "table", "--parabolic", "2,1", "--format", "text"
        )
        assert exit_code == 0
        assert "[1,2,3] * [1,2,3] = (1)*[1,2,3]" in out

    def test_requires_exactly_one_domain(self, capsys):
        exit_code, _, err = run(capsys, "table")
        assert exit_code == 2
        exit_code, _, err = run(capsys, "table", "--n", "2", "--parabolic", "1,1")
        assert exit_code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "table.json"
        exit_code, out, _ = run(capsys, "table", "--n", "2", "--out", str(target))
        assert exit_code == 0
        assert StructureTable.from_json(target.read_text()) == StructureTable.build(2)


def test_usage_error_on_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
