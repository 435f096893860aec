import json

from braidkit.cli import run
from braidkit.laurent import LaurentPolynomial
from braidkit.moves import sequence_from_json
from braidkit.words import word_from_json


def run_capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNormalize:
    def test_half_twist(self, capsys):
        code, out, _ = run_capture(capsys, ["normalize", "-n", "3", "s1 s2 s1"])
        assert code == 0
        assert out.strip() == "D^1 |"

    def test_missing_strand_count(self, capsys):
        code, _, err = run_capture(capsys, ["normalize", "s1"])
        assert code == 2 and "strand count" in err

    def test_bad_word(self, capsys):
        code, _, err = run_capture(capsys, ["normalize", "-n", "3", "s9"])
        assert code == 2


class TestConjugate:
    def test_true_exit_zero(self, capsys):
        code, out, _ = run_capture(capsys, ["conjugate", "-n", "3", "s1 s2", "s2 s1"])
        assert code == 0 and "witness" in out

    def test_false_exit_one(self, capsys):
        code, out, _ = run_capture(capsys, ["conjugate", "-n", "2", "s1", "s1^-1"])
        assert code == 1 and "not conjugate" in out


class TestInvariants:
    def test_flype_word_numbers(self, capsys):
        code, out, _ = run_capture(
            capsys, ["invariants", "-n", "3", "s1^5 s2^4 s1^6 s2^-1"]
        )
        assert code == 0
        assert "exponent sum    14" in out
        assert "self-linking    11" in out
        assert "components      1" in out

    def test_threads_give_identical_output(self, capsys):
        args = ["invariants", "-n", "3", "s1^5 s2^4 s1^6 s2^-1", "--json"]
        _, out1, _ = run_capture(capsys, args)
        _, out2, _ = run_capture(capsys, args + ["--threads", "3"])
        assert json.loads(out1) == json.loads(out2)

    def test_json_round_trips(self, capsys):
        code, out, _ = run_capture(
            capsys, ["invariants", "-n", "3", "s1^3 s2^4 s1^-5 s2^-1", "--json"]
        )
        assert code == 0
        payload = json.loads(out)
        w = word_from_json(payload["word"])
        assert w.as_pair() == (3, [1, 1, 1, 2, 2, 2, 2, -1, -1, -1, -1, -1, -2])
        assert payload["component_self_linking"] == [-1, -3]
        assert payload["pairwise_linking"] == [[[1, 2], 1]]
        jones = LaurentPolynomial.from_json(payload["jones"])
        assert not jones.is_zero()
        alex = LaurentPolynomial.from_json(payload["alexander"])
        assert alex == LaurentPolynomial.from_json(payload["alexander"])


class TestMove:
    def test_flype(self, capsys):
        code, out, _ = run_capture(capsys, ["move", "flype", "s1^5 s2^4 s1^6 s2^-1", "-n", "3"])
        assert code == 0 and out.strip() == "s1^5 s2^-1 s1^6 s2^4"

    def test_no_flype_match_exit_one(self, capsys):
        code, _, err = run_capture(capsys, ["move", "flype", "s1 s1", "-n", "3"])
        assert code == 1

    def test_destab(self, capsys):
        code, out, _ = run_capture(capsys, ["move", "destab", "s2 s1", "-n", "3"])
        assert code == 0 and out.strip() == "s1"

    def test_replay_round_trip(self, capsys, tmp_path):
        code, out, _ = run_capture(
            capsys,
            [
                "search",
                "s1 s2 s1^-1 s2^-1",
                "s1 s2^-1 s1^-1 s2",
                "-n",
                "3",
                "--json",
                "--max-strands",
                "4",
            ],
        )
        assert code == 0
        seq_json = json.loads(out)["sequence"]
        path = tmp_path / "seq.json"
        path.write_text(json.dumps(seq_json))
        assert sequence_from_json(seq_json).initial.n == 3
        code, out, _ = run_capture(capsys, ["move", "--replay", str(path)])
        assert code == 0 and "replayed" in out


class TestSearch:
    def test_found_exit_zero(self, capsys):
        code, out, _ = run_capture(capsys, ["search", "s1 s2", "s2 s1", "-n", "3"])
        assert code == 0 and "found" in out

    def test_exhausted_exit_one(self, capsys):
        code, out, _ = run_capture(
            capsys,
            [
                "search",
                "s1^5 s2^4 s1^6 s2^-1",
                "s1^5 s2^-1 s1^6 s2^4",
                "-n",
                "3",
                "--transverse",
                "--max-strands",
                "4",
                "--max-nodes",
                "500",
            ],
        )
        assert code == 1 and "exhausted" in out


class TestTemplate:
    def test_check_requires_seed(self, capsys):
        code, _, err = run_capture(capsys, ["template", "check", "exchange", "--trials", "2"])
        assert code == 2 and "--seed" in err

    def test_check_builtin(self, capsys):
        code, out, _ = run_capture(
            capsys,
            ["template", "check", "exchange", "--trials", "3", "--max-len", "3", "--seed", "5"],
        )
        assert code == 0 and "0 failures" in out

    def test_check_file(self, capsys, tmp_path):
        from braidkit.moves import exchange_template, template_to_json

        path = tmp_path / "tpl.json"
        path.write_text(json.dumps(template_to_json(exchange_template())))
        code, out, _ = run_capture(
            capsys,
            ["template", "check", str(path), "--trials", "2", "--max-len", "3", "--seed", "6"],
        )
        assert code == 0


class TestWinding:
    def test_distinct_classes_reported(self, capsys):
        code, out, _ = run_capture(capsys, ["winding", "s1", "s1", "1", "-n", "3"])
        assert code == 0 and "distinct conjugacy classes" in out


class TestNormalFormJson:
    def test_round_trip(self, capsys):
        code, out, _ = run_capture(capsys, ["normalize", "-n", "3", "s1^-1", "--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["delta_power"] == -1
        assert payload["factors"] == [[3, 1, 2]]
        assert payload["serialized"].startswith("D^-1 | ")


def test_usage_error_exit_two(capsys):
    assert run(["no-such-command"]) == 2


def test_verify_paper_passes(capsys):
    code, out, _ = run_capture(capsys, ["verify-paper", "--seed", "0"])
    assert code == 0
    assert out.count("[PASS]") == 9 and "[FAIL]" not in out


def test_verify_paper_json(capsys):
    code, out, _ = run_capture(capsys, ["verify-paper", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert len(payload["checks"]) == 9
