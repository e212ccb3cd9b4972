"""End-to-end CLI behaviour: outputs, exit codes, determinism."""

import json

import pytest

from cnotcalc.cli import run
from cnotcalc.circuit import circuit, cnot, init0, swap
from cnotcalc.formats import format_circuit


@pytest.fixture
def fanout_file(tmp_path):
    p = tmp_path / "fanout1.cnot"
    p.write_text(format_circuit(circuit(1, init0(0), cnot(1, 0)), name="fanout1"))
    return str(p)


@pytest.fixture
def run_cli(capsys):
    def go(*argv):
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return go


class TestEval:
    def test_defined(self, run_cli, fanout_file):
        code, out, _ = run_cli("eval", fanout_file, "--input", "1")
        assert code == 0 and out.strip() == "11"

    def test_undefined(self, run_cli, tmp_path):
        p = tmp_path / "omega.cnot"
        from cnotcalc.circuit import omega

        p.write_text(format_circuit(omega(), name="omega"))
        code, out, _ = run_cli("eval", str(p), "--input", "")
        assert code == 0 and out.strip() == "undefined"

    def test_wrong_length(self, run_cli, fanout_file):
        code, _, err = run_cli("eval", fanout_file, "--input", "101")
        assert code == 2 and "error" in err

    def test_missing_file(self, run_cli):
        code, _, err = run_cli("eval", "/nonexistent.cnot", "--input", "0")
        assert code == 2 and "cannot read" in err


class TestSemantics:
    def test_canonical_lines(self, run_cli, fanout_file):
        code, out, _ = run_cli("semantics", fanout_file)
        assert code == 0
        assert out == "graph 1 2\nparity x0 y1 = 0\nparity y0 y1 = 0\n"

    def test_json_mirror(self, run_cli, fanout_file):
        code, out, _ = run_cli("semantics", fanout_file, "--json")
        assert code == 0
        data = json.loads(out)
        assert data["command"] == "semantics"
        assert data["relation"][0] == "graph 1 2"


class TestEqual:
    def test_equal_pair(self, run_cli, tmp_path):
        a = tmp_path / "a.cnot"
        b = tmp_path / "b.cnot"
        a.write_text(
            format_circuit(circuit(2, cnot(0, 1), cnot(1, 0), cnot(0, 1)), "a")
        )
        b.write_text(format_circuit(circuit(2, swap(0, 1)), "b"))
        code, out, _ = run_cli("equal", str(a), str(b))
        assert code == 0 and out.strip() == "equal"

    def test_unequal_pair_exit_code(self, run_cli, tmp_path):
        a = tmp_path / "a.cnot"
        b = tmp_path / "b.cnot"
        a.write_text(format_circuit(circuit(2, cnot(0, 1)), "a"))
        b.write_text(format_circuit(circuit(2, cnot(1, 0)), "b"))
        code, out, _ = run_cli("equal", str(a), str(b))
        assert code == 1 and out.strip() == "unequal"


class TestNormalizeSynth:
    def test_normalize_identity(self, run_cli, tmp_path):
        p = tmp_path / "id.cnot"
        p.write_text("circuit id2 : 2 -> 2\nend\n")
        code, out, _ = run_cli("normalize", str(p))
        assert code == 0
        assert out.splitlines()[0] == "circuit clausal : 2 -> 2"

    def test_normalize_rejects_non_idempotent(self, run_cli, tmp_path):
        p = tmp_path / "c.cnot"
        p.write_text("circuit c : 2 -> 2\ncnot 0 1\nend\n")
        code, _, err = run_cli("normalize", str(p))
        assert code == 2 and "idempotent" in err

    def test_synth_graph_file(self, run_cli, tmp_path):
        p = tmp_path / "rel.graph"
        p.write_text("graph 1 1\nparity x0 y0 = 1\n")
        code, out, _ = run_cli("synth", str(p))
        assert code == 0
        # returned circuit must have the declared arity
        assert out.splitlines()[0].endswith(": 1 -> 1")

    def test_synth_rejects_non_iso(self, run_cli, tmp_path):
        p = tmp_path / "rel.graph"
        p.write_text("graph 2 1\nparity x0 y0 = 0\n")
        code, _, err = run_cli("synth", str(p))
        assert code == 2 and "partial isomorphism" in err


class TestVerifyReplayConstruct:
    def test_verify_passes(self, run_cli):
        code, out, _ = run_cli("verify")
        assert code == 0
        assert "all checks passed" in out
        assert "PASS  rule CNT1" in out

    def test_replay(self, run_cli, tmp_path):
        c = tmp_path / "c.cnot"
        c.write_text("circuit c : 2 -> 2\ncnot 0 1\ncnot 0 1\nend\n")
        d = tmp_path / "d.deriv"
        d.write_text("CNT2 0 lr\n")
        code, out, _ = run_cli("replay", str(c), str(d))
        assert code == 0
        assert "circuit step0" in out and "circuit step1" in out

    def test_replay_failure(self, run_cli, tmp_path):
        c = tmp_path / "c.cnot"
        c.write_text("circuit c : 2 -> 2\ncnot 0 1\nend\n")
        d = tmp_path / "d.deriv"
        d.write_text("CNT2 0 lr\n")
        code, _, err = run_cli("replay", str(c), str(d))
        assert code == 2 and "does not match" in err

    def test_construct_hat(self, run_cli):
        code, out, _ = run_cli("construct", "hat", "01")
        assert code == 0
        assert out.splitlines()[0] == "circuit hat : 0 -> 2"

    def test_construct_clause(self, run_cli):
        code, out, _ = run_cli("construct", "clause", "3", "1", "0", "2")
        assert code == 0
        assert out.splitlines()[0] == "circuit clause : 3 -> 3"


class TestJsonMirrors:
    def test_every_command_emits_valid_json(self, run_cli, tmp_path):
        circ_file = tmp_path / "c.cnot"
        circ_file.write_text("circuit c : 2 -> 2\ncnot 0 1\ncnot 0 1\nend\n")
        idem = tmp_path / "e.cnot"
        idem.write_text("circuit e : 1 -> 1\nend\n")
        rel = tmp_path / "r.graph"
        rel.write_text("graph 1 1\nparity x0 y0 = 0\n")
        deriv = tmp_path / "d.deriv"
        deriv.write_text("CNT2 0 lr\n")
        invocations = [
            ("eval", str(circ_file), "--input", "10"),
            ("semantics", str(circ_file)),
            ("equal", str(circ_file), str(circ_file)),
            ("normalize", str(idem)),
            ("synth", str(rel)),
            ("verify",),
            ("replay", str(circ_file), str(deriv)),
            ("fuzz", "--trials", "3"),
            ("construct", "omega"),
        ]
        for argv in invocations:
            code, out, _ = run_cli(*argv, "--json")
            assert code == 0, argv
            data = json.loads(out)
            assert data["command"] == argv[0]


class TestFuzzCommand:
    def test_small_run_deterministic(self, run_cli):
        code1, out1, _ = run_cli("fuzz", "--trials", "20", "--seed", "9")
        code2, out2, _ = run_cli("fuzz", "--trials", "20", "--seed", "9")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_report(self, run_cli):
        code, out, _ = run_cli("fuzz", "--trials", "5", "--json")
        data = json.loads(out)
        assert code == 0 and data["ok"] is True and data["trials"] == 5

    def test_counterexample_printed(self, run_cli, monkeypatch):
        import cnotcalc.cli as cli_mod
        from cnotcalc.circuit import circuit, notg

        def fake_fuzz(wires, depth, seed, trials):
            return 1, (0, circuit(1, notg(0)), "synthetic failure")

        monkeypatch.setattr(cli_mod, "fuzz", fake_fuzz)
        code, out, _ = run_cli("fuzz", "--trials", "1")
        assert code == 1
        assert "synthetic failure" in out and "circuit counterexample0" in out
