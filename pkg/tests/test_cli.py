import subprocess
import sys

import pytest

from comppath.cli import main, run_command
from comppath.engine import normalize
from comppath.terms import parse_path_term as P

PROP2 = """axiom co: tau(b,a) = tau(a,b)
start: tau(tau(tau(b,a),sigma(b)),sigma(a))
target: rho
steps:
fwd co @ 0.0
fwd tt @ 0
fwd tr @ 0.1
fwd trr @ 0
fwd tr @
"""

MATRIX = [
    (["path", "normalize", "sigma(sigma(t))"], 0, "t\n"),
    (["path", "normalize", "tau(a,"], 2, ""),
    (["path", "normalize", "sigma(sigma(a))", "--fuel", "0"], 2, ""),
    (["path", "normalize", "sigma(sigma(sigma(sigma(a))))", "--fuel", "1"], 1, ""),
    (["path", "normalize", "a", "--strategy", "random"], 2, ""),
    (["path", "eq", "sigma(sigma(t))", "t"], 0, "true\n"),
    (["path", "eq", "a", "b"], 1, "false\n"),
    (["path", "trace", "sigma(sigma(a))"], 0, "fwd ss @  : a\n"),
    (["path", "normalize", "tau(sigma(u),tau(u,v))", "--strict-rule39"], 0, "u\n"),
    (["lambda", "reduce", r"(\x.x) y"], 0, "y\n"),
    (["lambda", "reduce", r"\x."], 2, ""),
    (["lambda", "reduce", r"(\x.x x)(\x.x x)", "--max-steps", "5"], 1, ""),
    (["lambda", "path", r"(\x.x) a", "a"], 0, "beta\n"),
    (["lambda", "path", "x", "y"], 1, "no path\n"),
    (["lambda", "path", r"(\x.(\y.y x)(\w.z w)) v", "z v", "--skeleton"], 0,
     "tau(tau(eta,beta),beta)\n"),
    (["group", "reduce", "--surface", "klein", "b a"], 0, "a b^-1\n"),
    (["group", "reduce", "--surface", "torus", "b a b^-1 a^-1"], 0, "1\n"),
    (["group", "reduce", "a a^-1 b"], 0, "b\n"),
    (["group", "reduce", "--surface", "torus", "c"], 2, ""),
    (["group", "reduce", "--surface", "sphere", "a"], 2, ""),
    (["group", "reduce", "--surface", "genus2",
      "b1 a1 b1^-1 a1^-1 b2 a2 b2^-1 a2^-1"], 0, "1\n"),
    (["group", "equal", "--surface", "torus", "b a", "a b"], 0, "true\n"),
    (["group", "equal", "--surface", "klein", "b a", "a b"], 1, "false\n"),
    (["group", "equal", "b a", "a b"], 2, ""),
    (["group", "abelianize", "--surface", "klein"], 0, "Z + Z/2\n"),
    (["group", "abelianize", "gens: a b ; rels: b a b^-1 a^-1"], 0, "Z + Z\n"),
    (["group", "abelianize", "gens a b"], 2, ""),
    (["group", "pushout", "--u", "gens: a b ; rels:", "--v", "gens: ; rels:",
      "--amalgam", "b a b a^-1 | 1"], 0, "gens: a b ; rels: b a b a^-1\n"),
    (["group", "pushout", "--u", "gens: a ; rels:", "--v", "gens: ; rels:",
      "--amalgam", "a"], 2, ""),
    (["group", "presentation", "--surface", "genus2"], 0,
     "gens: a1 b1 a2 b2 ; rels: b1 a1 b1^-1 a1^-1 b2 a2 b2^-1 a2^-1\n"),
    (["group", "presentation", "--boundary", "b a b^-1 a^-1"], 0,
     "gens: a b ; rels: b a b^-1 a^-1\n"),
    (["group", "presentation"], 2, ""),
    (["bogus"], 2, ""),
    ([], 2, ""),
]


@pytest.mark.parametrize("argv,code,stdout", MATRIX, ids=[" ".join(m[0]) or "empty" for m in MATRIX])
def test_exit_code_matrix(argv, code, stdout):
    out = run_command(argv)
    assert out.exit_code == code, out.stderr
    if stdout:
        assert out.stdout == stdout
    if code == 2:
        assert out.stderr


def test_help_exits_zero():
    out = run_command(["path", "--help"])
    assert out.exit_code == 0
    assert "normalize" in out.stdout


def test_stdin_operands():
    assert run_command(["path", "normalize"], "sigma(sigma(t))\n").stdout == "t\n"
    assert run_command(["path", "eq", "t"], "sigma(sigma(t))").exit_code == 0
    assert run_command(["group", "reduce", "--surface", "klein", "-"], "b a").stdout == "a b^-1\n"
    assert run_command(["path", "normalize"], "").exit_code == 2


def test_stdin_read_only_when_needed():
    def boom():
        raise AssertionError("stdin should not be read")
    assert run_command(["path", "normalize", "a"], boom).exit_code == 0


def test_trace_flag_matches_engine_lines():
    t = "tau(tau(a,sigma(sigma(b))),rho)"
    out = run_command(["path", "normalize", t, "--trace"])
    nf, trace = normalize(P(t))
    assert out.stdout.splitlines() == trace.lines() + ["tau(a,b)"]


def test_script_verify(tmp_path):
    good = tmp_path / "prop2.proof"
    good.write_text(PROP2)
    out = run_command(["script", "verify", str(good)])
    assert (out.exit_code, out.stdout) == (0, "accepted\nfinal: rho\n")
    bad = tmp_path / "bad.proof"
    bad.write_text(PROP2.replace("fwd tt @ 0\n", "fwd tt @ 1\n"))
    out = run_command(["script", "verify", str(bad)])
    assert out.exit_code == 1
    assert out.stdout.startswith("rejected at step 2")
    broken = tmp_path / "broken.proof"
    broken.write_text("start: a\n")
    assert run_command(["script", "verify", str(broken)]).exit_code == 2
    assert run_command(["script", "verify", str(tmp_path / "missing")]).exit_code == 2


def test_script_verify_trace(tmp_path):
    f = tmp_path / "p.proof"
    f.write_text(PROP2)
    lines = run_command(["script", "verify", str(f), "--trace"]).stdout.splitlines()
    assert lines[0] == "fwd co @ 0.0 : tau(tau(tau(a,b),sigma(b)),sigma(a))"
    assert lines[-2:] == ["accepted", "final: rho"]


def test_suite_paper():
    out = run_command(["suite", "paper"])
    lines = out.stdout.splitlines()
    assert out.exit_code == 0
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} scripts accepted"
    assert all(line.endswith(": accepted") for line in lines[:-1])


def test_suite_paper_strict_mode_reports_rejections():
    out = run_command(["suite", "paper", "--strict-rule39"])
    assert out.exit_code == 1
    assert "torus_group_inverse_left: rejected at step" in out.stdout


@pytest.mark.parametrize("argv", [m[0] for m in MATRIX[:12]] + [["suite", "paper"]])
def test_deterministic(argv):
    assert run_command(argv) == run_command(argv)


def test_main_entry_point(capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["comppath", "path", "normalize", "sigma(sigma(t))"])
    assert main() == 0
    assert capsys.readouterr().out == "t\n"


def test_module_invocation_with_pipe():
    proc = subprocess.run([sys.executable, "-m", "comppath.cli", "path", "normalize"],
                          input="tau(rho,a)", capture_output=True, text=True, timeout=60)
    assert (proc.returncode, proc.stdout) == (0, "a\n")
