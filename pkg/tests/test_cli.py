import io
import json
import subprocess
import sys

import pytest

from helpers import FIXTURES, golden
from intlang import cli, operational
from intlang.core import LoopKind, Seq

FIG1 = str(FIXTURES / "fig1.isd")
FIG3 = str(FIXTURES / "fig3_4.isd")
LOOP_S = str(FIXTURES / "fig6_loopS.isd")
LOOP_H = str(FIXTURES / "fig6_loopH.isd")
SEQ = str(FIXTURES / "fig6_seq.isd")
COUNTER = str(FIXTURES / "counterexample.trace")


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def test_fmt_golden_and_idempotent():
    code, text = run("fmt", FIG1)
    assert code == 0 and text == golden("fig1.fmt.golden")
    code, again = run("fmt", "-e", text)
    assert code == 0 and again == text


def test_traces_golden():
    assert run("traces", FIG1, "--max-len", "4") == (0, golden("fig1.traces.golden"))
    assert run("traces", FIG1, "--max-len", "4", "--semantics", "den") == (0, golden("fig1.traces.golden"))


@pytest.mark.parametrize("name", ["fig1.isd", "fig3_4.isd", "fig6_body.isd", "fig6_seq.isd", "fig6_loopH.isd", "fig6_loopS.isd"])
def test_traces_semantics_agree_on_fixtures(name):
    path = str(FIXTURES / name)
    op = run("traces", path, "--max-len", "5")
    den = run("traces", path, "--max-len", "5", "--semantics", "den")
    assert op == den and op[0] == 0


def test_loop_difference():
    _, weak = run("traces", LOOP_S, "--max-len", "3")
    _, head = run("traces", LOOP_H, "--max-len", "3")
    diff = sorted(set(weak.splitlines()) - set(head.splitlines()))
    assert diff == golden("loopS_minus_loopH.len3.golden").splitlines()
    assert set(head.splitlines()) <= set(weak.splitlines())


def test_traces_bounds():
    assert run("traces", FIG1, "--max-len", "-1")[0] == 2
    assert run("traces", FIG1, "--max-len", "11")[0] == 2
    assert run("traces", "-e", "l1!m1", "--max-len", "11", "--allow-large") == (0, "l1!m1\n")
    assert run("traces", "-e", "0", "--max-len", "0") == (0, "eps\n")


def test_check():
    assert run("check", SEQ, "--trace-file", COUNTER) == (0, "accepted l1!m1.l2!m2.l2?m1\n")
    assert run("check", LOOP_S, "--trace", "l1!m1.l2!m2.l2?m1")[0] == 0
    assert run("check", LOOP_H, "--trace", "l1!m1.l2!m2.l2?m1") == (1, "rejected l1!m1.l2!m2.l2?m1\n")
    assert run("check", LOOP_H, "--trace", "eps") == (0, "accepted eps\n")
    assert run("check", FIG1, "--trace", "eps")[0] == 1


def test_check_witness_lines():
    code, text = run("check", "-e", "strict(l1!m1,l2?m1)", "--trace", "l1!m1.l2?m1", "--witness")
    assert code == 0
    assert text.splitlines() == [
        "accepted l1!m1.l2?m1",
        "  l1!m1 → strict(0,l2?m1)",
        "  l2?m1 → 0",
    ]


def test_check_errors():
    assert run("check", FIG1, "--trace", "l1!m9")[0] == 2  # undeclared in header
    assert run("check", FIG1, "--trace", "l1*m1")[0] == 2
    assert run("check", FIG1)[0] == 2
    assert run("check", FIG1, "--trace-file", str(FIXTURES / "missing.trace"))[0] == 2


def test_frontier_golden():
    assert run("frontier", LOOP_S) == (0, golden("fig6_loopS.frontier.golden"))
    assert run("frontier", "-e", "0") == (0, "")


def test_prune():
    assert run("prune", FIG3, "--lifeline", "l2") == (0, golden("fig3_4.prune_l2.golden"))
    code, text = run("prune", "-e", "l2?m1", "--lifeline", "l2")
    assert code == 1 and text.startswith("collision")


def test_eval():
    assert run("eval", "-e", "loopX(l1!m1)", "--query", "terminates") == (0, "true\n")
    assert run("eval", FIG1, "--query", "terminates") == (1, "false\n")
    assert run("eval", FIG3, "--query", "evades", "--lifeline", "l2") == (0, "true\n")
    assert run("eval", FIG3, "--query", "evades")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("bogus")[0] == 2
    assert run("fmt")[0] == 2
    assert run("fmt", str(FIXTURES / "nope.isd"))[0] == 2
    assert run("fmt", "-e", "strict(l1!m1")[0] == 2


def test_stdin_source(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("seq( l1!m1 ,0)"))
    assert run("fmt", "-") == (0, "seq(l1!m1,0)\n")


def test_equiv_small_run():
    code, text = run("equiv", "--seed", "7", "--cases", "30", "--max-depth", "3", "--max-len", "4")
    assert code == 0
    assert text.splitlines()[-1] == "30/30 equivalent"
    assert run("equiv", "--cases", "0")[0] == 2
    assert run("equiv", "--seed", "-3")[0] == 2


def test_equiv_catches_a_corrupted_rule(monkeypatch):
    original = operational.loop_successor

    def broken(loop, action, body_succ, pruned):
        if loop.kind is LoopKind.S:
            return Seq(body_succ, loop)
        return original(loop, action, body_succ, pruned)

    monkeypatch.setattr(operational, "loop_successor", broken)
    code, text = run("equiv", "--seed", "42", "--cases", "500", "--max-depth", "4", "--max-len", "5")
    assert code == 3
    lines = [l for l in text.splitlines() if "DISCREPANCY" in l]
    assert lines
    report = json.loads(lines[0].split("DISCREPANCY ", 1)[1])
    assert report["seed"] == 42 and report["missing_in_operational"]
    assert "loopS" in report["term"]


def test_console_script_module():
    proc = subprocess.run(
        [sys.executable, "-m", "intlang.cli", "fmt", "-e", "alt(0, l1!m1)"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "alt(0,l1!m1)\n"
