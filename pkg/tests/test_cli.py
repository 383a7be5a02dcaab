import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from padicmf.cli import main
from padicmf.padic import PadicNumber


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_bernoulli_12():
    assert run("bernoulli", "--n", "12") == (0, "-691/2730\n")


def test_zeta_p_example():
    code, out = run("zeta-p", "--p", "5", "--branch", "0", "--at", "1-4", "--prec", "3", "--format", "json")
    assert code == 0
    v = json.loads(out)["result"]["value"]
    ref = PadicNumber.from_rational(Fraction(-31, 30), 5, 3)
    assert (v["val"], v["unit"]) == (ref.val, ref.unit)
    assert v["unit"] == 99


def test_selftest():
    code, out = run("selftest")
    assert code == 0
    assert "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ("zeta-p", "--p", "7", "--branch", "2", "--at", "1/3", "--prec", "3", "--format", "json"),
    ("pseudorep", "check", "--seed", "4", "--format", "json"),
    ("lambda", "eisenstein", "--prec-p", "3", "--prec-t", "3", "--order", "6", "--format", "json"),
    ("slopes", "--weight", "12", "--A", "4", "--prec-p", "5", "--format", "json"),
])
def test_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_exit_codes():
    assert run("nonsense")[0] == 2
    assert run("zeta-p", "--at", "1-4", "--prec", "9")[0] == 2
    assert run("zeta-p", "--at", "1-4", "--prec", "9", "--unsafe-limits")[0] == 0
    assert run("zeta-p", "--p", "5", "--at", "1")[0] == 3
    assert run("zeta-p", "--p", "5", "--branch", "1", "--at", "0")[0] == 3
    assert run("ordinary", "--p", "5")[0] == 3


def test_error_record_is_json():
    code, out = run("zeta-p", "--p", "5", "--at", "1", "--format", "json")
    rec = json.loads(out)
    assert code == 3 and rec["error"]["kind"] == "domain" and "pole" in rec["error"]["message"]


def test_precision_exit_code():
    # slope 10 at k = 12 cannot be certified at A = 8
    code, out = run("gm-check", "--weight", "12", "--weight2", "112", "--alpha", "10", "--format", "json")
    assert code == 4 and json.loads(out)["error"]["kind"] == "precision"


def test_config_echo():
    code, out = run("zeta-neg", "--n", "2", "--format", "json")
    rec = json.loads(out)
    assert rec["config"]["command"] == "zeta-neg" and rec["config"]["params"]["n"] == 2
    assert rec["result"]["zeta(1-n)"] == "-1/12"


def test_qexp_roundtrip_through_file(tmp_path):
    code, out = run("qexp", "--form", "delta", "--order", "10", "--format", "json")
    text = json.loads(out)["result"]["qexp"]
    f = tmp_path / "d.txt"
    f.write_text(text)
    code2, out2 = run("qexp", "--input", str(f), "--order", "10", "--format", "json")
    assert json.loads(out2)["result"]["qexp"] == text
    code3, out3 = run("qexp", "--input", str(f), "--op", "T:2", "--format", "json")
    lines = json.loads(out3)["result"]["qexp"].splitlines()
    assert lines[2] == "-24"


def test_lambda_roundtrip_through_file(tmp_path):
    args = ("--p", "5", "--prec-p", "4", "--prec-t", "6", "--order", "12")
    code, out = run("lambda", "eisenstein", *args, "--format", "json")
    fam = json.loads(out)["result"]["family"]
    f = tmp_path / "E.json"
    f.write_text(json.dumps(fam))
    a = run("lambda", "specialize", "--weight", "8", *args, "--input", str(f))
    b = run("lambda", "specialize", "--weight", "8", *args)
    assert a == b and a[0] == 0


def test_ordinary_delta_11():
    code, out = run("ordinary", "--p", "11", "--prec-p", "4", "--order", "12", "--format", "json")
    r = json.loads(out)["result"]
    assert r["slope_alpha"] == "0" and r["slope_beta"] == "11"
    assert r["alpha"]["unit"] % 121 == 34


def test_pseudorep_subcommands():
    for action in ("extract", "check", "glue", "reconstruct"):
        code, out = run("pseudorep", action, "--seed", "2", "--format", "json")
        assert code == 0, out
    r = json.loads(run("pseudorep", "glue", "--seed", "2", "--format", "json")[1])["result"]
    assert r["loss"] == 1 and r["axioms_ok"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "padicmf", "bernoulli", "--n", "12"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "-691/2730\n"
