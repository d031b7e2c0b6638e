import io
import json
import subprocess
import sys

import pytest

from surgcalc.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_certify_text():
    code, out = call("certify", "Sum(T(3,2),T(5,2))", "7/2")
    assert code == 0
    assert out.splitlines()[0] == "Characterizing (Thm 1.2)"


def test_surger_json():
    code, out = call("surger", "C(5,2;T(3,2))", "29/3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "surgcalc/1"
    assert d["reduction_trace"] == [{"r": 5, "s": 2, "slope_before": "29/3", "slope_after": "29/12"}]
    assert sorted(d["pieces"][0]["cone_orders"]) == [2, 3, 43]
    assert d["h1_order"] == 29


def test_invalid_expression_exits_2(capsys):
    code, _ = call("jsj", "T(4,2)")
    assert code == 2
    assert "gcd(a,b) must be 1" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ("surger", "T(3,2)", "5"),
    ("certify", "T(3,2)", "a/b"),
    ("parse", "C(3,2;"),
    ("frobnicate",),
    (),
    ("oracle", "rs-lemma", "--q-min", "2"),
])
def test_usage_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_domain_failures_exit_1(capsys):
    assert call("surger", "T(3,2)", "1/0")[0] == 1
    assert call("surger", "C(5,2;Hyp(J))", "10/1")[0] == 1
    assert call("certify", "T(3,2)", "1/0")[0] == 1


def test_negative_slope_after_double_dash():
    code, out = call("surger", "T(3,2)", "--", "-7/3")
    assert code == 0 and "S^3_K(-7/3)" in out


def test_parse_normalizes():
    assert call("parse", "Sum(T(2,3),Sum(T(5,2),T(7,2)))") == (0, "Sum(T(3,2),T(5,2),T(7,2))\n")


def test_bound_table():
    table = {
        "Sum(T(3,2),T(5,2))": (2, "Thm1.2"),
        "C(3,2;Sum(T(3,2),T(5,2)))": (3, "Thm1.3"),
        "C(7,2;T(5,2))": (13, "Thm7.1(iii)"),
        "C(1,2;C(7,2;T(5,2)))": (13, "Thm7.1(ii)"),
    }
    for knot, (qmin, thm) in table.items():
        code, out = call("bound", knot, "--format", "json")
        best = json.loads(out)["best"]
        assert code == 0 and (best["qmin"], best["theorem"]) == (qmin, thm)


def test_json_is_bit_identical():
    argv = ("jsj", "C(3,2;Sum(T(3,2),HypPat(L,w=2;Hyp(K))))", "--format", "json")
    assert call(*argv) == call(*argv)


def test_quiet():
    assert call("certify", "T(5,2)", "1/3", "--quiet") == (0, "")


def test_oracle_subcommands():
    code, out = call("oracle", "h1", "--r", "5", "--s", "2", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out = call("oracle", "h1", "--kind", "composing", "--n-summands", "3", "--q-max", "4")
    assert code == 0 and "clean" in out
    code, out = call("oracle", "rs-lemma", "--q-max", "10", "--r-max", "10", "--s-min", "-10",
                     "--s-max", "10", "--r2-max", "10", "--s2-min", "-10", "--s2-max", "10")
    assert code == 0
    code, out = call("oracle", "rs-lemma", "--sharpness", "--format", "json")
    assert code == 0 and json.loads(out)["witnesses"]
    code, out = call("oracle", "torus-cable", "--q-max", "10", "--format", "json")
    assert code == 0 and json.loads(out)["stats"]["solutions"] > 0
    code, out = call("oracle", "composing-h1", "--m", "1", "--n", "3", "--slopes", "1/3", "2/3")
    assert (code, out) == (0, "homologous\n")
    assert call("oracle", "composing-h1", "--m", "0", "--n", "0", "--slopes", "1/0", "1/0")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surgcalc", "certify", "C(7,2;T(5,2))", "14/13"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("Characterizing (Thm 7.1(iii))")
