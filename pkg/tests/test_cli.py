import json

import pytest
from click.testing import CliRunner

from capoff.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def run_json(*args):
    res = run(*args, "--json")
    assert res.exit_code == 0, res.output
    return json.loads(res.output)


def test_fdtc_pants():
    out = run_json("fdtc", "--surface", "P", "--word", "B2^3*B1^-2*B3", "--boundary", "B1")
    assert out["tau"] == {"num": -2, "den": 1}
    text = run("fdtc", "--surface", "P", "--word", "B2^3*B1^-2*B3", "--boundary", "B1").output
    assert "tau: -2" in text


def test_cover_then_fdtc():
    out = run_json("cover", "--surface", "A", "--word", "C^2", "--n", "3")
    assert out["word"] == "C^6"
    again = run_json("fdtc", "--surface", "A", "--word", out["word"], "--boundary", "B1")
    assert again["tau"] == {"num": 6, "den": 1}
    assert run("cover", "--surface", "A", "--word", "C", "--n", "0").exit_code == 2


def test_collar_standard():
    out = run_json("collar", "--winding", "0")
    assert [t["class"] for t in out["triangles"]] == ["standard"]
    assert out["triangles"][0]["n_p"] == 0
    assert run("collar", "--winding", "40").exit_code == 1


def test_cap():
    out = run_json("cap", "--surface", "P", "--word", "B2^2*B1^-2*B3", "--boundary", "B1")
    assert out["surface"] == "A" and out["word"] == "C^3"
    assert out["fdtc"]["B1"] == {"tau": {"num": 3, "den": 1}}
    assert run("cap", "--surface", "S1_1", "--word", "a", "--boundary", "d").exit_code == 1


def test_penner():
    out = run_json("penner", "--surface", "S1_2", "--word", "a * b^-1 * c * (a*b)^-6", "--plus", "a,c", "--minus", "b")
    assert out["verdict"] == "pA_certified"
    out = run_json("penner", "--surface", "S1_2", "--word", "a^3")
    assert out["reason"] == "filling fails"


def test_infer_from_values():
    out = run_json("infer", "--tau", "B1=-1/2", "--capped-tau", "2")
    assert any(c["conclusion"] == "cover_not_Lspace" and c["params"] == [3] for c in out["certificates"])
    out = run_json("infer", "--tau", "B1=0", "--tau", "B2=0", "--capped-tau", "0")
    assert out["certificates"] == []
    bad = run("infer", "--tau", "B1=[-3/2,-1/2]", "--capped-tau", "2")
    assert bad.exit_code == 1 and "InsufficientResolution" in bad.output


def test_infer_from_word():
    # sign-condition family with n1 = -1, n2 = 1: capped coefficient n2 = 1 and phi_0 pA
    out = run_json("infer", "--surface", "S1_2", "--word", "B1^-1*B2*a*b^-1*c", "--hyp", "Y0_is_QHS=true")
    assert out["fdtc"]["B1"]["tau"] == {"num": -1, "den": 1}
    assert out["capped"]["fdtc"]["tau"] == {"num": 1, "den": 1}
    assert any(c["conclusion"] == "not_Lspace" for c in out["certificates"])


def test_infer_conflict_exit_code():
    res = run("infer", "--tau", "B1=0", "--capped-tau", "3", "--hyp", "c_red_capped_nonzero=false")
    assert res.exit_code == 1


@pytest.mark.parametrize("args", [
    ("fdtc", "--surface", "S1_2", "--word", "a**b", "--boundary", "B1"),
    ("fdtc", "--surface", "S1_2", "--word", "B1^0", "--boundary", "B1"),
    ("fdtc", "--surface", "S1_2", "--word", "q", "--boundary", "B1"),
    ("fdtc", "--surface", "S9", "--word", "a", "--boundary", "B1"),
    ("infer", "--hyp", "nonsense=1", "--tau", "B1=0"),
    ("infer",),
    ("nosuchcommand",),
])
def test_usage_errors(args):
    assert run(*args).exit_code == 2


def test_unresolved_is_domain_error():
    res = run("fdtc", "--surface", "S1_1", "--word", "a*b", "--boundary", "d")
    assert res.exit_code == 1 and "Unresolved" in res.output


def test_verify_catalog():
    out = run_json("verify-catalog")
    assert all(v["ok"] for v in out.values())


def test_help_shows_defaults():
    text = " ".join(run("fdtc", "--help").output.split())
    assert "default: 16" in text and "default: 8" in text
    assert "CAPOFF_LENGTH_CAP" in run("--help").output


def test_census_cli(tmp_path):
    out = tmp_path / "c.jsonl"
    summary = run_json("census", "--surface", "A", "--max-syllables", "1", "--exponent-bound", "2", "--output", str(out))
    assert summary["written"] == 4
    assert run_json("census", "--surface", "A", "--max-syllables", "1", "--exponent-bound", "2", "--output",
                    str(out), "--replay") == {"mismatched_records": []}


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "capoff", "collar", "--winding", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and "nonstandard(1)" in res.stdout
