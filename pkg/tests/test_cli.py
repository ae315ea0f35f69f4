import io
import subprocess
import sys
from pathlib import Path

import pytest

from reghom.cli import main

CORPUS = Path(__file__).parent / "fixtures" / "corpus"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {
        "flat": "surface genus=1 boundary=1\nword sq = T[a1]^2\nword one = T[a1]\n",
        "trefoil": "surface genus=1 boundary=1\ntwist a1 -1\ntwist b1 -1\ncross a1 over b1 +\n",
        "plus": "seifert genus=1 boundary=1\n1 1\n0 1\n",
        "symmetric": "seifert genus=1 boundary=1\n0 0\n0 0\n",
        "empty": "",
        "pants": "surface genus=0 boundary=3\n",
        "bad": "surface genus=1 boundary=1\ncross a1 over q1 +\n",
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.srf"
        p.write_text(text)
        out[name] = str(p)
    return out


def kv(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


class TestValidate:
    def test_trefoil(self, files):
        code, out, _ = run("validate", files["trefoil"])
        assert code == 0
        assert out.splitlines()[0] == "valid: true"
        assert out.endswith("seifert genus=1 boundary=1\n-1 1\n0 -1\n")

    def test_not_seifert(self, files):
        code, _, err = run("validate", files["symmetric"])
        assert code == 2 and "NotSeifert" in err

    def test_empty(self, files):
        code, _, err = run("validate", files["empty"])
        assert code == 2 and "MissingSurfaceHeader" in err

    def test_position_reported(self, files):
        code, _, err = run("validate", files["bad"])
        assert code == 2
        assert kv(err)["line"] == "2" and kv(err)["col"] == "15"

    def test_missing_file(self, tmp_path):
        code, _, err = run("validate", str(tmp_path / "nope.srf"))
        assert code == 2 and "cannot read" in err


class TestMember:
    def test_true(self, files):
        assert run("member", files["trefoil"], "T[a1]")[:2] == (0, "member: true\n")

    def test_false_with_witness(self, files):
        code, out, _ = run("member", files["flat"], "T[a1]", "--witness")
        assert code == 0
        assert kv(out) == {"member": "false", "witness": "(0,1)", "witness_band": "b1"}

    def test_identity(self, files):
        assert run("member", files["flat"], "")[:2] == (0, "member: true\n")
        assert run("member", files["flat"])[:2] == (0, "member: true\n")

    def test_named_word(self, files):
        assert run("member", files["flat"], "--word", "one")[1] == "member: false\n"
        assert run("member", files["flat"], "sq")[1] == "member: true\n"

    def test_bad_word(self, files):
        code, _, err = run("member", files["flat"], "T[z9]")
        assert code == 2 and "WordSyntaxError" in err

    def test_radical_twists(self, files):
        assert run("member", files["pants"], "T[c1]^5 T[1,1]")[:2] == (0, "member: true\n")


class TestPasscount:
    def test_double_twist(self, files):
        assert run("passcount", files["flat"], "T[a1]^2")[1] == "signed_pass_count: 1\n"

    def test_trefoil(self, files):
        assert run("passcount", files["trefoil"], "--word", "T[a1]")[1] == "signed_pass_count: 0\n"

    def test_non_member(self, files):
        code, _, err = run("passcount", files["flat"], "T[a1]")
        assert code == 2 and "OddParity" in err and "not a member" in err


class TestSequence:
    def test_equivalent(self, files):
        code, out, _ = run("sequence", files["trefoil"], files["plus"])
        assert code == 0
        assert "pass 1 1 +\npass 2 2 +\n" in out
        assert kv(out)["net_signed_count"] == "2"

    def test_not_equivalent(self, files):
        code, out, _ = run("sequence", files["flat"], files["trefoil"])
        assert code == 3
        assert kv(out) == {
            "result": "not regularly homotopic", "witness": "(1,0)", "witness_radical": "false",
        }

    def test_self(self, files):
        code, out, _ = run("sequence", files["flat"], files["flat"])
        assert code == 0 and kv(out)["net_signed_count"] == "0" and "pass" not in out.replace("result", "")

    def test_dimension_mismatch(self, files):
        assert run("sequence", files["flat"], files["pants"])[0] == 2


class TestVerify:
    def test_roundtrip(self, files, tmp_path):
        _, out, _ = run("sequence", files["trefoil"], files["plus"])
        seq = tmp_path / "seq.txt"
        seq.write_text("".join(l + "\n" for l in out.splitlines() if l.startswith("pass ")))
        code, out, _ = run("verify", files["trefoil"], str(seq), files["plus"])
        assert code == 0 and kv(out) == {"verified": "true", "net_signed_count": "2"}

    def test_wrong(self, files, tmp_path):
        seq = tmp_path / "seq.txt"
        seq.write_text("pass 1 2 +\n")
        code, out, _ = run("verify", files["trefoil"], str(seq), files["trefoil"])
        assert code == 3 and kv(out)["verified"] == "false"


class TestSelftest:
    def test_passes(self):
        code, out, _ = run("selftest", "--seed", "1", "--size", "6", "--cases", "40")
        assert code == 0
        assert kv(out)["all"] == "pass"
        assert "fail" not in out

    def test_deterministic(self):
        a = run("selftest", "--seed", "9", "--size", "4", "--cases", "20")[1]
        b = run("selftest", "--seed", "9", "--size", "4", "--cases", "20")[1]
        c = run("selftest", "--seed", "10", "--size", "4", "--cases", "20")[1]
        assert a == b
        assert a != c

    def test_size_zero_vacuous(self):
        code, out, _ = run("selftest", "--size", "0")
        assert code == 0 and "cases=0" in out and kv(out)["all"] == "pass"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "reghom", "validate", str(CORPUS / "trefoil.srf")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("valid: true\n")
