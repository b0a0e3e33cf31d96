import io
import json
import subprocess
import sys

import pytest

from vfcert.cli import (
    EXIT_DATAERR,
    EXIT_INCONCLUSIVE,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    run,
)
from vfcert.polyring import parse_poly


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fields(tmp_path):
    def f(name, comps, vars=("x", "y")):
        return write(tmp_path, name, {"vars": list(vars), "components": comps})
    return {
        "crafted": f("crafted.json", ["y + x^2", "x + y + y^2"]),
        "golden": f("golden.json", ["y", "x + y"]),
        "diag": f("diag.json", ["x", "2*y"]),
        "swap": f("swap.json", ["y", "x"]),
        "dx": f("dx.json", ["1", "0"]),
        "rational": f("rational.json", ["1/x", "y"]),
        "line": f("line.json", ["x*y", "x*(x + y)"]),
    }


def test_certify_exit_codes(fields):
    code, out, _ = call("certify", fields["crafted"], "--point", "0,0", "--max-degree", 3, "--max-height", 50)
    assert code == EXIT_OK and "EVIDENCE_FOR_MINIMALITY(D=3, K=50)" in out
    assert "not a proof" in out
    code, out, _ = call("certify", fields["golden"], "--point", "0,0", "--max-degree", 2)
    assert code == EXIT_NEGATIVE and "HYPOTHESIS_B_FAILS" in out
    code, out, _ = call("certify", fields["diag"], "--point", "0,0", "--max-degree", 1)
    assert code == EXIT_NEGATIVE and "HYPOTHESIS_A_FAILS" in out
    code, out, _ = call("certify", fields["golden"], "--point", "1,0")
    assert code == EXIT_NEGATIVE and "not singular" in out


def test_certify_json_is_stable(fields):
    args = ("certify", fields["crafted"], "--point", "0,0", "--max-degree", 2, "--max-height", 10, "--json")
    a, b = call(*args), call(*args)
    assert a == b
    data = json.loads(a[1])
    assert data["verdict"] == "EVIDENCE_FOR_MINIMALITY" and data["bounds"] == {"D": 2, "K": 10}


def test_certify_budget_is_inconclusive(fields):
    code, out, _ = call("certify", fields["crafted"], "--point", "0,0", "--max-degree", 2, "--budget", 3)
    assert code == EXIT_INCONCLUSIVE and "INCONCLUSIVE" in out


def test_usage_errors(fields, tmp_path):
    assert call()[0] == EXIT_USAGE
    assert call("frobnicate", fields["diag"])[0] == EXIT_USAGE
    assert call("certify", fields["diag"])[0] == EXIT_USAGE  # no --point
    assert call("certify", fields["diag"], "--point", "0,0,0")[0] == EXIT_USAGE
    assert call("resonance", str(tmp_path / "missing.json"), "--point", "0,0")[0] == EXIT_USAGE
    assert call("bracket", fields["diag"])[0] == EXIT_USAGE
    assert call("pole-order", fields["diag"])[0] == EXIT_USAGE


def test_data_errors(tmp_path, fields):
    bad = write(tmp_path, "bad.json", "{not json")
    code, _, err = call("singular", bad)
    assert code == EXIT_DATAERR and "invalid JSON" in err
    garbage = write(tmp_path, "garbage.json", {"vars": ["x"], "components": ["x +* 2"]})
    code, _, err = call("singular", garbage)
    assert code == EXIT_DATAERR and "cannot parse" in err
    code, _, _ = call("darboux", fields["rational"])
    assert code == EXIT_DATAERR
    code, _, _ = call("singular", fields["diag"], "--point", "a,b")
    assert code == EXIT_DATAERR


def test_prolong_and_bracket(fields):
    code, out, _ = call("prolong", fields["swap"], "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["field"]["components"] == ["y", "x", "-y2", "-y1"]
    (g,) = data["canonical_hypersurface"]["generators"]
    amb = ("x", "y", "y1", "y2")
    assert parse_poly(g, amb) == parse_poly("y*y1 + x*y2", amb)
    code, out, _ = call("bracket", fields["diag"], fields["dx"], "--json")
    assert code == EXIT_OK and json.loads(out)["components"] == ["-1", "0"]


def test_singular_and_linpart(fields):
    code, out, _ = call("singular", fields["diag"], "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["finite"] and data["rational_points"] == [["0", "0"]]
    code, out, _ = call("singular", fields["line"], "--json")
    assert json.loads(out)["finite"] is False
    code, out, _ = call("linpart", fields["golden"], "--point", "0,0", "--json")
    assert code == EXIT_OK and json.loads(out)["matrix"] == [["0", "1"], ["1", "1"]]


def test_resonance_verb(fields):
    assert call("resonance", fields["diag"], "--point", "0,0")[0] == EXIT_NEGATIVE
    code, out, _ = call("resonance", fields["golden"], "--point", "0,0", "--max-height", 50, "--json")
    assert code == EXIT_OK and json.loads(out)["status"] == "NONRESONANT_UP_TO"


def test_darboux_verb(fields):
    code, out, _ = call("darboux", fields["diag"], "--max-degree", 1, "--json")
    data = json.loads(out)
    assert code == EXIT_OK and {"g": "x", "h": "1"} in data["found"]
    code, out, _ = call("darboux", fields["crafted"], "--max-degree", 2)
    assert code == EXIT_OK and "no invariant Q-Darboux hypersurface of degree <= 2" in out


def test_invariant_and_codim1(fields, tmp_path):
    ideal = write(tmp_path, "ideal.json", {"vars": ["x", "y"], "generators": ["x"]})
    assert call("invariant", fields["diag"], "--ideal", ideal)[0] == EXIT_OK
    assert call("invariant", fields["golden"], "--ideal", ideal)[0] == EXIT_NEGATIVE
    cone = write(tmp_path, "cone.json", {"vars": ["x", "y"], "spanning": [["1", "0"]]})
    assert call("invariant", fields["diag"], "--ideal", cone)[0] == EXIT_OK
    form = write(tmp_path, "form.json", {"vars": ["x", "y"], "components": ["2*y", "-x"]})
    code, out, _ = call("codim1", fields["diag"], "--oneform", form, "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["cofactor"] == "3" and data["tangency_identity"]
    bad_form = write(tmp_path, "bad_form.json", {"vars": ["x", "y"], "components": ["1", "0"]})
    assert call("codim1", fields["swap"], "--oneform", bad_form)[0] == EXIT_NEGATIVE


def test_projective_verbs(fields, tmp_path):
    code, out, _ = call("homogenize", fields["swap"], "--json")
    h = json.loads(out)
    assert code == EXIT_OK and h["components"] == ["0", "X2", "X1"]
    hfile = write(tmp_path, "h.json", h)
    code, out, _ = call("dehomogenize", hfile, "--json")
    assert code == EXIT_OK and json.loads(out)["components"] == ["y", "x"]
    code, out, _ = call("chart", hfile, "--chart", 0, "--json")
    assert code == EXIT_OK and json.loads(out)["hyperplane_invariant"]
    assert call("chart", hfile, "--chart", 5)[0] == EXIT_USAGE
    nonadapted = write(tmp_path, "na.json", {"vars": ["X0", "X1"], "components": ["X1", "X0"], "twist_degree": 0})
    assert call("dehomogenize", nonadapted)[0] == EXIT_NEGATIVE
    code, out, _ = call("pole-order", fields["rational"], "--hyperplane", "x")
    assert code == EXIT_OK and out.strip() == "1"


def test_jet_ode_and_structure(fields, tmp_path):
    v = write(tmp_path, "osc.json", {"vars": ["x", "y"], "components": ["y", "-x"]})
    code, out, _ = call("jet-ode", v, "--observable", "x", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["principal"]
    code, out, _ = call("structure", fields["diag"], "--json")
    assert code == EXIT_OK and json.loads(out)["sing_finite"]


def test_console_entry_point(fields):
    proc = subprocess.run(
        [sys.executable, "-m", "vfcert.cli", "certify", fields["diag"], "--point", "0,0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_NEGATIVE and "HYPOTHESIS_A_FAILS" in proc.stdout
