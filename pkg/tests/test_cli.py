import io
import json
import subprocess
import sys

import pytest

from affcell.cli import corpus_seeds, run_command
from affcell.fields import GF, QQ
from affcell.oracle import random_instance
from affcell.specfile import SpecSyntaxError, format_spec, parse_spec, spec_key

ONE_LAYER = """\
field Q
layer
  vars x
  ideal x^2 - x
  vdim 1
  phi [[1]]
end
"""

NILPOTENT = ONE_LAYER.replace("x^2 - x", "x^2")

TWO_LAYERS = """\
# a comment line
field Q
layer
  vars x, y          # two variables
  ideal x^2 - 1, y^2
  vdim 2
  phi [[1, x], [x, y]]
end
layer
  vars -
  ideal -
  vdim 1
  phi [[3/2]]
end
"""


def run(argv):
    out = io.StringIO()
    code = run_command(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"ok": ONE_LAYER, "x2": NILPOTENT, "two": TWO_LAYERS,
                       "bad": ONE_LAYER.replace("[[1]]", "[[1, 2]]"),
                       "invalid": "field Q\nlayer\nvars -\nideal -\nvdim 2\nphi [[0, 1], [0, 0]]\nend\n",
                       "hard": "field Q\nlayer\nvars x, y, z\nideal x^3 - y*z, y^3 - x*z^2 + 1, z^3 - x*y\n"
                               "vdim 1\nphi [[1]]\nend\n"}.items():
        p = tmp_path / f"{name}.cell"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_parse_example():
    spec = parse_spec(ONE_LAYER)
    assert spec.field == QQ and len(spec.layers) == 1
    layer = spec.layers[0]
    assert layer.vdim == 1 and layer.ring.dim == 2


def test_parse_two_layers_with_comments():
    spec = parse_spec(TWO_LAYERS)
    assert [l.vdim for l in spec.layers] == [2, 1]
    assert spec.layers[1].ring.ring.names == ()
    assert spec.layers[1].phi[0][0] == spec.layers[1].ring.ring.constant(QQ("3/2"))


def test_parse_sigma_and_prime_field():
    spec = parse_spec("field Fp 5\nlayer\nvars x\nideal x^2 - 1\nvdim 1\nphi [[1]]\nsigma x -> -x\nend\n")
    assert spec.field == GF(5)
    assert not spec.layers[0].sigma_is_identity


@pytest.mark.parametrize("text, line, fragment", [
    (ONE_LAYER.replace("[[1]]", "[[1], [1]]"), 6, "rows"),
    (ONE_LAYER.replace("[[1]]", "[[1, 2]]"), 6, "entries"),
    (ONE_LAYER.replace("field Q", "field Fp 6"), 1, "not prime"),
    (ONE_LAYER.replace("x^2 - x", "x^2 - z"), 4, "unknown variable"),
    (ONE_LAYER.replace("vdim 1", "vdim zero"), 5, "vdim"),
    (ONE_LAYER.replace("end\n", ""), 2, "unterminated"),
    ("layer\nend\n", 1, "field"),
    (ONE_LAYER.replace("vdim 1", "size 1"), 5, "unknown keyword"),
    (ONE_LAYER.replace("  vdim 1\n", ""), 2, "missing 'vdim'"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_parse_error_column_points_into_polynomial():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec(ONE_LAYER.replace("x^2 - x", "x^2 - $"))
    # "  ideal x^2 - $": the '$' sits at column 15
    assert (exc.value.line, exc.value.column) == (4, 15)


@pytest.mark.parametrize("text", [ONE_LAYER, TWO_LAYERS])
def test_round_trip_fixed(text):
    spec = parse_spec(text)
    again = parse_spec(format_spec(spec))
    assert spec_key(again) == spec_key(spec)
    assert format_spec(again) == format_spec(spec)


def test_round_trip_corpus():
    for seed in range(100):
        spec = random_instance(seed)
        assert spec_key(parse_spec(format_spec(spec))) == spec_key(spec)
    spec = parse_spec("field Fp 7\nlayer\nvars x\nideal x^2 - 1\nvdim 1\nphi [[1]]\nsigma x -> -x\nend\n")
    assert spec_key(parse_spec(format_spec(spec))) == spec_key(spec)


def test_check_examples(files):
    code, out = run(["check", "semisimple", files["x2"]])
    assert code == 0 and out.splitlines()[0] == "NO"
    code, out = run(["check", "semisimple", files["ok"]])
    assert code == 0 and out.splitlines()[0] == "YES"
    code, out = run(["check", "jacobson", files["x2"]])
    assert code == 0 and out.splitlines()[0] == "UNKNOWN"


def test_missing_file_and_syntax_errors(files, tmp_path):
    assert run(["check", "semisimple", str(tmp_path / "missing.cell")])[0] == 1
    assert run(["check", "semisimple", files["bad"]])[0] == 1
    assert run(["check", "nonsense", files["ok"]])[0] == 1
    assert run([])[0] == 1


def test_invalid_spec_exit_code(files):
    assert run(["check", "semisimple", files["invalid"]])[0] == 2
    code, out = run(["validate", files["invalid"]])
    assert code == 2 and "phi-compatibility" in out
    code, out = run(["validate", files["ok"], "--json"])
    assert code == 0 and json.loads(out) == {"valid": True, "issues": []}


def test_budget_exit_code(files, monkeypatch):
    monkeypatch.setenv("AFFCELL_MAX_PAIRS", "1")
    assert run(["check", "artinian", files["hard"]])[0] == 3


def test_bad_budget_setting(files, monkeypatch):
    monkeypatch.setenv("AFFCELL_MAX_PAIRS", "lots")
    assert run(["check", "artinian", files["ok"]])[0] == 2


def test_check_json_schema(files):
    code, out = run(["check", "semisimple", files["x2"], "--json"])
    data = json.loads(out)
    assert code == 0
    assert {"property", "answer", "layers", "citedStatement", "oracle"} <= set(data)
    assert data["answer"] == "NO"
    layer = data["layers"][0]
    assert {"index", "dimK", "radical", "detPhi", "detPhiUnit", "witness"} <= set(layer)
    assert {"answer", "minimal_polynomials"} <= set(layer["radical"])
    assert data["oracle"]["agrees"] is True


@pytest.mark.parametrize("prop", ["artinian", "semisimple", "jacobson", "semiprime", "separable"])
def test_every_property_exits_zero(files, prop):
    for name in ("ok", "x2", "two"):
        code, out = run(["check", prop, files[name], "--json"])
        assert code == 0
        assert json.loads(out)["answer"] in {"YES", "NO", "UNKNOWN"}


def test_asymptotic_and_radical(files):
    code, out = run(["asymptotic", files["two"], "--json"])
    assert code == 0 and json.loads(out)["dimK"] == 4 * 4 + 1
    code, out = run(["radical", files["x2"]])
    assert code == 0 and "radical dimension 1" in out and "criteria agree" in out
    code, out = run(["radical", files["ok"], "--json"])
    assert json.loads(out)["oracle"]["radicalDim"] == 0


def test_report_is_deterministic(files):
    a = run(["report", files["two"], "--json"])[1]
    b = run(["report", files["two"], "--json"])[1]
    assert a == b
    data = json.loads(a)
    assert set(data["verdicts"]) == {"artinian", "semisimple", "jacobson_semisimple", "semiprime", "separable"}
    assert "asymptoticCriterion" in data and "oracle" in data
    code, text = run(["report", files["two"]])
    assert code == 0 and "semisimple" in text


def test_corpus_command():
    code, out = run(["corpus", "--seed", "3", "--count", "10"])
    assert code == 0 and out.strip() == "10/10 oracle agreements"
    code, out = run(["corpus", "--seed", "3", "--count", "5", "--json"])
    assert json.loads(out)["agreements"] == 5
    assert corpus_seeds(3, 4) == corpus_seeds(3, 4)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "affcell", "check", "semisimple", files["x2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("NO")
