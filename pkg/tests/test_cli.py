import contextlib
import io
import json
import subprocess
import sys

import pytest
from hypothesis import assume, given, settings, strategies as st

from strategies import arch_points, line_points
from hybridberk.cli import main
from hybridberk.core_points import ArchPoint, default_probes, seminorm
from hybridberk.serialization import point_from_json, point_to_json

ARCH2 = '{"kind":"arch","z":{"re":"2","im":"0"},"t":"1"}'
TRIV_HALF = '{"kind":"triv","p":["0","1"],"r":"0.5"}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def invoke(*argv):
    """main() with its output captured, usable inside hypothesis examples."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_eval_examples(capsys):
    assert run(capsys, "eval", "--point", TRIV_HALF, "--poly", '["0","0","1"]')[1] == "0.25 exact\n"
    assert run(capsys, "eval", "--point", ARCH2, "--poly", '["0","1"]')[1] == \
        "2 exact-input approx-eval\n"


def test_eval_json_output(capsys):
    code, out, _ = run(capsys, "--json", "eval", "--point", TRIV_HALF, "--poly", '["0","0","1"]')
    assert code == 0
    assert json.loads(out) == {"value": "0.25", "exactness": "exact", "fraction": "1/4"}


def test_eval_files(capsys, tmp_path):
    pt, poly = tmp_path / "x.json", tmp_path / "f.json"
    pt.write_text(TRIV_HALF)
    poly.write_text('["0","0","1"]')
    assert run(capsys, "eval", "--point", str(pt), "--poly", str(poly))[1] == "0.25 exact\n"


@pytest.mark.parametrize("point, field", [
    ('{"kind":"arch","z":{"re":"2"}}', "t"),
    ('{"kind":"triv","p":["0","1"],"r":"-1"}', "r"),
    ('{"kind":"triv","p":["0","2"],"r":"0.5"}', "p"),
    ('{"kind":"moon"}', "kind"),
    ('{"kind": ', "point"),
])
def test_malformed_input_exits_2_naming_the_field(capsys, point, field):
    code, _, err = run(capsys, "eval", "--point", point, "--poly", '["1"]')
    assert code == 2
    assert field in err


def test_render_io_error_exits_3(capsys, tmp_path):
    code, _, err = run(capsys, "render", "trivline", "--out", str(tmp_path / "no" / "x.svg"))
    assert code == 3 and err


def test_render_to_file(capsys, tmp_path):
    out = tmp_path / "t.svg"
    assert run(capsys, "render", "trivline", "--n", "5", "--out", str(out))[0] == 0
    assert out.read_text().count('class="branch"') == 5


def test_classify_report(capsys):
    code, out, _ = run(capsys, "classify", "--point",
                       '{"kind":"arch","z":{"re":"0.5","im":"0"},"t":"0.5"}', "--disc", "0,1")
    rep = json.loads(out)
    assert code == 0 and rep["lambda"] == 0.5
    assert {"disc": "T", "delta": 1.0, "tag": "D", "member": True} in rep["memberships"]


def test_classify_default_schedule(capsys):
    rep = json.loads(run(capsys, "classify", "--point", TRIV_HALF)[1])
    assert {r["disc"] for r in rep["memberships"]} >= {"infinity", "T", "T - 1"}


def test_retract_rz_example(capsys):
    code, out, _ = run(capsys, "retract", "--map", "rz", "--time", "1", "--point",
                       '{"kind":"arch","z":{"re":"2","im":"0"},"t":"0.5"}')
    y = point_from_json(json.loads(out))
    assert code == 0 and y.z == pytest.approx(0.5) and y.t == 0.5


def test_retract_trace(capsys):
    code, out, _ = run(capsys, "retract", "--map", "cyl", "--time", "1", "--trace", "5", "--point",
                       '{"kind":"arch","z":{"re":"0.2","im":"0.1"},"t":"0.5"}')
    trace = json.loads(out)
    assert code == 0 and [s["t"] for s in trace] == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_retract_global_truncation_warning(capsys):
    code, out, err = run(capsys, "retract", "--map", "global", "--time", "1", "--point",
                         '{"kind":"arch","z":{"re":"-0.9999","im":"0"},"t":"0.01"}')
    assert code == 0 and "truncation" in err
    assert json.loads(out)["kind"] == "triv"


def test_retract_disc_delta_too_large(capsys):
    code, _, err = run(capsys, "retract", "--map", "disc:-2,0,1", "--time", "0.5", "--delta", "0.9",
                       "--point", ARCH2)
    assert code == 2 and "delta" in err


def test_skeleton_examples(capsys):
    code, out, _ = run(capsys, "skeleton", "--dim", "1", "--base", "hyb:3", "--t", "1", "--point",
                       '{"kind":"gauss","center":["3"],"radii":["1/27"]}')
    assert code == 0
    assert json.loads(out) == {"kind": "gauss", "base": "hyb:3", "rho": "1", "center": ["0"],
                               "radii": ["1/3"]}
    code, out, _ = run(capsys, "skeleton", "--base", "hyb:3", "--t", "1/2", "--point",
                       '{"kind":"gauss","center":["6"],"radii":["0"]}',
                       "--f", '{"terms":[[[1],"1"],[[0],"3"]]}')
    assert out == "0.166666666667 exact\n"


def test_skeleton_J_needs_skeleton_point(capsys):
    code, _, _ = run(capsys, "skeleton", "--op", "J", "--base", "hyb:3", "--t", "1/2", "--point",
                     '{"kind":"gauss","center":["6"],"radii":["0"]}')
    assert code == 2


def test_spectrum_report(capsys, tmp_path):
    svg = tmp_path / "s.svg"
    code, out, _ = run(capsys, "spectrum", "--point", '{"branch":"prime","p":3,"c":"1/4"}',
                       "--render", str(svg))
    rep = json.loads(out)
    assert code == 0 and rep["cover"] == "NonArch" and rep["ht"] == "0.25"
    assert rep["primes"][:4] == [2, 3, 5, 7]
    assert svg.read_text().count('class="prime"') == 10


def test_retract_integers(capsys):
    code, out, _ = run(capsys, "retract-integers", "--time", "1", "--point",
                       '{"kind":"arch","field":"Q","z":{"re":"0","im":"0"},"t":"0.04"}')
    assert code == 0 and json.loads(out)["kind"] in ("triv", "gauss")


def test_selftest_json(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "selftest", "--suite", "points", "--trials", "20",
                       "--json", str(dest))
    rep = json.loads(dest.read_text())
    assert code == 0 and rep["ok"] and "selftest ok" in out


def test_global_flags_after_subcommand(capsys):
    a = run(capsys, "--json", "eval", "--point", TRIV_HALF, "--poly", '["0","1"]')[1]
    b = run(capsys, "eval", "--json", "--point", TRIV_HALF, "--poly", '["0","1"]')[1]
    assert a == b and json.loads(a)["fraction"] == "1/2"


# ---------------------------------------------------------- invariants

MAPS = ["rz", "R", "cyl", "infinity", "global", "disc:-1,1"]


@settings(max_examples=40)
@given(line_points(), st.sampled_from(MAPS), st.sampled_from(["0", "1/4", "1/2", "1"]))
def test_retract_json_roundtrip(x, m, t):
    extra = ["--delta", "0.5", "--delta-prime", "0.25"] if m in ("R", "disc:-1,1") else []
    assume(not (extra and isinstance(x, ArchPoint) and x.t > 0.5))  # domain is lambda <= delta
    code, out, err = invoke("retract", "--map", m, "--time", t, "--point",
                         json.dumps(point_to_json(x)), *extra)
    assert code == 0, err
    data = json.loads(out)
    y = point_from_json(data)
    again = point_from_json(json.loads(json.dumps(point_to_json(y))))
    for f in default_probes(y.field):
        assert seminorm(again, f).same(seminorm(y, f), 1e-12)
    assert point_to_json(again) == data


@settings(max_examples=10)
@given(arch_points())
def test_cli_output_is_deterministic(x):
    argv = ["retract", "--map", "global", "--time", "3/4", "--point", json.dumps(point_to_json(x))]
    assert invoke(*argv)[1] == invoke(*argv)[1]


def test_console_script_is_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "hybridberk.cli", "render", "spectrumZ"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"<svg")
