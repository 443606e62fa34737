import json

import numpy as np
import pytest

from sbcubature.cli import main

SQUARE = {
    "curves": [
        {"type": "segment", "from": [0, 0], "to": [1, 0]},
        {"type": "segment", "from": [1, 0], "to": [1, 1]},
        {"type": "segment", "from": [1, 1], "to": [0, 1]},
        {"type": "segment", "from": [0, 1], "to": [0, 0]},
    ]
}


@pytest.fixture
def square_file(tmp_path):
    p = tmp_path / "square.json"
    p.write_text(json.dumps(SQUARE))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_integrate_constant(square_file, capsys):
    code, out = run(capsys, ["integrate", square_file, "expr:1", "1", "1"])
    assert code == 0
    assert out.strip() == "1.0000000000000000"


def test_missing_domain_file_exit_2(capsys):
    assert main(["integrate", "/no/such/file.json", "expr:1", "1", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_expression_exit_2(capsys):
    assert main(["integrate", "builtin:T1", "expr:x +", "1", "1"]) == 2


def test_unknown_domain_key_exit_2(tmp_path, capsys):
    doc = dict(SQUARE, extra=1)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["integrate", str(p), "expr:1", "1", "1"]) == 2


def test_nonfinite_integrand_exit_3(square_file, capsys):
    assert main(["integrate", square_file, "expr:1/0", "1", "1"]) == 3
    assert "evaluation error" in capsys.readouterr().err


def test_rule_csv(square_file, capsys):
    code, out = run(capsys, ["rule", square_file, "1", "1"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,w"
    assert len(lines) == 5
    w = [float(s.split(",")[2]) for s in lines[1:]]
    np.testing.assert_allclose(w, 0.25)


def test_rule_vertex_center_drops_edges(square_file, capsys):
    code, out = run(capsys, ["rule", square_file, "2", "2", "--center", "vertex:0"])
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 2 * (2 * 2)  # two surviving edges


def test_rule_reproduces_integrate(square_file, capsys):
    _, out = run(capsys, ["rule", square_file, "3", "2"])
    rows = np.array(
        [[float(v) for v in line.split(",")] for line in out.strip().splitlines()[1:]]
    )
    dot = np.dot(rows[:, 0] ** 2 * rows[:, 1], rows[:, 2])
    _, out = run(capsys, ["integrate", square_file, "expr:x^2*y", "3", "2"])
    assert dot == pytest.approx(float(out), abs=1e-15)
    assert float(out) == pytest.approx(1.0 / 6.0, abs=1e-15)


def test_output_is_deterministic(square_file, capsys):
    _, a = run(capsys, ["rule", square_file, "7", "5", "--center", "custom:0.3,0.4"])
    _, b = run(capsys, ["rule", square_file, "7", "5", "--center", "custom:0.3,0.4"])
    assert a == b


def test_convergence_sweep(capsys):
    code, out = run(
        capsys,
        ["convergence", "builtin:convex_quad", "builtin:fC2", "1", "6", "--sweep", "xi"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,abs_err,rel_err"
    errs = {int(r.split(",")[0]): float(r.split(",")[2]) for r in lines[1:]}
    assert set(errs) == set(range(1, 7))
    assert errs[1] > 1e-6
    assert errs[4] <= 1e-13 and errs[6] <= 1e-13


def test_singular_flags(capsys):
    args = [
        "integrate", "builtin:T3", "builtin:fS1", "2", "60",
        "--beta", "0.5", "--xc", "0", "0",
        "--radial", "jacobi", "--t-transform", "r1",
    ]
    code, out = run(capsys, args)
    assert code == 0
    ref_args = [
        "integrate", "builtin:T3", "builtin:fS1", "64", "64",
        "--beta", "0.5", "--xc", "0", "0", "--radial", "jacobi",
    ]
    _, ref = run(capsys, ref_args)
    assert float(out) == pytest.approx(float(ref), rel=1e-12)


def test_hni_flag(capsys):
    code, out = run(
        capsys, ["integrate", "builtin:convex_quad", "expr:x^2*y", "1", "4", "--hni", "3"]
    )
    assert code == 0
    _, ref = run(capsys, ["integrate", "builtin:convex_quad", "expr:x^2*y", "3", "2"])
    assert float(out) == pytest.approx(float(ref), rel=1e-12)


def test_distfield_center_of_circle(capsys):
    code, out = run(capsys, ["distfield", "builtin:circle", "--grid", "3", "--p", "2"])
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 9
    center = lines[4].split(",")
    assert abs(float(center[0])) < 1e-12 and abs(float(center[1])) < 1e-12
    assert float(center[2]) == pytest.approx((2 * np.pi) ** -0.5, rel=1e-6)


def test_distfield_marks_exterior_cells_empty(capsys):
    # on a 4x4 grid over the circle's bounding box the corner cells at
    # (+-0.75, +-0.75) lie outside the disk
    _, out = run(capsys, ["distfield", "builtin:circle", "--grid", "4"])
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 16
    corners = [lines[i].split(",")[2] for i in (0, 3, 12, 15)]
    assert all(c == "" for c in corners)
    assert sum(1 for s in lines if s.split(",")[2] != "") == 12


def test_tmvi_linear_field(capsys):
    code, out = run(
        capsys, ["tmvi", "builtin:circle", "expr:1+x-2*y", "--grid", "3"]
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        x, y, v = line.split(",")
        if v:
            assert float(v) == pytest.approx(
                1 + float(x) - 2 * float(y), abs=1e-9
            )
