import json

import numpy as np
import pytest

from mlfock import io as mio
from mlfock.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, build_config, build_parser, main
from mlfock.hermite import HermiteExpansion, hermite_functions
from mlfock.quaternion import QMLFockElement, Quaternion
from mlfock.transform import MLFockElement


def test_format_float():
    assert mio.format_float(1.0) == "1.0000000000000000e+00"
    assert mio.format_float(-0.1) == "-1.0000000000000001e-01"
    assert mio.format_float(float("nan")) == "NaN"
    assert json.loads(mio.dumps([float("inf")])) == [float("inf")]


def test_dumps_deterministic_and_valid():
    obj = {"b": [1, 2.5, True, None], "a": {"x": [[1.0, 0.0]]}, "f": []}
    text = mio.dumps(obj)
    assert text == mio.dumps(obj) and text.endswith("\n")
    back = json.loads(text)
    assert list(back) == ["b", "a", "f"]
    assert back["b"] == [1, 2.5, True, None]


def test_element_round_trip(tmp_path):
    f = MLFockElement(1.5, np.array([1 + 2j, -0.25, 3e-17j]))
    mio.write_element(f, tmp_path / "f.json")
    g = mio.read_element(tmp_path / "f.json")
    assert g.q == 1.5 and np.array_equal(g.coeffs, f.coeffs)
    phi = HermiteExpansion(np.array([0.1, 0.2j]))
    mio.write_expansion(phi, tmp_path / "p.json")
    assert np.array_equal(mio.read_expansion(tmp_path / "p.json").coeffs, phi.coeffs)


def test_quaternion_round_trip():
    p = Quaternion(1, -2, 0.5, 3)
    assert mio.quaternion_from_list(mio.quaternion_to_list(p)) == p
    f = QMLFockElement(2.0, np.arange(8.0).reshape(2, 4))
    g = mio.qelement_from_dict(json.loads(mio.dumps(mio.qelement_to_dict(f))))
    assert np.array_equal(g.coeffs, f.coeffs)


@pytest.mark.parametrize(
    "text", ["{", '{"q": 1}', '{"q": 1, "coeffs": [[1, 2, 3]]}', '{"q": 1, "coeffs": 5}']
)
def test_element_parse_errors(text):
    with pytest.raises(mio.FormatError):
        mio.element_from_dict(mio.loads(text))


def test_csv_round_trip_and_errors():
    x = np.array([-1.0, 0.0, 2.0])
    v = np.array([1 + 1j, -2, 0.5j])
    x2, v2 = mio.samples_from_csv(mio.samples_to_csv(x, v))
    assert np.array_equal(x, x2) and np.array_equal(v, v2)
    x3, v3 = mio.samples_from_csv("0,1\n1,2\n")
    assert np.array_equal(v3, [1, 2])
    with pytest.raises(mio.FormatError):
        mio.samples_from_csv("x,re,im\n0,abc,0\n")


def test_table_csv():
    text = mio.table_to_csv([{"a": 1, "b": None, "c": True, "d": 0.5}], ["a", "b", "c", "d"])
    assert text == "a,b,c,d\n1,,true,5.0000000000000000e-01\n"


# CLI


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_transform_basis_function(tmp_path, capsys):
    x = np.linspace(-6, 6, 241)
    (tmp_path / "s.csv").write_text(mio.samples_to_csv(x, hermite_functions(2, x)[2]))
    code, out, _ = run(["transform", str(tmp_path / "s.csv"), "--q", "2", "--hermite-order", "10", "--trunc", "10"], capsys)
    assert code == EXIT_OK
    f = mio.element_from_dict(json.loads(out))
    assert f.q == 2.0
    assert abs(f.coeffs[2] - 1) < 1e-10
    assert np.max(np.abs(np.delete(f.coeffs, 2))) < 1e-10


def test_transform_empty_signal(tmp_path, capsys):
    (tmp_path / "e.json").write_text('{"coeffs": []}')
    code, out, _ = run(["transform", str(tmp_path / "e.json")], capsys)
    assert code == EXIT_OK
    f = mio.element_from_dict(json.loads(out))
    assert f.degree == -1 and f.norm() == 0


def test_transform_inverse_round_trip(tmp_path, capsys):
    c = [[0.5, 0.0], [0.0, -1.0], [0.25, 0.25]]
    (tmp_path / "p.json").write_text(json.dumps({"coeffs": c}))
    code, _, _ = run(["transform", str(tmp_path / "p.json"), "--q", "0.5", "--out", str(tmp_path / "f.json")], capsys)
    assert code == EXIT_OK
    code, out, err = run(["inverse", str(tmp_path / "f.json"), "--grid=-2:2:9", "--check"], capsys)
    assert code == EXIT_OK and "max path discrepancy" in err
    x, v = mio.samples_from_csv(out)
    phi = HermiteExpansion(np.array([0.5, -1j, 0.25 + 0.25j]))
    assert np.max(np.abs(v - phi(x))) < 1e-12


def test_inverse_check_failure_exit(tmp_path, capsys):
    (tmp_path / "f.json").write_text('{"q": 1.0, "coeffs": [[1, 0], [0, 1]]}')
    code, _, _ = run(["inverse", str(tmp_path / "f.json"), "--grid=-1:1:3", "--check", "--tol", "1e-300"], capsys)
    assert code == EXIT_VERIFY


def test_inverse_grid_file(tmp_path, capsys):
    (tmp_path / "f.json").write_text('{"q": 1.0, "coeffs": [[1, 0]]}')
    (tmp_path / "g.csv").write_text("x\n0\n1\n")
    code, out, _ = run(["inverse", str(tmp_path / "f.json"), "--grid", str(tmp_path / "g.csv")], capsys)
    x, v = mio.samples_from_csv(out)
    assert code == EXIT_OK and np.array_equal(x, [0, 1])
    assert np.allclose(v, hermite_functions(0, x)[0])


@pytest.mark.parametrize(
    "argv",
    [
        ["transform", "/nonexistent/file.json"],
        ["ml-eval", "abc"],
        ["conjecture", "--q", "1.5"],
        ["ml-eval", "1", "--q", "-1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_USAGE


def test_bad_json_and_budget(tmp_path, capsys):
    (tmp_path / "bad.json").write_text('{"coeffs": ')
    assert run(["transform", str(tmp_path / "bad.json")], capsys)[0] == EXIT_USAGE
    (tmp_path / "big.json").write_text(json.dumps({"coeffs": [1.0] * 12}))
    assert run(["transform", str(tmp_path / "big.json"), "--trunc", "5"], capsys)[0] == EXIT_USAGE


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_defaults_precedence(tmp_path):
    path = tmp_path / "d.json"
    path.write_text('{"q": 3.0, "seed": 5, "truncation": 20}')
    parser = build_parser()
    env = {"MLFOCK_DEFAULTS": str(path)}
    cfg = build_config(parser.parse_args(["report", "--seed", "9"]), env)
    assert cfg.q.q == 3.0 and cfg.seed == 9 and cfg.truncation == 20
    cfg = build_config(parser.parse_args(["report"]), {})
    assert cfg.q.q == 1.0 and cfg.seed == 0
    path.write_text('{"bogus": 1}')
    with pytest.raises(Exception, match="unknown keys"):
        build_config(parser.parse_args(["report"]), env)


def test_defaults_env_in_main(tmp_path, capsys, monkeypatch):
    path = tmp_path / "d.json"
    path.write_text('{"q": 2.0}')
    monkeypatch.setenv("MLFOCK_DEFAULTS", str(path))
    code, out, _ = run(["ml-eval", "1", "--tol", "1e-15"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK and d["q"] == 2.0
    assert d["results"][0]["value"][0] == pytest.approx(np.cosh(1.0), rel=1e-14)


def test_ml_eval_values(capsys):
    code, out, _ = run(["ml-eval", "1", "2i", "--q", "1", "--tol", "1e-15"], capsys)
    res = json.loads(out)["results"]
    assert res[0]["value"][0] == pytest.approx(np.e, rel=1e-14)
    assert complex(*res[1]["value"]) == pytest.approx(np.exp(2j), rel=1e-14)


def test_commutator_table_cli(capsys):
    code, out, err = run(["commutator-table", "--orders", "2", "3", "0.5", "--n-max", "3"], capsys)
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert lines[0] == "q,n,beta_gamma,beta_paper_formula_if_any,match_flag"
    assert len(lines) == 1 + 9
    assert "misprint" in err


def test_conjecture_cli(capsys):
    code, out, _ = run(["conjecture", "--q", "3", "--degree", "10"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["q"] == 3 and d["C"] == [6, 18, 9] and d["verified_up_to"] == 10 and d["falsified_at"] is None
    code, out, _ = run(["conjecture", "--all", "--degree", "6"], capsys)
    assert [r["q"] for r in json.loads(out)] == list(range(1, 9))


def test_fourier_check_cli(capsys):
    code, out, _ = run(["fourier-check", "--q", "1", "--trials", "3", "--check"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["coefficient"]["best_sign"] == d["numerical"]["best_sign"] == 1
    assert d["coefficient"]["agrees_with_printed"] is False


def test_quaternion_check_cli(capsys):
    code, out, _ = run(["quaternion-check", "--seed", "3"], capsys)
    assert code == EXIT_OK and json.loads(out)["pass"] is True
