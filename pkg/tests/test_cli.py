import json

import numpy as np
import pytest

from vrkbs import cli
from vrkbs.io import dumps, format_float, load_model, read_dataset, save_model


def write_data(path, X, Y, header=True):
    d, n = X.shape[1], Y.shape[1]
    lines = []
    if header:
        lines.append(",".join([f"x{i + 1}" for i in range(d)] + [f"y{i + 1}" for i in range(n)]))
    for x, y in zip(X, Y):
        lines.append(",".join(format_float(v) for v in [*x, *y]))
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture
def linear_data(tmp_path):
    rng = np.random.default_rng(7)
    X = rng.standard_normal((10, 2))
    Y = X @ rng.standard_normal((2, 2))
    path = tmp_path / "train.csv"
    write_data(path, X, Y)
    return path, X, Y


def run(argv):
    return cli.main([str(a) for a in argv])


def test_train_tensor_matches_ridge(linear_data, tmp_path, capsys):
    path, X, Y = linear_data
    out = tmp_path / "m.json"
    code = run(["train", "--data", path, "--space", "tensor", "--kernel", "linear", "--p", 2,
                "--r", 2, "--loss", "square", "--lambda", 0.1, "--out", out, "--tol", 1e-11])
    assert code == 0
    text = capsys.readouterr().out
    resid = float(text.split("characterization_residual ")[1].split()[0])
    assert resid < 1e-6
    # ridge oracle with the kernel k(x, y) = 1 + x.y on each output
    G = 1 + X @ X.T
    c = np.linalg.solve(G + 0.1 * np.eye(10), Y)
    model, _ = load_model(out)
    np.testing.assert_allclose(model.predict_many(list(X)), G @ c, atol=1e-8)


def test_train_p3_converges(linear_data, tmp_path, capsys):
    path, _, _ = linear_data
    assert run(["train", "--data", path, "--p", 3, "--out", tmp_path / "m.json"]) == 0
    text = capsys.readouterr().out
    assert float(text.split("characterization_residual ")[1].split()[0]) < 1e-6


def test_heavy_regularization_flag(linear_data, tmp_path, capsys):
    path, _, _ = linear_data
    assert run(["train", "--data", path, "--lambda", 1e9, "--out", tmp_path / "m.json"]) == 0
    assert "zero-minimizer regime" in capsys.readouterr().out


@pytest.mark.parametrize("space", ["sensing", "ti"])
def test_other_spaces_train(space, linear_data, tmp_path):
    path, X, Y = linear_data
    out = tmp_path / "m.json"
    assert run(["train", "--data", path, "--space", space, "--out", out]) == 0
    doc = json.loads(out.read_text())
    assert doc["space"]["kind"] == space and doc["schema"] == 1


def test_max_iter_exit_code(linear_data, tmp_path):
    path, _, _ = linear_data
    assert run(["train", "--data", path, "--p", 3, "--max-iter", 1, "--out", tmp_path / "m.json"]) == 2


def test_eps_loss_trains(linear_data, tmp_path):
    path, _, _ = linear_data
    assert run(["train", "--data", path, "--loss", "eps", "--eps", 0.05,
                "--out", tmp_path / "m.json"]) == 0


def test_malformed_input_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x1,y1\n1.0,2.0\n3.0,abc\n")
    assert run(["train", "--data", bad, "--out", tmp_path / "m.json"]) == 1
    assert "line 3" in capsys.readouterr().err
    bad.write_text("x1,y1\n1.0\n")
    assert run(["train", "--data", bad, "--out", tmp_path / "m.json"]) == 1
    noheader = tmp_path / "nh.csv"
    noheader.write_text("1.0,2.0\n")
    assert run(["train", "--data", noheader, "--out", tmp_path / "m.json"]) == 1
    assert run(["train", "--data", tmp_path / "missing.csv", "--out", tmp_path / "m.json"]) == 1


def test_column_count_must_match_flags(linear_data, tmp_path):
    path, _, _ = linear_data
    assert run(["train", "--data", path, "--d", 3, "--n", 2, "--out", tmp_path / "m.json"]) == 1


def test_predict_interpolation_limit(linear_data, tmp_path):
    path, X, Y = linear_data
    out = tmp_path / "m.json"
    assert run(["train", "--data", path, "--lambda", 1e-9, "--bandwidth", 1.0, "--tol", 1e-12,
                "--out", out]) in (0, 2)
    pred = tmp_path / "pred.csv"
    assert run(["predict", "--model", out, "--data", path, "--out", pred]) == 0
    header, data = read_dataset(pred)
    assert header[-2:] == ["pred_1", "pred_2"]
    np.testing.assert_allclose(data[:, -2:], Y, atol=1e-4)


def test_predict_round_trip_and_byte_stability(linear_data, tmp_path):
    path, X, _ = linear_data
    out = tmp_path / "m.json"
    run(["train", "--data", path, "--p", 3, "--out", out])
    model, doc = load_model(out)
    again = tmp_path / "again.json"
    save_model(again, doc)
    assert again.read_bytes() == out.read_bytes()
    pred = tmp_path / "pred.csv"
    run(["predict", "--model", out, "--data", path, "--out", pred])
    _, data = read_dataset(pred)
    np.testing.assert_allclose(data[:, -2:], model.predict_many(list(X)), rtol=0, atol=1e-12)


def test_predict_empty_and_mismatched(linear_data, tmp_path):
    path, _, _ = linear_data
    out = tmp_path / "m.json"
    run(["train", "--data", path, "--out", out])
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert run(["predict", "--model", out, "--data", empty, "--out", tmp_path / "p.csv"]) == 0
    assert (tmp_path / "p.csv").read_text() == ""
    header_only = tmp_path / "h.csv"
    header_only.write_text("x1,x2\n")
    assert run(["predict", "--model", out, "--data", header_only, "--out", tmp_path / "p.csv"]) == 0
    narrow = tmp_path / "n.csv"
    narrow.write_text("x1\n1.0\n")
    assert run(["predict", "--model", out, "--data", narrow, "--out", tmp_path / "p.csv"]) == 1
    assert run(["predict", "--model", tmp_path / "nope.json", "--data", narrow,
                "--out", tmp_path / "p.csv"]) == 1


def test_verify_default_passes_and_is_deterministic(tmp_path, capsys):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(["verify", "--instances", 20, "--report", r1]) == 0
    assert run(["verify", "--instances", 20, "--report", r2]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    rep = json.loads(r1.read_text())
    assert rep["schema"] == 1 and rep["ok"]
    assert rep["counterexamples"]["A1"]["verdict"] and rep["counterexamples"]["A2"]["verdict"]
    assert rep["counterexamples"]["W1"]["gram_sip_sum"] < 0
    assert "PASS A1 nondensity" in capsys.readouterr().out


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_verify_seed_does_not_change_verdicts(seed, tmp_path):
    assert run(["verify", "--suite", "counterexamples", "--seed", seed,
                "--report", tmp_path / "r.json"]) == 0


def test_verify_corrupted_matrix_fails(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"W1": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code = run(["verify", "--suite", "counterexamples", "--matrices", bad, "--report",
                tmp_path / "r.json"])
    assert code == 3
    assert "FAIL W1 gram sum negative" in capsys.readouterr().out
    bad.write_text(json.dumps({"Q": [[1]]}))
    assert run(["verify", "--suite", "counterexamples", "--matrices", bad]) == 1


def test_dumps_uses_17_digits_and_is_stable():
    text = dumps({"a": 0.1, "b": [1.0, 2], "c": {"d": None, "e": True}, "f": float("nan")})
    assert "0.10000000000000001" in text and "1.0" in text and "null" in text
    assert dumps(json.loads(text)) == text
