import json
import math

import numpy as np
import pytest

from corrcap import cli, io
from corrcap.qstate import bell_state, diag_state, tensor
from corrcap.twoqubit import QubitPair, fig1_curve, sigma_classical


def H(*p):
    return -sum(x * math.log2(x) for x in p if x > 0)


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- formats ------------------------------------------------------------------

def test_fmt():
    assert io.fmt(1 / 3) == 0.333333333
    assert io.fmt(-0.0) == 0.0
    assert io.fmt(3e-15) == 0.0
    assert io.fmt(1.5e-9) == 1.5e-9


def test_state_round_trip(tmp_path):
    rho = tensor([diag_state([0.7, 0.3]), bell_state().density()])
    path = tmp_path / "s.json"
    io.save_state(rho, path)
    back = io.load_state(path)
    assert back.dims == (2, 2, 2)
    np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-9)


def test_distribution_round_trip(tmp_path):
    p = write(tmp_path / "d.json", io.distribution_to_doc([0.2, 0.5, 0.3]))
    np.testing.assert_allclose(io.load_distribution(p), [0.5, 0.3, 0.2])


@pytest.mark.parametrize("doc", [{}, {"probs": "x"}, {"probs": [0.5, 0.6]}, []])
def test_bad_distribution(tmp_path, doc):
    with pytest.raises(io.FormatError):
        io.load_distribution(write(tmp_path / "d.json", doc))


def test_bad_state(tmp_path):
    with pytest.raises(io.FormatError):
        io.load_state(write(tmp_path / "s.json", {"dims": [2], "matrix": [[1, 0], [0, 0]]}))
    with pytest.raises(io.FormatError):
        io.load_state(write(tmp_path / "s.json", {"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}))


def test_fig1_csv_round_trip(tmp_path):
    rows = fig1_curve(0.65, 11)
    path = tmp_path / "f.csv"
    with open(path, "w", newline="") as fh:
        io.write_fig1_csv(rows, fh)
    assert path.read_text().splitlines()[0] == "p_b,C_classical,C_separable,C_entangled"
    np.testing.assert_allclose(io.read_fig1_csv(path), rows, rtol=1e-8, atol=1e-12)


# -- major --------------------------------------------------------------------

def test_major_commands(tmp_path, capsys):
    a = write(tmp_path / "a.json", {"probs": [0.5, 0.5]})
    b = write(tmp_path / "b.json", {"probs": [0.7, 0.3]})
    assert run(capsys, "major", "cmp", a, b)[:2] == (0, "MAJORIZED_BY\n")
    c = write(tmp_path / "c.json", {"probs": [0.5, 0.5, 0]})
    d = write(tmp_path / "d.json", {"probs": [0.6, 0.2, 0.2]})
    code, out, _ = run(capsys, "major", "inf", c, d)
    assert code == 0 and json.loads(out) == {"probs": [0.5, 0.3, 0.2]}
    e = write(tmp_path / "e.json", {"probs": [0.6, 0.15, 0.15, 0.10]})
    f = write(tmp_path / "f.json", {"probs": [0.5, 0.25, 0.25, 0]})
    code, out, _ = run(capsys, "major", "sup", e, f)
    assert code == 0 and json.loads(out) == {"probs": [0.6, 0.2, 0.2, 0.0]}


def test_major_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "major", "inf", str(bad))[0] == 2
    assert run(capsys, "major", "inf", str(tmp_path / "missing.json"))[0] == 2
    a = write(tmp_path / "a.json", {"probs": [1.0]})
    assert run(capsys, "major", "cmp", a)[0] == 2


# -- composite / state --------------------------------------------------------

def test_composite_build(tmp_path, capsys):
    m = write(tmp_path / "m.json", io.marginals_to_doc([diag_state([0.65, 0.35]), diag_state([0.5, 0.5])]))
    out_state = tmp_path / "sigma.json"
    code, out, _ = run(capsys, "composite", "build", m, "-o", str(out_state))
    rep = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(rep["spectrum"], [0.5, 0.5, 0, 0], atol=1e-9)
    assert rep["correlation_bits"] == pytest.approx(0.934068, abs=1e-6)
    assert rep["gram_offdiag_max"] < 1e-8
    assert io.load_state(out_state).dims == (2, 2)


def test_composite_examples(tmp_path, capsys):
    zero = diag_state([1, 0])
    m = write(tmp_path / "m.json", io.marginals_to_doc([zero, zero]))
    assert json.loads(run(capsys, "composite", "build", m)[1])["correlation_bits"] == 0.0
    m = write(tmp_path / "m3.json", io.marginals_to_doc([diag_state([0.65, 0.35])] * 3))
    rep = json.loads(run(capsys, "composite", "build", m)[1])
    assert rep["correlation_bits"] == pytest.approx(1.868136, abs=1e-6)


def test_composite_invalid(tmp_path, capsys):
    m = write(tmp_path / "m.json", {"marginals": [{"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}]})
    assert run(capsys, "composite", "build", m)[0] == 2
    m = write(tmp_path / "one.json", io.marginals_to_doc([diag_state([0.5, 0.5])]))
    assert run(capsys, "composite", "build", m)[0] == 2


def test_state_analyze(tmp_path, capsys):
    path = tmp_path / "c.json"
    io.save_state(sigma_classical(QubitPair(0.65, 0.5)), path)
    assert json.loads(run(capsys, "state", "analyze", str(path))[1])["is_classical"] is True
    io.save_state(bell_state().density(), path)
    rep = json.loads(run(capsys, "state", "analyze", str(path))[1])
    assert rep["correlation_bits"] == 2.0
    assert rep["is_classical"] is False and rep["two_qubit_ppt"] is False
    io.save_state(tensor([diag_state([0.7, 0.3]), diag_state([0.5, 0.3, 0.2])]), path)
    rep = json.loads(run(capsys, "state", "analyze", str(path))[1])
    assert rep["correlation_bits"] == 0.0
    assert "two_qubit_ppt" not in rep


# -- twoqubit -----------------------------------------------------------------

def test_twoqubit_fig1(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    assert run(capsys, "twoqubit", "fig1", "--pa", "0.65", "-o", str(out))[0] == 0
    rows = io.read_fig1_csv(out)
    assert rows.shape == (201, 4)
    np.testing.assert_allclose(rows[0], [0.5, 0.493422, 0.934068, 1.324229], atol=1e-5)
    code, stdout, _ = run(capsys, "twoqubit", "fig1", "--pa", "0.65", "--steps", "3")
    assert code == 0 and stdout.splitlines()[-1] == "1,0,0,0"


def test_twoqubit_optimal(tmp_path, capsys):
    path = tmp_path / "e.json"
    code, out, _ = run(capsys, "twoqubit", "optimal", "--pa", "0.65", "--pb", "0.65", "--family", "entangled",
                       "-o", str(path))
    rep = json.loads(out)
    assert code == 0
    assert rep["entropy_bits"] == 0.0
    assert rep["spectrum"] == [1.0, 0.0, 0.0, 0.0]
    assert io.load_state(path).dims == (2, 2)


def test_twoqubit_feline(tmp_path, capsys):
    lam_file = write(tmp_path / "l.json", {"probs": [0.65, 0.35]})
    rep = json.loads(run(capsys, "twoqubit", "feline", "--n", "3", "--spectrum", lam_file)[1])
    assert rep["C_pure"] == pytest.approx(3 * H(0.65, 0.35), abs=1e-8)
    assert rep["C_decohered"] == pytest.approx(2 * H(0.65, 0.35), abs=1e-8)


@pytest.mark.parametrize("pa", ["0.4", "1.2"])
def test_twoqubit_rejects_out_of_range(capsys, pa):
    with pytest.raises(SystemExit) as exc:
        cli.main(["twoqubit", "optimal", "--pa", pa, "--pb", "0.6", "--family", "separable"])
    assert exc.value.code == 2


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "locc", "--bogus"])
    assert exc.value.code == 2


# -- verify -------------------------------------------------------------------

def test_verify_deterministic_output(capsys):
    argv = ["verify", "--suite", "nielsen-kempe", "--trials", "50", "--seed", "7", "--deterministic"]
    code, first, err = run(capsys, *argv)
    assert code == 0
    assert json.loads(err)["config"]["seed"] == 7
    _, second, _ = run(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    assert doc == {"suite": "nielsen-kempe", "trials": 50, "seed": 7, "failures": 0, "max_violation": 0.0}
    _, par, _ = run(capsys, *argv, "--parallel")
    assert par == first


def test_verify_timestamp_without_flag(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "hierarchy", "--trials", "10", "--seed", "1")
    assert "timestamp" in json.loads(out)


def test_verify_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CORRCAP_SEED", "42")
    _, _, err = run(capsys, "verify", "--suite", "locc", "--trials", "5", "--deterministic")
    assert json.loads(err)["config"]["seed"] == 42
    monkeypatch.setenv("CORRCAP_SEED", "nope")
    assert run(capsys, "verify", "--suite", "locc", "--trials", "5")[0] == 2


def test_verify_bad_trials(capsys):
    assert run(capsys, "verify", "--suite", "locc", "--trials", "0")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from corrcap import verify

    def broken(name, trials, seed, parallel):
        return verify.SuiteResult(name, trials, 1, 0.5)

    monkeypatch.setattr(verify, "run_suite", broken)
    code, out, _ = run(capsys, "verify", "--suite", "locc", "--trials", "3", "--seed", "0")
    assert code == 1
    assert json.loads(out)["failures"] == 1
