import math
import os
import pathlib

import numpy as np
import pytest

import enttime

DATA = pathlib.Path(os.environ.get("ENTTIME_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def test_fock_timescale():
    model = enttime.jcm(lambda_=1.0, fock=3, n_max=13)
    report = enttime.timescale(model)
    assert report["t_ent"] == pytest.approx(0.5, abs=1e-12)
    assert not report["degenerate"]
    assert report["cov_a"].shape == (4, 4)


def test_coherent_ground_is_degenerate():
    model = enttime.jcm(c_e=0.0, c_g=1.0, nu=3.0, n_max=59)
    report = enttime.timescale(model)
    assert report["degenerate"]
    assert report["t_ent"] is None


def test_bose_hubbard_milliseconds():
    j = 2 * math.pi * 66.0
    report = enttime.timescale(enttime.bose_hubbard(j=j))
    assert report["t_ent_inv_sq"] == pytest.approx(4 * j * j, rel=1e-12)
    assert report["t_ent"] * 1e3 == pytest.approx(1.21, abs=0.01)


def test_curvature_prediction_matches_evolution():
    model = enttime.jcm(fock=3, n_max=13)
    for alpha in (2, 3, 8):
        predicted = enttime.predicted_curvature(model, alpha)
        assert enttime.measured_curvature(model, alpha) == pytest.approx(predicted, rel=0.01)
    assert enttime.curvature_coefficient(2) == 4.0


def test_entropy_series_and_linalg():
    model = enttime.jcm(fock=3, n_max=13)
    times = np.linspace(0.0, 3.0, 31)
    series = enttime.entropy_series(model, [1, 2], times, spectra=True)
    s2 = np.array(series[2]["values"])
    c2 = np.cos(2 * times) ** 2
    np.testing.assert_allclose(s2, -np.log(c2**2 + (1 - c2) ** 2), atol=1e-9)
    assert np.all(np.array(series[1]["values"]) >= s2 - 1e-10)

    bell = np.zeros(4, dtype=complex)
    bell[[0, 3]] = 1 / math.sqrt(2)
    rho_a = enttime.partial_trace(np.outer(bell, bell.conj()), 2, 2, "A")
    assert enttime.renyi_entropy(rho_a, 2) == pytest.approx(math.log(2))
    assert enttime.von_neumann_entropy(rho_a) == pytest.approx(math.log(2))
    sz = np.diag([1.0, -1.0]).astype(complex)
    np.testing.assert_array_equal(enttime.kron(sz, np.eye(2)).real.diagonal(), [1, 1, -1, -1])


def test_custom_model_and_errors():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    model = enttime.custom([(sx, sx), (sy, sy)], plus, np.array([1, 0], dtype=complex))
    assert enttime.timescale(model)["t_ent_inv_sq"] == pytest.approx(1.0)

    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(enttime.ModelError):
        enttime.custom([(sp, sp)], plus, plus)
    with pytest.raises(enttime.DomainError):
        enttime.predicted_curvature(model, 1)
    with pytest.raises(enttime.TruncationError):
        enttime.jcm(nu=3.0, n_max=12)


def test_spec_files_and_verify():
    model = enttime.load_model(str(DATA / "bose_hubbard_66hz.json"))
    assert model.rate_name == "J"
    result = enttime.verify(DATA / "jcm_fock3_excited.json", alphas=[1, 2, 3])
    assert result["passed"]
    assert result["von_neumann_probe"]["log_coefficient"] == pytest.approx(-16.0, rel=0.05)
    with pytest.raises(enttime.SchemaError):
        enttime.parse_model('{"model": "jcm", "jcm": {"lambda": 1, "typo": 0}}')
