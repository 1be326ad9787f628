import math

import numpy as np
import pytest

import qgsw


def test_k0_value_and_vectorization():
    assert abs(qgsw.k0(1.0) - 0.42102443824070834) < 1e-12
    v = qgsw.k0(np.array([0.5, 1.0, 2.0]))
    assert v.shape == (3,)
    assert np.all(np.diff(v) < 0)


def test_transform_round_trip():
    g = qgsw.Grid(128, 16 * math.pi)
    x = g.points()
    f = np.exp(-x**2 / 2)
    back = qgsw.inverse(g, qgsw.transform(g, f))
    assert np.max(np.abs(back - f)) < 1e-12


def test_shape_error():
    g = qgsw.Grid(64)
    with pytest.raises(qgsw.ShapeError):
        qgsw.transform(g, np.zeros(10))


def test_small_simulation():
    cfg = {"schema_version": 1, "grid": {"N": 128}, "solver": {"T": 1.0, "dt": 0.1},
           "diagnostics": {"cadence": 0.5}}
    times, values = qgsw.simulate(cfg)
    assert list(times) == pytest.approx([0.0, 0.5, 1.0])
    assert values.shape == (3, 128)
    assert np.all(np.isfinite(values))


def test_config_hash_and_errors():
    base = {"schema_version": 1}
    assert qgsw.config_hash(base) == qgsw.config_hash(None)
    assert qgsw.config_hash({"schema_version": 1, "solver": {"T": 3}}) != qgsw.config_hash(base)
    with pytest.raises(qgsw.ConfigError):
        qgsw.config_hash({"schema_version": 1, "bogus": 1})


def test_decay_fit():
    t = np.arange(1, 101) * 5.0
    fit = qgsw.decay_fit(t, 2.0 * t**-0.5, 20.0, 500.0)
    assert fit["exponent"] == pytest.approx(-0.5, abs=1e-12)


def test_cli_verify_in_process():
    code, out, err = qgsw.cli(["verify", "--only", "kernel_constant"])
    assert code == 0, err
    assert "kernel_constant" in out
    assert qgsw.cli(["verify", "--only", "nope"])[0] == 2


def test_verify_api():
    res = qgsw.verify(["special_functions"])
    assert len(res) == 1 and res[0]["passed"]
    assert len(qgsw.criteria()) == 11
