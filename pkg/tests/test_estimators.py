import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ptsmatrix.estimators import MetricRecovery, SMatrixTransformer, check_wavenumbers
from ptsmatrix.exceptions import DegenerateFit
from ptsmatrix.mat2 import SIGMA0, SIGMA1
from ptsmatrix.potential import Free, PointInteraction


def test_params_and_clone():
    t = SMatrixTransformer(potential={"type": "point", "gamma": 1.0}, route="tk", n_jobs=2)
    assert t.get_params() == {"potential": {"type": "point", "gamma": 1.0}, "route": "tk",
                              "steps": None, "n_jobs": 2}
    c = clone(t)
    assert c.get_params() == t.get_params()
    c.set_params(route="coeffs")
    assert c.route == "coeffs" and t.route == "tk"


def test_transform_free():
    ks = np.array([0.5 + 0.5j, -1 + 0.2j, 1.0])
    s = SMatrixTransformer(Free(1.0)).fit().transform(ks)
    assert s.shape == (3, 2, 2)
    for k, m in zip(ks, s):
        np.testing.assert_allclose(m, -np.exp(2j * k) * SIGMA1, atol=1e-12)


def test_transform_two_column_input_and_statuses():
    t = SMatrixTransformer({"type": "point", "gamma": 1.0}).fit()
    s = t.fit_transform(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert list(t.statuses_) == ["ok", "excluded_axis"]
    assert np.isfinite(s[0]).all() and np.isnan(s[1]).all()
    assert list(t.ok_mask([[1.0, 1.0], [0.0, 1.0]])) == [True, False]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SMatrixTransformer(Free(1.0)).transform([1 + 1j])


@pytest.mark.parametrize("bad", [[1 - 1j], [np.nan], [], np.zeros((2, 3)), np.zeros((2, 2, 2))])
def test_check_wavenumbers_rejects(bad):
    with pytest.raises(ValueError):
        check_wavenumbers(bad)


def test_check_wavenumbers_shapes():
    np.testing.assert_array_equal(check_wavenumbers([[1.0], [2.0]]), [1, 2])
    np.testing.assert_array_equal(check_wavenumbers(1 + 1j), [1 + 1j])


def test_bad_potential_type():
    with pytest.raises(TypeError):
        SMatrixTransformer(potential="free").fit()


def test_metric_recovery_gamma1():
    ks = np.array([0.5 + 0.5j, 1.5 + 0.1j, 1.0 + 1.0j])
    t = SMatrixTransformer(PointInteraction(1.0)).fit()
    a, b = t.transform(ks), t.transform(-ks.conj())
    m = MetricRecovery().fit(a, b)
    assert m.chi_ == pytest.approx(np.log(3), abs=1e-10)
    np.testing.assert_allclose(m.C_ @ m.C_, SIGMA0, atol=1e-12)
    assert m.score(a, b) >= -1e-12
    assert clone(m).get_params() == m.get_params()


def test_metric_recovery_errors():
    with pytest.raises(ValueError):
        MetricRecovery().fit(np.zeros((2, 2, 2)), np.zeros((3, 2, 2)))
    with pytest.raises(DegenerateFit):
        MetricRecovery().fit([SIGMA0], [SIGMA0])
    with pytest.raises(NotFittedError):
        MetricRecovery().score([SIGMA0], [SIGMA0])
