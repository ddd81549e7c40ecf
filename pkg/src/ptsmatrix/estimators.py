"""scikit-learn compatible front ends.

``SMatrixTransformer`` maps arrays of wavenumbers to S-matrices and
``MetricRecovery`` fits chi from paired S-matrix samples.  Both follow the
usual estimator contract (constructor stores params verbatim, ``fit``
returns self, fitted attributes end in an underscore).
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .inverse import CHI_BOUNDS, CHI_TOL, c_operator, recover_metric
from .potential import Free, PiecewiseConstant, PointInteraction, Sampled, potential_from_dict
from .smatrix import Route, Status, smatrix_grid
from .verify import check_metric_relations

_POTENTIALS = (Free, PointInteraction, PiecewiseConstant, Sampled)


def check_wavenumbers(K):
    """Validate an array-like of wavenumbers; returns a 1-D complex array.

    Accepts shape (n,), (n, 1) or (n, 2) with columns (Re k, Im k).
    """
    arr = np.asarray(K)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        arr = arr[:, 0] + 1j * arr[:, 1]
    elif arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    elif arr.ndim == 0:
        arr = arr[None]
    if arr.ndim != 1:
        raise ValueError(f"expected wavenumbers of shape (n,), (n, 1) or (n, 2); got {np.shape(K)}")
    arr = arr.astype(complex)
    if arr.size == 0:
        raise ValueError("no wavenumbers given")
    if not np.all(np.isfinite(arr)):
        raise ValueError("wavenumbers must be finite")
    if np.any(arr.imag < 0):
        raise ValueError("wavenumbers must satisfy Im k >= 0")
    return arr


def check_potential(potential):
    if isinstance(potential, _POTENTIALS):
        return potential
    if isinstance(potential, dict):
        return potential_from_dict(potential)
    raise TypeError(f"potential must be a potential object or JSON dict, got {type(potential).__name__}")


def check_smatrix_stack(S):
    arr = np.asarray(S, dtype=complex)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1:] != (2, 2):
        raise ValueError(f"expected an array of 2x2 matrices, got shape {np.shape(S)}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("S-matrix samples must be finite")
    return arr


class SMatrixTransformer(TransformerMixin, BaseEstimator):
    """Evaluate S(k) of a fixed potential at the rows of ``K``.

    Parameters
    ----------
    potential : potential object or dict
        Any of :class:`Free`, :class:`PointInteraction`,
        :class:`PiecewiseConstant`, :class:`Sampled`, or their JSON form.
    route : {"both", "coeffs", "tk"}
    steps : int, optional
        Step count for sampled potentials.
    n_jobs : int, optional
        Workers for the grid sweep; output order is always the input order.

    Non-ok points come back as NaN matrices; their statuses are kept in
    ``statuses_`` after each ``transform``.
    """

    def __init__(self, potential=None, route="both", steps=None, n_jobs=None):
        self.potential = potential
        self.route = route
        self.steps = steps
        self.n_jobs = n_jobs

    def fit(self, K=None, y=None):
        self.potential_ = check_potential(Free(0.0) if self.potential is None else self.potential)
        self.route_ = Route(self.route)
        return self

    def transform_samples(self, K):
        check_is_fitted(self, "potential_")
        ks = check_wavenumbers(K)
        return smatrix_grid(self.potential_, ks, self.route_, self.steps, self.n_jobs)

    def transform(self, K):
        samples = self.transform_samples(K)
        self.statuses_ = np.array([s.status.value for s in samples])
        return np.stack([s.S for s in samples])

    def ok_mask(self, K):
        return np.array([s.status is Status.ok for s in self.transform_samples(K)])


class MetricRecovery(BaseEstimator):
    """Fit e^Q = exp(chi * sigma2) from pairs (S(k), S(-conj k)).

    ``fit(S_k, S_mkbar)`` takes two arrays of shape (n, 2, 2).  Fitted
    attributes: ``chi_``, ``eQ_``, ``C_``, ``fit_residual_``,
    ``beta_implied_``.
    """

    def __init__(self, chi_bounds=CHI_BOUNDS, xtol=CHI_TOL):
        self.chi_bounds = chi_bounds
        self.xtol = xtol

    def fit(self, S_k, S_mkbar):
        a = check_smatrix_stack(S_k)
        b = check_smatrix_stack(S_mkbar)
        if a.shape != b.shape:
            raise ValueError("S_k and S_mkbar must have the same number of samples")
        est = recover_metric(list(a), list(b), bounds=tuple(self.chi_bounds), xtol=self.xtol)
        self.estimate_ = est
        self.chi_ = est.chi
        self.eQ_ = est.eQ
        self.C_ = c_operator(est.chi)[1]
        self.fit_residual_ = est.fit_residual
        self.beta_implied_ = est.beta_implied
        return self

    def score(self, S_k, S_mkbar):
        """Negative worst-case intertwining residual (higher is better)."""
        check_is_fitted(self, "eQ_")
        a, b = check_smatrix_stack(S_k), check_smatrix_stack(S_mkbar)
        return -max(check_metric_relations(x, y, self.eQ_)[0] for x, y in zip(a, b))
