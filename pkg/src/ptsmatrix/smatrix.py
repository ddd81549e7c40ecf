"""S-matrix assembly by the image-set route and the coefficient route."""
from dataclasses import dataclass
from enum import Enum

import numpy as np
from joblib import Parallel, delayed

from .coeffs import check_wavenumber, scattering_coefficients
from .exceptions import (DomainError, Overflow, SingularImageSet, SingularMatching,
                         SMatrixNonexistent)
from .imageset import delta_k, tk_from_boundary_data, traveling_wave_boundary_values
from .mat2 import SIGMA0, SingularMatrix, mat2_inv, operator_norm

ROUTE_TOL = 1e-8


class Route(str, Enum):
    coeffs = "coeffs"
    tk = "tk"
    both = "both"


class Status(str, Enum):
    ok = "ok"
    singular_delta = "singular_delta"
    singular_bracket = "singular_bracket"
    excluded_axis = "excluded_axis"


@dataclass(frozen=True)
class SMatrixSample:
    k: complex
    S: np.ndarray
    delta: complex
    route: Route
    route_disagreement: float
    status: Status

    @property
    def ok(self):
        return self.status is Status.ok


def smatrix_from_tk(t):
    """S = [I - 2(1 - ik) T][I - 2(1 + ik) T]^{-1}."""
    k = complex(t.k)
    try:
        right = mat2_inv(SIGMA0 - 2 * (1 + 1j * k) * t.tk)
    except SingularMatrix as exc:
        raise SMatrixNonexistent(f"I - 2(1+ik)T_k is singular at k={k!r}") from exc
    return (SIGMA0 - 2 * (1 - 1j * k) * t.tk) @ right


def smatrix_from_coeffs(c):
    """S-matrix from reflection/transmission coefficients.

    The diagonal correction is (k - conj k)/(2k) = i Im k / k; it vanishes on
    the real axis, where the expression reduces to -e^{2ik rho}((Rr, Tl), (Tr, Rl)).
    """
    k = c.k
    if k.real == 0:
        raise DomainError(f"S-matrix coefficient formula undefined on the imaginary axis (k={k!r})")
    if k.imag == 0:
        return -np.exp(2j * c.rho * k) * np.array([[c.Rr, c.Tl], [c.Tr, c.Rl]])
    corr = np.exp(-2j * c.rho * k.real) * (k - k.conjugate()) / (2 * k)
    return (-np.exp(2j * c.rho * k.real) * (k / k.real)
            * np.array([[c.Rr + corr, c.Tl], [c.Tr, c.Rl + corr]]))


_NAN2 = np.full((2, 2), complex("nan"))


def smatrix_sample(q, k, route=Route.both, steps=None):
    """S(k) for one wavenumber, with failures turned into a status."""
    route = Route(route)
    k = complex(k)
    if k.imag < 0:
        raise DomainError(f"k must satisfy Im k >= 0, got {k!r}")
    if k.real == 0:
        return SMatrixSample(k, _NAN2, complex("nan"), route, float("nan"), Status.excluded_axis)
    try:
        c = scattering_coefficients(q, k, steps)
    except (SingularMatching, Overflow):
        return SMatrixSample(k, _NAN2, complex("nan"), route, float("nan"), Status.singular_delta)
    delta = delta_k(c)
    s_c = s_t = None
    if route in (Route.coeffs, Route.both):
        s_c = smatrix_from_coeffs(c)
    if route in (Route.tk, Route.both):
        try:
            s_t = smatrix_from_tk(tk_from_boundary_data(traveling_wave_boundary_values(c)))
        except SingularImageSet:
            return SMatrixSample(k, _NAN2, delta, route, float("nan"), Status.singular_delta)
        except SMatrixNonexistent:
            return SMatrixSample(k, _NAN2, delta, route, float("nan"), Status.singular_bracket)
    s = s_c if s_c is not None else s_t
    if not np.all(np.isfinite(s)):
        return SMatrixSample(k, _NAN2, delta, route, float("nan"), Status.singular_delta)
    disagreement = operator_norm(s_c - s_t) if route is Route.both else 0.0
    return SMatrixSample(k, s, delta, route, disagreement, Status.ok)


def grid_points(grid):
    """Wavenumbers of a rectangular grid dict, real part outer, imaginary inner.

    ``grid = {"re": [min, max, n], "im": [min, max, m]}``.
    """
    re = np.linspace(float(grid["re"][0]), float(grid["re"][1]), int(grid["re"][2]))
    im = np.linspace(float(grid["im"][0]), float(grid["im"][1]), int(grid["im"][2]))
    if int(grid["re"][2]) < 1 or int(grid["im"][2]) < 1:
        raise ValueError("grid sizes must be >= 1")
    if im.min() < 0:
        raise DomainError("grid must avoid Im k < 0")
    return (re[:, None] + 1j * im[None, :]).ravel()


def smatrix_grid(q, grid, route=Route.both, steps=None, n_jobs=None):
    """One :class:`SMatrixSample` per grid point, in grid order.

    ``grid`` is either a grid dict or an iterable of wavenumbers.
    """
    ks = grid_points(grid) if isinstance(grid, dict) else np.asarray(grid, dtype=complex).ravel()
    if np.any(ks.imag < 0):
        raise DomainError("grid must avoid Im k < 0")
    if n_jobs in (None, 1):
        return [smatrix_sample(q, k, route, steps) for k in ks]
    return Parallel(n_jobs=n_jobs)(delayed(smatrix_sample)(q, k, route, steps) for k in ks)


def check_real_axis_limit(q, k_real, eps=1e-6):
    """|S(k) - S(k + i eps)| for real k; the two branches should agree."""
    k = check_wavenumber(k_real)
    s0 = smatrix_from_coeffs(scattering_coefficients(q, k))
    s1 = smatrix_from_coeffs(scattering_coefficients(q, k + 1j * eps))
    return operator_norm(s0 - s1)
