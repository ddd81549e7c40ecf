"""Image-set matrices T_k from boundary values of the traveling waves.

Coordinates follow the project-wide basis order: index 0 is e_+ (right
half-line, x = +rho), index 1 is e_- (left half-line, x = -rho).
"""
from dataclasses import dataclass

import numpy as np

from .coeffs import ScatteringCoefficients, check_wavenumber
from .exceptions import SingularImageSet, SingularMatrix
from .mat2 import det2, mat2_inv, singular_threshold


@dataclass(frozen=True)
class BoundaryData:
    """Values and derivatives of f_1, f_2 at x = +-rho.

    Each field is a length-2 array indexed by j (f_1 first).
    """

    k: complex
    rho: float
    f_right: np.ndarray
    df_right: np.ndarray
    f_left: np.ndarray
    df_left: np.ndarray


@dataclass(frozen=True)
class TkMatrix:
    k: complex
    tk: np.ndarray
    delta: complex
    bc_residual: float


def traveling_wave_boundary_values(c):
    k, rho = c.k, c.rho
    kb = k.conjugate()

    def w(a, x):
        return np.exp(1j * a * x)

    f_right = np.array([w(-kb, rho) + c.Rr * w(k, rho), c.Tl * w(k, rho)])
    df_right = np.array([-1j * kb * w(-kb, rho) + 1j * k * c.Rr * w(k, rho),
                         1j * k * c.Tl * w(k, rho)])
    f_left = np.array([c.Tr * w(-k, -rho), w(kb, -rho) + c.Rl * w(-k, -rho)])
    df_left = np.array([-1j * k * c.Tr * w(-k, -rho),
                        1j * kb * w(kb, -rho) - 1j * k * c.Rl * w(-k, -rho)])
    return BoundaryData(k, rho, f_right, df_right, f_left, df_left)


def coefficients_from_boundary_data(bd):
    """Invert :func:`traveling_wave_boundary_values`."""
    k, rho = bd.k, bd.rho
    kb = k.conjugate()
    Rr = (bd.f_right[0] - np.exp(-1j * kb * rho)) * np.exp(-1j * k * rho)
    Tr = bd.f_left[0] * np.exp(-1j * k * rho)
    Tl = bd.f_right[1] * np.exp(-1j * k * rho)
    Rl = (bd.f_left[1] - np.exp(-1j * kb * rho)) * np.exp(-1j * k * rho)
    return ScatteringCoefficients(k, rho, complex(Rl), complex(Rr), complex(Tl), complex(Tr))


def tk_from_boundary_data(bd):
    """Solve T_k a_j = F_j / 2 for the two traveling waves.

    a_j = (f_j(rho) + f_j'(rho), f_j(-rho) - f_j'(-rho)), F_j = (f_j(rho), f_j(-rho)).
    """
    a = np.array([bd.f_right + bd.df_right, bd.f_left - bd.df_left])
    f = np.array([bd.f_right, bd.f_left])
    try:
        tk = 0.5 * f @ mat2_inv(a)
    except SingularMatrix as exc:
        raise SingularImageSet(f"boundary vectors are linearly dependent at k={bd.k!r}") from exc
    bc_residual = float(np.max(np.linalg.norm(tk @ a - 0.5 * f, axis=0)))
    try:
        delta = delta_k(coefficients_from_boundary_data(bd))
    except ValueError:
        delta = complex("nan")
    return TkMatrix(bd.k, tk, delta, bc_residual)


def _phases(c):
    k = check_wavenumber(c.k)
    theta = 1 + 1j * k
    e_alpha = theta.conjugate() / theta
    e_phi = np.exp(-2j * c.rho * k.real)
    return theta, e_alpha, e_phi


def _delta_matrix(c):
    _, e_alpha, e_phi = _phases(c)
    g = e_alpha * e_phi
    return np.array([[c.Rr + g, c.Tr], [c.Tl, c.Rl + g]])


def delta_k(c):
    """Delta_k = det((Rr + e^{i(a+p)}, Tr), (Tl, Rl + e^{i(a+p)}))."""
    return complex(det2(_delta_matrix(c)))


def tk_closed_form(c):
    """Closed-form entries t_ij, reading theta-bar as conj(1 + ik)."""
    theta, e_alpha, e_phi = _phases(c)
    dm = _delta_matrix(c)
    d = complex(det2(dm))
    if abs(d) <= singular_threshold(dm):
        raise SingularImageSet(f"Delta_k = {d!r} at k={c.k!r}")
    g = e_alpha * e_phi
    p = e_phi * (e_alpha - 1)
    tk = np.array([[d - p * (c.Rl + g), c.Tl * p],
                   [c.Tr * p, d - p * (c.Rr + g)]]) / (2 * theta * d)
    bd = traveling_wave_boundary_values(c)
    a = np.array([bd.f_right + bd.df_right, bd.f_left - bd.df_left])
    f = np.array([bd.f_right, bd.f_left])
    bc_residual = float(np.max(np.linalg.norm(tk @ a - 0.5 * f, axis=0)))
    return TkMatrix(c.k, tk, d, bc_residual)


def boundary_triplet_coords(f_val, f_der):
    """Coordinates (gamma0, gamma1) of boundary data in C^2.

    ``f_val = (f(rho), f(-rho))`` and ``f_der = (f'(rho), f'(-rho))``.
    Members of D(H_k) satisfy T_k gamma1 = gamma0.
    """
    fr, fl = f_val
    dr, dl = f_der
    r2 = np.sqrt(2.0)
    gamma0 = (r2 / 2) * np.array([fr, fl], dtype=complex)
    gamma1 = r2 * np.array([fr + dr, fl - dl], dtype=complex)
    return gamma0, gamma1
