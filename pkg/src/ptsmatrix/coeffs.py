"""Generalized reflection/transmission coefficients at complex k.

The incident waves are exp(-i conj(k) x) from the right and exp(i conj(k) x)
from the left; outgoing waves are exp(+-ikx).  For real k this is ordinary
scattering, elsewhere in the upper half-plane the incident wave is the
particular solution produced by the inhomogeneity (conj(k)^2 - k^2) e^{..}.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, SingularMatching, WholePlaneSpectrum
from .mat2 import det2, singular_threshold
from .potential import PointInteraction, support_radius
from .propagate import beta_from_gamma, transfer_matrix


@dataclass(frozen=True)
class ScatteringCoefficients:
    k: complex
    rho: float
    Rl: complex
    Rr: complex
    Tl: complex
    Tr: complex

    @property
    def parity_defect(self):
        return max(abs(self.Rl - self.Rr), abs(self.Tl - self.Tr))


def check_wavenumber(k, allow_real=True):
    """Validate ``k`` for the coefficient route and return it as complex."""
    k = complex(k)
    if not (np.isfinite(k.real) and np.isfinite(k.imag)):
        raise DomainError(f"k must be finite, got {k!r}")
    if k.imag < 0 or (k.imag == 0 and not allow_real):
        raise DomainError(f"k must lie in the upper half-plane, got {k!r}")
    if k.real == 0:
        raise DomainError(f"Re k = 0 is excluded (k = {k!r}): the incident wave degenerates")
    return k


def _solve2(a, b):
    d = det2(a)
    if abs(d) <= singular_threshold(a):
        raise SingularMatching(f"matching determinant {abs(d):.3e} is numerically zero")
    return ((a[1, 1] * b[0] - a[0, 1] * b[1]) / d,
            (a[0, 0] * b[1] - a[1, 0] * b[0]) / d)


def coefficients_from_transfer(m, k, rho):
    """Match the traveling-wave forms through the transfer matrix ``m``."""
    k = check_wavenumber(k)
    kb = k.conjugate()
    e = np.exp(1j * k * rho)
    out_right = e * np.array([1, 1j * k])          # e^{ikx} and derivative at +rho
    in_left = m @ (e * np.array([1, -1j * k]))     # e^{-ikx} at -rho, carried to +rho
    a = np.column_stack([out_right, -in_left])
    # right incidence: e^{-i kb x} + Rr e^{ikx} on the right, Tr e^{-ikx} on the left
    Rr, Tr = _solve2(a, -np.exp(-1j * kb * rho) * np.array([1, -1j * kb]))
    # left incidence: e^{i kb x} + Rl e^{-ikx} on the left, Tl e^{ikx} on the right
    Tl, Rl = _solve2(a, m @ (np.exp(-1j * kb * rho) * np.array([1, 1j * kb])))
    return ScatteringCoefficients(k, float(rho), complex(Rl), complex(Rr), complex(Tl), complex(Tr))


def scattering_coefficients(q, k, steps=None):
    k = check_wavenumber(k)
    if isinstance(q, PointInteraction) and abs(abs(q.gamma) - 2) == 0:
        raise WholePlaneSpectrum(f"|gamma| = 2: no S-matrix at any k (k = {k!r})")
    return coefficients_from_transfer(transfer_matrix(q, k, steps), k, support_radius(q))


def point_interaction_coefficients(gamma, k):
    """Closed-form coefficients of the zero-range model at rho = 0."""
    k = check_wavenumber(k)
    if abs(gamma) == 2:
        raise WholePlaneSpectrum("|gamma| = 2: cos(beta) = 0, the spectrum is the whole plane")
    b = beta_from_gamma(gamma)
    cb, sb = np.cos(b), np.sin(b)
    t = k.real / (k * cb)
    rr = 1j * (k.real * sb - k.imag * cb) / (k * cb)
    rl = -1j * (k.real * sb + k.imag * cb) / (k * cb)
    return ScatteringCoefficients(k, 0.0, rl, rr, t, t)
