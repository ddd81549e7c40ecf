"""Transfer matrices for -f'' + q f = k^2 f across [-rho, rho].

The transfer matrix M maps Cauchy data (f, f') at x = -rho to x = +rho.
"""
import numpy as np

from .exceptions import Overflow
from .potential import Free, PiecewiseConstant, PointInteraction, Sampled

OVERFLOW_LIMIT = 1e300
TAYLOR_CUTOFF = 1e-4
MIN_SAMPLED_STEPS = 64


def segment_matrix(k, v, length):
    """Exact propagator over ``length`` for constant potential ``v``.

    With kappa^2 = k^2 - v the entries are cos(kappa L), sin(kappa L)/kappa and
    -kappa sin(kappa L); all are even in kappa, so no branch choice is needed.
    """
    kap2 = complex(k) ** 2 - v
    z2 = kap2 * length * length
    if abs(z2) < TAYLOR_CUTOFF ** 2:
        c = 1 - z2 / 2 + z2 * z2 / 24
        s_over = length * (1 - z2 / 6 + z2 * z2 / 120)
    else:
        kap = np.sqrt(kap2)
        with np.errstate(all="ignore"):
            c = np.cos(kap * length)
            s_over = np.sin(kap * length) / kap
    return np.array([[c, s_over], [-kap2 * s_over, c]], dtype=complex)


def beta_from_gamma(gamma):
    """Phase beta with exp(i beta) = (2 + i gamma) / (2 - i gamma)."""
    return 2.0 * np.arctan(gamma / 2.0)


def point_jump_matrix(gamma):
    """Jump f(0+) = e^{i beta} f(0-), f'(0+) = e^{-i beta} f'(0-)."""
    e = (2 + 1j * gamma) / (2 - 1j * gamma)
    return np.array([[e, 0], [0, 1 / e]], dtype=complex)


def _checked(m, k):
    mag = np.max(np.abs(m))
    if not np.isfinite(mag) or mag > OVERFLOW_LIMIT:
        raise Overflow(k, mag)
    return m


def transfer_matrix(q, k, steps=None):
    """Transfer matrix of potential ``q`` at wavenumber ``k``.

    ``steps`` only applies to :class:`Sampled` potentials.
    """
    k = complex(k)
    if isinstance(q, Free):
        m = segment_matrix(k, 0.0, 2 * q.rho)
    elif isinstance(q, PointInteraction):
        half = segment_matrix(k, 0.0, q.rho)
        m = half @ point_jump_matrix(q.gamma) @ half
    elif isinstance(q, PiecewiseConstant):
        m = np.eye(2, dtype=complex)
        x = -q.rho
        for s in q.segments:
            if s.lo > x:
                m = segment_matrix(k, 0.0, s.lo - x) @ m
            m = segment_matrix(k, s.v, s.hi - s.lo) @ m
            x = s.hi
        if q.rho > x:
            m = segment_matrix(k, 0.0, q.rho - x) @ m
    elif isinstance(q, Sampled):
        return transfer_matrix_sampled(q, k, steps)
    else:
        raise TypeError(f"unsupported potential {q!r}")
    return _checked(m, k)


def transfer_matrix_sampled(q, k, steps=None):
    """Midpoint (one-point Magnus) product for a sampled potential.

    Each of ``steps`` equal sub-intervals is propagated exactly with the
    potential frozen at the sub-interval midpoint, giving second order in
    the step size.
    """
    if steps is None:
        steps = max(MIN_SAMPLED_STEPS, q.values.size - 1)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    k = complex(k)
    h = 2 * q.rho / steps
    mids = -q.rho + h * (np.arange(steps) + 0.5)
    return _checked(ordered_product(segment_matrices(k, q(mids), h)), k)


def segment_matrices(k, vs, length):
    """Vectorised :func:`segment_matrix` over an array of potential values."""
    kap2 = complex(k) ** 2 - np.asarray(vs, dtype=complex)
    z2 = kap2 * length * length
    small = np.abs(z2) < TAYLOR_CUTOFF ** 2
    kap = np.sqrt(kap2)
    safe = np.where(small, 1.0, kap)
    with np.errstate(all="ignore"):
        c = np.where(small, 1 - z2 / 2 + z2 * z2 / 24, np.cos(kap * length))
        s_over = np.where(small, length * (1 - z2 / 6 + z2 * z2 / 120), np.sin(safe * length) / safe)
    out = np.empty(kap2.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s_over
    out[..., 1, 0] = -kap2 * s_over
    out[..., 1, 1] = c
    return out


def ordered_product(mats):
    """Return mats[n-1] @ ... @ mats[0] by pairwise reduction."""
    mats = np.asarray(mats)
    with np.errstate(all="ignore"):
        while mats.shape[0] > 1:
            if mats.shape[0] % 2:
                mats = np.concatenate([mats, np.eye(2, dtype=complex)[None]])
            mats = mats[1::2] @ mats[0::2]
    return mats[0]


def free_transfer_matrix(k, rho):
    """Closed form ((cos 2k rho, sin(2k rho)/k), (-k sin 2k rho, cos 2k rho))."""
    return segment_matrix(k, 0.0, 2 * rho)
