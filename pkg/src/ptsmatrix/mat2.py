"""Closed-form 2x2 complex linear algebra and the Pauli basis.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype complex.
Nothing here iterates: eigenvalues and singular values come from the
quadratic formula.
"""
import numpy as np

from .exceptions import SingularMatrix

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)

SINGULAR_RTOL = 1e-14


def as_mat2(a):
    """Coerce ``a`` to a finite complex 2x2 array."""
    m = np.asarray(a, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def mat2(a11, a12, a21, a22):
    return as_mat2([[a11, a12], [a21, a22]])


def mat2_mul(a, b):
    return as_mat2(a) @ as_mat2(b)


def det2(a):
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def singular_threshold(a):
    """Scale-aware cutoff below which ``|det a|`` counts as zero."""
    scale = float(np.max(np.abs(a)))
    return SINGULAR_RTOL * max(1.0, scale * scale)


def is_singular(a):
    return abs(det2(a)) <= singular_threshold(a)


def mat2_inv(a):
    a = as_mat2(a)
    d = det2(a)
    if abs(d) <= singular_threshold(a):
        raise SingularMatrix(f"|det| = {abs(d):.3e} below threshold {singular_threshold(a):.3e}")
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]]) / d


def mat2_adjoint(a):
    return np.conj(as_mat2(a)).T


def hermitian_eigvals(h):
    """Eigenvalues (ascending) of a Hermitian 2x2 matrix."""
    h = as_mat2(h)
    p = 0.5 * (h[0, 0].real + h[1, 1].real)
    q = 0.5 * (h[0, 0].real - h[1, 1].real)
    r = np.hypot(q, abs(h[0, 1]))
    return p - r, p + r


def operator_norm(a):
    """Largest singular value of ``a``.

    Largest eigenvalue of A*A; the discriminant is a sum of squares, so
    nearly equal singular values do not lose precision.
    """
    a = as_mat2(a)
    p = abs(a[0, 0]) ** 2 + abs(a[1, 0]) ** 2
    s = abs(a[0, 1]) ** 2 + abs(a[1, 1]) ** 2
    r = np.conj(a[0, 0]) * a[0, 1] + np.conj(a[1, 0]) * a[1, 1]
    return float(np.sqrt(0.5 * (p + s) + np.hypot(0.5 * (p - s), abs(r))))


def pauli_decompose(a):
    """Coefficients ``(c0, c1, c2, c3)`` with ``a = sum c_j sigma_j``."""
    a = as_mat2(a)
    return (
        0.5 * (a[0, 0] + a[1, 1]),
        0.5 * (a[0, 1] + a[1, 0]),
        0.5j * (a[0, 1] - a[1, 0]),
        0.5 * (a[0, 0] - a[1, 1]),
    )


def pauli_compose(c0, c1, c2, c3):
    return c0 * SIGMA0 + c1 * SIGMA1 + c2 * SIGMA2 + c3 * SIGMA3


def pt_conjugate(a):
    """Image of ``a`` under the PT map: sigma1 . conj(a) . sigma1."""
    a = as_mat2(a)
    return np.array([[np.conj(a[1, 1]), np.conj(a[1, 0])], [np.conj(a[0, 1]), np.conj(a[0, 0])]])
