"""Recovery of the metric e^Q from S-matrix samples.

Q is restricted to chi * sigma2: the only Hermitian 2x2 matrix that
anticommutes with sigma1 and with complex conjugation.  chi is fitted so
that e^Q S(-conj k) = S(k)* e^Q holds as closely as possible.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import DegenerateFit
from .mat2 import (SIGMA0, SIGMA1, SIGMA2, SIGMA3, as_mat2, mat2_adjoint, pauli_compose,
                   pauli_decompose)

CHI_BOUNDS = (-20.0, 20.0)
CHI_TOL = 1e-12


@dataclass(frozen=True)
class MetricEstimate:
    chi: float
    eQ: np.ndarray
    fit_residual: float
    beta_implied: float

    @property
    def tanh_chi(self):
        return float(np.tanh(self.chi))


def metric_from_chi(chi):
    return np.cosh(chi) * SIGMA0 + np.sinh(chi) * SIGMA2


def constrain_Q(candidate):
    """Project onto real multiples of sigma2 (Hermitian part first)."""
    c = as_mat2(candidate)
    _, _, c2, _ = pauli_decompose(0.5 * (c + mat2_adjoint(c)))
    return c2.real * SIGMA2


def c_operator(chi):
    """Metric e^{chi sigma2} and the involution C = e^{-chi sigma2} sigma1."""
    eq = metric_from_chi(chi)
    c = (np.cosh(chi) * SIGMA0 - np.sinh(chi) * SIGMA2) @ SIGMA1
    text = (f"C = cosh({chi:.17g}) P + i sinh({chi:.17g}) R,"
            " with P -> sigma1 (parity) and R -> sigma3 (sign of x)")
    return eq, c, text


def _quadratic_form(s_k, s_mkbar):
    """Coefficients (a, b, d) of sum ||c X + s Y||_F^2 = a c^2 + 2 b c s + d s^2.

    X = S(-conj k) - S(k)*, Y = sigma2 S(-conj k) - S(k)* sigma2, with
    c = cosh chi, s = sinh chi.
    """
    a = b = d = 0.0
    for sk, sm in zip(s_k, s_mkbar):
        adj = mat2_adjoint(sk)
        x = sm - adj
        y = SIGMA2 @ sm - adj @ SIGMA2
        a += float(np.sum(np.abs(x) ** 2))
        d += float(np.sum(np.abs(y) ** 2))
        b += float(np.sum(np.conj(x) * y).real)
    return a, b, d


def recover_metric(s_k, s_mkbar, bounds=CHI_BOUNDS, xtol=CHI_TOL):
    """Least-squares chi from samples of S(k) and S(-conj k).

    The objective is minimised by bounded Brent search then Newton steps on
    the analytic derivative.
    """
    s_k = [as_mat2(s) for s in s_k]
    s_mkbar = [as_mat2(s) for s in s_mkbar]
    if not s_k or len(s_k) != len(s_mkbar):
        raise ValueError("need at least one (S(k), S(-conj k)) pair of matching lengths")
    a, b, d = _quadratic_form(s_k, s_mkbar)
    # f(chi) = A cosh(2 chi) + B sinh(2 chi) + (a - d)/2
    A, B = 0.5 * (a + d), b
    scale = max(1.0, sum(float(np.sum(np.abs(s) ** 2)) for s in s_k + s_mkbar))
    if A <= 1e-24 * scale:
        raise DegenerateFit("objective is independent of chi: every e^{chi sigma2} fits equally well")
    if abs(B) >= A * (1 - 1e-15):
        raise DegenerateFit("objective has no interior minimum in chi")

    def f(chi):
        return A * np.cosh(2 * chi) + B * np.sinh(2 * chi) + 0.5 * (a - d)

    res = minimize_scalar(f, bounds=bounds, method="bounded", options={"xatol": 1e-9})
    chi = float(res.x)
    for _ in range(50):
        g = 2 * (A * np.sinh(2 * chi) + B * np.cosh(2 * chi))
        h = 4 * (A * np.cosh(2 * chi) + B * np.sinh(2 * chi))
        step = g / h
        chi -= step
        if abs(step) <= xtol:
            break
    fit_residual = float(np.sqrt(fit_objective(chi, s_k, s_mkbar) / len(s_k)))
    return MetricEstimate(chi, metric_from_chi(chi), fit_residual, float(np.arcsin(np.tanh(chi))))


def fit_objective(chi, s_k, s_mkbar):
    """Direct evaluation of sum_j ||e^Q S_j(-conj k) - S_j(k)* e^Q||_F^2."""
    eq = metric_from_chi(chi)
    return float(sum(np.sum(np.abs(eq @ as_mat2(m) - mat2_adjoint(as_mat2(s)) @ eq) ** 2)
                     for s, m in zip(s_k, s_mkbar)))


def general_metric_diagnostic(s_k, s_mkbar, rtol=1e-10):
    """Fit an unconstrained Hermitian metric G with G S(-conj k) = S(k)* G.

    G = sum g_j sigma_j with real g_j ranges over the numerical null space of
    the stacked linear system (or its best direction when the null space is
    empty).  Within it the vector closest to span{sigma0, sigma2} is
    reported; ``discarded_fraction`` is the part of that vector the chi * sigma2
    model cannot represent.
    """
    cols = []
    for basis in (SIGMA0, SIGMA1, SIGMA2, SIGMA3):
        blocks = [basis @ as_mat2(m) - mat2_adjoint(as_mat2(s)) @ basis for s, m in zip(s_k, s_mkbar)]
        v = np.concatenate([b.ravel() for b in blocks])
        cols.append(np.concatenate([v.real, v.imag]))
    system = np.column_stack(cols)
    _, sv, vt = np.linalg.svd(system, full_matrices=True)
    sv = np.concatenate([sv, np.zeros(4 - sv.size)])
    null = vt[sv <= rtol * max(sv[0], 1.0)]
    if null.shape[0] == 0:
        null = vt[-1:]
    proj = null[:, [0, 2]]
    u, _, _ = np.linalg.svd(proj, full_matrices=True)
    g = u[:, 0] @ null
    if g[0] < 0:
        g = -g
    g = g / np.linalg.norm(g)
    constrained_sv = np.linalg.svd(system[:, [0, 2]], compute_uv=False)
    return {
        "coefficients": [float(x) for x in g],
        "metric": pauli_compose(*g),
        "null_dimension": int((sv <= rtol * max(sv[0], 1.0)).sum()),
        "smallest_singular_value": float(sv[-1]),
        "constrained_smallest_singular_value": float(constrained_sv[-1]),
        "discarded_fraction": float(np.hypot(g[1], g[3])),
    }
