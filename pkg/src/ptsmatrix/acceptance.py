"""Exit criteria for the library, runnable from pytest or ``ptsmatrix selftest``."""
from dataclasses import dataclass
import time

import numpy as np

from .coeffs import scattering_coefficients
from .imageset import tk_from_boundary_data, traveling_wave_boundary_values
from .inverse import recover_metric
from .mat2 import SIGMA1, det2, mat2_adjoint, operator_norm, pt_conjugate
from .potential import Free, PointInteraction, Sampled, pt_step_well, square_well
from .propagate import beta_from_gamma, transfer_matrix, transfer_matrix_sampled
from .smatrix import Route, smatrix_grid, smatrix_sample
from .verify import (check_contraction, check_hermitian_analyticity, check_metric_relations,
                     check_pt_relation, check_unitarity)

GRID = {"re": [-2.0, 2.0, 20], "im": [0.1, 2.0, 20]}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.number}: {self.name} -- {self.detail} ({self.seconds:.3f}s)"


def _grid_ks():
    re = np.linspace(*GRID["re"][:2], GRID["re"][2])
    im = np.linspace(*GRID["im"][:2], GRID["im"][2])
    return re, im


def _pairs(q, route=Route.both):
    re, im = _grid_ks()
    out = []
    for x in re:
        for y in im:
            a = smatrix_sample(q, complex(x, y), route)
            b = smatrix_sample(q, complex(-x, y), route)
            if a.ok and b.ok:
                out.append((complex(x, y), a.S, b.S))
    return out


def well():
    return square_well(2.0, 0.5, rho=1.0)


def pt_well():
    return pt_step_well(1.5, 0.5, rho=1.0)


def smooth_sampled():
    return Sampled.from_function(lambda x: 3 * np.cos(np.pi * x / 2) ** 2 + 1j * np.sin(np.pi * x), 1.0, 4001)


def criterion_1():
    t0 = time.perf_counter()
    q = PointInteraction(1.0)
    target = -np.array([[4j / 3, 5 / 3], [5 / 3, -4j / 3]])
    coeff = smatrix_grid(q, GRID, Route.coeffs)
    tk = smatrix_grid(q, GRID, Route.tk)
    elapsed = time.perf_counter() - t0
    n_ok = sum(s.ok for s in coeff)
    e_c = max(operator_norm(s.S - target) for s in coeff if s.ok)
    e_t = max(operator_norm(s.S - target) for s in tk if s.ok)
    passed = n_ok == len(coeff) and e_c <= 1e-10 and e_t <= 1e-8 and elapsed < 1.0
    return passed, f"{n_ok}/{len(coeff)} ok, coeff err {e_c:.2e}, tk err {e_t:.2e}", elapsed


def criterion_2():
    bad = 0
    total = 0
    for g in (2.0, -2.0):
        for s in smatrix_grid(PointInteraction(g), GRID, Route.both):
            total += 1
            if s.ok or np.any(np.isfinite(s.S)):
                bad += 1
    return bad == 0, f"{total - bad}/{total} points flagged singular", None


def criterion_3():
    t0 = time.perf_counter()
    re = np.linspace(-2, 2, 4)
    im = np.linspace(0.1, 2, 3)
    worst_tanh = worst_int = 0.0
    worst_eig = np.inf
    for g in (-1.5, -0.5, 0.5, 1.0, 1.5):
        q = PointInteraction(g)
        sk, sm = [], []
        for x in re:
            for y in im:
                sk.append(smatrix_sample(q, complex(x, y)).S)
                sm.append(smatrix_sample(q, complex(-x, y)).S)
        est = recover_metric(sk, sm)
        worst_tanh = max(worst_tanh, abs(np.tanh(est.chi) - np.sin(beta_from_gamma(g))))
        for a, b in zip(sk, sm):
            i, e = check_metric_relations(a, b, est.eQ)
            worst_int = max(worst_int, i)
            worst_eig = min(worst_eig, e)
    elapsed = time.perf_counter() - t0
    passed = worst_tanh <= 1e-8 and worst_int <= 1e-10 and worst_eig >= -1e-10 and elapsed < 1.0
    return passed, (f"|tanh chi - sin beta| {worst_tanh:.2e}, intertwining {worst_int:.2e},"
                    f" min eig {worst_eig:.2e}"), elapsed


def criterion_4():
    worst = 0.0
    n_ok = total = 0
    for rho in (0.0, 0.5, 1.0):
        for route in (Route.coeffs, Route.tk):
            for s in smatrix_grid(Free(rho), GRID, route):
                total += 1
                if s.ok:
                    n_ok += 1
                    worst = max(worst, operator_norm(s.S + np.exp(2j * s.k * rho) * SIGMA1))
    return n_ok == total and worst <= 1e-10, f"{n_ok}/{total} ok, max err {worst:.2e}", None


def criterion_5():
    worst = 0.0
    n_ok = 0
    for q in (Free(1.0), well(), PointInteraction(1.0), pt_well()):
        for s in smatrix_grid(q, GRID, Route.both):
            if s.ok:
                n_ok += 1
                worst = max(worst, s.route_disagreement)
    return n_ok > 0 and worst <= 1e-8, f"{n_ok} ok points, max ||S_coeffs - S_tk|| {worst:.2e}", None


def criterion_6():
    q = well()
    pairs = _pairs(q)
    contraction = max(check_contraction(a) for _, a, _ in pairs)
    herm = max(check_hermitian_analyticity(a, b) for _, a, b in pairs)
    re, _ = _grid_ks()
    unit = max(check_unitarity(smatrix_sample(q, complex(x, 0.0)).S) for x in re)
    passed = contraction <= 1e-10 and herm <= 1e-8 and unit <= 1e-8
    return passed, f"norm excess {contraction:.2e}, hermitian {herm:.2e}, unitarity {unit:.2e}", None


def criterion_7():
    worst = 0.0
    count = 0
    for q in (pt_well(), PointInteraction(1.0)):
        for _, a, b in _pairs(q):
            worst = max(worst, check_pt_relation(a, b))
            count += 1
    return count > 0 and worst <= 1e-8, f"{count} pairs, max PT residual {worst:.2e}", None


def criterion_8():
    re, im = _grid_ks()
    ks = (re[:, None] + 1j * im[None, :]).ravel()
    worst = 0.0
    potentials = (Free(1.0), well(), pt_well(), PointInteraction(1.0), PointInteraction(1.0, rho=0.5))
    for q in potentials:
        for k in ks:
            worst = max(worst, abs(det2(transfer_matrix(q, k)) - 1))
    sq = smooth_sampled()
    for k in ks[::37]:
        worst = max(worst, abs(det2(transfer_matrix(sq, k)) - 1))
    k = 1.3 + 0.4j
    ref = transfer_matrix_sampled(sq, k, 100_000)
    worst = max(worst, abs(det2(ref) - 1))
    errs = [operator_norm(transfer_matrix_sampled(sq, k, n) - ref) for n in (40, 80, 160)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    passed = worst <= 1e-10 and orders.min() >= 1.9
    return passed, f"max |det - 1| {worst:.2e}, measured orders {np.round(orders, 3).tolist()}", None


def _tk(q, k):
    c = scattering_coefficients(q, k)
    return tk_from_boundary_data(traveling_wave_boundary_values(c)).tk


def criterion_9():
    re, im = _grid_ks()
    adj = pt = 0.0
    for x in re:
        for y in im:
            k = complex(x, y)
            q = well()
            adj = max(adj, operator_norm(mat2_adjoint(_tk(q, k)) - _tk(q, -k.conjugate())))
            for p in (well(), pt_well(), PointInteraction(1.0)):
                pt = max(pt, operator_norm(pt_conjugate(_tk(p, k)) - _tk(p, -k.conjugate())))
    return adj <= 1e-8 and pt <= 1e-8, f"||T* - T(-conj k)|| {adj:.2e}, PT image residual {pt:.2e}", None


CRITERIA = [
    (1, "point-interaction S-matrix is the constant matrix", criterion_1),
    (2, "|gamma| = 2 is singular everywhere", criterion_2),
    (3, "metric recovery gives tanh(chi) = sin(beta)", criterion_3),
    (4, "free potential S(k) = -exp(2ik rho) sigma1", criterion_4),
    (5, "coefficient and image-set routes agree", criterion_5),
    (6, "self-adjoint well: contraction, hermitian analyticity, unitarity", criterion_6),
    (7, "PT relation", criterion_7),
    (8, "unit determinant and second-order sampled propagation", criterion_8),
    (9, "image-set symmetries", criterion_9),
]


def run_criterion(number):
    for n, name, func in CRITERIA:
        if n == number:
            t0 = time.perf_counter()
            passed, detail, timed = func()
            return CriterionResult(n, name, bool(passed), detail,
                                   time.perf_counter() - t0 if timed is None else timed)
    raise KeyError(number)


def run_all():
    return [run_criterion(n) for n, _, _ in CRITERIA]
