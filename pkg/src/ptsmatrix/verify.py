"""Residuals of the symmetry relations satisfied by S(k).

All residuals are operator norms.  Pairs are (k, -conj(k)).
"""
from dataclasses import asdict, dataclass
import statistics

import numpy as np

from .exceptions import NotPositiveDefinite
from .mat2 import SIGMA0, as_mat2, hermitian_eigvals, mat2_adjoint, operator_norm, pt_conjugate
from .smatrix import Route, smatrix_sample

DEFAULT_TOLERANCES = {
    "pt": 1e-8,
    "hermitian": 1e-8,
    "contraction": 1e-10,
    "unitarity": 1e-8,
    "metric_intertwining": 1e-10,
    "metric_min_eig": 1e-10,
}
RELATIONS = ("pt", "hermitian", "contraction", "unitarity", "metric")


@dataclass
class RelationResiduals:
    k: complex
    pt_relation: float
    hermitian_analyticity: float
    contraction_excess: float
    metric_intertwining: float = float("nan")
    metric_contraction_min_eig: float = float("nan")
    unitarity: float = float("nan")


def check_pt_relation(s_k, s_mkbar):
    """|| S(k) - sigma1 conj(S(-conj k)) sigma1 ||."""
    return operator_norm(as_mat2(s_k) - pt_conjugate(s_mkbar))


def check_hermitian_analyticity(s_k, s_mkbar):
    return operator_norm(as_mat2(s_mkbar) - mat2_adjoint(s_k))


def check_contraction(s_k):
    return max(0.0, operator_norm(s_k) - 1.0)


def check_unitarity(s_k):
    s = as_mat2(s_k)
    return operator_norm(mat2_adjoint(s) @ s - SIGMA0)


def check_positive_definite(m, rtol=1e-12):
    m = as_mat2(m)
    if operator_norm(m - mat2_adjoint(m)) > rtol * max(1.0, operator_norm(m)):
        raise NotPositiveDefinite("metric is not Hermitian")
    lo, _ = hermitian_eigvals(0.5 * (m + mat2_adjoint(m)))
    if lo <= 0:
        raise NotPositiveDefinite(f"metric has non-positive eigenvalue {lo:.3e}")
    return m


def check_metric_relations(s_k, s_mkbar, eq):
    """Residuals of e^Q S(-conj k) = S(k)* e^Q and e^Q - S(k)* e^Q S(k) >= 0.

    Returns ``(intertwining, min_eig)``; the second relation holds when
    ``min_eig >= -tol``.
    """
    eq = check_positive_definite(eq)
    s_k, s_mkbar = as_mat2(s_k), as_mat2(s_mkbar)
    sk_adj = mat2_adjoint(s_k)
    intertwining = operator_norm(eq @ s_mkbar - sk_adj @ eq)
    diff = eq - sk_adj @ eq @ s_k
    min_eig, _ = hermitian_eigvals(0.5 * (diff + mat2_adjoint(diff)))
    return intertwining, float(min_eig)


def residuals_for_pair(k, s_k, s_mkbar, eq=None):
    r = RelationResiduals(
        k=complex(k),
        pt_relation=check_pt_relation(s_k, s_mkbar),
        hermitian_analyticity=check_hermitian_analyticity(s_k, s_mkbar),
        contraction_excess=check_contraction(s_k),
    )
    if eq is not None:
        r.metric_intertwining, r.metric_contraction_min_eig = check_metric_relations(s_k, s_mkbar, eq)
    if complex(k).imag == 0:
        r.unitarity = check_unitarity(s_k)
    return r


def symmetric_values(values):
    """Sorted values closed under negation, built so x and -x are exact mirrors."""
    a = np.unique(np.abs(np.asarray(values, dtype=float)))
    return np.concatenate([-a[::-1][a[::-1] > 0], a]) if a.size else a


def symmetrized_grid(grid):
    """Wavenumber array (re outer, im inner) closed under k -> -conj(k)."""
    re = np.linspace(*map(float, grid["re"][:2]), int(grid["re"][2]))
    im = np.linspace(*map(float, grid["im"][:2]), int(grid["im"][2]))
    return symmetric_values(re), im


def pair_samples(q, re, im, route=Route.both, steps=None):
    """Yield (k, sample(k), sample(-conj k)) for every grid point with Re k != 0."""
    cache = {}

    def get(x, y):
        key = (x, y)
        if key not in cache:
            cache[key] = smatrix_sample(q, complex(x, y), route, steps)
        return cache[key]

    for x in re:
        for y in im:
            if x == 0:
                continue
            yield complex(x, y), get(x, y), get(-x, y)


def verify_potential(q, grid, relations=RELATIONS, eq=None, route=Route.both,
                     tolerances=None, steps=None):
    """Evaluate the selected relations over a symmetrized grid.

    Unitarity is evaluated on the real axis (Im k = 0) at the grid's real parts.
    Returns a JSON-ready report dict with a boolean ``passed``.
    """
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    relations = tuple(relations)
    unknown = set(relations) - set(RELATIONS)
    if unknown:
        raise ValueError(f"unknown relations {sorted(unknown)}")
    if "metric" in relations and eq is None:
        raise ValueError("relation 'metric' needs a metric e^Q")
    re, im = symmetrized_grid(grid)
    rows = []
    skipped = 0
    for k, a, b in pair_samples(q, re, im, route, steps):
        if not (a.ok and b.ok):
            skipped += 1
            continue
        rows.append(residuals_for_pair(k, a.S, b.S, eq if "metric" in relations else None))
    if "unitarity" in relations:
        for k, a, b in pair_samples(q, re, [0.0], route, steps):
            if a.ok and b.ok:
                rows.append(residuals_for_pair(k, a.S, b.S, eq if "metric" in relations else None))

    fields = {
        "pt": "pt_relation",
        "hermitian": "hermitian_analyticity",
        "contraction": "contraction_excess",
        "unitarity": "unitarity",
        "metric": "metric_intertwining",
    }
    summary = {}
    passed = True
    for rel in relations:
        name = fields[rel]
        vals = [getattr(r, name) for r in rows if not np.isnan(getattr(r, name))]
        entry = _stats(vals)
        entry["tolerance"] = tol["metric_intertwining" if rel == "metric" else rel]
        entry["passed"] = bool(vals) and entry["max"] <= entry["tolerance"]
        if rel == "metric":
            eigs = [r.metric_contraction_min_eig for r in rows if not np.isnan(r.metric_contraction_min_eig)]
            entry["min_eig"] = min(eigs) if eigs else None
            entry["min_eig_tolerance"] = tol["metric_min_eig"]
            entry["passed"] = entry["passed"] and bool(eigs) and min(eigs) >= -tol["metric_min_eig"]
        summary[rel] = entry
        passed = passed and entry["passed"]
    return {
        "relations": list(relations),
        "summary": summary,
        "pairs": [_row_dict(r) for r in rows],
        "skipped_pairs": skipped,
        "passed": passed,
    }


def _stats(vals):
    if not vals:
        return {"count": 0, "max": None, "median": None}
    return {"count": len(vals), "max": float(max(vals)), "median": float(statistics.median(vals))}


def _row_dict(r):
    d = asdict(r)
    k = d.pop("k")
    out = {"re_k": k.real, "im_k": k.imag}
    out.update({key: (None if np.isnan(v) else float(v)) for key, v in d.items()})
    return out
