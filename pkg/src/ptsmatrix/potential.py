"""Compactly supported potentials q(x) with support in (-rho, rho)."""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigError


@dataclass(frozen=True)
class Free:
    rho: float = 0.0

    def __post_init__(self):
        _check_rho(self.rho)

    def __call__(self, x):
        return np.zeros_like(np.asarray(x, dtype=float), dtype=complex)


@dataclass(frozen=True)
class PointInteraction:
    """Zero-range PT-symmetric interaction at x = 0 with real coupling ``gamma``.

    ``rho`` is only an evaluation window; the support itself is {0}.
    """

    gamma: float
    rho: float = 0.0

    def __post_init__(self):
        _check_rho(self.rho)
        if not np.isfinite(self.gamma):
            raise ValueError("gamma must be finite")

    def __call__(self, x):
        return np.zeros_like(np.asarray(x, dtype=float), dtype=complex)


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    v: complex


@dataclass(frozen=True)
class PiecewiseConstant:
    rho: float
    segments: tuple = ()

    def __post_init__(self):
        _check_rho(self.rho)
        segs = tuple(s if isinstance(s, Segment) else Segment(float(s[0]), float(s[1]), complex(s[2]))
                     for s in self.segments)
        prev = -self.rho
        for s in segs:
            if not s.lo < s.hi:
                raise ValueError(f"segment ({s.lo}, {s.hi}) is empty or reversed")
            if s.lo < prev:
                raise ValueError("segments must be ordered, non-overlapping and inside [-rho, rho]")
            prev = s.hi
        if prev > self.rho:
            raise ValueError("segments must be ordered, non-overlapping and inside [-rho, rho]")
        object.__setattr__(self, "segments", segs)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for s in self.segments:
            out[(x > s.lo) & (x < s.hi)] = s.v
        return out

    def breakpoints(self):
        return sorted({b for s in self.segments for b in (s.lo, s.hi)})


@dataclass(frozen=True)
class Sampled:
    """Values on the uniform grid ``linspace(-rho, rho, len(values))``.

    Between grid points the potential is linearly interpolated.
    """

    rho: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_rho(self.rho)
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.size < 2:
            raise ValueError("a sampled potential needs at least 2 samples")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def grid(self):
        return np.linspace(-self.rho, self.rho, self.values.size)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        g = self.grid
        inside = (x >= -self.rho) & (x <= self.rho)
        re = np.interp(x, g, self.values.real)
        im = np.interp(x, g, self.values.imag)
        return np.where(inside, re + 1j * im, 0.0)

    @classmethod
    def from_function(cls, func, rho, n):
        return cls(rho, func(np.linspace(-rho, rho, n)))

    def __eq__(self, other):
        return (type(other) is Sampled and self.rho == other.rho
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.rho, self.values.tobytes()))


def _check_rho(rho):
    if not (np.isfinite(rho) and rho >= 0):
        raise ValueError(f"rho must be finite and >= 0, got {rho!r}")


def support_radius(q):
    return float(q.rho)


def square_well(v, a, rho=None):
    """Constant ``v`` on (-a, a)."""
    return PiecewiseConstant(a if rho is None else rho, [(-a, a, v)])


def pt_step_well(strength, a, rho=None):
    """q(x) = i * strength * sgn(x) on (-a, a)."""
    return PiecewiseConstant(a if rho is None else rho,
                             [(-a, 0.0, -1j * strength), (0.0, a, 1j * strength)])


def pt_symmetry_residual(q, n=257):
    """sup |q(x) - conj(q(-x))| over a sample set.

    For piecewise-constant potentials the sample set also contains every
    segment midpoint and both sides of each breakpoint and its mirror image,
    so a defect is never missed regardless of ``n``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if isinstance(q, (Free, PointInteraction)):
        return 0.0
    x = np.linspace(-q.rho, q.rho, n)
    if isinstance(q, PiecewiseConstant):
        cuts = np.array(sorted({b for p in q.breakpoints() for b in (p, -p)} | {-q.rho, q.rho}))
        eps = 1e-9 * max(q.rho, 1.0)
        extra = [0.5 * (cuts[:-1] + cuts[1:]), cuts - eps, cuts + eps]
        x = np.concatenate([x, *extra])
    return float(np.max(np.abs(q(x) - np.conj(q(-x)))))


def potential_from_dict(d):
    """Build a potential from its JSON description.

    Schema::

        {"type": "free"|"point"|"piecewise"|"sampled", "rho": ..., "gamma": ...,
         "segments": [{"lo":..,"hi":..,"re":..,"im":..}],
         "samples": {"values": [[re, im], ...]}}
    """
    if not isinstance(d, dict):
        raise ConfigError("potential: expected an object")
    kind = d.get("type")
    try:
        rho = float(d.get("rho", 0.0))
        if kind == "free":
            return Free(rho)
        if kind == "point":
            if "gamma" not in d:
                raise ConfigError("potential.gamma: required for type 'point'")
            return PointInteraction(float(d["gamma"]), rho)
        if kind == "piecewise":
            segs = []
            for i, s in enumerate(d.get("segments", [])):
                try:
                    segs.append((float(s["lo"]), float(s["hi"]),
                                 complex(float(s.get("re", 0.0)), float(s.get("im", 0.0)))))
                except (KeyError, TypeError, ValueError) as exc:
                    raise ConfigError(f"potential.segments[{i}]: {exc}") from None
            return PiecewiseConstant(rho, segs)
        if kind == "sampled":
            try:
                vals = [complex(float(re), float(im)) for re, im in d["samples"]["values"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"potential.samples.values: {exc}") from None
            return Sampled(rho, vals)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"potential: {exc}") from None
    raise ConfigError(f"potential.type: unknown type {kind!r}")


def potential_to_dict(q):
    if isinstance(q, Free):
        return {"type": "free", "rho": q.rho}
    if isinstance(q, PointInteraction):
        return {"type": "point", "rho": q.rho, "gamma": q.gamma}
    if isinstance(q, PiecewiseConstant):
        return {"type": "piecewise", "rho": q.rho,
                "segments": [{"lo": s.lo, "hi": s.hi, "re": s.v.real, "im": s.v.imag} for s in q.segments]}
    if isinstance(q, Sampled):
        return {"type": "sampled", "rho": q.rho,
                "samples": {"values": [[v.real, v.imag] for v in q.values]}}
    raise TypeError(f"not a potential: {q!r}")
