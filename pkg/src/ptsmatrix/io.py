"""Config documents and CSV/JSON serialisation for the command line."""
from dataclasses import dataclass, field
import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .exceptions import ConfigError
from .potential import potential_from_dict
from .smatrix import Route

CSV_COLUMNS = ("re_k", "im_k", "status", "re_S11", "im_S11", "re_S12", "im_S12",
               "re_S21", "im_S21", "re_S22", "im_S22", "abs_delta", "route_disagreement")


@dataclass
class SweepConfig:
    potential: object
    grid: dict
    route: Route = Route.both
    tolerances: dict = field(default_factory=dict)
    output_path: str = None
    output_format: str = "csv"
    relations: tuple = ("pt", "hermitian", "contraction", "unitarity")
    chi: object = None
    steps: int = None


def parse_grid(g, where="grid"):
    if not isinstance(g, dict):
        raise ConfigError(f"{where}: expected an object with 're' and 'im'")
    out = {}
    for axis in ("re", "im"):
        bounds = g.get(axis)
        if not (isinstance(bounds, (list, tuple)) and len(bounds) == 3):
            raise ConfigError(f"{where}.{axis}: expected [min, max, count]")
        try:
            lo, hi, n = float(bounds[0]), float(bounds[1]), int(bounds[2])
        except (TypeError, ValueError):
            raise ConfigError(f"{where}.{axis}: expected numbers [min, max, count]") from None
        if n != bounds[2] or n < 1:
            raise ConfigError(f"{where}.{axis}: count must be an integer >= 1")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConfigError(f"{where}.{axis}: bounds must be finite")
        out[axis] = [lo, hi, n]
    if min(out["im"][0], out["im"][1]) < 0:
        raise ConfigError(f"{where}.im: the imaginary range must be >= 0")
    return out


def config_from_dict(d):
    if not isinstance(d, dict):
        raise ConfigError("config: top level must be an object")
    if "potential" not in d:
        raise ConfigError("potential: required")
    if "grid" not in d:
        raise ConfigError("grid: required")
    potential = potential_from_dict(d["potential"])
    grid = parse_grid(d["grid"])
    try:
        route = Route(d.get("route", "both"))
    except ValueError:
        raise ConfigError(f"route: expected one of coeffs, tk, both; got {d.get('route')!r}") from None
    tolerances = d.get("tolerances", {})
    if not isinstance(tolerances, dict) or not all(isinstance(v, (int, float)) for v in tolerances.values()):
        raise ConfigError("tolerances: expected an object of numbers")
    output = d.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output: expected an object")
    fmt = output.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"output.format: expected 'csv' or 'json', got {fmt!r}")
    relations = d.get("relations", SweepConfig.relations)
    if not isinstance(relations, (list, tuple)) or not all(isinstance(r, str) for r in relations):
        raise ConfigError("relations: expected a list of names")
    chi = d.get("chi")
    if chi is not None and chi != "recover" and not isinstance(chi, (int, float)):
        raise ConfigError("chi: expected a number or \"recover\"")
    steps = d.get("steps")
    if steps is not None and (not isinstance(steps, int) or steps < 1):
        raise ConfigError("steps: expected an integer >= 1")
    return SweepConfig(potential, grid, route, dict(tolerances), output.get("path"), fmt,
                       tuple(relations), chi, steps)


def load_config(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return config_from_dict(d)


def fmt_float(x):
    """17 significant digits, enough to round-trip any double."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def sample_row(sample):
    s = sample.S
    return {
        "re_k": sample.k.real, "im_k": sample.k.imag, "status": sample.status.value,
        "re_S11": s[0, 0].real, "im_S11": s[0, 0].imag,
        "re_S12": s[0, 1].real, "im_S12": s[0, 1].imag,
        "re_S21": s[1, 0].real, "im_S21": s[1, 0].imag,
        "re_S22": s[1, 1].real, "im_S22": s[1, 1].imag,
        "abs_delta": abs(sample.delta), "route_disagreement": sample.route_disagreement,
    }


def samples_to_csv(samples):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for smp in samples:
        row = sample_row(smp)
        w.writerow([row[c] if c == "status" else fmt_float(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def samples_to_json(samples):
    return dumps({"columns": list(CSV_COLUMNS), "rows": [sample_row(s) for s in samples]})


def read_samples_csv(text):
    """Parse :func:`samples_to_csv` output back into dict rows."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({k: (v if k == "status" else float(v)) for k, v in rec.items()})
    return rows


def complex_matrix(m):
    """2x2 complex matrix as [[[re, im], [re, im]], [[re, im], [re, im]]]."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def dumps(obj, indent=2):
    """JSON text with every float written at 17 significant digits.

    NaN and infinities become null.
    """
    parts = []
    _emit(obj, parts, indent, 0)
    return "".join(parts) + "\n"


def _emit(obj, out, indent, level):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt_float(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            out.append(("," if i else "") + pad + json.dumps(str(k)) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                out.append(", " if i else "")
                _emit(v, out, indent, level + 1)
            out.append("]")
            return
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + pad)
            _emit(v, out, indent, level + 1)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
