"""JSON serialization of the package's data types.

Floats are emitted with 17 significant digits so every value
round-trips exactly through text.  Complex numbers are [re, im] pairs;
matrices are row-major pair lists with explicit shape; points carry
their canonical representatives.  Single-qubit suites may be written in
a shorthand where each entry is a finite number, an [re, im] pair, or
the string "inf".

Structural problems in parsed data raise FormatError (a ValueError):
the data could not be understood at all.  Well-formed data that
violates a mathematical precondition raises the matching domain error
downstream instead.
"""

import json
import math

import numpy as np

from .errors import FormatError
from .projective import ProjectivePoint, RiemannPoint, from_riemann, to_riemann
from .suites import Suite


def _format_float(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a float")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def dumps(obj):
    """Compact JSON text with floats at 17 significant digits."""
    pieces = []
    _write(obj, pieces)
    return "".join(pieces)


def _write(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(", ")
            _write(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            if not isinstance(key, str):
                raise TypeError(f"non-string key {key!r}")
            out.append(json.dumps(key))
            out.append(": ")
            _write(value, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text):
    """Parse JSON text; malformed text raises FormatError."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def _require(condition, message):
    if not condition:
        raise FormatError(message)


def _as_number(value, what):
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{what} must be a number")
    _require(math.isfinite(value), f"{what} must be finite")
    return float(value)


def pair_to_complex(pair, what="complex pair"):
    _require(isinstance(pair, (list, tuple)) and len(pair) == 2,
             f"{what} must be a [re, im] pair")
    return complex(_as_number(pair[0], what), _as_number(pair[1], what))


def complex_to_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [complex_to_pair(z) for z in m.ravel()],
    }


def matrix_from_json(obj):
    _require(isinstance(obj, dict), "matrix must be an object")
    _require("rows" in obj and "cols" in obj and "data" in obj,
             "matrix needs rows, cols, and data")
    rows, cols = obj["rows"], obj["cols"]
    _require(isinstance(rows, int) and isinstance(cols, int)
             and rows > 0 and cols > 0, "matrix shape must be positive")
    data = obj["data"]
    _require(isinstance(data, list) and len(data) == rows * cols,
             f"matrix data must hold {rows * cols} entries")
    flat = [pair_to_complex(entry, "matrix entry") for entry in data]
    return np.array(flat, dtype=complex).reshape(rows, cols)


def point_to_json(p):
    return {"coords": [complex_to_pair(z) for z in p.coords]}


def point_from_json(obj):
    _require(isinstance(obj, dict) and "coords" in obj,
             "point must be an object with coords")
    coords = obj["coords"]
    _require(isinstance(coords, list) and coords, "coords must be nonempty")
    return ProjectivePoint([pair_to_complex(c, "coordinate")
                            for c in coords])


def riemann_to_json(z):
    return {"a": complex_to_pair(z.a), "b": complex_to_pair(z.b)}


def riemann_from_json(obj):
    _require(isinstance(obj, dict) and "a" in obj and "b" in obj,
             "sphere point must be an object with a and b")
    return RiemannPoint(pair_to_complex(obj["a"], "a"),
                        pair_to_complex(obj["b"], "b"))


def sphere_point_from_json(entry):
    """Sphere point from a full or shorthand JSON entry.

    Accepts {"a": ..., "b": ...}, {"coords": ...} (dimension two), a
    finite number, an [re, im] pair, or "inf".
    """
    if isinstance(entry, dict):
        if "a" in entry or "b" in entry:
            return riemann_from_json(entry)
        point = point_from_json(entry)
        _require(point.dim == 2, "sphere point coords must have length two")
        return to_riemann(point)
    if entry == "inf":
        return RiemannPoint.infinity()
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        _require(math.isfinite(entry), "sphere value must be finite or inf")
        return RiemannPoint.from_value(entry)
    if isinstance(entry, (list, tuple)):
        return RiemannPoint.from_value(pair_to_complex(entry,
                                                       "sphere value"))
    raise FormatError(f"unrecognized sphere point {entry!r}")


def _suite_entry_from_json(entry, n):
    if n == 2:
        return from_riemann(sphere_point_from_json(entry))
    point = point_from_json(entry)
    _require(point.dim == n, f"point dimension {point.dim}, suite has {n}")
    return point


def suite_to_json(sigma):
    return {
        "n": sigma.n,
        "ell": sigma.ell,
        "domain": [point_to_json(p) for p in sigma.domain],
        "range": [point_to_json(p) for p in sigma.range_points],
    }


def suite_from_json(obj):
    _require(isinstance(obj, dict), "suite must be an object")
    _require("domain" in obj and "range" in obj,
             "suite needs domain and range")
    domain, range_ = obj["domain"], obj["range"]
    _require(isinstance(domain, list) and isinstance(range_, list),
             "suite halves must be lists")
    _require(len(domain) == len(range_) and domain,
             "suite halves must pair up and be nonempty")
    n = obj.get("n", 2)
    _require(isinstance(n, int) and n >= 2, "n must be an integer >= 2")
    if "ell" in obj:
        _require(obj["ell"] == len(domain),
                 "ell disagrees with the domain length")
    return Suite(
        domain=[_suite_entry_from_json(e, n) for e in domain],
        range_points=[_suite_entry_from_json(e, n) for e in range_])


def dilation_to_json(result):
    return {
        "U": matrix_to_json(result.unitary),
        "scale_c": complex_to_pair(result.scale_c),
        "lambda_min": float(result.lambda_min),
        "lambda_max": float(result.lambda_max),
        "gsp": float(result.gsp),
    }


def dilation_unitary_from_json(obj):
    """Realization unitary from either a bare matrix or a realization
    result object."""
    _require(isinstance(obj, dict), "expected an object")
    if "U" in obj:
        return matrix_from_json(obj["U"])
    return matrix_from_json(obj)


def channel_to_json(channel):
    return {
        "n_in": channel.n_in,
        "n_out": channel.n_out,
        "kraus": [matrix_to_json(k) for k in channel.kraus],
    }


def fit_to_json(result):
    return {
        "L": matrix_to_json(result.L),
        "tau": suite_to_json(result.tau),
        "max_fs": float(result.max_fs),
        "iterations": int(result.iterations),
        "restarts_used": int(result.restarts_used),
        "converged": bool(result.converged),
    }


def scaling_to_json(report):
    return {
        "n": report.n,
        "ell": report.ell,
        "eps_grid": [float(e) for e in report.eps_grid],
        "fractions": [float(f) for f in report.fractions],
        "slope": float(report.slope),
        "predicted_exponent": float(report.predicted_exponent),
        "samples_per_eps": report.samples_per_eps,
        "seed": report.seed,
        "excluded_eps": [float(e) for e in report.excluded_eps],
    }


def scaling_to_csv(report):
    lines = ["eps,fraction"]
    for e, f in zip(report.eps_grid, report.fractions):
        lines.append(f"{_format_float(e)},{_format_float(f)}")
    return "\n".join(lines) + "\n"


def riemann_to_value_json(z):
    """Shorthand value of a sphere point: [re, im] or "inf"."""
    if z.is_infinite:
        return "inf"
    return complex_to_pair(z.value)
