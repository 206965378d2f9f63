"""Deterministic JSON encoding for the library's value types.

Floats are written with 17 significant digits so that decode(encode(x))
reproduces every double exactly and equal inputs give identical bytes.
"""
import json
import math

import numpy as np

from .boundary import BoundaryGrid, OuterNumeric
from .errors import SchemaError
from .hardy import Cyclicity, FiniteBlaschke, HardyFunction, classify_and_factor
from .rational import Polynomial, RationalFn


def _num(x):
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if not math.isfinite(x):
        raise SchemaError(f"non-finite number {x!r} cannot be serialized")
    return "%.17g" % x


def dumps(obj, indent=2):
    """Canonical JSON text (trailing newline included)."""
    return _dump(obj, 0, indent) + "\n"


def _flat(obj):
    return isinstance(obj, list) and all(
        isinstance(x, (int, float, np.floating, np.integer, bool, str)) or x is None or
        (isinstance(x, list) and all(isinstance(y, (int, float, np.floating)) for y in x))
        for x in obj)


def _dump(obj, level, indent):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        return _dump(obj.tolist(), level, indent)
    if isinstance(obj, (list, tuple)):
        obj = list(obj)
        if not obj:
            return "[]"
        if _flat(obj):
            return "[" + ", ".join(_dump(x, level, indent) for x in obj) + "]"
        items = [pad + _dump(x, level + 1, indent) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(str(k)) + ": " + _dump(v, level + 1, indent)
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def complex_pair(c):
    c = complex(c)
    return [c.real, c.imag]


def complex_array(a):
    return [complex_pair(c) for c in np.asarray(a, dtype=np.complex128).ravel()]


def from_pairs(obj, what="coefficients"):
    try:
        return np.array([complex(re, im) for re, im in obj], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what}: expected a list of [re, im] pairs") from exc


# value encoders --------------------------------------------------------------

def poly_json(p):
    return complex_array(p.coeffs)


def rational_json(f):
    return {"num": poly_json(f.num), "den": poly_json(f.den)}


def rational_raw(obj):
    """RationalFn from JSON without canonicalizing (keeps coefficients verbatim)."""
    if not isinstance(obj, dict) or "num" not in obj:
        raise SchemaError("rational function needs a 'num' field")
    num = from_pairs(obj["num"], "num")
    den = from_pairs(obj.get("den", [[1, 0]]), "den")
    if not np.any(den):
        raise SchemaError("denominator is identically zero")
    return RationalFn(Polynomial(num), Polynomial(den))


def blaschke_json(b):
    return {"zeros": complex_array(b.zeros), "const": complex_pair(b.const)}


def blaschke_from_json(obj):
    try:
        return FiniteBlaschke(from_pairs(obj.get("zeros", []), "zeros"),
                              complex(*obj.get("const", [1, 0])))
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"invalid Blaschke product: {exc}") from exc


def hardy_json(h):
    out = rational_json(h.value)
    out["cyclicity"] = h.cyclicity.value
    return out


def hardy_from_json(obj):
    f = rational_raw(obj)
    return classify_and_factor(f, obj.get("cyclicity"))


def grid_json(g):
    return {"grid": complex_array(g.samples)}


def entry_json(x):
    """Rational or grid symbol entry."""
    if isinstance(x, OuterNumeric):
        x = x.boundary
    if isinstance(x, BoundaryGrid):
        return grid_json(x)
    if isinstance(x, HardyFunction):
        return rational_json(x.value)
    if isinstance(x, FiniteBlaschke):
        return rational_json(x.to_rational())
    return rational_json(x)


def entry_from_json(obj):
    if isinstance(obj, dict) and "grid" in obj:
        return BoundaryGrid(from_pairs(obj["grid"], "grid"))
    return rational_raw(obj)


def symbol_json(G):
    return [[entry_json(x) for x in row] for row in G.entries]


def symbol_from_json(rows, n_samples=None):
    from .toeplitz import MatrixSymbol

    if not isinstance(rows, list) or not rows:
        raise SchemaError("symbol must be a non-empty matrix")
    cells = [[entry_from_json(x) for x in row] for row in rows]
    sizes = {c.n_samples for row in cells for c in row if isinstance(c, BoundaryGrid)}
    if len(sizes) > 1:
        raise SchemaError("grid entries disagree on the number of samples")
    if n_samples is None:
        n_samples = sizes.pop() if sizes else 4096
    try:
        return MatrixSymbol(tuple(tuple(r) for r in cells), n_samples)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def vector_json(vec):
    return [entry_json(x) for x in vec]


def kmin_json(r):
    return {
        "kind": r.kind.value,
        "branch": r.branch,
        "symbol": symbol_json(r.symbol) if r.symbol is not None else None,
        "theta": blaschke_json(r.theta) if r.theta is not None else None,
        "residuals": [float(x) for x in r.residuals],
        "warnings": list(r.warnings),
    }


def verdict_json(v):
    ev = {}
    for k, val in v.evidence.items():
        if isinstance(val, np.ndarray):
            val = val.tolist()
        elif isinstance(val, (np.floating, np.integer, np.bool_)):
            val = val.item()
        ev[k] = val
    return {
        "status": v.status.value,
        "dim_at_zero": int(v.dim_at_zero),
        "witness": None if v.witness is None else [complex_array(row) for row in v.witness],
        "evidence": ev,
    }


def cyclicity_name(x):
    return Cyclicity(x).value
