"""Named collections of functions, Blaschke products, vectors and symbols.

File layout::

    {"entries": {
        "name": {"type": "function", "num": [[re, im], ...], "den": [...],
                 "cyclicity": "NonCyclic"},
        "name": {"type": "blaschke", "zeros": [...], "const": [re, im]},
        "name": {"type": "vector", "coords": [<function>, ...]},
        "name": {"type": "symbol", "entries": [[<rational or grid>, ...], ...]}
    }}

Coefficients are kept exactly as read, so ``save(load(path))`` reproduces a
canonically formatted file byte for byte.
"""
import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import serialize as ser
from .errors import HardyKernelError, SchemaError
from .hardy import Cyclicity, classify_and_factor


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    value: object
    cyclicity: str = Cyclicity.NON_CYCLIC.value

    def resolve(self):
        """Library object for this entry (functions become HardyFunction)."""
        if self.kind == "function":
            return classify_and_factor(self.value, self.cyclicity)
        if self.kind == "vector":
            return [classify_and_factor(v, c) if not v.is_zero() else v
                    for v, c in self.value]
        return self.value


@dataclass
class Catalog:
    entries: dict = field(default_factory=dict)
    source: "str | None" = None
    sha256: "str | None" = None

    def __contains__(self, name):
        return name in self.entries

    def __len__(self):
        return len(self.entries)

    def get(self, name):
        return self.entries[name].resolve()

    def refs(self):
        return {name: e.resolve() for name, e in self.entries.items()}

    def add(self, name, entry):
        if name in self.entries:
            raise SchemaError(f"duplicate catalog entry {name!r}")
        self.entries[name] = entry


def _function(obj, name):
    f = ser.rational_raw(obj)
    cyc = obj.get("cyclicity", Cyclicity.NON_CYCLIC.value)
    try:
        Cyclicity(cyc)
    except ValueError as exc:
        raise SchemaError(f"{name}: unknown cyclicity {cyc!r}") from exc
    if not f.is_zero():
        h = classify_and_factor(f, cyc)
        if not h.is_hardy:
            raise SchemaError(f"NotHardy: entry {name!r} has a pole in the closed disc")
    return f, cyc


def decode_entry(name, obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise SchemaError(f"entry {name!r}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "function":
            f, cyc = _function(obj, name)
            return CatalogEntry(kind, f, cyc)
        if kind == "blaschke":
            return CatalogEntry(kind, ser.blaschke_from_json(obj))
        if kind == "vector":
            coords = [_function(c, f"{name}[{i}]") for i, c in enumerate(obj["coords"])]
            return CatalogEntry(kind, coords)
        if kind == "symbol":
            return CatalogEntry(kind, ser.symbol_from_json(obj["entries"], obj.get("n_samples")))
    except SchemaError as exc:
        raise SchemaError(f"entry {name!r}: {exc.detail}") from exc
    except KeyError as exc:
        raise SchemaError(f"entry {name!r}: missing field {exc.args[0]!r}") from exc
    except HardyKernelError as exc:
        raise SchemaError(f"entry {name!r}: {exc.code}: {exc.detail}") from exc
    raise SchemaError(f"entry {name!r}: unknown type {kind!r}")


def encode_entry(e):
    if e.kind == "function":
        out = {"type": "function"}
        out.update(ser.rational_json(e.value))
        out["cyclicity"] = e.cyclicity
        return out
    if e.kind == "blaschke":
        out = {"type": "blaschke"}
        out.update(ser.blaschke_json(e.value))
        return out
    if e.kind == "vector":
        coords = []
        for f, cyc in e.value:
            c = ser.rational_json(f)
            c["cyclicity"] = cyc
            coords.append(c)
        return {"type": "vector", "coords": coords}
    return {"type": "symbol", "n_samples": e.value.n_samples,
            "entries": ser.symbol_json(e.value)}


def loads(text, source=None):
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("entries"), dict):
        raise SchemaError("catalog must be an object with an 'entries' object")
    cat = Catalog(source=source, sha256=hashlib.sha256(text.encode()).hexdigest())
    for name, obj in data["entries"].items():
        cat.add(name, decode_entry(name, obj))
    return cat


def _no_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise SchemaError(f"duplicate key {k!r}")
        seen[k] = v
    return seen


def load_catalog(path):
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), str(path))


def dumps(cat):
    return ser.dumps({"entries": {n: encode_entry(e) for n, e in cat.entries.items()}})


def save_catalog(cat, path):
    Path(path).write_text(dumps(cat), encoding="utf-8", newline="\n")


def shipped_catalog_text():
    return resources.files("hardykernels").joinpath("data/catalog.json").read_text("utf-8")


def shipped_catalog():
    return loads(shipped_catalog_text(), "hardykernels/data/catalog.json")
