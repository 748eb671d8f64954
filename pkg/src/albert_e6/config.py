"""Scenario configs: a JSON document with string-encoded exact scalars.

Example::

    {"field": "Q", "octonion": ["-1", "-1", "-1"], "gamma": ["1", "1", "-1"],
     "K": "t^2 + 1", "seed": 0, "budget": 2000}

Index scenarios over a Laurent tower replace the concrete algebra by a
``tower`` block of form literals::

    {"tower": {"base": "Q", "names": ["x", "y", "z", "u", "v", "d"],
               "c": ["x", "y", "z"], "gamma": ["-u", "-v", "u*v"], "delta": "d"}}

Floats are rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import AlbertError, ConfigParseError
from .fieldcore import etale_make, parse_field
from .octonion import make_octonion

KNOWN_KEYS = {"field", "octonion", "gamma", "K", "seed", "budget", "tower", "embed",
              "suites", "samples", "strategies"}


def _reject_float(text):
    raise ConfigParseError(f"floating point literal {text!r} is not allowed; use a string like \"1/2\"")


@dataclass(frozen=True)
class TowerSpec:
    base: object = "Q"
    names: tuple = ()
    c: object = None
    gamma: tuple = ()
    delta: object = "split"


@dataclass(frozen=True)
class Scenario:
    field: str = "Q"
    octonion: object = "split"
    gamma: tuple = ("1", "1", "1")
    K: str = "split"
    seed: int = 0
    budget: int = 2000
    samples: int = 1000
    suites: tuple = ("identities", "composition")
    strategies: tuple = ("a", "b", "c")
    embed: dict = dc_field(default_factory=dict)
    tower: TowerSpec = None

    # materialized objects
    def base_field(self):
        try:
            return parse_field(self.field)
        except AlbertError:
            raise
        except Exception as exc:
            raise ConfigParseError(f"bad field {self.field!r}: {exc}") from exc

    def octonion_algebra(self):
        F = self.base_field()
        spec = self.octonion
        if not (isinstance(spec, str) and spec == "split"):
            spec = [F.parse(x) for x in spec]
        return make_octonion(F, spec)

    def gamma_values(self):
        F = self.base_field()
        return tuple(F.parse(g) for g in self.gamma)

    def albert(self):
        from .albert import AlbertAlgebra
        return AlbertAlgebra(self.octonion_algebra(), self.gamma_values())

    def etale(self):
        return etale_make(self.base_field(), self.K)

    def to_json(self):
        out = {"seed": self.seed, "budget": self.budget}
        if self.tower is None:
            out.update({"field": self.field, "octonion": self.octonion, "gamma": list(self.gamma), "K": self.K})
        else:
            out["tower"] = {"base": self.tower.base, "names": list(self.tower.names), "c": self.tower.c,
                            "gamma": list(self.tower.gamma), "delta": self.tower.delta}
        if self.embed:
            out["embed"] = self.embed
        return out


def _str_list(value, key, length=None):
    if not isinstance(value, list) or not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in value):
        raise ConfigParseError(f"{key} must be a list of string scalars")
    if length is not None and len(value) != length:
        raise ConfigParseError(f"{key} must have {length} entries, got {len(value)}")
    return tuple(str(v) for v in value)


def _int(value, key):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigParseError(f"{key} must be a non-negative integer")
    return value


def scenario_from_dict(data, seed=None, budget=None):
    if not isinstance(data, dict):
        raise ConfigParseError("config must be a JSON object")
    unknown = set(data) - KNOWN_KEYS
    if unknown:
        raise ConfigParseError(f"unknown keys: {sorted(unknown)}")
    kw = {}
    if "field" in data:
        if not isinstance(data["field"], str):
            raise ConfigParseError("field must be a string such as \"Q\" or \"GF(9)\"")
        kw["field"] = data["field"]
    if "octonion" in data:
        o = data["octonion"]
        kw["octonion"] = "split" if o == "split" else _str_list(o, "octonion", 3)
    if "gamma" in data:
        kw["gamma"] = _str_list(data["gamma"], "gamma", 3)
    if "K" in data:
        if not isinstance(data["K"], str):
            raise ConfigParseError("K must be \"split\" or a quadratic polynomial in t")
        kw["K"] = data["K"]
    for key in ("seed", "budget", "samples"):
        if key in data:
            kw[key] = _int(data[key], key)
    if "suites" in data:
        kw["suites"] = _str_list(data["suites"], "suites")
    if "strategies" in data:
        kw["strategies"] = _str_list(data["strategies"], "strategies")
    if "embed" in data:
        e = data["embed"]
        if not isinstance(e, dict) or "r" not in e or "s" not in e:
            raise ConfigParseError("embed needs keys r (scalar) and s (pair of scalars in the d-basis)")
        kw["embed"] = {"r": str(e["r"]), "s": list(_str_list(e["s"], "embed.s", 2))}
    if "tower" in data:
        t = data["tower"]
        if not isinstance(t, dict):
            raise ConfigParseError("tower must be an object")
        c = t.get("c", "split")
        kw["tower"] = TowerSpec(
            base=t.get("base", "Q"),
            names=_str_list(t.get("names", []), "tower.names"),
            c=c if c == "split" else _str_list(c, "tower.c", 3),
            gamma=_str_list(t.get("gamma", ["1", "1", "1"]), "tower.gamma", 3),
            delta=str(t.get("delta", "split")),
        )
    if seed is not None:
        kw["seed"] = seed
    if budget is not None:
        kw["budget"] = budget
    sc = Scenario(**kw)
    validate(sc)
    return sc


def validate(sc):
    """Materialize every spec once so errors surface before any suite runs."""
    try:
        if sc.tower is not None:
            tower_data(sc)
            return
        F = sc.base_field()
        sc.octonion_algebra()
        g = sc.gamma_values()
        if any(F.is_zero(x) for x in g):
            raise ConfigParseError("gamma entries must be nonzero")
        sc.etale()
    except ConfigParseError:
        raise
    except (AlbertError, ValueError, ZeroDivisionError, KeyError, TypeError) as exc:
        raise ConfigParseError(f"{type(exc).__name__}: {exc}") from exc


def tower_data(sc):
    """(AlbertData, EtaleData) for a tower scenario."""
    from .wittforms import AlbertData, EtaleData, TowerField
    t = sc.tower
    F = TowerField(t.base, tuple(t.names))
    c = None if t.c == "split" else tuple(F.parse_entry(x) for x in t.c)
    A = AlbertData.make(F, c, tuple(F.parse_entry(g) for g in t.gamma))
    K = EtaleData.make(F, None if t.delta == "split" else F.parse_entry(t.delta))
    return A, K


def load_scenario(path=None, text=None, seed=None, budget=None):
    if text is None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigParseError(f"cannot read config: {exc}") from exc
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(data, seed=seed, budget=budget)
