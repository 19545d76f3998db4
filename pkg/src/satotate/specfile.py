"""JSON spec files describing a custom (group, representation) pair.

Grammar (all keys lower case)::

    spec   := {"name": str?, "group": group, "rep": rep}
    group  := {"type": "torus", "rank": int}
            | {"type": "unitary", "n": int}
            | {"type": "special_unitary", "n": int}
            | {"type": "finite", "catalog": str}
            | {"type": "finite", "modulus": int, "order": int, "name": str?,
               "classes": [{"size": int, "exponents": [int, ...]}, ...]}
            | {"type": "product", "factors": [group, group, ...]}
    rep    := {"type": "std"}                      # U(n), SU(n)
            | {"type": "weights", "weights": [[int, ...], ...]}   # tori
            | {"type": "given"}                    # finite class data
            | {"type": "dual", "of": rep}
            | {"type": "sum" | "tensor", "parts": [rep, ...]}
            | {"type": "exterior" | "symmetric", "k": int, "of": rep}
            | {"type": "external", "legs": [rep, ...]}   # products

The canonical form inlines catalog references, sorts keys and uses two-space
indentation.  parse -> serialize -> parse is the identity on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import SpecError
from .groups import (
    ClassDatum,
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteClasses,
    FiniteGiven,
    GroupSpec,
    Product,
    RepSpec,
    SpecialUnitary,
    Std,
    Symmetric,
    Tensor,
    Torus,
    TorusWeights,
    Unitary,
    validate,
)


@dataclass(frozen=True)
class SpecFile:
    name: str
    group: GroupSpec
    rep: RepSpec

    @property
    def pair(self):
        return self.group, self.rep


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise SpecError("expected an object", where)
    if key not in obj:
        raise SpecError(f"missing field {key!r}", where)
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise SpecError("expected an integer", f"{where}.{key}")
    if kind is list and not isinstance(val, list):
        raise SpecError("expected a list", f"{where}.{key}")
    if kind is str and not isinstance(val, str):
        raise SpecError("expected a string", f"{where}.{key}")
    return val


def _check_keys(obj, allowed, where):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SpecError(f"unknown field {extra[0]!r}", where)


def _build(ctor, where, *args):
    try:
        return ctor(*args)
    except SpecError as exc:
        if exc.where is not None:
            raise
        raise SpecError(exc.message, where) from exc
    except (TypeError, ValueError) as exc:
        raise SpecError(str(exc), where) from exc


def parse_group(obj, where: str = "group") -> GroupSpec:
    kind = _need(obj, "type", where, str)
    if kind == "torus":
        _check_keys(obj, ("type", "rank"), where)
        return _build(Torus, where, _need(obj, "rank", where, int))
    if kind in ("unitary", "special_unitary"):
        _check_keys(obj, ("type", "n"), where)
        ctor = Unitary if kind == "unitary" else SpecialUnitary
        return _build(ctor, where, _need(obj, "n", where, int))
    if kind == "finite":
        if "catalog" in obj:
            _check_keys(obj, ("type", "catalog"), where)
            from .catalog import load

            entry = _build(load, f"{where}.catalog", _need(obj, "catalog", where, str))
            if not isinstance(entry.group, FiniteClasses):
                raise SpecError(f"{entry.name!r} is not a finite group", f"{where}.catalog")
            return entry.group
        _check_keys(obj, ("type", "modulus", "order", "name", "classes"), where)
        classes = []
        for i, c in enumerate(_need(obj, "classes", where, list)):
            cw = f"{where}.classes[{i}]"
            _check_keys(c if isinstance(c, dict) else {}, ("size", "exponents"), cw)
            exps = _need(c, "exponents", cw, list)
            if not all(isinstance(e, int) and not isinstance(e, bool) for e in exps):
                raise SpecError("exponents must be integers", f"{cw}.exponents")
            classes.append(_build(ClassDatum, cw, _need(c, "size", cw, int), tuple(exps)))
        name = obj.get("name", "")
        if not isinstance(name, str):
            raise SpecError("expected a string", f"{where}.name")
        return _build(
            FiniteClasses, where, _need(obj, "modulus", where, int), tuple(classes), _need(obj, "order", where, int), name
        )
    if kind == "product":
        _check_keys(obj, ("type", "factors"), where)
        factors = [parse_group(f, f"{where}.factors[{i}]") for i, f in enumerate(_need(obj, "factors", where, list))]
        return _build(Product, where, tuple(factors))
    raise SpecError(f"unknown group type {kind!r}", f"{where}.type")


def parse_rep(obj, where: str = "rep") -> RepSpec:
    kind = _need(obj, "type", where, str)
    if kind == "std":
        _check_keys(obj, ("type",), where)
        return Std()
    if kind == "given":
        _check_keys(obj, ("type",), where)
        return FiniteGiven()
    if kind == "weights":
        _check_keys(obj, ("type", "weights"), where)
        ws = _need(obj, "weights", where, list)
        for i, w in enumerate(ws):
            if not isinstance(w, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
                raise SpecError("a weight is a list of integers", f"{where}.weights[{i}]")
        return _build(TorusWeights, where, tuple(tuple(w) for w in ws))
    if kind == "dual":
        _check_keys(obj, ("type", "of"), where)
        return Dual(parse_rep(_need(obj, "of", where), f"{where}.of"))
    if kind in ("sum", "tensor"):
        _check_keys(obj, ("type", "parts"), where)
        parts = tuple(parse_rep(p, f"{where}.parts[{i}]") for i, p in enumerate(_need(obj, "parts", where, list)))
        return _build(DirectSum if kind == "sum" else Tensor, where, parts)
    if kind in ("exterior", "symmetric"):
        _check_keys(obj, ("type", "k", "of"), where)
        k = _need(obj, "k", where, int)
        inner = parse_rep(_need(obj, "of", where), f"{where}.of")
        return _build(Exterior if kind == "exterior" else Symmetric, where, k, inner)
    if kind == "external":
        _check_keys(obj, ("type", "legs"), where)
        legs = tuple(parse_rep(p, f"{where}.legs[{i}]") for i, p in enumerate(_need(obj, "legs", where, list)))
        return _build(ExternalTensor, where, legs)
    raise SpecError(f"unknown rep type {kind!r}", f"{where}.type")


def parse_obj(obj) -> SpecFile:
    if not isinstance(obj, dict):
        raise SpecError("top level must be an object", "<root>")
    _check_keys(obj, ("name", "group", "rep"), "<root>")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise SpecError("expected a string", "name")
    g = parse_group(_need(obj, "group", "<root>"))
    v = parse_rep(_need(obj, "rep", "<root>"))
    validate(g, v)
    return SpecFile(name, g, v)


def parse_text(text: str, source: str = "<spec>") -> SpecFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from exc
    return parse_obj(obj)


def load_spec(path) -> SpecFile:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc.strerror}", str(p)) from exc
    return parse_text(text, str(p))


# ---------------------------------------------------------------- serialization


def group_to_obj(g: GroupSpec) -> dict:
    if isinstance(g, Torus):
        return {"type": "torus", "rank": g.rank}
    if isinstance(g, Unitary):
        return {"type": "unitary", "n": g.n}
    if isinstance(g, SpecialUnitary):
        return {"type": "special_unitary", "n": g.n}
    if isinstance(g, FiniteClasses):
        return {
            "type": "finite",
            "name": g.name,
            "modulus": g.modulus,
            "order": g.order,
            "classes": [{"size": c.size, "exponents": list(c.exponents)} for c in g.classes],
        }
    if isinstance(g, Product):
        return {"type": "product", "factors": [group_to_obj(f) for f in g.factors]}
    raise TypeError(f"not a group: {g!r}")


def rep_to_obj(v: RepSpec) -> dict:
    if isinstance(v, Std):
        return {"type": "std"}
    if isinstance(v, FiniteGiven):
        return {"type": "given"}
    if isinstance(v, TorusWeights):
        return {"type": "weights", "weights": [list(w) for w in v.weights]}
    if isinstance(v, Dual):
        return {"type": "dual", "of": rep_to_obj(v.rep)}
    if isinstance(v, (DirectSum, Tensor)):
        return {"type": "sum" if isinstance(v, DirectSum) else "tensor", "parts": [rep_to_obj(p) for p in v.parts]}
    if isinstance(v, (Exterior, Symmetric)):
        return {"type": "exterior" if isinstance(v, Exterior) else "symmetric", "k": v.k, "of": rep_to_obj(v.rep)}
    if isinstance(v, ExternalTensor):
        return {"type": "external", "legs": [rep_to_obj(p) for p in v.legs]}
    raise TypeError(f"not a representation: {v!r}")


def serialize(spec: SpecFile) -> str:
    obj = {"name": spec.name, "group": group_to_obj(spec.group), "rep": rep_to_obj(spec.rep)}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
