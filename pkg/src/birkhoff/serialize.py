"""JSON forms of polynomials, schemes, samples and domains."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import SchemaError
from .grids import Ball, Box, Domain
from .polyspace import Polynomial, basis
from .solver import Node, SampleSet, Scheme


def _number(x: Any, where: str) -> float:
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str):
        try:
            return float(x)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected a number, got {x!r}")


def _integer(x: Any, where: str, minimum: int = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise SchemaError(f"{where}: expected an integer >= {minimum}, got {x!r}")
    return x


def _vector(x: Any, n: int, where: str) -> tuple[float, ...]:
    if not isinstance(x, list) or len(x) != n:
        raise SchemaError(f"{where}: expected a list of {n} numbers, got {x!r}")
    return tuple(_number(v, f"{where}[{i}]") for i, v in enumerate(x))


def _object(x: Any, keys: set[str], where: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = keys - set(x)
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")
    return x


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_default) + "\n"


def _default(x):
    if hasattr(x, "to_dict"):
        return x.to_dict()
    raise TypeError(f"not serialisable: {x!r}")


def json_float(x: float):
    """Finite floats as numbers, infinities as strings (strict JSON has no inf)."""
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else "-inf"


def polynomial_to_json(P: Polynomial) -> dict:
    coeffs = [{"alpha": list(a), "c": P.coeffs[a]} for a in basis(P.n, P.d) if a in P.coeffs]
    return {"n": P.n, "d": P.d, "coeffs": coeffs}


def polynomial_from_json(obj: Any) -> Polynomial:
    obj = _object(obj, {"n", "d", "coeffs"}, "polynomial")
    n = _integer(obj["n"], "polynomial.n", 1)
    d = _integer(obj["d"], "polynomial.d", 0)
    if not isinstance(obj["coeffs"], list):
        raise SchemaError("polynomial.coeffs: expected a list")
    coeffs: dict[tuple[int, ...], float] = {}
    for i, term in enumerate(obj["coeffs"]):
        where = f"polynomial.coeffs[{i}]"
        term = _object(term, {"alpha", "c"}, where)
        alpha = term["alpha"]
        if not isinstance(alpha, list) or len(alpha) != n:
            raise SchemaError(f"{where}.alpha: expected {n} exponents")
        alpha = tuple(_integer(a, f"{where}.alpha") for a in alpha)
        if sum(alpha) > d:
            raise SchemaError(f"{where}.alpha: degree {sum(alpha)} exceeds d = {d}")
        if alpha in coeffs:
            raise SchemaError(f"{where}.alpha: duplicate multi-index {list(alpha)}")
        coeffs[alpha] = _number(term["c"], f"{where}.c")
    return Polynomial(n, d, coeffs)


def domain_from_json(obj: Any, n: int) -> Domain:
    obj = _object(obj, {"kind"}, "domain")
    kind = obj["kind"]
    if kind == "ball":
        radius = _number(obj.get("radius", 1.0), "domain.radius")
        if radius <= 0:
            raise SchemaError("domain.radius must be positive")
        center = obj.get("center")
        center = None if center is None else _vector(center, n, "domain.center")
        return Ball(n, radius, center)
    if kind == "box":
        obj = _object(obj, {"lower", "upper"}, "domain")
        lower = _vector(obj["lower"], n, "domain.lower")
        upper = _vector(obj["upper"], n, "domain.upper")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise SchemaError("domain: every lower bound must be below its upper bound")
        return Box(lower, upper)
    raise SchemaError(f"domain.kind must be 'ball' or 'box', got {kind!r}")


def scheme_from_json(obj: Any) -> Scheme:
    obj = _object(obj, {"n", "d", "nodes"}, "scheme")
    n = _integer(obj["n"], "scheme.n", 1)
    d = _integer(obj["d"], "scheme.d", 0)
    if not isinstance(obj["nodes"], list):
        raise SchemaError("scheme.nodes: expected a list")
    nodes = []
    for i, raw in enumerate(obj["nodes"]):
        where = f"scheme.nodes[{i}]"
        raw = _object(raw, {"order", "point"}, where)
        order = _integer(raw["order"], f"{where}.order")
        if order > d:
            raise SchemaError(f"{where}.order: {order} exceeds d = {d}")
        point = _vector(raw["point"], n, f"{where}.point")
        if order == 0:
            if "direction" in raw:
                raise SchemaError(f"{where}: order-0 nodes take no direction")
            nodes.append(Node(0, point))
            continue
        if "direction" not in raw:
            raise SchemaError(f"{where}: direction required for order {order}")
        u = _vector(raw["direction"], n, f"{where}.direction")
        if not any(u):
            raise SchemaError(f"{where}.direction: zero direction for order {order}")
        nodes.append(Node(order, point, u))
    domain = domain_from_json(obj["domain"], n) if "domain" in obj else None
    return Scheme(n, d, tuple(nodes), domain)


def scheme_to_json(scheme: Scheme) -> dict:
    out: dict[str, Any] = {"n": scheme.n, "d": scheme.d}
    if scheme.domain is not None:
        out["domain"] = scheme.domain.to_dict()
    nodes = []
    for nd in scheme.nodes:
        row: dict[str, Any] = {"order": nd.order, "point": list(nd.point)}
        if nd.order:
            row["direction"] = list(nd.direction)
        nodes.append(row)
    out["nodes"] = nodes
    return out


def samples_from_json(obj: Any) -> SampleSet:
    obj = _object(obj, {"values"}, "samples")
    if not isinstance(obj["values"], list):
        raise SchemaError("samples.values: expected a list")
    return SampleSet(tuple(_number(v, f"samples.values[{i}]") for i, v in enumerate(obj["values"])))


def samples_to_json(values) -> dict:
    return {"values": [float(v) for v in values]}
