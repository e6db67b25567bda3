"""Declarative ring descriptions and their JSON form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from .errors import RingSpecError


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class PolyQuotient:
    base: ZMod
    modulus: tuple  # coefficients, low degree first


@dataclass(frozen=True)
class Table:
    order: int
    add: tuple
    mul: tuple


RingSpec = Union[ZMod, Product, PolyQuotient, Table]


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise RingSpecError(f"{what} must be an integer, got {value!r}")
    return value


def _matrix(rows: Any, order: int, what: str) -> tuple:
    if not isinstance(rows, (list, tuple)) or len(rows) != order:
        raise RingSpecError(f"{what} must be an {order}x{order} matrix")
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != order:
            raise RingSpecError(f"{what} must be an {order}x{order} matrix")
        out.append(tuple(_int(x, f"{what} entry") for x in row))
    return tuple(out)


def spec_from_json(obj: Any) -> RingSpec:
    """Parse the JSON object form of a ring description."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise RingSpecError(f"ring spec must be an object with a 'type' key: {obj!r}")
    kind = obj["type"]
    if kind == "zmod":
        # "p" is accepted as an alias, it reads naturally for polynomial bases
        n = obj.get("n", obj.get("p"))
        n = _int(n, "zmod modulus")
        if n < 1:
            raise RingSpecError(f"zmod modulus must be >= 1, got {n}")
        return ZMod(n)
    if kind == "product":
        factors = obj.get("factors")
        if not isinstance(factors, list) or not factors:
            raise RingSpecError("product needs a nonempty 'factors' list")
        return Product(tuple(spec_from_json(f) for f in factors))
    if kind == "poly_quotient":
        base = spec_from_json(obj.get("base"))
        if not isinstance(base, ZMod):
            raise RingSpecError("poly_quotient base must be a zmod ring")
        modulus = obj.get("modulus")
        if not isinstance(modulus, list) or len(modulus) < 2:
            raise RingSpecError("poly_quotient modulus must have degree >= 1")
        return PolyQuotient(base, tuple(_int(c, "modulus coefficient") for c in modulus))
    if kind == "table":
        order = _int(obj.get("order"), "table order")
        if order < 1:
            raise RingSpecError("table order must be >= 1")
        return Table(order, _matrix(obj.get("add"), order, "add"), _matrix(obj.get("mul"), order, "mul"))
    raise RingSpecError(f"unknown ring spec type {kind!r}")


def spec_to_json(spec: RingSpec) -> dict:
    if isinstance(spec, ZMod):
        return {"type": "zmod", "n": spec.n}
    if isinstance(spec, Product):
        return {"type": "product", "factors": [spec_to_json(f) for f in spec.factors]}
    if isinstance(spec, PolyQuotient):
        return {"type": "poly_quotient", "base": spec_to_json(spec.base), "modulus": list(spec.modulus)}
    if isinstance(spec, Table):
        return {
            "type": "table",
            "order": spec.order,
            "add": [list(r) for r in spec.add],
            "mul": [list(r) for r in spec.mul],
        }
    raise TypeError(f"not a ring spec: {spec!r}")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_str(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


def spec_label(spec: RingSpec) -> str:
    """Short human-readable name, e.g. ``Z/4xF2[x]/(x^2)``."""
    if isinstance(spec, ZMod):
        return f"Z/{spec.n}"
    if isinstance(spec, Product):
        return "x".join(spec_label(f) for f in spec.factors)
    if isinstance(spec, PolyQuotient):
        n = spec.base.n
        base = f"F{n}" if _is_prime(n) else f"Z/{n}"
        return f"{base}[x]/({_poly_str(spec.modulus)})"
    if isinstance(spec, Table):
        return f"Table({spec.order})"
    raise TypeError(f"not a ring spec: {spec!r}")
