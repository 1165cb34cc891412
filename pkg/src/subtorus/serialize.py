"""JSON encodings shared by the CLI and the tests.

Matrix entries and rationals travel as decimal strings (``"-3"``, ``"2/5"``);
sizes such as ranks and dimensions are plain JSON integers.  Decoders accept
an integer entry either as a string or as a JSON integer, and reject floats,
booleans and decimal-point strings outright.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .duality import AlgSubgroupDescriptor, FgAbGroup, Subgroup, TorsionPoint, subgroup_from_generators
from .errors import SubtorusError
from .intersect import IntersectionResult, OrderData, TranslatedSubgroup, VirtualCheck
from .lattice import FiniteAbelianGroup, Lattice

_RATIONAL = re.compile(r"-?\d+(/\d+)?")
_INTEGER = re.compile(r"-?\d+")


class MalformedInput(SubtorusError):
    """The request does not have the documented shape."""


def _reject_float(text: str):
    raise MalformedInput(f"floating-point literal {text} is not accepted")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


# -- scalars -----------------------------------------------------------------


def parse_int(x: Any, what: str = "integer") -> int:
    if isinstance(x, bool):
        raise MalformedInput(f"{what}: booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and _INTEGER.fullmatch(x.strip()):
        return int(x)
    raise MalformedInput(f"{what}: expected a decimal integer, got {x!r}")


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.fullmatch(x.strip()):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise MalformedInput(f"zero denominator in {x!r}") from None
    raise MalformedInput(f"expected a rational string 'p/q', got {x!r}")


def _list(x: Any, what: str) -> list:
    if not isinstance(x, list):
        raise MalformedInput(f"{what}: expected a JSON array")
    return x


def _obj(x: Any, what: str) -> dict:
    if not isinstance(x, dict):
        raise MalformedInput(f"{what}: expected a JSON object")
    return x


def _field(obj: dict, key: str, what: str):
    if key not in obj:
        raise MalformedInput(f"{what}: missing field {key!r}")
    return obj[key]


def int_vector(x: Any, what: str = "vector") -> list[int]:
    return [parse_int(v, what) for v in _list(x, what)]


def encode_int_vector(v) -> list[str]:
    return [str(int(a)) for a in v]


def encode_rational_vector(v) -> list[str]:
    return [str(Fraction(a)) for a in v]


# -- lattices and groups -----------------------------------------------------


def encode_lattice(L: Lattice) -> dict:
    return {"ambient_rank": L.ambient_rank, "basis": [encode_int_vector(c) for c in L.columns]}


def decode_lattice(obj: Any) -> Lattice:
    obj = _obj(obj, "lattice")
    n = parse_int(_field(obj, "ambient_rank", "lattice"), "ambient_rank")
    if n < 0:
        raise MalformedInput("ambient_rank must be nonnegative")
    cols = [int_vector(c, "basis column") for c in _list(obj.get("basis", []), "basis")]
    if any(len(c) != n for c in cols):
        raise MalformedInput(f"every basis column must have length {n}")
    return Lattice.span(n, cols)


def encode_finite_group(A: FiniteAbelianGroup) -> list[str]:
    return encode_int_vector(A.invariant_factors)


def encode_group(H: FgAbGroup) -> dict:
    return {"free_rank": H.free_rank, "torsion_moduli": encode_int_vector(H.torsion_moduli)}


def decode_group(obj: Any) -> FgAbGroup:
    obj = _obj(obj, "group")
    r = parse_int(_field(obj, "free_rank", "group"), "free_rank")
    moduli = tuple(int_vector(obj.get("torsion_moduli", []), "torsion_moduli"))
    return FgAbGroup(r, moduli)


def encode_subgroup(xi: Subgroup) -> dict:
    return {"group": encode_group(xi.parent), "generators": [encode_int_vector(g) for g in xi.generators()]}


def decode_subgroup(obj: Any, parent: FgAbGroup | None = None) -> Subgroup:
    """``{"group": ..., "generators": [[...], ...]}``; ``group`` may be omitted if a parent is implied."""
    obj = _obj(obj, "subgroup")
    if "group" in obj:
        H = decode_group(obj["group"])
        if parent is not None and H != parent:
            raise MalformedInput("subgroup belongs to a different group than its translation")
    elif parent is not None:
        H = parent
    elif "free_rank" in obj:
        H = FgAbGroup(parse_int(obj["free_rank"], "free_rank"))
    else:
        raise MalformedInput("subgroup: missing field 'group'")
    gens = [int_vector(g, "generator") for g in _list(obj.get("generators", []), "generators")]
    return subgroup_from_generators(H, gens)


# -- points and cosets --------------------------------------------------------


def encode_point(p: TorsionPoint) -> list[str]:
    return encode_rational_vector(p.exponents)


def decode_point(x: Any, H: FgAbGroup) -> TorsionPoint:
    exps = [parse_rational(v) for v in _list(x, "point")]
    return TorsionPoint(H, exps)


def encode_coset(q: TranslatedSubgroup) -> dict:
    return {"translation": encode_point(q.translation), "subgroup": encode_subgroup(q.subgroup)}


def decode_coset(obj: Any, parent: FgAbGroup | None = None) -> TranslatedSubgroup:
    obj = _obj(obj, "coset")
    xi = decode_subgroup(_field(obj, "subgroup", "coset"), parent)
    if "translation" in obj:
        eta = decode_point(obj["translation"], xi.parent)
    else:
        eta = xi.parent.identity()
    return TranslatedSubgroup(eta, xi)


def decode_cosets(x: Any, parent: FgAbGroup | None = None) -> list[TranslatedSubgroup]:
    items = _list(x, "cosets")
    if not items:
        raise MalformedInput("at least one coset is required")
    out = []
    for item in items:
        q = decode_coset(item, parent)
        parent = parent or q.parent
        out.append(q)
    return out


# -- results --------------------------------------------------------------------


def encode_order_data(d: OrderData | None) -> dict | None:
    if d is None:
        return None
    return {"gamma_eta": d.gamma_eta, "rho": d.rho, "eta": d.eta, "c": d.c, "bounds_hold": d.bounds_hold()}


def encode_check(c: VirtualCheck) -> dict:
    return {
        "vector": encode_rational_vector(c.vector),
        "shift": encode_rational_vector(c.shift),
        "d": c.d,
        "scaled": encode_rational_vector(c.scaled),
        "belongs": c.belongs,
    }


def encode_result(res: IntersectionResult) -> dict:
    return {
        "empty": res.empty,
        "representative": None if res.empty else encode_point(res.representative),
        "dimension": None if res.empty else res.dimension,
        "components": [encode_coset(q) for q in res.components],
        "sum_subgroup": encode_subgroup(res.sum_subgroup),
        "order_data": encode_order_data(res.order_bound_data),
        "checks": [encode_check(c) for c in res.checks],
    }


def encode_descriptor(W: AlgSubgroupDescriptor) -> dict:
    return {
        "group": encode_group(W.parent),
        "dimension": W.dimension,
        "component_group": encode_finite_group(W.component_group),
        "identity_component": encode_lattice(W.identity_component_lattice),
        "representatives": [encode_point(p) for p in W.component_representatives],
    }
