"""``subtorus`` command line: one JSON request in, one JSON answer out.

Exit status is 0 on success, 2 when the input is malformed or violates a
documented precondition, and 1 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import oracle
from .duality import contains_point, v_of
from .errors import InvariantViolation, SubtorusError
from .intersect import (
    exp_identity_lattice,
    exp_intersect,
    dimtori_construct,
    intersect_many,
    intersect_two,
    intersect_two_virtual,
    intersect_unions,
    virtual_check,
)
from .lattice import FiniteAbelianGroup
from .serialize import (
    MalformedInput,
    _field,
    _list,
    _obj,
    decode_coset,
    decode_cosets,
    decode_lattice,
    decode_point,
    decode_subgroup,
    dumps,
    encode_check,
    encode_coset,
    encode_descriptor,
    encode_finite_group,
    encode_lattice,
    encode_point,
    encode_result,
    encode_subgroup,
    int_vector,
    loads,
    parse_int,
    parse_rational,
)
from .zeta import count_with_fixed_identity_component


def cmd_closure(p: dict):
    xi = decode_subgroup(_field(p, "subgroup", "closure"))
    cl = xi.closure()
    return {
        "closure": encode_subgroup(cl),
        "lattice": encode_lattice(cl.lattice),
        "det_group": encode_finite_group(xi.det_group()),
        "primitive": xi.is_primitive(),
    }


def cmd_detgroup(p: dict):
    A = decode_subgroup(_field(p, "subgroup", "detgroup")).det_group()
    return {"invariant_factors": encode_finite_group(A), "order": str(A.order()), "exponent": str(A.exponent())}


def cmd_member(p: dict):
    if "coset" in p:
        q = decode_coset(p["coset"])
        pt = decode_point(_field(p, "point", "member"), q.parent)
        return {"member": q.contains(pt)}
    xi = decode_subgroup(_field(p, "subgroup", "member"))
    pt = decode_point(_field(p, "point", "member"), xi.parent)
    return {"member": contains_point(xi, pt), "order": pt.order()}


def cmd_intersect(p: dict):
    if "unions" in p:
        pair = _list(p["unions"], "unions")
        if len(pair) != 2:
            raise MalformedInput("'unions' must hold exactly two lists of cosets")
        W1, W2 = pair
        A = decode_cosets(W1)
        B = decode_cosets(W2, A[0].parent)
        out = intersect_unions(A, B, simplify=bool(p.get("simplify", True)))
        return {"empty": not out, "components": [encode_coset(q) for q in out]}
    cosets = decode_cosets(_field(p, "cosets", "intersect"))
    method = p.get("method", "general")
    if method == "general":
        res = intersect_many(cosets) if len(cosets) != 2 else intersect_two(*cosets)
    elif method == "virtual":
        if len(cosets) != 2:
            raise MalformedInput("the virtual-belonging method takes exactly two cosets")
        lifts = p.get("lifts")
        if lifts is not None:
            lifts = tuple([parse_rational(x) for x in _list(v, "lift")] for v in _list(lifts, "lifts"))
            if len(lifts) != 2:
                raise MalformedInput("'lifts' must hold two exponent vectors")
        res = intersect_two_virtual(*cosets, lifts=lifts)
    else:
        raise MalformedInput(f"unknown method {method!r}; use 'general' or 'virtual'")
    return encode_result(res)


def cmd_components(p: dict):
    return encode_descriptor(v_of(decode_subgroup(_field(p, "subgroup", "components"))))


def cmd_exp_intersect(p: dict):
    chi1 = decode_lattice(_field(p, "chi1", "exp-intersect"))
    chi2 = decode_lattice(_field(p, "chi2", "exp-intersect"))
    W = exp_intersect(chi1, chi2)
    out = encode_descriptor(W)
    out["identity_chi"] = encode_lattice(exp_identity_lattice(W))
    return out


def cmd_virtual(p: dict):
    chi = decode_lattice(_field(p, "chi", "virtual"))
    lam = [parse_rational(x) for x in _list(_field(p, "vector", "virtual"), "vector")]
    if len(lam) != chi.ambient_rank:
        raise MalformedInput("vector and lattice have different lengths")
    return encode_check(virtual_check(lam, chi))


def cmd_zeta(p: dict):
    r = parse_int(_field(p, "r", "zeta"), "r")
    K = parse_int(_field(p, "K", "zeta"), "K")
    n = parse_int(p.get("n", 0), "n")
    return [str(a) for a in count_with_fixed_identity_component(r, n, K).coefficients]


def cmd_oracle(p: dict):
    cosets = decode_cosets(_field(p, "cosets", "oracle"))
    M = parse_int(p["modulus"], "modulus") if "modulus" in p else oracle.sufficient_modulus(cosets)
    pts = oracle.brute_points(cosets, M)
    out = {"modulus": M, "empty": not pts, "points": [encode_point(x) for x in pts]}
    if "modulus" not in p:
        out["verified"] = oracle.verify(intersect_many(cosets), cosets)
    return out


def cmd_dimtori(p: dict):
    n = parse_int(_field(p, "n", "dimtori"), "n")
    A = FiniteAbelianGroup(tuple(int_vector(p.get("invariant_factors", []), "invariant_factors")))
    chi1, chi2, amb = dimtori_construct(n, A)
    W = exp_intersect(chi1, chi2)
    return {
        "ambient_rank": amb,
        "chi1": encode_lattice(chi1),
        "chi2": encode_lattice(chi2),
        "intersection": encode_descriptor(W),
    }


COMMANDS: dict[str, Callable[[dict], object]] = {
    "closure": cmd_closure,
    "detgroup": cmd_detgroup,
    "member": cmd_member,
    "intersect": cmd_intersect,
    "components": cmd_components,
    "exp-intersect": cmd_exp_intersect,
    "virtual": cmd_virtual,
    "zeta": cmd_zeta,
    "oracle": cmd_oracle,
    "dimtori": cmd_dimtori,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subtorus", description="Exact intersections of translated subtori.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", "-i", metavar="FILE", help="JSON request file (default: standard input)")
    ap.add_argument("--pretty", action="store_true", help="indent the JSON output")
    return ap


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
        payload = _obj(loads(text), "request")
        result = COMMANDS[args.command](payload)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=stderr)
        return 1
    except (SubtorusError, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    stdout.write(dumps(result, pretty=args.pretty) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "COMMANDS"]
