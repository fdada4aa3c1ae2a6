"""Command-line front end.

Maps are read from JSON documents of the form::

    {"ring": {"type": "Fp", "p": 2}, "vars": ["x", "y"], "map": ["x + y^2", "y"]}

Exit codes: 0 success, 1 usage or parse error, 2 unmet precondition,
3 the mathematics says no (not an automorphism, chain rule sides differ).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .chain_rule import chain_lhs, chain_rhs
from .coord_change import dual_derivatives
from .errors import NotAnAutomorphism, PolyHasseError, PreconditionError
from .hasse import hasse_multi, jacobian
from .inverter import formal_inverse, invert_detailed
from .polynomial import PolyMap, compose_map
from .rings import RingSpec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_REFUSED = 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class MapDocument:
    ring: RingSpec
    vars: tuple
    map: PolyMap

    @classmethod
    def from_json(cls, doc) -> MapDocument:
        if not isinstance(doc, dict):
            raise UsageError("map document must be a JSON object")
        missing = [k for k in ("ring", "vars", "map") if k not in doc]
        if missing:
            raise UsageError(f"map document is missing {', '.join(missing)}")
        if not isinstance(doc["ring"], dict):
            raise UsageError("'ring' must be an object")
        try:
            ring = RingSpec.from_json(doc["ring"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad ring: {exc}") from None
        vars = doc["vars"]
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise UsageError("'vars' must be a list of names")
        if len(set(vars)) != len(vars):
            raise UsageError("'vars' has duplicate names")
        comps = doc["map"]
        if not isinstance(comps, list) or not comps or not all(isinstance(c, str) for c in comps):
            raise UsageError("'map' must be a non-empty list of polynomial strings")
        return cls(ring, tuple(vars), PolyMap.from_strings(comps, vars, ring))

    @classmethod
    def load(cls, path) -> MapDocument:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_json(doc)

    @classmethod
    def from_map(cls, F: PolyMap) -> MapDocument:
        return cls(F.ring, F.vars, F)

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "vars": list(self.vars), "map": self.map.to_strings()}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _index(text):
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}") from None


def _order(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("order must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyhasse", description="Hasse derivatives and polynomial map inversion.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def fmt(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
        g.add_argument("--text", dest="text", action="store_true", help="one polynomial per line")
        p.set_defaults(text=False)

    p = sub.add_parser("invert", help="verified inverse of an automorphism")
    p.add_argument("--in", dest="input", required=True)
    fmt(p)
    p = sub.add_parser("formal-invert", help="power series inverse to a given order")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--order", type=_order, required=True)
    fmt(p)
    p = sub.add_parser("hasse", help="multi-index Hasse derivative of one component")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--component", type=int, required=True, help="1-based")
    p.add_argument("--index", type=_index, required=True, help="comma separated, e.g. 2,0")
    fmt(p)
    p = sub.add_parser("jacobian", help="Jacobian matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--det", action="store_true", help="also print the determinant")
    fmt(p)
    p = sub.add_parser("chain-check", help="compare both sides of the chain rule")
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--order", type=_order, required=True)
    fmt(p)
    p = sub.add_parser("compose", help="the map x -> F(G(x))")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    fmt(p)
    p = sub.add_parser("check", help="automorphism verdict")
    p.add_argument("--in", dest="input", required=True)
    fmt(p)
    p = sub.add_parser("dual-derivatives", help="derivatives of x_i in the coordinates of F")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--order", type=_order, required=True)
    fmt(p)
    return parser


def _emit(out, payload: dict, lines, text: bool):
    if text:
        for line in lines:
            out.write(line + "\n")
    else:
        out.write(json.dumps(payload, ensure_ascii=False) + "\n")


def _cmd_invert(args, out):
    doc = MapDocument.load(args.input)
    result = invert_detailed(doc.map)
    comps = result.inverse.to_strings()
    _emit(out, {"inverse": comps, "degree_bound": result.degree_bound, "verified": True},
          comps, args.text)
    return EXIT_OK


def _cmd_formal_invert(args, out):
    doc = MapDocument.load(args.input)
    comps = formal_inverse(doc.map, args.order).to_strings()
    _emit(out, {"formal_inverse": comps, "order": args.order}, comps, args.text)
    return EXIT_OK


def _cmd_hasse(args, out):
    doc = MapDocument.load(args.input)
    k = args.component
    if not 1 <= k <= len(doc.map):
        raise UsageError(f"component must be between 1 and {len(doc.map)}")
    if len(args.index) != len(doc.vars):
        raise UsageError(f"index needs {len(doc.vars)} entries")
    if any(a < 0 for a in args.index):
        raise UsageError("index entries must be >= 0")
    value = str(hasse_multi(doc.map[k - 1], args.index))
    _emit(out, {"component": k, "index": list(args.index), "derivative": value},
          [value], args.text)
    return EXIT_OK


def _cmd_jacobian(args, out):
    doc = MapDocument.load(args.input)
    J = jacobian(doc.map)
    rows = J.to_strings()
    payload = {"jacobian": rows}
    lines = ["[" + ", ".join(r) + "]" for r in rows]
    if args.det:
        if not doc.map.is_square:
            raise UsageError("determinant needs a square map")
        det = str(J.det())
        payload["det"] = det
        lines.append(f"det = {det}")
    _emit(out, payload, lines, args.text)
    return EXIT_OK


def _cmd_chain_check(args, out):
    g_doc = MapDocument.load(args.g)
    f_doc = MapDocument.load(args.f)
    results = []
    for g in g_doc.map:
        lhs = chain_lhs(g, f_doc.map, args.order)
        rhs = chain_rhs(g, f_doc.map, args.order)
        results.append({"lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs})
    equal = all(r["equal"] for r in results)
    lines = [f"{r['lhs']}  {'==' if r['equal'] else '!='}  {r['rhs']}" for r in results]
    _emit(out, {"equal": equal, "components": results}, lines, args.text)
    return EXIT_OK if equal else EXIT_REFUSED


def _cmd_compose(args, out):
    F = MapDocument.load(args.f).map
    G = MapDocument.load(args.g).map
    H = compose_map(F, G)
    _emit(out, MapDocument.from_map(H).to_json(), H.to_strings(), args.text)
    return EXIT_OK


def _cmd_check(args, out):
    doc = MapDocument.load(args.input)
    try:
        invert_detailed(doc.map)
        verdict = True
    except NotAnAutomorphism:
        verdict = False
    _emit(out, {"automorphism": verdict}, ["automorphism" if verdict else "not an automorphism"],
          args.text)
    return EXIT_OK if verdict else EXIT_REFUSED


def _cmd_dual_derivatives(args, out):
    doc = MapDocument.load(args.input)
    table = dual_derivatives(doc.map, args.order)
    entries = sorted(table.entries.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]),
                                                           tuple(-a for a in kv[0][1])))
    rows = [{"component": i + 1, "index": list(mu), "value": str(v)} for (i, mu), v in entries]
    lines = [f"{r['component']} {','.join(map(str, r['index']))}: {r['value']}" for r in rows]
    _emit(out, {"order": args.order, "derivatives": rows}, lines, args.text)
    return EXIT_OK


_COMMANDS = {
    "invert": _cmd_invert,
    "formal-invert": _cmd_formal_invert,
    "hasse": _cmd_hasse,
    "jacobian": _cmd_jacobian,
    "chain-check": _cmd_chain_check,
    "compose": _cmd_compose,
    "check": _cmd_check,
    "dual-derivatives": _cmd_dual_derivatives,
}


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except NotAnAutomorphism as exc:
        err.write(f"{exc}\n")
        return EXIT_REFUSED
    except PolyHasseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
