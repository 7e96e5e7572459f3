"""Command-line front end.

Exit status: 0 when every check passes, 1 when a checked identity or axiom
fails (witnesses go to stdout), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from . import arith, geomsl, periodic, semimatroid, zmatroid
from .exact_lattice import FgAbGroup, IntMatrix

DEFAULT_MAX_GROUND = 20


class InputError(Exception):
    pass


class CheckFailed(Exception):
    """Raised to stop with exit status 1 after printing witnesses."""


# -- input ----------------------------------------------------------------------


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def max_ground() -> int:
    raw = os.environ.get("TT_MAX_GROUND", str(DEFAULT_MAX_GROUND))
    try:
        v = int(raw)
    except ValueError:
        raise InputError(f"TT_MAX_GROUND must be an integer, got {raw!r}") from None
    if v < 0:
        raise InputError("TT_MAX_GROUND must be nonnegative")
    return v


def _cap(n: int, what: str) -> None:
    cap = max_ground()
    if n > cap:
        raise InputError(f"{what} has {n} elements, above the limit TT_MAX_GROUND={cap}")


def kind_of(obj: Any) -> str:
    if not isinstance(obj, dict):
        raise InputError("top-level JSON value must be an object")
    if "columns" in obj:
        return "arrangement"
    if "matrix" in obj:
        return "matrix"
    if "groups" in obj:
        return "diagram"
    if "central" in obj:
        if any(isinstance(c, dict) and "mult" in c for c in obj["central"]):
            return "quotient"
        return "semimatroid"
    if "elements" in obj:
        return "poset"
    raise InputError("cannot tell what kind of input this is")


def _need(obj: dict, key: str, typ, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    v = obj[key]
    if not isinstance(v, typ) or isinstance(v, bool) and typ is not bool:
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return v


def _labels(xs, where: str) -> list[str]:
    if not isinstance(xs, list) or not all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in xs):
        raise InputError(f"{where}: expected a list of labels")
    return [str(x) for x in xs]


def _central_entries(obj: dict, with_mult: bool):
    ground = _labels(_need(obj, "ground", list, "semimatroid"), "ground")
    _cap(len(ground), "ground set")
    entries = []
    for k, c in enumerate(_need(obj, "central", list, "semimatroid")):
        where = f"central[{k}]"
        if not isinstance(c, dict):
            raise InputError(f"{where}: expected an object")
        s = _labels(_need(c, "set", list, where), where)
        r = _need(c, "rank", int, where)
        if with_mult:
            entries.append((s, r, _need(c, "mult", int, where)))
        else:
            entries.append((s, r))
    return ground, entries


def parse_semimatroid(obj: dict) -> semimatroid.LocallyRankedTriple:
    ground, entries = _central_entries(obj, False)
    try:
        return semimatroid.LocallyRankedTriple.from_sets(ground, entries)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_poset(obj: dict) -> geomsl.FinitePoset:
    els = _need(obj, "elements", list, "poset")
    ids, rank = [], {}
    for k, e in enumerate(els):
        where = f"elements[{k}]"
        if not isinstance(e, dict):
            raise InputError(f"{where}: expected an object")
        i = str(_need(e, "id", (str, int), where))
        ids.append(i)
        if "rank" in e:
            rank[i] = _need(e, "rank", int, where)
    covers = _need(obj, "covers", list, "poset")
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2):
            raise InputError("poset: each cover must be a pair")
    try:
        return geomsl.FinitePoset(ids, [(str(a), str(b)) for a, b in covers],
                                  rank=rank if len(rank) == len(ids) and ids else None)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_quotient(obj: dict) -> arith.QuotientData:
    ground, entries = _central_entries(obj, True)
    layers = None
    if "layers" in obj:
        lo = obj["layers"]
        if not isinstance(lo, dict):
            raise InputError("layers: expected an object")
        P = parse_poset(lo)
        index = {g: i for i, g in enumerate(ground)}

        def mask(labels, where):
            m = 0
            for x in _labels(labels, where):
                if x not in index:
                    raise InputError(f"{where}: unknown element {x!r}")
                m |= 1 << index[x]
            return m

        support = {}
        for k, e in enumerate(lo["elements"]):
            support[str(e["id"])] = mask(_need(e, "support", list, f"layers.elements[{k}]"), f"layers.elements[{k}]")
        kappa: dict[int, list[str]] = {}
        for k, kv in enumerate(_need(lo, "kappa", list, "layers")):
            where = f"layers.kappa[{k}]"
            if not isinstance(kv, dict):
                raise InputError(f"{where}: expected an object")
            A = mask(_need(kv, "set", list, where), where)
            kappa.setdefault(A, []).append(str(_need(kv, "layer", (str, int), where)))
        layers = arith.LayerData(P, support, kappa)
    try:
        return arith.QuotientData.from_sets(ground, entries, layers)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _int_rows(rows, where: str) -> list[list[int]]:
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in rows
    ):
        raise InputError(f"{where}: expected a list of integer lists")
    return rows


def _rational(s, where: str) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise InputError(f"{where}: rationals are written as strings \"p/q\"")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot read {s!r} as a rational") from None


def parse_arrangement(obj: dict) -> periodic.PeriodicArrangement:
    if "matrix" in obj:
        rows = _int_rows(obj["matrix"], "matrix")
        if not rows:
            raise InputError("matrix: needs at least one row")
        try:
            A = IntMatrix(rows)
        except ValueError as exc:
            raise InputError(f"matrix: {exc}") from None
        _cap(A.cols, "matrix")
        return periodic.PeriodicArrangement.from_matrix(A)
    d = _need(obj, "d", int, "arrangement")
    cols = _int_rows(_need(obj, "columns", list, "arrangement"), "columns")
    _cap(len(cols), "arrangement")
    offsets = None
    if "offsets" in obj:
        offs = _need(obj, "offsets", list, "arrangement")
        offsets = [_rational(o, f"offsets[{k}]") for k, o in enumerate(offs)]
    try:
        return periodic.PeriodicArrangement(d, cols, offsets)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_group(g, where: str) -> FgAbGroup:
    if not isinstance(g, dict):
        raise InputError(f"{where}: expected {{\"free\": r, \"torsion\": [...]}}")
    free = g.get("free", 0)
    tors = g.get("torsion", [])
    if not isinstance(free, int) or not isinstance(tors, list) or not all(isinstance(t, int) for t in tors):
        raise InputError(f"{where}: bad group description")
    try:
        return FgAbGroup(free, tors)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_diagram(obj: dict) -> zmatroid.SquareDiagram:
    groups = {k: parse_group(v, f"groups.{k}") for k, v in _need(obj, "groups", dict, "diagram").items()}
    maps_in = _need(obj, "maps", dict, "diagram")
    maps = {}
    for name, (s, t) in zmatroid.SQUARE_MAPS.items():
        if s not in groups or t not in groups:
            raise InputError("diagram: groups A, B, C, D are required")
        v = maps_in.get(name)
        if v is None:
            raise InputError(f"diagram: map {name!r} is missing (use \"unknown\")")
        if v == "unknown":
            maps[name] = None
            continue
        rows = _int_rows(v, f"maps.{name}")
        try:
            maps[name] = IntMatrix(rows, cols=groups[s].ngens)
        except ValueError as exc:
            raise InputError(f"maps.{name}: {exc}") from None
    try:
        return zmatroid.SquareDiagram(groups, maps)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- output helpers ----------------------------------------------------------


def emit(args, text_lines: list[str], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _violations_json(vs) -> list[dict]:
    return [{"axiom": v.axiom, "message": v.message} for v in vs]


# -- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    obj = load_json(args.input)
    kind = kind_of(obj)
    if kind == "semimatroid":
        t = parse_semimatroid(obj)
        vs = semimatroid.check_locally_ranked(t) or semimatroid.check_semimatroid(t)
    elif kind == "quotient":
        t = parse_quotient(obj).triple
        vs = semimatroid.check_locally_ranked(t) or semimatroid.check_semimatroid(t)
    elif kind == "poset":
        vs = geomsl.check_geometric_semilattice(parse_poset(obj))
    else:
        raise InputError(f"validate does not take {kind} input")
    lines = [str(v) for v in vs] or ["valid"]
    emit(args, lines, {"kind": kind, "valid": not vs, "violations": _violations_json(vs)})
    return 1 if vs else 0


def cmd_tutte(args) -> int:
    obj = load_json(args.input)
    kind = kind_of(obj)
    if kind in ("arrangement", "matrix"):
        T = arith.g_tutte(periodic.arithmetic_matroid(parse_arrangement(obj)))
    elif kind == "quotient":
        T = arith.g_tutte(parse_quotient(obj))
    elif kind == "semimatroid":
        T = semimatroid.tutte(parse_semimatroid(obj))
    else:
        raise InputError(f"tutte does not take {kind} input")
    emit(args, [str(T)], {"tutte": str(T), "coefficients": T.to_json()})
    return 0


def cmd_charpoly(args) -> int:
    obj = load_json(args.input)
    kind = kind_of(obj)
    check = None
    if kind == "poset":
        P = parse_poset(obj)
        try:
            chi = geomsl.char_poly(P)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif kind in ("arrangement", "matrix"):
        arr = parse_arrangement(obj)
        chi = geomsl.char_poly(periodic.layer_poset(arr), periodic.arithmetic_matroid(arr).full_rank)
        if all(any(c) for c in arr.columns):
            check = periodic.check_theorem_cp(arr)
    elif kind == "quotient":
        D = parse_quotient(obj)
        if D.layers is None:
            raise InputError("quotient input needs a layers block for charpoly")
        chi, rhs = arith.theorem_cp_sides(D)
        check = chi == rhs
    else:
        raise InputError(f"charpoly does not take {kind} input")
    lines = [str(chi)]
    if check is not None:
        lines.append("chi = (-1)^r T(1-t,0): " + ("holds" if check else "FAILS"))
    emit(args, lines, {"charpoly": str(chi), "coefficients": chi.to_json(), "theorem_cp": check})
    return 1 if check is False else 0


def cmd_layers(args) -> int:
    arr = parse_arrangement(load_json(args.input))
    P = periodic.layer_poset(arr)

    def label(pid):
        return P.payload[pid].label(arr)

    if args.format == "dot":
        print(P.to_dot(label=label, name="layers"))
    elif args.format == "json":
        out = P.to_json()
        for e in out["elements"]:
            L = P.payload[e["id"]]
            e["support"] = [arr.labels[i] for i in semimatroid.bits(L.support)]
            e["coset"] = list(L.coset)
        print(json.dumps(out, indent=1, sort_keys=True))
    else:
        for pid in P.elements:
            print(f"{pid}: {label(pid)}")
        for a, b in P.covers:
            print(f"{a} < {b}")
    return 0


def multiplicity_data(obj, command: str, unit_ok: bool = False) -> arith.QuotientData:
    """Quotient data from a quotient, an arrangement, or (if ``unit_ok``) a semimatroid with m = 1."""
    kind = kind_of(obj)
    if kind == "quotient":
        return parse_quotient(obj)
    if kind in ("arrangement", "matrix"):
        return periodic.arithmetic_matroid(parse_arrangement(obj))
    if kind == "semimatroid" and unit_ok:
        return arith.with_unit_multiplicity(parse_semimatroid(obj))
    raise InputError(f"{command} does not take {kind} input")


def cmd_arithcheck(args) -> int:
    D = multiplicity_data(load_json(args.input), "arithcheck")
    rep = arith.check_axioms(D)
    lines = [f"{a}: {'ok' if rep.flags[a] else 'fails'}" for a in arith.AXIOMS]
    lines.append(f"classification: {rep.classification}")
    lines += [str(v) for v in rep.failures()]
    emit(args, lines, {
        "flags": rep.flags,
        "classification": rep.classification,
        "witnesses": {a: _violations_json(v) for a, v in rep.witnesses.items() if v},
    })
    ok = rep.is_arithmetic and rep.flags["locally_ranked"]
    return 0 if ok else 1


def cmd_delcon(args) -> int:
    D = multiplicity_data(load_json(args.input), "delcon", unit_ok=True)
    if args.element not in D.triple.index:
        raise InputError(f"{args.element!r} is not a ground element")
    r = arith.del_con(D, args.element)
    lines = [
        f"case: {r.case}",
        f"T = {r.t}",
        f"T_del = {r.t_del}",
        f"T_con = {r.t_con}",
        "identity: " + ("holds" if r.holds else f"FAILS (recombined {r.combined})"),
    ]
    emit(args, lines, {"case": r.case, "tutte": str(r.t), "deletion": str(r.t_del),
                       "contraction": str(r.t_con), "holds": r.holds})
    return 0 if r.holds else 1


def cmd_crapo(args) -> int:
    D = multiplicity_data(load_json(args.input), "crapo", unit_ok=True)
    order = None
    if args.order:
        order = [s.strip() for s in args.order.split(",")]
        if sorted(order) != sorted(D.ground):
            raise InputError("--order must list every ground element exactly once")
    try:
        C = arith.crapo_decomposition(D, order)
    except (arith.PreconditionError, arith.InexactDivision) as exc:
        emit(args, [f"precondition failed: {exc}"], {"error": str(exc)})
        return 1
    T = arith.g_tutte(D)
    ok = C == T
    emit(args, [f"crapo: {C}", f"tutte: {T}", "identity: " + ("holds" if ok else "FAILS")],
         {"crapo": str(C), "tutte": str(T), "holds": ok})
    return 0 if ok else 1


def cmd_crypto(args) -> int:
    obj = load_json(args.input)
    kind = kind_of(obj)
    try:
        if kind == "semimatroid":
            phi = geomsl.roundtrip_semimatroid(parse_semimatroid(obj))
        elif kind == "poset":
            phi = geomsl.roundtrip_semilattice(parse_poset(obj))
        else:
            raise InputError(f"crypto does not take {kind} input")
    except ValueError as exc:
        emit(args, [f"precondition failed: {exc}"], {"error": str(exc)})
        return 1
    ok = phi is not None
    lines = [f"{k} -> {v}" for k, v in (phi or {}).items()]
    lines.append("round trip: " + ("ok" if ok else "FAILS"))
    emit(args, lines, {"isomorphism": phi, "ok": ok})
    return 0 if ok else 1


def cmd_zmatroid(args) -> int:
    arr = parse_arrangement(load_json(args.input))
    M = zmatroid.from_matrix(arr.matrix)
    vs = zmatroid.check_zmatroid(M)
    lines = [f"M({M.fmt(I)}) = {M.group(I)}" for I in range(1 << M.n)]
    lines += [str(v) for v in vs]
    lines.append("matroid over Z: " + ("ok" if not vs else "FAILS"))
    emit(args, lines, {"modules": {M.fmt(I): str(M.group(I)) for I in range(1 << M.n)},
                       "violations": _violations_json(vs)})
    return 1 if vs else 0


def cmd_duality(args) -> int:
    arr = parse_arrangement(load_json(args.input))
    if not arr.centered:
        raise InputError("duality needs a centered arrangement")
    bad = zmatroid.duality_violations(arr.matrix)
    emit(args, bad + ["duality: " + ("holds" if not bad else "FAILS")], {"holds": not bad, "violations": bad})
    return 1 if bad else 0


def cmd_square(args) -> int:
    sq = parse_diagram(load_json(args.input))
    try:
        rep = zmatroid.complete_square(sq)
    except zmatroid.NotEnumerable as exc:
        raise InputError(str(exc)) from None
    lines = []
    for c in rep.completions:
        desc = ", ".join(f"{k}={m.tolist()}" for k, m in c.maps.items())
        lines.append(f"{desc}: {'pushout' if c.is_pushout else 'not a pushout'}")
    n_po = sum(c.is_pushout for c in rep.completions)
    lines += [f"candidates: {rep.candidates}", f"pushout completions: {n_po}"]
    emit(args, lines, {
        "candidates": rep.candidates,
        "pushouts": n_po,
        "completions": [{"maps": {k: m.tolist() for k, m in c.maps.items()}, "pushout": c.is_pushout}
                        for c in rep.completions],
    })
    return 0 if rep.satisfiable else 1


COMMANDS = {
    "validate": (cmd_validate, "axiom report for a semimatroid, quotient or poset"),
    "tutte": (cmd_tutte, "Tutte polynomial of an arrangement, quotient or semimatroid"),
    "charpoly": (cmd_charpoly, "characteristic polynomial of a poset, arrangement or quotient"),
    "layers": (cmd_layers, "poset of layers of an arrangement"),
    "arithcheck": (cmd_arithcheck, "arithmetic axiom classification"),
    "delcon": (cmd_delcon, "deletion/contraction at one element"),
    "crapo": (cmd_crapo, "activity decomposition against the Tutte polynomial"),
    "crypto": (cmd_crypto, "semimatroid/semilattice round trip"),
    "zmatroid": (cmd_zmatroid, "modules of the matroid over Z of a matrix"),
    "duality": (cmd_duality, "duality between the two arithmetic matroids of a matrix"),
    "square": (cmd_square, "complete a square diagram of abelian groups"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gtutte", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input")
        if name == "delcon":
            sp.add_argument("element")
        if name == "crapo":
            sp.add_argument("--order", help="comma-separated total order on the ground set")
        sp.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.format == "dot" and args.command != "layers":
        print("error: dot output is only available for layers", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command][0](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed:
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
