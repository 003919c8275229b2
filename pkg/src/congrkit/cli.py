"""Command line front end.

    congrkit alg {validate|con|spectra|cblp|star|quotient|product|decompose|crt} FILE...
    congrkit rl {validate|filters|blp|ilp|classify|reticulate|crosscheck} FILE
    congrkit lat {profile|normality|center} FILE
    congrkit hasse FILE --dot OUT
    congrkit catalog {list|show|export} [KEY]

Exit codes: 0 analysis done, 1 verdict failed under --assert, 2 bad input,
3 internal inconsistency (e.g. the brute force oracle disagrees).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from . import config
from .algebra import (AlgebraError, FiniteAlgebra, IncompatibleSystemError, algebra_lattice, cg,
                      con, con_bruteforce, crt_solve, format_algebra, is_arithmetical,
                      is_congruence_distributive, parse_algebra, product, quotient)
from .catalog import fixture, fixture_keys, random_algebras
from .cblp import (NotArithmeticalError, cblp_report, satisfies_star, semilocal_decompose,
                   spectra)
from .lattice import (FiniteLattice, boolean_center,
                      lattice_profile, normality_profile, parse_lattice, to_dot)
from .reslat import (InconsistencyError, algebra_has_blp, blp_cblp_crosscheck, classify,
                     filter_label, filters, has_ilp, idempotents, regular_elements, reticulation,
                     validate_residuated)


class Failed(Exception):
    """Verdict failure under --assert."""


class Inconsistent(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    subcommand: str | None
    paths: list = field(default_factory=list)
    format: str = "text"
    dot: str | None = None
    brute_force: bool = False
    assert_verdict: bool = False
    max_size: int | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# input

def load_algebra(path: str) -> FiniteAlgebra:
    with open(path) as fh:
        return parse_algebra(fh.read())


def load_lattice(path: str, of_con: bool = False) -> FiniteLattice:
    with open(path) as fh:
        text = fh.read()
    first = next((ln.split()[0] for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    if first == "lattice":
        if of_con:
            raise AlgebraError("--con needs an algebra file")
        return parse_lattice(text)
    alg = parse_algebra(text)
    if of_con:
        return con(alg).lattice
    return algebra_lattice(alg)


def parse_pairs(alg: FiniteAlgebra, text: str) -> list:
    """'a,b;c,d' -> [(a, b), (c, d)] using labels or indices."""
    out = []
    for chunk in filter(None, re.split(r"[;\s]+", text.strip())):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise AlgebraError(f"bad pair {chunk!r}; use a,b")
        out.append((alg.element(parts[0]), alg.element(parts[1])))
    return out


# ---------------------------------------------------------------------------
# output

def render_text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                inner = ", ".join(f"{k}={_scalar(x)}" for k, x in v.items())
                lines.append(f"{pad}- {inner}")
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    return str(v)


def emit(cfg: CliConfig, obj, out):
    if isinstance(obj, str):
        out.write(obj if obj.endswith("\n") else obj + "\n")
    elif cfg.format == "json":
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(render_text(obj) + "\n")


def verdict(cfg: CliConfig, ok: bool):
    if cfg.assert_verdict and not ok:
        raise Failed()


# ---------------------------------------------------------------------------
# commands

def _part(alg, theta):
    return theta.format(alg.labels)


def cmd_alg(cfg: CliConfig, out):
    sub = cfg.subcommand
    if sub == "product":
        algs = [load_algebra(p) for p in cfg.paths]
        prod, _ = product(algs)
        emit(cfg, format_algebra(prod) if cfg.format == "text" else
             {"algebra": prod.name, "size": prod.size}, out)
        return
    alg = load_algebra(cfg.paths[0])
    if sub == "validate":
        emit(cfg, {"algebra": alg.name, "valid": True, "size": alg.size,
                   "ops": [f"{n}/{k}" for n, k in alg.signature]}, out)
        return
    conL = con(alg)
    result: dict = {"algebra": alg.name}
    if sub == "con":
        result["congruence_count"] = len(conL)
        result["congruences"] = [conL.label(i) for i in range(len(conL))]
        result["distributive"] = is_congruence_distributive(conL)
        ok = True
    elif sub == "spectra":
        sp = spectra(conL)
        result.update(spec=[conL.label(i) for i in sp.spec], max=[conL.label(i) for i in sp.max],
                      rad=conL.label(sp.rad), local=len(sp.max) == 1)
        ok = True
    elif sub == "cblp":
        result = cblp_report(conL)
        ok = result["cblp"]
    elif sub == "star":
        st = satisfies_star(conL)
        result["star"] = st.holds
        result["witnesses"] = [
            {"partition": conL.label(t),
             "alpha": conL.label(w[0]) if w else None,
             "beta": conL.label(w[1]) if w else None}
            for t, w in st.witnesses.items()]
        ok = st.holds
    elif sub == "quotient":
        theta = cg(alg, parse_pairs(alg, cfg.extra.get("pairs") or ""))
        q = quotient(alg, theta)
        if cfg.format == "text":
            emit(cfg, f"# quotient by {_part(alg, theta)}\n" + format_algebra(q.target), out)
            return
        result.update(theta=_part(alg, theta), size=q.target.size,
                      projection=[q.target.labels[p] for p in q.projection])
        ok = True
    elif sub == "decompose":
        try:
            d = semilocal_decompose(alg, conL)
        except NotArithmeticalError as exc:
            result.update(decomposition=None, error=str(exc))
            emit(cfg, result, out)
            verdict(cfg, False)
            return
        result["ok"] = d.ok
        if d.ok:
            result["factors"] = [{"alpha": conL.label(a), "size": q.target.size}
                                 for a, q in zip(d.alphas, d.factors)]
            result["verified"] = d.verified
        else:
            result["failing"] = conL.label(d.failing)
        ok = d.ok
    elif sub == "crt":
        thetas = [cg(alg, parse_pairs(alg, p)) for p in cfg.extra.get("system") or []]
        targets = cfg.extra.get("targets") or []
        result["arithmetical"] = is_arithmetical(alg, conL)
        try:
            a = crt_solve(alg, thetas, targets)
            result["status"] = "solved" if a is not None else "no solution"
            result["solution"] = alg.labels[a] if a is not None else None
            ok = a is not None
        except IncompatibleSystemError as exc:
            result["status"] = "incompatible"
            result["detail"] = str(exc)
            ok = False
    else:
        raise AlgebraError(f"unknown alg subcommand {sub}")
    if cfg.brute_force:
        agreed = con_bruteforce(alg) == set(conL.elements)
        result["oracle_agreed"] = agreed
        emit(cfg, result, out)
        if not agreed:
            raise Inconsistent("con() and the brute force oracle disagree")
    else:
        emit(cfg, result, out)
    verdict(cfg, ok)


def cmd_rl(cfg: CliConfig, out):
    A = validate_residuated(load_algebra(cfg.paths[0]))
    sub = cfg.subcommand
    result: dict = {"algebra": A.name}
    ok = True
    if sub == "validate":
        result["valid"] = True
    elif sub == "filters":
        result["filters"] = [{"filter": filter_label(A, F),
                              "members": [A.labels[x] for x in sorted(F)]} for F in filters(A)]
    elif sub == "blp":
        rep = algebra_has_blp(A)
        result["blp"] = rep.holds
        result["filters"] = [{"filter": filter_label(A, v.filter), "blp": v.holds,
                              **({"witness": _rl_label(A, v)} if v.witness is not None else {})}
                             for v in rep.per_filter]
        result["failures"] = [filter_label(A, F) for F in rep.failing]
        ok = rep.holds
    elif sub == "ilp":
        rows = [{"filter": filter_label(A, F), "ilp": has_ilp(A, F)} for F in filters(A)]
        result["idempotents"] = [A.labels[x] for x in sorted(idempotents(A))]
        result["regular"] = [A.labels[x] for x in sorted(regular_elements(A))]
        result["filters"] = rows
        result["ilp"] = ok = all(r["ilp"] for r in rows)
    elif sub == "classify":
        c = classify(A)
        result.update(is_godel=c.is_godel, is_bl=c.is_bl, is_mv=c.is_mv, is_gelfand=c.is_gelfand)
    elif sub == "reticulate":
        R = reticulation(A)
        if cfg.format == "text":
            from .lattice import format_lattice
            emit(cfg, format_lattice(R), out)
            return
        result["reticulation"] = {"size": R.size, "labels": R.labels}
    elif sub == "crosscheck":
        cc = blp_cblp_crosscheck(A, strict=False)
        result["filters"] = [{"filter": filter_label(A, r.filter), "blp": r.blp, "cblp": r.cblp}
                             for r in cc.rows]
        result["filters_to_congruences_iso"] = cc.filters_to_congruences_iso
        result["agree"] = cc.agree
        emit(cfg, result, out)
        if not cc.agree:
            raise Inconsistent("BLP and CBLP verdicts disagree")
        return
    else:
        raise AlgebraError(f"unknown rl subcommand {sub}")
    emit(cfg, result, out)
    verdict(cfg, ok)


def _rl_label(A, v):
    Q_labels = None
    from .reslat import quotient_by_filter
    Q, _ = quotient_by_filter(A, v.filter)
    Q_labels = Q.labels
    return Q_labels[v.witness]


def cmd_lat(cfg: CliConfig, out):
    L = load_lattice(cfg.paths[0], cfg.extra.get("of_con", False))
    result: dict = {"lattice": L.name, "size": L.size}
    sub = cfg.subcommand
    if sub == "profile":
        p = lattice_profile(L)
        result.update(distributive=p.is_distributive, modular=p.is_modular, boolean=p.is_boolean)
        ok = p.is_distributive
    elif sub == "normality":
        p = normality_profile(L)
        result.update(normal=p.normal, b_normal=p.b_normal, conormal=p.conormal,
                      b_conormal=p.b_conormal)
        ok = p.b_normal
    elif sub == "center":
        bc = boolean_center(L)
        result["boolean_center"] = [L.labels[x] for x in bc.elements]
        result["complement"] = {L.labels[x]: L.labels[y] for x, y in bc.complement.items()}
        result["unique_complements"] = bc.unique
        ok = True
    else:
        raise AlgebraError(f"unknown lat subcommand {sub}")
    emit(cfg, result, out)
    verdict(cfg, ok)


def cmd_hasse(cfg: CliConfig, out):
    L = load_lattice(cfg.paths[0], cfg.extra.get("of_con", False))
    dot = to_dot(L)
    if cfg.dot and cfg.dot != "-":
        with open(cfg.dot, "w") as fh:
            fh.write(dot)
        emit(cfg, {"lattice": L.name, "dot": cfg.dot, "edges": dot.count("->")}, out)
    else:
        out.write(dot)


def _catalog_algebra(key, seed):
    m = re.match(r"^random_(lattice|residuated)_(\d+)$", key)
    if m:
        return random_algebras(m.group(1), int(m.group(2)), 1, seed)[0]
    return fixture(key).algebra


def cmd_catalog(cfg: CliConfig, out):
    sub = cfg.subcommand
    if sub == "list":
        rows = []
        for k in fixture_keys():
            f = fixture(k)
            rows.append({"key": k, "kind": f.kind, "size": f.algebra.size})
        emit(cfg, {"fixtures": rows}, out)
        return
    key = cfg.paths[0] if cfg.paths else None
    if not key:
        raise AlgebraError("catalog show/export needs a KEY")
    try:
        alg = _catalog_algebra(key, cfg.seed)
    except KeyError as exc:
        raise AlgebraError(str(exc)) from None
    if sub == "export":
        text = format_algebra(alg)
        target = cfg.extra.get("out")
        if target:
            with open(target, "w") as fh:
                fh.write(text)
        else:
            out.write(text)
        return
    if sub == "show":
        if key.startswith("random_"):
            emit(cfg, {"key": key, "size": alg.size}, out)
            return
        f = fixture(key)
        facts = {}
        for name, fact in f.expected.items():
            facts[name] = {"value": _fact_value(f.algebra, fact.value), "anchor": fact.anchor}
        emit(cfg, {"key": key, "kind": f.kind, "size": f.algebra.size,
                   "elements": f.algebra.labels, "expected": facts}, out)
        return
    raise AlgebraError(f"unknown catalog subcommand {sub}")


def _fact_value(alg, v):
    from .partition import Congruence
    if isinstance(v, Congruence):
        return v.format(alg.labels)
    if isinstance(v, (set, frozenset)):
        items = [_fact_value(alg, x) for x in v]
        if all(isinstance(x, int) for x in items):
            return [alg.labels[x] for x in sorted(items)]
        return sorted(str(x) for x in items)
    return v


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--assert", dest="assert_verdict", action="store_true",
                        help="exit 1 when the main verdict fails")
    common.add_argument("--brute-force", action="store_true",
                        help="cross-check Con(A) against the brute force oracle")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=None)

    parser = argparse.ArgumentParser(prog="congrkit", description=__doc__.split("\n\n")[0])
    cmds = parser.add_subparsers(dest="command", required=True)

    alg = cmds.add_parser("alg", help="finite algebras").add_subparsers(dest="subcommand", required=True)
    for name in ["validate", "con", "spectra", "cblp", "star", "decompose"]:
        p = alg.add_parser(name, parents=[common])
        p.add_argument("paths", nargs=1, metavar="FILE")
    p = alg.add_parser("quotient", parents=[common])
    p.add_argument("paths", nargs=1, metavar="FILE")
    p.add_argument("--pairs", required=True, help="generating pairs, e.g. 'y,z;0,x'")
    p = alg.add_parser("product", parents=[common])
    p.add_argument("paths", nargs="+", metavar="FILE")
    p = alg.add_parser("crt", parents=[common])
    p.add_argument("paths", nargs=1, metavar="FILE")
    p.add_argument("--system", action="append", default=[],
                   help="generating pairs of one congruence (repeat per congruence)")
    p.add_argument("--targets", nargs="+", default=[])

    rl = cmds.add_parser("rl", help="residuated lattices").add_subparsers(dest="subcommand", required=True)
    for name in ["validate", "filters", "blp", "ilp", "classify", "reticulate", "crosscheck"]:
        p = rl.add_parser(name, parents=[common])
        p.add_argument("paths", nargs=1, metavar="FILE")

    lat = cmds.add_parser("lat", help="finite lattices").add_subparsers(dest="subcommand", required=True)
    for name in ["profile", "normality", "center"]:
        p = lat.add_parser(name, parents=[common])
        p.add_argument("paths", nargs=1, metavar="FILE")
        p.add_argument("--con", dest="of_con", action="store_true",
                       help="analyze Con(A) of an algebra file")

    p = cmds.add_parser("hasse", parents=[common], help="DOT Hasse diagram")
    p.add_argument("paths", nargs=1, metavar="FILE")
    p.add_argument("--dot", default="-")
    p.add_argument("--con", dest="of_con", action="store_true")

    cat = cmds.add_parser("catalog", help="built-in examples").add_subparsers(dest="subcommand", required=True)
    cat.add_parser("list", parents=[common])
    for name in ["show", "export"]:
        p = cat.add_parser(name, parents=[common])
        p.add_argument("paths", nargs=1, metavar="KEY")
        if name == "export":
            p.add_argument("--out", default=None)
    return parser


def config_from_args(args) -> CliConfig:
    extra = {k: getattr(args, k) for k in ("pairs", "system", "targets", "of_con", "out")
             if hasattr(args, k)}
    if args.max_size is not None and args.max_size <= 0:
        raise AlgebraError("--max-size must be positive")
    return CliConfig(args.command, getattr(args, "subcommand", None), list(getattr(args, "paths", [])),
                     args.format, getattr(args, "dot", None), args.brute_force,
                     args.assert_verdict, args.max_size, args.seed, extra)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    handlers = {"alg": cmd_alg, "rl": cmd_rl, "lat": cmd_lat, "hasse": cmd_hasse,
                "catalog": cmd_catalog}
    saved = config.limits()
    try:
        cfg = config_from_args(args)
        if cfg.max_size:
            config.set_limits(saved.with_max_size(cfg.max_size))
        handlers[cfg.command](cfg, out)
        return 0
    except Failed:
        return 1
    except (Inconsistent, InconsistencyError) as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return 3
    except (ValueError, OSError, KeyError) as exc:  # AlgebraError, LatticeError included
        err.write(f"error: {exc}\n")
        return 2
    finally:
        config.set_limits(saved)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
