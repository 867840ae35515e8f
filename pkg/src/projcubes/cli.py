"""Command-line surface: construction, verification, equivalence, classification, tables."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import classify as _classify
from . import refdata
from .algebra import resolve_group
from .constructions import cyclotomic_nd, paley_nd, twin_prime_power_nd
from .cube import (Cube, dimension_bounds, format_cube_file, parse_cube_file,
                   projection, verify_cube)
from .diffset import (BudgetExceeded, NdDifferenceSet, OrdinaryDifferenceSet, develop,
                      format_ndiffset_file, is_nd_difference_set, lift_to_2d,
                      parse_ndiffset_file)
from .equivalence import Isotopy, are_isotopic, are_paratopic, canonical_form


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_any(path: str):
    text = _read(path)
    head = text.split(None, 1)[0] if text.strip() else ""
    if head == "pcube":
        return "cube", parse_cube_file(text)
    if head == "ndiffset":
        return "nds", parse_ndiffset_file(text, search=(os.path.dirname(path),), check=False)
    raise ValueError(f"unrecognized file header in {path}")


def _load_cube(path: str) -> Cube:
    kind, obj = _load_any(path)
    if kind != "cube":
        raise ValueError(f"{path} is not a cube file")
    return obj


def _load_nds(path: str) -> NdDifferenceSet:
    kind, obj = _load_any(path)
    if kind != "nds":
        raise ValueError(f"{path} is not an ndiffset file")
    return obj


def _write_or_print(args, content: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(content)
        print(content.splitlines()[0])
    else:
        sys.stdout.write(content)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _nds_json(D: NdDifferenceSet) -> dict:
    return {"v": D.v, "k": D.k, "lambda": D.lam, "n": D.n, "group": D.group.name,
            "tuples": [list(t) for t in D.tuples]}


def _cube_json(C: Cube) -> dict:
    return {"v": C.v, "k": C.k, "lambda": C.lam, "n": C.n,
            "rows": [[x + 1 for x in r] for r in C.rows]}


def _cycles(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for s in range(len(perm)):
        if seen[s] or perm[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        t = perm[s]
        while t != s:
            cyc.append(t)
            seen[t] = True
            t = perm[t]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "()"


def _one_based(perm: Sequence[int]) -> str:
    return " ".join(str(x + 1) for x in perm)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"bad integer list: {text!r}") from None


def _cmd_construct(args) -> int:
    if args.kind == "paley":
        D = paley_nd(args.q, args.alpha)
    elif args.kind == "cyclotomic":
        D = cyclotomic_nd(args.q, args.m, args.alpha)
    elif args.kind == "tpp":
        D = twin_prime_power_nd(args.q, args.alpha, args.beta)
    else:
        G = resolve_group(args.group)
        elems = _parse_int_list(args.set)
        k = len(elems)
        if G.order < 2 or k < 2 or (k * (k - 1)) % (G.order - 1) != 0:
            raise ValueError("set size does not give an integer lambda")
        lam = k * (k - 1) // (G.order - 1)
        D = lift_to_2d(OrdinaryDifferenceSet(G, k, lam, elems))
    content = format_ndiffset_file(D)
    if args.format == "json":
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(content)
        _print_json(_nds_json(D))
    else:
        _write_or_print(args, content)
    return 0


def _cmd_verify(args) -> int:
    kind, obj = _load_any(args.path)
    if kind == "cube":
        rep = verify_cube(obj)
    else:
        rep = is_nd_difference_set(obj.group, obj.tuples, obj.k, obj.lam)
    if args.format == "json":
        _print_json({"ok": rep.ok, "condition": rep.condition,
                     "pair": list(rep.pair) if rep.pair else None, "message": rep.message})
    elif rep.ok:
        print("ok")
    else:
        pair = f" pair={rep.pair[0]},{rep.pair[1]}" if rep.pair else ""
        print(f"fail condition={rep.condition}{pair} {rep.message}")
    return 0 if rep.ok else 1


def _cmd_develop(args) -> int:
    D = _load_nds(args.path)
    C = develop(D)
    if args.format == "json":
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(format_cube_file(C))
        _print_json(_cube_json(C))
    else:
        _write_or_print(args, format_cube_file(C))
    return 0


def _cmd_project(args) -> int:
    C = _load_cube(args.path)
    M = projection(C, args.x, args.y)
    if args.format == "json":
        _print_json({"v": M.v, "entries": M.entries.tolist()})
    else:
        for row in M.entries.tolist():
            print(" ".join(str(x) for x in row))
    return 0


def _cmd_bounds(args) -> int:
    b23, b27 = dimension_bounds(args.v, args.k)
    if args.format == "json":
        _print_json({"bound23": b23, "bound27": b27})
    else:
        print(f"bound23 {b23 if b23 is not None else 'none'}")
        print(f"bound27 {b27 if b27 is not None else 'none'}")
    return 0


def _cmd_equiv(args) -> int:
    C1 = _load_cube(args.a)
    C2 = _load_cube(args.b)
    rel = "isotopic" if args.isotopy else "paratopic"
    w = are_isotopic(C1, C2) if args.isotopy else are_paratopic(C1, C2)
    if w is None:
        if args.format == "json":
            _print_json({"equivalent": False, "relation": rel})
        else:
            print(f"not {rel}")
        return 1
    if args.format == "json":
        obj: dict = {"equivalent": True, "relation": rel}
        if args.isotopy:
            obj["perms"] = [list(p) for p in w.perms]
        else:
            obj["conj"] = list(w.conj)
            obj["perms"] = [list(p) for p in w.iso.perms]
        _print_json(obj)
        return 0
    print(rel)
    perms = w.perms if args.isotopy else w.iso.perms
    if not args.isotopy:
        print(f"conj {_one_based(w.conj)}")
    for c, p in enumerate(perms, 1):
        print(f"alpha {c} {_one_based(p)}")
    return 0


def _cmd_canon(args) -> int:
    C = _load_cube(args.path)
    cert = canonical_form(C)
    K = Cube(C.v, C.k, C.lam, C.n, cert.canonical_rows)
    if args.format == "json":
        obj = _cube_json(K)
        obj["aparOrder"] = cert.apar_order
        _print_json(obj)
    else:
        sys.stdout.write(format_cube_file(K))
        print(f"aparOrder {cert.apar_order}")
    return 0


def _cmd_aut(args) -> int:
    C = _load_cube(args.path)
    cert = canonical_form(C)
    if args.format == "json":
        _print_json({"atopOrder": cert.atop_order, "aparOrder": cert.apar_order,
                     "generators": [{"conj": list(P.conj),
                                     "perms": [list(p) for p in P.iso.perms]}
                                    for P in cert.generators]})
        return 0
    print(f"atopOrder {cert.atop_order}")
    print(f"aparOrder {cert.apar_order}")
    for i, P in enumerate(cert.generators, 1):
        print(f"gen {i} conj {_cycles(P.conj)}")
        for c, p in enumerate(P.iso.perms, 1):
            print(f"gen {i} alpha {c} {_cycles(p)}")
    return 0


def _emit_reps(directory: str, per_dimension: dict) -> None:
    os.makedirs(directory, exist_ok=True)
    for n, reps in sorted(per_dimension.items()):
        for i, D in enumerate(reps, 1):
            base = os.path.join(directory, f"n{n}_c{i}")
            with open(base + ".nds", "w", encoding="utf-8") as fh:
                fh.write(format_ndiffset_file(D))
            with open(base + ".oa", "w", encoding="utf-8") as fh:
                fh.write(format_cube_file(develop(D, check=False)))


def _mu_text(mu: Optional[int], exact: bool) -> str:
    if mu is None:
        return "mu=none"
    return f"mu={mu}" if exact else f"mu>={mu}"


def _cmd_classify(args) -> int:
    G = resolve_group(args.group)
    stream = args.format == "text"

    def prog(n: int, c: int) -> None:
        print(f"n={n} classes={c}", flush=True)

    res = _classify.classify_nd_diffsets(G, args.k, args.lam, max_dim=args.max_dim,
                                         budget_seconds=args.budget,
                                         progress=prog if stream else None)
    if stream:
        print(_mu_text(res.mu, res.mu_exact))
    else:
        _print_json({"group": G.name, "v": res.v, "k": res.k, "lambda": res.lam,
                     "classes": {str(n): len(reps) for n, reps in sorted(res.per_dimension.items())},
                     "mu": res.mu, "muExact": res.mu_exact})
    if args.emit:
        _emit_reps(args.emit, res.per_dimension)
    return 0


def _parse_action_file(text: str) -> tuple[int, int, list[Isotopy]]:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("action "):
        raise ValueError("missing action header")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    try:
        v = int(fields["v"])
        n = int(fields["n"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad action header: {exc}") from None
    if len(lines) < 2 or not lines[1].startswith("generators="):
        raise ValueError("missing generators count")
    count = int(lines[1].split("=", 1)[1])
    gens = []
    at = 2
    for _ in range(count):
        if at >= len(lines) or lines[at] != "g":
            raise ValueError("expected a generator block starting with 'g'")
        at += 1
        perms = []
        for _ in range(n):
            if at >= len(lines):
                raise ValueError("truncated generator block")
            images = [int(x) - 1 for x in lines[at].split()]
            if sorted(images) != list(range(v)):
                raise ValueError(f"line {at + 1} is not a permutation of 1..{v}")
            perms.append(tuple(images))
            at += 1
        gens.append(Isotopy(perms))
    if at != len(lines):
        raise ValueError("trailing content after the last generator block")
    return v, n, gens


def _cmd_km_search(args) -> int:
    v, n, gens = _parse_action_file(_read(args.path))
    cubes = _classify.kramer_mesner_search(v, args.k, args.lam, n, gens,
                                           cell_budget=args.cell_budget,
                                           node_budget=args.node_budget)
    if args.format == "json":
        _print_json({"classes": len(cubes)})
    else:
        print(f"classes={len(cubes)}")
    if args.emit:
        os.makedirs(args.emit, exist_ok=True)
        for i, C in enumerate(cubes, 1):
            with open(os.path.join(args.emit, f"c{i}.oa"), "w", encoding="utf-8") as fh:
                fh.write(format_cube_file(C))
    return 0


def _parse_param_triples(values: Optional[list[str]]) -> list[tuple[int, int, int]]:
    if not values:
        return sorted(refdata.TABLE2_MU)
    out = []
    for text in values:
        parts = _parse_int_list(text)
        if len(parts) != 3:
            raise ValueError(f"expected v,k,lambda: {text!r}")
        out.append((parts[0], parts[1], parts[2]))
    return out


def _cmd_report_tables(args) -> int:
    if args.table == "1":
        counts = _classify.table1_counts()
        line = " ".join(str(counts[n]) for n in range(2, 7))
        if args.format == "json":
            _print_json({"counts": {str(n): counts[n] for n in range(2, 7)}})
        else:
            print(line)
        if args.expected:
            expected = " ".join(str(refdata.TABLE1_COUNTS[n]) for n in range(2, 7))
            if line != expected:
                print(f"expected {expected}", file=sys.stderr)
                return 1
        return 0

    if args.table == "2":
        params = _parse_param_triples(args.params)
        code = 0
        rows = []
        for (v, k, lam) in params:
            per = _classify.table2_row(v, k, lam, budget_seconds=args.budget)
            for name, res in per.items():
                rows.append({"v": v, "k": k, "lambda": lam, "group": name,
                             "mu": res.mu, "muExact": res.mu_exact})
                if args.format == "text":
                    print(f"({v},{k},{lam}) {name} {_mu_text(res.mu, res.mu_exact)}",
                          flush=True)
                if args.expected:
                    exp = refdata.TABLE2_MU.get((v, k, lam))
                    if exp is None or not res.mu_exact or res.mu != exp:
                        code = 1
        if args.format == "json":
            _print_json({"rows": rows})
        return code

    ids = _parse_int_list(args.ids) if args.ids else list(range(1, 15))
    expected_rows = {row[0]: row for row in refdata.TABLE3_ROWS}
    code = 0
    rows = []
    for gid in ids:
        if gid not in expected_rows:
            raise ValueError(f"unknown group id {gid}")
        row = _classify.table3_row(gid, with_mu=args.with_mu,
                                   budget_seconds=args.budget, max_dim=args.max_dim)
        rows.append(row)
        if args.format == "text":
            line = f"id={row['id']} group={row['name']} Tds={row['tds']} Nds={row['nds']}"
            if args.with_mu and row["mu"] is not None:
                line += " " + _mu_text(row["mu"], row["mu_exact"])
            print(line, flush=True)
        if args.expected:
            _, _, nds_exp, tds_exp, mu_exp = expected_rows[gid]
            if row["tds"] != tds_exp or row["nds"] != nds_exp:
                code = 1
            if args.with_mu and row["mu"] is not None:
                if isinstance(mu_exp, int):
                    if not (row["mu_exact"] and row["mu"] == mu_exp):
                        code = 1
                elif isinstance(mu_exp, tuple):
                    if row["mu"] < mu_exp[1]:
                        code = 1
    if args.format == "json":
        _print_json({"rows": [{"id": r["id"], "group": r["name"], "tds": r["tds"],
                               "nds": r["nds"], "mu": r["mu"], "muExact": r["mu_exact"]}
                              for r in rows]})
    return code


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="projcubes",
                                description="Projection cubes of symmetric designs and "
                                            "n-dimensional difference sets.")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="output format (default text)")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; computation is single-threaded")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an ndiffset file")
    cs = c.add_subparsers(dest="kind", required=True)
    cp = cs.add_parser("paley", help="Paley difference set over GF(q), q = 3 mod 4")
    cp.add_argument("--q", type=int, required=True)
    cp.add_argument("--alpha", type=int, help="primitive element (default: smallest)")
    cp.add_argument("--out")
    cc = cs.add_parser("cyclotomic", help="cyclotomic classes of index m")
    cc.add_argument("--q", type=int, required=True)
    cc.add_argument("--m", type=int, required=True, choices=(2, 4, 8))
    cc.add_argument("--alpha", type=int)
    cc.add_argument("--out")
    ct = cs.add_parser("tpp", help="twin prime power difference set for q, q+2")
    ct.add_argument("--q", type=int, required=True)
    ct.add_argument("--alpha", type=int)
    ct.add_argument("--beta", type=int)
    ct.add_argument("--out")
    cl = cs.add_parser("lift", help="lift an ordinary difference set to two dimensions")
    cl.add_argument("--group", required=True)
    cl.add_argument("--set", required=True, help="comma-separated elements")
    cl.add_argument("--out")
    for sp in (cp, cc, ct, cl):
        sp.set_defaults(func=_cmd_construct)

    q = sub.add_parser("verify", help="verify a cube or ndiffset file")
    q.add_argument("path")
    q.set_defaults(func=_cmd_verify)

    d = sub.add_parser("develop", help="develop an ndiffset file into a cube")
    d.add_argument("path")
    d.add_argument("--out")
    d.set_defaults(func=_cmd_develop)

    pr = sub.add_parser("project", help="print one coordinate-pair projection")
    pr.add_argument("path")
    pr.add_argument("--x", type=int, required=True)
    pr.add_argument("--y", type=int, required=True)
    pr.set_defaults(func=_cmd_project)

    b = sub.add_parser("bounds", help="dimension bounds for (v,k)")
    b.add_argument("--v", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.set_defaults(func=_cmd_bounds)

    e = sub.add_parser("equiv", help="test two cubes for equivalence")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--isotopy", action="store_true", help="restrict to isotopy")
    e.set_defaults(func=_cmd_equiv)

    cn = sub.add_parser("canon", help="canonical form and autoparatopy order")
    cn.add_argument("path")
    cn.set_defaults(func=_cmd_canon)

    a = sub.add_parser("aut", help="autotopy and autoparatopy groups")
    a.add_argument("path")
    a.set_defaults(func=_cmd_aut)

    cf = sub.add_parser("classify", help="classify n-dimensional difference sets")
    cf.add_argument("--group", required=True)
    cf.add_argument("--k", type=int, required=True)
    cf.add_argument("--lambda", dest="lam", type=int, required=True)
    cf.add_argument("--max-dim", type=int)
    cf.add_argument("--budget", type=float, help="time budget in seconds")
    cf.add_argument("--emit", help="directory for representative .nds/.oa files")
    cf.set_defaults(func=_cmd_classify)

    km = sub.add_parser("km-search", help="Kramer-Mesner search under a group action")
    km.add_argument("path", help="action file")
    km.add_argument("--k", type=int, required=True)
    km.add_argument("--lambda", dest="lam", type=int, required=True)
    km.add_argument("--emit", help="directory for solution .oa files")
    km.add_argument("--cell-budget", type=int, default=10 ** 6)
    km.add_argument("--node-budget", type=int, default=10 ** 7)
    km.set_defaults(func=_cmd_km_search)

    rt = sub.add_parser("report-tables", help="recompute the classification tables")
    rt.add_argument("table", choices=("1", "2", "3-partial"))
    rt.add_argument("--expected", action="store_true",
                    help="diff against the embedded values; nonzero exit on mismatch")
    rt.add_argument("--params", action="append",
                    help="restrict table 2 to one v,k,lambda triple (repeatable)")
    rt.add_argument("--ids", help="restrict table 3 to these group ids")
    rt.add_argument("--budget", type=float, help="per-classification time budget in seconds")
    rt.add_argument("--max-dim", type=int)
    rt.add_argument("--with-mu", action="store_true",
                    help="also classify for table 3 (slow)")
    rt.set_defaults(func=_cmd_report_tables)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.monotonic()
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        print(f"elapsed {time.monotonic() - t0:.2f}s", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
