"""Command line front end.

Subcommands construct the periodic quiver, the root/vertex table, Euler
forms, longest-element words, compatible-system classes and AR quivers, and
run the verification suites. Output is deterministic for a fixed invocation
(including --seed) and comes as versioned JSON, TSV or DOT; see the README
for the exact schemas. Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import arq, coxeter as cox, euler as eulermod, quiverrep, rootsys
from ._intmat import invert, mat_vec, smith_invariant_factors

SCHEMA = 1


def _fail_usage(msg: str) -> "NoReturn":  # noqa: F821 - doc only
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _root_system(name: str) -> rootsys.RootSystem:
    try:
        dynkin = rootsys.DynkinType.parse(name)
    except ValueError as exc:
        _fail_usage(str(exc))
    return rootsys.build_root_system(dynkin)


def _parse_coxeter(rs: rootsys.RootSystem, spec: str | None) -> cox.CoxeterContext:
    """Accept a word like ``1 2 3`` or an orientation like ``1>2 2>3``.

    Both are normalized through an orientation and its topological order, so
    equivalent inputs construct the same element.
    """
    r = rs.dynkin.rank
    pi = rootsys.ref_system(rs)
    if spec is None or not spec.strip():
        word = tuple(range(1, r + 1))
        return cox.coxeter_from_orientation(
            rs, pi, cox.orientation_from_word(rs.dynkin, word))
    tokens = spec.replace(",", " ").split()
    try:
        if any(">" in t for t in tokens):
            arrows = set()
            for t in tokens:
                a, b = t.split(">")
                arrows.add((int(a), int(b)))
            omega = cox.Orientation(rs.dynkin, frozenset(arrows))
            return cox.coxeter_from_orientation(rs, pi, omega)
        word = tuple(int(t) for t in tokens)
        omega = cox.orientation_from_word(rs.dynkin, word)
        if sorted(word) != list(range(1, r + 1)):
            raise ValueError("word must visit each vertex exactly once")
        return cox.coxeter_from_orientation(rs, pi, omega)
    except (ValueError, KeyError) as exc:
        _fail_usage(f"bad --coxeter {spec!r}: {exc}")


def _vertex_id(v) -> str:
    return f"{v[0]}_{v[1]}"


def _vertex_label(v) -> str:
    return f"{v[0]}:{v[1]}"


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _tsv_text(header: list[str], rows: list[list]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _dot_text(name: str, nodes: list[tuple[str, str]], edges: list[tuple[str, str]]) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f'  "{nid}" [label="{label}"];' for nid, label in nodes]
    lines += [f'  "{a}" -> "{b}";' for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _display_root(rs: rootsys.RootSystem, betas_inv, k: int) -> str:
    label = rootsys.euclidean_label(rs, k)
    if label is not None:
        return label
    coords = mat_vec(betas_inv, rs.coords(k))
    return "b:" + ",".join(str(int(c)) for c in coords)


# ---------------------------------------------------------------------------
# payload builders (shared between commands and the golden bundle)

def _quiver_payload(rs: rootsys.RootSystem) -> dict:
    pq = arq.build_periodic_quiver(rs.dynkin)
    vertices = [{"i": i, "n": n, "parity": pq.parity[i - 1], "tau_orbit": i}
                for (i, n) in pq.vertices]
    edges = sorted([_vertex_id(v), _vertex_id(w)] for v, w in pq.edges())
    return {"schema": SCHEMA, "command": "quiver", "type": rs.dynkin.name,
            "h": pq.h, "vertices": vertices, "edges": edges}


def _rootmap_payload(ctx: cox.CoxeterContext, pi: rootsys.SimpleSystem) -> dict:
    rs = ctx.rs
    phi = arq.root_bijection(ctx, pi)
    region = arq.positive_region(ctx, cox.canonical_system(ctx)).vertices
    reps = cox.orbit_representatives(ctx, cox.canonical_system(ctx))
    bmat = [list(row) for row in zip(*[rs.coords(k) for k in reps])]
    binv = invert(bmat)
    rows = []
    for k, v in enumerate(phi.forward):
        rows.append({
            "vertex": _vertex_label(v), "n": v[1], "i": v[0],
            "root": list(rs.coords(k)),
            "display": _display_root(rs, binv, k),
            "positive": v in region,
        })
    rows.sort(key=lambda row: (row["n"], row["i"]))
    return {"schema": SCHEMA, "command": "rootmap", "type": rs.dynkin.name,
            "h": ctx.h, "rows": rows}


def _euler_payload(ctx: cox.CoxeterContext) -> dict:
    table = eulermod.euler_form_from_system(ctx, cox.canonical_system(ctx))
    word = cox.is_compatible(ctx, table.basis)[1]
    periodic = [{"from": _vertex_label(q1), "to": _vertex_label(q2), "value": val}
                for (q1, q2), val in sorted(table.periodic.items())]
    return {"schema": SCHEMA, "command": "euler", "type": ctx.rs.dynkin.name,
            "basis_word": list(word),
            "lattice": [list(r) for r in table.lattice],
            "periodic": periodic}


def _w0_payload(ctx: cox.CoxeterContext, pi: rootsys.SimpleSystem) -> dict:
    rs = ctx.rs
    word = arq.longest_word(ctx, pi)
    w = rootsys.word_to_perm(rs, pi, word)
    if w != rootsys.longest_element(rs, pi):
        raise AssertionError("emitted word does not evaluate to the longest element")
    if {w[k] for k in pi.base} != {rs.neg(k) for k in pi.base}:
        raise AssertionError("longest element does not negate the base")
    return {"schema": SCHEMA, "command": "w0", "type": rs.dynkin.name,
            "word": list(word), "length": len(word)}


def _compatible_payload(ctx: cox.CoxeterContext) -> dict:
    systems = cox.enumerate_compatible(ctx)
    classes: dict[tuple, dict] = {}
    for pi in systems:
        omega = cox.orientation_of(ctx, pi)
        key = omega.sorted_arrows()
        entry = classes.setdefault(
            key, {"orientation": [f"{a}>{b}" for a, b in key], "size": 0, "heights": []})
        entry["size"] += 1
        entry["heights"].append(list(arq.height_function_of(ctx, pi)))
    for entry in classes.values():
        entry["heights"].sort()
    return {"schema": SCHEMA, "command": "compatible", "type": ctx.rs.dynkin.name,
            "count": len(systems),
            "classes": [classes[k] for k in sorted(classes)]}


def _ar_payload(omega: cox.Orientation, radius: int | None) -> dict:
    gamma = quiverrep.ar_quiver(omega, radius)
    vertices = [{"i": v[0], "k": v[1], "dim": list(gamma.dims[v])}
                for v in gamma.vertices]
    arrows = sorted([_vertex_id(a), _vertex_id(b)] for a, b in gamma.arrows())
    return {"schema": SCHEMA, "command": "ar", "type": omega.dynkin.name,
            "orientation": [f"{a}>{b}" for a, b in omega.sorted_arrows()],
            "vertices": vertices, "arrows": arrows}


def _golden_payload(ctx: cox.CoxeterContext) -> dict:
    return {"schema": SCHEMA, "command": "golden", "type": ctx.rs.dynkin.name,
            "quiver": _quiver_payload(ctx.rs),
            "rootmap": _rootmap_payload(ctx, cox.canonical_system(ctx)),
            "euler": _euler_payload(ctx),
            "w0": _w0_payload(ctx, ctx.seed),
            "compatible_count": len(cox.enumerate_compatible(ctx))}


# ---------------------------------------------------------------------------
# verification suites

def _all_orientations(dynkin: rootsys.DynkinType) -> list[cox.Orientation]:
    edges = dynkin.edges()
    out = []
    for mask in range(2 ** len(edges)):
        arrows = frozenset(
            (a, b) if not (mask >> t) & 1 else (b, a)
            for t, (a, b) in enumerate(edges))
        out.append(cox.Orientation(dynkin, arrows))
    return out


def _sample(seq, limit: int, rng: random.Random):
    seq = list(seq)
    if len(seq) <= limit:
        return seq
    return rng.sample(seq, limit)


def run_verify(rs: rootsys.RootSystem, ctx: cox.CoxeterContext,
               seed: int) -> tuple[list[str], list[str]]:
    """Run every invariant suite; returns (failures, notes)."""
    rng = random.Random(seed)
    failures: list[str] = []
    notes: list[str] = []
    dynkin = rs.dynkin
    r = dynkin.rank

    def check(name: str, ok: bool, detail: str = "") -> None:
        if not ok:
            failures.append(f"{name}: {detail}" if detail else name)

    # --- compatible systems -------------------------------------------------
    systems = cox.enumerate_compatible(ctx)
    check("compatible-count", len(systems) == ctx.h * 2 ** (r - 1),
          f"got {len(systems)}")
    if dynkin.weyl_order <= 5000:
        group = rootsys.enumerate_weyl_group(rs)
        brute = {w for w in group
                 if cox.is_compatible(ctx, rootsys.simple_system(rs, w))[0]}
        check("compatible-brute-force", brute == {pi.witness for pi in systems},
              "reflection closure disagrees with Weyl-group filtering")
    else:
        notes.append(f"oracle skipped: |W| = {dynkin.weyl_order} exceeds cap")

    # --- bijection canonicity ----------------------------------------------
    sampled = _sample(systems, 512, rng)
    maps = {arq.root_bijection(ctx, pi).forward for pi in sampled}
    check("bijection-independence", len(maps) == 1,
          f"{len(maps)} distinct maps over {len(sampled)} systems")
    phi = arq.root_bijection(ctx, cox.canonical_system(ctx))
    pq = arq.periodic_quiver(ctx)
    check("bijection-equivariance",
          all(phi.image(ctx.coxeter[k]) == pq.tau(phi.image(k))
              for k in range(len(rs.roots))))

    # --- longest element ----------------------------------------------------
    for pi in _sample(systems, 128, rng):
        word = arq.longest_word(ctx, pi)
        w = rootsys.word_to_perm(rs, pi, word)
        ok = (len(word) == rs.npos
              and rootsys.weyl_length(rs, pi, w) == len(word)
              and w == rootsys.longest_element(rs, pi))
        check("w0-word", ok, f"witness {pi.base}")
        if not ok:
            break

    # --- euler forms ----------------------------------------------------
    t_pi = eulermod.euler_form_from_system(ctx, cox.canonical_system(ctx))
    t_closed = eulermod.euler_form_closed(ctx)
    check("euler-from-system-vs-closed", t_pi.ref_matrix == t_closed.ref_matrix)
    periodic = {}
    try:
        periodic = eulermod.euler_form_periodic(pq)
        check("euler-periodic-pullback", periodic == t_pi.periodic)
    except eulermod.WraparoundError as exc:
        check("euler-periodic-recursion", False, str(exc))
    pairs = [(k1, k2) for k1 in range(len(rs.roots)) for k2 in range(len(rs.roots))]
    for k1, k2 in _sample(pairs, 8000, rng):
        x, y = rs.coords(k1), rs.coords(k2)
        ciy = rs.coords(ctx.coxeter_inv[k1])
        if t_pi.value_ref(x, y) != -t_pi.value_ref(y, ciy):
            check("euler-serre-duality", False, f"roots {k1}, {k2}")
            break
        if t_pi.value_ref(x, y) + t_pi.value_ref(y, x) != rs.inner(x, y):
            check("euler-symmetrization", False, f"roots {k1}, {k2}")
            break

    report = eulermod.symmetrized_form_check(pq)
    check("slice-form-positive-definite", report.positive_definite,
          f"minors {report.minors}")
    check("slice-form-cartan-congruent", report.congruent_to_cartan)
    check("slice-form-square-lengths", report.all_square_two)

    # --- lattice presentation ---------------------------------------------
    factors = smith_invariant_factors(arq.mesh_relation_matrix(pq))
    nonzero = [f for f in factors if f]
    check("mesh-lattice-rank",
          len(factors) - len(nonzero) == r and set(nonzero) <= {1},
          f"invariant factors {sorted(set(factors))}")
    href = pq.canonical_heights()
    pi_h = arq.system_from_height(ctx, href)
    reps = cox.orbit_representatives(ctx, pi_h)
    binv = invert([list(row) for row in zip(*[rs.coords(k) for k in reps])])
    phi_h = arq.root_bijection(ctx, pi_h)
    for k in _sample(range(len(rs.roots)), 100, rng):
        got = arq.reduce_to_slice(pq, href, {phi_h.image(k): 1})
        want = tuple(int(x) for x in mat_vec(binv, rs.coords(k)))
        if got != want:
            check("mesh-reduction-vs-roots", False, f"root {k}")
            break

    # --- representation correspondence --------------------------------------
    for omega in _sample(_all_orientations(dynkin), 64, rng):
        gamma = quiverrep.ar_quiver(omega)
        if len(gamma.vertices) != rs.npos:
            check("ar-vertex-count", False, str(omega.sorted_arrows()))
            break
        dims = sorted(gamma.dims.values())
        pos = sorted(rs.coords(k) for k in range(rs.npos))
        if dims != pos:
            check("ar-gabriel-multiset", False, str(omega.sorted_arrows()))
            break
    verdict = quiverrep.verify_commutative_diagram(ctx, ctx.seed)
    check("covering-diagram", verdict.ok, "; ".join(verdict.failures[:2]))
    verdict = quiverrep.verify_euler_identification(ctx, ctx.seed)
    check("euler-identification", verdict.ok, "; ".join(verdict.failures[:2]))

    # --- negative controls --------------------------------------------------
    if periodic:
        table = dict(periodic)
        key = rng.choice(sorted(table))
        table[key] += 1
        check("negative-corrupted-table-detected",
              bool(eulermod.validate_periodic_table(pq, table)),
              f"flipping {key} went unnoticed")
    if r >= 3:
        omega0 = cox.orientation_of(ctx, ctx.seed)
        interior = next((i for i in range(1, r + 1)
                         if not (omega0.is_sink(i) or omega0.is_source(i))), None)
        if interior is not None:
            try:
                cox.elementary_reflection(ctx, ctx.seed, interior)
                check("negative-interior-reflection", False,
                      f"vertex {interior} accepted")
            except ValueError:
                pass
    if dynkin.weyl_order <= 5000 and len(systems) < dynkin.weyl_order:
        group = rootsys.enumerate_weyl_group(rs)
        bad = next((w for w in group
                    if not cox.is_compatible(ctx, rootsys.simple_system(rs, w))[0]),
                   None)
        check("negative-incompatible-detected", bad is not None,
              "no incompatible simple system found")
    return failures, notes


# ---------------------------------------------------------------------------
# commands

def _cmd_quiver(args) -> int:
    rs = _root_system(args.type)
    payload = _quiver_payload(rs)
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "tsv":
        rows = [[v["i"], v["n"], v["parity"], v["tau_orbit"]]
                for v in payload["vertices"]]
        _emit(args, _tsv_text(["i", "n", "parity", "tau_orbit"], rows))
    else:
        nodes = [(_vertex_id((v["i"], v["n"])), _vertex_label((v["i"], v["n"])))
                 for v in payload["vertices"]]
        _emit(args, _dot_text(f"quiver_{rs.dynkin.name}", nodes,
                              [tuple(e) for e in payload["edges"]]))
    return 0


def _cmd_rootmap(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    systems = cox.enumerate_compatible(ctx)
    if args.pi is not None and not 0 <= args.pi < len(systems):
        _fail_usage(f"--pi must be in [0, {len(systems)})")
    pi = systems[args.pi] if args.pi is not None else cox.canonical_system(ctx)
    payload = _rootmap_payload(ctx, pi)
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "tsv":
        rows = [[row["n"], row["i"], ",".join(str(c) for c in row["root"]),
                 row["display"], int(row["positive"])] for row in payload["rows"]]
        _emit(args, _tsv_text(["n", "i", "root", "display", "positive"], rows))
    else:
        _fail_usage("rootmap supports json and tsv only")
    return 0


def _cmd_euler(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    payload = _euler_payload(ctx)
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "tsv":
        rows = [["lattice", i + 1, "", j + 1, "", val]
                for i, row in enumerate(payload["lattice"])
                for j, val in enumerate(row)]
        rows += [["periodic", *e["from"].split(":"), *e["to"].split(":"), e["value"]]
                 for e in payload["periodic"]]
        _emit(args, _tsv_text(["kind", "i", "n", "j", "m", "value"], rows))
    else:
        _fail_usage("euler supports json and tsv only")
    return 0


def _cmd_w0(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    systems = cox.enumerate_compatible(ctx)
    if args.pi is not None and not 0 <= args.pi < len(systems):
        _fail_usage(f"--pi must be in [0, {len(systems)})")
    pi = systems[args.pi] if args.pi is not None else ctx.seed
    payload = _w0_payload(ctx, pi)
    if args.format == "json":
        _emit(args, _json_text(payload))
    else:
        _emit(args, " ".join(str(i) for i in payload["word"]) + "\n")
    return 0


def _cmd_compatible(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    payload = _compatible_payload(ctx)
    if args.format == "json":
        _emit(args, _json_text(payload))
    else:
        rows = [[t, " ".join(c["orientation"]), c["size"]]
                for t, c in enumerate(payload["classes"])]
        text = _tsv_text(["class", "orientation", "size"], rows)
        _emit(args, text + f"count\t{payload['count']}\n")
    return 0


def _cmd_ar(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    omega = cox.orientation_of(ctx, ctx.seed)
    payload = _ar_payload(omega, args.window)
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "tsv":
        rows = [[v["i"], v["k"], ",".join(str(d) for d in v["dim"])]
                for v in payload["vertices"]]
        _emit(args, _tsv_text(["i", "k", "dim"], rows))
    else:
        nodes = [(_vertex_id((v["i"], v["k"])),
                  f"{v['i']}:{v['k']} [{','.join(str(d) for d in v['dim'])}]")
                 for v in payload["vertices"]]
        _emit(args, _dot_text(f"ar_{rs.dynkin.name}", nodes,
                              [tuple(e) for e in payload["arrows"]]))
    return 0


def _cmd_golden(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    _emit(args, _json_text(_golden_payload(ctx)))
    return 0


def _cmd_verify(args) -> int:
    rs = _root_system(args.type)
    ctx = _parse_coxeter(rs, args.coxeter)
    failures, notes = run_verify(rs, ctx, args.seed)
    if args.golden:
        with open(args.golden, encoding="utf-8") as fh:
            stored = fh.read()
        if stored != _json_text(_golden_payload(ctx)):
            failures.append("golden-tables: stored bundle differs from recomputation")
    for note in notes:
        print(note)
    if failures:
        for f in failures:
            print(f"FAIL {f}")
        return 1
    print(f"PASS all suites for {rs.dynkin.name} (seed {args.seed})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxar",
        description="Exact Coxeter-element computations on ADE root systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "tsv", "dot")):
        p.add_argument("--type", required=True, help="Dynkin type, e.g. A4, D5, E6")
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("quiver", help="the periodic quiver with parity and tau orbits")
    common(p)
    p.set_defaults(fn=_cmd_quiver)

    p = sub.add_parser("rootmap", help="the root/vertex bijection table")
    common(p, formats=("json", "tsv"))
    p.add_argument("--coxeter", help="word '1 2 3' or orientation '1>2 2>3'")
    p.add_argument("--pi", type=int, help="index of the compatible system to build from")
    p.set_defaults(fn=_cmd_rootmap)

    p = sub.add_parser("euler", help="Euler form matrices and the periodic table")
    common(p, formats=("json", "tsv"))
    p.add_argument("--coxeter")
    p.set_defaults(fn=_cmd_euler)

    p = sub.add_parser("w0", help="reduced word for the longest element")
    common(p, formats=("json", "tsv"))
    p.add_argument("--coxeter")
    p.add_argument("--pi", type=int)
    p.set_defaults(fn=_cmd_w0)

    p = sub.add_parser("compatible", help="count and classes of compatible systems")
    common(p, formats=("json", "tsv"))
    p.add_argument("--coxeter")
    p.set_defaults(fn=_cmd_compatible)

    p = sub.add_parser("ar", help="the AR quiver of the chosen orientation")
    common(p)
    p.add_argument("--coxeter")
    p.add_argument("--window", type=int, help="repetition-quiver radius")
    p.set_defaults(fn=_cmd_ar)

    p = sub.add_parser("golden", help="bundle of canonical tables for verify --golden")
    common(p, formats=("json",))
    p.add_argument("--coxeter")
    p.set_defaults(fn=_cmd_golden)

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--type", required=True)
    p.add_argument("--coxeter")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--golden", help="golden bundle to compare against")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
