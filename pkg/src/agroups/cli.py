"""The ``agt`` command: every engine operation behind one argparse surface.

Groups are loaded from ``.agt`` files (or by bundled corpus name),
certificates from ``.cert`` files.  Text output by default, ``--json``
for structured output, ``--dot`` where a graph makes sense.  Exit codes:
0 on success / all assertions passing, 1 when a certificate suite fails,
2 for usage, parse and engine errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import certify, corpus, decide, formats, subgroups
from .core import Element, EngineError, GroupDef, format_vertex
from .decide import Portrait
from .subgroups import GenSet, OrbitTable
from .words import parse_word


def _load_group(source: str) -> GroupDef:
    path = Path(source)
    if path.exists():
        return formats.load_group_file(path)
    stem = path.stem
    if stem in corpus.GROUPS:
        return corpus.load_group(stem)
    raise EngineError(f"group file {source!r} not found (and not a bundled group)")


def _load_certificate(source: str):
    path = Path(source)
    if path.exists():
        return formats.load_certificate_file(path)
    stem = path.stem
    if stem in corpus.CERTIFICATES:
        return corpus.load_certificate(stem)
    raise EngineError(f"certificate {source!r} not found (and not bundled)")


def _gens(args, group: GroupDef) -> GenSet:
    if getattr(args, "gens", None):
        words = [w.strip() for w in args.gens.split(";") if w.strip()]
        return GenSet.from_elements([parse_word(w, group) for w in words], words)
    return GenSet.from_group(group)


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- dot emitters ------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def portrait_dot(p: Portrait) -> str:
    lines = ["digraph portrait {", "  node [shape=circle];"]

    def walk(node: Portrait, path: tuple) -> str:
        nid = "n" + ("_".join(map(str, path)) if path else "root")
        if node.residual is not None:
            label = str(node.residual)
            lines.append(f"  {nid} [shape=box, label={_quote(label)}];")
        else:
            lines.append(f"  {nid} [label={_quote(str(node.perm))}];")
            for i, child in enumerate(node.children, start=1):
                cid = walk(child, path + (i,))
                lines.append(f"  {nid} -> {cid} [label={_quote(str(i))}];")
        return nid

    walk(p, ())
    lines.append("}")
    return "\n".join(lines)


def closure_dot(sc: decide.SectionClosure) -> str:
    lines = ["digraph sections {", "  node [shape=box];"]
    for i, elem in enumerate(sc.elements):
        lines.append(f"  n{i} [label={_quote(str(elem))}];")
    for i, row in enumerate(sc.edges):
        for letter, j in enumerate(row, start=1):
            lines.append(f"  n{i} -> n{j} [label={_quote(str(letter))}];")
    lines.append("}")
    return "\n".join(lines)


def schreier_dot(table: OrbitTable, level: int) -> str:
    lines = [f"digraph schreier_level_{level} {{", "  node [shape=circle];"]
    verts = [v for block in table.level(level).blocks for v in block]
    for v in sorted(verts):
        lines.append(f"  {_quote(format_vertex(v))};")
    for name, elem in table.gens.items():
        for v in sorted(verts):
            w = elem.act(v)
            lines.append(
                f"  {_quote(format_vertex(v))} -> {_quote(format_vertex(w))}"
                f" [label={_quote(name)}];"
            )
    lines.append("}")
    return "\n".join(lines)


def chain_dot(report: subgroups.OrbitChainReport) -> str:
    lines = ["digraph orbit_chain {", "  rankdir=TB;", "  node [shape=box];"]
    chain_blocks = set()
    if report.chain is not None:
        for n, block in enumerate(report.chain, start=report.stable_level):
            chain_blocks.add((n, block))
    for n in range(len(report.table.levels)):
        lv = report.table.level(n)
        for i, block in enumerate(lv.blocks):
            nid = f"L{n}O{i}"
            label = f"level {n} orbit {i} (size {len(block)})"
            style = ", penwidth=3" if (n, block) in chain_blocks else ""
            lines.append(f"  {nid} [label={_quote(label)}{style}];")
            if n > 0:
                lines.append(f"  L{n - 1}O{lv.parent[i]} -> {nid};")
    lines.append("}")
    return "\n".join(lines)


# -- payload helpers -----------------------------------------------------------


def _coords_payload(g: Element) -> dict:
    cs = g.coords()
    return {
        "perm": str(cs.perm),
        "perm_images": list(cs.perm.image),
        "slots": [str(s) for s in cs.slots],
    }


def _orbit_payload(table: OrbitTable) -> dict:
    return {
        "depth": table.depth,
        "counts": list(table.counts),
        "levels": [
            {
                "level": lv.level,
                "count": lv.count,
                "orbits": [[format_vertex(v) for v in block] for block in lv.blocks],
                "parent": list(lv.parent),
            }
            for lv in table.levels
        ],
    }


# -- subcommands ----------------------------------------------------------------


def cmd_eval(args) -> int:
    group = _load_group(args.group)
    g = parse_word(args.word, group)
    payload = {"group": group.name, "word": str(g), **_coords_payload(g)}
    _emit(
        args,
        payload,
        [f"word: {g}", f"perm: {payload['perm']}", f"slots: ({', '.join(payload['slots'])})"],
    )
    return 0


def cmd_trivial(args) -> int:
    group = _load_group(args.group)
    value = decide.is_trivial(parse_word(args.word, group))
    _emit(args, {"group": group.name, "word": args.word, "trivial": value}, [str(value).lower()])
    return 0


def cmd_equal(args) -> int:
    group = _load_group(args.group)
    value = decide.equals(parse_word(args.word, group), parse_word(args.other, group))
    _emit(
        args,
        {"group": group.name, "left": args.word, "right": args.other, "equal": value},
        [str(value).lower()],
    )
    return 0


def cmd_order(args) -> int:
    group = _load_group(args.group)
    res = decide.order(parse_word(args.word, group), args.bound)
    payload = {
        "group": group.name,
        "word": args.word,
        "bound": res.bound,
        "order": res.value,
        "exact": res.exact,
    }
    _emit(args, payload, [str(res)])
    return 0


def cmd_section(args) -> int:
    group = _load_group(args.group)
    s = parse_word(args.word, group).section(args.vertex)
    _emit(
        args,
        {"group": group.name, "word": args.word, "vertex": args.vertex, "section": str(s)},
        [str(s)],
    )
    return 0


def cmd_act(args) -> int:
    group = _load_group(args.group)
    image = parse_word(args.word, group).act(args.vertex)
    _emit(
        args,
        {
            "group": group.name,
            "word": args.word,
            "vertex": args.vertex,
            "image": format_vertex(image),
        },
        [format_vertex(image)],
    )
    return 0


def cmd_portrait(args) -> int:
    group = _load_group(args.group)
    p = decide.portrait(parse_word(args.word, group), args.depth)
    if args.dot:
        print(portrait_dot(p))
        return 0

    def node_payload(node: Portrait) -> dict:
        if node.residual is not None:
            return {"residual": str(node.residual)}
        return {
            "perm": str(node.perm),
            "children": [node_payload(c) for c in node.children],
        }

    payload = {
        "group": group.name,
        "word": args.word,
        "depth": args.depth,
        "portrait": node_payload(p),
    }
    lines = []

    def render(node: Portrait, path: tuple) -> None:
        indent = "  " * len(path)
        at = format_vertex(path)
        if node.residual is not None:
            lines.append(f"{indent}{at}: residual {node.residual}")
        else:
            lines.append(f"{indent}{at}: {node.perm}")
            for i, child in enumerate(node.children, start=1):
                render(child, path + (i,))

    render(p, ())
    _emit(args, payload, lines)
    return 0


def cmd_activity(args) -> int:
    group = _load_group(args.group)
    seq = decide.activity_sequence(parse_word(args.word, group), args.levels)
    _emit(
        args,
        {"group": group.name, "word": args.word, "activity": list(seq)},
        [" ".join(map(str, seq))],
    )
    return 0


def cmd_closure(args) -> int:
    group = _load_group(args.group)
    sc = decide.section_closure(parse_word(args.word, group))
    if args.dot:
        print(closure_dot(sc))
        return 0
    payload = {
        "group": group.name,
        "word": args.word,
        "size": sc.size,
        "elements": [str(e) for e in sc.elements],
        "edges": [list(row) for row in sc.edges],
    }
    lines = [f"{sc.size} distinct sections"]
    for i, elem in enumerate(sc.elements):
        targets = ", ".join(f"{letter}->{j}" for letter, j in enumerate(sc.edges[i], 1))
        lines.append(f"  [{i}] {elem}  ({targets})")
    _emit(args, payload, lines)
    return 0


def cmd_orbits(args) -> int:
    group = _load_group(args.group)
    table = subgroups.orbits(_gens(args, group), args.depth)
    if args.dot:
        print(schreier_dot(table, args.level if args.level is not None else args.depth))
        return 0
    payload = {"group": group.name, **_orbit_payload(table)}
    lines = [
        f"level {lv.level}: {lv.count} orbit(s), sizes "
        + ", ".join(str(len(b)) for b in lv.blocks)
        for lv in table.levels
    ]
    _emit(args, payload, lines)
    return 0


def cmd_stab(args) -> int:
    group = _load_group(args.group)
    gens = _gens(args, group)
    if (args.level is None) == (args.vertex is None):
        raise EngineError("give exactly one of --level or --vertex")
    if args.level is not None:
        st = subgroups.stabilizer_gens(gens, args.level)
        target = f"level {args.level}"
    else:
        st = subgroups.vertex_stabilizer_gens(gens, args.vertex)
        target = f"vertex {args.vertex}"
    payload = {
        "group": group.name,
        "target": target,
        "generators": [str(g) for g in st.generators],
        "transversal_size": len(st.transversal),
    }
    _emit(
        args,
        payload,
        [f"stabilizer of {target}: {len(st.generators)} generator(s)"]
        + [f"  {g}" for g in st.generators],
    )
    return 0


def cmd_project(args) -> int:
    group = _load_group(args.group)
    proj = subgroups.projection_gens(_gens(args, group), args.vertex)
    payload = {
        "group": group.name,
        "vertex": args.vertex,
        "generators": [str(g) for g in proj.elements],
    }
    _emit(args, payload, [str(g) for g in proj.elements])
    return 0


def cmd_rist(args) -> int:
    group = _load_group(args.group)
    found = subgroups.rist_elements(_gens(args, group), args.vertex, args.maxlen)
    payload = {
        "group": group.name,
        "vertex": args.vertex,
        "maxlen": args.maxlen,
        "witnesses": [str(g) for g in found],
    }
    _emit(
        args,
        payload,
        [f"{len(found)} witness(es)"] + [f"  {g}" for g in found],
    )
    return 0


def cmd_chain(args) -> int:
    group = _load_group(args.group)
    report = subgroups.orbit_chain(_gens(args, group), args.vertex, args.depth)
    if args.dot:
        print(chain_dot(report))
        return 0
    payload = {
        "group": group.name,
        "vertex": args.vertex,
        "depth": args.depth,
        "counts": list(report.counts),
        "stabilized": report.stabilized,
        "stable_level": report.stable_level,
        "chain": None
        if report.chain is None
        else [[format_vertex(v) for v in block] for block in report.chain],
    }
    lines = [f"orbit counts: {' '.join(map(str, report.counts))}"]
    if report.stabilized:
        lines.append(f"stabilized at level {report.stable_level}")
        for n, block in enumerate(report.chain, start=report.stable_level):
            lines.append(
                f"  level {n}: {{{', '.join(format_vertex(v) for v in block)}}}"
            )
    else:
        lines.append(f"not stabilized within depth {args.depth}")
    _emit(args, payload, lines)
    return 0


def cmd_commutator_witness(args) -> int:
    group = _load_group(args.group)
    g = parse_word(args.word, group)
    w = parse_word(args.witness, group)
    cw = subgroups.commutator_witness(g, args.slot, args.inner, w)
    payload = {
        "group": group.name,
        "word": args.word,
        "slot": args.slot,
        "inner": args.inner,
        "witness": args.witness,
        "companion": str(cw.h),
        "commutator": str(cw.commutator),
        "section_at": format_vertex(cw.vertex),
        "verified": cw.verified,
    }
    _emit(
        args,
        payload,
        [
            f"companion h = {cw.h}",
            f"[g, h] = {cw.commutator}",
            f"section at {format_vertex(cw.vertex)} equals witness: {cw.verified}",
        ],
    )
    return 0 if cw.verified else 1


def cmd_ball(args) -> int:
    group = _load_group(args.group)
    sizes = certify.ball_sizes(_gens(args, group), args.radius, args.cap)
    _emit(
        args,
        {"group": group.name, "radius": args.radius, "sizes": list(sizes)},
        [" ".join(map(str, sizes))],
    )
    return 0


def cmd_freesemigroup(args) -> int:
    group = _load_group(args.group)
    res = certify.free_semigroup_check(_gens(args, group), args.maxlen)
    payload = {
        "group": group.name,
        "maxlen": res.maxlen,
        "total_words": res.total_words,
        "distinct": res.distinct,
        "collision": None if res.collision is None else [str(w) for w in res.collision],
    }
    lines = [f"{res.distinct} distinct of {res.total_words} positive words"]
    if res.collision is not None:
        lines.append(f"first collision: {res.collision[0]} = {res.collision[1]}")
    _emit(args, payload, lines)
    return 0


def cmd_certify(args) -> int:
    group = _load_group(args.group)
    cert = _load_certificate(args.suite)
    report = certify.run_suite(cert, group)
    _emit(args, report.to_payload(), report.lines())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agt",
        description="compute with groups of rooted-tree automorphisms "
        "defined by wreath recursion",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--group", required=True, help=".agt file or bundled group name")
        p.add_argument("--json", action="store_true", help="structured output")
        return p

    p = add("eval", cmd_eval, help="word -> wreath coordinates")
    p.add_argument("--word", required=True)

    p = add("trivial", cmd_trivial, help="does the word denote the identity?")
    p.add_argument("--word", required=True)

    p = add("equal", cmd_equal, help="do two words denote the same automorphism?")
    p.add_argument("--word", required=True)
    p.add_argument("--other", required=True)

    p = add("order", cmd_order, help="order of the element, up to a bound")
    p.add_argument("--word", required=True)
    p.add_argument("--bound", type=int, default=64)

    p = add("section", cmd_section, help="section of the word at a vertex")
    p.add_argument("--word", required=True)
    p.add_argument("--vertex", required=True)

    p = add("act", cmd_act, help="image of a vertex under the word")
    p.add_argument("--word", required=True)
    p.add_argument("--vertex", required=True)

    p = add("portrait", cmd_portrait, help="tree of root permutations")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--dot", action="store_true", help="emit graphviz")

    p = add("activity", cmd_activity, help="counts of active vertices per level")
    p.add_argument("--word", required=True)
    p.add_argument("--levels", type=int, required=True)

    p = add("closure", cmd_closure, help="all distinct sections of the word")
    p.add_argument("--word", required=True)
    p.add_argument("--dot", action="store_true", help="emit graphviz")

    p = add("orbits", cmd_orbits, help="orbit partition of each level")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")
    p.add_argument("--dot", action="store_true", help="emit one level's action graph")
    p.add_argument("--level", type=int, help="level for --dot (default: --depth)")

    p = add("stab", cmd_stab, help="Schreier generators of a stabilizer")
    p.add_argument("--level", type=int)
    p.add_argument("--vertex")
    p.add_argument("--gens", help="semicolon-separated generator words")

    p = add("project", cmd_project, help="sections of the vertex stabilizer")
    p.add_argument("--vertex", required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")

    p = add("rist", cmd_rist, help="witnesses supported in a single subtree")
    p.add_argument("--vertex", required=True)
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")

    p = add("chain", cmd_chain, help="orbit counts and chains below a vertex")
    p.add_argument("--vertex", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")
    p.add_argument("--dot", action="store_true", help="emit graphviz")

    p = add(
        "commutator-witness",
        cmd_commutator_witness,
        help="plant a witness as an inner commutator coordinate",
    )
    p.add_argument("--word", required=True, help="level-fixing element g")
    p.add_argument("--slot", type=int, required=True, help="outer slot k")
    p.add_argument("--inner", type=int, required=True, help="inner slot m")
    p.add_argument("--witness", required=True, help="element to plant")

    p = add("ball", cmd_ball, help="sizes of word-metric balls")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")
    p.add_argument("--cap", type=int, default=500_000)

    p = add("freesemigroup", cmd_freesemigroup, help="distinct positive words")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--gens", help="semicolon-separated generator words")

    p = add("certify", cmd_certify, help="run a certificate suite")
    p.add_argument("--suite", required=True, help=".cert file or bundled suite name")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as exc:
        print(f"agt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
