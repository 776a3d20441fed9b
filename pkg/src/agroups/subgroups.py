"""Finite-level subgroup machinery.

Orbits of a generating set on tree levels, level/vertex stabilizers via
Schreier generators, projections, rigid-stabilizer witness search, orbit
chains, and the commutator construction that plants a chosen element as
an inner coordinate of a commutator.

Orbit computations walk the finite level action only; statements about
infinite index or full subgroup membership are out of reach from finite
data and are certified elsewhere through explicit witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import decide
from .core import (
    BoundExceeded,
    Element,
    EngineError,
    GroupDef,
    MixedGroups,
    Vertex,
    format_vertex,
    make_group,
)

__all__ = [
    "CommutatorWitness",
    "GenSet",
    "NotLevelFixing",
    "NotVertexFixing",
    "OrbitChainReport",
    "OrbitLevel",
    "OrbitTable",
    "PermFixesM",
    "StabilizerGens",
    "commutator_witness",
    "embedded_group",
    "embed_element",
    "fixes_level",
    "is_supported_only_at",
    "orbit_chain",
    "orbits",
    "projection_gens",
    "rist_elements",
    "stabilizer_gens",
    "vertex_stabilizer_gens",
]

ORBIT_DEPTH_CAP = 12  # 4096 vertices on a binary tree; desk scale


class PermFixesM(EngineError):
    """The inner section's root permutation fixes the requested slot."""


class NotLevelFixing(EngineError):
    """The element was required to fix its first level but does not."""


class NotVertexFixing(EngineError):
    """A generator was required to fix the base vertex but moves it."""


@dataclass(frozen=True)
class GenSet:
    """A nonempty list of named elements of one group."""

    group: GroupDef
    names: Tuple[str, ...]
    elements: Tuple[Element, ...]

    def __post_init__(self):
        if not self.elements:
            raise EngineError("generating set must be nonempty")
        if len(self.names) != len(self.elements):
            raise EngineError("names and elements differ in length")
        for e in self.elements:
            if e.group != self.group:
                raise MixedGroups("generating set mixes groups")

    @classmethod
    def from_group(cls, group: GroupDef) -> "GenSet":
        return cls(group, group.state_names, tuple(group.generators()))

    @classmethod
    def from_elements(
        cls, elements: Sequence[Element], names: Optional[Sequence[str]] = None
    ) -> "GenSet":
        elements = tuple(elements)
        if not elements:
            raise EngineError("generating set must be nonempty")
        if names is None:
            names = tuple(str(e) for e in elements)
        return cls(elements[0].group, tuple(names), elements)

    def items(self) -> Iterable[Tuple[str, Element]]:
        return zip(self.names, self.elements)

    def __len__(self) -> int:
        return len(self.elements)


# -- orbits -------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitLevel:
    """Orbit partition of one level; blocks sorted by their least vertex."""

    level: int
    blocks: Tuple[Tuple[Vertex, ...], ...]
    parent: Tuple[int, ...]  # block index at the previous level, per block

    @property
    def count(self) -> int:
        return len(self.blocks)

    def block_of(self, v: Vertex) -> int:
        for i, block in enumerate(self.blocks):
            if v in block:
                return i
        raise KeyError(v)


@dataclass(frozen=True)
class OrbitTable:
    """Per-level orbit partitions with the parent map between orbit sets."""

    gens: GenSet
    depth: int
    levels: Tuple[OrbitLevel, ...]  # index n = level n, starting at the root

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(lv.count for lv in self.levels)

    def level(self, n: int) -> OrbitLevel:
        return self.levels[n]


def orbits(gens: GenSet, depth: int, cap: int = ORBIT_DEPTH_CAP) -> OrbitTable:
    """Exact orbit partition of every level up to `depth` under the gens.

    Each generator permutes the finite level set, so forward closure under
    the generators alone already yields the full group orbits.
    """
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    if depth > cap:
        raise BoundExceeded(f"depth {depth} exceeds cap {cap}")
    group = gens.group
    levels = [OrbitLevel(0, (((),),), ())]
    prev_assigned: Dict[Vertex, int] = {(): 0}
    for n in range(1, depth + 1):
        verts = list(group.vertices(n))
        assigned: Dict[Vertex, int] = {}
        blocks: List[Tuple[Vertex, ...]] = []
        for seed in verts:
            if seed in assigned:
                continue
            idx = len(blocks)
            frontier = [seed]
            assigned[seed] = idx
            members = [seed]
            while frontier:
                v = frontier.pop()
                for s in gens.elements:
                    w = s.act(v)
                    if w not in assigned:
                        assigned[w] = idx
                        members.append(w)
                        frontier.append(w)
            blocks.append(tuple(sorted(members)))
        prev = levels[n - 1]
        parent = []
        for block in blocks:
            parents = {prev_assigned[v[:-1]] for v in block}
            if len(parents) != 1:
                raise EngineError(
                    f"orbit parent map ill-defined at level {n} (block {block[0]})"
                )
            parent.append(parents.pop())
        if set(parent) != set(range(prev.count)):
            raise EngineError(f"orbit parent map not surjective at level {n}")
        levels.append(OrbitLevel(n, tuple(blocks), tuple(parent)))
        prev_assigned = assigned
    return OrbitTable(gens, depth, tuple(levels))


# -- stabilizers ---------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerGens:
    """Schreier generators of a level or vertex stabilizer.

    `transversal` records, per reached point, a word moving the base point
    there; points are level-action configurations for level stabilizers
    and plain vertices otherwise.
    """

    gens: GenSet
    level: Optional[int]
    vertex: Optional[Vertex]
    generators: Tuple[Element, ...]
    transversal: Tuple[Tuple[object, Element], ...]


def _schreier(gens: GenSet, base: object, apply) -> Tuple[Tuple[object, Element], List[Element]]:
    """Breadth-first transversal (frontiers in sorted order) + Schreier gens."""
    group = gens.group
    transversal: Dict[object, Element] = {base: group.identity()}
    order = [base]
    frontier = [base]
    while frontier:
        discovered = []
        for x in sorted(frontier):
            for s in gens.elements:
                y = apply(s, x)
                if y not in transversal:
                    transversal[y] = s * transversal[x]
                    discovered.append(y)
        order.extend(sorted(discovered))
        frontier = discovered
    raw = []
    for x in order:
        t_x = transversal[x]
        for s in gens.elements:
            y = apply(s, x)
            raw.append(transversal[y].inverse() * s * t_x)
    return tuple((x, transversal[x]) for x in order), raw


def _dedupe_gens(group: GroupDef, raw: List[Element]) -> Tuple[Element, ...]:
    out: List[Element] = []
    keys = set()
    for g in raw:
        if decide.is_trivial(g):
            continue
        k = decide.canonical_key(g)
        if k in keys:
            continue
        keys.add(k)
        out.append(g)
    if not out:
        out = [group.identity()]
    return tuple(out)


def stabilizer_gens(gens: GenSet, level: int) -> StabilizerGens:
    """Generators of the subgroup fixing every vertex of the given level.

    The kernel of the level action is the stabilizer of the identity
    configuration under left composition, so Schreier's lemma applies to
    the finite orbit of configurations.
    """
    if level < 0:
        raise ValueError(f"level must be nonnegative, got {level}")
    group = gens.group
    verts = tuple(group.vertices(level))
    base = verts  # identity configuration

    def apply(s: Element, config):
        return tuple(s.act(v) for v in config)

    transversal, raw = _schreier(gens, base, apply)
    return StabilizerGens(
        gens, level, None, _dedupe_gens(group, raw), transversal
    )


def vertex_stabilizer_gens(gens: GenSet, vertex: Union[str, Vertex]) -> StabilizerGens:
    """Generators of the subgroup fixing one vertex, via Schreier's lemma."""
    group = gens.group
    vertex = group.vertex(vertex)

    def apply(s: Element, v):
        return s.act(v)

    transversal, raw = _schreier(gens, vertex, apply)
    return StabilizerGens(
        gens, None, vertex, _dedupe_gens(group, raw), transversal
    )


def projection_gens(gens: GenSet, vertex: Union[str, Vertex]) -> GenSet:
    """Sections at `vertex` of the vertex stabilizer's Schreier generators.

    These generate the projection of the stabilizer of `vertex` to the
    subtree below it.  Trivial sections are kept (deduplicated), so the
    result is never empty.
    """
    group = gens.group
    vertex = group.vertex(vertex)
    stab = vertex_stabilizer_gens(gens, vertex)
    out: List[Element] = []
    keys = set()
    for g in stab.generators:
        s = g.section(vertex)
        k = decide.canonical_key(s)
        if k not in keys:
            keys.add(k)
            out.append(s)
    return GenSet.from_elements(out)


# -- rigid stabilizer witnesses --------------------------------------------------


def fixes_level(g: Element, level: int) -> bool:
    return all(g.act(v) == v for v in g.group.vertices(level))


def is_supported_only_at(g: Element, vertex: Union[str, Vertex]) -> bool:
    """True iff `g` fixes level |v| pointwise and every section away from
    `vertex` on that level is trivial."""
    group = g.group
    vertex = group.vertex(vertex)
    n = len(vertex)
    if not fixes_level(g, n):
        return False
    for w in group.vertices(n):
        if w != vertex and not decide.is_trivial(g.section(w)):
            return False
    return True


def rist_elements(
    gens: GenSet, vertex: Union[str, Vertex], maxlen: int
) -> List[Element]:
    """Witness search: nontrivial words of length <= maxlen supported only
    at `vertex`.

    Enumerates freely reduced words over the generators and their inverses
    in length-then-generator order; results are deduplicated semantically.
    This is a bounded search, not a membership decision.
    """
    if maxlen < 1:
        raise ValueError(f"maxlen must be at least 1, got {maxlen}")
    group = gens.group
    vertex = group.vertex(vertex)
    letters = []
    for e in gens.elements:
        letters.append(e)
        letters.append(e.inverse())
    # letter 2j is gens[j], letter 2j+1 its inverse: index i inverts to i ^ 1

    found: List[Element] = []
    keys = set()
    frontier: List[Tuple[int, Element]] = [(-2, group.identity())]
    for _ in range(maxlen):
        nxt = []
        for last, w in frontier:
            for i, s in enumerate(letters):
                if i == last ^ 1:
                    continue  # immediate cancellation: word already enumerated
                u = w * s
                nxt.append((i, u))
                if is_supported_only_at(u, vertex) and not decide.is_trivial(u):
                    k = decide.canonical_key(u)
                    if k not in keys:
                        keys.add(k)
                        found.append(u)
        frontier = nxt
    return found


# -- orbit chains ----------------------------------------------------------------


@dataclass(frozen=True)
class OrbitChainReport:
    """Orbit counts below a vertex and the stabilized chain, if any.

    `stable_level` is the least level from which the counts stay constant
    through the computed depth; `chain` then follows the unique child
    orbit of the lexicographically least orbit at that level.
    """

    vertex: Vertex
    table: OrbitTable
    counts: Tuple[int, ...]
    stabilized: bool
    stable_level: Optional[int]
    chain: Optional[Tuple[Tuple[Vertex, ...], ...]]


def orbit_chain(
    gens: GenSet, vertex: Union[str, Vertex], depth: int
) -> OrbitChainReport:
    """Orbit structure of the generators' action on the subtree at `vertex`.

    Every generator must fix `vertex`; the action below it is the action
    of the sections there.
    """
    group = gens.group
    vertex = group.vertex(vertex)
    sections = []
    for name, e in gens.items():
        if e.act(vertex) != vertex:
            raise NotVertexFixing(
                f"generator {name!r} moves vertex {format_vertex(vertex)}"
            )
        sections.append(e.section(vertex))
    below = GenSet(group, gens.names, tuple(sections))
    table = orbits(below, depth)
    counts = table.counts
    stable_level: Optional[int] = None
    for n0 in range(depth):
        if all(counts[k] == counts[n0] for k in range(n0, depth + 1)):
            stable_level = n0
            break
    if stable_level is None:
        return OrbitChainReport(vertex, table, counts, False, None, None)
    chain = [table.level(stable_level).blocks[0]]
    idx = 0
    for n in range(stable_level + 1, depth + 1):
        lv = table.level(n)
        children = [i for i, p in enumerate(lv.parent) if p == idx]
        if len(children) != 1:
            raise EngineError(f"expected a single child orbit at level {n}")
        idx = children[0]
        chain.append(lv.blocks[idx])
    return OrbitChainReport(vertex, table, counts, True, stable_level, tuple(chain))


# -- the commutator construction ---------------------------------------------------


def embedded_group(group: GroupDef, vertex: Union[str, Vertex]) -> GroupDef:
    """Extend `group` with states that replay each original state inside
    the subtree at `vertex` and do nothing elsewhere.

    The added state ``s@v`` has the identity root permutation and carries
    ``s@v'`` (one letter shorter) in the slot picked out by the first
    letter of v.
    """
    vertex = group.vertex(vertex)
    if not vertex:
        return group
    d = group.degree
    rows = [(n, group.state(n).slots, group.state(n).perm) for n in group.state_names]
    for k in range(len(vertex) - 1, -1, -1):
        suffix = vertex[k:]
        tag = ".".join(map(str, suffix))
        inner_tag = ".".join(map(str, suffix[1:]))
        for name in group.state_names:
            inner = name if not inner_tag else f"{name}@{inner_tag}"
            slots = tuple(inner if i == suffix[0] else None for i in range(1, d + 1))
            rows.append((f"{name}@{tag}", slots, None))
    return make_group(d, rows, name=f"{group.name}@{format_vertex(vertex)}")


def embed_element(
    g: Element, vertex: Union[str, Vertex], egroup: Optional[GroupDef] = None
) -> Element:
    """The element acting as `g` on the subtree at `vertex`, trivially
    elsewhere, expressed in the extended group."""
    group = g.group
    vertex = group.vertex(vertex)
    if egroup is None:
        egroup = embedded_group(group, vertex)
    if not vertex:
        return egroup.element(g.letters)
    tag = ".".join(map(str, vertex))
    return egroup.element(tuple((f"{n}@{tag}", e) for n, e in g.letters))


@dataclass(frozen=True)
class CommutatorWitness:
    """Result of the commutator construction, with its verification."""

    egroup: GroupDef  # original group extended by the embedded states
    g: Element  # the level-fixing element, lifted
    h: Element  # the embedded companion
    commutator: Element  # [g, h] = g^-1 h^-1 g h
    vertex: Vertex  # where the witness surfaces: (k, m)
    target: Element  # w, lifted
    verified: bool


def commutator_witness(g: Element, k: int, m: int, w: Element) -> CommutatorWitness:
    """Plant `w` as the section of a commutator at the vertex k.m.

    Requires `g` to fix its first level and the section of `g` at letter k
    to carry a root permutation moving m.  With h acting as `w` on the
    subtree at k.m and trivially elsewhere, the section of [g, h] at k.m
    is exactly `w`; the returned record carries the checked result.
    """
    group = g.group
    d = group.degree
    if w.group != group:
        raise MixedGroups("witness element must live in the same group as g")
    if not (1 <= k <= d and 1 <= m <= d):
        raise ValueError(f"slot indices must lie in 1..{d}, got k={k}, m={m}")
    cs = g.coords()
    if not cs.perm.is_identity():
        raise NotLevelFixing(f"element {g} does not fix level 1")
    inner = g.section((k,))
    s = inner.coords().perm
    if s(m) == m:
        raise PermFixesM(
            f"section at letter {k} has root permutation {s}, which fixes {m}"
        )
    egroup = embedded_group(group, (k, m))
    g_lift = egroup.element(g.letters)
    w_lift = egroup.element(w.letters)
    h = embed_element(w, (k, m), egroup)
    comm = g_lift.inverse() * h.inverse() * g_lift * h
    got = comm.section((k, m))
    verified = decide.equals(got, w_lift)
    return CommutatorWitness(egroup, g_lift, h, comm, (k, m), w_lift, verified)
