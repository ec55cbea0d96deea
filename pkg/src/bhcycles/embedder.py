"""Cycle construction engine for balanced hypercubes.

Builds an even-length cycle through a required edge while avoiding a set of
faulty edges.  The strategy follows the recursive structure of the graph:
split the vertex set four ways along the dimension that carries the most
faults, solve a path problem inside each part, and stitch the parts together
through fault-free crossing edges.  Closed-form constructions are used where
they exist; small deterministic backtracking searches cover the subcube-level
path problems whose existence is guaranteed but not given in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .topology import (
    WHITE,
    BalancedHypercube,
    Edge,
    FourWaySplit,
    InternalGuaranteeError,
    InvalidInputError,
    SubcubeView,
    Vertex,
    build_hypercube,
    canonical_edge,
    four_way_split,
    format_edge,
    format_vertex,
    mod4,
    pack,
    unpack,
)

# ===== errors =====


class UnsupportedLengthError(InvalidInputError):
    """Requested cycle length lies outside the guaranteed surface."""


class CycleNotFoundError(RuntimeError):
    """A best-effort search ended without a cycle; no guarantee was in force."""


# ===== result and bookkeeping types =====


@dataclass(frozen=True)
class CyclePath:
    """A simple path (open) or cycle (closed) as an ordered vertex tuple."""

    vertices: tuple[Vertex, ...]
    closed: bool

    @property
    def length(self) -> int:
        """Number of edges: equals the vertex count only when closed."""
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def edge_sequence(self) -> list[Edge]:
        pairs = list(zip(self.vertices, self.vertices[1:]))
        if self.closed and len(self.vertices) > 1:
            pairs.append((self.vertices[-1], self.vertices[0]))
        return [canonical_edge(u, v) for u, v in pairs]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edge_sequence())


@dataclass
class EmbedTrace:
    """Ordered record of the construction route taken, across recursion."""

    labels: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def enter(self, label: str) -> None:
        self.labels.append(label)

    def note(self, step: str) -> None:
        self.notes.append(step)


@dataclass(frozen=True)
class FaultSet:
    """Canonicalized faulty-edge set with per-dimension tallies."""

    n: int
    edges: frozenset[Edge]
    tallies: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def guarantee_bound(self) -> int:
        return 2 * self.n - 2

    @property
    def within_guarantee(self) -> bool:
        return len(self.edges) <= self.guarantee_bound

    def __contains__(self, e: Edge) -> bool:
        return canonical_edge(*e) in self.edges


def make_fault_set(g: BalancedHypercube, edges: Iterable[Edge]) -> FaultSet:
    """Canonicalize a fault collection and tally it per edge dimension."""
    canon = frozenset(canonical_edge(*e) for e in edges)
    tallies = [0] * g.n
    for e in canon:
        tallies[g.edge_dimension(e)] += 1
    if sum(tallies) != len(canon):
        raise InternalGuaranteeError("per-dimension tallies do not add up")
    return FaultSet(n=g.n, edges=canon, tallies=tuple(tallies))


@dataclass(frozen=True)
class LengthSplit:
    """Odd path lengths assigned to the four parts of a split."""

    path_lengths: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        for value in self.path_lengths:
            if value < 1 or value % 2 == 0:
                raise InternalGuaranteeError(
                    f"per-part path length {value} is not an odd positive number"
                )

    @property
    def total_cycle_length(self) -> int:
        return sum(self.path_lengths) + 4


# ===== fault partitioning helpers =====


def canonical_faults(edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(canonical_edge(*e) for e in edges)


def crossing_faults(sp: FourWaySplit, faults: frozenset[Edge]) -> frozenset[Edge]:
    return frozenset(e for e in faults if sp.is_crossing(e))


def faults_by_part(
    sp: FourWaySplit, faults: frozenset[Edge]
) -> tuple[frozenset[Edge], ...]:
    buckets: tuple[set[Edge], ...] = (set(), set(), set(), set())
    for e in faults:
        if not sp.is_crossing(e):
            buckets[sp.part_index(e[0])].add(e)
    return tuple(frozenset(b) for b in buckets)


def _view_order(view: SubcubeView) -> int:
    return (len(view.vertices).bit_length() - 1) // 2


def _sub_graph(view: SubcubeView) -> BalancedHypercube:
    return build_hypercube(_view_order(view))


def _sub_faults(view: SubcubeView, faults: Iterable[Edge]) -> frozenset[Edge]:
    out: set[Edge] = set()
    for u, v in faults:
        if u in view.vertices and v in view.vertices:
            out.add(canonical_edge(view.to_sub[u], view.to_sub[v]))
    return frozenset(out)


def _resolve_target(
    target: BalancedHypercube | SubcubeView, faults: Iterable[Edge]
) -> tuple[
    BalancedHypercube,
    dict[Vertex, Vertex] | None,
    dict[Vertex, Vertex] | None,
    frozenset[Edge],
]:
    """Map a graph-or-view target to its concrete search graph and fault set."""
    if isinstance(target, BalancedHypercube):
        return target, None, None, canonical_faults(faults)
    return _sub_graph(target), target.to_sub, target.from_sub, _sub_faults(target, faults)


def _to_local(to_sub: dict[Vertex, Vertex] | None, v: Vertex) -> Vertex:
    if to_sub is None:
        return v
    try:
        return to_sub[v]
    except KeyError:
        raise InvalidInputError(f"vertex {v} does not lie in the target part") from None


# ===== backtracking path searches =====


def _filtered_adjacency(
    g: BalancedHypercube, blocked: frozenset[Edge], skip: frozenset[Vertex]
) -> tuple[list[tuple[Vertex, ...]], list[int]]:
    """Sorted neighbor lists and bitmasks minus blocked edges and skipped vertices."""
    lists: list[tuple[Vertex, ...]] = []
    masks: list[int] = []
    for v in g.vertices():
        if v in skip:
            lists.append(())
            masks.append(0)
            continue
        nbrs = tuple(
            w
            for w in g.neighbors(v)
            if w not in skip and canonical_edge(v, w) not in blocked
        )
        lists.append(nbrs)
        m = 0
        for w in nbrs:
            m |= 1 << w
        masks.append(m)
    return lists, masks


def _search_ham_path(
    g: BalancedHypercube,
    src: Vertex,
    dst: Vertex,
    blocked: frozenset[Edge],
    skip: frozenset[Vertex] = frozenset(),
) -> list[Vertex] | None:
    """Depth-first Hamiltonian path search with reachability pruning.

    Branches in ascending vertex order, never enters the destination early,
    and abandons any prefix from which some unvisited vertex is unreachable.
    """
    lists, masks = _filtered_adjacency(g, blocked, skip)
    full_mask = 0
    for v in g.vertices():
        if v not in skip:
            full_mask |= 1 << v
    target_count = g.num_vertices - len(skip)

    def reach_ok(v: Vertex, visited: int) -> bool:
        remaining = full_mask & ~visited
        if remaining == 0:
            return True
        reach = masks[v] & remaining
        frontier = reach
        while frontier:
            grown = 0
            m = frontier
            while m:
                bit = m & -m
                m ^= bit
                grown |= masks[bit.bit_length() - 1]
            frontier = grown & remaining & ~reach
            reach |= frontier
        return reach == remaining

    path: list[Vertex] = [src]

    def walk(v: Vertex, visited: int) -> bool:
        if len(path) == target_count:
            return v == dst
        if not reach_ok(v, visited):
            return False
        for w in lists[v]:
            if visited >> w & 1:
                continue
            if w == dst and len(path) + 1 != target_count:
                continue
            path.append(w)
            if walk(w, visited | 1 << w):
                return True
            path.pop()
        return False

    if walk(src, 1 << src):
        return path
    return None


def ham_path_faulty(
    target: BalancedHypercube | SubcubeView,
    u: Vertex,
    v: Vertex,
    faults: Iterable[Edge] = (),
) -> CyclePath:
    """Fault-avoiding Hamiltonian path between opposite-color vertices."""
    g, to_sub, from_sub, local_faults = _resolve_target(target, faults)
    su, sv = _to_local(to_sub, u), _to_local(to_sub, v)
    if su == sv:
        raise InvalidInputError("path endpoints must differ")
    if g.color(su) == g.color(sv):
        raise InvalidInputError("path endpoints must have opposite colors")
    if len(local_faults) > 2 * g.n - 2:
        raise InvalidInputError(
            f"{len(local_faults)} faulty edges exceed the guarantee "
            f"bound {2 * g.n - 2} of the target graph"
        )
    found = _search_ham_path(g, su, sv, local_faults)
    if found is None:
        raise InternalGuaranteeError(
            "Hamiltonian path search exhausted inside the guaranteed fault budget"
        )
    if from_sub is not None:
        return CyclePath(tuple(from_sub[x] for x in found), closed=False)
    return CyclePath(tuple(found), closed=False)


def hyper_ham_path(
    target: BalancedHypercube | SubcubeView,
    removed: Vertex,
    u: Vertex,
    v: Vertex,
    faults: Iterable[Edge] = (),
) -> CyclePath:
    """Hamiltonian path of the graph minus one vertex of the opposite color."""
    g, to_sub, from_sub, local_faults = _resolve_target(target, faults)
    sw, su, sv = (_to_local(to_sub, x) for x in (removed, u, v))
    if su == sv:
        raise InvalidInputError("path endpoints must differ")
    if g.color(su) != g.color(sv) or g.color(su) == g.color(sw):
        raise InvalidInputError(
            "endpoints must share the color class opposite the removed vertex"
        )
    found = _search_ham_path(g, su, sv, local_faults, skip=frozenset((sw,)))
    if found is None:
        if not local_faults:
            raise InternalGuaranteeError(
                "vertex-deleted Hamiltonian path search exhausted on a fault-free part"
            )
        raise CycleNotFoundError(
            "vertex-deleted Hamiltonian path not found under faults"
        )
    if from_sub is not None:
        return CyclePath(tuple(from_sub[x] for x in found), closed=False)
    return CyclePath(tuple(found), closed=False)


def ham_cycle_through_edge(
    target: BalancedHypercube | SubcubeView,
    e: Edge,
    faults: Iterable[Edge] = (),
) -> CyclePath:
    """Fault-avoiding Hamiltonian cycle forced through one fault-free edge."""
    u, v = e
    g, to_sub, _, local_faults = _resolve_target(target, faults)
    if canonical_edge(_to_local(to_sub, u), _to_local(to_sub, v)) in local_faults:
        raise InvalidInputError("required edge is itself faulty")
    path = ham_path_faulty(target, u, v, faults)
    return CyclePath(path.vertices, closed=True)


# ===== two-step exits =====


def two_path_exit(
    view: SubcubeView, u: Vertex, faults: Iterable[Edge] = ()
) -> CyclePath:
    """Fault-free edge inside the part followed by one crossing hop out of it.

    Scans candidate middles and exits in ascending vertex order, so the result
    is the lexicographically first fault-free two-step exit.
    """
    if u not in view.vertices:
        raise InvalidInputError(f"vertex {u} does not lie in the given part")
    ambient_n = _view_order(view) + 1
    canon = canonical_faults(faults)
    inside = sum(1 for a, b in canon if a in view.vertices and b in view.vertices)
    if len(canon) > 2 * ambient_n - 2:
        raise InvalidInputError(
            f"{len(canon)} faulty edges exceed the bound {2 * ambient_n - 2}"
        )
    if inside > 2 * ambient_n - 3:
        raise InvalidInputError(
            f"{inside} faulty edges inside the part exceed the bound "
            f"{2 * ambient_n - 3}"
        )
    sub = _sub_graph(view)
    su = view.to_sub[u]
    for v in sorted(view.from_sub[sv] for sv in sub.neighbors(su)):
        if canonical_edge(u, v) in canon:
            continue
        for w in sorted(view.cross_neighbors[v]):
            if canonical_edge(v, w) in canon:
                continue
            return CyclePath((u, v, w), closed=False)
    raise InternalGuaranteeError(
        "no fault-free two-step exit although the fault budget guarantees one"
    )


# ===== crossing eight-cycle families =====

# Canonical five-vertex interior paths for the cycle through a crossing edge
# (w, b) with w white.  Entries are digit offsets added to w's coordinates:
# pairs are (inner, split digit) for the family that reuses only the split
# coordinate, and triples are (inner, helper digit, split digit).  The
# component-split families use (inner, helper digit) offsets instead, since a
# pure-inner step is itself a crossing there.  Every instantiated edge is
# re-verified against the adjacency rules at runtime before use.

_SPLIT_DIGIT_PATHS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 0), (2, 3), (3, 3), (0, 2), (1, 2), (2, 1)),
    ((1, 0), (0, 3), (1, 3), (2, 2), (3, 2), (0, 1)),
    ((3, 0), (2, 3), (1, 3), (0, 2), (3, 2), (2, 1)),
    ((3, 0), (0, 3), (3, 3), (2, 2), (1, 2), (0, 1)),
)

_HELPER_DIGIT_PATHS: tuple[tuple[tuple[int, int, int], ...], ...] = (
    ((1, 1, 0), (2, 1, 3), (3, 2, 3), (0, 2, 2), (1, 3, 2), (2, 3, 1)),
    ((1, 1, 0), (0, 1, 3), (1, 2, 3), (2, 2, 2), (3, 3, 2), (0, 3, 1)),
    ((3, 1, 0), (2, 1, 3), (1, 2, 3), (0, 2, 2), (3, 3, 2), (2, 3, 1)),
    ((3, 1, 0), (0, 1, 3), (3, 2, 3), (2, 2, 2), (1, 3, 2), (0, 3, 1)),
)

_COMPONENT_PATHS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 1), (2, 1), (3, 2), (0, 2), (1, 3), (2, 3)),
    ((1, 1), (0, 1), (1, 2), (2, 2), (3, 3), (0, 3)),
    ((3, 1), (2, 1), (1, 2), (0, 2), (3, 3), (2, 3)),
    ((3, 1), (0, 1), (3, 2), (2, 2), (1, 3), (0, 3)),
)


def cross_cycle_families(n: int, d: int) -> list[list[dict[int, int]]]:
    """Digit-offset specs for all candidate interior paths of split d."""
    specs: list[list[dict[int, int]]] = []
    if d >= 1:
        for row in _SPLIT_DIGIT_PATHS:
            specs.append([{0: c0, d: cd} for c0, cd in row])
        for k in range(1, n):
            if k == d:
                continue
            for row in _HELPER_DIGIT_PATHS:
                specs.append([{0: c0, k: ck, d: cd} for c0, ck, cd in row])
    else:
        for k in range(1, n):
            for row in _COMPONENT_PATHS:
                specs.append([{0: c0, k: ck} for c0, ck in row])
    return specs


def _apply_offsets(g: BalancedHypercube, base: Vertex, spec: dict[int, int]) -> Vertex:
    coords = list(unpack(base, g.n))
    for index, offset in spec.items():
        coords[index] = mod4(coords[index] + offset)
    return pack(tuple(coords))


def _check_cycle_edges(
    g: BalancedHypercube, vertices: list[Vertex], faults: frozenset[Edge]
) -> bool:
    if len(set(vertices)) != len(vertices):
        return False
    closed_pairs = list(zip(vertices, vertices[1:])) + [(vertices[-1], vertices[0])]
    for a, b in closed_pairs:
        if not g.has_edge(a, b):
            return False
        if canonical_edge(a, b) in faults:
            return False
    return True


def _assert_one_edge_per_part(sp: FourWaySplit, cycle: CyclePath) -> None:
    counts = [0, 0, 0, 0]
    crossing = 0
    for a, b in zip(cycle.vertices, cycle.vertices[1:] + cycle.vertices[:1]):
        if sp.is_crossing((a, b)):
            crossing += 1
        else:
            counts[sp.part_index(a)] += 1
    if counts != [1, 1, 1, 1] or crossing != 4:
        raise InternalGuaranteeError(
            f"crossing eight-cycle has per-part edge profile {counts} "
            f"with {crossing} crossing edges instead of one edge per part"
        )


def eight_cycle_cross(
    g: BalancedHypercube, e: Edge, faults: Iterable[Edge] = ()
) -> CyclePath:
    """Fault-free 8-cycle through a crossing edge, one edge inside each part.

    Instantiates the canonical interior-path families at the white endpoint by
    coordinate translation (valid because the white inner digit is even) and
    returns the first candidate whose edges all exist and avoid the faults.
    """
    canon = canonical_faults(faults)
    u, v = e
    if not g.has_edge(u, v):
        raise InvalidInputError(f"{format_edge((u, v), g.n)} is not an edge")
    if canonical_edge(u, v) in canon:
        raise InvalidInputError("required edge is itself faulty")
    if len(canon) > 2 * g.n - 2:
        raise InvalidInputError(
            f"{len(canon)} faulty edges exceed the bound {2 * g.n - 2}"
        )
    d = g.edge_dimension((u, v))
    sp = four_way_split(g, d)
    w, b = (u, v) if g.color(u) == WHITE else (v, u)
    for path_spec in cross_cycle_families(g.n, d):
        candidate = [w] + [_apply_offsets(g, w, s) for s in path_spec] + [b]
        if _check_cycle_edges(g, candidate, canon):
            cycle = CyclePath(tuple(candidate), closed=True)
            _assert_one_edge_per_part(sp, cycle)
            return cycle
    if any(sp.is_crossing(x) for x in canon):
        raise InternalGuaranteeError(
            "every crossing eight-cycle candidate is blocked although the "
            "fault budget guarantees a survivor"
        )
    raise CycleNotFoundError(
        "every crossing eight-cycle candidate is blocked; with no faulty "
        "crossing edge the family carries no survivor guarantee"
    )


# ===== disjoint crossing detours =====


def disjoint_cross_paths(
    g: BalancedHypercube, split_dim: int, e: Edge
) -> tuple[CyclePath, CyclePath]:
    """Two internally vertex-disjoint detours around an in-part edge.

    Each detour walks from the white end of e through the three other parts in
    crossing order, holding exactly one edge inside each of them, and returns
    to the black end.  Candidates are enumerated in ascending vertex order and
    the first internally disjoint pair is returned.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise InvalidInputError(f"{format_edge((u, v), g.n)} is not an edge")
    sp = four_way_split(g, split_dim)
    if sp.is_crossing((u, v)):
        raise InvalidInputError("edge must lie inside a part of the split")
    x, y = (u, v) if g.color(u) == WHITE else (v, u)
    final_hops = set(sp.cross_of(y))
    candidates: list[tuple[Vertex, ...]] = []
    for x1 in sorted(sp.cross_of(x)):
        for y1 in sorted(sp.in_part_neighbors(x1)):
            for x2 in sorted(sp.cross_of(y1)):
                for y2 in sorted(sp.in_part_neighbors(x2)):
                    for x3 in sorted(sp.cross_of(y2)):
                        for y3 in sorted(sp.in_part_neighbors(x3)):
                            if y3 in final_hops:
                                candidates.append((x, x1, y1, x2, y2, x3, y3, y))
    for i, first in enumerate(candidates):
        inner_first = set(first[1:-1])
        for second in candidates[i + 1 :]:
            if not inner_first & set(second[1:-1]):
                return (
                    CyclePath(first, closed=False),
                    CyclePath(second, closed=False),
                )
    raise InternalGuaranteeError(
        "no internally disjoint detour pair found although one always exists"
    )


# ===== fixed-length cycles inside a fault-free part =====


def edge_bipancyclic_fault_free(
    target: BalancedHypercube | SubcubeView,
    e: Edge,
    length: int,
    trace: EmbedTrace | None = None,
) -> CyclePath:
    """Cycle of any admissible even length through an edge, no faults.

    Length 4 is the twin rectangle; larger lengths reuse the full constructor
    with an empty fault set.
    """
    g, to_sub, from_sub, _ = _resolve_target(target, ())
    u, v = e
    su, sv = _to_local(to_sub, u), _to_local(to_sub, v)
    if not g.has_edge(su, sv):
        raise InvalidInputError(f"{format_edge((u, v), max(g.n, 1))} is not an edge")
    if length % 2 == 1 or not 4 <= length <= g.num_vertices:
        raise UnsupportedLengthError(
            f"no even cycle of length {length} fits in a part of {g.num_vertices} vertices"
        )
    if length == 4:
        quad = [su, sv, g.twin(su), g.twin(sv)]
        if not _check_cycle_edges(g, quad, frozenset()):
            raise InternalGuaranteeError("twin rectangle failed adjacency re-check")
        local = CyclePath(tuple(quad), closed=True)
    else:
        local = _embed(g, (su, sv), length, make_fault_set(g, ()), trace or EmbedTrace())
    if from_sub is not None:
        return CyclePath(tuple(from_sub[x] for x in local.vertices), closed=True)
    return local


# ===== length split tables =====

# Subcase schemas give, per ring position, the descending list of candidate
# odd path lengths.  Position meanings are fixed by the owning construction
# (for example position 0 may be the part holding the required edge).  The
# deterministic assignment maximizes position 0, then position 2, then
# position 1, and leaves position 3 the remainder.

_SPLIT_SUBCASES = (
    "1.3",
    "2.1.2.1.3",
    "2.1.2.1.4",
    "2.1.2.2.3",
    "2.1.2.2.4",
    "2.2.3",
)


def _descending_odds(high: int, low: int) -> tuple[int, ...]:
    if high < low:
        return ()
    start = high if high % 2 == 1 else high - 1
    return tuple(range(start, low - 1, -2))


def _split_schema(n: int, subcase: str) -> tuple[tuple[int, ...], ...]:
    quarter = 1 << (2 * n - 2)
    top = quarter - 1
    flexible = _descending_odds(top, 3) + (1,)
    if subcase == "1.3":
        return ((top,), _descending_odds(top, 5), (top,), _descending_odds(top, 5) + (1,))
    if subcase == "2.1.2.1.3":
        return ((1,), flexible, flexible, flexible)
    if subcase == "2.1.2.1.4":
        return ((top,), flexible, flexible, flexible)
    if subcase == "2.1.2.2.3":
        return ((5,), (1,), _descending_odds(top, quarter - 9), (top,))
    if subcase == "2.1.2.2.4":
        return (_descending_odds(top, 5), (top,), (top,), _descending_odds(top, 3))
    if subcase == "2.2.3":
        return (flexible, flexible, flexible, flexible)
    raise InvalidInputError(f"unknown length-split subcase {subcase!r}")


def choose_length_split(n: int, length: int, subcase: str) -> LengthSplit:
    """Deterministically split a cycle length into four odd per-part lengths."""
    if length % 2 == 1:
        raise InvalidInputError(f"cycle length {length} is odd")
    slots = _split_schema(n, subcase)
    budget = length - 4
    slot3 = set(slots[3])
    for l0 in slots[0]:
        for l2 in slots[2]:
            if l0 + l2 + 2 > budget:
                continue
            for l1 in slots[1]:
                l3 = budget - l0 - l1 - l2
                if l3 in slot3:
                    return LengthSplit((l0, l1, l2, l3))
    raise InternalGuaranteeError(
        f"no feasible four-way split of length {length} in subcase {subcase}"
    )


# ===== base case: the 16-vertex graph =====

# Both four-way splits of the 16-vertex graph admit the same relabeling: each
# part holds exactly one vertex per inner digit, vertices inside a part are
# adjacent exactly when their inner digits differ by 1, and a white vertex's
# two crossing edges lead to the next part with inner digits one off its own
# (a black vertex's lead to the previous part).  Cycle families below are
# therefore written once as (inner symbol, part offset) pairs and instantiated
# on whichever split is active.  Inner symbols: _A and _B are the inner digits
# of the required edge's white and black endpoints; _A2 and _B2 are their
# twins' inner digits.

_A, _B, _A2, _B2 = 0, 1, 2, 3

# Required edge inside a part (both endpoints at part offset 0).  Three
# candidates per length; their crossing-edge sets are pairwise disjoint, so
# two crossing faults cannot block all three when no in-part fault exists.
_BASE_IN_PART: dict[int, tuple[tuple[tuple[int, int], ...], ...]] = {
    6: (
        ((_A, 0), (_B, 0), (_A, 3), (_B2, 3), (_A2, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 3), (_B, 3), (_A, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 0), (_B, 1), (_A, 1), (_B2, 1)),
    ),
    8: (
        ((_A, 0), (_B, 0), (_A, 3), (_B, 3), (_A, 2), (_B2, 3), (_A2, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 3), (_B, 3), (_A2, 2), (_B2, 3), (_A, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 0), (_B, 1), (_A2, 1), (_B, 2), (_A, 1), (_B2, 1)),
    ),
    10: (
        ((_A, 0), (_B, 0), (_A, 3), (_B, 3), (_A, 2), (_B, 2), (_A2, 2), (_B2, 3),
         (_A2, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 3), (_B, 3), (_A2, 2), (_B, 2), (_A, 2), (_B2, 3),
         (_A, 3), (_B2, 0)),
        ((_A, 0), (_B, 0), (_A2, 0), (_B, 1), (_A2, 1), (_B2, 2), (_A2, 2), (_B, 2),
         (_A, 1), (_B2, 1)),
    ),
    12: (
        ((_A, 0), (_B, 0), (_A, 3), (_B, 3), (_A2, 3), (_B2, 3), (_A2, 2), (_B, 2),
         (_A, 2), (_B2, 2), (_A, 1), (_B, 1)),
        ((_A, 0), (_B, 0), (_A2, 3), (_B2, 3), (_A, 3), (_B, 3), (_A, 2), (_B2, 2),
         (_A2, 2), (_B, 2), (_A2, 1), (_B2, 1)),
        ((_A, 0), (_B, 0), (_A2, 0), (_B, 1), (_A2, 1), (_B2, 2), (_A2, 2), (_B, 2),
         (_A, 2), (_B2, 3), (_A, 3), (_B2, 0)),
    ),
    14: (
        ((_A, 0), (_B, 0), (_A, 3), (_B, 3), (_A2, 3), (_B2, 3), (_A2, 2), (_B, 2),
         (_A, 2), (_B2, 2), (_A2, 1), (_B, 1), (_A, 1), (_B2, 1)),
        ((_A, 0), (_B, 0), (_A2, 3), (_B2, 3), (_A, 3), (_B, 3), (_A2, 2), (_B2, 2),
         (_A, 2), (_B, 2), (_A2, 1), (_B2, 1), (_A, 1), (_B, 1)),
        ((_A, 0), (_B, 0), (_A2, 0), (_B, 1), (_A, 1), (_B2, 2), (_A2, 2), (_B, 2),
         (_A, 2), (_B2, 3), (_A, 3), (_B, 3), (_A2, 3), (_B2, 0)),
    ),
}

# Required edge crossing between part offsets 0 and 1.  The three candidates
# per length pairwise share only the required edge among their crossing edges.
# Each length-8 candidate holds exactly one edge inside every part, which the
# longer lengths exploit by expanding those single edges into 3-paths.
_BASE_CROSS: dict[int, tuple[tuple[tuple[int, int], ...], ...]] = {
    6: (
        ((_A, 0), (_B, 1), (_A, 1), (_B2, 1), (_A2, 0), (_B, 0)),
        ((_A, 0), (_B, 1), (_A, 1), (_B2, 2), (_A2, 1), (_B2, 1)),
        ((_A, 0), (_B, 1), (_A2, 0), (_B2, 0), (_A, 3), (_B, 0)),
    ),
    8: (
        ((_A, 0), (_B, 1), (_A, 1), (_B, 2), (_A, 2), (_B, 3), (_A, 3), (_B, 0)),
        ((_A, 0), (_B, 1), (_A2, 1), (_B2, 2), (_A2, 2), (_B2, 3), (_A2, 3), (_B2, 0)),
        ((_A, 0), (_B, 1), (_A, 1), (_B2, 2), (_A, 2), (_B2, 3), (_A, 3), (_B2, 0)),
    ),
}

# Required edge crossing, one crossing fault and one in-part fault, length 6.
# The first pair of candidates shares only the required edge and its twin
# crossing edge; when the twin edge is the crossing fault, the second pair
# applies instead.  Scanning all four in order covers both branches.
_BASE_CROSS_MIXED_6: tuple[tuple[tuple[int, int], ...], ...] = (
    ((_A, 0), (_B, 1), (_A, 1), (_B2, 1), (_A2, 0), (_B, 0)),
    ((_A, 0), (_B, 1), (_A2, 1), (_B2, 1), (_A2, 0), (_B2, 0)),
    ((_A, 0), (_B, 1), (_A, 1), (_B, 2), (_A2, 1), (_B2, 1)),
    ((_A, 0), (_B, 1), (_A2, 1), (_B2, 2), (_A, 1), (_B2, 1)),
)


def _quad_tables(
    active_dim: int,
) -> tuple[dict[tuple[int, int], Vertex], dict[Vertex, tuple[int, int]]]:
    """Map (part, inner digit) pairs to 16-vertex codes for one split kind."""
    forward: dict[tuple[int, int], Vertex] = {}
    for part in range(4):
        for y in range(4):
            if active_dim == 1:
                code = pack((y, part))
            else:
                code = pack((y, mod4(-part + (1 if y % 2 else 0))))
            forward[(part, y)] = code
    backward = {code: spot for spot, code in forward.items()}
    return forward, backward


def _instantiate_quad_family(
    forward: dict[tuple[int, int], Vertex],
    family: tuple[tuple[int, int], ...],
    base_part: int,
    inner_white: int,
    inner_black: int,
) -> list[Vertex]:
    inners = (inner_white, inner_black, mod4(inner_white + 2), mod4(inner_black + 2))
    return [
        forward[(mod4(base_part + offset), inners[symbol])]
        for symbol, offset in family
    ]


def _first_fault_free(
    g: BalancedHypercube,
    candidates: Iterable[list[Vertex]],
    faults: frozenset[Edge],
) -> list[Vertex] | None:
    for vertices in candidates:
        if _check_cycle_edges(g, vertices, faults):
            return vertices
    return None


def _expand_quad_ring(
    g: BalancedHypercube,
    backward: dict[Vertex, tuple[int, int]],
    forward: dict[tuple[int, int], Vertex],
    cycle: list[Vertex],
    grow_parts: dict[int, int],
    faults: frozenset[Edge],
) -> list[Vertex] | None:
    """Replace single in-part edges of a ring cycle by 3-paths where asked."""
    out: list[Vertex] = []
    m = len(cycle)
    for i, x in enumerate(cycle):
        out.append(x)
        y = cycle[(i + 1) % m]
        part_x, inner_x = backward[x]
        part_y, inner_y = backward[y]
        if part_x != part_y or grow_parts.get(part_x, 1) == 1:
            continue
        step = -1 if mod4(inner_y - inner_x) == 1 else 1
        mid1 = forward[(part_x, mod4(inner_x + step))]
        mid2 = forward[(part_x, mod4(inner_x + 2 * step))]
        for a, b in ((x, mid1), (mid1, mid2), (mid2, y)):
            if not g.has_edge(a, b) or canonical_edge(a, b) in faults:
                return None
        out.extend((mid1, mid2))
    if len(set(out)) != len(out):
        return None
    return out


def _three_part_growth(parts: list[int], budget: int) -> dict[int, int]:
    """Assign path length 3 to leading parts until the edge budget is spent."""
    growth = {p: 1 for p in parts}
    remaining = budget - len(parts)
    for p in parts:
        if remaining >= 2:
            growth[p] = 3
            remaining -= 2
    if remaining != 0:
        raise InternalGuaranteeError(
            f"cannot distribute a path budget of {budget} over {len(parts)} parts"
        )
    return growth


def _dfs_cycle_search(
    g: BalancedHypercube, e: Edge, length: int, faults: frozenset[Edge]
) -> list[Vertex] | None:
    """Plain exhaustive search for a fault-free cycle of one exact length."""
    u, v = e
    if canonical_edge(u, v) in faults:
        return None
    path = [u, v]
    on_path = {u, v}

    def walk() -> bool:
        if len(path) == length:
            last = path[-1]
            return g.has_edge(last, u) and canonical_edge(last, u) not in faults
        for w in g.neighbors(path[-1]):
            if w in on_path or canonical_edge(path[-1], w) in faults:
                continue
            path.append(w)
            on_path.add(w)
            if walk():
                return True
            path.pop()
            on_path.remove(w)
        return False

    if walk():
        return path
    return None


def _base_cross_machinery(
    g: BalancedHypercube,
    active_dim: int,
    e: Edge,
    length: int,
    faults: frozenset[Edge],
    in_part_faults: list[Edge],
    trace: EmbedTrace,
) -> list[Vertex] | None:
    """Mixed-fault constructions for a crossing required edge (length 6..14)."""
    forward, backward = _quad_tables(active_dim)
    u, v = e
    w, b = (u, v) if g.color(u) == WHITE else (v, u)
    part_w, inner_w = backward[w]
    _, inner_b = backward[b]
    if length == 6:
        trace.enter("AppendixA/Sub2.1.1")
        candidates = (
            _instantiate_quad_family(forward, fam, part_w, inner_w, inner_b)
            for fam in _BASE_CROSS_MIXED_6
        )
        return _first_fault_free(g, candidates, faults)
    eight = eight_cycle_cross(g, (w, b), faults)
    if length == 8:
        trace.enter("AppendixA/Sub2.1.2")
        return list(eight.vertices)
    trace.enter("AppendixA/Sub2.1.3")
    blocked_parts = {backward[a][0] for a, bb in in_part_faults} | {
        backward[bb][0] for a, bb in in_part_faults
    }
    grow = sorted(p for p in range(4) if p not in blocked_parts)[:3]
    growth = _three_part_growth(grow, length - 5)
    return _expand_quad_ring(g, backward, forward, list(eight.vertices), growth, faults)


def base_bh2(
    e: Edge,
    length: int,
    faults: Iterable[Edge] = (),
    trace: EmbedTrace | None = None,
) -> CyclePath:
    """Even cycle of length 6..16 through an edge of the 16-vertex graph.

    Dispatches on which dimension class carries more faults, instantiates the
    matching parametric cycle family, and falls back to exhaustive search if
    no listed candidate survives (which the fault-count arguments rule out).
    """
    if trace is None:
        trace = EmbedTrace()
    g = build_hypercube(2)
    canon = canonical_faults(faults)
    u, v = e
    if not g.has_edge(u, v):
        raise InvalidInputError(f"{format_edge((u, v), 2)} is not an edge")
    if canonical_edge(u, v) in canon:
        raise InvalidInputError("required edge is itself faulty")
    if len(canon) > 2:
        raise InvalidInputError(f"{len(canon)} faulty edges exceed the bound 2")
    if length % 2 == 1 or not 6 <= length <= 16:
        raise UnsupportedLengthError(
            f"length {length} is outside the guaranteed range 6..16"
        )
    if length == 16:
        trace.enter("AppendixA/Ham16")
        return ham_cycle_through_edge(g, e, canon)

    by_dim = ([x for x in canon if g.edge_dimension(x) == 0],
              [x for x in canon if g.edge_dimension(x) == 1])
    active = 1 if len(by_dim[1]) >= len(by_dim[0]) else 0
    result = _base_dispatch(g, active, by_dim, e, length, canon, trace)
    if result is not None:
        return CyclePath(tuple(result), closed=True)
    trace.enter("AppendixA/DFSFallback")
    found = _dfs_cycle_search(g, e, length, canon)
    if found is None:
        raise InternalGuaranteeError(
            f"no cycle of length {length} found although one is guaranteed"
        )
    return CyclePath(tuple(found), closed=True)


def _base_dispatch(
    g: BalancedHypercube,
    active: int,
    by_dim: tuple[list[Edge], list[Edge]],
    e: Edge,
    length: int,
    canon: frozenset[Edge],
    trace: EmbedTrace,
) -> list[Vertex] | None:
    in_part_faults = by_dim[1 - active]
    e_dim = g.edge_dimension(e)
    u, v = e
    w, b = (u, v) if g.color(u) == WHITE else (v, u)

    if not in_part_faults:
        forward, backward = _quad_tables(active)
        part_w, inner_w = backward[w]
        _, inner_b = backward[b]
        if e_dim != active:
            trace.enter("AppendixA/Sub1.1")
            candidates = (
                _instantiate_quad_family(forward, fam, part_w, inner_w, inner_b)
                for fam in _BASE_IN_PART[length]
            )
            return _first_fault_free(g, candidates, canon)
        if length in (6, 8):
            trace.enter("AppendixA/Sub1.2.1")
            candidates = (
                _instantiate_quad_family(forward, fam, part_w, inner_w, inner_b)
                for fam in _BASE_CROSS[length]
            )
            return _first_fault_free(g, candidates, canon)
        trace.enter("AppendixA/Sub1.2.2")
        eight_candidates = (
            _instantiate_quad_family(forward, fam, part_w, inner_w, inner_b)
            for fam in _BASE_CROSS[8]
        )
        eight = _first_fault_free(g, eight_candidates, canon)
        if eight is None:
            return None
        grow = sorted(mod4(part_w + off) for off in (1, 2, 3))
        growth = _three_part_growth(grow, length - 5)
        return _expand_quad_ring(g, backward, forward, eight, growth, canon)

    if e_dim != active:
        trace.enter("AppendixA/Sub2.2")
        active = 1 - active
    return _base_cross_machinery(
        g, active, e, length, canon, by_dim[1 - active], trace
    )
