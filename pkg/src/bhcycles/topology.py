"""Balanced hypercube topology: labels, adjacency, and four-way splits.

The balanced hypercube BH_n has 4^n vertices, each labeled by n base-4
coordinates (a0, ..., a_{n-1}).  The inner coordinate a0 determines the
bipartition class (even = white, odd = black) and every vertex has a twin
(inner index shifted by 2) with an identical neighborhood.

Vertices are stored as packed base-4 integers with a0 as the most
significant digit, so hashing and array indexing are O(1) and the numeric
order of codes equals the lexicographic order of coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

Vertex = int
Edge = tuple[int, int]

WHITE = 0
BLACK = 1


class InvalidInputError(ValueError):
    """Raised for malformed labels, non-edges, or violated preconditions."""


class InternalGuaranteeError(RuntimeError):
    """Raised when a construction that theory guarantees to succeed fails.

    Seeing this exception always indicates an implementation bug, never a
    property of the input.
    """


def mod4(x: int) -> int:
    """Single choke point for all inner-index / coordinate arithmetic."""
    return x & 3


# ===================================================================
# Label packing and text forms
# ===================================================================

def pack(coords: tuple[int, ...]) -> Vertex:
    """Pack base-4 coordinates (a0 most significant) into an int code."""
    code = 0
    for c in coords:
        code = (code << 2) | (c & 3)
    return code


def unpack(code: Vertex, n: int) -> tuple[int, ...]:
    """Inverse of pack: recover the n coordinates of a vertex code."""
    coords = [0] * n
    for i in range(n - 1, -1, -1):
        coords[i] = code & 3
        code >>= 2
    return tuple(coords)


def digit(code: Vertex, i: int, n: int) -> int:
    """Coordinate a_i of a packed vertex code."""
    return (code >> (2 * (n - 1 - i))) & 3


def inner(code: Vertex, n: int) -> int:
    """Inner coordinate a0 (the most significant base-4 digit)."""
    return (code >> (2 * (n - 1))) & 3


def color(code: Vertex, n: int) -> int:
    """WHITE for even inner index, BLACK for odd."""
    return inner(code, n) & 1


def twin(code: Vertex, n: int) -> Vertex:
    """The unique other vertex with the same neighborhood: a0 shifted by 2."""
    a0 = inner(code, n)
    return code + ((mod4(a0 + 2) - a0) << (2 * (n - 1)))


def with_digit(code: Vertex, i: int, value: int, n: int) -> Vertex:
    """Copy of code with coordinate a_i replaced."""
    shift = 2 * (n - 1 - i)
    return (code & ~(3 << shift)) | ((value & 3) << shift)


def format_vertex(code: Vertex, n: int) -> str:
    """Render a vertex as n base-4 digits, a0 leftmost (e.g. '302')."""
    return "".join(str(d) for d in unpack(code, n))


def parse_vertex(text: str, n: int) -> Vertex:
    """Parse the text form produced by format_vertex."""
    if len(text) != n or not all(c in "0123" for c in text):
        raise InvalidInputError(
            f"vertex label {text!r} is not {n} base-4 digits"
        )
    return pack(tuple(int(c) for c in text))


def canonical_edge(u: Vertex, v: Vertex) -> Edge:
    """Edges are unordered; the canonical form lists the smaller code first."""
    return (u, v) if u < v else (v, u)


def format_edge(e: Edge, n: int) -> str:
    u, v = canonical_edge(*e)
    return f"{format_vertex(u, n)}-{format_vertex(v, n)}"


def parse_edge(text: str, n: int) -> Edge:
    parts = text.split("-")
    if len(parts) != 2:
        raise InvalidInputError(f"edge {text!r} is not of the form u-v")
    return canonical_edge(parse_vertex(parts[0], n), parse_vertex(parts[1], n))


# ===================================================================
# Graph construction
# ===================================================================

def _rule_neighbors(code: Vertex, n: int) -> list[Vertex]:
    """The 2n neighbors of a vertex, straight from the adjacency rule.

    Two neighbors change only the inner index (by +-1); the other 2(n-1)
    additionally shift one outer coordinate a_i by +1 from a white vertex
    and by -1 from a black one.
    """
    a0 = inner(code, n)
    sign = 1 if a0 % 2 == 0 else -1
    out = []
    for da in (1, -1):
        base = with_digit(code, 0, mod4(a0 + da), n)
        out.append(base)
        for i in range(1, n):
            ai = digit(code, i, n)
            out.append(with_digit(base, i, mod4(ai + sign), n))
    return out


@dataclass(frozen=True)
class BalancedHypercube:
    """Immutable BH_n graph: adjacency lists plus the canonical edge set."""

    n: int
    adjacency: tuple[tuple[Vertex, ...], ...]
    edges: frozenset[Edge] = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return 1 << (2 * self.n)

    def vertices(self) -> range:
        return range(self.num_vertices)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.adjacency[v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return canonical_edge(u, v) in self.edges

    def color(self, v: Vertex) -> int:
        return color(v, self.n)

    def twin(self, v: Vertex) -> Vertex:
        return twin(v, self.n)

    def edge_dimension(self, e: Edge) -> int:
        """0 if the endpoints differ only in a0, else the outer index i."""
        u, v = e
        if canonical_edge(u, v) not in self.edges:
            raise InvalidInputError(
                f"{format_edge(e, self.n)} is not an edge of BH_{self.n}"
            )
        diff = u ^ v
        dim = 0
        for i in range(1, self.n):
            if digit(diff, i, self.n):
                dim = i
        return dim

    def dimension_class(self, d: int) -> frozenset[Edge]:
        """All d-dimensional edges; the classes partition the edge set."""
        if not 0 <= d < self.n:
            raise InvalidInputError(f"dimension {d} out of range for n={self.n}")
        return frozenset(e for e in self.edges if self.edge_dimension(e) == d)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BalancedHypercube)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def _graph_from_edges(n: int, edges: set[Edge]) -> BalancedHypercube:
    adj: list[list[Vertex]] = [[] for _ in range(1 << (2 * n))]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return BalancedHypercube(
        n=n,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        edges=frozenset(edges),
    )


@lru_cache(maxsize=None)
def build_hypercube(n: int) -> BalancedHypercube:
    """BH_n built directly from the adjacency rule."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    edges: set[Edge] = set()
    for v in range(1 << (2 * n)):
        for w in _rule_neighbors(v, n):
            edges.add(canonical_edge(v, w))
    return _graph_from_edges(n, edges)


@lru_cache(maxsize=None)
def build_recursive(n: int) -> BalancedHypercube:
    """BH_n assembled from four BH_{n-1} copies plus crossing edges.

    BH_1 is the 4-cycle on inner indices.  For n >= 2, copy i fixes the
    last coordinate to i; a vertex with even inner index a0 additionally
    connects to (a0 +- 1, ..., i+1), one with odd a0 to (a0 +- 1, ..., i-1).
    Must reproduce the rule-built graph exactly (tested, not assumed).
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if n == 1:
        edges = {
            canonical_edge(a, mod4(a + 1)) for a in range(4)
        }
        return _graph_from_edges(1, edges)

    prev = build_recursive(n - 1)
    edges = set()
    for i in range(4):
        # Embed copy i: append the last coordinate i to every label.
        for u, v in prev.edges:
            edges.add(canonical_edge((u << 2) | i, (v << 2) | i))
        for u in prev.vertices():
            a0 = inner(u, n - 1)
            lifted = (u << 2) | i
            j = mod4(i + 1) if a0 % 2 == 0 else mod4(i - 1)
            for da in (1, -1):
                other = with_digit(lifted, 0, mod4(a0 + da), n)
                edges.add(canonical_edge(lifted, (other & ~3) | j))
    return _graph_from_edges(n, edges)


# ===================================================================
# Four-way splits
# ===================================================================

@dataclass(frozen=True)
class SubcubeView:
    """One part of a four-way split, with its exact BH_{n-1} relabeling.

    Every crossing edge from part i lands in part (i+1) mod 4 when its
    endpoint inside the part is white, and in part (i-1) mod 4 when it is
    black; cross_neighbors lists the two outside endpoints per vertex.
    """

    split_dim: int
    part: int
    vertices: frozenset[Vertex]
    to_sub: dict[Vertex, Vertex] = field(repr=False)
    from_sub: dict[Vertex, Vertex] = field(repr=False)
    cross_neighbors: dict[Vertex, tuple[Vertex, Vertex]] = field(repr=False)


@dataclass(frozen=True)
class FourWaySplit:
    """The four parts of a split along one dimension, plus bookkeeping."""

    graph: BalancedHypercube
    split_dim: int
    parts: tuple[SubcubeView, SubcubeView, SubcubeView, SubcubeView]
    part_of: tuple[int, ...] = field(repr=False)
    crossing_edges: frozenset[Edge] = field(repr=False)

    def part_index(self, v: Vertex) -> int:
        return self.part_of[v]

    def is_crossing(self, e: Edge) -> bool:
        return canonical_edge(*e) in self.crossing_edges

    def in_part_neighbors(self, v: Vertex) -> list[Vertex]:
        p = self.part_of[v]
        return [w for w in self.graph.neighbors(v) if self.part_of[w] == p]

    def cross_of(self, v: Vertex) -> tuple[Vertex, Vertex]:
        return self.parts[self.part_of[v]].cross_neighbors[v]


def _verify_isomorphism(
    g: BalancedHypercube,
    sub: BalancedHypercube,
    mapping: dict[Vertex, Vertex],
    members: frozenset[Vertex],
) -> None:
    """Exact check that `mapping` is a graph isomorphism part -> BH_{n-1}."""
    if len(mapping) != sub.num_vertices or set(mapping.values()) != set(
        sub.vertices()
    ):
        raise InternalGuaranteeError("part relabeling is not a bijection")
    for u in members:
        inside = {w for w in g.neighbors(u) if w in members}
        image = {mapping[w] for w in inside}
        if image != set(sub.neighbors(mapping[u])):
            raise InternalGuaranteeError("part relabeling breaks adjacency")


def _views_from_parts(
    g: BalancedHypercube,
    split_dim: int,
    membership: list[int],
    mappings: list[dict[Vertex, Vertex]],
) -> FourWaySplit:
    n = g.n
    crossing: set[Edge] = set()
    part_sets: list[set[Vertex]] = [set() for _ in range(4)]
    for v in g.vertices():
        part_sets[membership[v]].add(v)
    cross_nbrs: list[dict[Vertex, tuple[Vertex, Vertex]]] = [
        {} for _ in range(4)
    ]
    for v in g.vertices():
        p = membership[v]
        outs = tuple(
            sorted(w for w in g.neighbors(v) if membership[w] != p)
        )
        if len(outs) != 2:
            raise InternalGuaranteeError(
                f"vertex {format_vertex(v, n)} has {len(outs)} crossing edges"
            )
        cross_nbrs[p][v] = outs
        for w in outs:
            crossing.add(canonical_edge(v, w))
    sub = build_hypercube(n - 1)
    views = []
    for p in range(4):
        mapping = mappings[p]
        _verify_isomorphism(g, sub, mapping, frozenset(part_sets[p]))
        views.append(
            SubcubeView(
                split_dim=split_dim,
                part=p,
                vertices=frozenset(part_sets[p]),
                to_sub=mapping,
                from_sub={s: v for v, s in mapping.items()},
                cross_neighbors=cross_nbrs[p],
            )
        )
    return FourWaySplit(
        graph=g,
        split_dim=split_dim,
        parts=tuple(views),
        part_of=tuple(membership),
        crossing_edges=frozenset(crossing),
    )


@lru_cache(maxsize=None)
def split(g: BalancedHypercube, j: int) -> FourWaySplit:
    """Split BH_n along outer dimension j >= 1: part i fixes a_j = i.

    Dropping coordinate j relabels each part onto BH_{n-1} exactly; the
    crossing edges are precisely the j-dimensional ones.
    """
    n = g.n
    if not 1 <= j < n:
        raise InvalidInputError(
            f"split dimension must be in 1..{n - 1}; "
            "use component_split_dim0 for the 0-dimensional split"
        )
    membership = [digit(v, j, n) for v in g.vertices()]

    def drop(v: Vertex) -> Vertex:
        coords = unpack(v, n)
        return pack(coords[:j] + coords[j + 1:])

    mappings = [
        {v: drop(v) for v in g.vertices() if membership[v] == p}
        for p in range(4)
    ]
    return _views_from_parts(g, j, membership, mappings)


def _anchored_isomorphism(
    g: BalancedHypercube,
    members: list[Vertex],
    sub: BalancedHypercube,
) -> dict[Vertex, Vertex]:
    """Map a component of BH_n minus its 0-dimensional edges onto BH_{n-1}.

    Anchor the smallest vertex at the all-zero label, then extend in BFS
    order, backtracking over candidate images.  The induced subgraph is
    regular of the same degree as BH_{n-1}, so plain ordered backtracking
    terminates quickly at the scales used here.
    """
    member_set = set(members)
    inside: dict[Vertex, tuple[Vertex, ...]] = {
        v: tuple(w for w in g.neighbors(v) if w in member_set)
        for v in members
    }
    anchor = min(members)
    order: list[Vertex] = [anchor]
    seen = {anchor}
    for v in order:
        for w in inside[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    if len(order) != len(members):
        raise InternalGuaranteeError("component is not connected")

    sub_adj = {v: set(sub.neighbors(v)) for v in sub.vertices()}
    mapping: dict[Vertex, Vertex] = {}
    used: set[Vertex] = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        mapped_nbrs = [mapping[w] for w in inside[v] if w in mapping]
        if mapped_nbrs:
            candidates = set(sub_adj[mapped_nbrs[0]])
            for m in mapped_nbrs[1:]:
                candidates &= sub_adj[m]
            candidates -= used
        elif idx == 0:
            candidates = {0}
        else:  # unreachable for a connected BFS order
            candidates = set(sub.vertices()) - used
        for cand in sorted(candidates):
            # Consistency both ways: already-mapped non-neighbors must not
            # become neighbors in the image.
            ok = all(
                (w in inside[v]) == (mapping[w] in sub_adj[cand])
                for w in mapping
                if True
            )
            if not ok:
                continue
            mapping[v] = cand
            used.add(cand)
            if extend(idx + 1):
                return True
            del mapping[v]
            used.discard(cand)
        return False

    if not extend(0):
        raise InternalGuaranteeError(
            "no isomorphism from component onto the smaller hypercube"
        )
    return mapping


@lru_cache(maxsize=None)
def component_split_dim0(g: BalancedHypercube) -> FourWaySplit:
    """The four connected components left after deleting all 0-dim edges.

    Each component is an exact copy of BH_{n-1}; its relabeling is found
    by anchored backtracking search and verified edge-by-edge.  Components
    are indexed so that the all-zero vertex sits in part 0 and crossing
    edges from white vertices of part i land in part (i+1) mod 4.
    """
    n = g.n
    if n < 2:
        raise InvalidInputError("component split needs n >= 2")
    membership = [-1] * g.num_vertices
    comp_lists: list[list[Vertex]] = []
    for v in g.vertices():
        if membership[v] >= 0:
            continue
        comp = [v]
        membership[v] = len(comp_lists)
        for u in comp:
            for w in g.neighbors(u):
                if g.edge_dimension(canonical_edge(u, w)) == 0:
                    continue
                if membership[w] < 0:
                    membership[w] = membership[v]
                    comp.append(w)
        comp_lists.append(comp)
    if len(comp_lists) != 4:
        raise InternalGuaranteeError(
            f"expected 4 components, found {len(comp_lists)}"
        )

    # Re-index cyclically: part 0 holds vertex 0; following a crossing edge
    # from a white vertex must increase the part index by 1 mod 4.
    reindex = {membership[0]: 0}
    frontier = 0
    for _ in range(3):
        part_verts = comp_lists[
            next(c for c, p in reindex.items() if p == frontier)
        ]
        white = next(v for v in part_verts if color(v, n) == WHITE)
        out = next(
            w
            for w in g.neighbors(white)
            if g.edge_dimension(canonical_edge(white, w)) == 0
        )
        reindex.setdefault(membership[out], frontier + 1)
        frontier += 1
    membership = [reindex[c] for c in membership]
    by_part: list[list[Vertex]] = [[] for _ in range(4)]
    for v in g.vertices():
        by_part[membership[v]].append(v)
    sub = build_hypercube(n - 1)
    mappings = [
        _anchored_isomorphism(g, by_part[p], sub) for p in range(4)
    ]
    return _views_from_parts(g, 0, membership, mappings)


def four_way_split(g: BalancedHypercube, d: int) -> FourWaySplit:
    """Uniform accessor: coordinate split for d >= 1, component split for 0."""
    return component_split_dim0(g) if d == 0 else split(g, d)


# ===================================================================
# Edge-list text form
# ===================================================================

def render_edge_list(g: BalancedHypercube) -> str:
    """Sorted one-edge-per-line listing with '#' summary comments."""
    n = g.n
    counts = [0] * n
    for e in g.edges:
        counts[g.edge_dimension(e)] += 1
    lines = [
        f"# balanced hypercube n={n}",
        f"# vertices={g.num_vertices} edges={len(g.edges)}",
        "# edges per dimension: "
        + " ".join(f"d{d}={counts[d]}" for d in range(n)),
    ]
    lines.extend(sorted(format_edge(e, n) for e in g.edges))
    return "\n".join(lines) + "\n"


def parse_fault_file(text: str, n: int) -> frozenset[Edge]:
    """Fault list: one canonical edge per line; '#' comments; blanks skipped.

    Duplicate edges are rejected rather than silently collapsed.
    """
    g = build_hypercube(n)
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        e = parse_edge(line, n)
        if e not in g.edges:
            raise InvalidInputError(
                f"line {lineno}: {line!r} is not an edge of BH_{n}"
            )
        if e in seen:
            raise InvalidInputError(f"line {lineno}: duplicate fault {line!r}")
        seen.add(e)
    return frozenset(seen)
