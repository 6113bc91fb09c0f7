"""Simplicial complexes and their graphs: skeletons, clique complexes,
facet intersection graphs, generalized d-tree recognition, minimal
non-faces, and proper edge stars.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class EmptyFacet(ValueError):
    """A facet with no vertices was supplied."""


class DuplicateVertexInFacet(ValueError):
    """A facet names the same vertex twice."""


@dataclass(frozen=True)
class Vertex:
    id: int
    name: str


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[Vertex, ...]
    facets: tuple[frozenset[int], ...]

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def name_of(self, vid: int) -> str:
        return self.vertices[vid].name

    def names(self, vids) -> list[str]:
        return sorted(self.name_of(v) for v in vids)

    def id_of(self, name: str) -> int:
        for v in self.vertices:
            if v.name == name:
                return v.id
        raise KeyError(name)

    def is_face(self, vids) -> bool:
        s = frozenset(vids)
        return any(s <= f for f in self.facets)


def validate_complex(raw_facets, vertex_order=None) -> SimplicialComplex:
    """Normalize raw facet name lists: dense ids in first-appearance order
    (or in vertex_order when given), inclusion-maximal facets (contained sets
    dropped, first occurrence kept)."""
    if not raw_facets:
        raise EmptyFacet("facet list is empty")
    ids: dict[str, int] = {}
    if vertex_order is not None:
        for n in vertex_order:
            if n in ids:
                raise DuplicateVertexInFacet(f"repeated vertex {n!r} in vertex list")
            ids[n] = len(ids)
    sets: list[frozenset[int]] = []
    for raw in raw_facets:
        names = list(raw)
        if not names:
            raise EmptyFacet("empty facet")
        if len(set(names)) != len(names):
            dup = sorted(n for n in set(names) if names.count(n) > 1)
            raise DuplicateVertexInFacet(f"repeated vertex {dup[0]!r} in facet {names}")
        for n in names:
            ids.setdefault(n, len(ids))
        sets.append(frozenset(ids[n] for n in names))
    kept: list[frozenset[int]] = []
    for f in sets:
        if any(f < g for g in sets):
            continue
        if f not in kept:
            kept.append(f)
    vertices = tuple(Vertex(i, n) for n, i in sorted(ids.items(), key=lambda kv: kv[1]))
    sc = SimplicialComplex(vertices, tuple(kept))
    assert all(
        not (a < b or b < a) for a, b in combinations(sc.facets, 2)
    ), "facets must be inclusion-maximal"
    assert {v for f in sc.facets for v in f} == set(range(len(vertices)))
    return sc


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    vertex_ids: frozenset[int]
    edges: frozenset[tuple[int, int]]  # pairs stored (min, max)

    def __post_init__(self) -> None:
        assert all(u < v for u, v in self.edges)
        assert all(u in self.vertex_ids and v in self.vertex_ids for u, v in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertex_ids}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def without(self, vid: int) -> "Graph":
        return Graph(
            self.vertex_ids - {vid},
            frozenset(e for e in self.edges if vid not in e),
        )


def graph(vertex_ids, edge_pairs) -> Graph:
    edges = frozenset((min(u, v), max(u, v)) for u, v in edge_pairs if u != v)
    return Graph(frozenset(vertex_ids), edges)


def skeleton_graph(sc: SimplicialComplex) -> Graph:
    pairs = {p for f in sc.facets for p in combinations(sorted(f), 2)}
    return graph(range(len(sc.vertices)), pairs)


def is_connected(g: Graph) -> bool:
    if not g.vertex_ids:
        return False
    adj = g.adjacency()
    seen = {min(g.vertex_ids)}
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == g.vertex_ids


def induces_forest(g: Graph, vids) -> bool:
    """True when the induced subgraph on vids has no cycle."""
    vids = set(vids)
    parent = {v: v for v in vids}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in g.edges:
        if u in vids and v in vids:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting; output sorted for determinism."""
    adj = g.adjacency()
    out: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    expand(set(), set(g.vertex_ids), set())
    return sorted(out, key=lambda c: sorted(c))


def clique_number(g: Graph) -> int:
    return max((len(c) for c in maximal_cliques(g)), default=0)


def clique_complex(g: Graph, names: dict[int, str] | None = None) -> SimplicialComplex:
    """Complex whose facets are the maximal cliques of g (dense re-indexed)."""
    order = sorted(g.vertex_ids)
    remap = {v: i for i, v in enumerate(order)}
    label = names if names is not None else {v: f"v{v}" for v in order}
    vertices = tuple(Vertex(remap[v], label[v]) for v in order)
    facets = tuple(frozenset(remap[v] for v in c) for c in maximal_cliques(g))
    return SimplicialComplex(vertices, facets)


def facet_intersection_graph(sc: SimplicialComplex) -> Graph:
    m = len(sc.facets)
    pairs = [
        (i, j) for i, j in combinations(range(m), 2) if sc.facets[i] & sc.facets[j]
    ]
    return graph(range(m), pairs)


# ---------------------------------------------------------------------------
# generalized d-trees


@dataclass(frozen=True)
class DTreeVerdict:
    verdict: bool
    elimination_order: tuple[int, ...] = ()
    reason: str | None = None


def quasi_tree_order(facets) -> list[int] | None:
    """Build order (reverse leaf-removal) of a facet list, or None.

    A leaf of a facet set S is F with F cap union(S-F) inside a single other
    member. Backtracking over which leaf to remove; memo on remaining sets.
    """
    facets = list(facets)
    n = len(facets)
    dead: set[frozenset[int]] = set()

    def peel(remaining: frozenset[int]) -> list[int] | None:
        if len(remaining) == 1:
            return [next(iter(remaining))]
        if remaining in dead:
            return None
        for i in sorted(remaining):
            rest = remaining - {i}
            boundary = facets[i] & frozenset().union(*(facets[j] for j in rest))
            if any(boundary <= facets[j] for j in sorted(rest)):
                tail = peel(rest)
                if tail is not None:
                    return tail + [i]
        dead.add(remaining)
        return None

    if n == 0:
        return None
    return peel(frozenset(range(n)))


def _quasi_tree_criterion(g: Graph, d: int) -> bool:
    # connected + clique number d+1 + clique complex admits a leaf order
    if not is_connected(g):
        return False
    if clique_number(g) != d + 1:
        return False
    return quasi_tree_order(maximal_cliques(g)) is not None


def is_generalized_d_tree(g: Graph, d: int) -> DTreeVerdict:
    """Recursive-elimination verdict with a deterministic certificate.

    Repeatedly removes the lowest-id vertex whose neighborhood is a complete
    graph on 1..d vertices and whose removal keeps the clique number at d+1,
    down to a complete graph on d+1 vertices. Removal of such a vertex never
    disconnects the graph and never loses the property, so the greedy order
    is a faithful certificate.
    """
    out = _eliminate(g, d)
    assert out.verdict == _quasi_tree_criterion(g, d), "criteria disagree"
    return out


def _eliminate(g: Graph, d: int) -> DTreeVerdict:
    if not g.vertex_ids:
        return DTreeVerdict(False, (), "empty graph")
    if not is_connected(g):
        return DTreeVerdict(False, (), "Disconnected")
    if clique_number(g) != d + 1:
        return DTreeVerdict(False, (), f"clique number is {clique_number(g)}, need {d + 1}")
    order: list[int] = []
    cur = g
    while len(cur.vertex_ids) > d + 1:
        adj = cur.adjacency()
        pick = None
        for v in sorted(cur.vertex_ids):
            nb = adj[v]
            if not 1 <= len(nb) <= d:
                continue
            if not all(cur.has_edge(a, b) for a, b in combinations(sorted(nb), 2)):
                continue
            if clique_number(cur.without(v)) == d + 1:
                pick = v
                break
        if pick is None:
            return DTreeVerdict(False, tuple(order), "no removable vertex")
        order.append(pick)
        cur = cur.without(pick)
    # clique number d+1 on d+1 vertices forces the complete graph
    assert all(cur.has_edge(u, v) for u, v in combinations(sorted(cur.vertex_ids), 2))
    return DTreeVerdict(True, tuple(order), None)


# ---------------------------------------------------------------------------
# Stanley-Reisner data and proper stars


def stanley_reisner_generators(sc: SimplicialComplex) -> list[tuple[int, ...]]:
    """Minimal non-faces, each as a sorted vertex-id tuple.

    A minimal non-face has size at most dim+2 (its proper subsets are faces,
    and faces have at most dim+1 vertices). Any minimal non-face of size >= 3
    has all its pairs as edges, so only skeleton cliques need scanning.
    """
    n = len(sc.vertices)
    adj = skeleton_graph(sc).adjacency()
    out: list[tuple[int, ...]] = [
        (u, v) for u, v in combinations(range(n), 2) if v not in adj[u]
    ]

    def grow(clique: tuple[int, ...], cands: set[int]) -> None:
        size = len(clique)
        if size >= 3 and not sc.is_face(clique):
            if all(sc.is_face(clique[:i] + clique[i + 1 :]) for i in range(size)):
                out.append(clique)
            return  # supersets contain this non-face, never minimal
        if size == sc.dim + 2:
            return
        for v in sorted(cands):
            grow(clique + (v,), {w for w in cands if w > v and w in adj[v]})

    grow((), set(range(n)))
    return sorted(out, key=lambda t: (len(t), t))


@dataclass(frozen=True)
class ProperStar:
    facet: int
    origin: int
    targets: tuple[int, ...]


def is_proper_edge(sc: SimplicialComplex, l: int, u: int, v: int) -> bool:
    """The edge lies in facet l and in no other facet."""
    e = {u, v}
    if not e <= sc.facets[l]:
        return False
    return not any(e <= f for i, f in enumerate(sc.facets) if i != l)


def proper_edge_stars(sc: SimplicialComplex) -> list[list[ProperStar]]:
    """Per facet: every candidate origin with its maximal proper-edge targets."""
    out: list[list[ProperStar]] = []
    for l, f in enumerate(sc.facets):
        stars = []
        for origin in sorted(f):
            targets = tuple(
                t for t in sorted(f) if t != origin and is_proper_edge(sc, l, origin, t)
            )
            if targets:
                stars.append(ProperStar(l, origin, targets))
        out.append(stars)
    return out
