"""Colorations of reduced graphs: proper/good checks, the per-facet binomial
conditions, a backtracking search, the recursive construction for generalized
d-tree skeletons, and the linear reduction vectors g_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    Graph,
    induces_forest,
    is_generalized_d_tree,
    quasi_tree_order,
    skeleton_graph,
)
from .extension import ExtensionComplex, reduced_graph
from .poly import Polynomial, Ring


class UncoloredVertex(ValueError):
    """The coloration misses a vertex of the graph under test."""


class NotADTree(ValueError):
    """The construction needs a generalized d-tree skeleton."""


class ValidationFailed(RuntimeError):
    """A constructed coloration failed re-validation; never silently fixed."""


@dataclass(frozen=True)
class Coloration:
    num_classes: int
    pairs: tuple[tuple[int, int], ...]  # (vertex id, class index), sorted

    @staticmethod
    def from_map(num_classes: int, assignment: dict[int, int]) -> "Coloration":
        assert all(0 <= c < num_classes for c in assignment.values())
        return Coloration(num_classes, tuple(sorted(assignment.items())))

    @property
    def assignment(self) -> dict[int, int]:
        return dict(self.pairs)

    def of(self, v: int) -> int | None:
        return self.assignment.get(v)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.pairs)

    @property
    def classes(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.num_classes)]
        for v, c in self.pairs:
            out[c].add(v)
        return tuple(frozenset(s) for s in out)

    def members_in(self, cls: int, vset) -> frozenset[int]:
        return self.classes[cls] & frozenset(vset)


# ---------------------------------------------------------------------------
# proper / good


def _check_assigned(g: Graph, col: Coloration) -> None:
    missing = g.vertex_ids - col.domain
    if missing:
        raise UncoloredVertex(f"vertices {sorted(missing)} carry no color")


def is_proper_coloration(g: Graph, col: Coloration) -> bool:
    _check_assigned(g, col)
    a = col.assignment
    return all(a[u] != a[v] for u, v in g.edges)


def is_good_coloration(g: Graph, col: Coloration) -> bool:
    """Proper and every cycle sees at least three colors: each union of two
    classes must induce a forest."""
    if not is_proper_coloration(g, col):
        return False
    cls = [c & g.vertex_ids for c in col.classes]
    return all(
        induces_forest(g, cls[i] | cls[j])
        for i, j in combinations(range(col.num_classes), 2)
    )


# ---------------------------------------------------------------------------
# binomial-coloration conditions


def _facet_pairs(ext: ExtensionComplex, l: int):
    """Designated same-class pairs of facet l: the origin pair and each
    middle first point with the next target. None for k=1 or zero matrix."""
    fe = ext.extensions[l]
    if ext.is_trivial(l) or len(fe.star.targets) < 2:
        return None, []
    targets = fe.star.targets
    origin_pair = (fe.star.origin, targets[1])
    chain = []
    k = len(targets)
    for j in range(1, k - 1):  # edges 2..k-1, 0-based
        y = ext.first_point(l, j)
        if y is not None:
            chain.append((y, targets[j + 1]))
    return origin_pair, chain


def _last_point(ext: ExtensionComplex, l: int) -> int | None:
    fe = ext.extensions[l]
    if ext.is_trivial(l) or len(fe.star.targets) < 2:
        return None
    return ext.first_point(l, len(fe.star.targets) - 1)


def colored_facet_members(ext: ExtensionComplex, l: int) -> frozenset[int]:
    """Reduced-graph vertices of the extended facet: its base vertices plus
    first points of edges 2..k."""
    members = set(ext.base.facets[l])
    fe = ext.extensions[l]
    if fe is not None:
        for j in range(1, len(fe.star.targets)):
            y = ext.first_point(l, j)
            if y is not None:
                members.add(y)
    return frozenset(members)


def is_binomial_coloration(
    ext: ExtensionComplex, col: Coloration
) -> tuple[bool, list[str]]:
    """Checks the per-facet class-intersection conditions; returns the verdict
    with one diagnostic per violated condition."""
    bad: list[str] = []
    expected = reduced_graph(ext).vertex_ids
    if col.domain != expected:
        bad.append(
            f"domain mismatch: colored {sorted(col.domain)}, "
            f"reduced vertices {sorted(expected)}"
        )
        return False, bad
    if col.num_classes > ext.base.dim + 1:
        bad.append(f"{col.num_classes} classes exceed {ext.base.dim + 1}")
        return False, bad
    a = col.assignment
    for l in range(len(ext.base.facets)):
        members = colored_facet_members(ext, l)
        origin_pair, chain = _facet_pairs(ext, l)
        last = _last_point(ext, l)
        paired: set[int] = set()
        if origin_pair is not None:
            x0, x2 = origin_pair
            got = col.members_in(a[x0], members)
            if got != {x0, x2}:
                bad.append(
                    f"facet {l}: origin class meets facet in "
                    f"{sorted(got)}, expected {sorted({x0, x2})}"
                )
            paired.update({x0, x2})
        for y, nxt in chain:
            got = col.members_in(a[y], members)
            if got != {y, nxt}:
                bad.append(
                    f"facet {l}: chain point {y} class meets facet in "
                    f"{sorted(got)}, expected {sorted({y, nxt})}"
                )
            paired.update({y, nxt})
        if last is not None:
            got = col.members_in(a[last], members)
            if got != {last}:
                bad.append(
                    f"facet {l}: last point {last} class meets facet in "
                    f"{sorted(got)}, expected singleton"
                )
            paired.add(last)
        for v in sorted(members - paired):
            got = col.members_in(a[v], members)
            if got != {v}:
                bad.append(
                    f"facet {l}: vertex {v} class meets facet in "
                    f"{sorted(got)}, expected singleton"
                )
    return not bad, bad


# ---------------------------------------------------------------------------
# G' and full validity


def g_prime_graph(ext: ExtensionComplex) -> Graph:
    """Reduced-graph edges that are also skeleton edges, on the base vertices."""
    base = skeleton_graph(ext.base)
    red = reduced_graph(ext)
    return Graph(frozenset(range(ext.n_base)), red.edges & base.edges)


def coloration_valid(ext: ExtensionComplex, col: Coloration, require_good: bool = True) -> bool:
    ok, _ = is_binomial_coloration(ext, col)
    if not ok:
        return False
    return is_good_coloration(g_prime_graph(ext), col) if require_good else True


# ---------------------------------------------------------------------------
# search


def search_binomial_coloration(
    ext: ExtensionComplex, require_good: bool = True
) -> Coloration | None:
    """Backtracking over merge groups of reduced vertices; returns the first
    coloration that passes the binomial conditions, goodness on G' (unless
    disabled), and uses every class. Forced merges: origin and chain pairs."""
    d1 = ext.base.dim + 1
    red = reduced_graph(ext)
    verts = sorted(red.vertex_ids)
    if len(verts) < d1:
        return None
    parent = {v: v for v in verts}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    facet_members: list[frozenset[int]] = []
    for l in range(len(ext.base.facets)):
        facet_members.append(colored_facet_members(ext, l))
        origin_pair, chain = _facet_pairs(ext, l)
        for u, v in ([origin_pair] if origin_pair else []) + chain:
            parent[find(u)] = find(v)

    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    glist = list(groups.values())
    # a group may meet a facet only in a designated pair or a single vertex
    for g in glist:
        for l, members in enumerate(facet_members):
            inter = frozenset(g) & members
            if len(inter) < 2:
                continue
            origin_pair, chain = _facet_pairs(ext, l)
            allowed = [frozenset(p) for p in ([origin_pair] if origin_pair else []) + chain]
            if inter not in allowed:
                return None

    deg = {v: 0 for v in verts}
    for u, v in red.edges:
        deg[u] += 1
        deg[v] += 1
    glist.sort(key=lambda g: (-(len(g) > 1), -max(deg[v] for v in g), min(g)))
    meets = [
        [l for l, members in enumerate(facet_members) if frozenset(g) & members]
        for g in glist
    ]

    color: list[int | None] = [None] * len(glist)

    def solve(i: int, used: int):
        if i == len(glist):
            if used != d1:
                return None
            amap = {v: color[gi] for gi, g in enumerate(glist) for v in g}
            cand = Coloration.from_map(d1, amap)
            return cand if coloration_valid(ext, cand, require_good) else None
        for c in range(min(used + 1, d1)):
            ok = True
            for l in meets[i]:
                for gj in range(i):
                    if color[gj] == c and l in meets[gj]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            color[i] = c
            got = solve(i + 1, max(used, c + 1))
            if got is not None:
                return got
            color[i] = None
        return None

    return solve(0, 0)


# ---------------------------------------------------------------------------
# construction for generalized d-trees


def dtree_coloration(ext: ExtensionComplex) -> Coloration:
    """Recursive coloration along a leaf order of the facets.

    Processes facets so each new one meets the already-colored part inside a
    single earlier facet; assigns the origin pair one class, chain points the
    class of the following target, everything else the lowest class unused in
    the facet, the last point dead last. Output is re-validated.
    """
    base = ext.base
    d1 = base.dim + 1
    verdict = is_generalized_d_tree(skeleton_graph(base), base.dim)
    if not verdict.verdict:
        raise NotADTree(verdict.reason or "not a generalized d-tree")
    order = quasi_tree_order(base.facets)
    if order is None:
        raise NotADTree("facets admit no leaf order")

    colors: dict[int, int] = {}

    def used_in(members: frozenset[int]) -> set[int]:
        return {colors[v] for v in members if v in colors}

    def lowest_free(members: frozenset[int]) -> int:
        used = used_in(members)
        for c in range(d1):
            if c not in used:
                return c
        raise ValidationFailed("no class left unused in facet")

    for l in order:
        members = colored_facet_members(ext, l)
        origin_pair, chain = _facet_pairs(ext, l)
        last = _last_point(ext, l)
        if origin_pair is not None:
            x0, x2 = origin_pair
            if x0 in colors and x2 in colors:
                if colors[x0] != colors[x2]:
                    raise ValidationFailed(
                        f"facet {l}: origin pair pre-colored apart"
                    )
            elif x0 in colors:
                colors[x2] = colors[x0]
            elif x2 in colors:
                colors[x0] = colors[x2]
            else:
                colors[x2] = lowest_free(members)
                colors[x0] = colors[x2]
        for v in sorted(base.facets[l]):
            if v not in colors:
                colors[v] = lowest_free(members)
        for y, nxt in chain:
            if y not in colors:
                colors[y] = colors[nxt]
        if last is not None and last not in colors:
            colors[last] = lowest_free(members)

    col = Coloration.from_map(d1, colors)
    ok, bad = is_binomial_coloration(ext, col)
    if not ok:
        raise ValidationFailed("; ".join(bad))
    return col


# ---------------------------------------------------------------------------
# reduction vectors


@dataclass(frozen=True)
class ReductionVectors:
    forms: tuple[Polynomial, ...]


def reduction_vectors(col: Coloration, ring: Ring) -> ReductionVectors:
    """g_i = sum of the variables in class i, as linear forms in ring."""
    forms = []
    for i, cls in enumerate(col.classes):
        if not cls:
            raise ValueError(f"class {i} is empty")
        forms.append(ring.linear(sorted(cls)))
    return ReductionVectors(tuple(forms))
