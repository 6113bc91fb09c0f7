"""Extension complexes: facets stretched along proper edges by chains of new
points, the scroll matrices those chains define, their 2x2 minor ideals, the
per-facet component ideals, the binomial extension ideal, and the reduced
graph used by colorations.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    Graph,
    ProperStar,
    SimplicialComplex,
    Vertex,
    graph,
    is_proper_edge,
    skeleton_graph,
    stanley_reisner_generators,
)
from .poly import MonomialOrder, Polynomial, Ring


class NotAProperEdge(ValueError):
    """A declared extension edge also lies in another facet."""


class OriginMismatch(ValueError):
    """Origin/target ids do not form edges of the declared facet."""


class DuplicatePointName(ValueError):
    """A new point name collides with a vertex or another point."""


class EmptyExtension(ValueError):
    """The facet carries no new points, so it has no scroll matrix."""


@dataclass(frozen=True)
class FacetExtension:
    """One facet's extension data: proper star plus point names per edge."""

    star: ProperStar
    points: tuple[tuple[str, ...], ...]  # parallel to star.targets

    def __post_init__(self) -> None:
        assert len(self.points) == len(self.star.targets)

    @property
    def total_points(self) -> int:
        return sum(len(p) for p in self.points)


@dataclass(frozen=True)
class ExtensionComplex:
    base: SimplicialComplex
    extensions: tuple[FacetExtension | None, ...]  # slot per base facet
    var_names: tuple[str, ...]  # base vertices first, then points
    point_ids: tuple[tuple[tuple[int, ...], ...] | None, ...]

    @property
    def n_base(self) -> int:
        return len(self.base.vertices)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def facet_points(self, l: int) -> tuple[int, ...]:
        ids = self.point_ids[l]
        return tuple(v for edge in ids for v in edge) if ids else ()

    def extended_facet(self, l: int) -> frozenset[int]:
        return self.base.facets[l] | frozenset(self.facet_points(l))

    def is_trivial(self, l: int) -> bool:
        fe = self.extensions[l]
        return fe is None or fe.total_points == 0

    def first_point(self, l: int, j: int) -> int | None:
        """Variable id of y_(j,1) for edge index j (0-based), if present."""
        ids = self.point_ids[l]
        if ids is None or not ids[j]:
            return None
        return ids[j][0]

    def origin_is_private(self, l: int) -> bool:
        """The origin lies in facet l only (interior vertex)."""
        fe = self.extensions[l]
        assert fe is not None
        o = fe.star.origin
        return not any(o in f for i, f in enumerate(self.base.facets) if i != l)

    def extended_complex(self) -> SimplicialComplex:
        vertices = tuple(Vertex(i, n) for i, n in enumerate(self.var_names))
        facets = tuple(self.extended_facet(l) for l in range(len(self.base.facets)))
        return SimplicialComplex(vertices, facets)

    def ring(self, field, order: str = "degrevlex") -> Ring:
        return Ring(self.var_names, field, MonomialOrder(order))


def build_extension_complex(
    base: SimplicialComplex, exts: list[FacetExtension]
) -> ExtensionComplex:
    """Validate extension data against the base complex and assign point ids."""
    slots: list[FacetExtension | None] = [None] * len(base.facets)
    for fe in exts:
        l = fe.star.facet
        assert 0 <= l < len(base.facets), f"facet index {l} out of range"
        assert slots[l] is None, f"facet {l} extended twice"
        f = base.facets[l]
        if fe.star.origin not in f:
            raise OriginMismatch(
                f"origin {base.name_of(fe.star.origin)!r} not in facet {base.names(f)}"
            )
        if not fe.star.targets:
            raise OriginMismatch("extension star declares no targets")
        seen: set[int] = set()
        for t in fe.star.targets:
            if t == fe.star.origin or t not in f or t in seen:
                raise OriginMismatch(
                    f"bad target {base.name_of(t) if t < len(base.vertices) else t!r} "
                    f"for facet {base.names(f)}"
                )
            seen.add(t)
            if not is_proper_edge(base, l, fe.star.origin, t):
                raise NotAProperEdge(
                    f"edge ({base.name_of(fe.star.origin)}, {base.name_of(t)}) "
                    f"lies in another facet"
                )
        slots[l] = fe

    names = [v.name for v in base.vertices]
    used = set(names)
    point_ids: list[tuple[tuple[int, ...], ...] | None] = [None] * len(base.facets)
    for l, fe in enumerate(slots):
        if fe is None:
            continue
        per_edge: list[tuple[int, ...]] = []
        for edge_names in fe.points:
            ids = []
            for nm in edge_names:
                if nm in used:
                    raise DuplicatePointName(f"point name {nm!r} already in use")
                used.add(nm)
                ids.append(len(names))
                names.append(nm)
            per_edge.append(tuple(ids))
        point_ids[l] = tuple(per_edge)
    return ExtensionComplex(base, tuple(slots), tuple(names), tuple(point_ids))


# ---------------------------------------------------------------------------
# scroll matrices and minors


@dataclass(frozen=True)
class ScrollBlock:
    run: tuple[int, ...]  # consecutive pairs are the block's columns

    def __post_init__(self) -> None:
        assert len(self.run) >= 2 and len(set(self.run)) == len(self.run)

    @property
    def columns(self) -> list[tuple[int, int]]:
        return [(self.run[k], self.run[k + 1]) for k in range(len(self.run) - 1)]


@dataclass(frozen=True)
class ScrollMatrix:
    facet: int
    blocks: tuple[ScrollBlock, ...]

    @property
    def columns(self) -> list[tuple[int, int]]:
        return [c for b in self.blocks for c in b.columns]


def scroll_matrix(ext: ExtensionComplex, l: int) -> ScrollMatrix:
    """Blocks for facet l: the first runs origin, first-edge points, first
    target; each later edge with points runs its points into its target."""
    fe = ext.extensions[l]
    if fe is None or fe.total_points == 0:
        raise EmptyExtension(f"facet {l} has no new points")
    ids = ext.point_ids[l]
    assert ids is not None
    blocks = [ScrollBlock((fe.star.origin, *ids[0], fe.star.targets[0]))]
    for j in range(1, len(fe.star.targets)):
        if ids[j]:
            blocks.append(ScrollBlock((*ids[j], fe.star.targets[j])))
    return ScrollMatrix(l, tuple(blocks))


def _pair_monomial(ring: Ring, i: int, j: int) -> Polynomial:
    e = [0] * ring.nvars
    e[i] += 1
    e[j] += 1
    return ring.monomial(tuple(e))


def column_minor(m: ScrollMatrix, ring: Ring, c1: int, c2: int) -> Polynomial:
    """2x2 determinant of columns c1 < c2: top1*bot2 - bot1*top2."""
    assert c1 < c2
    cols = m.columns
    (t1, b1), (t2, b2) = cols[c1], cols[c2]
    return _pair_monomial(ring, t1, b2).sub(_pair_monomial(ring, b1, t2))


def scroll_minors(m: ScrollMatrix, ring: Ring) -> list[Polynomial]:
    """All 2x2 determinants over column pairs, in lexicographic pair order."""
    out: list[Polynomial] = []
    for c1, c2 in combinations(range(len(m.columns)), 2):
        p = column_minor(m, ring, c1, c2)
        if p not in out:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class IdealPresentation:
    ring: Ring
    generators: tuple[Polynomial, ...]
    label: str = ""


def facet_minors(ext: ExtensionComplex, ring: Ring, l: int) -> list[Polynomial]:
    if ext.is_trivial(l):
        return []
    return scroll_minors(scroll_matrix(ext, l), ring)


def component_ideals(ext: ExtensionComplex, ring: Ring) -> list[IdealPresentation]:
    """Per facet: scroll minors plus every variable outside the extended facet."""
    out = []
    for l in range(len(ext.base.facets)):
        gens = facet_minors(ext, ring, l)
        inside = ext.extended_facet(l)
        gens += [ring.var(v) for v in range(ext.nvars) if v not in inside]
        out.append(IdealPresentation(ring, tuple(gens), label=f"J_{l}"))
    return out


def binomial_extension_ideal(ext: ExtensionComplex, ring: Ring) -> IdealPresentation:
    """All scroll minors together with the minimal non-faces of the extended
    complex (as square-free monomials)."""
    gens: list[Polynomial] = []
    for l in range(len(ext.base.facets)):
        for p in facet_minors(ext, ring, l):
            if p not in gens:
                gens.append(p)
    for nf in stanley_reisner_generators(ext.extended_complex()):
        e = [0] * ring.nvars
        for v in nf:
            e[v] = 1
        gens.append(ring.monomial(tuple(e)))
    return IdealPresentation(ring, tuple(gens), label="B")


# ---------------------------------------------------------------------------
# reduced graph


def reduced_graph(ext: ExtensionComplex) -> Graph:
    """Base skeleton with, per nontrivial facet with targets t_1..t_k: edges
    (origin, t_j) dropped for j >= 2, and the first point of each such edge
    joined to the origin and to t_2."""
    base_edges = set(skeleton_graph(ext.base).edges)
    vertices = set(range(ext.n_base))
    added: set[tuple[int, int]] = set()
    dropped: set[tuple[int, int]] = set()
    for l in range(len(ext.base.facets)):
        if ext.is_trivial(l):
            continue
        fe = ext.extensions[l]
        assert fe is not None
        o = fe.star.origin
        targets = fe.star.targets
        for j in range(1, len(targets)):
            t = targets[j]
            dropped.add((min(o, t), max(o, t)))
            y = ext.first_point(l, j)
            if y is not None:
                vertices.add(y)
                added.add((min(o, y), max(o, y)))
                t2 = targets[1]
                added.add((min(t2, y), max(t2, y)))
    edges = (base_edges - dropped) | added
    return graph(vertices, edges)
