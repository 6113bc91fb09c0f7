"""Shared fixture loaders and seeded random model generators."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from binomext import (
    ExtensionComplex,
    FacetExtension,
    ProperStar,
    SimplicialComplex,
    build_extension_complex,
    clique_complex,
    graph,
    proper_edge_stars,
    validate_complex,
)
from binomext.cli import InputDocument, Model, build_model, parse_input

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_model(name: str) -> Model:
    return build_model(parse_input(str(FIXTURES / f"{name}.json")))


@pytest.fixture(scope="session")
def greduit() -> Model:
    return load_model("greduit")


@pytest.fixture(scope="session")
def greduit1() -> Model:
    return load_model("greduit1")


@pytest.fixture(scope="session")
def cycles_pair() -> Model:
    return load_model("cycles_pair")


@pytest.fixture(scope="session")
def cycles_full() -> Model:
    return load_model("cycles_full")


ALL_FIXTURE_NAMES = ("greduit", "greduit1", "cycles_pair", "cycles_full")


# ---------------------------------------------------------------------------
# seeded random generators


def _attach_random_extensions(
    rng: random.Random,
    base: SimplicialComplex,
    max_points: int,
    force_points: bool = False,
) -> ExtensionComplex:
    """Extend a random subset of facets along random proper-edge stars."""
    stars = proper_edge_stars(base)
    exts: list[FacetExtension] = []
    counter = 0
    for l in range(len(base.facets)):
        if not stars[l] or rng.random() < 0.3:
            continue
        star = rng.choice(stars[l])
        k = rng.randint(1, len(star.targets))
        targets = tuple(sorted(rng.sample(star.targets, k)))
        points = []
        for _ in targets:
            size = rng.randint(0, max_points)
            points.append(tuple(f"p{(counter := counter + 1)}" for _ in range(size)))
        if force_points and all(not p for p in points):
            points[-1] = (f"p{(counter := counter + 1)}",)
        exts.append(FacetExtension(ProperStar(l, star.origin, targets), tuple(points)))
    return build_extension_complex(base, exts)


def random_small_extension(seed: int) -> ExtensionComplex:
    """Random complex with <= 8 base vertices, <= 3 facets, <= 2 points/edge."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(3, 8)
        names = [f"v{i}" for i in range(n)]
        raw = []
        for _ in range(rng.randint(1, 3)):
            size = rng.randint(2, min(4, n))
            raw.append(rng.sample(names, size))
        used = sorted({x for f in raw for x in f})
        base = validate_complex([sorted(f) for f in raw])
        if len(base.facets) > 3 or len(used) > 8:
            continue
        return _attach_random_extensions(rng, base, max_points=2)


def random_scroll_extension(seed: int) -> ExtensionComplex:
    """Single simplex, one extension: <= 4 blocks, <= 3 columns per block."""
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    names = [f"v{i}" for i in range(k + 1)]
    base = validate_complex([names])
    origin = 0
    targets = tuple(range(1, k + 1))
    counter = 0
    points = []
    for _ in targets:
        size = rng.randint(0, 2)
        points.append(tuple(f"p{(counter := counter + 1)}" for _ in range(size)))
    if all(not p for p in points):
        points[rng.randrange(len(points))] = (f"p{(counter := counter + 1)}",)
    ext = FacetExtension(ProperStar(0, origin, targets), tuple(points))
    return build_extension_complex(base, [ext])


def random_dtree_extension(seed: int) -> ExtensionComplex:
    """Extension of a generalized d-tree clique complex, d <= 3, <= 6 facets."""
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    vertices = list(range(d + 1))
    edges = {(i, j) for i in vertices for j in vertices if i < j}
    facets = [frozenset(vertices)]
    for _ in range(rng.randint(0, 5)):
        host = rng.choice(facets)
        size = rng.randint(1, d)
        sub = rng.sample(sorted(host), size)
        v = len(vertices)
        vertices.append(v)
        edges.update((u, v) for u in sub)
        facets.append(frozenset(sub) | {v})
    g = graph(vertices, edges)
    base = clique_complex(g)
    return _attach_random_extensions(rng, base, max_points=2)
