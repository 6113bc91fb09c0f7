"""Reduction-number machinery: the two-variable monomial rewriter along
scroll minors, system-of-parameters checking, degree-bounded containment
of m^(rho+1) in G*m^rho + B by exact linear algebra, and the end-to-end
verifier combining coloration, hypotheses, and containment.
"""
from __future__ import annotations

from dataclasses import dataclass

from .color import (
    Coloration,
    ReductionVectors,
    dtree_coloration,
    g_prime_graph,
    is_good_coloration,
    reduction_vectors,
    search_binomial_coloration,
)
from .complexes import is_generalized_d_tree, skeleton_graph
from .extension import (
    ExtensionComplex,
    IdealPresentation,
    ScrollMatrix,
    binomial_extension_ideal,
    column_minor,
    scroll_matrix,
)
from .poly import (
    Polynomial,
    Ring,
    buchberger,
    covered_columns,
    krull_dimension_lt,
    mono_divides,
    mono_mul,
    monomials_of_degree,
    rref_rows,
)


class NotInMatrix(ValueError):
    """A variable of the pair does not appear in the scroll matrix."""


class BothXVariables(ValueError):
    """Both variables are run endpoints; the rewriter handles mixed pairs."""


class WrongCount(ValueError):
    """Number of linear forms differs from the quotient dimension."""


class NotSOP(ValueError):
    """The forms are not a system of parameters modulo the ideal."""


class NoColorationFound(RuntimeError):
    """No coloration satisfying the binomial conditions exists."""


class HypothesisFailed(RuntimeError):
    """A verifier hypothesis (goodness, facet condition, SOP) is violated."""


class ContainmentFailed(RuntimeError):
    """Degree-2 containment fails; arguments carry uncovered monomials."""


# ---------------------------------------------------------------------------
# rewriter

_FAMILY_NAMES = {
    1: "x0*x1",
    2: "x_m*y (m <= block of y)",
    3: "y*y_first",
    4: "x0*y_block1",
    5: "x0*y_first",
}


@dataclass(frozen=True)
class RewriteStep:
    minor: Polynomial
    result: tuple[int, int]  # variable ids after the step


@dataclass(frozen=True)
class RewriteTrace:
    start: tuple[int, int]
    steps: tuple[RewriteStep, ...]
    final: tuple[int, int]
    family: int

    @property
    def family_name(self) -> str:
        return _FAMILY_NAMES[self.family]


def _positions(m: ScrollMatrix) -> dict[int, tuple[int, int]]:
    pos: dict[int, tuple[int, int]] = {}
    for b, block in enumerate(m.blocks):
        for i, v in enumerate(block.run):
            assert v not in pos, "runs share a variable"
            pos[v] = (b, i)
    return pos


def _is_x(m: ScrollMatrix, p: tuple[int, int]) -> bool:
    b, i = p
    return i == len(m.blocks[b].run) - 1 or p == (0, 0)


def _family(m: ScrollMatrix, p: tuple[int, int], q: tuple[int, int]) -> int | None:
    """Family number of a canonical pair, or None. p <= q in position order."""
    (pb, pi), (qb, qi) = p, q
    px, qx = _is_x(m, p), _is_x(m, q)
    if p == (0, 0):  # x_0 cases
        if qb == 0:
            return 1 if qx else 4
        if qx:
            return None  # x_0 * x_n, n >= 2: both endpoints
        return 5 if qi == 0 else None
    if px and qx:
        return None
    if px != qx:
        # lone endpoint must sit in a block no later than the inner variable
        xb = pb if px else qb
        yb = qb if px else pb
        return 2 if xb <= yb else None
    # both inner: canonical when the later one heads a later block, or when
    # both share a block (after the first) that the earlier one heads
    if qi == 0 and qb >= 1:
        return 3
    if pb == qb and pi == 0 and pb >= 1:
        return 3
    return None


def _global_column(m: ScrollMatrix, b: int, t: int) -> int:
    return sum(len(bl.run) - 1 for bl in m.blocks[:b]) + t


def modB_normal_pair(m: ScrollMatrix, u: int, v: int, ring: Ring) -> RewriteTrace:
    """Slide the product u*v along scroll minors to a canonical family.

    Same-block pairs slide apart toward the run ends; cross-block pairs slide
    the earlier variable up and the later one down. Every state not in a
    family admits exactly one slide, so the trace is deterministic.
    """
    if u == v:
        raise NotInMatrix("need two distinct variables")
    pos = _positions(m)
    if u not in pos or v not in pos:
        missing = u if u not in pos else v
        raise NotInMatrix(f"variable {ring.names[missing]!r} not in the matrix")
    p, q = sorted((pos[u], pos[v]))
    if _is_x(m, p) and _is_x(m, q):
        raise BothXVariables(
            f"{ring.names[m.blocks[p[0]].run[p[1]]]}*{ring.names[m.blocks[q[0]].run[q[1]]]}"
        )

    def var_at(t: tuple[int, int]) -> int:
        return m.blocks[t[0]].run[t[1]]

    start = (var_at(p), var_at(q))
    steps: list[RewriteStep] = []
    bound = sum(len(b.run) for b in m.blocks) ** 2
    while True:
        fam = _family(m, p, q)
        if fam is not None:
            return RewriteTrace(start, tuple(steps), (var_at(p), var_at(q)), fam)
        assert len(steps) < bound, "rewriter failed to terminate"
        (pb, pi), (qb, qi) = p, q
        if pb == qb:
            run = m.blocks[pb].run
            assert pi >= 1 and qi <= len(run) - 2, "no slide available"
            c1 = _global_column(m, pb, pi - 1)
            c2 = _global_column(m, pb, qi)
            p, q = (pb, pi - 1), (qb, qi + 1)
        else:
            assert pi <= len(m.blocks[pb].run) - 2 and qi >= 1, "no slide available"
            c1 = _global_column(m, pb, pi)
            c2 = _global_column(m, qb, qi - 1)
            p, q = (pb, pi + 1), (qb, qi - 1)
        steps.append(RewriteStep(column_minor(m, ring, c1, c2), (var_at(p), var_at(q))))


# ---------------------------------------------------------------------------
# graded spans


def _graded_coverage(
    vectors: ReductionVectors, b: IdealPresentation, rho: int
) -> tuple[list[tuple], set[tuple]]:
    """All degree-(rho+1) monomials and the subset covered by the span of
    {g_i * m : deg m = rho} and {m * gen : deg = rho+1, gen of B}.

    Monomial generators strike their multiples outright; remaining rows are
    reduced exactly over the field.
    """
    ring = b.ring
    n = ring.nvars
    deg = rho + 1
    cols = monomials_of_degree(n, deg)
    mono_gens = []
    binom_gens = []
    for g in b.generators:
        assert len({sum(m) for m in g.terms}) == 1, "generators must be homogeneous"
        (mono_gens if len(g.terms) == 1 else binom_gens).append(g)
    low_monos = [g.lm() for g in mono_gens if g.degree() <= deg]
    struck = {m for m in cols if any(mono_divides(g, m) for g in low_monos)}
    remaining = [m for m in cols if m not in struck]
    idx = {m: i for i, m in enumerate(remaining)}

    rows: list[dict[int, object]] = []

    def shifted_row(poly: Polynomial, shift: tuple) -> dict[int, object]:
        row: dict[int, object] = {}
        for mono, c in poly.terms.items():
            col = idx.get(mono_mul(mono, shift))
            if col is not None:
                row[col] = c
        return row

    for g in binom_gens:
        if g.degree() > deg:
            continue
        for m in monomials_of_degree(n, deg - g.degree()):
            row = shifted_row(g, m)
            if row:
                rows.append(row)
    for g in vectors.forms:
        for m in monomials_of_degree(n, rho):
            row = shifted_row(g, m)
            if row:
                rows.append(row)

    _, pivrows = rref_rows(rows, len(remaining), ring.field)
    covered = set(struck)
    covered.update(remaining[c] for c in covered_columns(pivrows))
    return cols, covered


def degree_containment(
    vectors: ReductionVectors, b: IdealPresentation, rho: int
) -> tuple[bool, list[str]]:
    """Exact verdict for m^(rho+1) contained in G*m^rho + B, with the
    uncovered degree-(rho+1) monomials as witnesses on failure."""
    assert rho >= 1
    cols, covered = _graded_coverage(vectors, b, rho)
    missing = [m for m in cols if m not in covered]
    return not missing, [b.ring.mono_str(m) for m in missing]


def monomial_covered(
    vectors: ReductionVectors, b: IdealPresentation, mono: tuple
) -> bool:
    """Membership of a single degree-d monomial in (G*m + B) at its degree."""
    deg = sum(mono)
    assert deg >= 2
    _, covered = _graded_coverage(vectors, b, deg - 1)
    return mono in covered


# ---------------------------------------------------------------------------
# system of parameters and reduction number


def verify_sop(vectors: ReductionVectors, b: IdealPresentation) -> bool:
    """True iff the forms cut the quotient down to dimension zero; the number
    of forms must equal the quotient dimension."""
    ring = b.ring
    gb_b = buchberger(list(b.generators), ring)
    dim = krull_dimension_lt(gb_b, ring)
    if len(vectors.forms) != dim:
        raise WrongCount(f"{len(vectors.forms)} forms for dimension {dim}")
    gb_all = buchberger(list(b.generators) + list(vectors.forms), ring)
    return krull_dimension_lt(gb_all, ring) == 0


@dataclass(frozen=True)
class ReductionReport:
    vectors: ReductionVectors
    is_sop: bool
    verdicts: tuple[tuple[int, bool], ...]  # (rho, contained)
    witnesses: tuple[tuple[int, tuple[str, ...]], ...]  # failing rho -> monomials
    reduction_number: int | None
    bound_exceeded: bool


def reduction_number(
    vectors: ReductionVectors, b: IdealPresentation, rho_max: int = 10
) -> ReductionReport:
    """Smallest rho <= rho_max with the degree containment; requires SOP."""
    if not verify_sop(vectors, b):
        raise NotSOP("forms do not generate a zero-dimensional quotient with B")
    verdicts: list[tuple[int, bool]] = []
    witnesses: list[tuple[int, tuple[str, ...]]] = []
    found: int | None = None
    for rho in range(1, rho_max + 1):
        ok, missing = degree_containment(vectors, b, rho)
        verdicts.append((rho, ok))
        if ok:
            found = rho
            break
        witnesses.append((rho, tuple(missing)))
    return ReductionReport(
        vectors=vectors,
        is_sop=True,
        verdicts=tuple(verdicts),
        witnesses=tuple(witnesses),
        reduction_number=found,
        bound_exceeded=found is None,
    )


# ---------------------------------------------------------------------------
# end-to-end verifier


@dataclass(frozen=True)
class FacetCondition:
    facet: int
    route: str  # "trivial", "single-edge", "private-origin", "degree-2-span"
    details: tuple[str, ...] = ()


@dataclass(frozen=True)
class MainTheoremReport:
    used_dtree: bool
    coloration: Coloration
    vectors: ReductionVectors
    goodness_ok: bool
    facet_conditions: tuple[FacetCondition, ...]
    reduction: ReductionReport


def _facet_condition(
    ext: ExtensionComplex,
    l: int,
    vectors: ReductionVectors,
    b: IdealPresentation,
    ring: Ring,
) -> FacetCondition:
    """Per-facet hypothesis: facets without a matrix or with one edge pass;
    otherwise the origin is private, or every product origin*first-point of
    a later edge must already lie in the degree-2 span."""
    if ext.is_trivial(l):
        return FacetCondition(l, "trivial")
    fe = ext.extensions[l]
    assert fe is not None
    if len(fe.star.targets) < 2:
        return FacetCondition(l, "single-edge")
    if ext.origin_is_private(l):
        return FacetCondition(l, "private-origin")
    mtx = scroll_matrix(ext, l)
    details = []
    for j in range(1, len(fe.star.targets)):
        y = ext.first_point(l, j)
        if y is None:
            continue
        e = [0] * ring.nvars
        e[fe.star.origin] += 1
        e[y] += 1
        if not monomial_covered(vectors, b, tuple(e)):
            raise HypothesisFailed(
                f"facet {l}: {ring.names[fe.star.origin]}*{ring.names[y]} "
                f"not in the degree-2 span"
            )
        trace = modB_normal_pair(mtx, fe.star.origin, y, ring)
        details.append(
            f"{ring.names[fe.star.origin]}*{ring.names[y]}: "
            f"{len(trace.steps)} steps to family {trace.family}"
        )
    return FacetCondition(l, "degree-2-span", tuple(details))


def verify_main_theorem(
    ext: ExtensionComplex, ring: Ring, rho_max: int = 10
) -> MainTheoremReport:
    """Full pipeline: coloration, reduction vectors, goodness on G', per-facet
    hypotheses, SOP, and the reduction number (expected 1 when hypotheses hold)."""
    base = ext.base
    use_dtree = is_generalized_d_tree(skeleton_graph(base), base.dim).verdict
    if use_dtree:
        col = dtree_coloration(ext)
    else:
        col = search_binomial_coloration(ext)
        if col is None:
            raise NoColorationFound("no binomial coloration exists")
    vectors = reduction_vectors(col, ring)
    b = binomial_extension_ideal(ext, ring)
    good = is_good_coloration(g_prime_graph(ext), col)
    if not good:
        raise HypothesisFailed("coloration is not good on G'")
    conditions = tuple(
        _facet_condition(ext, l, vectors, b, ring)
        for l in range(len(base.facets))
    )
    if not verify_sop(vectors, b):
        raise HypothesisFailed("reduction vectors are not a system of parameters")
    ok, missing = degree_containment(vectors, b, 1)
    if not ok:
        raise ContainmentFailed("uncovered degree-2 monomials: " + ", ".join(missing))
    report = reduction_number(vectors, b, rho_max)
    assert report.reduction_number == 1
    return MainTheoremReport(
        used_dtree=use_dtree,
        coloration=col,
        vectors=vectors,
        goodness_ok=good,
        facet_conditions=conditions,
        reduction=report,
    )
