"""Exact multivariate polynomial engine: prime-field/rational arithmetic,
monomial orders, reduced Groebner bases, elimination, and Hilbert data.

Monomials are exponent tuples over a fixed variable list owned by a Ring.
Every operation is deterministic: identical inputs give identical output,
including generator order inside computed bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb


class OrderMismatch(ValueError):
    """Operands live in different rings (variables, field, or order differ)."""


# ---------------------------------------------------------------------------
# coefficient fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 32003

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    @property
    def name(self) -> str:
        return f"gf({self.p})"

    def of(self, a) -> int:
        if isinstance(a, Fraction):
            return self.of(a.numerator) * self.inv(self.of(a.denominator)) % self.p
        return int(a) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    zero = 0
    one = 1

    def to_str(self, a: int) -> str:
        # symmetric representative keeps binomials readable (p-1 prints as -1)
        return str(a - self.p if a > self.p // 2 else a)


@dataclass(frozen=True)
class RationalField:
    @property
    def name(self) -> str:
        return "rational"

    def of(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    zero = Fraction(0)
    one = Fraction(1)

    def to_str(self, a: Fraction) -> str:
        return str(a)


def field_by_name(spec) -> PrimeField | RationalField:
    if spec == "rational":
        return RationalField()
    return PrimeField(int(spec))


# ---------------------------------------------------------------------------
# monomials and orders


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple | None:
    q = tuple(x - y for x, y in zip(a, b))
    return q if all(e >= 0 for e in q) else None


def mono_divides(b: tuple, a: tuple) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on exponent tuples; bigger key = bigger monomial.

    kinds: lex, deglex, degrevlex, and elim (block order whose first
    variable dominates, with `inner` ordering the remaining variables;
    internal to elimination).
    """

    kind: str = "degrevlex"
    inner: str = "degrevlex"

    def __post_init__(self) -> None:
        if self.kind not in ("lex", "deglex", "degrevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        assert self.inner in ("lex", "deglex", "degrevlex")

    def key(self, m: tuple):
        if self.kind == "lex":
            return m
        if self.kind == "deglex":
            return (sum(m), m)
        if self.kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        return (m[0], MonomialOrder(self.inner).key(m[1:]))


# ---------------------------------------------------------------------------
# ring and polynomials


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]
    field: PrimeField | RationalField
    order: MonomialOrder = MonomialOrder("degrevlex")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def monomial(self, exps: tuple, coeff=1) -> "Polynomial":
        assert len(exps) == self.nvars
        c = self.field.of(coeff)
        return Polynomial(self, {} if self.field.is_zero(c) else {tuple(exps): c})

    def var(self, i: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(tuple(exps))

    def linear(self, var_ids) -> "Polynomial":
        p = self.zero()
        for i in var_ids:
            p = p.add(self.var(i))
        return p

    def mono_str(self, m: tuple) -> str:
        parts = [
            self.names[i] if e == 1 else f"{self.names[i]}^{e}"
            for i, e in enumerate(m)
            if e > 0
        ]
        return "*".join(parts) if parts else "1"


class Polynomial:
    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lt = None

    def is_zero(self) -> bool:
        return not self.terms

    def lt(self) -> tuple:
        """(monomial, coefficient) of the leading term."""
        if self._lt is None:
            assert self.terms, "zero polynomial has no leading term"
            m = max(self.terms, key=self.ring.order.key)
            self._lt = (m, self.terms[m])
        return self._lt

    def lm(self) -> tuple:
        return self.lt()[0]

    def degree(self) -> int:
        return max((mono_deg(m) for m in self.terms), default=-1)

    def _same_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise OrderMismatch("polynomials from different rings")

    def add(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        f = self.ring.field
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(t.get(m, f.zero), c)
            if f.is_zero(s):
                t.pop(m, None)
            else:
                t[m] = s
        return Polynomial(self.ring, t)

    def neg(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def sub(self, other: "Polynomial") -> "Polynomial":
        return self.add(other.neg())

    def mul_term(self, mono: tuple, coeff) -> "Polynomial":
        f = self.ring.field
        c0 = f.of(coeff)
        if f.is_zero(c0):
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): f.mul(c, c0) for m, c in self.terms.items()}
        )

    def mul(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        out = self.ring.zero()
        for m, c in other.terms.items():
            out = out.add(self.mul_term(m, c))
        return out

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        _, c = self.lt()
        return self.mul_term((0,) * self.ring.nvars, self.ring.field.inv(c))

    def sorted_terms(self) -> list[tuple]:
        return sorted(self.terms.items(), key=lambda mc: self.ring.order.key(mc[0]), reverse=True)

    def sort_key(self):
        f = self.ring.field
        return tuple(
            (self.ring.order.key(m), str(c)) for m, c in self.sorted_terms()
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"<poly {self}>"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        f = self.ring.field
        out = []
        for m, c in self.sorted_terms():
            cs = f.to_str(c)
            mono = self.ring.mono_str(m)
            if mono == "1":
                piece = cs
            elif cs == "1":
                piece = mono
            elif cs == "-1":
                piece = f"-{mono}"
            else:
                piece = f"{cs}*{mono}"
            if out and not piece.startswith("-"):
                out.append(f"+ {piece}")
            elif out:
                out.append(f"- {piece[1:]}")
            else:
                out.append(piece)
        return " ".join(out)


# ---------------------------------------------------------------------------
# division and Buchberger

# Work counters: input-determined, unlike wall-clock time, so reports built
# from them stay byte-identical across runs.
counters: dict[str, int] = {}


def reset_counters() -> None:
    counters.clear()


def _bump(key: str, n: int = 1) -> None:
    counters[key] = counters.get(key, 0) + n


def normal_form(f: Polynomial, basis: list[Polynomial]) -> Polynomial:
    """Remainder of multivariate division of f by basis (in listed order)."""
    _bump("normal_forms")
    for g in basis:
        if g.ring != f.ring:
            raise OrderMismatch("basis polynomial from a different ring")
    field = f.ring.field
    rem = f.ring.zero()
    h = f
    lts = [(g.lm(), g.lt()[1], g) for g in basis if not g.is_zero()]
    while not h.is_zero():
        hm, hc = h.lt()
        hit = None
        for gm, gc, g in lts:
            q = mono_div(hm, gm)
            if q is not None:
                hit = (q, gc, g)
                break
        if hit is None:
            rem = rem.add(f.ring.monomial(hm, hc))
            h = h.sub(f.ring.monomial(hm, hc))
        else:
            q, gc, g = hit
            h = h.sub(g.mul_term(q, field.mul(hc, field.inv(gc))))
    return rem


def ideal_membership(f: Polynomial, basis: list[Polynomial]) -> bool:
    return normal_form(f, basis).is_zero()


def _s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    fm, fc = f.lt()
    gm, gc = g.lt()
    field = f.ring.field
    l = mono_lcm(fm, gm)
    a = f.mul_term(mono_div(l, fm), field.inv(fc))
    b = g.mul_term(mono_div(l, gm), field.inv(gc))
    return a.sub(b)


def _interreduce(polys: list[Polynomial]) -> list[Polynomial]:
    """Reduce to the unique reduced monic basis of the same leading-term ideal."""
    work = [p.monic() for p in polys if not p.is_zero()]
    # drop redundant leading terms (keep the smaller polynomial on ties)
    work.sort(key=lambda p: p.sort_key())
    minimal: list[Polynomial] = []
    for p in work:
        if not any(mono_divides(q.lm(), p.lm()) for q in minimal):
            minimal = [q for q in minimal if not mono_divides(p.lm(), q.lm())]
            minimal.append(p)
    # tail-reduce to fixpoint
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(minimal):
            rest = minimal[:i] + minimal[i + 1 :]
            r = normal_form(p, rest).monic()
            if r != p:
                assert not r.is_zero(), "leading terms were minimal"
                minimal[i] = r
                changed = True
    minimal.sort(key=lambda p: p.ring.order.key(p.lm()), reverse=True)
    return minimal


def buchberger(generators: list[Polynomial], ring: Ring | None = None) -> list[Polynomial]:
    """Unique reduced monic Groebner basis, independent of generator order.

    Normal selection (pairs by lcm degree, then lcm, then indices); applies
    the coprimality criterion and the chain criterion over treated pairs.
    """
    gens = [g for g in generators if not g.is_zero()]
    if ring is None:
        assert gens, "empty generator list needs an explicit ring"
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise OrderMismatch("generator from a different ring")
    # progressive reduction keeps the ideal intact (unlike dropping a
    # generator because its leading term repeats, which is only sound
    # once the list is a Groebner basis)
    basis: list[Polynomial] = []
    for g in sorted(gens, key=lambda p: p.sort_key()):
        r = normal_form(g, basis)
        if not r.is_zero():
            basis.append(r.monic())
    if not basis:
        return []

    def lcm_of(i: int, j: int) -> tuple:
        return mono_lcm(basis[i].lm(), basis[j].lm())

    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    treated: set[tuple[int, int]] = set()
    while pending:
        i, j = min(
            pending,
            key=lambda ij: (
                mono_deg(lcm_of(*ij)),
                ring.order.key(lcm_of(*ij)),
                ij,
            ),
        )
        pending.discard((i, j))
        treated.add((i, j))
        _bump("s_pairs")
        l = lcm_of(i, j)
        if l == mono_mul(basis[i].lm(), basis[j].lm()):
            continue  # coprime leading terms
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(basis[k].lm(), l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in treated and b in treated and a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        r = normal_form(_s_polynomial(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        basis.append(r.monic())
        n = len(basis) - 1
        pending.update((k, n) for k in range(n))
    return _interreduce(basis)


def groebner_equal(a: list[Polynomial], b: list[Polynomial]) -> bool:
    return [p.sort_key() for p in a] == [p.sort_key() for p in b]


# ---------------------------------------------------------------------------
# elimination / intersection


def _to_elim_ring(p: Polynomial, ext: Ring, side) -> Polynomial:
    """Embed p with a fresh first variable t; side scales by t or (1-t)."""
    f = ext.field
    terms = {}
    for m, c in p.terms.items():
        terms[(0,) + m] = c
    q = Polynomial(ext, terms)
    t = ext.var(0)
    if side == "t":
        return q.mul(t)
    return q.sub(q.mul(t))  # (1 - t) * p


def ideal_intersection(
    i_gens: list[Polynomial], j_gens: list[Polynomial], ring: Ring
) -> list[Polynomial]:
    """Reduced basis of I cap J via elimination of t from t*I + (1-t)*J."""
    ext = Ring(("@t",) + ring.names, ring.field, MonomialOrder("elim", ring.order.kind))
    gens = [_to_elim_ring(p, ext, "t") for p in i_gens]
    gens += [_to_elim_ring(p, ext, "1-t") for p in j_gens]
    gb = buchberger(gens, ext)
    kept = []
    for p in gb:
        if all(m[0] == 0 for m in p.terms):
            kept.append(Polynomial(ring, {m[1:]: c for m, c in p.terms.items()}))
    return _interreduce(kept)


def ideal_intersection_many(gen_lists: list[list[Polynomial]], ring: Ring) -> list[Polynomial]:
    assert gen_lists, "need at least one ideal"
    acc = buchberger(gen_lists[0], ring)
    for gens in gen_lists[1:]:
        acc = ideal_intersection(acc, gens, ring)
    return acc


# ---------------------------------------------------------------------------
# Hilbert data of the leading-term ideal


@dataclass(frozen=True)
class HilbertData:
    dimension: int
    codimension: int
    degree: int
    numerator: tuple[int, ...]  # Hilbert series numerator over (1-t)^nvars


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _poly_shift(a: tuple[int, ...], k: int) -> tuple[int, ...]:
    return (0,) * k + a


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _minimalize(monos) -> tuple[tuple, ...]:
    ms = sorted(set(monos), key=lambda m: (mono_deg(m), m))
    out: list[tuple] = []
    for m in ms:
        if not any(mono_divides(q, m) for q in out):
            out.append(m)
    return tuple(out)


def _hilbert_numerator(gens: tuple[tuple, ...], memo: dict) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if gens in memo:
        return memo[gens]
    coprime = all(
        not any(x and y for x, y in zip(a, b)) for a, b in combinations(gens, 2)
    )
    if coprime:
        out = (1,)
        for m in gens:
            factor = [1] + [0] * (mono_deg(m) - 1) + [-1]
            out = _poly_mul(out, tuple(factor))
        memo[gens] = out
        return out
    n = len(gens[0])
    counts = [sum(1 for m in gens if m[v] > 0) for v in range(n)]
    pivot = max(range(n), key=lambda v: (counts[v], -v))
    plus = _minimalize(
        [m for m in gens if m[pivot] == 0]
        + [tuple(1 if v == pivot else 0 for v in range(n))]
    )
    quot = _minimalize(
        tuple(e - 1 if v == pivot else e for v, e in enumerate(m)) if m[pivot] > 0 else m
        for m in gens
    )
    out = _poly_add(
        _hilbert_numerator(plus, memo), _poly_shift(_hilbert_numerator(quot, memo), 1)
    )
    memo[gens] = out
    return out


def hilbert_data(gb: list[Polynomial], ring: Ring) -> HilbertData:
    gens = _minimalize([g.lm() for g in gb])
    if any(mono_deg(m) == 0 for m in gens):
        raise ValueError("unit ideal has no Hilbert data")
    trim = list(_hilbert_numerator(gens, {}))
    while trim and trim[-1] == 0:
        trim = trim[:-1]
    num = tuple(trim) if trim else (0,)
    codim = 0
    q = list(num)
    while sum(q) == 0:
        # divide by (1 - t): running prefix sums
        acc = 0
        out = []
        for c in q[:-1]:
            acc += c
            out.append(acc)
        assert acc + q[-1] == 0, "not divisible by (1 - t)"
        q = out or [0]
        codim += 1
    degree = sum(q)
    assert degree >= 1, "nonzero quotient has positive degree"
    return HilbertData(
        dimension=ring.nvars - codim,
        codimension=codim,
        degree=degree,
        numerator=num,
    )


def krull_dimension_lt(gb: list[Polynomial], ring: Ring) -> int:
    """Largest variable set supporting no leading monomial (independent set)."""
    supports = _minimal_supports([g.lm() for g in gb])
    if any(not s for s in supports):
        raise ValueError("unit ideal has no dimension")
    return ring.nvars - _min_hitting_set(supports)


def _minimal_supports(monos) -> list[frozenset[int]]:
    sups = {frozenset(i for i, e in enumerate(m) if e) for m in monos}
    return [s for s in sups if not any(t < s for t in sups)]


def _min_hitting_set(supports: list[frozenset[int]]) -> int:
    if not supports:
        return 0
    best = len(frozenset().union(*supports))

    def dfs(hit: frozenset[int], size: int) -> None:
        nonlocal best
        if size >= best:
            return
        left = [s for s in supports if not (s & hit)]
        if not left:
            best = size
            return
        s = min(left, key=lambda t: (len(t), sorted(t)))
        for v in sorted(s):
            dfs(hit | {v}, size + 1)

    dfs(frozenset(), 0)
    return best


# ---------------------------------------------------------------------------
# graded pieces and exact rank


def monomials_of_degree(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of the given total degree, deterministic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    assert len(out) == comb(nvars + degree - 1, degree)
    return out


def rref_rows(rows: list[dict[int, object]], ncols: int, field) -> tuple[int, dict[int, dict]]:
    """Reduced row echelon form of sparse rows; returns (rank, pivot -> row).

    Prime fields route through numpy (dense, vectorized mod-p arithmetic);
    rationals use exact Fraction elimination.
    """
    rows = [r for r in rows if r]
    _bump("rank_rows", len(rows))
    if isinstance(field, PrimeField):
        return _rref_gf(rows, ncols, field)
    return _rref_exact(rows, ncols, field)


def _rref_gf(rows, ncols, field) -> tuple[int, dict[int, dict]]:
    import numpy as np

    p = field.p
    if not rows:
        return 0, {}
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            a[i, c] = v % p
    rank = 0
    pivots: list[int] = []
    for c in range(ncols):
        if rank == len(rows):
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        i = rank + int(nz[0])
        a[[rank, i]] = a[[i, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[rank] = 0
        a = (a - np.outer(col, a[rank])) % p
        pivots.append(c)
        rank += 1
    out = {}
    for r, c in enumerate(pivots):
        nz = np.nonzero(a[r])[0]
        out[c] = {int(j): int(a[r, j]) for j in nz}
    return rank, out


def _rref_exact(rows, ncols, field) -> tuple[int, dict[int, dict]]:
    work = [dict(r) for r in rows]
    pivrows: dict[int, dict] = {}
    for c in range(ncols):
        pick = None
        for i, r in enumerate(work):
            if r.get(c):
                pick = i
                break
        if pick is None:
            continue
        row = work.pop(pick)
        inv = field.inv(row[c])
        row = {j: field.mul(v, inv) for j, v in row.items()}
        for r in work:
            f = r.get(c)
            if f:
                for j, v in row.items():
                    nv = field.sub(r.get(j, field.zero), field.mul(f, v))
                    if field.is_zero(nv):
                        r.pop(j, None)
                    else:
                        r[j] = nv
        for pc, pr in pivrows.items():
            f = pr.get(c)
            if f:
                for j, v in row.items():
                    nv = field.sub(pr.get(j, field.zero), field.mul(f, v))
                    if field.is_zero(nv):
                        pr.pop(j, None)
                    else:
                        pr[j] = nv
        pivrows[c] = row
        work = [r for r in work if r]
    return len(pivrows), pivrows


def covered_columns(pivrows: dict[int, dict]) -> set[int]:
    """Columns whose unit vector lies in the row space (RREF row is a unit)."""
    return {c for c, row in pivrows.items() if len(row) == 1}
