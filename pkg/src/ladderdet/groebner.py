"""Buchberger-based ideal arithmetic and monomial-ideal utilities.

Normal forms, reduced Groebner bases (normal pair selection with sugar
tiebreak, coprime-lead and chain criteria via Gebauer-Moeller updates),
ideal sums / intersections / colons / saturations, Frobenius bracket
powers, and squarefree monomial-ideal combinatorics (minimal primes,
dimension, symbolic powers).
"""

from __future__ import annotations

import heapq
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .fields import Field
from .poly import (
    ANTIDIAG,
    ELIM,
    MONO_ONE,
    Polynomial,
    TermOrder,
    Variable,
    mono_degree,
    mono_divides,
    mono_div,
    mono_has_aux,
    mono_is_squarefree,
    mono_lcm,
    mono_mul,
    mono_pow,
    mono_radical,
    var_by_key,
)


class InstanceTooLarge(RuntimeError):
    """A Groebner task exceeded its time budget or iteration cap."""


_local = threading.local()


@contextmanager
def time_limit(seconds: float | None):
    """Bound the wall-clock time of Groebner tasks on this thread."""
    old = getattr(_local, "deadline", None)
    _local.deadline = None if seconds is None else time.monotonic() + seconds
    try:
        yield
    finally:
        _local.deadline = old


def _check_deadline():
    deadline = getattr(_local, "deadline", None)
    if deadline is not None and time.monotonic() > deadline:
        raise InstanceTooLarge("instance too large: Groebner task exceeded its time budget")


# ---------------------------------------------------------------------------
# Division


def divide(f: Polynomial, basis, order: TermOrder = ANTIDIAG):
    """Division with quotients: f = sum(q_i * b_i) + r, no term of r
    divisible by any basis leading term."""
    field = f.field
    quots = [dict() for _ in basis]
    rem = {}
    leads = [g.leading_term(order) for g in basis]
    work = dict(f.terms)
    native = order.is_native
    keyfn = order.key
    while work:
        m = max(work) if native else max(work, key=keyfn)
        c = work.pop(m)
        for gi, (lm, lc) in enumerate(leads):
            u = mono_div(m, lm)
            if u is not None:
                q = field.mul(c, field.inv(lc))
                quots[gi][u] = field.add(quots[gi].get(u, field.zero), q)
                g = basis[gi]
                for tm, tc in g.terms.items():
                    if tm == lm:
                        continue
                    mm = mono_mul(tm, u)
                    v = field.sub(work.get(mm, field.zero), field.mul(tc, q))
                    if v:
                        work[mm] = v
                    elif mm in work:
                        del work[mm]
                break
        else:
            rem[m] = c
    return [Polynomial(field, q) for q in quots], Polynomial(field, rem)


class Reducer:
    """Divisor table for repeated normal forms against a (growing) basis.

    Divisors are indexed by the greatest variable of their leading
    monomial, so candidate lookups touch only entries that can divide.
    """

    __slots__ = ("field", "order", "by_first", "const")

    def __init__(self, basis=(), order: TermOrder = ANTIDIAG):
        self.order = order
        self.by_first: dict = {}
        self.const = None
        self.field = None
        for g in basis:
            self.add(g)

    def add(self, g: Polynomial) -> None:
        self.field = g.field
        lm, lc = g.leading_term(self.order)
        tail = [(tm, tc) for tm, tc in g.terms.items() if tm != lm]
        if lm == MONO_ONE:
            self.const = (lm, lc, tail)
        else:
            self.by_first.setdefault(lm[0][0], []).append((lm, lc, tail))

    def reduce(self, f: Polynomial) -> Polynomial:
        field = f.field
        p = field.p
        rem = {}
        work = dict(f.terms)
        native = self.order.is_native
        keyfn = self.order.key
        by_first = self.by_first
        const = self.const
        while work:
            _check_deadline()
            m = max(work) if native else max(work, key=keyfn)
            c = work.pop(m)
            hit = const
            if hit is None:
                for k, _ in m:
                    for entry in by_first.get(k, ()):
                        if mono_divides(entry[0], m):
                            hit = entry
                            break
                    if hit:
                        break
            if hit is None:
                rem[m] = c
                continue
            lm, lc, tail = hit
            u = mono_div(m, lm)
            if p is None:
                q = c / lc
                for tm, tc in tail:
                    mm = mono_mul(tm, u)
                    v = work.get(mm, 0) - tc * q
                    if v:
                        work[mm] = v
                    elif mm in work:
                        del work[mm]
            else:
                q = c * pow(lc, -1, p) % p
                for tm, tc in tail:
                    mm = mono_mul(tm, u)
                    v = (work.get(mm, 0) - tc * q) % p
                    if v:
                        work[mm] = v
                    elif mm in work:
                        del work[mm]
        return Polynomial(field, rem)


def normal_form(f: Polynomial, basis, order: TermOrder = ANTIDIAG) -> Polynomial:
    """Remainder of f on division by `basis` (no quotient bookkeeping)."""
    return Reducer(basis, order).reduce(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = ANTIDIAG) -> Polynomial:
    lmf, lcf = f.leading_term(order)
    lmg, lcg = g.leading_term(order)
    lcm = mono_lcm(lmf, lmg)
    field = f.field
    a = f.mul_term(mono_div(lcm, lmf), field.inv(lcf))
    b = g.mul_term(mono_div(lcm, lmg), field.inv(lcg))
    return a - b


# ---------------------------------------------------------------------------
# Buchberger


def _update_pairs(G, lmG, sugars, P, f, order):
    """Gebauer-Moeller pair update; returns the new pair set after adding f."""
    lmf = f.leading_term(order)[0]
    n = len(G)
    keyfn = order.key

    kept = set()
    for (i, j) in P:
        lcm_ij = mono_lcm(lmG[i], lmG[j])
        if (
            not mono_divides(lmf, lcm_ij)
            or mono_lcm(lmG[i], lmf) == lcm_ij
            or mono_lcm(lmG[j], lmf) == lcm_ij
        ):
            kept.add((i, j))

    lcm_groups: dict = {}
    for i in range(n):
        lcm_groups.setdefault(mono_lcm(lmG[i], lmf), []).append(i)
    minimal = []
    for L in sorted(lcm_groups, key=keyfn):
        if all(not mono_divides(Lmin, L) for Lmin in minimal):
            minimal.append(L)
    for L in minimal:
        members = lcm_groups[L]
        if any(mono_lcm(lmG[i], lmf) == mono_mul(lmG[i], lmf) for i in members):
            continue  # coprime-lead criterion
        kept.add((min(members), n))
    return kept


def _pair_key(i, j, lmG, sugars, order):
    lcm = mono_lcm(lmG[i], lmG[j])
    sugar = max(
        sugars[i] + mono_degree(lcm) - mono_degree(lmG[i]),
        sugars[j] + mono_degree(lcm) - mono_degree(lmG[j]),
    )
    return (order.key(lcm), sugar, i, j)


class _PairQueue:
    """Normal-selection pair queue: a heap with lazy deletion against the
    authoritative Gebauer-Moeller pair set."""

    __slots__ = ("heap", "live")

    def __init__(self):
        self.heap: list = []
        self.live: set = set()

    def sync(self, pairs, lmG, sugars, order):
        for pair in pairs - self.live:
            heapq.heappush(self.heap, (_pair_key(*pair, lmG, sugars, order), pair))
        self.live = set(pairs)

    def pop(self):
        while self.heap:
            _, pair = heapq.heappop(self.heap)
            if pair in self.live:
                self.live.discard(pair)
                return pair
        return None


def _buchberger_loop(gens, order):
    """Shared Buchberger driver; returns (G, hit_unit_ideal)."""
    field = gens[0].field
    G: list[Polynomial] = []
    lmG: list[tuple] = []
    sugars: list[int] = []
    P: set = set()
    queue = _PairQueue()
    reducer = Reducer((), order)
    for f in gens:
        if f.is_zero:
            continue
        f = f.monic(order)
        P = _update_pairs(G, lmG, sugars, P, f, order)
        G.append(f)
        reducer.add(f)
        lmG.append(f.leading_term(order)[0])
        sugars.append(f.degree())
        if lmG[-1] == MONO_ONE:
            return [Polynomial.one(field)], True
    queue.sync(P, lmG, sugars, order)

    while True:
        _check_deadline()
        pair = queue.pop()
        if pair is None:
            return G, False
        i, j = pair
        lcm = mono_lcm(lmG[i], lmG[j])
        if lcm == mono_mul(lmG[i], lmG[j]):
            continue  # coprime leads
        pair_sugar = max(
            sugars[i] + mono_degree(lcm) - mono_degree(lmG[i]),
            sugars[j] + mono_degree(lcm) - mono_degree(lmG[j]),
        )
        s = s_polynomial(G[i], G[j], order)
        r = reducer.reduce(s)
        if r.is_zero:
            continue
        r = r.monic(order)
        if r.leading_term(order)[0] == MONO_ONE:
            return [Polynomial.one(field)], True
        P = _update_pairs(G, lmG, sugars, queue.live, r, order)
        G.append(r)
        reducer.add(r)
        lmG.append(r.leading_term(order)[0])
        sugars.append(pair_sugar)
        queue.sync(P, lmG, sugars, order)


def interreduce(G, order: TermOrder = ANTIDIAG):
    """Reduced basis from a Groebner basis: minimal, monic, tails reduced."""
    G = [g.monic(order) for g in G if not g.is_zero]
    G.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    minimal = []
    for g in G:
        lm = g.leading_term(order)[0]
        if not any(mono_divides(h.leading_term(order)[0], lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order) if others else g
        out.append(r.monic(order))
    out.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return out


def buchberger(gens, order: TermOrder = ANTIDIAG):
    """Reduced Groebner basis of the ideal generated by `gens`."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    G, unit = _buchberger_loop(gens, order)
    if unit:
        return G
    return interreduce(G, order)


def is_groebner_basis(gens, order: TermOrder = ANTIDIAG) -> bool:
    """True iff every S-polynomial of `gens` reduces to zero against `gens`.

    Runs the Buchberger pair loop (with the standard criteria, which only
    discard pairs whose S-polynomials provably reduce to zero) and reports
    whether any nonzero remainder ever appears.
    """
    gens = [g for g in gens if not g.is_zero]
    if len(gens) <= 1:
        return True
    G = [g.monic(order) for g in gens]
    lmG = [g.leading_term(order)[0] for g in G]
    sugars = [g.degree() for g in G]
    reducer = Reducer(G, order)
    P = set()
    for n in range(len(G)):
        P = _update_pairs(G[:n], lmG[:n], sugars[:n], P, G[n], order)
    for i, j in sorted(P):
        _check_deadline()
        if mono_lcm(lmG[i], lmG[j]) == mono_mul(lmG[i], lmG[j]):
            continue
        s = s_polynomial(G[i], G[j], order)
        if not reducer.reduce(s).is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# Rings and ideals


@dataclass(frozen=True)
class Ring:
    """A polynomial ring: coefficient field plus a descending variable tuple."""

    field: Field
    variables: tuple[Variable, ...]

    def __post_init__(self):
        keys = [v.key for v in self.variables]
        if any(a <= b for a, b in zip(keys, keys[1:])):
            object.__setattr__(
                self, "variables", tuple(sorted(set(self.variables), key=lambda v: v.key, reverse=True))
            )

    @classmethod
    def for_grid(cls, field: Field, k: int, l: int) -> "Ring":
        from .poly import grid_var

        return cls(field, tuple(grid_var(i, j) for i in range(1, k + 1) for j in range(1, l + 1)))

    @classmethod
    def for_cells(cls, field: Field, cells) -> "Ring":
        from .poly import grid_var

        return cls(field, tuple(grid_var(i, j) for i, j in cells))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def with_aux(self, v: Variable) -> "Ring":
        return Ring(self.field, self.variables + (v,))

    def fresh_aux(self) -> Variable:
        from .poly import aux_var

        ranks = [v.rank for v in self.variables if v.is_aux]
        return aux_var("t", max(ranks) + 1 if ranks else 0)

    def maximal_ideal(self) -> "Ideal":
        gens = [Polynomial.variable(self.field, v) for v in self.variables if not v.is_aux]
        return Ideal(self, gens)

    def contains_poly(self, f: Polynomial) -> bool:
        allowed = {v.key for v in self.variables}
        return all(k in allowed for m in f.terms for k, _ in m)

    def __repr__(self):
        return f"Ring({self.field}, {len(self.variables)} vars)"


class Ideal:
    """An ideal given by generators, with cached reduced Groebner bases."""

    __slots__ = ("ring", "gens", "_cache", "_lock")

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        seen = []
        for g in gens:
            if g.is_zero:
                continue
            if g.field != ring.field:
                raise ValueError("generator field does not match ring")
            if not ring.contains_poly(g):
                raise ValueError(f"generator uses variables outside the ring: {g}")
            if g not in seen:
                seen.append(g)
        self.gens = tuple(seen)
        self._cache: dict[TermOrder, tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    # -- basics

    def groebner_basis(self, order: TermOrder = ANTIDIAG) -> tuple[Polynomial, ...]:
        with self._lock:
            basis = self._cache.get(order)
        if basis is not None:
            return basis
        basis = tuple(buchberger(self.gens, order))
        with self._lock:
            self._cache.setdefault(order, basis)
        return basis

    def _seed_basis(self, order: TermOrder, basis) -> None:
        """Install a known reduced Groebner basis (internal)."""
        with self._lock:
            self._cache[order] = tuple(basis)

    def normal_form(self, f: Polynomial, order: TermOrder = ANTIDIAG) -> Polynomial:
        basis = self.groebner_basis(order)
        return normal_form(f, basis, order) if basis else f

    def contains(self, f: Polynomial, order: TermOrder = ANTIDIAG) -> bool:
        return self.normal_form(f, order).is_zero

    def contains_ideal(self, other: "Ideal", order: TermOrder = ANTIDIAG) -> bool:
        return all(self.contains(g, order) for g in other.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self, order: TermOrder = ANTIDIAG) -> bool:
        if self.is_zero:
            return False
        basis = self.groebner_basis(order)
        return len(basis) == 1 and basis[0].leading_term(order)[0] == MONO_ONE

    def equal(self, other: "Ideal", order: TermOrder = ANTIDIAG) -> bool:
        """Ideal equality via reduced-Groebner-basis comparison."""
        self._require_same_ring(other)
        return self.groebner_basis(order) == other.groebner_basis(order)

    def _require_same_ring(self, other: "Ideal"):
        if self.ring != other.ring:
            raise ValueError("ideals live in different rings")

    # -- arithmetic

    def __add__(self, other: "Ideal") -> "Ideal":
        self._require_same_ring(other)
        return Ideal(self.ring, self.gens + other.gens)

    def power(self, n: int) -> "Ideal":
        if n < 1:
            raise ValueError("power wants n >= 1")
        gens = []
        for combo in combinations_with_replacement(self.gens, n):
            g = combo[0]
            for h in combo[1:]:
                g = g * h
            gens.append(g)
        return Ideal(self.ring, gens)

    def intersect(self, other: "Ideal") -> "Ideal":
        """I cap J via (t*I + (1-t)*J) cap R, eliminating the auxiliary t."""
        self._require_same_ring(other)
        if self.is_zero or other.is_zero:
            return Ideal(self.ring, [])
        if self.is_unit():
            return Ideal(self.ring, other.gens)
        if other.is_unit():
            return Ideal(self.ring, self.gens)
        aux = self.ring.fresh_aux()
        t = Polynomial.variable(self.ring.field, aux)
        one = Polynomial.one(self.ring.field)
        gens = [t * g for g in self.gens] + [(one - t) * h for h in other.gens]
        basis = buchberger(gens, ELIM)
        kept = [b for b in basis if not mono_has_aux(b.leading_term(ELIM)[0])]
        kept = [b for b in kept if not any(mono_has_aux(m) for m in b.terms)]
        out = Ideal(self.ring, kept)
        # The aux-free slice of the reduced elimination basis is the reduced
        # basis of the intersection under the inner (antidiagonal) order.
        out._seed_basis(ANTIDIAG, kept)
        return out

    def colon_poly(self, g: Polynomial) -> "Ideal":
        """(I : g) via intersect-with-principal and exact division by g."""
        if g.is_zero:
            return Ideal(self.ring, [Polynomial.one(self.ring.field)])
        inter = self.intersect(Ideal(self.ring, [g]))
        gens = []
        for h in inter.gens:
            quots, rem = divide(h, [g], ANTIDIAG)
            if not rem.is_zero:
                raise ArithmeticError("intersection element not divisible by g")
            gens.append(quots[0])
        return Ideal(self.ring, gens)

    def colon(self, other: "Ideal") -> "Ideal":
        """(I : J) as the intersection of (I : g) over generators g of J."""
        self._require_same_ring(other)
        if other.is_zero:
            return Ideal(self.ring, [Polynomial.one(self.ring.field)])
        result = None
        for g in other.gens:
            part = self.colon_poly(g)
            result = part if result is None else result.intersect(part)
        return result

    def saturate(self, other: "Ideal", cap: int = 50) -> tuple["Ideal", int]:
        """(I : J^infinity) by iterating colon to a fixpoint; returns the
        stable ideal and the number of strict growth steps."""
        current = self
        for n in range(cap):
            nxt = current.colon(other)
            if current.contains_ideal(nxt):
                return current, n
            current = nxt
        raise InstanceTooLarge(f"saturation did not stabilize within {cap} colon iterations")

    def bracket(self, q: int) -> "Ideal":
        """Frobenius bracket power I^[q]: generators raised to the q-th power."""
        p = self.ring.field.characteristic
        if p == 0:
            raise ValueError("bracket powers need a coefficient field of characteristic p")
        e, qq = 0, q
        while qq > 1 and qq % p == 0:
            qq //= p
            e += 1
        if qq != 1 or e == 0:
            raise ValueError(f"{q} is not a positive power of the characteristic {p}")
        out = Ideal(self.ring, [_frobenius_power(g, q) for g in self.gens])
        # Frobenius is flat over the polynomial ring: the bracket of a reduced
        # basis is again a reduced basis (q-th powers of terms, termwise).
        with self._lock:
            cached = dict(self._cache)
        for order, basis in cached.items():
            out._seed_basis(order, tuple(_frobenius_power(g, q) for g in basis))
        return out

    def initial_ideal(self, order: TermOrder = ANTIDIAG) -> "MonomialIdeal":
        basis = self.groebner_basis(order)
        return MonomialIdeal.from_monomials(self.ring, [g.leading_term(order)[0] for g in basis])

    def canonical_strings(self, order: TermOrder = ANTIDIAG) -> list[str]:
        """Reduced basis in the textual format, sorted by leading monomial."""
        from .poly import poly_to_str

        return [poly_to_str(g, order) for g in self.groebner_basis(order)]

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens over {self.ring.field})"


def _frobenius_power(g: Polynomial, q: int) -> Polynomial:
    """g^q in characteristic p | q: termwise (freshman's dream)."""
    field = g.field
    p = field.p
    return Polynomial(field, {mono_pow(m, q): pow(c, q, p) for m, c in g.terms.items()})


# ---------------------------------------------------------------------------
# Monomial ideals


def _minimalize_monomials(monos):
    out = []
    for m in sorted(set(monos), key=lambda m: (mono_degree(m), m)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal by its minimal (antichain) generator tuple."""

    ring: Ring
    gens: tuple[tuple, ...]

    @classmethod
    def from_monomials(cls, ring: Ring, monos) -> "MonomialIdeal":
        return cls(ring, _minimalize_monomials(monos))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return MONO_ONE in self.gens

    def contains(self, m: tuple) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_squarefree(self) -> bool:
        return all(mono_is_squarefree(g) for g in self.gens)

    def radical(self) -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(self.ring, [mono_radical(g) for g in self.gens])

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.is_zero or other.is_zero:
            return MonomialIdeal(self.ring, ())
        monos = [mono_lcm(a, b) for a in self.gens for b in other.gens]
        return MonomialIdeal.from_monomials(self.ring, monos)

    def supports(self) -> list[frozenset]:
        return [frozenset(k for k, _ in g) for g in self.gens]

    def min_primes(self) -> list[frozenset[Variable]]:
        """Minimal primes (as variable sets) by recursive splitting."""
        if self.is_unit:
            raise ValueError("unit ideal has no minimal primes")
        covers = minimal_covers(self.radical().supports())
        return [frozenset(var_by_key(k) for k in c) for c in covers]

    def height(self) -> int:
        if self.is_unit:
            raise ValueError("unit ideal has no height")
        return min_cover_size(self.radical().supports())

    def dim(self) -> int:
        """Krull dimension of ring/ideal (number of variables minus height)."""
        return self.ring.nvars - self.height()

    def symbolic_power(self, n: int) -> "MonomialIdeal":
        """Intersection of the n-th powers of the minimal primes (squarefree input)."""
        if not self.is_squarefree():
            raise ValueError("symbolic powers are implemented for squarefree monomial ideals")
        if n < 1:
            raise ValueError("symbolic power wants n >= 1")
        if self.is_zero:
            return self
        result = None
        for prime in sorted(self.min_primes(), key=lambda s: sorted(v.key for v in s)):
            keys = sorted((v.key for v in prime), reverse=True)
            gens = []
            for combo in combinations_with_replacement(keys, n):
                acc = MONO_ONE
                for k in combo:
                    acc = mono_mul(acc, ((k, 1),))
                gens.append(acc)
            prime_power = MonomialIdeal.from_monomials(self.ring, gens)
            result = prime_power if result is None else result.intersect(prime_power)
        return result

    def power(self, n: int) -> "MonomialIdeal":
        if n < 1:
            raise ValueError("power wants n >= 1")
        gens = []
        for combo in combinations_with_replacement(self.gens, n):
            acc = MONO_ONE
            for g in combo:
                acc = mono_mul(acc, g)
            gens.append(acc)
        return MonomialIdeal.from_monomials(self.ring, gens)


def minimal_covers(supports) -> list[frozenset]:
    """All minimal covers (minimal primes) of a set system, by splitting."""
    supports = [s for s in supports]
    if any(not s for s in supports):
        raise ValueError("empty support: ideal contains a unit")

    def rec(remaining):
        if not remaining:
            return [frozenset()]
        pivot = min(remaining, key=len)
        out = []
        for k in sorted(pivot):
            rest = [s for s in remaining if k not in s]
            for cover in rec(rest):
                out.append(cover | {k})
        return out

    covers = rec(supports)
    covers.sort(key=lambda c: (len(c), sorted(c)))
    minimal = []
    for c in covers:
        if not any(m <= c for m in minimal):
            minimal.append(c)
    return minimal


def min_cover_size(supports) -> int:
    """Exact minimum cover size by branch and bound (no enumeration)."""
    supports = sorted({frozenset(s) for s in supports}, key=len)
    if not supports:
        return 0
    if any(not s for s in supports):
        raise ValueError("empty support: ideal contains a unit")
    supports = [s for s in supports if not any(t < s for t in supports)]

    def greedy(remaining):
        chosen = 0
        rem = remaining
        while rem:
            counts: dict = {}
            for s in rem:
                for k in s:
                    counts[k] = counts.get(k, 0) + 1
            best = max(counts, key=lambda k: (counts[k], k))
            rem = [s for s in rem if best not in s]
            chosen += 1
        return chosen

    def matching_bound(remaining):
        used: set = set()
        count = 0
        for s in remaining:
            if not (s & used):
                used |= s
                count += 1
        return count

    best = [greedy(supports)]

    def rec(remaining, size):
        if not remaining:
            if size < best[0]:
                best[0] = size
            return
        if size + matching_bound(remaining) >= best[0]:
            return
        pivot = min(remaining, key=len)
        for k in sorted(pivot):
            rec([s for s in remaining if k not in s], size + 1)

    rec(supports, 0)
    return best[0]


# Spec-named functional wrappers.


def monomial_min_primes(M: MonomialIdeal):
    return M.min_primes()


def monomial_dim(M: MonomialIdeal) -> int:
    return M.dim()


def monomial_symbolic_power(M: MonomialIdeal, n: int) -> MonomialIdeal:
    return M.symbolic_power(n)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    return I.intersect(J)


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    return I.colon(J)


def saturate(I: Ideal, J: Ideal) -> tuple[Ideal, int]:
    return I.saturate(J)


def frobenius_bracket(I: Ideal, q: int) -> Ideal:
    return I.bracket(q)


def initial_ideal(I: Ideal, order: TermOrder = ANTIDIAG) -> MonomialIdeal:
    return I.initial_ideal(order)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equal(J)
