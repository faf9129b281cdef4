"""Symbolic-power membership counts, splitting certificates, Fedder
checks, and the initial-ideal comparison for symbolic powers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce

from .fields import QQ, Field
from .groebner import Ideal, MonomialIdeal
from .ladders import Ladder, antidiagonal_profile, height
from .poly import (
    ANTIDIAG,
    Minor,
    Polynomial,
    TermOrder,
    expand_minor,
    mono_is_squarefree,
    mono_mul,
    mono_to_str,
)


def minor_product_symbolic_degree(factors, t: int, ladder: Ladder | None = None) -> int:
    """Certified symbolic order of a product of minors in I_t.

    Each gamma x gamma determinant lies in the (gamma - t + 1)-st symbolic
    power, so the product lies in I_t^(n) for n the sum of those counts.
    Exact for the unmixed generic/ladder witnesses; for mixed sizes this is
    a sufficient condition only.
    """
    total = 0
    for m in factors:
        if ladder is not None and not all(cell in ladder.cells for cell in m.cells()):
            raise ValueError(f"factor {m} not contained in the ladder")
        total += max(m.size - t + 1, 0)
    return total


# ---------------------------------------------------------------------------
# The symbolic F-splitting certificate


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicCertificate:
    """Finite witness that the mixed ladder ideal is symbolic F-split:
    factors det(Y_r) with counts summing to the height, and a squarefree
    product of their antidiagonals as the leading monomial."""

    ladder: Ladder
    t: tuple[int, ...]
    h: int
    factors: tuple[tuple[Minor, int, int, int], ...]  # (Y_r, gamma_r, t_{p_r}, count)
    lead: tuple
    checks: tuple[tuple[str, bool], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c for _, _, _, c in self.factors)

    def witness_polynomial(self, field: Field = QQ) -> Polynomial:
        """The expanded witness f (computed on demand, size-guarded)."""
        from .ideals import _check_expansion_size

        minors = [m for m, _, _, _ in self.factors]
        _check_expansion_size(minors)
        result = Polynomial.one(field)
        for m in minors:
            result = result * expand_minor(m, field)
        return result

    def to_json(self) -> str:
        return json.dumps(
            {
                "h": self.h,
                "counts": list(self.counts),
                "factors": [
                    {"rows": list(m.rows), "cols": list(m.cols), "gamma": g, "t": tt, "count": c}
                    for m, g, tt, c in self.factors
                ],
                "lead": mono_to_str(self.lead),
                "checks": {name: ok for name, ok in self.checks},
            }
        )


def symbolic_fsplit_certificate(L: Ladder, t, field: Field | None = None) -> SymbolicCertificate:
    """Build and verify the splitting certificate for (L, t).

    Raises CertificateError when any invariant fails; on a modular field
    additionally records that the witness avoids the bracket power of the
    maximal ideal (its lead is squarefree with unit coefficient).
    """
    if isinstance(t, int):
        t = (t,) * len(L.lower)
    t = tuple(t)
    profile = antidiagonal_profile(L, t)
    h = height(L, t)
    factors = []
    for ld in profile.levels:
        if ld.r in profile.b_levels:
            factors.append((ld.minor, ld.gamma, t[ld.p - 1], ld.count))
    lead = reduce(mono_mul, (m.antidiagonal_monomial() for m, _, _, _ in factors), ())

    checks = []
    total = sum(c for _, _, _, c in factors)
    checks.append(("counts_sum_to_height", total == h))
    checks.append(("lead_squarefree", mono_is_squarefree(lead)))
    checks.append(("counts_nonnegative", all(c >= 0 for _, _, _, c in factors)))
    if field is not None and field.is_modular:
        # Leibniz sign is a unit mod p, and squarefree exponents stay below p.
        checks.append(("lead_outside_frobenius_power_of_m", mono_is_squarefree(lead)))
    cert = SymbolicCertificate(L, t, h, tuple(factors), lead, tuple(checks))
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise CertificateError(f"certificate invariants failed: {failed}")
    return cert


# ---------------------------------------------------------------------------
# Saturation-based symbolic powers (tiny instances only)


SATURATION_MAX_VARS = 9
SATURATION_MAX_N = 3
SATURATION_MAX_DEGREE = 12


def symbolic_power_saturation(I: Ideal, n: int, strategy: Ideal) -> Ideal:
    """I^(n) as the saturation of I^n by the strategy ideal.

    Sound when the strategy cuts out the locus where I is not locally a
    complete intersection (for t-minors of a generic matrix: the ideal of
    (t-1)-minors).  Instance caps keep the Groebner work at desk scale.
    """
    if n < 1:
        raise ValueError("symbolic power wants n >= 1")
    if n > SATURATION_MAX_N:
        raise ValueError(f"saturation oracle is capped at n <= {SATURATION_MAX_N}")
    grid_vars = [v for v in I.ring.variables if not v.is_aux]
    if len(grid_vars) > SATURATION_MAX_VARS:
        raise ValueError(f"saturation oracle is capped at {SATURATION_MAX_VARS} variables")
    power = I.power(n)
    if any(g.degree() > SATURATION_MAX_DEGREE for g in power.gens):
        raise ValueError(f"saturation oracle is capped at degree {SATURATION_MAX_DEGREE}")
    saturated, _ = power.saturate(strategy)
    return saturated


def ladder_symbolic_power(L: Ladder, t, n: int, field: Field = QQ) -> Ideal:
    """Saturation oracle for an unmixed ladder ideal; refuses mixed sizes."""
    from .ideals import ladder_ring, mixed_ladder_ideal

    if not isinstance(t, int):
        tset = set(t)
        if len(tset) != 1:
            raise ValueError("the saturation oracle handles unmixed sizes only")
        t = tset.pop()
    ring = ladder_ring(field, L)
    I = mixed_ladder_ideal(L, t, field, ring)
    if t > 1:
        strategy = mixed_ladder_ideal(L, t - 1, field, ring)
    else:
        # The variable ideal is a complete intersection: nothing to saturate.
        strategy = Ideal(ring, [Polynomial.one(field)])
    return symbolic_power_saturation(I, n, strategy)


# ---------------------------------------------------------------------------
# Fedder-type F-purity check


def fedder_check(I: Ideal, p: int, candidate: Polynomial) -> bool:
    """True iff candidate lies in (I^[p] : I) but not in m^[p].

    A true answer certifies that the quotient by I is F-pure at p.
    """
    field = I.ring.field
    if not field.is_modular or field.p != p:
        raise ValueError(f"Fedder check needs coefficients in GF({p}), got {field}")
    if candidate.field != field:
        raise ValueError("candidate polynomial is over the wrong field")
    if candidate.is_zero:
        return False
    # Membership in the colon, generator by generator: c*g in I^[p] for all g.
    bracket = I.bracket(p)
    for g in I.gens:
        if not bracket.contains(candidate * g):
            return False
    # Outside m^[p]: some term has every exponent below p.
    return any(all(e < p for _, e in m) for m in candidate.terms)


# ---------------------------------------------------------------------------
# Initial ideals of symbolic powers


@dataclass(frozen=True)
class InitialCompareResult:
    equal: bool
    witness: tuple | None      # a monomial in the gap, when not equal
    left: MonomialIdeal        # in(I^(n)) via the saturation oracle
    right: MonomialIdeal       # in(I)^(n) via monomial symbolic powers

    def __bool__(self):
        return self.equal


def initial_symbolic_compare(I: Ideal, n: int, order: TermOrder = ANTIDIAG,
                             strategy: Ideal | None = None) -> InitialCompareResult:
    """Compare in(I^(n)) with the n-th symbolic power of in(I)."""
    init = I.initial_ideal(order)
    if not init.is_squarefree():
        raise ValueError("initial ideal is not squarefree; comparison out of scope")
    right = init.symbolic_power(n)
    if strategy is None:
        strategy = I.ring.maximal_ideal()
    left = symbolic_power_saturation(I, n, strategy).initial_ideal(order)
    if left.gens == right.gens:
        return InitialCompareResult(True, None, left, right)
    for g in right.gens:
        if not left.contains(g):
            return InitialCompareResult(False, g, left, right)
    for g in left.gens:
        if not right.contains(g):
            return InitialCompareResult(False, g, left, right)
    return InitialCompareResult(True, None, left, right)
