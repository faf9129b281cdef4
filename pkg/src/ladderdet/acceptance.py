"""The acceptance suite: nine exact pass/fail criteria over the bundled
fixture set plus seeded random ladders."""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .fields import GF, QQ
from .groebner import Ideal, MonomialIdeal, is_groebner_basis
from .ideals import (
    PartialPermutation,
    f_of_matrix,
    f_witness,
    ladder_ring,
    minors_in_ladder,
    mixed_ladder_ideal,
    omega_delta_ideal,
    poset_ideal_brute,
    schubert_ideal,
)
from .knutson import corner_derivation, ladder_derivation, verify as verify_derivation
from .ladders import (
    Ladder,
    ChamferError,
    chamfer,
    height,
    random_valid_ladder,
    reduce_to_unmixed,
    total_width,
    unchamfer,
    validate,
)
from .oracle import fedder_check, initial_symbolic_compare, symbolic_fsplit_certificate
from .poly import Minor, expand_minor

DEFAULT_SEED = 0


def _fixture_ladders():
    from . import load_fixture

    out = []
    for name in ("full2x2", "full2x3", "full3x3", "full3x4", "staircase10"):
        ladder, t = load_fixture(name)
        out.append((name, ladder, t))
    return out


def _legal_unmixed_sizes(L: Ladder):
    sizes = []
    for t in range(1, L.max_square_in() + 1):
        try:
            if validate(L, (t,) * len(L.lower)).valid:
                sizes.append(t)
        except Exception:
            continue
    return sizes


def _random_unmixed(seed: int, count: int, max_size: int):
    rng = random.Random(seed)
    return [random_valid_ladder(rng, max_size, max_size, mixed=False) for _ in range(count)]


# ---------------------------------------------------------------------------
# Criteria


def criterion_groebner_squarefree(seed: int = DEFAULT_SEED):
    """1. The t-minors are a Groebner basis and the initial ideal is squarefree."""
    details = []
    ok = True
    cases = [(name, L) for name, L, _ in _fixture_ladders()]
    cases += [(f"random{i}", L) for i, (L, _) in enumerate(_random_unmixed(seed, 20, 6))]
    for name, L in cases:
        ring = ladder_ring(QQ, L)
        for t in _legal_unmixed_sizes(L):
            gens = [expand_minor(m, QQ) for m in minors_in_ladder(L, t)]
            gb_ok = is_groebner_basis(gens)
            init = MonomialIdeal.from_monomials(ring, [g.leading_term()[0] for g in gens])
            sq_ok = init.is_squarefree()
            ok &= gb_ok and sq_ok
            details.append(f"{name} t={t}: groebner={gb_ok} squarefree={sq_ok} ({len(gens)} minors)")
    return ok, details


def criterion_height_identity(seed: int = DEFAULT_SEED):
    """2. height = #interior cells = #vars - dim(R/in I), and the product
    formula on full matrices."""
    details = []
    ok = True
    cases = [(name, L) for name, L, _ in _fixture_ladders()]
    cases += [(f"random{i}", L) for i, (L, _) in enumerate(_random_unmixed(seed, 20, 6))]
    for name, L in cases:
        ring = ladder_ring(QQ, L)
        full = len(L.cells) == L.shape[0] * L.shape[1]
        for t in _legal_unmixed_sizes(L):
            h = height(L, (t,) * len(L.lower))
            I = mixed_ladder_ideal(L, t, QQ, ring)
            dim = I.initial_ideal().dim()
            engine_h = ring.nvars - dim
            line_ok = engine_h == h
            if full:
                k, l = L.shape
                line_ok &= h == (k - t + 1) * (l - t + 1)
            ok &= line_ok
            details.append(f"{name} t={t}: |interior|={h} engine={engine_h} ok={line_ok}")
    return ok, details


def criterion_witness_certificate(seed: int = DEFAULT_SEED):
    """3. The splitting certificate passes on every fixture and every valid
    mixed size vector of the staircase fixture."""
    details = []
    ok = True
    for name, L, _ in _fixture_ladders():
        for t in _legal_unmixed_sizes(L):
            cert = symbolic_fsplit_certificate(L, (t,) * len(L.lower), GF(2))
            good = all(passed for _, passed in cert.checks)
            ok &= good
            details.append(f"{name} t={t}: h={cert.h} counts={cert.counts} ok={good}")
    staircase10, _ = _named_fixture("staircase10")
    bounds = [staircase10.subladder(j).max_square_in() for j in range(1, len(staircase10.lower) + 1)]
    tried = passed_count = 0
    for tvec in product(*(range(1, b + 1) for b in bounds)):
        if not validate(staircase10, tvec).valid:
            continue
        tried += 1
        cert = symbolic_fsplit_certificate(staircase10, tvec, GF(2))
        good = all(p for _, p in cert.checks) and sum(cert.counts) == cert.h
        passed_count += good
        ok &= good
        if not good:
            details.append(f"staircase10 t={tvec}: FAILED")
    details.append(f"staircase10 mixed variants: {passed_count}/{tried} certificates pass")
    ok &= tried > 0 and passed_count == tried
    return ok, details


def criterion_intersection_identity(seed: int = DEFAULT_SEED):
    """4. Sum of neighbouring band ideals equals the wide-band/narrow-band
    intersection (t = 2, delta in {0, 1})."""
    details = []
    ok = True
    instances = [(2, 3, 2, 0), (3, 4, 2, 0), (3, 4, 2, 1)]
    for k, l, t, delta in instances:
        L = Ladder.full(k, l)
        ring = ladder_ring(QQ, L)
        for j in range(1, l - t - delta + 1):
            lo, hi = j, j + t + delta
            left = mixed_ladder_ideal(L.band("cols", lo, hi - 1), t, QQ, ring)
            right = mixed_ladder_ideal(L.band("cols", lo + 1, hi), t, QQ, ring)
            wide = mixed_ladder_ideal(L.band("cols", lo, hi), t, QQ, ring)
            inner = mixed_ladder_ideal(L.band("cols", lo + 1, hi - 1), t - 1, QQ, ring)
            good = (left + right).equal(wide.intersect(inner))
            ok &= good
            details.append(f"{k}x{l} t={t} delta={delta} j={j}: {good}")
    return ok, details


def criterion_fedder(seed: int = DEFAULT_SEED):
    """5. Fedder membership certifies F-purity at p = 2 on the three fixtures."""
    details = []
    ok = True
    F2 = GF(2)

    ring22 = ladder_ring(F2, Ladder.full(2, 2))
    I_det = Ideal(ring22, [expand_minor(Minor((1, 2), (1, 2)), F2)])
    good = fedder_check(I_det, 2, f_of_matrix(2, 2, F2))
    ok &= good
    details.append(f"(det X2x2): {good}")

    L3 = Ladder.full(3, 3)
    ring3 = ladder_ring(F2, L3)
    I3 = mixed_ladder_ideal(L3, 2, F2, ring3)
    good = fedder_check(I3, 2, f_witness(L3, 2, F2))
    ok &= good
    details.append(f"I2(X3x3): {good}")

    L44, _ = _named_fixture("staircase_sub4x4")
    ring44 = ladder_ring(F2, L44)
    I44 = mixed_ladder_ideal(L44, 2, F2, ring44)
    good = fedder_check(I44, 2, f_witness(L44, 2, F2))
    ok &= good
    details.append(f"I2(4x4 sub-ladder): {good}")
    return ok, details


def criterion_symbolic_initial(seed: int = DEFAULT_SEED):
    """6. in(I^(2)) = in(I)^(2) for the 2-minors of the 3x3 matrix over GF(5)."""
    F5 = GF(5)
    L3 = Ladder.full(3, 3)
    ring = ladder_ring(F5, L3)
    I = mixed_ladder_ideal(L3, 2, F5, ring)
    res = initial_symbolic_compare(I, 2, strategy=ring.maximal_ideal())
    details = [
        f"in(I^(2)) gens={len(res.left.gens)} in(I)^(2) gens={len(res.right.gens)} equal={res.equal}"
    ]
    return res.equal, details


def criterion_knutson(seed: int = DEFAULT_SEED):
    """7. Ladder and corner derivations verify cleanly on the small fixtures."""
    details = []
    ok = True
    ladder_cases = [
        ("full2x2", Ladder.full(2, 2)),
        ("full2x3", Ladder.full(2, 3)),
        ("full3x3", Ladder.full(3, 3)),
        ("full3x4", Ladder.full(3, 4)),
        ("staircase_sub4x4", _named_fixture("staircase_sub4x4")[0]),
    ]
    for name, L in ladder_cases:
        for t in _legal_unmixed_sizes(L):
            deriv = ladder_derivation(L, t)
            report = verify_derivation(deriv)
            ok &= report.ok
            details.append(f"ladder {name} t={t}: {'pass' if report.ok else 'FAIL'} "
                           f"({len(report.lines)} checks)")
    corner_cases = [
        (3, 3, 2, 2, 2, "nw"),
        (3, 4, 2, 2, 3, "nw"),
        (3, 4, 2, 2, 4, "nw"),   # s = l: row-band base case
        (4, 4, 2, 3, 3, "nw"),
        (4, 4, 2, 2, 2, "nw"),
        (4, 4, 2, 3, 3, "se"),
        (4, 4, 3, 3, 3, "nw"),
    ]
    for k, l, t, r, s, which in corner_cases:
        deriv = corner_derivation(k, l, t, r, s, which=which)
        report = verify_derivation(deriv)
        ok &= report.ok
        details.append(f"corner {k}x{l} t={t} r={r} s={s} {which}: "
                       f"{'pass' if report.ok else 'FAIL'} ({len(report.lines)} checks)")
    return ok, details


def criterion_chamfer_descent(seed: int = DEFAULT_SEED):
    """8. Chamfer validity, exact inversion, and bounded replayable descent
    on 100 seeded random mixed ladders."""
    rng = random.Random(seed)
    moves_checked = reductions = 0
    ok = True
    details = []
    for _ in range(100):
        L, t = random_valid_ladder(rng, 8, 8, mixed=True)
        red = reduce_to_unmixed(L, t)
        good = len(red.moves) <= total_width(t)
        replayed, rt = red.replay()
        good &= replayed == L and rt == t
        good &= len(set(red.start_t)) == 1
        ok &= good
        reductions += 1
        for j in range(1, len(t) + 1):
            if t[j - 1] < 2:
                continue
            try:
                Lc, tc = chamfer(L, t, j)
            except ChamferError:
                continue
            moves_checked += 1
            good = validate(Lc, tc).valid
            Lb, tb = unchamfer(Lc, tc, j)
            good &= Lb == L and tb == t
            ok &= good
    details.append(f"{reductions} reductions replay within the width bound")
    details.append(f"{moves_checked} chamfer moves valid and exactly inverted")
    return ok, details


def criterion_poset_schubert(seed: int = DEFAULT_SEED):
    """9. Cogenerated poset ideals match brute force; Schubert ideals match
    the classical determinantal ideals and have squarefree initial ideals."""
    from .ideals import grid_ring, minor_poset

    details = []
    ok = True
    for k in (2, 3):
        ring = grid_ring(QQ, k, k)
        good = True
        for delta in minor_poset(k, k):
            formula = omega_delta_ideal(k, k, delta, QQ, ring)
            brute = poset_ideal_brute(k, k, delta, QQ, ring)
            good &= formula.equal(brute)
        ok &= good
        details.append(f"omega_delta formula vs brute on {k}x{k}: {good}")

    ring3 = grid_ring(QQ, 3, 3)
    for t in (2, 3):
        w = PartialPermutation((3, 3), frozenset((i, i) for i in range(1, t)))
        I_w = schubert_ideal(w, QQ)
        classical = Ideal(ring3, [expand_minor(m, QQ) for m in minors_in_ladder(Ladder.full(3, 3), t)])
        good = I_w.equal(classical)
        ok &= good
        details.append(f"truncated identity t={t} equals I_t(X): {good}")

    rng = random.Random(seed)
    squarefree_ok = 0
    for _ in range(10):
        size = rng.randint(0, 3)
        rows = rng.sample(range(1, 4), size)
        cols = rng.sample(range(1, 4), size)
        w = PartialPermutation((3, 3), frozenset(zip(rows, cols)))
        I_w = schubert_ideal(w, QQ)
        if I_w.is_zero or I_w.initial_ideal().is_squarefree():
            squarefree_ok += 1
    ok &= squarefree_ok == 10
    details.append(f"random partial permutations with squarefree in(I_w): {squarefree_ok}/10")
    return ok, details


def _named_fixture(name: str):
    from . import load_fixture

    return load_fixture(name)


# ---------------------------------------------------------------------------
# Runner


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    seconds: float
    details: tuple[str, ...] = field(default_factory=tuple)

    def summary_line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.title} ({self.seconds:.1f}s)"


CRITERIA = (
    ("groebner-squarefree", "minors form a Groebner basis with squarefree initial ideal",
     criterion_groebner_squarefree),
    ("height-identity", "interior size matches the engine height and the product formula",
     criterion_height_identity),
    ("witness-certificate", "splitting certificates pass, counts sum to the height",
     criterion_witness_certificate),
    ("intersection-identity", "band sums equal the wide/narrow intersections",
     criterion_intersection_identity),
    ("fedder", "Fedder membership certifies F-purity at p=2",
     criterion_fedder),
    ("symbolic-initial", "initial ideals of symbolic powers match over GF(5)",
     criterion_symbolic_initial),
    ("knutson", "ladder and corner derivations verify",
     criterion_knutson),
    ("chamfer-descent", "chamfer moves are valid, invertible and reduce to unmixed",
     criterion_chamfer_descent),
    ("poset-schubert", "poset and Schubert constructions cross-check",
     criterion_poset_schubert),
)


def criterion_keys() -> list[str]:
    return [key for key, _, _ in CRITERIA]


def run_criterion(key: str, seed: int = DEFAULT_SEED) -> CriterionResult:
    for ckey, title, fn in CRITERIA:
        if ckey == key:
            start = time.monotonic()
            passed, details = fn(seed)
            return CriterionResult(ckey, title, passed, time.monotonic() - start, tuple(details))
    raise KeyError(f"unknown criterion: {key!r} (known: {', '.join(criterion_keys())})")


def run_suite(keys=None, seed: int = DEFAULT_SEED, workers: int = 1) -> list[CriterionResult]:
    keys = list(keys) if keys else criterion_keys()
    for key in keys:
        if key not in criterion_keys():
            raise KeyError(f"unknown criterion: {key!r}")
    if workers <= 1:
        return [run_criterion(key, seed) for key in keys]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {key: pool.submit(run_criterion, key, seed) for key in keys}
    return [futures[key].result() for key in keys]
