"""Symbolic-power counts, splitting certificates, Fedder membership, and
the initial-ideal comparison."""

import json
import random

import pytest

import ladderdet
from ladderdet.fields import GF, QQ
from ladderdet.groebner import Ideal, Ring
from ladderdet.ideals import (
    f_of_matrix,
    f_witness,
    f_witness_factors,
    g_witness_data,
    ladder_ring,
    mixed_ladder_ideal,
)
from ladderdet.ladders import Ladder, height, random_valid_ladder
from ladderdet.oracle import (
    fedder_check,
    initial_symbolic_compare,
    ladder_symbolic_power,
    minor_product_symbolic_degree,
    symbolic_fsplit_certificate,
    symbolic_power_saturation,
)
from ladderdet.poly import Minor, Polynomial, expand_minor, grid_var, mono_to_str


def test_symbolic_degree_examples():
    det3 = Minor((1, 2, 3), (1, 2, 3))
    assert minor_product_symbolic_degree([det3], 2) == 2
    two = Minor((1, 2), (1, 2))
    assert minor_product_symbolic_degree([two, two], 2) == 2
    assert minor_product_symbolic_degree([Minor((1,), (1,))], 2) == 0


def test_symbolic_degree_ladder_containment():
    block = Ladder((3, 3), ((1, 3),), ((2, 2),))
    with pytest.raises(ValueError):
        minor_product_symbolic_degree([Minor((1, 2), (1, 2))], 2, ladder=block)
    assert minor_product_symbolic_degree([Minor((1, 2), (2, 3))], 2, ladder=block) == 1


def test_witness_degree_equals_height_randomized():
    rng = random.Random(12)
    for _ in range(40):
        L, t = random_valid_ladder(rng, 8, 8, mixed=True)
        if len(set(t)) != 1:
            continue
        factors = f_witness_factors(L, t)
        assert minor_product_symbolic_degree(list(factors), t[0], ladder=L) == height(L, t)


def test_certificate_3x3():
    cert = symbolic_fsplit_certificate(Ladder.full(3, 3), (2,))
    assert cert.h == 4 and cert.counts == (1, 2, 1)
    assert len(cert.lead) == 7
    payload = json.loads(cert.to_json())
    assert payload["h"] == 4 and payload["counts"] == [1, 2, 1]
    assert payload["checks"]["lead_squarefree"]
    f = cert.witness_polynomial(QQ)
    assert f == f_witness(Ladder.full(3, 3), (2,))


def test_certificate_2x2():
    cert = symbolic_fsplit_certificate(Ladder.full(2, 2), (2,))
    assert cert.h == 1 and cert.counts == (1,)
    assert mono_to_str(cert.lead) == "x[1,2]*x[2,1]"


def test_certificate_staircase10_mixed():
    L, t = ladderdet.load_fixture("staircase10")
    cert = symbolic_fsplit_certificate(L, t, GF(2))
    assert sum(cert.counts) == cert.h == height(L, t)
    assert all(ok for _, ok in cert.checks)


def test_g_witness_degree_count_randomized():
    rng = random.Random(13)
    seen = 0
    for _ in range(60):
        L, t = random_valid_ladder(rng, 7, 7, mixed=False)
        if t[-1] < 2:
            continue
        try:
            data = g_witness_data(L, t)
        except Exception:
            continue
        seen += 1
        assert minor_product_symbolic_degree(list(data.factors), t[0], ladder=L) == height(L, t) - 1
    assert seen >= 10


def test_symbolic_power_principal_and_variables():
    ring = Ring.for_grid(QQ, 2, 2)
    det = expand_minor(Minor((1, 2), (1, 2)))
    I = Ideal(ring, [det])
    for n in (1, 2, 3):
        out = symbolic_power_saturation(I, n, ring.maximal_ideal())
        assert out.equal(I.power(n))

    ones = Ladder.full(2, 2)
    I1 = mixed_ladder_ideal(ones, 1, QQ)
    out = ladder_symbolic_power(ones, 1, 2, QQ)
    assert out.equal(I1.power(2))


def test_symbolic_square_contains_determinant():
    F5 = GF(5)
    L3 = Ladder.full(3, 3)
    out = ladder_symbolic_power(L3, 2, 2, F5)
    det3 = expand_minor(Minor((1, 2, 3), (1, 2, 3)), F5)
    assert out.contains(det3)
    ring = ladder_ring(F5, L3)
    I = mixed_ladder_ideal(L3, 2, F5, ring)
    assert not I.power(2).contains(det3)


def test_symbolic_power_refuses_mixed_and_oversize():
    L, t = ladderdet.load_fixture("staircase10")
    with pytest.raises(ValueError):
        ladder_symbolic_power(L, t, 2)
    ring = Ring.for_grid(QQ, 4, 4)
    I = Ideal(ring, [Polynomial.variable(QQ, grid_var(1, 1))])
    with pytest.raises(ValueError):
        symbolic_power_saturation(I, 2, ring.maximal_ideal())  # 16 > 9 variables
    ring1 = Ring.for_grid(QQ, 1, 2)
    J = Ideal(ring1, [Polynomial.variable(QQ, grid_var(1, 1))])
    with pytest.raises(ValueError):
        symbolic_power_saturation(J, 4, ring1.maximal_ideal())


def test_fedder_examples():
    F2 = GF(2)
    ring = Ring.for_grid(F2, 2, 2)
    det = expand_minor(Minor((1, 2), (1, 2)), F2)
    I = Ideal(ring, [det])
    assert fedder_check(I, 2, f_of_matrix(2, 2, F2))

    # non-radical: never F-pure, any candidate fails
    ring1 = Ring.for_cells(F2, [(1, 1)])
    x = Polynomial.variable(F2, grid_var(1, 1))
    J = Ideal(ring1, [x * x])
    assert not fedder_check(J, 2, x)
    assert not fedder_check(J, 2, Polynomial.one(F2))
    assert not fedder_check(J, 2, x * x * x)

    L3 = Ladder.full(3, 3)
    ring3 = ladder_ring(F2, L3)
    I3 = mixed_ladder_ideal(L3, 2, F2, ring3)
    assert fedder_check(I3, 2, f_witness(L3, 2, F2))


def test_fedder_p3():
    F3 = GF(3)
    ring = Ring.for_grid(F3, 2, 2)
    det = expand_minor(Minor((1, 2), (1, 2)), F3)
    I = Ideal(ring, [det])
    assert fedder_check(I, 3, f_of_matrix(2, 2, F3) ** 2)


def test_fedder_field_mismatch():
    ring = Ring.for_grid(QQ, 2, 2)
    I = Ideal(ring, [expand_minor(Minor((1, 2), (1, 2)))])
    with pytest.raises(ValueError):
        fedder_check(I, 2, f_of_matrix(2, 2))


def test_initial_symbolic_compare_trivial_cases():
    F5 = GF(5)
    ring = Ring.for_grid(F5, 2, 2)
    det = expand_minor(Minor((1, 2), (1, 2)), F5)
    I = Ideal(ring, [det])
    res = initial_symbolic_compare(I, 1, strategy=ring.maximal_ideal())
    assert res.equal
    res2 = initial_symbolic_compare(I, 2, strategy=ring.maximal_ideal())
    assert res2.equal


def test_containment_chain_on_instances():
    # in(I)^n <= in(I^(n)) <= in(I)^(n)
    F5 = GF(5)
    L = Ladder.full(2, 3)
    ring = ladder_ring(F5, L)
    I = mixed_ladder_ideal(L, 2, F5, ring)
    for n in (2, 3):
        sym = symbolic_power_saturation(I, n, ring.maximal_ideal())
        left = I.initial_ideal().power(n)
        mid = sym.initial_ideal()
        right = I.initial_ideal().symbolic_power(n)
        assert mid.contains_ideal(left)
        assert right.contains_ideal(mid)


def test_certificate_rejects_bad_spec():
    from ladderdet.ladders import LadderError

    with pytest.raises(LadderError):
        symbolic_fsplit_certificate(Ladder.full(3, 3), (2, 2))  # wrong spec length
    with pytest.raises(LadderError):
        symbolic_fsplit_certificate(Ladder.full(3, 3), (0,))


def test_squarefree_witness_lead_lands_in_symbolic_initial():
    # The witness f lies in I^(h) with squarefree lead, so in(I^(h)) picks
    # up a squarefree monomial and in(I) is radical on this instance.
    F5 = GF(5)
    L = Ladder.full(2, 3)
    ring = ladder_ring(F5, L)
    I = mixed_ladder_ideal(L, 2, F5, ring)
    h = height(L, (2,))
    assert h == 2
    sym = ladder_symbolic_power(L, 2, h, F5)
    f = f_witness(L, 2, F5)
    assert sym.contains(f)
    lead = f.leading_term()[0]
    assert sym.initial_ideal().contains(lead)
    init = I.initial_ideal()
    assert init.is_squarefree() and init.radical().gens == init.gens


def test_initial_compare_reports_witness_when_strategy_too_weak():
    # With the trivial strategy the left side is just in(I^2), which misses
    # the determinant's lead; the comparison must report a gap monomial.
    F5 = GF(5)
    L3 = Ladder.full(3, 3)
    ring = ladder_ring(F5, L3)
    I = mixed_ladder_ideal(L3, 2, F5, ring)
    unit = Ideal(ring, [Polynomial.one(F5)])
    res = initial_symbolic_compare(I, 2, strategy=unit)
    assert not res.equal and res.witness is not None
    assert res.right.contains(res.witness) and not res.left.contains(res.witness)
    det_lead = expand_minor(Minor((1, 2, 3), (1, 2, 3)), F5).leading_term()[0]
    assert res.right.contains(det_lead)
