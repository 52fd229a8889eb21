"""Fiber exterior algebra: rewrite engine, dimensions, star structure."""

from __future__ import annotations

import random
from math import comb

import pytest

from qkahler.fiber import (
    BasisMonomial, FiberForm, UNIT_MONOMIAL, _reduce_word, basis_bidegree,
    basis_degree, e_minus, e_plus, weight,
)
from qkahler.hodge import hodge, vol
from qkahler.lefschetz import kappa
from qkahler.scalars import H_EQ_Q, I, ONE, Q, Scalar, parse_scalar

from oracles import reduce_rightmost


def _gen(n, s, i):
    return e_plus(n, i) if s == +1 else e_minus(n, i)


def _wedge_word(n, word):
    acc = FiberForm.unit(n)
    for s, i in word:
        acc = acc.wedge(_gen(n, s, i))
    return acc


def _random_word(rng, n, length):
    return tuple((rng.choice((+1, -1)), rng.randint(1, n))
                 for _ in range(length))


def _random_form(rng, n, k):
    pool = [ONE, -ONE, Q, Scalar.q_power(-1), ONE + Q, I, Q - I]
    acc = FiberForm.zero(n)
    for m in basis_degree(n, k):
        acc = acc + FiberForm.monomial(n, m.plus, m.minus, rng.choice(pool))
    return acc


# ---------------------------------------------------------------------------
# dimensions and basis bookkeeping
# ---------------------------------------------------------------------------

def test_degree_dimensions_are_binomial():
    for n in (1, 2, 3, 4):
        for k in range(2 * n + 1):
            assert len(basis_degree(n, k)) == comb(2 * n, k)


def test_bidegree_dimensions():
    for n in (1, 2, 3):
        for a in range(n + 1):
            for b in range(n + 1):
                assert len(basis_bidegree(n, a, b)) == comb(n, a) * comb(n, b)
        total = sum(len(basis_bidegree(n, a, b))
                    for a in range(n + 1) for b in range(n + 1))
        assert total == 4 ** n


def test_monomial_index_validation():
    with pytest.raises(ValueError):
        FiberForm.monomial(2, [3], [])
    with pytest.raises(ValueError):
        FiberForm.monomial(2, [1, 1], [])
    with pytest.raises(ValueError):
        FiberForm.monomial(2, [2, 1], [])


def test_mixed_rank_operations_rejected():
    with pytest.raises(ValueError):
        e_plus(1, 1).wedge(e_plus(2, 1))


# ---------------------------------------------------------------------------
# rewrite engine against the rightmost-first oracle
# ---------------------------------------------------------------------------

def test_defining_relations():
    for n in (2, 3):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                lhs = e_minus(n, i).wedge(e_plus(n, j))
                if i != j:
                    want = e_plus(n, j).wedge(e_minus(n, i)).scale(-Q)
                else:
                    want = e_plus(n, i).wedge(e_minus(n, i)) \
                        .scale(-Scalar.q_power(2))
                    for a in range(i + 1, n + 1):
                        want = want - e_plus(n, a).wedge(e_minus(n, a)) \
                            .scale(Scalar.q_power(2) - ONE)
                assert lhs == want
        for i in range(1, n + 1):
            for h in range(1, i):
                assert e_plus(n, i).wedge(e_plus(n, h)) == \
                    e_plus(n, h).wedge(e_plus(n, i)).scale(-Q)
                assert e_minus(n, i).wedge(e_minus(n, h)) == \
                    e_minus(n, h).wedge(e_minus(n, i)).scale(-Scalar.q_power(-1))
        for i in range(1, n + 1):
            assert not e_plus(n, i).wedge(e_plus(n, i))
            assert not e_minus(n, i).wedge(e_minus(n, i))


def test_normal_form_matches_rightmost_oracle():
    rng = random.Random(101)
    for n in (1, 2, 3):
        for _ in range(60):
            word = _random_word(rng, n, rng.randint(2, 6))
            got = _wedge_word(n, word)
            want = reduce_rightmost(n, word)
            assert {(m.plus, m.minus): c for m, c in got.terms.items()} == want


def test_wedge_associativity_fuzz():
    rng = random.Random(202)
    for n in (2, 3):
        for _ in range(12):
            u = _random_form(rng, n, rng.randint(0, 2))
            v = _random_form(rng, n, rng.randint(0, 2))
            w = _random_form(rng, n, rng.randint(0, 2))
            assert u.wedge(v).wedge(w) == u.wedge(v.wedge(w))


def test_wedge_unit_and_grading():
    rng = random.Random(303)
    for n in (2, 3):
        one = FiberForm.unit(n)
        for k in range(2 * n + 1):
            u = _random_form(rng, n, k)
            assert one.wedge(u) == u
            assert u.wedge(one) == u
            v = _random_form(rng, n, 1)
            prod = u.wedge(v)
            assert (not prod) or prod.degree() == k + 1


def test_top_degree_is_one_dimensional():
    for n in (1, 2, 3):
        top = basis_degree(n, 2 * n)
        assert len(top) == 1
        assert top[0].plus == tuple(range(1, n + 1))
        assert top[0].minus == tuple(range(1, n + 1))


def test_weights():
    n = 3
    for m in basis_degree(n, 2):
        wt = weight(m, n)
        assert len(wt) == n
        balanced = set(m.plus) == set(m.minus)
        assert (all(x == 0 for x in wt)) == balanced
    assert weight(BasisMonomial((1,), ()), 3) != weight(BasisMonomial((2,), ()), 3)


# ---------------------------------------------------------------------------
# star structure
# ---------------------------------------------------------------------------

def test_star_involution_on_bases():
    for n in (1, 2, 3):
        for k in range(2 * n + 1):
            for m in basis_degree(n, k):
                u = FiberForm(n, {m: ONE})
                assert u.star().star() == u


def test_star_conjugate_linearity():
    rng = random.Random(404)
    for n in (1, 2):
        for k in range(2 * n + 1):
            u = _random_form(rng, n, k)
            c = Q + I
            assert u.scale(c).star() == u.star().scale(c.conjugate())
            v = _random_form(rng, n, k)
            assert (u + v).star() == u.star() + v.star()


def test_star_is_graded_antiautomorphism():
    rng = random.Random(505)
    for n in (1, 2, 3):
        for _ in range(16):
            k = rng.randint(0, n)
            l = rng.randint(0, n)
            u = _random_form(rng, n, k)
            v = _random_form(rng, n, l)
            rhs = v.star().wedge(u.star())
            if (k * l) % 2:
                rhs = -rhs
            assert u.wedge(v).star() == rhs


def test_star_fixes_the_fundamental_form():
    for n in (1, 2, 3):
        assert kappa(n).star() == kappa(n)


def test_fundamental_form_is_central():
    rng = random.Random(606)
    for n in (2, 3):
        kap = kappa(n)
        for k in range(2 * n):
            u = _random_form(rng, n, k)
            assert kap.wedge(u) == u.wedge(kap)


def _candidate_star(u, c1, c0, sp, sm):
    """Star defined by e+_a -> sp q^(c1 a + c0) e-_a and the inverse-power
    image on e-_a, with the usual reversal sign; mirrors the production
    construction so parameter choices can be compared on equal footing."""
    n = u.n
    out = FiberForm.zero(n)
    for mono, coef in u.terms.items():
        w = mono.word()
        k = mono.degree
        factor = ONE if (k * (k - 1) // 2) % 2 == 0 else -ONE
        img = []
        for s, a in reversed(w):
            if s == +1:
                img.append((-1, a))
                factor = factor * (Scalar.q_power(c1 * a + c0)
                                   * Scalar.from_int(sp))
            else:
                img.append((+1, a))
                factor = factor * (Scalar.q_power(-(c1 * a + c0))
                                   * Scalar.from_int(sm))
        for m2, c2 in _reduce_word(n, tuple(img)).items():
            out = out + FiberForm(n, {m2: coef.conjugate() * factor * c2})
    return out


def _candidate_metric(u, v, c1, c0, sp, sm):
    return vol(u.wedge(hodge(_candidate_star(v, c1, c0, sp, sm), H_EQ_Q)))


def test_star_exponent_fit_is_unique():
    """Sweep the generator-image exponents: only one choice in the grid
    reproduces the rank 1 and rank 2 pairing values."""
    targets1 = [
        (FiberForm.unit(1), ONE),
        (e_plus(1, 1), Scalar.q_power(-4)),
        (e_minus(1, 1), Scalar.q_power(6)),
        (FiberForm.monomial(1, [1], [1]), ONE),
    ]
    survivors = []
    for c1 in range(-4, 2):
        for c0 in range(-5, 2):
            for sp in (1, -1):
                for sm in (1, -1):
                    if sp * sm != 1:
                        continue  # involution already fails on generators
                    ok = all(
                        _candidate_metric(u, u, c1, c0, sp, sm) == want
                        for u, want in targets1)
                    if ok:
                        got = _candidate_metric(e_minus(2, 2), e_minus(2, 2),
                                                c1, c0, sp, sm)
                        ok = got == Scalar.q_power(9)
                    if ok:
                        survivors.append((c1, c0, sp, sm))
    assert survivors == [(-2, -2, 1, 1)]
    # and the production star is exactly the surviving candidate
    for n in (1, 2):
        for k in range(2 * n + 1):
            for m in basis_degree(n, k):
                u = FiberForm(n, {m: ONE})
                assert u.star() == _candidate_star(u, -2, -2, 1, 1)


# ---------------------------------------------------------------------------
# serialization and splits
# ---------------------------------------------------------------------------

def test_json_terms_round_trip():
    rng = random.Random(707)
    for n in (1, 2, 3):
        u = FiberForm.zero(n)
        for k in range(2 * n + 1):
            u = u + _random_form(rng, n, k)
        assert FiberForm.from_json_terms(n, u.to_json_terms()) == u


def test_splits_are_consistent():
    rng = random.Random(808)
    n = 2
    u = _random_form(rng, n, 1) + _random_form(rng, n, 2)
    by_degree = u.degree_split()
    assert sorted(by_degree) == u.degrees()
    total = FiberForm.zero(n)
    for part in by_degree.values():
        total = total + part
    assert total == u
    by_bidegree = u.bidegree_split()
    total = FiberForm.zero(n)
    for (a, b), part in by_bidegree.items():
        assert part.degree() == a + b
        total = total + part
    assert total == u


def test_render_of_forms():
    u = e_plus(2, 1).wedge(e_minus(2, 2))
    assert str(u) == "e+[1]^e-[2]"
    v = FiberForm.monomial(2, [1], [1]) - FiberForm.monomial(2, [2], [2]) \
        .scale(Scalar.q_power(-2))
    assert "e+[1]^e-[1]" in str(v) and "q^-2" in str(v)
    assert str(FiberForm.unit(2)) == "1"
    assert str(FiberForm.zero(2)) == "0"
