import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldcomet import residue
from goldcomet.hl import sylvester_factor
from goldcomet.primes import odd_prime_factors, primorial


def test_class_divisor():
    assert residue.class_divisor(0, 6) == 6
    assert residue.class_divisor(2, 6) == residue.class_divisor(4, 6) == 2
    assert residue.class_divisor(10, 30) == 10


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=3000))
def test_class_divisor_constant_on_class(a, m):
    assert residue.class_divisor(a, m) == residue.class_divisor(a + 7 * m, m)


def test_sigma_general_examples(small_table):
    assert residue.sigma_general(6, 0, small_table) == 2
    assert residue.sigma_general(6, 2, small_table) == 1
    assert residue.sigma_general(30, 4, small_table) == 3
    assert residue.sigma_general(30, 30) == 8


def test_sigma_bruteforce_examples():
    assert residue.sigma_bruteforce(30, 0) == 8
    assert residue.sigma_bruteforce(2, 0) == 1
    assert [residue.sigma_bruteforce(6, c) for c in (0, 2, 4)] == [2, 1, 1]


def test_sigma_bruteforce_budget():
    with pytest.raises(residue.BudgetExceeded):
        residue.sigma_bruteforce(100_003, 0)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 9, 12, 30, 45, 64, 100, 210, 360, 2310])
def test_sigma_general_matches_bruteforce(m):
    for c in range(m):
        assert residue.sigma_general(m, c) == residue.sigma_bruteforce(m, c)


def test_even_divisors():
    assert residue.even_divisors(2) == [2, 6]
    assert residue.even_divisors(3) == [2, 6, 10, 30]
    assert len(residue.even_divisors(5)) == 16
    for h in range(1, 9):
        ds = residue.even_divisors(h)
        m = primorial(h)
        assert len(ds) == 2 ** (h - 1) == len(set(ds))
        assert all(d % 2 == 0 and m % d == 0 for d in ds)


def test_sigma_primorial_tables():
    assert [residue.sigma_primorial(3, d) for d in (2, 6, 10, 30)] == [3, 6, 4, 8]
    assert [residue.sigma_primorial(4, d) for d in (2, 6, 10, 14, 30, 42, 70, 210)] == [
        15, 30, 20, 18, 40, 36, 24, 48,
    ]
    table_2310 = {
        2: 135, 6: 270, 10: 180, 14: 162, 22: 150, 30: 360, 42: 324, 66: 300,
        70: 216, 110: 200, 154: 180, 210: 432, 330: 400, 462: 360, 770: 240, 2310: 480,
    }
    assert {d: residue.sigma_primorial(5, d) for d in table_2310} == table_2310


def test_sigma_primorial_rejects_non_divisors():
    for d in (3, 4, 7, 60):
        with pytest.raises(ValueError):
            residue.sigma_primorial(3, d)


@pytest.mark.parametrize("h", [2, 3, 4, 5])
def test_sigma_primorial_matches_general(h):
    m = primorial(h)
    for d in residue.even_divisors(h):
        assert residue.sigma_primorial(h, d) == residue.sigma_general(m, d)


@pytest.mark.parametrize("h", range(2, 9))
def test_sigma_of_two(h):
    table = residue.strata(h)
    s2 = table.row(2).sigma
    assert s2 == math.prod(p - 2 for p in (3, 5, 7, 11, 13, 17, 19)[: h - 1])
    assert [r.d for r in table.rows if r.sigma % 2] == [2]
    assert all(s2 <= r.sigma for r in table.rows)
    # every even class is a sum of two unit classes
    assert all(r.sigma >= 1 for r in table.rows)


def test_strata_counts():
    t5 = residue.strata(5)
    assert (len(t5.rows), t5.distinct) == (16, 14)
    t3 = residue.strata(3)
    assert (len(t3.rows), t3.distinct) == (4, 4)
    for h in range(5, 9):
        t = residue.strata(h)
        assert t.distinct < len(t.rows)


def test_strata_ranks_shared_on_collisions():
    t = residue.strata(5)
    assert t.row(10).stratum_rank == t.row(154).stratum_rank
    assert t.row(30).stratum_rank == t.row(462).stratum_rank
    assert sorted({r.stratum_rank for r in t.rows}) == list(range(14))


def test_rank_colors_by_ascending_sigma():
    t = residue.strata(4)
    by_d = {r.d: r.color for r in t.rows}
    assert [by_d[d] for d in (2, 14, 10, 70, 6, 42, 30, 210)] == [
        "black", "red", "blue", "green", "grey", "violet", "orange", "cyan",
    ]
    t = residue.strata(3)
    assert {r.d: r.color for r in t.rows} == {2: "black", 10: "red", 6: "blue", 30: "green"}
    t = residue.strata(2)
    assert {r.d: r.color for r in t.rows} == {2: "black", 6: "red"}


def test_classify():
    t = residue.strata(3)
    assert residue.classify(15, t) == residue.LayerKey(15, 30, 8, 3)
    assert residue.classify(7, t) == residue.LayerKey(7, 2, 3, 0)
    assert residue.classify(5, t) == residue.LayerKey(5, 10, 4, 1)


def test_classify_range_matches_scalar():
    t = residue.strata(5)
    d, s, r = residue.classify_range(3, 5000, t)
    for i, n in enumerate(range(3, 5001)):
        key = residue.classify(n, t)
        assert (d[i], s[i], r[i]) == (key.d, key.sigma, key.stratum_rank)


def test_sylvester_ratio_identity_small(small_table):
    h = 6
    m = primorial(h)
    s2 = residue.sigma_primorial(h, 2)
    for n in range(3, 2000):
        lhs = Fraction(residue.sigma_primorial(h, math.gcd(2 * n, m)), s2)
        # valid while every odd prime factor of n is among the first h primes
        f = odd_prime_factors(small_table, n)
        if all(p <= 13 for p in f.odd_prime_divisors):
            assert lhs == sylvester_factor(f)


def test_class_pair_reps_paper_examples():
    assert residue.count_class_pair_reps(60, 6, 1, 5, 5) == 9
    assert residue.count_class_pair_reps(58, 6, 5, 5, 5, "unordered") == 5
    assert residue.count_class_pair_reps(8, 6, 1, 1, 5) == 0


@given(st.integers(min_value=2, max_value=400))
def test_class_pair_rep_formulas(h):
    assert residue.count_class_pair_reps(6 * h, 6, 1, 5, 5) == h - 1
    assert residue.count_class_pair_reps(6 * h - 2, 6, 5, 5, 5, "unordered") == h // 2
    assert residue.count_class_pair_reps(6 * h + 2, 6, 1, 1, 5, "unordered") == h // 2


def test_class_pair_reps_brute_force():
    for E in range(10, 200, 2):
        for a, b in ((1, 5), (5, 1), (1, 1), (5, 5)):
            expect = sum(
                1 for x in range(5, E - 4)
                if x % 2 and (E - x) % 2 and x % 6 == a and (E - x) % 6 == b
            )
            assert residue.count_class_pair_reps(E, 6, a, b, 5) == expect
