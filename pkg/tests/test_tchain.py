import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest

from dolgachev.linalg import InvalidChain, tridiag_det
from dolgachev.tchain import (
    InvalidPair,
    blow_up_chain,
    chain_from_ks,
    discrepancies,
    fiber_coefficients,
    hj_expand,
)


def test_hj_examples():
    assert hj_expand(3, 1).ks == (5, 2)
    assert hj_expand(2, 1).ks == (4,)
    assert hj_expand(4, 1).ks == (6, 2, 2)


def test_hj_invalid_pairs():
    for n, a in [(1, 1), (4, 2), (3, 3), (2, 3), (5, 0)]:
        with pytest.raises(InvalidPair):
            hj_expand(n, a)


def test_blow_up_examples():
    c = hj_expand(3, 1)
    assert blow_up_chain(c, "L").ks == (6, 2, 2)
    assert blow_up_chain(c, "R").ks == (2, 5, 3)
    assert blow_up_chain(hj_expand(2, 1), "L").ks == (5, 2)
    assert tridiag_det([5, 2]) == 9  # consistent with hj_expand(3, 1)


def test_blow_up_invariants():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(2, 15)
        a = rng.choice([x for x in range(1, n) if gcd(x, n) == 1])
        c = hj_expand(n, a)
        left, right = blow_up_chain(c, "L"), blow_up_chain(c, "R")
        # the new singularity index is the old one plus the end multiplicity
        assert left.n == c.n + c.a
        assert right.n == c.n + (c.n - c.a)
        assert fiber_coefficients(left)[-1] == left.n
        assert fiber_coefficients(right)[-1] == right.n


def test_continuant_certificate_up_to_50():
    for n in range(2, 51):
        for a in range(1, n):
            if gcd(n, a) == 1:
                assert tridiag_det(hj_expand(n, a).ks) == n * n


def _brute_force_null_vector(gram, bound):
    r = len(gram)
    for v in product(range(1, bound + 1), repeat=r):
        if gcd(*v) != 1 and r > 1:
            continue
        if all(sum(gram[i][j] * v[j] for j in range(r)) == 0 for i in range(r)):
            return v
    return None


def test_fiber_coefficients_against_brute_force():
    # enumeration oracle on the extended intersection matrix
    cases = {
        (5, 2): (1, 2, 3),
        (4,): (1, 2),
        (6, 2, 2): (1, 2, 3, 4),
        (2, 5, 3): (3, 1, 2, 5),
    }
    for ks, expected in cases.items():
        c = chain_from_ks(ks)
        gram = [[0] * (c.r + 1) for _ in range(c.r + 1)]
        for i, k in enumerate(ks):
            gram[i][i] = -k
        for i in range(c.r - 1):
            gram[i][i + 1] = gram[i + 1][i] = 1
        gram[c.r][c.r] = -1
        if c.r == 1:
            gram[0][c.r] = gram[c.r][0] = 2
        else:
            gram[0][c.r] = gram[c.r][0] = 1
            gram[c.r - 1][c.r] = gram[c.r][c.r - 1] = 1
        assert _brute_force_null_vector(gram, 8) == expected
        assert fiber_coefficients(c) == expected


def test_fiber_ends_random_pairs():
    rng = random.Random(29)
    for _ in range(30):
        n = rng.randint(2, 30)
        a = rng.choice([x for x in range(1, n) if gcd(x, n) == 1])
        c = hj_expand(n, a)
        coeffs = fiber_coefficients(c)
        assert coeffs[0] == a
        assert coeffs[c.r - 1] == n - a
        assert coeffs[-1] == n


def test_discrepancy_examples():
    assert discrepancies(hj_expand(3, 1)) == (Fraction(1, 3), Fraction(2, 3))
    assert discrepancies(hj_expand(2, 1)) == (Fraction(1, 2),)
    for d in discrepancies(chain_from_ks([2, 5, 3])):
        assert 0 < d < 1


def test_discrepancies_solve_the_orthogonality_system():
    # the (1 - b_i) vector against the chain rows plus the (-1)-curve column
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(3, 20)
        a = rng.choice([x for x in range(1, n) if gcd(x, n) == 1])
        c = hj_expand(n, a)
        delta = discrepancies(c)
        r = c.r
        for i in range(r):
            row = Fraction(0)
            for j in range(r):
                if j == i:
                    row += delta[j] * (-c.ks[j])
                elif abs(j - i) == 1:
                    row += delta[j]
            e_col = 1 if (i in (0, r - 1) and r > 1) else (2 if r == 1 else 0)
            assert row + e_col == 0


def test_chain_from_ks_validation():
    assert chain_from_ks([2, 5, 3]).n == 5
    assert chain_from_ks([2, 5, 3]).a == 3
    with pytest.raises(InvalidChain):
        chain_from_ks([2, 3])  # continuant 5 is not a square
    with pytest.raises(InvalidChain):
        chain_from_ks([3, 3])  # continuant 8 is not a square
    with pytest.raises(InvalidChain):
        chain_from_ks([5, 1])


def test_canonical_normalization():
    assert hj_expand(3, 1).canonical_ks == (2, 5)
    assert hj_expand(5, 3).canonical_ks == (2, 5, 3)
    assert hj_expand(5, 2).canonical_ks == (2, 5, 3)  # reversal partners agree
