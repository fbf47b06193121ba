import random

import pytest

from dolgachev.linalg import det_z
from dolgachev.smoothing import (
    DivGen,
    K_GEN,
    NotAdmissible,
    NotInvertible,
    Smoothing,
    chi_of_class,
    chi_wp2,
)
from dolgachev.surface import build_surface

from conftest import random_admissible

SEED = 20260810
CASES = 200


def test_chi_wp2_values():
    assert chi_wp2(-4, 3) == 1
    assert chi_wp2(0, 3) == 1
    assert chi_wp2(2, 3) == 4
    assert chi_wp2(6, 3) == 16
    with pytest.raises(NotInvertible):
        chi_wp2(3, 3)
    with pytest.raises(NotInvertible):
        chi_wp2(5, 4)
    assert chi_wp2(0, 5) == 1


def test_chi_gen_values(model31, smoothing):
    m, sm = model31, smoothing
    assert sm.chi_gen(m.zero()).total == 1
    L0 = m.curve("L0")
    assert sm.chi_gen(-1 * L0).total == 12
    assert sm.chi_gen(-1 * L0 + m.curve("F1") - m.curve("F9")).total == 11
    bd = sm.chi_gen(-1 * L0)
    assert bd.total == bd.chiY + bd.chiW1 + bd.chiW2 - bd.chiZ1 - bd.chiZ2
    with pytest.raises(NotAdmissible):
        sm.chi_gen(m.curve("F1"))


def test_pair_gen_examples(model31, smoothing):
    m, sm = model31, smoothing
    k = sm.k_multiple_rep(1)
    assert sm.pair_gen(k, k) == 0
    c1 = m.curve("C1")
    rng = random.Random(SEED)
    for _ in range(10):
        d = random_admissible(m, rng)
        assert sm.pair_gen(c1, d) == 0
    g1 = sm.g_rep(1)
    assert sm.pair_gen(g1, g1) == -1


def test_k_multiple_reps(model31, smoothing):
    m, sm = model31, smoothing
    assert sm.k_multiple_rep(6) == m.curve("C0")
    twok = m.curve("C2") + m.curve("E2") + m.curve("E3")
    assert sm.k_multiple_rep(1) == m.curve("E1") - twok
    assert sm.k_multiple_rep(0) == m.zero()
    for mm in range(-12, 13):
        rep = sm.k_multiple_rep(mm)
        assert m.is_admissible(rep).ok
        assert sm.to_gen(rep) == DivGen([mm * c for c in K_GEN.coords])


def test_to_gen_kernel_and_basis(model31, smoothing):
    m, sm = model31, smoothing
    assert sm.to_gen(m.curve("C1")).is_zero
    assert sm.to_gen(2 * m.curve("C2") + m.curve("E2")).is_zero
    k = sm.to_gen(sm.k_multiple_rep(1))
    assert k == K_GEN
    assert k.dot(k) == 0
    for i in range(9):
        assert k.dot(sm.g_class(i + 1)) == -1
    for i in range(12):
        assert sm.to_gen(sm.g_rep(i)) == sm.g_class(i)


def test_ns_gram(smoothing):
    gram = smoothing.ns_gram()
    expected = [[0] * 10 for _ in range(10)]
    for i in range(9):
        expected[i][i] = -1
    expected[9][9] = 1
    assert gram == expected
    assert det_z(gram) == -1
    # 3 G10 = sum G_i - K in coordinates
    three_g10 = 3 * smoothing.g_class(10)
    total = DivGen([0] * 10)
    for i in range(1, 10):
        total = total + smoothing.g_class(i)
    assert three_g10 == total - K_GEN


def test_recipe_identity_property(model31, smoothing):
    m, sm = model31, smoothing
    c0 = m.curve("C0")
    rng = random.Random(SEED + 1)
    for _ in range(CASES):
        d = random_admissible(m, rng)
        lhs = 6 * sm.pair_gen(d, d)
        rhs = m.intersect(c0, d) + 12 * sm.chi_gen(d).total - 12
        assert lhs == rhs


def test_bilinearity_property(model31, smoothing):
    m, sm = model31, smoothing
    rng = random.Random(SEED + 2)
    for _ in range(CASES):
        a = random_admissible(m, rng, spread=3)
        b = random_admissible(m, rng, spread=3)
        c = random_admissible(m, rng, spread=3)
        assert sm.pair_gen(a + b, c) == sm.pair_gen(a, c) + sm.pair_gen(b, c)
        assert sm.pair_gen(a, b) == sm.pair_gen(b, a)


def test_kernel_invariance_property(model31, smoothing):
    m, sm = model31, smoothing
    rng = random.Random(SEED + 3)
    c1 = m.curve("C1")
    kernel2 = 2 * m.curve("C2") + m.curve("E2")
    for _ in range(CASES):
        d = random_admissible(m, rng, spread=3)
        e = random_admissible(m, rng, spread=3)
        mm, kk = rng.randint(-3, 3), rng.randint(-3, 3)
        shifted = d + mm * c1 + kk * kernel2
        assert sm.pair_gen(shifted, e) == sm.pair_gen(d, e)


def test_fiber_intersection_property(model31, smoothing):
    # chi(D + C0) - chi(D) = (C0 . D)
    m, sm = model31, smoothing
    c0 = m.curve("C0")
    rng = random.Random(SEED + 4)
    for _ in range(CASES):
        d = random_admissible(m, rng)
        assert sm.chi_gen(d + c0).total - sm.chi_gen(d).total == m.intersect(c0, d)


def _random_class(rng):
    return DivGen([rng.randint(-5, 5) for _ in range(10)])


def test_riemann_roch_identities_on_classes():
    rng = random.Random(SEED + 5)
    for _ in range(CASES):
        d1, d2 = _random_class(rng), _random_class(rng)
        n = rng.randint(-4, 4)
        # (a) additivity up to the intersection pairing
        assert chi_of_class(d1 + d2) == chi_of_class(d1) + chi_of_class(d2) + d1.dot(d2) - 1
        # (b) dual
        assert chi_of_class(-d1) == -chi_of_class(d1) + d1.dot(d1) + 2
        # (d) and (d') multiples
        nd = DivGen([n * c for c in d1.coords])
        assert chi_of_class(nd) == n * chi_of_class(d1) + n * (n - 1) // 2 * d1.dot(d1) - n + 1
        assert chi_of_class(nd) == n * n * chi_of_class(d1) \
            + n * (n - 1) // 2 * K_GEN.dot(d1) - n * n + 1


def test_riemann_roch_rational_curve_identity(smoothing):
    # (f) chi(nD) = n(n+1)/2 D^2 + n + 1 for classes of arithmetic genus 0
    rng = random.Random(SEED + 6)
    candidates = [smoothing.g_class(i) for i in range(1, 11)]
    while len(candidates) < 40:
        d = _random_class(rng)
        if (d.dot(d) + K_GEN.dot(d)) // 2 + 1 == 0:
            candidates.append(d)
    for d in candidates:
        for n in range(-3, 4):
            nd = DivGen([n * c for c in d.coords])
            assert chi_of_class(nd) == n * (n + 1) // 2 * d.dot(d) + n + 1


def test_to_gen_additive(model31, smoothing):
    m, sm = model31, smoothing
    rng = random.Random(SEED + 7)
    for _ in range(60):
        a = random_admissible(m, rng, spread=3)
        b = random_admissible(m, rng, spread=3)
        assert sm.to_gen(a + b) == sm.to_gen(a) + sm.to_gen(b)


def test_smoothing_rejects_other_models():
    with pytest.raises(NotAdmissible):
        Smoothing(build_surface(5, 2))
