"""Chain calculus for cyclic quotient singularities of class T.

A chain [k_1..k_r] (all k_i >= 2) is the string of self-intersection
magnitudes of the exceptional curves resolving a singularity of type
1/n^2 (1, na-1).  The continued fraction

    k_1 - 1/(k_2 - 1/(... - 1/k_r)) = n^2 / (na - 1)

pins (n, a) down; the continuant identity tridiag_det(ks) = n^2 is the
cheap certificate.  Chains come with an auxiliary (-1)-curve meeting both
ends (twice the single curve when r = 1), which makes the extended
intersection matrix degenerate of corank one; its primitive null vector
gives the multiplicities of the chain curves inside an elliptic fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .linalg import InvalidChain, nullspace_fraction, tridiag_det


class InvalidPair(Exception):
    """(n, a) not coprime with n > a > 0."""


def _isqrt_exact(p):
    n = isqrt(p)
    return n if n * n == p else None


class DegenerateChain(Exception):
    """Extended intersection matrix does not have a 1-dimensional kernel."""


@dataclass(frozen=True)
class TChain:
    """Resolution chain with its singularity invariants.

    Oriented so that the (-k_1) end carries fiber coefficient a; the
    reversed chain describes the same singularity with a -> n - a.
    """

    ks: tuple[int, ...]
    n: int
    a: int

    @property
    def r(self) -> int:
        return len(self.ks)

    @property
    def canonical_ks(self) -> tuple[int, ...]:
        """Reversal-normalized chain (lexicographically smaller end first)."""
        rev = tuple(reversed(self.ks))
        return min(self.ks, rev)

    def __str__(self):
        return f"[{','.join(map(str, self.ks))}] ~ 1/{self.n ** 2}(1,{self.n * self.a - 1})"


def hj_expand(n: int, a: int) -> TChain:
    """Hirzebruch-Jung expansion of n^2/(na - 1).

    The returned chain starts at the curve with fiber coefficient a.
    """
    if not (n > a > 0) or gcd(n, a) != 1:
        raise InvalidPair(f"need n > a > 0 coprime, got ({n}, {a})")
    num, den = n * n, n * a - 1
    ks = []
    while den > 0:
        k = -(-num // den)  # ceiling
        ks.append(k)
        num, den = den, k * den - num
    assert tridiag_det(ks) == n * n
    return TChain(tuple(ks), n, a)


def chain_from_ks(ks) -> TChain:
    """Recover (n, a) from a chain; raises InvalidChain if it is not class T."""
    ks = tuple(int(k) for k in ks)
    p = tridiag_det(ks)
    q = tridiag_det(ks[1:]) if len(ks) > 1 else 1
    n = _isqrt_exact(p)
    if n is None:
        raise InvalidChain(f"continuant {p} of {list(ks)} is not a perfect square")
    if (q + 1) % n != 0:
        raise InvalidChain(f"{list(ks)} does not resolve a 1/n^2(1,na-1) point")
    a = (q + 1) // n
    if not (n > a > 0) or gcd(n, a) != 1:
        raise InvalidChain(f"recovered invalid pair ({n}, {a}) from {list(ks)}")
    c = TChain(ks, n, a)
    if hj_expand(n, a).ks != ks:
        raise InvalidChain(f"{list(ks)} is not the expansion of ({n}, {a})")
    return c


def blow_up_chain(c: TChain, end: str) -> TChain:
    """Blow up where the auxiliary (-1)-curve meets the chosen chain end.

    'L' produces [k_1+1, k_2..k_r, 2] and (n, a) -> (n+a, a); 'R' produces
    [2, k_1..k_{r-1}, k_r+1] and (n, a) -> (2n-a, n).  The new invariants
    are recovered from the chain itself and cross-checked against hj_expand.
    """
    if end == "L":
        ks = (c.ks[0] + 1,) + c.ks[1:] + (2,)
    elif end == "R":
        ks = (2,) + c.ks[:-1] + (c.ks[-1] + 1,)
    else:
        raise ValueError("end must be 'L' or 'R'")
    new = chain_from_ks(ks)
    expected_n = c.n + (c.a if end == "L" else c.n - c.a)
    assert new.n == expected_n
    return new


def _extended_gram(c: TChain):
    """Intersection matrix of the chain curves plus the auxiliary (-1)-curve."""
    r = c.r
    g = [[0] * (r + 1) for _ in range(r + 1)]
    for i, k in enumerate(c.ks):
        g[i][i] = -k
    for i in range(r - 1):
        g[i][i + 1] = g[i + 1][i] = 1
    g[r][r] = -1
    if r == 1:
        g[0][r] = g[r][0] = 2  # the (-1)-curve meets the single curve twice
    else:
        g[0][r] = g[r][0] = 1
        g[r - 1][r] = g[r][r - 1] = 1
    return g


def fiber_coefficients(c: TChain) -> tuple[int, ...]:
    """Multiplicities (a_1..a_r, n) of chain curves and the (-1)-curve
    inside the degenerate elliptic fiber they form.

    Primitive positive null vector of the extended intersection matrix;
    the ends carry a and n - a, the (-1)-curve carries n.
    """
    g = _extended_gram(c)
    basis = nullspace_fraction(g, c.r + 1)
    if len(basis) != 1:
        raise DegenerateChain(f"kernel has dimension {len(basis)}, expected 1")
    v = basis[0]
    if v[-1] < 0:
        v = [-x for x in v]
    if any(x <= 0 for x in v):
        raise DegenerateChain("null vector is not strictly positive")
    assert v[-1] == c.n and v[0] == c.a and v[c.r - 1] == c.n - c.a
    return tuple(v)


def discrepancies(c: TChain) -> tuple[Fraction, ...]:
    """Discrepancy complements 1 - b_i of the contraction of the chain.

    Equals (a_1/n, ..., a_r/n); every entry lies strictly between 0 and 1.
    """
    coeffs = fiber_coefficients(c)
    out = tuple(Fraction(x, c.n) for x in coeffs[:-1])
    assert all(0 < d < 1 for d in out)
    return out
