"""Exact rational linear algebra.

Everything downstream (chain calculus, intersection lattices, graded pieces
of ideals) reduces to exact kernels, ranks and solves of integer or rational
matrices.  Small systems go through plain fraction Gaussian elimination.
Large kernels are found modulo word-sized primes (numpy), lifted to Q by CRT
and rational reconstruction, and then *verified* exactly, so the fast path
never weakens exactness:

  * an exact vector v with A v = 0 certifies dim ker >= (number of such
    independent v);
  * rank of A mod p never exceeds rank over Q, so ncols - rank_p certifies
    dim ker <= ncols - rank_p.

When both bounds meet, the kernel (and hence the rank) is proved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

Rat = Fraction


class SingularMatrix(Exception):
    """Square system with vanishing determinant."""


class InvalidChain(Exception):
    """A self-intersection chain entry is < 2."""


class ExactnessFailure(Exception):
    """The modular engine could not certify an exact result."""


class MatQ:
    """Dense matrix over Q. Rows of Fractions; shape fixed at construction."""

    def __init__(self, rows):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, MatQ) and self.rows == other.rows

    def __repr__(self):
        return f"MatQ({self.nrows}x{self.ncols})"


def rref_fraction(rows):
    """Reduced row echelon form over Q (in place on a copy).

    Returns (rref_rows, pivot_columns).  Fine for small matrices; the large
    ones go through the modular engine below.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_q(m: MatQ) -> int:
    """Exact rank over Q."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.nrows * m.ncols <= 4096:
        return len(rref_fraction(m.rows)[1])
    rows = [_clear_denominators(r) for r in m.rows]
    return m.ncols - len(nullspace_int(rows, m.ncols))


def solve_q(m: MatQ, b) -> list[Fraction]:
    """Unique exact solution of m x = b for square nonsingular m."""
    if m.nrows != m.ncols:
        raise SingularMatrix("matrix not square")
    n = m.nrows
    aug = [row[:] + [Fraction(bb)] for row, bb in zip(m.rows, b)]
    red, pivots = rref_fraction(aug)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [red[i][n] for i in range(n)]


def det_z(rows) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in rows]
    assert all(len(r) == n for r in m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pr is None:
                return 0
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def tridiag_det(ks) -> int:
    """Continuant D(k_1..k_r) = k_1 D(k_2..k_r) - D(k_3..k_r), D() = 1.

    Determinant of the tridiagonal matrix with diagonal ks and -1 off it.
    """
    ks = list(ks)
    if any(k < 2 for k in ks):
        raise InvalidChain(f"chain entries must be >= 2, got {ks}")
    d1, d0 = 1, 0  # D of the suffix, D of the suffix minus its head
    for k in reversed(ks):
        d1, d0 = k * d1 - d0, d1
    return d1


def nullspace_fraction(rows, ncols):
    """Exact kernel basis {v : rows . v = 0} by fraction RREF (small cases).

    Returns primitive integer vectors in echelon (one per free column).
    """
    red, pivots = rref_fraction(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(_primitive(v))
    return basis


# --- modular engine ---------------------------------------------------------

_PRIME_CAP = 2**31 - 1


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes():
    n = _PRIME_CAP
    while True:
        if _is_probable_prime(n):
            yield n
        n -= 2


def _rref_mod(a: np.ndarray, p: int):
    """RREF of int64 matrix mod p. Returns (reduced matrix, pivot columns).

    Forward elimination touches only the active block, back substitution
    then clears above the pivots; noticeably faster than naive full RREF
    on the tall matrices the ideal machinery produces.
    """
    m = a % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = (m[r, c:] * inv) % p
        below = np.nonzero(m[r + 1 :, c])[0]
        if len(below):
            rows = below + r + 1
            m[rows, c:] = (m[rows, c:] - np.outer(m[rows, c], m[r, c:])) % p
        pivots.append(c)
        r += 1
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        rows = np.nonzero(m[:i, c])[0]
        if len(rows):
            m[rows, c:] = (m[rows, c:] - np.outer(m[rows, c], m[i, c:])) % p
    return m[: len(pivots)], pivots


def _clear_denominators(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row]


def _primitive(v):
    den = 1
    for x in v:
        fx = Fraction(x)
        den = den * fx.denominator // gcd(den, fx.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _rat_reconstruct(r, m):
    """Rational y/x with y = r x mod m, |y|, |x| <= sqrt(m/2); None if absent."""
    bound = isqrt(m // 2)
    a0, a1 = m, r % m
    x0, x1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        x0, x1 = x1, x0 - q * x1
    if x1 == 0 or abs(x1) > bound:
        return None
    if gcd(abs(a1), abs(x1)) != 1:
        return None
    return Fraction(a1, x1)


class ModRowSource:
    """Anything that can emit its condition rows mod p and apply them exactly.

    The saturated graded-dimension engine composes big condition matrices out
    of blocks whose exact entries may be huge; blocks reduce themselves mod p
    cheaply instead.
    """

    def rows_mod(self, p: int) -> np.ndarray:
        raise NotImplementedError

    def apply_exact(self, vec) -> list:
        """Exact (bigint/Fraction) product rows . vec."""
        raise NotImplementedError


class DenseRows(ModRowSource):
    def __init__(self, rows):
        self.rows = [[int(x) for x in r] for r in rows]
        small = all(abs(x) < 2**62 for r in self.rows for x in r)
        self._np = np.array(self.rows, dtype=np.int64) if (small and self.rows) else None

    def rows_mod(self, p):
        if not self.rows:
            return np.zeros((0, 0), dtype=np.int64)
        if self._np is not None:
            return self._np % p
        return np.array([[x % p for x in r] for r in self.rows], dtype=np.int64)

    def apply_exact(self, vec):
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]


def kernel_of_sources(sources: list[ModRowSource], ncols: int, max_primes: int = 400):
    """Certified exact kernel of stacked condition blocks.

    Returns a list of primitive integer vectors.  dim is exact: the modular
    rank bounds it above, the verified vectors bound it below.
    """
    gen = _primes()
    p0 = next(gen)
    stack0 = _stack_mod(sources, ncols, p0)
    _, pivots = _rref_mod(stack0, p0)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return []

    # accumulate CRT residues of the echelon kernel basis
    residues = None  # per free col: list of length ncols
    modulus = 1
    primes_used = 0
    p = p0
    while True:
        red, piv = _rref_mod(_stack_mod(sources, ncols, p), p)
        if piv == pivots:
            vecs = []
            for fc in free:
                v = [0] * ncols
                v[fc] = 1
                for i, c in enumerate(piv):
                    v[c] = int((-red[i, fc]) % p)
                vecs.append(v)
            if residues is None:
                residues = vecs
                modulus = p
            else:
                inv = pow(modulus % p, p - 2, p)
                for vr, vn in zip(residues, vecs):
                    for k in range(ncols):
                        delta = ((vn[k] - vr[k]) % p) * inv % p
                        vr[k] = vr[k] + modulus * delta
                modulus *= p
            primes_used += 1
            # reconstruction attempts are cheap when they fail early, so try
            # at every power of two and then every few primes
            if ((primes_used & (primes_used - 1)) == 0 or
                    (primes_used > 16 and primes_used % 4 == 0)):
                lifted = _try_lift(residues, modulus, ncols)
                if lifted is not None and _verify_kernel(sources, lifted):
                    return lifted
        elif len(piv) > len(pivots) or (len(piv) == len(pivots) and tuple(piv) < tuple(pivots)):
            # earlier prime was unlucky; restart with the better pivot profile
            pivots = piv
            free = [c for c in range(ncols) if c not in pivots]
            if not free:
                return []
            residues, modulus, primes_used = None, 1, 0
            continue
        if primes_used >= max_primes:
            raise ExactnessFailure("rational reconstruction did not converge")
        p = next(gen)


def _stack_mod(sources, ncols, p):
    mats = [s.rows_mod(p) for s in sources]
    mats = [m for m in mats if m.size]
    if not mats:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(mats)


def _try_lift(residues, modulus, ncols):
    out = []
    for v in residues:
        lifted = []
        for x in v:
            f = _rat_reconstruct(x % modulus, modulus)
            if f is None:
                return None
            lifted.append(f)
        out.append(_primitive(lifted))
    return out


def _verify_kernel(sources, vecs):
    for v in vecs:
        for s in sources:
            if any(x != 0 for x in s.apply_exact(v)):
                return False
    return True


def nullspace_int(rows, ncols):
    """Certified exact kernel basis of an integer matrix given by rows."""
    if not rows:
        return [_unit(ncols, i) for i in range(ncols)]
    return kernel_of_sources([DenseRows(rows)], ncols)


def rank_int(rows, ncols) -> int:
    """Exact rank of an integer matrix (certified through the kernel)."""
    return ncols - len(nullspace_int(rows, ncols))


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v
