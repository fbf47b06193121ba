"""Graded pieces of homogeneous ideals in Q[x, y, z].

Two flavours of "degree-d part" coexist here.

graded_piece is the literal one: the degree-d component of the ideal
generated by the given expression, with products expanded through

    (I . J)_d = sum over d1 + d2 = d of I_{d1} . J_{d2}.

graded_dim is the sheaf-theoretic one: the dimension of the degree-d part
of the *saturation*, i.e. h^0 of the twisted ideal sheaf.  That is the
number a computer algebra system reports for the rank of H^0(O(d) (x) I)
when I cuts out points, and the one the curve-counting tables need: a
product of point ideals has no low-degree elements at all, while its
saturation is cut out by finitely many local conditions.  The engine
turns every factor into exact linear conditions (Taylor coefficients at
rational points, derivative-membership for conjugate point clusters) and
returns a certified exact kernel dimension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .linalg import (
    DenseRows,
    ModRowSource,
    kernel_of_sources,
    nullspace_fraction,
    nullspace_int,
    rref_fraction,
)

__all__ = [
    "HomPoly",
    "parse_poly",
    "Gens",
    "Prod",
    "Pow",
    "Colon",
    "graded_piece",
    "graded_dim",
    "monomials",
    "ParseError",
    "NotHomogeneous",
    "UnsupportedIdeal",
]


class ParseError(Exception):
    pass


class NotHomogeneous(Exception):
    pass


class UnsupportedIdeal(Exception):
    """Expression outside the class the saturation engine can certify."""


# --- sparse homogeneous polynomials ----------------------------------------


@dataclass(frozen=True)
class HomPoly:
    """Homogeneous polynomial as a sorted tuple of ((i,j,k), coeff)."""

    terms: tuple[tuple[tuple[int, int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, d):
        items = tuple(sorted((m, Fraction(c)) for m, c in d.items() if c != 0))
        if items:
            degs = {sum(m) for m, _ in items}
            if len(degs) != 1:
                raise NotHomogeneous(f"mixed degrees {sorted(degs)}")
        return cls(items)

    @classmethod
    def variable(cls, i):
        m = tuple(1 if j == i else 0 for j in range(3))
        return cls(((m, Fraction(1)),))

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls((((0, 0, 0), c),) if c else ())

    @property
    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        if not self.terms:
            return -1
        return sum(self.terms[0][0])

    def __add__(self, other):
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return HomPoly.from_dict(d)

    def __sub__(self, other):
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) - c
        return HomPoly.from_dict(d)

    def __neg__(self):
        return HomPoly(tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            d = {}
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    d[m] = d.get(m, Fraction(0)) + c1 * c2
            return HomPoly.from_dict(d)
        return HomPoly(tuple((m, c * Fraction(other)) for m, c in self.terms)) if other else HomPoly(())

    __rmul__ = __mul__

    def pow(self, e: int):
        out = HomPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, pt):
        return sum(
            c * Fraction(pt[0]) ** m[0] * Fraction(pt[1]) ** m[1] * Fraction(pt[2]) ** m[2]
            for m, c in self.terms
        )

    def coeff_vector(self, d=None):
        d = self.degree if d is None else d
        idx = monomial_index(d)
        v = [Fraction(0)] * len(idx)
        for m, c in self.terms:
            v[idx[m]] = c
        return v

    def primitive_int(self):
        """Scale to integer coefficients with content 1."""
        from math import gcd

        den = 1
        for _, c in self.terms:
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for _, c in self.terms:
            g = gcd(g, abs(int(c * den)))
        g = g or 1
        return HomPoly(tuple((m, c * den / g) for m, c in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.terms:
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}")
                for v, e in zip("xyz", m)
                if e
            )
            if not mono:
                bits.append(f"{c}")
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    """Degree-d monomials of Q[x,y,z] in a fixed order."""
    return tuple(
        (i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(d: int):
    return {m: i for i, m in enumerate(monomials(d))}


_TOKEN = re.compile(r"\s*(\d+|[xyz]|\^|\*|\+|-|\(|\))")


def parse_poly(text: str) -> HomPoly:
    """Parse integer-coefficient expressions in x, y, z; must be homogeneous."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    out, rest = _parse_sum(tokens, 0)
    if rest != len(tokens):
        raise ParseError(f"trailing tokens {tokens[rest:]}")
    if out.is_zero:
        return out
    degs = {sum(m) for m, _ in out.terms}
    if len(degs) > 1:
        raise NotHomogeneous(f"degrees {sorted(degs)} in {text!r}")
    return out


def _parse_sum(toks, i):
    sign = 1
    if i < len(toks) and toks[i] in "+-":
        sign = -1 if toks[i] == "-" else 1
        i += 1
    acc, i = _parse_product(toks, i)
    acc = sign * acc
    while i < len(toks) and toks[i] in "+-":
        s = -1 if toks[i] == "-" else 1
        term, i = _parse_product(toks, i + 1)
        acc = acc + s * term
    return acc, i


def _parse_product(toks, i):
    acc, i = _parse_power(toks, i)
    while i < len(toks) and (toks[i] == "*" or toks[i] == "(" or toks[i].isdigit() or toks[i] in "xyz"):
        if toks[i] == "*":
            i += 1
        nxt, i = _parse_power(toks, i)
        acc = acc * nxt
    return acc, i


def _parse_power(toks, i):
    base, i = _parse_atom(toks, i)
    while i < len(toks) and toks[i] == "^":
        if i + 1 >= len(toks) or not toks[i + 1].isdigit():
            raise ParseError("exponent must be an integer")
        base = base.pow(int(toks[i + 1]))
        i += 2
    return base, i


def _parse_atom(toks, i):
    if i >= len(toks):
        raise ParseError("unexpected end of expression")
    t = toks[i]
    if t == "(":
        inner, j = _parse_sum(toks, i + 1)
        if j >= len(toks) or toks[j] != ")":
            raise ParseError("unbalanced parenthesis")
        return inner, j + 1
    if t.isdigit():
        return HomPoly.constant(int(t)), i + 1
    if t in "xyz":
        return HomPoly.variable("xyz".index(t)), i + 1
    raise ParseError(f"unexpected token {t!r}")


# --- ideal expressions -------------------------------------------------------


@dataclass(frozen=True)
class Gens:
    polys: tuple[HomPoly, ...]

    def __post_init__(self):
        if any(p.is_zero for p in self.polys):
            raise ValueError("zero generator")


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")


@dataclass(frozen=True)
class Colon:
    num: object
    den: object


def gens_of(expr) -> tuple[HomPoly, ...]:
    """Finite generating set (products of children's generators)."""
    if isinstance(expr, Gens):
        return expr.polys
    if isinstance(expr, Prod):
        out = (HomPoly.constant(1),)
        for f in expr.factors:
            out = tuple(a * b for a in out for b in gens_of(f))
        return out
    if isinstance(expr, Pow):
        out = (HomPoly.constant(1),)
        for _ in range(expr.exponent):
            out = tuple(a * b for a in out for b in gens_of(expr.base))
        return out
    raise UnsupportedIdeal(f"no finite generating set for {type(expr).__name__}")


_piece_cache: dict = {}


def graded_piece(expr, d: int) -> list[HomPoly]:
    """Exact basis of the literal degree-d component."""
    if d < 0:
        return []
    key = (expr, d)
    if key in _piece_cache:
        return _piece_cache[key]
    if isinstance(expr, Gens):
        span = []
        for g in expr.polys:
            dg = g.degree
            if dg > d:
                continue
            for m in monomials(d - dg):
                span.append(HomPoly(((m, Fraction(1)),)) * g)
        basis = _reduce_to_basis(span, d)
    elif isinstance(expr, Prod):
        basis = _product_piece(list(expr.factors), d)
    elif isinstance(expr, Pow):
        if expr.exponent == 1:
            basis = graded_piece(expr.base, d)
        else:
            h = expr.exponent // 2
            left = Pow(expr.base, h)
            right = Pow(expr.base, expr.exponent - h)
            basis = _product_piece([left, right], d)
    elif isinstance(expr, Colon):
        basis = _colon_piece(expr, d)
    else:
        raise UnsupportedIdeal(f"unknown expression {expr!r}")
    _piece_cache[key] = basis
    return basis


def graded_dim(expr, d: int) -> int:
    """Dimension of the degree-d piece of the saturation (sheaf sections)."""
    return len(_saturated_kernel(expr, d))


def _product_piece(factors, d):
    if len(factors) == 1:
        return graded_piece(factors[0], d)
    left = factors[0]
    rest = factors[1] if len(factors) == 2 else Prod(tuple(factors[1:]))
    span = []
    for d1 in range(d + 1):
        lp = graded_piece(left, d1)
        if not lp:
            continue
        rp = graded_piece(rest, d - d1)
        span.extend(a * b for a in lp for b in rp)
    return _reduce_to_basis(span, d)


def _reduce_to_basis(polys, d):
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return []
    rows = [p.coeff_vector(d) for p in polys]
    red, _ = rref_fraction(rows)
    mons = monomials(d)
    return [
        HomPoly.from_dict({mons[j]: c for j, c in enumerate(row) if c != 0})
        for row in red
    ]


def _colon_piece(expr, d):
    """{f of degree d : f g in num for every generator g of den}."""
    den_gens = gens_of(expr.den)
    mons_d = monomials(d)
    cond_rows = []
    for g in den_gens:
        e = d + g.degree
        basis = graded_piece(expr.num, e)
        w = nullspace_fraction([b.coeff_vector(e) for b in basis], len(monomials(e)))
        mult = _mult_matrix(g, d)
        for row in w:
            cond_rows.append([sum(row[i] * mult[i][j] for i in range(len(row))) for j in range(len(mons_d))])
    kernel = nullspace_fraction(cond_rows, len(mons_d))
    return [
        HomPoly.from_dict({mons_d[j]: c for j, c in enumerate(v) if c != 0})
        for v in kernel
    ]


@lru_cache(maxsize=None)
def _mult_matrix_cached(g: HomPoly, d: int):
    """Matrix of multiplication by g from degree d to degree d + deg g."""
    e = d + g.degree
    src, tgt = monomials(d), monomial_index(e)
    rows = [[0] * len(src) for _ in range(len(monomials(e)))]
    for j, m in enumerate(src):
        for mg, c in g.terms:
            mm = (m[0] + mg[0], m[1] + mg[1], m[2] + mg[2])
            rows[tgt[mm]][j] += c
    return rows


def _mult_matrix(g, d):
    return _mult_matrix_cached(g.primitive_int(), d)


@lru_cache(maxsize=None)
def _mult_columns_cached(g: HomPoly, d: int):
    """Column-sparse multiplication by g: per degree-d monomial, the list of
    (target index, coefficient) pairs in degree d + deg g."""
    e = d + g.degree
    tgt = monomial_index(e)
    cols = []
    for m in monomials(d):
        col = []
        for mg, c in g.terms:
            mm = (m[0] + mg[0], m[1] + mg[1], m[2] + mg[2])
            col.append((tgt[mm], int(c)))
        cols.append(col)
    return cols


def _mult_columns(g, d):
    return _mult_columns_cached(g.primitive_int(), d)


# --- the saturation engine ---------------------------------------------------


@dataclass(frozen=True)
class _PointAtom:
    point: tuple[int, int, int]
    u: HomPoly  # local coordinates: linear forms vanishing at the point
    v: HomPoly
    stair: tuple[tuple[int, int], ...]  # monomial generators in (u, v)


@dataclass(frozen=True)
class _ClusterAtom:
    expr: object  # reduced point cluster; pieces are spaces of vanishing forms


def _classify_atom(expr):
    if isinstance(expr, Gens):
        polys = [p.primitive_int() for p in expr.polys]
        if any(p.degree == 0 for p in polys):
            return "unit"
        if len(polys) == 1:
            raise UnsupportedIdeal("principal ideals have divisorial support")
        if len(polys) != 2:
            raise UnsupportedIdeal("only two-generator ideals are supported")
        a, b = sorted(polys, key=lambda p: p.degree)
        if a.degree == 1 and b.degree == 1:
            pt = _intersection_point(a, b)
            return _PointAtom(pt, a, b, ((1, 0), (0, 1)))
        if a.degree == 1 and b.degree == 2:
            root = _sqrt_of_quadric(b)
            if root is not None and _intersection_point(root, a) is not None:
                pt = _intersection_point(root, a)
                return _PointAtom(pt, root, a, ((2, 0), (0, 1)))
            raise UnsupportedIdeal(f"quadric generator {b} is not a square")
        if _coprime(a, b):
            return _ClusterAtom(expr)
        raise UnsupportedIdeal(f"generators {a}, {b} share a factor")
    if isinstance(expr, Colon):
        return _ClusterAtom(expr)
    raise UnsupportedIdeal(f"cannot classify {type(expr).__name__}")


def _intersection_point(a: HomPoly, b: HomPoly):
    """Common zero of two independent linear forms, as a primitive int point."""
    rows = [a.coeff_vector(1), b.coeff_vector(1)]
    ker = nullspace_fraction(rows, 3)
    if len(ker) != 1:
        return None
    # monomial order for degree 1 is (x, y, z)
    return tuple(ker[0])


def _sqrt_of_quadric(q: HomPoly):
    """Linear ell with ell^2 proportional to q, or None."""
    # rank-1 symmetric matrix test
    idx = {m: c for m, c in q.terms}
    M = [[Fraction(0)] * 3 for _ in range(3)]
    for (i, j) in [(0, 0), (1, 1), (2, 2)]:
        m = tuple(2 if k == i else 0 for k in range(3))
        M[i][i] = idx.get(m, Fraction(0))
    pairs = [(0, 1), (0, 2), (1, 2)]
    for i, j in pairs:
        m = tuple(1 if k in (i, j) else 0 for k in range(3))
        M[i][j] = M[j][i] = idx.get(m, Fraction(0)) / 2
    # find a nonzero diagonal after completing: try each variable as lead
    for i in range(3):
        if M[i][i] != 0:
            lead = M[i][i]
            coeffs = [M[i][k] for k in range(3)]
            ell = HomPoly.from_dict(
                {
                    tuple(1 if k == v else 0 for k in range(3)): coeffs[v]
                    for v in range(3)
                }
            )
            if (ell * ell) * lead == q * (lead * lead):
                return ell.primitive_int()
            return None
    return None


def _coprime(a: HomPoly, b: HomPoly) -> bool:
    """No common factor: the degree-(da+db) piece of (a, b) has the Koszul
    dimension (equivalently the only syzygy in that degree is the trivial
    one)."""
    d = a.degree + b.degree
    span = [
        (HomPoly(((m, Fraction(1)),)) * a) for m in monomials(b.degree)
    ] + [
        (HomPoly(((m, Fraction(1)),)) * b) for m in monomials(a.degree)
    ]
    rows = [p.coeff_vector(d) for p in span]
    expected = len(monomials(b.degree)) + len(monomials(a.degree)) - 1
    return len(rref_fraction(rows)[1]) == expected


def _merge_staircases(atoms_with_powers):
    """Product of monomial local ideals at one point (shared coordinates)."""
    gens = [(0, 0)]
    for atom, power in atoms_with_powers:
        for _ in range(power):
            gens = [(g[0] + s[0], g[1] + s[1]) for g in gens for s in atom.stair]
            gens = _minimalize(gens)
    return gens


def _minimalize(gens):
    out = []
    for g in sorted(set(gens)):
        if not any(g[0] >= h[0] and g[1] >= h[1] for h in out):
            out.append(g)
    return out


def _standard_monomials(gens):
    """Monomials under the staircase (finite iff the ideal is primary)."""
    if not gens:
        raise UnsupportedIdeal("empty staircase")
    amax = max(g[0] for g in gens)
    bmax = max(g[1] for g in gens)
    if not any(g[1] == 0 for g in gens) or not any(g[0] == 0 for g in gens):
        raise UnsupportedIdeal("local ideal is not primary")
    out = []
    for a in range(amax):
        for b in range(bmax):
            if not any(a >= g[0] and b >= g[1] for g in gens):
                out.append((a, b))
    return out


class _TaylorBlock(DenseRows):
    """Vanishing of chosen local Taylor coefficients at a rational point."""

    def __init__(self, point, u, v, std_mons, d):
        rows = _taylor_rows(point, u, v, std_mons, d)
        super().__init__(rows)


def _taylor_rows(point, u: HomPoly, v: HomPoly, std_mons, d):
    # dual basis: directions eu, ev and base vector ep with u, v picking out
    # the local coordinates s, t of x = ep + s eu + t ev
    third = None
    for i in range(3):
        w = HomPoly.variable(i)
        rows = [u.coeff_vector(1), v.coeff_vector(1), w.coeff_vector(1)]
        if len(rref_fraction(rows)[1]) == 3:
            third = w
            break
    assert third is not None
    from .linalg import MatQ, solve_q

    A = MatQ([u.coeff_vector(1), v.coeff_vector(1), third.coeff_vector(1)])
    cols = []
    for rhs in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
        cols.append(solve_q(A, rhs))
    eu = _scale_int([cols[0][i] for i in range(3)])
    ev = _scale_int([cols[1][i] for i in range(3)])
    ep = _scale_int([cols[2][i] for i in range(3)])
    assert u.evaluate(ep) == 0 and v.evaluate(ep) == 0

    smax = max(a for a, _ in std_mons) if std_mons else 0
    tmax = max(b for _, b in std_mons) if std_mons else 0
    rows = []
    per_mono = [
        _st_expansion(m, ep, eu, ev, smax, tmax) for m in monomials(d)
    ]
    for (a, b) in std_mons:
        rows.append([exp.get((a, b), 0) for exp in per_mono])
    return rows


def _scale_int(vec):
    from math import gcd

    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in vec]
    g = 0
    for x in out:
        g = gcd(g, abs(x))
    g = g or 1
    return [x // g for x in out]


def _st_expansion(mono, ep, eu, ev, smax, tmax):
    """Coefficients (in s^a t^b, truncated) of prod (ep_i + s eu_i + t ev_i)^e."""
    acc = {(0, 0): 1}
    for i, e in enumerate(mono):
        if e == 0:
            continue
        lin = {(0, 0): ep[i], (1, 0): eu[i], (0, 1): ev[i]}
        powed = _truncated_pow(lin, e, smax, tmax)
        acc = _truncated_mul(acc, powed, smax, tmax)
    return acc


def _truncated_mul(f, g, smax, tmax):
    out = {}
    for (a1, b1), c1 in f.items():
        if c1 == 0:
            continue
        for (a2, b2), c2 in g.items():
            a, b = a1 + a2, b1 + b2
            if a > smax or b > tmax:
                continue
            out[(a, b)] = out.get((a, b), 0) + c1 * c2
    return out


def _truncated_pow(f, e, smax, tmax):
    out = {(0, 0): 1}
    base = f
    while e:
        if e & 1:
            out = _truncated_mul(out, base, smax, tmax)
        e >>= 1
        if e:
            base = _truncated_mul(base, base, smax, tmax)
    return out


class _ClusterBlock(ModRowSource):
    """Derivative-membership conditions for a power of a reduced cluster:
    f has multiplicity >= c at every cluster point iff every derivative of
    order c - 1 lies in the cluster's degree-(d - c + 1) piece."""

    def __init__(self, w_rows, d, c):
        self.w = w_rows  # exact integer membership functionals at degree e
        self.d = d
        self.c = c
        self.e = d - c + 1
        self.gammas = [m for m in monomials(c - 1)]
        self._maps = [self._derivative_map(g) for g in self.gammas]

    def _derivative_map(self, gamma):
        src = monomials(self.d)
        tgt = monomial_index(self.e)
        idx = np.zeros(len(src), dtype=np.int64)
        coef = np.zeros(len(src), dtype=np.int64)
        pairs = []
        for j, m in enumerate(src):
            mm = (m[0] - gamma[0], m[1] - gamma[1], m[2] - gamma[2])
            if min(mm) < 0:
                pairs.append((0, 0))
                continue
            c = 1
            for a, g in zip(m, gamma):
                for t in range(g):
                    c *= a - t
            pairs.append((tgt[mm], c))
        idx[:] = [p[0] for p in pairs]
        coef[:] = [p[1] for p in pairs]
        return idx, coef

    def rows_mod(self, p):
        wp = np.array([[x % p for x in row] for row in self.w], dtype=np.int64)
        blocks = []
        for idx, coef in self._maps:
            blocks.append((wp[:, idx] * (coef % p)) % p)
        return np.vstack(blocks) % p

    def apply_exact(self, vec):
        out = []
        ncols_e = len(monomials(self.e))
        for idx, coef in self._maps:
            u = [0] * ncols_e
            for j, x in enumerate(vec):
                c = int(coef[j])
                if c and x:
                    u[int(idx[j])] += c * x
            for row in self.w:
                out.append(sum(a * b for a, b in zip(row, u)))
        return out


_membership_cache: dict = {}
_certificate_cache: dict = {}


def _membership_rows(expr, e: int):
    """Exact integer rows W with: f in (expr)_e  <=>  W f = 0."""
    key = (expr, e)
    if key in _membership_cache:
        return _membership_cache[key]
    if isinstance(expr, Gens):
        span = []
        for g in expr.polys:
            g = g.primitive_int()
            if g.degree > e:
                continue
            for m in monomials(e - g.degree):
                span.append([int(c) for c in (HomPoly(((m, Fraction(1)),)) * g).coeff_vector(e)])
        w = nullspace_int(span, len(monomials(e)))
    elif isinstance(expr, Colon):
        w = []
        for g in gens_of(expr.den):
            g = g.primitive_int()
            inner = _membership_rows(expr.num, e + g.degree)
            cols = _mult_columns(g, e)
            for row in inner:
                w.append([sum(row[i] * c for i, c in col) for col in cols])
    else:
        basis = graded_piece(expr, e)
        w = nullspace_int(
            [[int(x) for x in b.primitive_int().coeff_vector(e)] for b in basis],
            len(monomials(e)),
        )
    _membership_cache[key] = w
    return w


def _cluster_reduced_certificate(expr):
    """Certify that the cluster is a reduced set of points (needed before
    taking symbolic powers): the two generators together with the 2x2
    minors of their Jacobian generate the unit ideal."""
    root = expr
    while isinstance(root, Colon):
        root = root.num
    if not isinstance(root, Gens) or len(root.polys) != 2:
        raise UnsupportedIdeal("cannot certify reducedness")
    if root in _certificate_cache:
        return
    a, b = (p.primitive_int() for p in root.polys)
    da = [_derivative(a, i) for i in range(3)]
    db = [_derivative(b, i) for i in range(3)]
    minors = [da[i] * db[j] - da[j] * db[i] for i, j in [(0, 1), (0, 2), (1, 2)]]
    gens = [a, b] + [m for m in minors if not m.is_zero]
    for deg in (9, 12, 15):
        span = []
        for g in gens:
            if g.degree > deg:
                continue
            for m in monomials(deg - g.degree):
                span.append([int(c) for c in (HomPoly(((m, Fraction(1)),)) * g).coeff_vector(deg)])
        if not span:
            continue
        if rank_lower_bound(span, len(monomials(deg))) == len(monomials(deg)):
            _certificate_cache[root] = True
            return
    raise UnsupportedIdeal("cluster has a non-reduced or positive-dimensional locus")


def _derivative(p: HomPoly, var: int):
    d = {}
    for m, c in p.terms:
        if m[var] == 0:
            continue
        mm = tuple(e - 1 if i == var else e for i, e in enumerate(m))
        d[mm] = d.get(mm, Fraction(0)) + c * m[var]
    return HomPoly.from_dict(d)


def rank_lower_bound(rows, ncols):
    """Rank of the matrix mod one word-sized prime; never exceeds the exact
    rank, so a full-rank answer is a proof of full rank."""
    from .linalg import _primes, _rref_mod

    p = next(_primes())
    a = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    return len(_rref_mod(a, p)[1])


def _flatten(expr):
    if isinstance(expr, Prod):
        out = []
        for f in expr.factors:
            out.extend(_flatten(f))
        return out
    if isinstance(expr, Pow):
        return [(atom, power * expr.exponent) for atom, power in _flatten(expr.base)]
    return [(expr, 1)]


def _saturated_kernel(expr, d: int):
    atoms = []
    for sub, power in _flatten(expr):
        kind = _classify_atom(sub)
        if kind == "unit":
            continue
        atoms.append((kind, sub, power))
    ncols = len(monomials(d))
    if not atoms:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    # group rational points, keep clusters separate
    points: dict = {}
    clusters = []
    for kind, sub, power in atoms:
        if isinstance(kind, _PointAtom):
            key = kind.point
            points.setdefault(key, []).append((kind, power))
        else:
            clusters.append((sub, power))
    if len({c[0] for c in clusters}) > 1:
        raise UnsupportedIdeal("at most one point cluster per product")

    # cluster powers need the scheme to be reduced, and nothing else may sit
    # on top of the cluster's points
    merged_clusters: dict = {}
    for sub, power in clusters:
        merged_clusters[sub] = merged_clusters.get(sub, 0) + power
    for sub, power in merged_clusters.items():
        if power >= 2:
            _cluster_reduced_certificate(sub)
        for pt in points:
            if _point_on_cluster(pt, sub):
                raise UnsupportedIdeal(f"point {pt} lies on the cluster support")

    sources: list[ModRowSource] = []
    for pt, entries in points.items():
        u, v = entries[0][0].u, entries[0][0].v
        for atom, _ in entries[1:]:
            if (atom.u, atom.v) != (u, v):
                raise UnsupportedIdeal(
                    f"incompatible local coordinates at {pt}"
                )
        stair = _merge_staircases(entries)
        std = _standard_monomials(stair)
        if std:
            sources.append(_TaylorBlock(pt, u, v, std, d))
    for sub, power in merged_clusters.items():
        e = d - power + 1
        if e < 0:
            return []  # more vanishing than the degree allows
        w = _membership_rows(sub, e)
        if w:
            sources.append(_ClusterBlock(w, d, power))

    if not sources:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    return kernel_of_sources(sources, ncols)


def _point_on_cluster(pt, expr) -> bool:
    for e in range(1, 8):
        basis = graded_piece(expr, e)
        if not basis:
            continue
        return all(b.evaluate(pt) == 0 for b in basis)
    raise UnsupportedIdeal("cluster has no low-degree elements to test against")


# --- the curve-counting configuration ----------------------------------------


class UnequalBaseCoefficients(Exception):
    """The seven symmetric base points must carry one common coefficient."""


class NegativeExponent(Exception):
    """The divisor data does not give nonnegative condition exponents."""


UNIT_IDEAL = Gens((HomPoly.constant(1),))


class PlaneConfig:
    """Pencil of nodal cubics and the condition-ideal building blocks.

    The defaults are the reference pair: nodes at [0,1,1] and [0,0,1] with
    distinguished tangent y = 0, rational base points F8 = [-1,1,1] and
    F9 = [0,1,0].  Alternative cubics (loaded from the documented JSON
    schema) must keep the node locations and their local ideals; only the
    cubics and the two rational base points move.
    """

    def __init__(self, h1: HomPoly, h2: HomPoly, p8, p9):
        x, y, z = (HomPoly.variable(i) for i in range(3))
        self.h1, self.h2 = h1.primitive_int(), h2.primitive_int()
        self.p8, self.p9 = tuple(p8), tuple(p9)
        for h in (self.h1, self.h2):
            for pt in (self.p8, self.p9):
                if h.evaluate(pt) != 0:
                    raise ValueError(f"{pt} is not a base point of the pencil")
        self.J9 = Gens((self.h1, self.h2))
        self.P8 = _point_ideal(self.p8)
        self.P9 = _point_ideal(self.p9)
        self.J7 = Colon(self.J9, Prod((self.P8, self.P9)))
        self.I_node1 = Gens((x, y - z))
        self.I_node2 = Gens((x, y))
        self.I_tangent2 = Gens((x * x, y))

    @classmethod
    def default(cls) -> "PlaneConfig":
        h1 = parse_poly("(y-z)^2*z - x^3 - x^2*z")
        h2 = parse_poly("x^3 - 2*x*y^2 + 2*x*y*z + y^2*z")
        return cls(h1, h2, (-1, 1, 1), (0, 1, 0))

    @classmethod
    def from_json(cls, data: dict) -> "PlaneConfig":
        if data.get("schema", 1) != 1:
            raise ValueError(f"unsupported cubics schema {data.get('schema')!r}")
        return cls(
            parse_poly(data["h1"]),
            parse_poly(data["h2"]),
            tuple(data["F8"]),
            tuple(data["F9"]),
        )

    def condition_ideal(self, coeffs: dict) -> tuple[int, object]:
        """Conditions imposed on the plane image of an effective divisor.

        coeffs maps the curve basis H, F1..F9, E1, E2, E3 to integers with
        nonpositive exceptional part; F1..F7 must share one coefficient.
        Returns (plane degree, ideal expression).
        """
        degree = coeffs.get("H", 0)
        f17 = {coeffs.get(f"F{i}", 0) for i in range(1, 8)}
        if len(f17) != 1:
            raise UnequalBaseCoefficients(f"F1..F7 coefficients {sorted(f17)} differ")
        c7 = -f17.pop()
        c8, c9 = -coeffs.get("F8", 0), -coeffs.get("F9", 0)
        e1 = -coeffs.get("E1", 0)
        m2, m3 = -coeffs.get("E2", 0), -coeffs.get("E3", 0)
        alpha, beta = 2 * m2 - m3, m3 - m2
        exps = {"J7": c7, "P8": c8, "P9": c9, "E1": e1, "E2+E3": alpha, "E2+2E3": beta}
        bad = {k: v for k, v in exps.items() if v < 0}
        if bad:
            raise NegativeExponent(f"negative condition exponents {bad}")
        blocks = [
            (self.J7, c7),
            (self.P8, c8),
            (self.P9, c9),
            (self.I_node1, e1),
            (self.I_node2, alpha),
            (self.I_tangent2, beta),
        ]
        factors = tuple(
            Pow(base, e) if e > 1 else base for base, e in blocks if e > 0
        )
        if not factors:
            return degree, UNIT_IDEAL
        if len(factors) == 1:
            return degree, factors[0]
        return degree, Prod(factors)


def _point_ideal(pt) -> Gens:
    """Two canonical independent linear forms vanishing at a rational point."""
    pt = [int(c) for c in pt]
    x, y, z = (HomPoly.variable(i) for i in range(3))
    p0, p1, p2 = pt
    if p2 != 0:
        forms = [p2 * x - p0 * z, p2 * y - p1 * z]
    elif p1 != 0:
        forms = [p1 * x - p0 * y, z]
    else:
        forms = [y, z]
    return Gens(tuple(f.primitive_int() for f in forms))
