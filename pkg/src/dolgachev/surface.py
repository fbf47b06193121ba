"""Picard lattice of the blown-up rational elliptic surface.

The surface is P^2 blown up in the nine base points of a pencil of nodal
cubics, then at the node of the first cubic (once) and along the node of
the second cubic (r times), so that the second special fiber contains the
resolution chain of a 1/n^2(1, na-1) point.  Internally every class is an
integer vector in the total-transform basis

    H, F1..F9, e1, e2, .., e_{r+1}

with diagonal intersection form diag(1, -1, ..., -1).  Named curves
(proper transforms) live in a registry; the chain is rebuilt by replaying
the blow-up word recovered from the Hirzebruch-Jung expansion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import MatQ, solve_q
from .tchain import TChain, hj_expand

__all__ = [
    "DivY",
    "QDivY",
    "SurfaceModel",
    "build_surface",
    "DimensionMismatch",
    "ParityViolation",
    "NotNegativeDefinite",
    "CongruenceViolation",
    "UnknownCurve",
]


class DimensionMismatch(Exception):
    pass


class ParityViolation(Exception):
    """D.(D - K) is odd: the vector is not a divisor class of the lattice."""


class NotNegativeDefinite(Exception):
    pass


class CongruenceViolation(Exception):
    pass


class UnknownCurve(Exception):
    pass


class ExprSyntaxError(Exception):
    pass


class _Vec:
    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    def __add__(self, other):
        self._check(other)
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, _Vec) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def _check(self, other):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("vectors from different surface models")

    @property
    def is_zero(self):
        return all(a == 0 for a in self.coords)


class DivY(_Vec):
    """Integer divisor class on Y in total-transform coordinates."""

    def __init__(self, coords):
        super().__init__(int(c) for c in coords)

    def __rmul__(self, k: int):
        return DivY(k * a for a in self.coords)

    def __repr__(self):
        return f"DivY{self.coords}"

    def as_q(self) -> "QDivY":
        return QDivY(self.coords)


class QDivY(_Vec):
    """Rational divisor class on Y."""

    def __init__(self, coords):
        super().__init__(Fraction(c) for c in coords)

    def __rmul__(self, k):
        return QDivY(Fraction(k) * a for a in self.coords)

    def __repr__(self):
        return f"QDivY{self.coords}"


@dataclass(frozen=True)
class AdmissibilityReport:
    d1: int | None
    d2: int | None
    ok: bool


_TERM_RE = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*([A-Za-z][A-Za-z0-9]*)")


class SurfaceModel:
    """Immutable lattice model; build with build_surface(n, a)."""

    def __init__(self, n: int, a: int):
        self.chain: TChain = hj_expand(n, a)
        self.n, self.a = n, a
        r = self.chain.r
        self.rank = 11 + r
        self.gram_diag = (1,) + (-1,) * (10 + r)
        self._build_registry()

    # -- construction -----------------------------------------------------

    def _unit(self, i) -> DivY:
        return DivY(1 if j == i else 0 for j in range(self.rank))

    def _build_registry(self):
        r = self.chain.r
        H = self._unit(0)
        F = [self._unit(1 + i) for i in range(9)]
        e = [self._unit(10 + i) for i in range(r + 1)]  # e1, e2, .., e_{r+1}
        sumF = DivY([0, *[1] * 9, *[0] * (r + 1)])

        reg: dict[str, DivY] = {"H": H}
        for i in range(9):
            reg[f"F{i + 1}"] = F[i]
        reg["E1"] = e[0]
        reg["C0"] = 3 * H - sumF
        reg["C1"] = 3 * H - sumF - 2 * e[0]
        reg["L0"] = 2 * H

        # replay the blow-up word on the second nodal fiber
        word = _blow_up_word(self.chain.ks)
        chain = [["C2", 3 * H - sumF - 2 * e[1]]]
        elast = ["E2", e[1]]
        for step, move in enumerate(word):
            enew = e[2 + step]
            elast[1] = elast[1] - enew
            if move == "L":
                chain[0][1] = chain[0][1] - enew
                chain.append(elast)
            else:
                chain[-1][1] = chain[-1][1] - enew
                chain.insert(0, elast)
            elast = [f"E{3 + step}", enew]

        self.chain_names = tuple(name for name, _ in chain)
        for name, vec in chain:
            reg[name] = vec
        reg[f"E{r + 1}"] = elast[1]

        reg["K"] = DivY([-3, *[1] * 9, *[1] * (r + 1)])
        if self.n == 3:
            reg["l"] = H - e[0] - e[1]
        self.registry = reg

        got = tuple(-self.intersect(reg[nm], reg[nm]) for nm in self.chain_names)
        assert got == self.chain.ks, (got, self.chain.ks)

        self.contracted_names = ("C1",) + self.chain_names
        # smooth rational curves usable in adjunction / section-bound arguments
        self.curve_names = (
            ["H"]
            + [f"F{i}" for i in range(1, 10)]
            + ["E1", "C1"]
            + list(self.chain_names)
            + [f"E{r + 1}"]
            + (["l"] if self.n == 3 else [])
        )

    # -- basic lattice operations -----------------------------------------

    def curve(self, name: str) -> DivY:
        try:
            return self.registry[name]
        except KeyError:
            raise UnknownCurve(name) from None

    def zero(self) -> DivY:
        return DivY([0] * self.rank)

    def intersect(self, d1: _Vec, d2: _Vec):
        if len(d1.coords) != self.rank or len(d2.coords) != self.rank:
            raise DimensionMismatch("vector does not belong to this model")
        return sum(g * a * b for g, a, b in zip(self.gram_diag, d1.coords, d2.coords))

    def chi(self, d: DivY) -> int:
        """Riemann-Roch: chi(D) = D.(D - K)/2 + 1."""
        t = self.intersect(d, d) - self.intersect(d, self.curve("K"))
        if t % 2:
            raise ParityViolation(f"D.(D-K) = {t} is odd")
        return t // 2 + 1

    def is_admissible(self, d: DivY) -> AdmissibilityReport:
        """Intersections allowing descent along the smoothing: (D.C1) even,
        (D.C2) divisible by n, zero on the other chain curves."""
        dc1 = self.intersect(d, self.curve("C1"))
        dc2 = self.intersect(d, self.curve("C2"))
        interior_ok = all(
            self.intersect(d, self.curve(nm)) == 0
            for nm in self.chain_names
            if nm != "C2"
        )
        ok = dc1 % 2 == 0 and dc2 % self.n == 0 and interior_ok
        return AdmissibilityReport(
            d1=dc1 // 2 if dc1 % 2 == 0 else None,
            d2=dc2 // self.n if dc2 % self.n == 0 else None,
            ok=ok,
        )

    # -- contraction bookkeeping -------------------------------------------

    def _orthogonalize(self, d: DivY, names):
        """Coefficients c_j with (d + sum c_j A_j) orthogonal to every A_i."""
        curves = [self.curve(nm) for nm in names]
        g = [[self.intersect(a, b) for b in curves] for a in curves]
        for k in range(1, len(curves) + 1):
            minor = [row[:k] for row in g[:k]]
            from .linalg import det_z

            if det_z(minor) * (-1) ** k <= 0:
                raise NotNegativeDefinite(f"curves {list(names)} are not negative definite")
        rhs = [-self.intersect(d, a) for a in curves]
        coeffs = solve_q(MatQ(g), rhs)
        return curves, coeffs

    def pullback_pushforward(self, d: DivY, contracted) -> QDivY:
        """pi^* pi_* d for the contraction of the named curves: the unique
        rational combination d + sum c_j A_j orthogonal to all A_i."""
        curves, coeffs = self._orthogonalize(d, list(contracted))
        out = d.as_q()
        for c, cv in zip(coeffs, curves):
            out = out + c * cv.as_q()
        return out

    def congruence_divisor(self, weights) -> DivY:
        """Round-down of sum_i N_i pi^* pi_* F_i against both contractions.

        weights: nine nonnegative integers.  N = sum N_i must satisfy
        N mod 4 in {0, 1} or N mod n^2 in {0, N'}, where N' alpha_C2 =
        alpha_G1 in the link group Z/n^2; the intersection pattern promised
        by the matching congruence class is asserted on the result.
        """
        weights = [int(w) for w in weights]
        if len(weights) != 9 or any(w < 0 for w in weights):
            raise CongruenceViolation("need nine nonnegative weights")
        n2 = self.n**2
        total = sum(weights)
        mod4, modn2 = total % 4, total % n2
        nprime = self._link_multiplier()
        ok4 = mod4 in (0, 1)
        okn2 = modn2 == 0 or (nprime is not None and modn2 == nprime)
        if not (ok4 or okn2):
            raise CongruenceViolation(
                f"N = {total} is {mod4} mod 4 and {modn2} mod {n2}; no usable class"
            )

        dsum = self.zero()
        for w, i in zip(weights, range(1, 10)):
            dsum = dsum + w * self.curve(f"F{i}")
        curves, coeffs = self._orthogonalize(dsum, self.contracted_names)
        out = dsum
        for c, cv in zip(coeffs, curves):
            q, rem = divmod(c.numerator, c.denominator)
            out = out + q * cv

        if ok4:
            got = self.intersect(out, self.curve("C1"))
            assert got == mod4, (got, mod4)
        if okn2:
            got = [self.intersect(out, self.curve(nm)) for nm in self.chain_names]
            if modn2 == 0:
                assert all(x == 0 for x in got), got
            else:
                assert got == [1] + [0] * (len(got) - 1), got
        return out

    def _link_multiplier(self) -> int | None:
        """N' with N' alpha_C2 = alpha_{G_1} in the link group Z/n^2, where
        G_1 is the left end of the chain; None when alpha_C2 does not
        generate (only possible for a > 1)."""
        names = list(self.chain_names)
        curves = [self.curve(nm) for nm in names]
        g = [[self.intersect(x, y) for y in curves] for x in curves]
        r = len(g)
        n2 = self.n**2
        adj = _adjugate(g)
        pos_c2 = names.index("C2")
        for col in range(r):
            u = [adj[i][col] % n2 for i in range(r)]
            if gcd(u[pos_c2], n2) == 1:
                inv = pow(u[pos_c2], -1, n2)
                return (u[0] * inv) % n2
        return None

    # -- divisor expressions -------------------------------------------------

    def parse(self, text: str) -> DivY:
        """Parse '3H - F1 - 2E1 + C2' style expressions (case-insensitive).

        Names are registry entries; K is the canonical class, L0 the conic
        pullback, 'l' (or 'ell') the line through the two nodes (n = 3).
        """
        upper = {k.upper(): k for k in self.registry}
        upper["ELL"] = "l"
        s = text.strip()
        if not s:
            raise ExprSyntaxError("empty expression")
        if s in ("0", "+0", "-0"):
            return self.zero()
        out = self.zero()
        pos = 0
        for m in _TERM_RE.finditer(s):
            if s[pos : m.start()].strip():
                raise ExprSyntaxError(f"unexpected {s[pos:m.start()]!r} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            name = m.group(3).upper()
            if name not in upper:
                raise UnknownCurve(m.group(3))
            out = out + (sign * coeff) * self.curve(upper[name])
            pos = m.end()
        if s[pos:].strip():
            raise ExprSyntaxError(f"unexpected trailing {s[pos:]!r}")
        return out

    def to_curve_basis(self, d: DivY) -> dict[str, int]:
        """Coefficients of d over the curve basis H, F1..F9, E1..E_{r+1}."""
        names = ["H"] + [f"F{i}" for i in range(1, 10)] + [f"E{i}" for i in range(1, self.chain.r + 2)]
        cols = [self.curve(nm).coords for nm in names]
        mat = MatQ([[cols[j][i] for j in range(len(names))] for i in range(self.rank)])
        sol = solve_q(mat, list(d.coords))
        assert all(x.denominator == 1 for x in sol)
        return {nm: int(x) for nm, x in zip(names, sol)}

    def format_divisor(self, d: DivY) -> str:
        coeffs = self.to_curve_basis(d)
        parts = []
        for nm, c in coeffs.items():
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + mag + nm)
        if not parts:
            return "0"
        first = parts[0][2:] if parts[0][0] == "+" else "-" + parts[0][2:]
        return " ".join([first] + parts[1:])


def _blow_up_word(ks) -> list[str]:
    """Forward L/R word turning [4] into ks, recovered by end-decrements.

    Ties (both ends equal to 2) undo an L step.
    """
    cur = list(ks)
    rev: list[str] = []
    while cur != [4]:
        if len(cur) < 2:
            raise ValueError(f"cannot reduce chain {list(ks)}")
        if cur[-1] == 2:
            cur = [cur[0] - 1] + cur[1:-1]
            rev.append("L")
        elif cur[0] == 2:
            cur = cur[1:-1] + [cur[-1] - 1]
            rev.append("R")
        else:
            raise ValueError(f"chain {list(ks)} has no (-2)-end to peel")
    return rev[::-1]


def _adjugate(g):
    n = len(g)
    from .linalg import det_z

    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [g[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            out[j][i] = (-1) ** (i + j) * det_z(minor)
    return out


def build_surface(n: int = 3, a: int = 1) -> SurfaceModel:
    """Lattice model for the coprime pair (n, a); default (3, 1)."""
    return SurfaceModel(n, a)
