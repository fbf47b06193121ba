"""Euler characteristics and Neron-Severi coordinates across the smoothing.

Specific to (n, a) = (3, 1): the central fiber of the partial resolution of
the smoothing is glued from the surface (with C1 and the chain contracted),
a plane P^2 and the weighted plane P(1,2,1).  An admissible divisor class D
descends to a line bundle on the smooth Dolgachev fiber; its Euler
characteristic is the alternating sum over the gluing sequence, and the
intersection form on the smooth fiber is the polarization

    (D.D') = chi(D + D') - chi(D) - chi(D') + 1

of that deformation-invariant chi.  Pairing against ten reference classes
yields integer coordinates in a unimodular rank-10 lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import DivY, SurfaceModel

__all__ = [
    "NotAdmissible",
    "NotInvertible",
    "ChiBreakdown",
    "DivGen",
    "K_GEN",
    "chi_wp2",
    "chi_p2",
    "chi_p1",
    "chi_of_class",
    "Smoothing",
]


class NotAdmissible(Exception):
    pass


class NotInvertible(Exception):
    """The requested degree is not an invertible sheaf on P(1, n-1, 1)."""


def chi_p2(d: int) -> int:
    return (d + 1) * (d + 2) // 2


def chi_p1(m: int) -> int:
    return m + 1


def chi_wp2(m: int, n: int = 3) -> int:
    """chi of O(m) on the weighted plane P(1, n-1, 1).

    O(m) is invertible only when (n-1) | m; Riemann-Roch there reads
    chi = m(m + n + 1) / (2(n-1)) + 1, i.e. m(m+4)/4 + 1 for n = 3.
    """
    if n < 2:
        raise NotInvertible(f"invalid weight {n - 1}")
    if m % (n - 1) != 0:
        raise NotInvertible(f"O({m}) is not invertible on P(1,{n - 1},1)")
    num = m * (m + n + 1)
    den = 2 * (n - 1)
    assert num % den == 0
    return num // den + 1


@dataclass(frozen=True)
class ChiBreakdown:
    """chi of the glued bundle, component by component."""

    chiY: int
    chiW1: int
    chiW2: int
    chiZ1: int
    chiZ2: int

    @property
    def total(self) -> int:
        return self.chiY + self.chiW1 + self.chiW2 - self.chiZ1 - self.chiZ2


class DivGen:
    """Class in the rank-10 lattice of the smooth fiber, basis G1..G10."""

    __slots__ = ("coords",)
    _GRAM = (-1,) * 9 + (1,)

    def __init__(self, coords):
        self.coords = tuple(int(c) for c in coords)
        if len(self.coords) != 10:
            raise ValueError("DivGen has ten coordinates")

    def __add__(self, other):
        return DivGen(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return DivGen(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return DivGen(-a for a in self.coords)

    def __rmul__(self, k: int):
        return DivGen(k * a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, DivGen) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"DivGen{self.coords}"

    def dot(self, other: "DivGen") -> int:
        return sum(g * a * b for g, a, b in zip(self._GRAM, self.coords, other.coords))

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)


K_GEN = DivGen((1,) * 9 + (-3,))  # canonical class: sum G_i - 3 G_10


def chi_of_class(v: DivGen) -> int:
    """Riemann-Roch on the smooth fiber with the unimodular form and K."""
    t = v.dot(v) - v.dot(K_GEN)
    assert t % 2 == 0
    return t // 2 + 1


class Smoothing:
    """Deformation bookkeeping from the (3,1) surface to the type-(2,3) fiber."""

    def __init__(self, model: SurfaceModel):
        if (model.n, model.a) != (3, 1):
            raise NotAdmissible("deformation bookkeeping is pinned to n = 3, a = 1")
        self.model = model
        self._two_k = (
            model.curve("C2") + model.curve("E2") + model.curve("E3")
        )  # deforms to 2K
        self._reps = None

    # -- chi and the induced pairing ----------------------------------------

    def _require_admissible(self, d: DivY):
        rep = self.model.is_admissible(d)
        if not rep.ok:
            raise NotAdmissible(f"divisor {d} does not descend")
        return rep

    def chi_gen(self, d: DivY) -> ChiBreakdown:
        """chi of the descended line bundle, by the gluing exact sequence."""
        rep = self._require_admissible(d)
        d1, d2 = rep.d1, rep.d2
        return ChiBreakdown(
            chiY=self.model.chi(d),
            chiW1=chi_p2(d1),
            chiW2=chi_wp2(2 * d2, 3),
            chiZ1=chi_p1(2 * d1),
            chiZ2=chi_p1(3 * d2),
        )

    def pair_gen(self, d: DivY, e: DivY) -> int:
        """Intersection number on the smooth fiber via polarization of chi."""
        return (
            self.chi_gen(d + e).total
            - self.chi_gen(d).total
            - self.chi_gen(e).total
            + 1
        )

    # -- reference classes ---------------------------------------------------

    def k_multiple_rep(self, m: int) -> DivY:
        """An admissible divisor deforming to m K on the smooth fiber.

        C0, E1 and C2+E2+E3 deform to 6K, 3K and 2K; the remainder classes
        0..5 are realized by the small combinations below.
        """
        model = self.model
        q, s = divmod(m, 6)
        e1 = model.curve("E1")
        twok = self._two_k
        extras = {
            0: model.zero(),
            1: e1 - twok,
            2: twok,
            3: e1,
            4: 2 * twok,
            5: e1 + twok,
        }
        return q * model.curve("C0") + extras[s]

    def g_rep(self, i: int) -> DivY:
        """Divisor on Y deforming to the i-th reference class, i = 0..11."""
        model = self.model
        if not 0 <= i <= 11:
            raise ValueError("index out of range")
        if i == 0:
            return model.zero()
        L0 = model.curve("L0")
        if 1 <= i <= 8:
            return -L0 + model.curve(f"F{i}") - model.curve("F9") + self.k_multiple_rep(10)
        if i == 9:
            return -L0 + self.k_multiple_rep(11)
        g10 = -3 * L0 + (model.curve("H") - 3 * model.curve("F9")) + self.k_multiple_rep(28)
        if i == 10:
            return g10
        return 2 * g10  # deforms to 2 G10

    def _basis_reps(self):
        if self._reps is None:
            self._reps = [self.g_rep(i) for i in range(1, 11)]
        return self._reps

    def ns_gram(self) -> list[list[int]]:
        reps = self._basis_reps()
        return [[self.pair_gen(x, y) for y in reps] for x in reps]

    def to_gen(self, d: DivY) -> DivGen:
        """Coordinates of the descended class in the basis G1..G10.

        c_i = -(D.G_i) for i <= 9 and +(D.G_10); well defined because the
        target lattice is unimodular, and kills C1 and 2C2+E2 exactly.
        """
        self._require_admissible(d)
        reps = self._basis_reps()
        coords = [-self.pair_gen(d, reps[i]) for i in range(9)]
        coords.append(self.pair_gen(d, reps[9]))
        return DivGen(coords)

    def g_class(self, i: int) -> DivGen:
        """The i-th collection member as a lattice class (G0 = 0, G11 = 2 G10)."""
        if i == 0:
            return DivGen([0] * 10)
        if 1 <= i <= 10:
            return DivGen([1 if j == i - 1 else 0 for j in range(10)])
        if i == 11:
            return DivGen([0] * 9 + [2])
        raise ValueError("index out of range")
