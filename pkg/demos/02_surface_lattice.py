"""The Picard lattice of the blown-up rational elliptic surface.

Nine base points of a pencil of nodal cubics, one blow-up at the first
node, two along the second: rank 13, with the two fiber configurations
C1 + 2E1 and C2 + 2E2 + 3E3 and the line l through the two nodes.
"""

from fractions import Fraction

from dolgachev import build_surface

m = build_surface(3, 1)
print(f"lattice rank {m.rank}; chain {list(m.chain.ks)}")
print()

print("named curves (self-intersection, class):")
for name in ["C0", "C1", "E1", "C2", "E2", "E3", "l", "K"]:
    c = m.curve(name)
    print(f"  {name:<3} {m.intersect(c, c):>3}   {m.format_divisor(c)}")
print()

cols = ["H", "F1", "C0", "C1", "E1", "C2", "E2", "E3", "l"]
print("intersections of l:", {nm: m.intersect(m.curve('l'), m.curve(nm)) for nm in cols})
print()

print("descent conditions: a class moves to the smoothed surface when it")
print("meets C1 evenly, C2 in multiples of 3, and E2 not at all.")
d = m.parse("3H - F1 - 2E1 + C2")
print(f"  {m.format_divisor(d)}: {m.is_admissible(d)}")
print()

print("the round-down divisor for N = 9 on F1 (descent to the 1/4(1,1) point):")
d = m.congruence_divisor([9, 0, 0, 0, 0, 0, 0, 0, 0])
print(f"  D = {m.format_divisor(d)}")
print(f"  (D.C1), (D.C2), (D.E2) = "
      f"{m.intersect(d, m.curve('C1'))}, {m.intersect(d, m.curve('C2'))}, {m.intersect(d, m.curve('E2'))}")
print()

print("the fractional pull-push behind it:")
q = m.pullback_pushforward(9 * m.curve("F1"), ["C1", "C2", "E2"])
print("  9 pi^* pi_* F1 = 9F1 + 9/4 C1 + 2 C2 + E2  ->  floor gives D above")
assert q == (9 * m.curve("F1")).as_q() + Fraction(9, 4) * m.curve("C1").as_q() \
    + 2 * m.curve("C2").as_q() + m.curve("E2").as_q()
