"""From the central fiber to the Neron-Severi lattice of the smooth fiber.

Euler characteristics glue over the reducible degeneration and survive the
deformation; polarizing them gives the intersection form on the smooth
Dolgachev fiber.  Ten reference divisors pair into diag(-1,..,-1,1), so
integer coordinates fall out of the pairing alone.
"""

from dolgachev import K_GEN, Smoothing, build_surface, chi_of_class

m = build_surface(3, 1)
sm = Smoothing(m)

L0 = m.curve("L0")
print("chi across the smoothing:")
for label, d in [("O", m.zero()), ("-L0", -1 * L0), ("-L0 + F1 - F9", -1 * L0 + m.curve("F1") - m.curve("F9"))]:
    bd = sm.chi_gen(d)
    print(f"  chi({label:<14}) = {bd.total}   "
          f"(Y: {bd.chiY}, planes: {bd.chiW1}, {bd.chiW2}, gluing: {bd.chiZ1}, {bd.chiZ2})")
print()

print("the induced intersection matrix of the ten reference classes:")
for row in sm.ns_gram():
    print("  " + " ".join(f"{x:>2}" for x in row))
print()

print("multiples of the canonical class on the central fiber:")
for mm in [1, 2, 3, 6]:
    rep = sm.k_multiple_rep(mm)
    print(f"  {mm}K  <-  {m.format_divisor(rep)}")
print()

print("coordinates of classes in the new basis:")
for label, d in [("C1", m.curve("C1")),
                 ("2C2 + E2", 2 * m.curve("C2") + m.curve("E2")),
                 ("K", sm.k_multiple_rep(1)),
                 ("C0", m.curve("C0"))]:
    print(f"  {label:<9} -> {sm.to_gen(d).coords}")
print()
print(f"K as a lattice class: {K_GEN.coords}, K^2 = {K_GEN.dot(K_GEN)}, chi(K) = {chi_of_class(K_GEN)}")
