"""Chains of class-T cyclic quotient singularities.

A singularity of type 1/n^2(1, na-1) resolves into a chain of rational
curves whose self-intersections come from the Hirzebruch-Jung expansion of
n^2/(na-1).  Blowing up where the auxiliary (-1)-curve meets a chain end
produces the next singularity in the family; the continuant determinant
certifies every step.
"""

from dolgachev import blow_up_chain, discrepancies, fiber_coefficients, hj_expand, tridiag_det

c = hj_expand(3, 1)
print(f"1/9(1,2) resolves along {list(c.ks)}; continuant = {tridiag_det(c.ks)} = n^2")
print(f"fiber multiplicities including the (-1)-curve: {fiber_coefficients(c)}")
print(f"discrepancy complements: {[str(d) for d in discrepancies(c)]}")
print()

print("blowing up at the two ends:")
for end in "LR":
    new = blow_up_chain(c, end)
    print(f"  Bl_{end}: {list(c.ks)} -> {list(new.ks)}   now (n, a) = ({new.n}, {new.a})")
print()

print("iterating Bl_L from the 1/4(1,1) chain [4]:")
cur = hj_expand(2, 1)
for _ in range(5):
    print(f"  {str(cur):<30} fiber = {fiber_coefficients(cur)}")
    cur = blow_up_chain(cur, "L")
