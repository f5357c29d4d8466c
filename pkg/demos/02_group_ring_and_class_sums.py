"""Group-ring arithmetic: convolution, augmentation, centers, class sums.

Run as: python3 demos/02_group_ring_and_class_sums.py
"""

from lplab import RingElement, class_sum, conjugacy_class, group_from_name

print("=" * 64)
print("Exact convolution in the group ring")
print("=" * 64)

lattice = group_from_name("Z^1")
t = lattice.generators[0]
one = RingElement.one(lattice)
u = RingElement.from_element(t) + RingElement.from_element(t.inverse())
v = one + RingElement.from_element(t)
print(f"({u}) * ({v}) = {u * v}")
print(f"(t - 1) * (1 + t + t^2) = "
      f"{(RingElement.from_element(t) - one) * (one + RingElement.from_element(t) + RingElement.from_element(t ** 2))}")
print(f"augmentation of t - 1: {(RingElement.from_element(t) - one).augment()}")

print()
print("Centers are decided exactly against the generators.")
dihedral = group_from_name("dihedral-inf")
r, s = dihedral.generators
single = RingElement.from_element(r)
symmetric = single + RingElement.from_element(r.inverse())
print(f"is r central in the dihedral ring?        {single.is_central()}")
print(f"is r + r^-1 central in the dihedral ring? {symmetric.is_central()}")

print()
print("Conjugacy classes by orbit closure, with a cap for infinite ones:")
print(f"class of r^2: {sorted(str(g) for g in conjugacy_class(r ** 2, 100))}")
print(f"class of the flip s within cap 64: {conjugacy_class(s, 64)}")
s3 = group_from_name("S3")
transposition = s3.parse_element("(12)")
print(f"class of (12) in S3: "
      f"{sorted(str(g) for g in conjugacy_class(transposition, 10))}")

print()
print("Class sums generate the center; every one passes the exact check:")
for n in (1, 2, 3):
    cs = class_sum(r ** n, 100)
    print(f"  class sum of r^{n}: {cs}   central: {cs.is_central()}")
heis = group_from_name("heisenberg")
z = heis.element((0, 0, 1))
print(f"  class sum of z in Heisenberg: {class_sum(z, 10)} (a central singleton)")
