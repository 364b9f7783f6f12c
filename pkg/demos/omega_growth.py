"""When does the number of prime divisors of kappa_n blow up?

Two towers over the four-loop bouquet at ell = 3, differing only in one
voltage.  Both have U(T) = T^b f(T) with the forced (T-1)^2 factor; the
first leaves a quadratic with roots off the unit circle (omega grows
forever), the second is compared against a tower whose U is a pure
product of cyclotomics (omega stays bounded).
"""

from elltowers import Multigraph, Tower, VoltageAssignment, classify_omega
from elltowers.omega import omega_sequence

bouquet = Multigraph.bouquet(4)

print("=== voltages (1,1,2,2): unbounded omega ===")
tower = Tower(VoltageAssignment.from_integers(bouquet, 3, [1, 1, 2, 2], 4))
cls = classify_omega(tower.f)
print("U factor data:", cls.content, "* (T-1)^", cls.unit_root_multiplicity,
      "* leftover", cls.non_cyclotomic_part)
print("verdict:", cls.verdict)
for point in omega_sequence(tower, 4):
    bound = "" if point.exact else " (lower bound, budget hit)"
    print(f"  omega(kappa_{point.level}) = {point.omega}{bound}   "
          f"kappa_{point.level} = {point.factorization}")

print()
print("=== theta graph at ell = 5, voltages (1,2,2): bounded omega ===")
theta = Multigraph.from_edge_list(2, [(0, 1), (1, 0), (1, 0)])
tower = Tower(VoltageAssignment.from_integers(theta, 5, [1, 2, 2], 4))
cls = classify_omega(tower.f)
print("cyclotomic factors of U1:", cls.cyclotomic_factors,
      "leftover:", cls.non_cyclotomic_part)
print("verdict:", cls.verdict)
for point in omega_sequence(tower, 4):
    print(f"  omega(kappa_{point.level}) = {point.omega}   "
          f"kappa_{point.level} = {point.factorization}")
