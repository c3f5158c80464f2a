"""
Where the reduction stops: Z_63 x| Z_3
======================================

63 = 7 * 9 and 3 divides 7 - 1, so Z_7 has its own automorphisms of order 3.
A twist can act on both parts at once and the product splitting is lost.
"""

from semidirect_hsp.decomposition import check_hypothesis, hypothesis_violations
from semidirect_hsp.errors import DomainError
from semidirect_hsp.group import validate_spec
from semidirect_hsp.modmath import multiplicative_order, units

print("hypothesis holds:", check_hypothesis(63, 3), "offending primes:", hypothesis_violations(63, 3))

twists = [u for u in units(63) if u != 1 and multiplicative_order(u, 63) == 3]
for phi in twists:
    print(f"phi11={phi:2d}  mod 7 -> {phi % 7}  mod 9 -> {phi % 9}")

# %%
# The library refuses rather than guessing.
try:
    from semidirect_hsp import decompose

    decompose(validate_spec(63, 3, 4))
except DomainError as exc:
    print("decompose:", exc)
