"""
How often the slope vote is right
=================================

With a cyclic hidden subgroup each round's slope is uniform, so the vote can
be fooled when every surviving round happens to agree. We compare the exact
error of the rule, its published bound and a seeded Monte-Carlo run.
"""

from semidirect_hsp.experiments import (
    cyclic_error_bound,
    decision_rule_error_exact,
    estimate_success,
    success_bound,
)
from semidirect_hsp.group import canonical_spec
from semidirect_hsp.subgroups import CyclicX, TwoGen

for k in (2, 3, 4):
    exact = decision_rule_error_exact(3, k)
    print(f"k={k}: exact wrong-answer rate {float(exact['incorrect']):.4f}, bound {float(cyclic_error_bound(3, k)):.4f}")

# %%
G = canonical_spec(3, 2)
for H in (CyclicX(1, 1), TwoGen(0, 1, 2)):
    rep = estimate_success(G, H, k=6, trials=2000, seed=1)
    print(rep.hidden, f"empirical {rep.empirical_success:.4f}", f"bound {success_bound(3, 6):.4f}", rep.failures)
