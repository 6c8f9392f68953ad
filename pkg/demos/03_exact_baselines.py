"""Exact baselines: the DP optimum table and the brute-force oracles.

The DP table answers "best profit at every integer capacity" in one pass;
the offline-error metric reads it once per capacity change. On small
instances, exhaustive enumeration cross-checks it and also gives the exact
chance-constrained optimum for sanity-checking the evolutionary solvers.
"""

from dcckp import (
    ChanceParams,
    brute_force_chance_optimum,
    brute_force_optimum,
    dp_optimal_profits,
    generate_instance,
)

inst = generate_instance("uncorrelated", 14, delta=25, seed=21)
top = inst.total_expected_weight()
table = dp_optimal_profits(inst, top)
print(f"n={inst.n}, total expected weight {top}, max profit {table[-1]}")

print("\nDP vs exhaustive enumeration:")
for cap in (0, top // 4, top // 2, 3 * top // 4):
    bf_profit, bf_bits = brute_force_optimum(inst, cap)
    print(f"  C={cap:>5}: dp={table[cap]:>5} brute={bf_profit:>5} "
          f"items={bf_bits.sum()}")
    assert table[cap] == bf_profit

cap = top // 2
print(f"\nchance-constrained optimum at C={cap} (deterministic best {table[cap]}):")
for kind in ("chebyshev", "chernoff"):
    for alpha in (0.1, 0.01, 0.001):
        p, bits = brute_force_chance_optimum(inst, cap, ChanceParams(alpha, 25, kind))
        print(f"  {kind:>9} alpha={alpha:<6}: profit {p:>5} ({bits.sum()} items)")

print("""
Tightening alpha shrinks the feasible set, so the achievable profit falls —
and it falls much faster under Chebyshev, whose capacity margin blows up as
alpha gets small.
""")
