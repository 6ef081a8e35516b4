"""Show the guaranteed ratio of the greedy solvers and a worst-case gadget.

The parent-set greedy is never worse than a factor (k_eff + 1) below the
optimum. The hub gadget makes it lose a real factor: a single high-value
parent set blocks a ring of slightly cheaper arcs.

Run with: python3 demos/greedy_gap.py
"""

from polytreelearn import (
    adversarial_hub,
    brute_force,
    greedy_parent_sets,
    solve_full_dp,
)

hub = adversarial_hub(5, 10, 9)
print("hub gadget:", hub.n, "nodes, names", hub.names)

greedy = greedy_parent_sets(hub)
opt = solve_full_dp(hub)
assert opt.score == brute_force(hub).score

print(f"greedy score   {greedy.score}")
print(f"optimal score  {opt.score}")
print(f"observed ratio {opt.score / greedy.score}")
print(f"certified cap  {greedy.extras['ratio_bound']}  (k_eff + 1)")

print("\ngreedy commits the hub parent set first:")
for parent, child in greedy.polytree.arcs:
    print(f"  {hub.names[parent]} -> {hub.names[child]}")

print("\nthe optimum ignores the hub and keeps the ring arcs:")
for parent, child in opt.polytree.arcs:
    print(f"  {hub.names[parent]} -> {hub.names[child]}")
