"""Why the deletion and covering bounds always agree: LP duality.

The fractional cycle-deletion program and the fractional cyclic-cover
program are dual linear programs, so their optimal values coincide on
every instance, and the solver's exact rational dual certificates prove
it.  We solve both on a batch of random instances, check objective
equality and complementary slackness, and print one certificate in
full.
"""

from random import Random

from indexcode import enumerate_cycles, solve_lp, verify_certificate
from indexcode.generators import random_unicast_instance
from indexcode.programs import build_P1_relaxed, build_P2_relaxed, verify_duality

rng = Random(7)

inst = random_unicast_instance(rng)
cycles = enumerate_cycles(inst)
a = solve_lp(build_P1_relaxed(inst, cycles))
b = solve_lp(build_P2_relaxed(inst, cycles))
print(f"valP1' = {a.objective} = valP2' = {b.objective}")
print(f"primal/dual certificate valid: {verify_certificate(a.lp, a)}")
print(f"cross-program complementary slackness: {verify_duality(a, b)}")

print("\ndeletion primal:", {k: str(v) for k, v in a.primal_by_name().items() if v})
print("cover primal:   ", {k: str(v) for k, v in b.primal_by_name().items() if v})

failures = 0
for _ in range(200):
    inst = random_unicast_instance(rng)
    cycles = enumerate_cycles(inst)
    a = solve_lp(build_P1_relaxed(inst, cycles))
    b = solve_lp(build_P2_relaxed(inst, cycles))
    if a.objective != b.objective or not verify_duality(a, b):
        failures += 1
print(f"\n200 random instances: {failures} duality failures")
