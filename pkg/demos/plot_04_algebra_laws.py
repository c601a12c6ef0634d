"""
Laws of refinement, checked by enumeration
==========================================

Refinement behaves like a partial order on structures, up to extensional
equality.  On small universes every structure can be listed and the laws
checked outright.
"""

from chronorefine import Law, enumerate_structures, verify_algebra

for n in range(1, 5):
    print(f"n={n}: {sum(1 for _ in enumerate_structures(n))} structures")

# %%
for n in (1, 2, 3):
    for law in Law:
        r = verify_algebra(n, law)
        print(f"n={n} {law.value:<13} holds={r.holds} instances={r.instances_checked}")
