"""
Two levels of observation
=========================

At the abstract level a switch-on is one instant; the concrete level spreads
it over five lines and orders most of them.  Refinement checks that the
concrete order only splits abstract coincidences and keeps every abstract
precedence.
"""

from chronorefine import check_refinement, structure
from chronorefine.mod5 import abstract_generators, concrete_generators

k = 3
abstract = structure(5 * k, *abstract_generators(k))
concrete = structure(5 * k, *concrete_generators(k))
print("abstract classes:", [sorted(c) for c in abstract.classes])
print("concrete classes:", [sorted(c) for c in concrete.classes])

# %%
# All four predicates hold.
report = check_refinement(concrete, abstract)
for r in report.results:
    print(f"{r.predicate.value:<26} {r.holds}")

# %%
# Swapping the roles breaks it: the abstract level cannot merge what the
# concrete one orders.  Each failing predicate comes with its least witness.
for r in check_refinement(abstract, concrete).failures:
    print(f"{r.predicate.value:<26} witness {r.witness}")

# %%
# Dropping one concrete precedence (instants 1 and 2 become unrelated) leaves
# an abstract coincidence with no concrete counterpart.
c_coin, c_prec = concrete_generators(k)
weaker = structure(5 * k, c_coin, c_prec - {(1, 2)} | {(0, 3)})
for r in check_refinement(weaker, abstract).failures:
    print(f"{r.predicate.value:<26} witness {r.witness}")
