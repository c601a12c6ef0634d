"""
Do clock constraints survive refinement?
========================================

Two lemmas: subclocking and union carry over from one level to the other
when the clocks refine each other.  An exhaustive search covers every
structure pair and clock choice on three instants; a seeded random search
probes eight instants.
"""

from chronorefine.search import Lemma, exhaustive_preservation, random_preservation

for lemma in Lemma:
    r = exhaustive_preservation(lemma, 3)
    print(f"{lemma.value:<9} exhaustive n=3: {r.instances} instances,",
          {s.value: c for s, c in r.outcomes.items()})

# %%
# Most random instances are built so that the hypotheses hold; the rest are
# unconstrained and usually end vacuous.
for lemma in Lemma:
    r = random_preservation(lemma, 2000, n=8, seed=1)
    print(f"{lemma.value:<9} random n=8: {r.instances} instances,",
          {s.value: c for s, c in r.outcomes.items()})
