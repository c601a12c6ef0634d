"""
Clocks on a light-switch trace
==============================

A clock is a set of ticks that the order lines up strictly.  Here one trace
carries transitions and the assignments they cause, and clock constraints
relate the two families.
"""

from chronorefine import check_subclock, check_union, validate_clock
from chronorefine.fixtures import load_fixture

doc = load_fixture("light")
trace = doc.structure("trace")

# %%
# Each declared clock is a chain of the trace order.
for name in sorted(doc.clocks):
    clock = doc.clock(name)
    print(f"{name:>6} {clock.sorted_ticks()}  valid={validate_clock(trace, clock).holds}")

# %%
# Switching on always coincides with an assignment x <- 0.
print("t_on ⊑ t_x0:", check_subclock(trace, doc.clock("t_on"), doc.clock("t_x0")).holds)

# %%
# The reverse fails, and the verdict names the first uncovered tick.
print("t_x0 ⊑ t_on:", check_subclock(trace, doc.clock("t_x0"), doc.clock("t_on")))

# %%
# All assignments to x are the union of the two value-specific clocks.
print("t_x = t_x0 ∪ t_x1:",
      check_union(trace, doc.clock("t_x"), doc.clock("t_x0"), doc.clock("t_x1")).holds)
