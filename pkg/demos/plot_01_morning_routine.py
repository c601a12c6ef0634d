"""
Ordering the events of a morning
================================

Five instants, a handful of generator pairs, and the closure that fills in
everything they imply.
"""

from chronorefine import classify_pair, structure, validate_spo

# %%
# Instants 0..4 stand for: up, shower, leave, eat, sing.
# Singing happens during the shower, so those two instants coincide.
names = ["up", "sho", "off", "eat", "sin"]
routine = structure(
    5,
    coincide=[(1, 4)],
    precede=[(0, 1), (1, 2), (0, 3), (3, 2)],
)
print("violations:", validate_spo(routine))

# %%
# The closure adds what transitivity and coincidence force, e.g. up < leave
# and sing < leave.
for i, j in routine.precedence.pairs():
    print(f"{names[i]:>4} < {names[j]}")

# %%
# Every pair falls in exactly one of four classes.
for i, j in [(1, 3), (1, 4), (0, 2), (2, 4)]:
    print(names[i], names[j], classify_pair(routine, i, j).value)

# %%
# The relations also come out as boolean matrices for numpy work.
print(routine.precedence.to_matrix().astype(int))
