"""
Writing specifications as text
==============================

The ``.chrono`` format declares a universe, named levels, clocks and claims.
Parsing reports every problem at once; serializing gives a canonical text.
"""

from chronorefine import SpecParseError, parse, serialize
from chronorefine.runner import run_document

source = """
universe 4;
level hi { coincide 1 2; precede 0 1; precede 2 3; };
level lo { precede 0 1; precede 1 2; precede 2 3; };
clock a @ hi = {0, 3};
clock b @ lo = {0, 3};
assert refines lo hi;
assert clockrefines b a;
"""
doc = parse(source)
print(serialize(doc))

# %%
results, summary = run_document(doc)
for r in results:
    print(r.status.value, r.claim)
print("exit code", summary.exit_code)

# %%
# Broken input: every statement with a problem gets its own diagnostic.
try:
    parse("universe 3;\nlevel x { precede 0 7; };\nassert spo y;\nclock c @ x = {0 1};\n")
except SpecParseError as exc:
    for d in exc.diagnostics:
        print(d)
