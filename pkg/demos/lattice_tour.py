"""Walk through the separating finite examples and the implication lattice."""
from toptrans.families import FamilySpec, build_finite
from toptrans.findyn import PROPERTIES, properties
from toptrans.harness import Corpus, exhaustive_corpus, verify_lattice


def show(title, sys):
    rep = properties(sys)
    row = "  ".join(f"{p}={'y' if rep[p] else 'n'}" for p in PROPERTIES)
    print(f"{title:<22} {row}  Trans={sorted(rep.trans)}")


for n in (1, 3):
    show(f"cycle({n})", build_finite(FamilySpec("cycle", n)))
show("figure9(2, 1)", build_finite(FamilySpec("figure9", 2, 1)))
show("partition4", build_finite(FamilySpec("partition4")))

systems = list(exhaustive_corpus(3, 4)) + list(Corpus(seed=1, count=500, max_points=7))
print(f"\nlattice over {len(systems)} systems:")
for r in verify_lattice(systems):
    print(" ", r.line())
