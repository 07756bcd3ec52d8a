"""Show which standing hypotheses the finite statements lean on."""
from toptrans.harness import exhaustive_corpus, search_counterexample, verify_theorem_suite

for expr in ("perfect & TT & !TT+", "perfect & DO+ & !DO++", "hausdorff & TT & !DO"):
    res = search_counterexample(expr, budget=30_000)
    print(f"{expr:<24} {res.status} after {res.candidates} candidates")
    if res.system is not None:
        print("   ", res.system)

systems = list(exhaustive_corpus(3, 4))
kept = {r.id: r.status for r in verify_theorem_suite(systems)}
dropped = verify_theorem_suite(systems, drop_hausdorff=True)
print("\nstatements that break once Hausdorff is no longer assumed:")
for r in dropped:
    if r.status == "failed":
        print(f"  {r.id:<34} (with the assumption: {kept[r.id]})")
