"""Cylinder hitting times and a transitive point of the full two-shift."""
from toptrans.symdyn import AllWordsConcat, backward_distance_to_zero, transitive_prefix, verify_cofinite

r = verify_cofinite(3, brute_window=6)
print(f"cofinite hitting sets: {r.pairs} pairs, passed={r.passed}, largest exception {r.max_exceptional}")

pre = transitive_prefix(4)
print("prefix through length 4:", "".join(map(str, pre.word)))

p = AllWordsConcat()
for k in (1, 2, 4, 8, 16):
    d = backward_distance_to_zero(p, k)
    print(f"k={k:<2} distance of sigma^-k p to 0 lies in [{d.lower}, {d.upper}]")
