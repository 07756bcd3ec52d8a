"""Literal evaluation of the definitions, quantifying over every open set.

Nothing here uses minimal-neighbourhood reductions, preimage sequences or
the orbit-sequence condensation; orbits are followed point by point through
the map table.  Exponential in the number of points, meant for n <= 5.
"""
from __future__ import annotations

from math import lcm

from .fintop import FinSpace, _bits, open_sets
from .findyn import PROPERTIES, FinSystem, OrbitSequence, PropertyReport


def opene_sets(space: FinSpace) -> list[int]:
    return [o for o in open_sets(space) if o]


def literal_closure(space: FinSpace, s: int, opens: list[int] | None = None) -> int:
    """Complement of the union of all open sets missing ``s``."""
    if opens is None:
        opens = list(open_sets(space))
    out = 0
    for o in opens:
        if not o & s:
            out |= o
    return space.full & ~out


def _iterate(sys: FinSystem, x: int, k: int) -> int:
    for _ in range(k):
        x = sys.table[x]
    return x


def hits(sys: FinSystem, u: int, v: int, k: int) -> bool:
    """Whether some point of U lands in V after exactly k steps."""
    return any(v >> _iterate(sys, w, k) & 1 for w in _bits(u))


def period_bound(sys: FinSystem) -> int:
    """Every k -> [U meets f^-k V] indicator is periodic from n on with this period."""
    lengths = set()
    for x in range(sys.n):
        seen = []
        y = x
        while y not in seen:
            seen.append(y)
            y = sys.table[y]
        lengths.add(len(seen) - seen.index(y))
    return lcm(*lengths)


def literal_hitting(sys: FinSystem, u: int, v: int) -> tuple[list[int], bool]:
    """Members of N+(U,V) below ``n + P`` and whether N+(U,V) is infinite."""
    n, p = sys.n, period_bound(sys)
    members = [k for k in range(n + p) if hits(sys, u, v, k)]
    return members, any(k >= n for k in members)


def orbit(sys: FinSystem, x: int) -> int:
    out = 0
    for _ in range(sys.n + 1):
        out |= 1 << x
        x = sys.table[x]
    return out


def literal_omega(sys: FinSystem, x: int, opens: list[int]) -> int:
    out = sys.space.full
    y = x
    for _ in range(sys.n + 1):
        out &= literal_closure(sys.space, orbit(sys, y), opens)
        y = sys.table[y]
    return out


def walk_element_sets(sys: FinSystem) -> set[int]:
    """Element sets of all orbit sequences, by brute-force bounded backward walks."""
    n = sys.n
    pre = [[x for x in range(n) if sys.table[x] == y] for y in range(n)]
    found = set()
    limit = 3 * n + 1

    def dfs(walk: list[int], base: int):
        last = walk[-1]
        elems = base
        for w in walk:
            elems |= 1 << w
        if not pre[last]:
            found.add(elems)
        if last in walk[:-1]:
            found.add(elems)
        if len(walk) < limit:
            for q in pre[last]:
                walk.append(q)
                dfs(walk, base)
                walk.pop()

    for x0 in range(n):
        dfs([x0], orbit(sys, x0))
    return found


def _is_plus_invariant(sys: FinSystem, a: int) -> bool:
    return all(a >> sys.table[x] & 1 for x in _bits(a))


def exhaustive_properties(sys: FinSystem) -> dict[str, bool]:
    sp = sys.space
    full = sp.full
    opens = list(open_sets(sp))
    opene = [o for o in opens if o]
    n, p = sys.n, period_bound(sys)
    window = range(n + p)
    out = {}
    plus = {(a, b): [k for k in window if hits(sys, a, b, k)] for a in opene for b in opene}
    out["TT"] = all(plus[a, b] or plus[b, a] for a in opene for b in opene)
    out["TT+"] = all(plus[a, b] for a in opene for b in opene)
    out["TT++"] = all(any(k >= n for k in plus[a, b]) for a in opene for b in opene)
    closed_inv = [full & ~o for o in opens if o and _is_plus_invariant(sys, full & ~o)]
    out["IN"] = not any(a | b == full for a in closed_inv for b in closed_inv)
    dense = [o for o in opene]
    out["DO"] = any(all(e & o for o in dense) for e in walk_element_sets(sys))
    out["DO+"] = any(all(orbit(sys, x) & o for o in dense) for x in range(n))
    out["DO++"] = any(literal_omega(sys, x, opens) == full for x in range(n))
    return out


def literal_trans(sys: FinSystem) -> int:
    opene = opene_sets(sys.space)
    out = 0
    for x in range(sys.n):
        if all(orbit(sys, x) & o for o in opene):
            out |= 1 << x
    return out


def _contained(a: int, b: int) -> bool:
    return a & ~b == 0


def replay_report(sys: FinSystem, report: PropertyReport) -> list[str]:
    """Re-check every verdict and witness of ``report``; returns the problems found."""
    problems = []
    sp = sys.space
    nb, full, n = sp.nbhd, sp.full, sys.n
    opene = opene_sets(sp)
    truth = exhaustive_properties(sys)
    for label in PROPERTIES:
        if report.verdicts[label] != truth[label]:
            problems.append(f"{label}: reported {report.verdicts[label]}, definitions give {truth[label]}")
    if sum(1 << x for x in report.trans) != literal_trans(sys):
        problems.append("Trans differs from the literal transitive points")
    if sum(1 << x for x in report.iso) != sum(1 << x for x in range(n) if 1 << x in opene):
        problems.append("Iso differs from the open singletons")

    def covers(entries, name):
        # every opene pair contains some certified minimal-neighbourhood pair
        keys = {(e[0], e[1]) for e in entries}
        for a in opene:
            for b in opene:
                if not any(_contained(nb[x], a) and _contained(nb[y], b) for x, y in keys):
                    problems.append(f"{name}: opene pair not covered by certificate")
                    return

    w = report.witnesses

    def check_tt():
        for label in ("TT", "TT+"):
            cert = w[label]
            if report.verdicts[label]:
                for x, y, k, u in cert["pairs"]:
                    src, dst = (nb[x], nb[y]) if k >= 0 else (nb[y], nb[x])
                    if label == "TT+" and k < 0:
                        problems.append("TT+: negative hitting time")
                    if not (src >> u & 1 and dst >> _iterate(sys, u, abs(k)) & 1):
                        problems.append(f"{label}: bad hitting witness {[x, y, k, u]}")
                covers(cert["pairs"], label)
            else:
                x, y = cert["pair"]
                fwd, _ = literal_hitting(sys, nb[x], nb[y])
                back, _ = literal_hitting(sys, nb[y], nb[x])
                if fwd or (label == "TT" and back):
                    problems.append(f"{label}: refuting pair {[x, y]} has hitting times")

    def check_ttpp():
        cert = w["TT++"]
        if report.verdicts["TT++"]:
            for x, y, u, j, per in cert["pairs"]:
                fj = _iterate(sys, u, j)
                if not (nb[x] >> u & 1 and nb[y] >> fj & 1 and per >= 1 and _iterate(sys, fj, per) == fj):
                    problems.append(f"TT++: bad recurrence witness {[x, y, u, j, per]}")
            covers(cert["pairs"], "TT++")
        else:
            x, y = cert["pair"]
            if literal_hitting(sys, nb[x], nb[y])[1]:
                problems.append(f"TT++: refuting pair {[x, y]} recurs infinitely")

    def check_in():
        cert = w["IN"]
        if report.verdicts["IN"]:
            for x, y, z, kx, ky in cert["pairs"]:
                if kx is None or ky is None or not (nb[x] >> _iterate(sys, z, kx) & 1 and nb[y] >> _iterate(sys, z, ky) & 1):
                    problems.append(f"IN: bad meeting witness {[x, y, z, kx, ky]}")
        else:
            a, b = (sum(1 << p for p in s) for s in cert["cover"])
            ok = (a | b == full and a != full and b != full
                  and all(_contained(full & ~c, full) and sp.is_open_mask(full & ~c) for c in (a, b))
                  and _is_plus_invariant(sys, a) and _is_plus_invariant(sys, b))
            if not ok:
                problems.append("IN: cover is not two proper closed +invariant sets")

    def check_do():
        cert = w["DO"]
        if report.verdicts["DO"]:
            seq = OrbitSequence.from_dict(cert["sequence"])
            e = seq.elements_mask(sys)
            if not seq.is_valid(sys) or not all(e & o for o in opene):
                problems.append("DO: witness is not a dense orbit sequence")
        else:
            for elems, y in cert["candidates"]:
                if sum(1 << p for p in elems) & nb[y]:
                    problems.append("DO: candidate does not miss its neighbourhood")

    def check_dop():
        cert = w["DO+"]
        if report.verdicts["DO+"]:
            x = cert["point"]
            if not all(orbit(sys, x) & o for o in opene):
                problems.append("DO+: witness orbit not dense")
            for y, k in cert["hits"]:
                if not nb[y] >> _iterate(sys, x, k) & 1:
                    problems.append("DO+: bad hit")
        else:
            if sorted(m[0] for m in cert["misses"]) != list(range(n)):
                problems.append("DO+: misses do not cover every point")
            for x, y in cert["misses"]:
                if orbit(sys, x) & nb[y]:
                    problems.append(f"DO+: orbit of {x} meets U_{y}")

    def check_dopp():
        cert = w["DO++"]
        opens = list(open_sets(sp))
        if report.verdicts["DO++"]:
            if literal_omega(sys, cert["point"], opens) != full:
                problems.append("DO++: omega-limit of witness is not X")
        else:
            if sorted(m[0] for m in cert["misses"]) != list(range(n)):
                problems.append("DO++: misses do not cover every point")
            for x, y, m in cert["misses"]:
                if orbit(sys, _iterate(sys, x, m)) & nb[y]:
                    problems.append(f"DO++: tail of {x} meets U_{y}")

    checks = [(check_tt, "TT/TT+"), (check_ttpp, "TT++"), (check_in, "IN"),
              (check_do, "DO"), (check_dop, "DO+"), (check_dopp, "DO++")]
    for check, label in checks:
        try:
            check()
        except (KeyError, IndexError, TypeError, ValueError) as e:
            problems.append(f"{label}: malformed witness ({type(e).__name__}: {e})")
    return problems
