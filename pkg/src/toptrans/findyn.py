"""Dynamical systems on finite spaces and the seven transitivity properties.

All quantification over opene pairs is done over minimal-neighbourhood
pairs: hitting-time sets are monotone in both arguments and every opene
set contains some ``U_x``.  ``toptrans.oracle`` re-derives everything over
all open sets for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .epset import EPSet
from .fintop import (FinSpace, NotContinuous, _bits, _image_mask, _is_continuous,
                     _iso_mask, _preimage_mask, mask_of, points_of, separation_flags,
                     subspace as _subspace)

PROPERTIES = ("IN", "TT", "TT+", "TT++", "DO", "DO+", "DO++")


class NotPlusInvariant(ValueError):
    pass


class NotTransitive(ValueError):
    pass


class NotHausdorff(ValueError):
    pass


class NoIsolatedPoints(ValueError):
    pass


@dataclass(frozen=True)
class FinSystem:
    space: FinSpace
    table: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    pre: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.space.n
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        if len(self.table) != n:
            raise ValueError(f"map table has {len(self.table)} entries for {n} points")
        if any(not 0 <= t < n for t in self.table):
            raise ValueError("map value out of range")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length differs from point count")
        bad = _is_continuous(self.space, self.space, self.table)
        if bad is not None:
            raise NotContinuous(bad)
        pre = [0] * n
        for x, fx in enumerate(self.table):
            pre[fx] |= 1 << x
        object.__setattr__(self, "pre", tuple(pre))

    @property
    def n(self) -> int:
        return self.space.n

    def f(self, x: int, k: int = 1) -> int:
        for _ in range(k):
            x = self.table[x]
        return x

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def image_mask(self, s: int) -> int:
        return _image_mask(self.table, s)

    def preimage_mask(self, s: int) -> int:
        out = 0
        for y in _bits(s):
            out |= self.pre[y]
        return out

    def __repr__(self):
        return f"FinSystem({self.space.describe()}, map={list(self.table)})"


def system_new(space: FinSpace, table: Iterable[int], labels=None) -> FinSystem:
    return FinSystem(space, tuple(table), tuple(labels) if labels is not None else None)


# orbits


def orbit_path(sys: FinSystem, x: int) -> tuple[list[int], int]:
    """Distinct points ``x, f(x), ...`` up to the first repeat, and the cycle entry index."""
    seen = {}
    path = []
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = sys.table[x]
    return path, seen[x]


def _orbit_mask(sys: FinSystem, s: int) -> int:
    out = s
    frontier = s
    while frontier:
        frontier = sys.image_mask(frontier) & ~out
        out |= frontier
    return out


def _back_mask(sys: FinSystem, s: int) -> int:
    out = s
    frontier = s
    while frontier:
        frontier = sys.preimage_mask(frontier) & ~out
        out |= frontier
    return out


def forward_orbit(sys: FinSystem, x: int) -> frozenset[int]:
    return points_of(_orbit_mask(sys, 1 << x))


def forward_orbit_set(sys: FinSystem, a: Iterable[int]) -> frozenset[int]:
    return points_of(_orbit_mask(sys, mask_of(a)))


def backward_saturation(sys: FinSystem, a: Iterable[int]) -> frozenset[int]:
    return points_of(_back_mask(sys, mask_of(a)))


def two_sided(sys: FinSystem, x: int) -> frozenset[int]:
    m = 1 << x
    return points_of(_orbit_mask(sys, m) | _back_mask(sys, m))


def two_sided_set(sys: FinSystem, a: Iterable[int]) -> frozenset[int]:
    m = mask_of(a)
    return points_of(_orbit_mask(sys, m) | _back_mask(sys, m))


def _omega_mask(sys: FinSystem, x: int) -> int:
    path, mu = orbit_path(sys, x)
    sp = sys.space
    out = sp.full
    # tail orbits are all equal to the cycle once n >= mu
    for k in range(mu + 1):
        out &= sp.closure_mask(_orbit_mask(sys, 1 << path[k]))
    return out


def omega_limit(sys: FinSystem, x: int) -> frozenset[int]:
    return points_of(_omega_mask(sys, x))


def cycles(sys: FinSystem) -> list[tuple[int, ...]]:
    """Periodic orbits, each listed forward from its least point."""
    out = []
    seen = 0
    for x in range(sys.n):
        path, mu = orbit_path(sys, x)
        cyc = path[mu:]
        if not seen >> min(cyc) & 1:
            start = cyc.index(min(cyc))
            out.append(tuple(cyc[start:] + cyc[:start]))
            seen |= mask_of(cyc)
    return sorted(out)


# invariance and map properties


def image(sys: FinSystem, a: Iterable[int]) -> frozenset[int]:
    return points_of(sys.image_mask(mask_of(a)))


def preimage(sys: FinSystem, a: Iterable[int]) -> frozenset[int]:
    return points_of(sys.preimage_mask(mask_of(a)))


def is_plus_invariant(sys: FinSystem, a: Iterable[int]) -> bool:
    m = mask_of(a)
    return sys.image_mask(m) & ~m == 0


def is_minus_invariant(sys: FinSystem, a: Iterable[int]) -> bool:
    m = mask_of(a)
    return sys.preimage_mask(m) & ~m == 0


def is_invariant(sys: FinSystem, a: Iterable[int]) -> bool:
    m = mask_of(a)
    return sys.image_mask(m) == m


def is_surjective(sys: FinSystem) -> bool:
    return all(sys.pre)


def is_bijective(sys: FinSystem) -> bool:
    return all(p and p & (p - 1) == 0 for p in sys.pre)


def is_open_map(sys: FinSystem) -> bool:
    sp = sys.space
    return all(sp.is_open_mask(sys.image_mask(u)) for u in sp.nbhd)


def inverse_system(sys: FinSystem) -> FinSystem:
    """Inverse of a bijective system; raises NotContinuous if the inverse is not."""
    if not is_bijective(sys):
        raise ValueError("map is not bijective")
    inv = [0] * sys.n
    for x, fx in enumerate(sys.table):
        inv[fx] = x
    return FinSystem(sys.space, tuple(inv), sys.labels)


# hitting-time sets


def _preimage_sequence(sys: FinSystem, v: int) -> tuple[list[int], int]:
    """``f^{-k}(V)`` for k = 0.. until the sequence repeats; returns masks and loop start."""
    seen = {}
    seq = []
    while v not in seen:
        seen[v] = len(seq)
        seq.append(v)
        v = sys.preimage_mask(v)
    return seq, seen[v]


def hitting_set_plus(sys: FinSystem, u: Iterable[int], v: Iterable[int]) -> EPSet:
    """Exact ``N+(U,V) = {k >= 0 : U meets f^{-k}(V)}``."""
    um = mask_of(u)
    seq, start = _preimage_sequence(sys, mask_of(v))
    return EPSet.from_bits([bool(um & s) for s in seq], start)


def hitting_nonempty_z(sys: FinSystem, u: Iterable[int], v: Iterable[int]) -> tuple[bool, int | None]:
    """Whether ``N(U,V)`` is nonempty, with a signed member of least magnitude on each side."""
    fwd = hitting_set_plus(sys, u, v).min()
    if fwd is not None:
        return True, fwd
    back = hitting_set_plus(sys, v, u).min()
    if back is not None:
        return True, -back
    return False, None


# orbit sequences


@dataclass(frozen=True)
class OrbitSequence:
    """An orbit sequence read backwards from ``start``.

    The chain is ``start, backward[0], backward[1], ...`` followed, when
    ``loop`` is nonempty, by ``loop`` repeated forever; each entry is a
    preimage of the one before.  With an empty loop the last point has no
    preimage and the sequence is half-infinite.
    """

    start: int
    backward: tuple[int, ...]
    loop: tuple[int, ...]

    def elements_mask(self, sys: FinSystem) -> int:
        return _orbit_mask(sys, 1 << self.start) | mask_of(self.backward) | mask_of(self.loop)

    def elements(self, sys: FinSystem) -> frozenset[int]:
        return points_of(self.elements_mask(sys))

    def is_valid(self, sys: FinSystem) -> bool:
        chain = (self.start,) + self.backward
        for a, b in zip(chain, chain[1:]):
            if sys.table[b] != a:
                return False
        if not self.loop:
            return sys.pre[chain[-1]] == 0
        if sys.table[self.loop[0]] != chain[-1]:
            return False
        for a, b in zip(self.loop, self.loop[1:]):
            if sys.table[b] != a:
                return False
        return sys.table[self.loop[0]] == self.loop[-1]

    def to_dict(self) -> dict:
        return {"start": self.start, "backward": list(self.backward), "loop": list(self.loop),
                "shape": "bi-infinite" if self.loop else "half-infinite"}

    @classmethod
    def from_dict(cls, d: dict) -> "OrbitSequence":
        return cls(d["start"], tuple(d["backward"]), tuple(d["loop"]))


class _CycleData:
    def __init__(self, sys: FinSystem):
        self.length = [0] * sys.n
        self.pred = [-1] * sys.n
        for cyc in cycles(sys):
            for i, c in enumerate(cyc):
                self.length[c] = len(cyc)
                self.pred[cyc[(i + 1) % len(cyc)]] = c
        self.mask = mask_of(x for x in range(sys.n) if self.length[x])


def _backward_walks(sys: FinSystem, v: int, cd: _CycleData) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # Walks in the preimage graph follow a path in its condensation; cycles
    # are its only nontrivial components and are toured in full.
    if cd.length[v]:
        around = []
        w = v
        for _ in range(cd.length[v]):
            w = cd.pred[w]
            around.append(w)
        yield (), tuple(around)
        walk = list(around)
        for _ in range(cd.length[v]):
            b = walk[-1]
            for q in _bits(sys.pre[b] & ~cd.mask):
                for sub, loop in _backward_walks(sys, q, cd):
                    yield tuple(walk) + (q,) + sub, loop
            walk.append(cd.pred[b])
    else:
        if not sys.pre[v]:
            yield (), ()
        for q in _bits(sys.pre[v]):
            for sub, loop in _backward_walks(sys, q, cd):
                yield (q,) + sub, loop


def orbit_sequences(sys: FinSystem) -> Iterator[OrbitSequence]:
    """One maximal orbit sequence per condensation path, for every start point."""
    cd = _CycleData(sys)
    for x in range(sys.n):
        for walk, loop in _backward_walks(sys, x, cd):
            yield OrbitSequence(x, walk, loop)


def dense_orbit_sequence(sys: FinSystem) -> OrbitSequence | None:
    sp = sys.space
    for seq in orbit_sequences(sys):
        if sp.is_dense_mask(seq.elements_mask(sys)):
            return seq
    return None


# transitive points, minimality


def _trans_mask(sys: FinSystem) -> int:
    sp = sys.space
    out = 0
    for x in range(sys.n):
        if sp.is_dense_mask(_orbit_mask(sys, 1 << x)):
            out |= 1 << x
    return out


def transitive_points(sys: FinSystem) -> frozenset[int]:
    return points_of(_trans_mask(sys))


def is_minimal(sys: FinSystem) -> bool:
    return _trans_mask(sys) == sys.space.full


def minimal_subsets(sys: FinSystem) -> list[frozenset[int]]:
    """All minimal nonempty closed +invariant sets (each is some ``cl O(x)``)."""
    sp = sys.space
    cands = sorted({sp.closure_mask(_orbit_mask(sys, 1 << x)) for x in range(sys.n)})
    mins = [c for c in cands if not any(d != c and d & ~c == 0 for d in cands)]
    return sorted((points_of(m) for m in mins), key=min)


def subsystem(sys: FinSystem, a: Iterable[int]) -> FinSystem:
    """Restriction to a nonempty +invariant set; points renumbered in ascending order."""
    am = mask_of(a)
    if am == 0 or sys.image_mask(am) & ~am:
        raise NotPlusInvariant(f"{sorted(points_of(am))} is not a nonempty +invariant set")
    sub, index = _subspace(sys.space, points_of(am))
    pos = {p: i for i, p in enumerate(index)}
    labels = tuple(sys.label(p) for p in index) if sys.labels else None
    return FinSystem(sub, tuple(pos[sys.table[p]] for p in index), labels)


# the seven properties


@dataclass
class PropertyReport:
    verdicts: dict[str, bool]
    trans: frozenset[int]
    iso: frozenset[int]
    witnesses: dict[str, dict]

    def __getitem__(self, label: str) -> bool:
        return self.verdicts[label]

    def to_dict(self) -> dict:
        return {"verdicts": {p: self.verdicts[p] for p in PROPERTIES},
                "trans": sorted(self.trans), "iso": sorted(self.iso),
                "witnesses": self.witnesses}

    @classmethod
    def from_dict(cls, d: dict) -> "PropertyReport":
        return cls(dict(d["verdicts"]), frozenset(d["trans"]), frozenset(d["iso"]),
                   dict(d["witnesses"]))


def _periodic_hit(sys: FinSystem, u: int, v: int) -> list[int] | None:
    """``[w, j, p]`` with w in U, f^j(w) in V and f^j(w) of period p."""
    for w in _bits(u):
        path, mu = orbit_path(sys, w)
        for j in range(mu, len(path)):
            if v >> path[j] & 1:
                return [w, j, len(path) - mu]
    return None


def _first_hit(sys: FinSystem, w: int, v: int) -> int | None:
    path, _ = orbit_path(sys, w)
    for k, p in enumerate(path):
        if v >> p & 1:
            return k
    return None


def properties(sys: FinSystem) -> PropertyReport:
    sp = sys.space
    n, nb, full = sys.n, sp.nbhd, sp.full
    first = [[None] * n for _ in range(n)]
    infinite = [[False] * n for _ in range(n)]
    hitpt = [[None] * n for _ in range(n)]
    for y in range(n):
        seq, start = _preimage_sequence(sys, nb[y])
        for x in range(n):
            u = nb[x]
            for k, s in enumerate(seq):
                if u & s:
                    first[x][y] = k
                    hitpt[x][y] = (u & s & -(u & s)).bit_length() - 1
                    break
            infinite[x][y] = any(u & s for s in seq[start:])
    pairs = [(x, y) for x in range(n) for y in range(n)]
    v: dict[str, bool] = {}
    w: dict[str, dict] = {}

    bad = next(((x, y) for x, y in pairs if first[x][y] is None and first[y][x] is None), None)
    v["TT"] = bad is None
    if bad:
        w["TT"] = {"pair": list(bad)}
    else:
        cert = []
        for x, y in pairs:
            if first[x][y] is not None:
                cert.append([x, y, first[x][y], hitpt[x][y]])
            else:
                cert.append([x, y, -first[y][x], hitpt[y][x]])
        w["TT"] = {"pairs": cert}

    bad = next(((x, y) for x, y in pairs if first[x][y] is None), None)
    v["TT+"] = bad is None
    w["TT+"] = ({"pair": list(bad)} if bad else
                {"pairs": [[x, y, first[x][y], hitpt[x][y]] for x, y in pairs]})

    bad = next(((x, y) for x, y in pairs if not infinite[x][y]), None)
    v["TT++"] = bad is None
    w["TT++"] = ({"pair": list(bad)} if bad else
                 {"pairs": [[x, y] + _periodic_hit(sys, nb[x], nb[y]) for x, y in pairs]})

    # IN decided on its own terms: disjoint -invariant opene sets
    back = [_back_mask(sys, u) for u in nb]
    bad = next(((x, y) for x, y in pairs if not back[x] & back[y]), None)
    v["IN"] = bad is None
    if bad:
        x, y = bad
        w["IN"] = {"cover": [sorted(points_of(full & ~back[x])), sorted(points_of(full & ~back[y]))]}
    else:
        cert = []
        for x, y in pairs:
            c = back[x] & back[y]
            z = (c & -c).bit_length() - 1
            cert.append([x, y, z, _first_hit(sys, z, nb[x]), _first_hit(sys, z, nb[y])])
        w["IN"] = {"pairs": cert}

    trans = _trans_mask(sys)
    v["DO+"] = trans != 0
    if trans:
        x = (trans & -trans).bit_length() - 1
        w["DO+"] = {"point": x, "hits": [[y, _first_hit(sys, x, nb[y])] for y in range(n)]}
    else:
        misses = []
        for x in range(n):
            o = _orbit_mask(sys, 1 << x)
            misses.append([x, next(y for y in range(n) if not o & nb[y])])
        w["DO+"] = {"misses": misses}

    full_omega = [x for x in range(n) if _omega_mask(sys, x) == full]
    v["DO++"] = bool(full_omega)
    if full_omega:
        w["DO++"] = {"point": full_omega[0]}
    else:
        misses = []
        for x in range(n):
            path, mu = orbit_path(sys, x)
            tail = _orbit_mask(sys, 1 << path[mu])
            misses.append([x, next(y for y in range(n) if not tail & nb[y]), mu])
        w["DO++"] = {"misses": misses}

    seq = dense_orbit_sequence(sys)
    v["DO"] = seq is not None
    if seq is not None:
        w["DO"] = {"sequence": seq.to_dict()}
    else:
        cands = []
        seen = set()
        for s in orbit_sequences(sys):
            e = s.elements_mask(sys)
            if e not in seen:
                seen.add(e)
                cands.append([sorted(points_of(e)), next(y for y in range(n) if not e & nb[y])])
        w["DO"] = {"candidates": cands}

    return PropertyReport(v, points_of(trans), points_of(_iso_mask(sp)), w)


# the isolated-point classification


@dataclass(frozen=True)
class Classification:
    tag: str
    params: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"tag": self.tag, "params": dict(self.params), "facts": dict(self.facts)}


CASE_TAGS = ("Figure0", "FiniteFigure9", "NShape", "NChain", "ZChain",
             "InfiniteFigure9", "NegNChain")


def classify_isolated(sys: FinSystem) -> Classification:
    """Shape of the isolated-point orbit of a transitive system on a Hausdorff space.

    On a finite Hausdorff (= discrete) space only the figure-0 (a single
    cycle) and the finite figure-9 (a tail feeding a cycle) can occur.
    """
    sp = sys.space
    if not separation_flags(sp).hausdorff:
        raise NotHausdorff("classification assumes a Hausdorff space")
    iso = _iso_mask(sp)
    if not iso:
        raise NoIsolatedPoints("space has no isolated points")
    if not properties(sys)["TT"]:
        raise NotTransitive("system is not topologically transitive")
    n = sys.n
    roots = [x for x in _bits(iso) if sys.pre[x] == 0]
    image_mask = sys.image_mask(sp.full)
    trans = _trans_mask(sys)
    if roots:
        x = roots[0]
        path, k = orbit_path(sys, x)
        ell = len(path) - k
        y = path[k]
        facts = {
            "root": x,
            "trans": sorted(points_of(trans)),
            "trans_is_root": trans == 1 << x,
            "image_dense": sp.is_dense_mask(image_mask),
            "orbit_is_space": _orbit_mask(sys, 1 << x) == sp.full,
            "cycle_entry_preimage": sorted(points_of(sys.pre[y])),
            "cycle_entry_preimage_expected": sorted({path[k - 1], sys.f(y, ell - 1)}),
        }
        return Classification("FiniteFigure9", {"cycle_length": ell, "tail_length": k}, facts)
    # every point has a preimage, so on a finite set f is a bijection and
    # the doubly-covered (infinite figure-9) case cannot arise
    cyc = cycles(sys)
    facts = {
        "trans": sorted(points_of(trans)),
        "trans_is_space": trans == sp.full,
        "image_is_space": image_mask == sp.full,
        "iso_is_space": iso == sp.full,
        "single_cycle": len(cyc) == 1 and len(cyc[0]) == n,
    }
    return Classification("Figure0", {"cycle_length": n}, facts)
