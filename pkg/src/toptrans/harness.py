"""Corpora of finite systems, theorem checks over them, and counterexample search.

Decision procedures are passed in as a ``Procedures`` bundle so that the
checks can be run against deliberately broken variants; every check must
be able to notice when a procedure lies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Callable, Iterable, Iterator

from .epset import EPSet
from .findyn import (PROPERTIES, FinSystem, PropertyReport, _back_mask, _omega_mask,
                     _orbit_mask, _trans_mask, cycles, hitting_set_plus, inverse_system,
                     is_bijective, is_open_map, is_surjective, minimal_subsets, properties,
                     subsystem)
from .fintop import (FinSpace, NotContinuous, _bits, _iso_mask, all_spaces, continuous_maps,
                     discrete_space, mask_of, open_sets, separation_flags)
from .io import system_to_dict
from .oracle import exhaustive_properties, replay_report

FILTERS = ("hausdorff", "perfect", "surjective", "bijective")
MAX_ALL_TOPOLOGIES = 4
MAX_DISCRETE = 5


class BoundExceeded(ValueError):
    pass


# generation


def _random_preorder(n: int, rng: random.Random, hausdorff: bool) -> FinSpace:
    if hausdorff:
        return discrete_space(n)
    p = rng.random()
    reach = [1 << x for x in range(n)]
    for x in range(n):
        for y in range(n):
            if x != y and rng.random() < p:
                reach[x] |= 1 << y
    # transitive closure, Warshall style
    for k in range(n):
        for x in range(n):
            if reach[x] >> k & 1:
                reach[x] |= reach[k]
    return FinSpace(tuple(reach))


def _random_map(space: FinSpace, rng: random.Random, injective: bool) -> tuple[int, ...] | None:
    n, nb = space.n, space.nbhd
    table = [-1] * n

    def ok(x: int, c: int) -> bool:
        for y in range(n):
            fy = table[y]
            if fy < 0:
                continue
            if injective and fy == c:
                return False
            if nb[x] >> y & 1 and not nb[c] >> fy & 1:
                return False
            if nb[y] >> x & 1 and not nb[fy] >> c & 1:
                return False
        return True

    def fill(x: int) -> bool:
        if x == n:
            return True
        cands = list(range(n))
        rng.shuffle(cands)
        for c in cands:
            if ok(x, c):
                table[x] = c
                if fill(x + 1):
                    return True
        table[x] = -1
        return False

    return tuple(table) if fill(0) else None


def random_system(n: int, seed: int, filters: Iterable[str] = ()) -> FinSystem:
    """A random system on n points: random preorder, then a random monotone map.

    The preorder is the reflexive-transitive closure of a relation whose edge
    probability is itself random, so discrete, indiscrete and mixed spaces
    all occur.  The distribution over topologies is not uniform.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    flt = set(filters)
    unknown = flt - set(FILTERS)
    if unknown:
        raise ValueError(f"unknown filters {sorted(unknown)}")
    rng = random.Random(seed)
    injective = bool(flt & {"surjective", "bijective"})
    for _ in range(1000):
        space = _random_preorder(n, rng, "hausdorff" in flt)
        if "perfect" in flt and _iso_mask(space):
            continue
        table = _random_map(space, rng, injective)
        if table is not None:
            return FinSystem(space, table)
    raise ValueError(f"no system on {n} points satisfies {sorted(flt)}")


@dataclass(frozen=True)
class Corpus:
    """A reproducible stream of random systems."""

    seed: int = 0
    count: int = 1000
    min_points: int = 1
    max_points: int = 8
    filters: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[FinSystem]:
        rng = random.Random(self.seed)
        for _ in range(self.count):
            n = rng.randint(self.min_points, self.max_points)
            yield random_system(n, rng.getrandbits(64), self.filters)

    def __len__(self):
        return self.count


def _passes(sys: FinSystem, flt: Iterable[str]) -> bool:
    for name in flt:
        if name == "hausdorff" and not separation_flags(sys.space).hausdorff:
            return False
        if name == "perfect" and _iso_mask(sys.space):
            return False
        if name == "surjective" and not is_surjective(sys):
            return False
        if name == "bijective" and not is_bijective(sys):
            return False
    return True


def enumerate_systems(n: int, *, discrete: bool = False, filters: Iterable[str] = (),
                      max_all: int = MAX_ALL_TOPOLOGIES,
                      max_discrete: int = MAX_DISCRETE) -> Iterator[FinSystem]:
    """Every topology on n points (as labelled spaces) with every continuous self-map."""
    flt = tuple(filters)
    if "hausdorff" in flt:
        discrete = True
    bound = max_discrete if discrete else max_all
    if n < 1 or n > bound:
        raise BoundExceeded(f"n={n} is outside the exhaustive bound {bound}"
                            f" for {'discrete' if discrete else 'all'} spaces")
    spaces = [discrete_space(n)] if discrete else all_spaces(n)
    for sp in spaces:
        if discrete:
            tables = product(range(n), repeat=n)
        else:
            tables = (h.table for h in continuous_maps(sp, sp))
        for t in tables:
            sys = FinSystem(sp, tuple(t))
            if _passes(sys, flt):
                yield sys


def exhaustive_corpus(max_all: int = MAX_ALL_TOPOLOGIES, max_discrete: int = MAX_DISCRETE,
                      filters: Iterable[str] = ()) -> Iterator[FinSystem]:
    """All topologies up to ``max_all`` points, then discrete spaces beyond that."""
    flt = tuple(filters)
    if "hausdorff" not in flt:
        for n in range(1, max_all + 1):
            yield from enumerate_systems(n, filters=flt, max_all=max_all)
        start = max_all + 1
    else:
        start = 1
    for n in range(start, max_discrete + 1):
        yield from enumerate_systems(n, discrete=True, filters=flt, max_discrete=max_discrete)


# procedures under test


@dataclass(frozen=True)
class Procedures:
    """The decision procedures the checks consult."""

    report: Callable[[FinSystem], PropertyReport] = properties
    hitting: Callable[[FinSystem, int, int], EPSet] = hitting_set_plus
    name: str = "reference"


REFERENCE = Procedures()


def _corrupt_report(change: Callable[[PropertyReport], None]):
    def report(sys: FinSystem) -> PropertyReport:
        r = properties(sys)
        r = PropertyReport(dict(r.verdicts), r.trans, r.iso, dict(r.witnesses))
        change(r)
        return r
    return report


def _set(label: str, value: Callable[[PropertyReport], bool]):
    def change(r: PropertyReport):
        r.verdicts[label] = value(r)
    return change


def _trans_is_iso(r: PropertyReport):
    r.trans = r.iso
    r.verdicts["DO+"] = bool(r.iso)


def _shifted_hitting(sys: FinSystem, u, v) -> EPSet:
    h = hitting_set_plus(sys, u, v)
    return EPSet((False,) + h.preperiod, h.period)


NEGATIVE_CONTROLS = {
    "tt-negated": Procedures(report=_corrupt_report(_set("TT", lambda r: not r["TT"])), name="tt-negated"),
    "tt2-is-tt1": Procedures(report=_corrupt_report(_set("TT++", lambda r: r["TT+"])), name="tt2-is-tt1"),
    "trans-is-iso": Procedures(report=_corrupt_report(_trans_is_iso), name="trans-is-iso"),
    "hitting-off-by-one": Procedures(hitting=_shifted_hitting, name="hitting-off-by-one"),
    "in-always-true": Procedures(report=_corrupt_report(_set("IN", lambda r: True)), name="in-always-true"),
    "do2-is-do1": Procedures(report=_corrupt_report(_set("DO++", lambda r: r["DO+"])), name="do2-is-do1"),
}


# results


@dataclass
class TheoremResult:
    id: str
    anchor: str
    hypothesis: str = "none"
    checked: int = 0
    vacuous: int = 0
    violations: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.violations:
            return "failed"
        if self.checked == self.vacuous:
            return "vacuous"
        return "passed"

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "hypothesis": self.hypothesis,
                "checked": self.checked, "vacuous": self.vacuous, "status": self.status,
                "violations": self.violations}

    def line(self) -> str:
        return (f"{self.status.upper():8} {self.id:34} checked={self.checked} "
                f"vacuous={self.vacuous} violations={len(self.violations)}")


MAX_KEPT_VIOLATIONS = 5
LITERAL_LIMIT = 6


def _violation(sys: FinSystem, witness: dict, report: PropertyReport | None = None) -> dict:
    out = {"system": system_to_dict(sys), "witness": witness}
    if sys.n <= LITERAL_LIMIT:
        out["literal"] = exhaustive_properties(sys)
        if report is not None:
            out["replay"] = replay_report(sys, report)
    return out


class _Ctx:
    """Per-system facts, computed on first use."""

    def __init__(self, sys: FinSystem, procs: Procedures):
        self.sys, self.procs = sys, procs
        self.sp = sys.space
        self.n, self.nb, self.full = sys.n, sys.space.nbhd, sys.space.full
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def report(self) -> PropertyReport:
        return self._get("report", lambda: self.procs.report(self.sys))

    @property
    def flags(self):
        return self._get("flags", lambda: separation_flags(self.sp))

    @property
    def hausdorff(self) -> bool:
        return self.flags.hausdorff

    @property
    def iso(self) -> int:
        return self._get("iso", lambda: _iso_mask(self.sp))

    @property
    def perfect(self) -> bool:
        return not self.iso

    @property
    def trans(self) -> int:
        return mask_of(self.report.trans)

    @property
    def bijective(self) -> bool:
        return self._get("bij", lambda: is_bijective(self.sys))

    @property
    def homeomorphism(self) -> bool:
        def f():
            if not self.bijective:
                return False
            try:
                inverse_system(self.sys)
                return True
            except NotContinuous:
                return False
        return self._get("homeo", f)

    @property
    def single_orbit(self) -> bool:
        return self.bijective and len(cycles(self.sys)) == 1

    @property
    def opens(self) -> list[int]:
        return self._get("opens", lambda: [o for o in open_sets(self.sp) if o])

    def orbit(self, s: int) -> int:
        return _orbit_mask(self.sys, s)

    def back(self, s: int) -> int:
        return _back_mask(self.sys, s)

    def omega(self, x: int) -> int:
        return _omega_mask(self.sys, x)

    def hit(self, u: int, v: int) -> EPSet:
        return self.procs.hitting(self.sys, u, v)

    def image(self, s: int) -> int:
        return self.sys.image_mask(s)

    def dense(self, s: int) -> bool:
        return self.sp.is_dense_mask(s)

    def plus_inv(self, s: int) -> bool:
        return self.image(s) & ~s == 0

    def subsets(self) -> range:
        return range(self.full + 1)


VAC = "vacuous"


@dataclass(frozen=True)
class Theorem:
    id: str
    anchor: str
    check: Callable[[_Ctx], object]
    hypothesis: str = "none"
    requires: Callable[[_Ctx], bool] = lambda c: True
    # the statement is made for Hausdorff spaces; dropping this may break it
    hausdorff: bool = False


def _pairs(c: _Ctx):
    return product(range(c.n), repeat=2)


def _check_hitting_membership(c: _Ctx):
    for x, y in _pairs(c):
        h = c.hit(c.nb[x], c.nb[y])
        seq = c.nb[y]
        for k in range(3 * (h.size_hint() + c.n) + 1):
            if (k in h) != bool(c.nb[x] & seq):
                return {"x": x, "y": y, "k": k, "claimed": str(h)}
            seq = c.sys.preimage_mask(seq)


def _check_hitting_orbit(c: _Ctx):
    for x, y in _pairs(c):
        u, v = c.nb[x], c.nb[y]
        a = not c.hit(u, v).is_empty()
        b = bool(c.orbit(u) & v)
        d = bool(u & c.back(v))
        if not a == b == d:
            return {"x": x, "y": y, "hitting": a, "orbit": b, "backward": d}


def _check_hitting_two_sided(c: _Ctx):
    for x, y in _pairs(c):
        u, v = c.nb[x], c.nb[y]
        a = not (c.hit(u, v).is_empty() and c.hit(v, u).is_empty())
        b = bool((c.orbit(u) | c.back(u)) & v)
        d = bool(u & (c.orbit(v) | c.back(v)))
        if not a == b == d:
            return {"x": x, "y": y, "hitting": a, "two_sided_left": b, "two_sided_right": d}


def _check_verdicts_hitting(c: _Ctx):
    hs = {(x, y): c.hit(c.nb[x], c.nb[y]) for x, y in _pairs(c)}
    want = {
        "TT": all(not (hs[x, y].is_empty() and hs[y, x].is_empty()) for x, y in hs),
        "TT+": all(not h.is_empty() for h in hs.values()),
        "TT++": all(h.is_infinite() for h in hs.values()),
    }
    for p, w in want.items():
        if c.report[p] != w:
            return {"property": p, "verdict": c.report[p], "from_hitting_sets": w}


def _check_omega_hitting(c: _Ctx):
    for x in range(c.n):
        a = c.omega(x) == c.full
        b = all(c.hit(1 << x, u).is_infinite() for u in c.nb)
        if a != b:
            return {"x": x, "omega_full": a, "all_infinite": b}


def _check_tt_plus_backward_dense(c: _Ctx):
    minus = [o for o in c.opens if c.sys.preimage_mask(o) & ~o == 0]
    want = all(c.dense(o) for o in minus)
    if c.report["TT+"] != want:
        return {"TT+": c.report["TT+"], "minus_invariant_opene_dense": want}


def _check_tt_plus_forward_dense(c: _Ctx):
    if not c.report["TT+"]:
        return VAC
    for o in c.opens:
        if c.plus_inv(o) and not c.dense(o):
            return {"set": sorted(_bits(o))}


def _check_forward_dense_open(c: _Ctx):
    if not all(c.dense(o) for o in c.opens if c.plus_inv(o)):
        return VAC
    if not c.report["TT+"]:
        return {"TT+": False}


def _check_homeo_invariant_dense(c: _Ctx):
    want = all(c.dense(o) for o in c.opens if c.image(o) == o)
    if c.report["TT"] != want:
        return {"TT": c.report["TT"], "invariant_opene_dense": want}


def _check_trans_minus_invariant(c: _Ctx):
    t = c.trans
    if t in (0, c.full):
        return VAC
    if c.sys.preimage_mask(t) & ~t:
        return {"trans": sorted(_bits(t))}


def _vacuous(c: _Ctx):
    return VAC


def _check_trans_intersection(c: _Ctx):
    for name, basis in (("minimal neighbourhoods", c.nb), ("all opene sets", c.opens)):
        got = c.full
        for u in basis:
            got &= c.back(u)
        if got != c.trans:
            return {"basis": name, "trans": sorted(_bits(c.trans)), "intersection": sorted(_bits(got))}


def _check_single_cycle(c: _Ctx):
    single = c.bijective and len(cycles(c.sys)) == 1
    if c.report["TT+"] != single:
        return {"TT+": c.report["TT+"], "single_cycle": single}


def _check_tt_do(c: _Ctx):
    if c.report["TT"] != c.report["DO"]:
        return {"TT": c.report["TT"], "DO": c.report["DO"]}


def _tt_iso(c: _Ctx) -> bool:
    return c.hausdorff and c.report["TT"] and c.iso != 0


def _check_iso_homeo(c: _Ctx):
    for x in _bits(c.iso):
        two = c.orbit(1 << x) | c.back(1 << x)
        if two != c.iso or not c.dense(two):
            return {"x": x, "two_sided": sorted(_bits(two))}
    if not (c.report["DO+"] and c.single_orbit):
        return {"DO+": c.report["DO+"], "single_orbit": c.single_orbit}


def _check_iso_comparable(c: _Ctx):
    for x in _bits(c.iso):
        for y in _bits(c.iso):
            if not (c.orbit(1 << y) >> x & 1 or c.orbit(1 << x) >> y & 1):
                return {"x": x, "y": y}


def _check_iso_double(c: _Ctx):
    doubles = [x for x in _bits(c.iso) if bin(c.sys.pre[x]).count("1") > 1]
    if not doubles:
        return VAC
    for x in doubles:
        periodic = any(c.sys.f(x, k) == x for k in range(1, c.n + 1))
        if not periodic or bin(c.sys.pre[x]).count("1") != 2:
            return {"x": x, "preimage": sorted(_bits(c.sys.pre[x]))}


def _check_iso_preimage(c: _Ctx):
    for x in _bits(c.iso):
        if c.sys.pre[x] & ~c.iso:
            return {"x": x}


def _check_iso_minus_invariant(c: _Ctx):
    for x in _bits(c.iso):
        if c.back(1 << x) & ~c.iso:
            return {"x": x}


def _check_iso_periodic(c: _Ctx):
    per = [x for x in _bits(c.iso) if any(c.sys.f(x, k) == x for k in range(1, c.n + 1))]
    if not per:
        return VAC
    for x in per:
        o = c.orbit(1 << x)
        if o & ~c.iso:
            return {"x": x, "orbit": sorted(_bits(o))}
        if o != c.full:
            extra = c.sys.preimage_mask(o) & ~o
            if bin(extra).count("1") != 1 or not extra & c.iso:
                return {"x": x, "extra_preimage": sorted(_bits(extra))}


def _check_iso_unique_double(c: _Ctx):
    doubles = [x for x in _bits(c.iso) if bin(c.sys.pre[x]).count("1") > 1]
    if len(doubles) > 1:
        return {"points": doubles}


def _check_iso_two_sided(c: _Ctx):
    isos = list(_bits(c.iso))
    two = {x: c.orbit(1 << x) | c.back(1 << x) for x in isos}
    for x in isos:
        if two[x] != two[isos[0]] or not c.dense(two[x]):
            return {"x": x, "y": isos[0]}
        i = c.orbit(1 << x) & ~c.iso == 0
        ii = two[x] == c.iso
        iii = c.plus_inv(c.iso)
        if not i == ii == iii:
            return {"x": x, "orbit_isolated": i, "two_sided_is_iso": ii, "iso_plus_invariant": iii}


def _plus_invariant_subsets(c: _Ctx) -> Iterator[int]:
    for a in c.subsets():
        if c.plus_inv(a):
            yield a


def _check_preimage_interior(c: _Ctx):
    seen = False
    for a in _plus_invariant_subsets(c):
        u = c.sp.interior_mask(c.sys.preimage_mask(a) & ~a)
        if u:
            seen = True
            if u & (u - 1) or not u & c.iso:
                return {"A": sorted(_bits(a)), "interior": sorted(_bits(u))}
    return None if seen else VAC


def _check_image_dense(c: _Ctx):
    img = c.image(c.full)
    if c.dense(img):
        return VAC
    rest = c.full & ~c.sp.closure_mask(img)
    if rest & (rest - 1) or not rest & c.iso:
        return {"outside_closure_of_image": sorted(_bits(rest))}


def _check_closed_invariant_interior(c: _Ctx):
    seen = False
    for o in [0] + c.opens:
        a = c.full & ~o
        if a == c.full or not c.plus_inv(a):
            continue
        u = c.sp.interior_mask(a)
        if not u:
            continue
        seen = True
        pu, pa = c.sys.preimage_mask(u), c.sys.preimage_mask(a)
        sets = [pu & ~a, c.sp.interior_mask(pa & ~a), c.sp.interior_mask(pa) & ~u, pu & ~u]
        s = sets[0]
        if any(t != s for t in sets) or s & (s - 1) or not s & c.iso or not c.plus_inv(a & ~u):
            return {"A": sorted(_bits(a)), "sets": [sorted(_bits(t)) for t in sets]}
    return None if seen else VAC


def _minimal(c: _Ctx) -> bool:
    return c.trans == c.full


def _closed_sets(c: _Ctx) -> list[int]:
    return [c.full & ~o for o in [0] + c.opens]


def _check_minimal_closed_plus(c: _Ctx):
    proper = [a for a in _closed_sets(c) if a and a != c.full and c.plus_inv(a)]
    if _minimal(c) != (not proper):
        return {"minimal": _minimal(c), "proper_closed_plus_invariant": [sorted(_bits(a)) for a in proper]}


def _check_minimal_consequences(c: _Ctx):
    if not _minimal(c):
        return VAC
    if not c.perfect or not c.dense(c.image(c.full)):
        return {"perfect": c.perfect, "image_dense": c.dense(c.image(c.full))}
    for x in range(c.n):
        if c.omega(x) != c.full:
            return {"x": x, "omega": sorted(_bits(c.omega(x)))}


def _check_minimal_subset_exists(c: _Ctx):
    mins = [mask_of(m) for m in minimal_subsets(c.sys)]
    if not any(c.image(a) == a for a in mins):
        return {"minimal_subsets": [sorted(_bits(a)) for a in mins]}
    for a in mins:
        sub = subsystem(c.sys, _bits(a))
        if _trans_mask(sub) != sub.space.full:
            return {"not_minimal": sorted(_bits(a))}


def _check_minimal_closed_invariant(c: _Ctx):
    proper = [a for a in _closed_sets(c) if a and a != c.full and c.image(a) == a]
    if _minimal(c) != (not proper):
        return {"minimal": _minimal(c), "proper_closed_invariant": [sorted(_bits(a)) for a in proper]}


def _check_minimal_inverse(c: _Ctx):
    if not _minimal(c):
        return VAC
    inv = inverse_system(c.sys)
    if _trans_mask(inv) != c.full:
        return {"inverse_trans": sorted(_bits(_trans_mask(inv)))}


SUBSET_SAMPLE = 12


def dense_plus_invariant_subsets(sys: FinSystem, *, exhaust_upto: int = 4,
                                 sample: int = SUBSET_SAMPLE) -> list[int]:
    """Dense +invariant subsets: all of them up to ``exhaust_upto`` points, else a sample.

    The sample is deterministic: forward orbits of the first few point sets
    in a seeded shuffle, kept when dense.
    """
    sp = sys.space
    if sys.n <= exhaust_upto:
        return [a for a in range(1, sp.full + 1)
                if sys.image_mask(a) & ~a == 0 and sp.is_dense_mask(a)]
    rng = random.Random(sys.n * 1000003 + mask_of(sys.table))
    found = set()
    for _ in range(4 * sample):
        a = _orbit_mask(sys, rng.randrange(1, sp.full + 1))
        if sp.is_dense_mask(a):
            found.add(a)
        if len(found) >= sample:
            break
    return sorted(found)


def subsystem_transfer_mismatches(sys: FinSystem, a: int, decide=properties) -> dict | None:
    """Where the system and its restriction to the dense +invariant ``a`` disagree."""
    sub = subsystem(sys, _bits(a))
    index = sorted(_bits(a))
    r, rs = decide(sys), decide(sub)
    for p in ("TT", "TT+", "TT++"):
        if r[p] != rs[p]:
            return {"A": index, "property": p, "system": r[p], "subsystem": rs[p]}
    trans, strans = mask_of(r.trans), mask_of(rs.trans)
    for i, x in enumerate(index):
        if bool(trans >> x & 1) != bool(strans >> i & 1):
            return {"A": index, "transitive_point": x}
        if (_omega_mask(sys, x) == sys.space.full) != (_omega_mask(sub, i) == sub.space.full):
            return {"A": index, "omega_full": x}
    if (_iso_mask(sys.space) == 0) != (_iso_mask(sub.space) == 0):
        return {"A": index, "perfect": [_iso_mask(sys.space) == 0, _iso_mask(sub.space) == 0]}
    return None


def _check_subsystem_dynamics(c: _Ctx):
    subs = [a for a in dense_plus_invariant_subsets(c.sys) if a != c.full]
    if not subs:
        return VAC
    for a in subs:
        m = subsystem_transfer_mismatches(c.sys, a, c.procs.report)
        if m and "perfect" not in m:
            return m


def _check_subsystem_perfect(c: _Ctx):
    subs = [a for a in dense_plus_invariant_subsets(c.sys) if a != c.full]
    if not subs:
        return VAC
    for a in subs:
        sub = subsystem(c.sys, _bits(a))
        if c.perfect != (_iso_mask(sub.space) == 0):
            return {"A": sorted(_bits(a)), "X_perfect": c.perfect}


def _check_surjective_omega(c: _Ctx):
    if not c.trans:
        return VAC
    for x in _bits(c.trans):
        if c.omega(x) != c.full:
            return {"x": x, "omega": sorted(_bits(c.omega(x)))}


def _hausdorff(c):
    return c.hausdorff


def _hausdorff_tt(c):
    return c.hausdorff and c.report["TT"]


THEOREMS: tuple[Theorem, ...] = (
    Theorem("hitting-membership", "k lies in N+(U,V) exactly when U meets f^-k(V)",
            _check_hitting_membership),
    Theorem("hitting-orbit", "N+(A,B) is nonempty iff O(A) meets B iff A meets O-(B)",
            _check_hitting_orbit),
    Theorem("hitting-two-sided", "N(A,B) is nonempty iff O±(A) meets B iff A meets O±(B)",
            _check_hitting_two_sided),
    Theorem("verdicts-match-hitting", "TT, TT+ and TT++ are read off the hitting sets of opene pairs",
            _check_verdicts_hitting),
    Theorem("omega-hitting", "omega(x) = X iff N+({x},U) is infinite for every opene U",
            _check_omega_hitting),
    Theorem("tt-plus-backward-dense", "TT+ iff every -invariant opene set is dense",
            _check_tt_plus_backward_dense),
    Theorem("tt-plus-forward-dense", "TT+ implies every +invariant opene set is dense",
            _check_tt_plus_forward_dense),
    Theorem("forward-dense-open-map", "for open maps, dense +invariant opene sets give TT+",
            _check_forward_dense_open, "f is an open map", lambda c: is_open_map(c.sys)),
    Theorem("homeomorphism-invariant-dense", "a homeomorphism is TT iff every invariant opene set is dense",
            _check_homeo_invariant_dense, "f is a homeomorphism", lambda c: c.homeomorphism),
    Theorem("trans-minus-invariant", "Trans is -invariant", _check_trans_minus_invariant),
    Theorem("trans-plus-invariant-dense", "on perfect T1 spaces a nonempty Trans is +invariant and dense",
            _vacuous, "X perfect and T1", lambda c: c.perfect and c.flags.t1),
    Theorem("trans-backward-intersection", "Trans is the intersection of O-(U) over a density basis",
            _check_trans_intersection),
    Theorem("perfect-tt-recurrent", "on perfect Hausdorff spaces TT makes N+(U,U) and N+(U,V) infinite",
            _vacuous, "X perfect", lambda c: c.perfect and c.hausdorff, True),
    Theorem("perfect-do-plus-omega", "on perfect Hausdorff spaces transitive points have omega(x) = X",
            _vacuous, "X perfect", lambda c: c.perfect and c.hausdorff, True),
    Theorem("hausdorff-tt-plus-single-cycle", "with isolated points, TT+ holds only for a single cycle",
            _check_single_cycle, "X Hausdorff", _hausdorff, True),
    Theorem("hausdorff-tt-iff-do", "with isolated points, TT iff DO",
            _check_tt_do, "X Hausdorff", _hausdorff, True),
    Theorem("iso-homeomorphism-orbit", "for a transitive homeomorphism O±(x) = Iso for isolated x",
            _check_iso_homeo, "TT homeomorphism, Iso nonempty",
            lambda c: _tt_iso(c) and c.homeomorphism, True),
    Theorem("iso-comparable", "of two isolated points one lies in the orbit of the other",
            _check_iso_comparable, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-double-preimage", "an isolated point with several preimages is periodic with exactly two",
            _check_iso_double, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-preimage-isolated", "preimages of isolated points are isolated",
            _check_iso_preimage, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-minus-invariant", "O-(x) lies in Iso for isolated x",
            _check_iso_minus_invariant, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-periodic-orbit", "a periodic isolated orbit is isolated and has one extra preimage",
            _check_iso_periodic, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-unique-double", "at most one isolated point has several preimages",
            _check_iso_unique_double, "TT, Iso nonempty", _tt_iso, True),
    Theorem("iso-two-sided", "isolated points share a dense O±, which is Iso iff Iso is +invariant",
            _check_iso_two_sided, "TT, Iso nonempty", _tt_iso, True),
    Theorem("plus-invariant-preimage-interior", "int(f^-1(A) minus A) is empty or one isolated point",
            _check_preimage_interior, "TT", _hausdorff_tt, True),
    Theorem("image-dense-or-one-point", "f(X) is dense or misses the closure at one isolated point",
            _check_image_dense, "TT", _hausdorff_tt, True),
    Theorem("closed-invariant-interior", "a proper closed +invariant A with interior U adds one isolated preimage",
            _check_closed_invariant_interior, "TT", _hausdorff_tt, True),
    Theorem("minimal-no-closed-plus", "minimal iff no proper closed +invariant subset",
            _check_minimal_closed_plus, "not a single periodic orbit", lambda c: not c.single_orbit),
    Theorem("minimal-consequences", "a minimal system is perfect, has dense image and full omega-limits",
            _check_minimal_consequences, "not a single periodic orbit",
            lambda c: c.hausdorff and not c.single_orbit, True),
    Theorem("minimal-subset-exists", "a compact system has a minimal closed invariant subset",
            _check_minimal_subset_exists, "X compact", _hausdorff, True),
    Theorem("minimal-no-closed-invariant", "a compact system is minimal iff no proper closed invariant subset",
            _check_minimal_closed_invariant, "X compact, not a single periodic orbit",
            lambda c: c.hausdorff and not c.single_orbit, True),
    Theorem("minimal-inverse", "a minimal compact homeomorphism has a minimal inverse",
            _check_minimal_inverse, "X compact, f a homeomorphism", lambda c: c.homeomorphism),
    Theorem("dense-subsystem-dynamics", "a dense +invariant subsystem has the same TT verdicts, transitive points and full omega-limits",
            _check_subsystem_dynamics),
    Theorem("dense-subsystem-perfect", "X is perfect iff a dense +invariant subset is",
            _check_subsystem_perfect, "X Hausdorff", _hausdorff, True),
    Theorem("surjective-trans-omega", "for surjective f, transitive points have omega(x) = X",
            _check_surjective_omega, "f surjective", lambda c: is_surjective(c.sys)),
    Theorem("perfect-t1-do-tt-plus", "on perfect T1 spaces DO implies TT+",
            _vacuous, "X perfect and T1", lambda c: c.perfect and c.flags.t1),
)

THEOREM_IDS = tuple(t.id for t in THEOREMS)


IMPLICATIONS = (
    ("TT++", "TT+"), ("TT+", "TT"), ("DO++", "DO+"), ("DO+", "DO"),
    ("DO", "TT"), ("DO++", "TT++"), ("TT", "IN"), ("IN", "TT"),
)


def verify_lattice(systems: Iterable[FinSystem], procs: Procedures = REFERENCE) -> list[TheoremResult]:
    """The unconditional implications between the seven properties."""
    results = {(a, b): TheoremResult(f"{a}=>{b}", f"{a} implies {b} on every system")
               for a, b in IMPLICATIONS}
    for sys in systems:
        rep = procs.report(sys)
        for (a, b), res in results.items():
            res.checked += 1
            if not rep[a]:
                res.vacuous += 1
            elif not rep[b] and len(res.violations) < MAX_KEPT_VIOLATIONS:
                res.violations.append(_violation(sys, {"verdicts": dict(rep.verdicts)}, rep))
            elif not rep[b]:
                res.violations.append({"count_only": True})
    return list(results.values())


def verify_theorem_suite(systems: Iterable[FinSystem], procs: Procedures = REFERENCE, *,
                         only: Iterable[str] | None = None,
                         drop_hausdorff: bool = False) -> list[TheoremResult]:
    """Run every registered statement on every system meeting its hypothesis.

    ``drop_hausdorff`` also applies statements made for Hausdorff spaces to
    all systems, to show where that assumption matters.
    """
    chosen = [t for t in THEOREMS if only is None or t.id in set(only)]
    results = []
    for t in chosen:
        hyp = t.hypothesis
        if t.hausdorff and "Hausdorff" not in hyp:
            hyp += ", X Hausdorff"
        results.append(TheoremResult(t.id, t.anchor, hyp if not drop_hausdorff or not t.hausdorff
                                     else hyp + " (Hausdorff dropped)"))
    for sys in systems:
        c = _Ctx(sys, procs)
        for t, res in zip(chosen, results):
            if drop_hausdorff and t.hausdorff:
                sub = _Ctx(sys, procs)
                sub._cache["flags"] = c.flags._replace(hausdorff=True, t1=True)
                ok = t.requires(sub)
            else:
                ok = t.requires(c)
            if not ok:
                continue
            res.checked += 1
            out = t.check(c)
            if out == VAC:
                res.vacuous += 1
            elif out is not None:
                if len(res.violations) < MAX_KEPT_VIOLATIONS:
                    res.violations.append(_violation(sys, out, c.report))
                else:
                    res.violations.append({"count_only": True, "witness": out})
    return results


def replay_corpus(systems: Iterable[FinSystem], procs: Procedures = REFERENCE,
                  max_points: int = LITERAL_LIMIT) -> TheoremResult:
    """Replay every report against the literal definitions (small systems only)."""
    res = TheoremResult("certificate-replay", "every verdict and witness re-checks over all open sets",
                        f"at most {max_points} points")
    for sys in systems:
        if sys.n > max_points:
            continue
        res.checked += 1
        problems = replay_report(sys, procs.report(sys))
        if problems:
            if len(res.violations) < MAX_KEPT_VIOLATIONS:
                res.violations.append({"system": system_to_dict(sys), "witness": {"problems": problems}})
            else:
                res.violations.append({"count_only": True})
    return res


def run_all_checks(systems: Iterable[FinSystem], procs: Procedures = REFERENCE) -> list[TheoremResult]:
    systems = list(systems)
    return (verify_lattice(systems, procs) + verify_theorem_suite(systems, procs)
            + [replay_corpus(systems, procs)])


def report_json(results: list[TheoremResult]) -> list[dict]:
    return [r.to_dict() for r in results]


# counterexample search


ATOMS = PROPERTIES + ("perfect", "hausdorff", "surjective", "bijective")


def parse_predicate(text: str) -> list[tuple[str, bool]]:
    """``"perfect & TT & !TT+"`` -> ``[("perfect", True), ("TT", True), ("TT+", False)]``."""
    terms = []
    for raw in text.split("&"):
        tok = raw.strip()
        positive = True
        while tok.startswith("!"):
            positive = not positive
            tok = tok[1:].strip()
        if tok not in ATOMS:
            raise ValueError(f"unknown atom {tok!r}; atoms are {', '.join(ATOMS)}")
        terms.append((tok, positive))
    if not terms:
        raise ValueError("empty predicate")
    return terms


def _atom_value(sys: FinSystem, rep: dict, atom: str) -> bool:
    if atom in PROPERTIES:
        return rep[atom]
    if atom == "perfect":
        return _iso_mask(sys.space) == 0
    if atom == "hausdorff":
        return separation_flags(sys.space).hausdorff
    if atom == "surjective":
        return is_surjective(sys)
    return is_bijective(sys)


def evaluate_predicate(terms, sys: FinSystem, verdicts: dict) -> bool:
    return all(_atom_value(sys, verdicts, a) == pos for a, pos in terms)


def search_order(max_all: int = MAX_ALL_TOPOLOGIES, max_discrete: int = MAX_DISCRETE) -> Iterator[FinSystem]:
    """Systems by size, then by map table, then by topology in enumeration order.

    Putting the map first means simple maps such as constants are tried on
    every topology of a size before anything more elaborate.
    """
    for n in range(1, max_all + 1):
        spaces = list(all_spaces(n))
        pairs = sorted((h.table, i) for i, sp in enumerate(spaces) for h in continuous_maps(sp, sp))
        for table, i in pairs:
            yield FinSystem(spaces[i], table)
    for n in range(max_all + 1, max_discrete + 1):
        space = discrete_space(n)
        for t in product(range(n), repeat=n):
            yield FinSystem(space, t)


@dataclass
class SearchResult:
    status: str  # "found", "exhausted" or "budget"
    candidates: int
    predicate: str
    system: FinSystem | None = None
    report: PropertyReport | None = None
    replay: list = field(default_factory=list)
    literal_holds: bool | None = None

    @property
    def certified(self) -> bool:
        return self.status == "found" and not self.replay and bool(self.literal_holds)

    def to_dict(self) -> dict:
        out = {"status": self.status, "candidates": self.candidates, "predicate": self.predicate}
        if self.system is not None:
            out.update(system=system_to_dict(self.system), report=self.report.to_dict(),
                       replay_problems=self.replay, literal_holds=self.literal_holds,
                       certified=self.certified)
        return out


def search_counterexample(predicate: str, budget: int = 100_000, *,
                          procs: Procedures = REFERENCE,
                          max_all: int = MAX_ALL_TOPOLOGIES,
                          max_discrete: int = MAX_DISCRETE) -> SearchResult:
    """First system in the fixed search order satisfying ``predicate``.

    The order (see ``search_order``) covers every topology on 1..``max_all``
    points with all continuous maps, then discrete spaces up to
    ``max_discrete`` points.  A
    hit is certified by replaying its report and re-evaluating the
    predicate with every property decided over all open sets.
    """
    terms = parse_predicate(predicate)
    count = 0
    for sys in search_order(max_all, max_discrete):
        if count >= budget:
            return SearchResult("budget", count, predicate)
        count += 1
        rep = procs.report(sys)
        if evaluate_predicate(terms, sys, rep.verdicts):
            literal = exhaustive_properties(sys)
            return SearchResult("found", count, predicate, sys, rep, replay_report(sys, rep),
                                evaluate_predicate(terms, sys, literal))
    return SearchResult("exhausted", count, predicate)
