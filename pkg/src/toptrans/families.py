"""Catalog systems: small finite ones, and countable ones evaluated lazily.

The countable families (an integer chain with the down-set topology, the
successor on discrete N and Z, and the infinite figure-9 on the negative
integers joined to an n-cycle) come with verdicts derived from closed-form
formulas.  ``window_oracle`` re-derives each verdict's finitely checkable
consequences by scanning a window of points, parameters and times directly
from the definitions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .epset import EPSet
from .findyn import PROPERTIES, FinSystem, properties, classify_isolated
from .fintop import (discrete_space, indiscrete_space, space_from_min_nbhds,
                     is_dense, isolated_points)

FINITE = ("cycle", "figure9", "sierpinski_map", "indiscrete_swap", "partition4")
LAZY = ("chainZ", "discreteN", "discreteZ", "infiniteFigure9")
FAMILIES = FINITE + LAZY
EXTRA_LABELS = ("Trans", "f(X) dense", "Iso dense")
DEFAULT_WINDOW = 64


class BadParams(ValueError):
    pass


class BoundTooSmall(ValueError):
    """The window cannot hold the objects a claim refers to."""


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise BadParams(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")
        need_n = self.name in ("cycle", "figure9", "infiniteFigure9")
        if need_n and (self.n is None or self.n < 1):
            raise BadParams(f"{self.name} needs n >= 1")
        if self.name == "figure9" and (self.k is None or self.k < 1):
            raise BadParams("figure9 needs k >= 1")
        if not need_n and self.n is not None:
            raise BadParams(f"{self.name} takes no n")
        if self.name != "figure9" and self.k is not None:
            raise BadParams(f"{self.name} takes no k")

    @property
    def is_finite(self) -> bool:
        return self.name in FINITE

    def __str__(self):
        args = [f"{a}={v}" for a, v in (("n", self.n), ("k", self.k)) if v is not None]
        return f"{self.name}({', '.join(args)})"


# finite families


def build_finite(spec: FamilySpec) -> FinSystem:
    if not spec.is_finite:
        raise BadParams(f"{spec.name} is not a finite family")
    if spec.name == "cycle":
        n = spec.n
        return FinSystem(discrete_space(n), tuple((x + 1) % n for x in range(n)),
                         tuple(f"c{x}" for x in range(n)))
    if spec.name == "figure9":
        n, k = spec.n, spec.k
        table = [x + 1 for x in range(k)] + [k + (x + 1) % n for x in range(n)]
        labels = [f"t{k - x}" for x in range(k)] + [f"c{x}" for x in range(n)]
        return FinSystem(discrete_space(n + k), tuple(table), tuple(labels))
    if spec.name == "sierpinski_map":
        return FinSystem(space_from_min_nbhds(2, [{0}, {0, 1}]), (1, 1))
    if spec.name == "indiscrete_swap":
        return FinSystem(indiscrete_space(2), (1, 0))
    return FinSystem(space_from_min_nbhds(4, [{0, 1}, {0, 1}, {2, 3}, {2, 3}]), (2, 3, 2, 3))


# Expected behaviour of each isolated-point case: the seven verdicts, the
# shape of Trans, and density of f(X) and of Iso.
_ALL = dict.fromkeys(PROPERTIES, True)
_INITIAL = {**_ALL, "TT+": False, "TT++": False, "DO++": False}
_NO_INITIAL = {**_ALL, "TT+": False, "TT++": False, "DO+": False, "DO++": False}
CASE_ROWS = {
    "Figure0": {"verdicts": _ALL, "trans": "all", "image_dense": True, "iso_dense": True},
    "FiniteFigure9": {"verdicts": _INITIAL, "trans": "initial", "image_dense": False, "iso_dense": True},
    "NChain": {"verdicts": _INITIAL, "trans": "initial", "image_dense": False, "iso_dense": True},
    "InfiniteFigure9": {"verdicts": _NO_INITIAL, "trans": "empty", "image_dense": True, "iso_dense": True},
    "ZChain": {"verdicts": _NO_INITIAL, "trans": "empty", "image_dense": True, "iso_dense": True},
}


def case_row_mismatches(sys: FinSystem) -> list[str]:
    """Compare a finite transitive discrete system with the row of its case."""
    c = classify_isolated(sys)
    row = CASE_ROWS[c.tag]
    rep = properties(sys)
    out = [f"{p}: {rep[p]} != {row['verdicts'][p]}" for p in PROPERTIES if rep[p] != row["verdicts"][p]]
    full = frozenset(range(sys.n))
    trans = {"all": full, "initial": frozenset({c.facts.get("root", -1)}), "empty": frozenset()}[row["trans"]]
    if rep.trans != trans:
        out.append(f"Trans = {sorted(rep.trans)}")
    if is_dense(sys.space, sys.image_mask(sys.space.full)) != row["image_dense"]:
        out.append("density of f(X)")
    if is_dense(sys.space, isolated_points(sys.space)) != row["iso_dense"]:
        out.append("density of Iso")
    return out


# the integer chain


@dataclass(frozen=True)
class ChainHitting:
    a: int
    b: int
    value: EPSet
    formula: str
    window: int

    def witness(self, m: int) -> int:
        """A point of (-inf,a) whose m-th image lies in (-inf,b)."""
        return min(self.a, self.b) - m - 1


def chain_hitting(a: int, b: int, window: int = DEFAULT_WINDOW) -> ChainHitting:
    """``N+((-inf,a), (-inf,b))`` for the successor on the integer chain: all of N.

    The claim is confirmed by scanning points x in ``[-window, window]`` for
    every step ``m`` whose formula witness fits in the window.
    """
    top = window + min(a, b)
    if top < 0:
        raise BoundTooSmall(f"window {window} cannot hold a witness for a={a}, b={b}")
    for m in range(top):
        if not any(x < a and x + m < b for x in range(-window, window + 1)):
            raise AssertionError(f"no point of (-inf,{a}) reaches (-inf,{b}) in {m} steps")
    return ChainHitting(a, b, EPSet.naturals(), "N", window)


# lazy countable families


@dataclass(frozen=True)
class _Lazy:
    """Definitions of a countable family: points, map, basic opene sets."""

    name: str
    n: int = 1

    def points(self, r: int) -> list[int]:
        if self.name == "discreteN":
            return list(range(0, r + 1))
        if self.name == "infiniteFigure9":
            return list(range(-r, 0)) + list(range(self.n))
        return list(range(-r, r + 1))

    def f(self, x: int) -> int:
        if self.name == "infiniteFigure9" and x >= 0:
            return (x + 1) % self.n
        return x + 1

    def basics(self, r: int) -> list[dict]:
        if self.name == "chainZ":
            return [{"down": a} for a in range(-r, r + 1)]
        return [{"point": a} for a in self.points(r)]

    def isolated(self, x: int) -> bool:
        # no singleton is a down-set; every singleton of a discrete space is open
        return self.name != "chainZ"

    @staticmethod
    def member(desc: dict, x: int) -> bool:
        if "down" in desc:
            return x < desc["down"]
        if "point" in desc:
            return x == desc["point"]
        return x != desc["minus"]

    def miss(self, x: int) -> dict:
        """An opene set missing the forward orbit of x (families without transitive points)."""
        if self.name == "chainZ":
            return {"down": x}
        if self.name == "infiniteFigure9" and x >= 0:
            return {"point": -1}
        return {"point": x - 1}

    def sequence(self, k: int) -> int | None:
        """The k-th term of the dense orbit sequence, None before a half-infinite start."""
        if self.name == "discreteN":
            return k if k >= 0 else None
        if self.name == "infiniteFigure9":
            return k if k < 0 else k % self.n
        return k


def _lazy(spec: FamilySpec) -> _Lazy:
    if spec.is_finite:
        raise BadParams(f"{spec.name} is a finite family; use build_finite")
    return _Lazy(spec.name, spec.n or 1)


@dataclass
class Verdict:
    label: str
    outcome: bool
    witness: dict = field(default_factory=dict)
    provenance: str = "ExactFormula"
    window: int | None = None

    def to_dict(self) -> dict:
        return {"label": self.label, "outcome": self.outcome, "witness": self.witness,
                "provenance": self.provenance, "window": self.window}


@dataclass
class Confirmed:
    claim: Verdict
    window: int


@dataclass
class CounterexampleFound:
    claim: Verdict
    window: int
    witness: dict


def _formula_verdicts(lz: _Lazy) -> list[Verdict]:
    v = []
    if lz.name == "chainZ":
        every = {"formula": "N+((-inf,a),(-inf,b)) = N", "witness": "x = min(a,b) - m - 1"}
        v += [Verdict(p, True, every) for p in ("TT", "TT+", "TT++")]
        v.append(Verdict("IN", True, {"formula": "any two opene down-sets meet, so their backward saturations do"}))
        v.append(Verdict("DO", True, {"sequence": "x_k = k, bi-infinite"}))
        v.append(Verdict("DO+", False, {"miss": "O(x) misses (-inf,x)"}))
        v.append(Verdict("DO++", False, {"miss": "O(x) misses (-inf,x)"}))
        v.append(Verdict("Trans", False, {"points": []}))
        v.append(Verdict("f(X) dense", True, {"formula": "f is onto"}))
        v.append(Verdict("Iso dense", False, {"set": {"down": 0}, "formula": "no singleton is open"}))
        return _ordered(v)
    singles = {"formula": "N({a},{b}) = {b - a}", "witness": "k = b - a"}
    v.append(Verdict("TT", True, singles))
    v.append(Verdict("IN", True, {"formula": "O({a}) and O({b}) share their later points"}))
    if lz.name == "discreteN":
        v.append(Verdict("TT+", False, {"U": {"minus": 0}, "V": {"point": 0}}))
        v.append(Verdict("TT++", False, {"U": {"minus": 0}, "V": {"point": 0}}))
        v.append(Verdict("DO", True, {"sequence": "x_k = k for k >= 0, half-infinite"}))
        v.append(Verdict("DO+", True, {"point": 0}))
        v.append(Verdict("DO++", False, {"miss": "tail after one step misses {0}", "point_miss": {"point": 0}}))
        v.append(Verdict("Trans", True, {"points": [0]}))
        v.append(Verdict("f(X) dense", False, {"set": {"point": 0}}))
    else:
        far = {"U": {"point": 0}, "V": {"point": -1}}
        v.append(Verdict("TT+", False, far))
        v.append(Verdict("TT++", False, far))
        shape = "x_k = k, bi-infinite" if lz.name == "discreteZ" else "x_k = k for k < 0, then around the cycle"
        v.append(Verdict("DO", True, {"sequence": shape}))
        miss = "O(x) misses {x-1}" if lz.name == "discreteZ" else "O(x) misses {x-1}, or {-1} on the cycle"
        v.append(Verdict("DO+", False, {"miss": miss}))
        v.append(Verdict("DO++", False, {"miss": miss}))
        v.append(Verdict("Trans", False, {"points": []}))
        v.append(Verdict("f(X) dense", True, {"formula": "f is onto"}))
    v.append(Verdict("Iso dense", True, {"formula": "the space is discrete"}))
    return _ordered(v)


def _ordered(v: list[Verdict]) -> list[Verdict]:
    order = PROPERTIES + EXTRA_LABELS
    return sorted(v, key=lambda x: order.index(x.label))


def lazy_verdicts(spec: FamilySpec, window: int | None = DEFAULT_WINDOW) -> list[Verdict]:
    """Formula verdicts for a countable family, each confirmed on ``window`` when given."""
    lz = _lazy(spec)
    out = _formula_verdicts(lz)
    if window is not None:
        for vd in out:
            res = window_oracle(spec, window, vd)
            if isinstance(res, CounterexampleFound):
                raise AssertionError(f"{spec} {vd.label}: {res.witness}")
            vd.window = window
    return out


LAZY_TAGS = {"discreteN": "NChain", "discreteZ": "ZChain", "infiniteFigure9": "InfiniteFigure9"}


def lazy_classification(spec: FamilySpec) -> str | None:
    """Isolated-point case of a countable family; None for the perfect chain."""
    _lazy(spec)
    return LAZY_TAGS.get(spec.name)


def window_oracle(spec: FamilySpec, window: int, claim: Verdict):
    """Re-check ``claim`` against the definitions on a window of size ``window``.

    Basic opene sets with parameter at most ``window/4`` are tested, points
    are searched in ``[-3*window, 3*window]`` and times run up to ``window``.
    """
    if window < 8:
        raise BoundTooSmall("window must be at least 8")
    lz = _lazy(spec)
    rp, steps = window // 4, window
    scan = lz.points(3 * window)
    basics = lz.basics(rp)

    def orbit(x, m=steps):
        out = []
        for _ in range(m + 1):
            out.append(x)
            x = lz.f(x)
        return out

    def hit_times(u, v, ks):
        ks = set(ks)
        top = max(ks)
        for x in scan:
            if lz.member(u, x):
                y = x
                for k in range(top + 1):
                    if k in ks and lz.member(v, y):
                        return k
                    y = lz.f(y)
        return None

    def nonempty(d):
        return any(lz.member(d, x) for x in scan)

    def bad(**w):
        return CounterexampleFound(claim, window, w)

    def in_window(x):
        if x not in scan:
            raise BoundTooSmall(f"point {x} lies outside the window")

    label, out, w = claim.label, claim.outcome, claim.witness
    if label in ("TT", "TT+", "TT++") and out:
        ks = range(rp, 2 * rp + 1) if label == "TT++" else range(steps + 1)
        for u in basics:
            for v in basics:
                fwd = hit_times(u, v, ks)
                if fwd is None and not (label == "TT" and hit_times(v, u, ks) is not None):
                    return bad(U=u, V=v)
    elif label in ("TT", "TT+", "TT++"):
        u, v = w["U"], w["V"]
        if not (nonempty(u) and nonempty(v)):
            return bad(reason="witness set empty in window", U=u, V=v)
        ks = range(steps // 2, steps + 1) if label == "TT++" else range(steps + 1)
        k = hit_times(u, v, ks)
        if k is None and label == "TT":
            k = hit_times(v, u, ks)
        if k is not None:
            return bad(U=u, V=v, k=k)
    elif label == "IN":
        if not out:
            raise BoundTooSmall("no window check for a refuted IN claim")
        orbits = [orbit(z) for z in scan]
        reach = [{i for i, o in enumerate(orbits) if any(lz.member(u, y) for y in o)} for u in basics]
        for i, u in enumerate(basics):
            for j, v in enumerate(basics):
                if not reach[i] & reach[j]:
                    return bad(U=u, V=v)
    elif label == "DO":
        if not out:
            raise BoundTooSmall("no window check for a refuted DO claim")
        terms = {k: lz.sequence(k) for k in range(-steps, steps + 1)}
        for k in range(-steps, steps):
            a, b = terms[k], terms[k + 1]
            if a is None:
                continue
            if lz.f(a) != b:
                return bad(reason="not an orbit sequence", k=k)
            if terms.get(k - 1, a) is None and any(lz.f(x) == a for x in scan):
                return bad(reason="half-infinite start has a preimage", k=k)
        elems = {x for x in terms.values() if x is not None}
        for d in basics:
            if not any(lz.member(d, x) for x in elems):
                return bad(reason="sequence misses an opene set", V=d)
    elif label in ("DO+", "DO++") and out:
        if label == "DO++":
            raise BoundTooSmall("omega-limit fullness needs a tail argument")
        if "point" not in w:
            # no witness offered: look for one among the small points
            for x in lz.points(rp):
                o = orbit(x)
                if all(any(lz.member(d, y) for y in o) for d in basics):
                    return Confirmed(claim, window)
            return bad(reason="no point in the window has an orbit meeting every basic set")
        x = w["point"]
        in_window(x)
        o = orbit(x)
        for d in basics:
            if not any(lz.member(d, y) for y in o):
                return bad(point=x, V=d)
    elif label in ("DO+", "DO++"):
        for x in lz.points(rp):
            # a tail after one step may miss a set the orbit itself meets
            if "point_miss" in w:
                d, tail = w["point_miss"], orbit(lz.f(x))
            else:
                d, tail = lz.miss(x), orbit(x)
            if not nonempty(d):
                return bad(reason="witness set empty in window", point=x)
            if any(lz.member(d, y) for y in tail):
                return bad(point=x, V=d)
    elif label == "Trans":
        big = lz.basics(2 * rp)
        found = [x for x in lz.points(rp)
                 if all(any(lz.member(d, y) for y in orbit(x)) for d in big)]
        claimed = [x for x in w["points"] if x in lz.points(rp)]
        if found != claimed or (claimed != w["points"]):
            return bad(found=found, claimed=w["points"])
    elif label == "f(X) dense":
        if out:
            for d in basics:
                if not any(lz.member(d, lz.f(x)) for x in scan):
                    return bad(V=d)
        else:
            d = w["set"]
            if not nonempty(d) or any(lz.member(d, lz.f(x)) for x in scan):
                return bad(V=d)
    elif label == "Iso dense":
        if out:
            for d in basics:
                if not any(lz.member(d, x) and lz.isolated(x) for x in scan):
                    return bad(V=d)
        else:
            d = w["set"]
            if not nonempty(d) or any(lz.member(d, x) and lz.isolated(x) for x in scan):
                return bad(V=d)
    else:
        raise BadParams(f"unknown label {label!r}")
    return Confirmed(claim, window)


def family_summary(spec: FamilySpec, window: int = DEFAULT_WINDOW, verify: bool = True) -> dict:
    """A JSON-ready description used by the command line."""
    if spec.is_finite:
        sys = build_finite(spec)
        rep = properties(sys)
        out = {"family": str(spec), "finite": True, "points": sys.n,
               "labels": [sys.label(x) for x in range(sys.n)], "report": rep.to_dict()}
        try:
            c = classify_isolated(sys)
            out["classification"] = c.to_dict()
            if verify:
                out["case_row_mismatches"] = case_row_mismatches(sys)
        except ValueError as e:
            out["classification"] = {"refused": type(e).__name__, "reason": str(e)}
        return out
    verdicts = lazy_verdicts(spec, window if verify else None)
    return {"family": str(spec), "finite": False, "classification": lazy_classification(spec),
            "verdicts": [v.to_dict() for v in verdicts]}
