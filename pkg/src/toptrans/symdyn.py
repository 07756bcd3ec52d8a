"""Window-scale computations on the full shift over a finite alphabet.

Points of the shift are bi-infinite sequences; the shift moves every
coordinate one place to the left, ``s(x)_i = x_{i+1}``.  Everything here is
exact: hitting sets of cylinder pairs are described structurally, and
distances are rationals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator

Word = tuple[int, ...]


class TailNotComputable(ValueError):
    """The point carries no certified all-zero left tail."""


def parse_word(text: str, alphabet: int = 2) -> Word:
    if not text or not all(c.isdigit() and int(c) < alphabet for c in text):
        raise ValueError(f"not a nonempty word over {alphabet} symbols: {text!r}")
    return tuple(int(c) for c in text)


def word_str(w: Word) -> str:
    return "".join(map(str, w))


def all_words(length: int, alphabet: int = 2) -> Iterator[Word]:
    """Words of one length in lexicographic order."""
    return product(range(alphabet), repeat=length)


def words_up_to(maxlen: int, alphabet: int = 2) -> Iterator[Word]:
    for ell in range(1, maxlen + 1):
        yield from all_words(ell, alphabet)


@dataclass(frozen=True)
class Cylinder:
    """Sequences showing ``word`` at coordinates ``offset .. offset+len-1``."""

    word: Word
    offset: int = 0

    def __post_init__(self):
        if not self.word:
            raise ValueError("cylinder word must be nonempty")

    @classmethod
    def parse(cls, text: str, alphabet: int = 2) -> "Cylinder":
        m = re.fullmatch(r"\s*([0-9]+)\s*(?:@\s*(-?\d+))?\s*", text)
        if not m:
            raise ValueError(f"expected WORD@OFFSET, got {text!r}")
        return cls(parse_word(m.group(1), alphabet), int(m.group(2) or 0))

    def __len__(self):
        return len(self.word)

    def constraints(self, shift: int = 0) -> dict[int, int]:
        return {self.offset + shift + i: a for i, a in enumerate(self.word)}

    def contains(self, point: "ComputablePoint") -> bool:
        return all(point.coordinate(i) == a for i, a in self.constraints().items())

    def __str__(self):
        return f"{word_str(self.word)}@{self.offset}"


# hitting sets of cylinder pairs


@dataclass(frozen=True)
class ZSetDescription:
    """A subset of Z: an explicit window ``[lo, hi]`` and constant membership outside.

    ``colower`` / ``coupper`` say whether every integer below / above the
    window belongs to the set.
    """

    exceptional: frozenset[int]
    window: tuple[int, int]
    colower: bool = True
    coupper: bool = True

    def __contains__(self, n: int) -> bool:
        lo, hi = self.window
        if n < lo:
            return self.colower
        if n > hi:
            return self.coupper
        return n not in self.exceptional

    def is_cofinite(self) -> bool:
        return self.colower and self.coupper

    def plus_is_infinite(self) -> bool:
        return self.coupper

    def members(self, lo: int, hi: int) -> list[int]:
        return [n for n in range(lo, hi + 1) if n in self]

    def negate(self) -> "ZSetDescription":
        """The set ``{-n : n in self}``."""
        lo, hi = self.window
        return ZSetDescription(frozenset(-n for n in self.exceptional), (-hi, -lo),
                               self.coupper, self.colower)

    def to_dict(self) -> dict:
        return {"exceptional": sorted(self.exceptional), "window": list(self.window),
                "colower": self.colower, "coupper": self.coupper}

    def __str__(self):
        if self.is_cofinite():
            if not self.exceptional:
                return "Z"
            return "Z minus {" + ", ".join(map(str, sorted(self.exceptional))) + "}"
        lo, hi = self.window
        inside = ", ".join(map(str, self.members(lo, hi)))
        return f"{{{inside}}} on [{lo}, {hi}], below: {self.colower}, above: {self.coupper}"


def _compatible(a: dict[int, int], b: dict[int, int]) -> bool:
    return all(b.get(i, s) == s for i, s in a.items())


def cylinder_hitting(u: Cylinder, v: Cylinder) -> ZSetDescription:
    """``N(U,V) = {n : U meets s^-n V}`` for two cylinders.

    ``x`` lies in ``s^-n V`` iff ``x`` shows ``v`` at ``v.offset + n``; so n is a
    member iff the two placed words agree where they overlap.  Outside the
    overlap window the supports are disjoint and every n is a member.
    """
    lo = u.offset - v.offset - len(v) + 1
    hi = u.offset - v.offset + len(u) - 1
    cu = u.constraints()
    bad = frozenset(n for n in range(lo, hi + 1) if not _compatible(cu, v.constraints(n)))
    return ZSetDescription(bad, (lo, hi))


def brute_force_member(u: Cylinder, v: Cylinder, n: int, alphabet: int = 2) -> bool:
    """Search every assignment of the constrained coordinates for a point of U with s^n in V."""
    cu, cv = u.constraints(), v.constraints(n)
    coords = sorted(set(cu) | set(cv))
    for values in product(range(alphabet), repeat=len(coords)):
        x = dict(zip(coords, values))
        if all(x[i] == a for i, a in cu.items()) and all(x[i] == a for i, a in cv.items()):
            return True
    return False


@dataclass
class CofiniteReport:
    maxlen: int
    pairs: int
    max_exceptional: int
    failures: list = field(default_factory=list)
    brute_window: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"maxlen": self.maxlen, "pairs": self.pairs, "max_exceptional": self.max_exceptional,
                "brute_window": self.brute_window, "passed": self.passed,
                "failures": self.failures}


def verify_cofinite(maxlen: int, *, brute_window: int = 0, alphabet: int = 2) -> CofiniteReport:
    """Check every cylinder pair at offset 0 with words up to ``maxlen``.

    Each N(U,V) must be cofinite with at most ``|u|+|v|-1`` exceptions and an
    infinite nonnegative part.  With ``brute_window = W`` every n with
    ``|n| <= W`` is also re-decided by exhaustive assignment.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    words = list(words_up_to(maxlen, alphabet))
    rep = CofiniteReport(maxlen, 0, 0, brute_window=brute_window)
    for a in words:
        for b in words:
            u, v = Cylinder(a), Cylinder(b)
            d = cylinder_hitting(u, v)
            rep.pairs += 1
            size = len(d.exceptional)
            rep.max_exceptional = max(rep.max_exceptional, size)
            if not d.is_cofinite() or size > len(a) + len(b) - 1 or not d.plus_is_infinite():
                rep.failures.append({"u": str(u), "v": str(v), "set": str(d)})
            for n in range(-brute_window, brute_window + 1) if brute_window else ():
                if (n in d) != brute_force_member(u, v, n, alphabet):
                    rep.failures.append({"u": str(u), "v": str(v), "n": n, "reason": "brute force disagrees"})
    return rep


# computable points


class ComputablePoint:
    """A point of the shift given by a total coordinate rule."""

    def coordinate(self, n: int) -> int:
        raise NotImplementedError

    def zero_left_tail(self) -> int | None:
        """Some N with ``coordinate(n) == 0`` for all n < N, or None if none is known."""
        return None

    def window(self, lo: int, hi: int) -> Word:
        return tuple(self.coordinate(i) for i in range(lo, hi))


@dataclass(frozen=True)
class AllZeros(ComputablePoint):
    def coordinate(self, n: int) -> int:
        return 0

    def zero_left_tail(self) -> int | None:
        return 0

    def is_zero(self) -> bool:
        return True


@dataclass(frozen=True)
class Periodic(ComputablePoint):
    """``coordinate(n) = word[n mod |word|]``."""

    word: Word

    def __post_init__(self):
        if not self.word:
            raise ValueError("periodic word must be nonempty")

    def coordinate(self, n: int) -> int:
        return self.word[n % len(self.word)]

    def zero_left_tail(self) -> int | None:
        return 0 if not any(self.word) else None


@dataclass(frozen=True)
class AllWordsConcat(ComputablePoint):
    """Zeros on the left; on the right all words by length, then lexicographically."""

    alphabet: int = 2

    def coordinate(self, n: int) -> int:
        if n < 0:
            return 0
        a, ell = self.alphabet, 1
        while n >= ell * a ** ell:
            n -= ell * a ** ell
            ell += 1
        index, pos = divmod(n, ell)
        return index // a ** (ell - 1 - pos) % a

    def zero_left_tail(self) -> int | None:
        return 0


@dataclass(frozen=True)
class ShiftOf(ComputablePoint):
    """``s^k(point)``; negative k shifts the other way."""

    point: ComputablePoint
    k: int

    def coordinate(self, n: int) -> int:
        return self.point.coordinate(n + self.k)

    def zero_left_tail(self) -> int | None:
        t = self.point.zero_left_tail()
        return None if t is None else t - self.k


def shift_coordinate(p: ComputablePoint, n: int, k: int = 0) -> int:
    """Coordinate n of ``s^k(p)``."""
    return p.coordinate(n + k)


# transitive points


@dataclass
class PrefixResult:
    word: Word
    maxlen: int
    expected_length: int
    missing: list[Word]

    @property
    def passed(self) -> bool:
        return not self.missing and len(self.word) == self.expected_length

    def to_dict(self) -> dict:
        return {"maxlen": self.maxlen, "length": len(self.word),
                "expected_length": self.expected_length, "passed": self.passed,
                "missing": [word_str(w) for w in self.missing],
                "word": word_str(self.word)}


def _factors(w: Word, maxlen: int) -> set[Word]:
    return {w[i:i + ell] for ell in range(1, maxlen + 1) for i in range(len(w) - ell + 1)}


def transitive_prefix(maxlen: int, alphabet: int = 2) -> PrefixResult:
    """All words of length ``1..maxlen`` concatenated, with a factor scan."""
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    word = tuple(a for w in words_up_to(maxlen, alphabet) for a in w)
    expected = sum(ell * alphabet ** ell for ell in range(1, maxlen + 1))
    present = _factors(word, maxlen)
    missing = [w for w in words_up_to(maxlen, alphabet) if w not in present]
    return PrefixResult(word, maxlen, expected, missing)


@dataclass
class Trans0Certificate:
    level: int
    zero_below: int
    prefix_matches: bool
    missing: list[Word]

    @property
    def passed(self) -> bool:
        return self.zero_below == 0 and self.prefix_matches and not self.missing

    def to_dict(self) -> dict:
        return {"level": self.level, "zero_below": self.zero_below,
                "prefix_matches": self.prefix_matches, "passed": self.passed,
                "missing": [word_str(w) for w in self.missing],
                "scope": "every word up to the level occurs at a nonnegative coordinate"}


def trans0_point(level: int, alphabet: int = 2) -> tuple[AllWordsConcat, Trans0Certificate]:
    """The all-words point and a certificate checked up to ``level``.

    The certificate reads the point's own coordinates (not the prefix
    construction) and scans them for every word up to the level.
    """
    p = AllWordsConcat(alphabet)
    pre = transitive_prefix(level, alphabet)
    seen = p.window(0, len(pre.word))
    present = _factors(seen, level)
    missing = [w for w in words_up_to(level, alphabet) if w not in present]
    return p, Trans0Certificate(level, p.zero_left_tail(), seen == pre.word, missing)


def tt_plus_from_prefix(maxlen: int, alphabet: int = 2) -> list[dict]:
    """Hitting witnesses n >= 0 for every cylinder pair at offset 0, read off one orbit.

    For words u, v of length at most ``maxlen`` find an occurrence of u at i
    and of v at j >= i in the all-words point p; then ``s^i p`` lies in [u]
    and ``s^(j-i)`` of it in [v].  Returns the pairs with no witness.
    """
    p = AllWordsConcat(alphabet)
    text = word_str(p.window(0, len(transitive_prefix(maxlen + 1, alphabet).word)))
    failures = []
    for a in words_up_to(maxlen, alphabet):
        i = text.find(word_str(a))
        for b in words_up_to(maxlen, alphabet):
            j = text.find(word_str(b), i)
            if i < 0 or j < 0:
                failures.append({"u": word_str(a), "v": word_str(b)})
                continue
            x = ShiftOf(p, i)
            if not (Cylinder(a).contains(x) and Cylinder(b).contains(ShiftOf(x, j - i))):
                failures.append({"u": word_str(a), "v": word_str(b), "n": j - i})
    return failures


# periodic points


def realize_periodic(u: Cylinder, v: Cylinder, n: int) -> Periodic | None:
    """A periodic point in ``U ∩ s^-n V``, or None when none exists."""
    cu, cv = u.constraints(), v.constraints(n)
    if not _compatible(cu, cv):
        return None
    c = {**cu, **cv}
    lo, hi = min(c), max(c) + 1
    per = hi - lo
    word = [0] * per
    for i, a in c.items():
        word[i % per] = a
    return Periodic(tuple(word))


@dataclass
class PeriodicReport:
    maxlen: int
    cylinders: int
    pairs: int
    realizations: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"maxlen": self.maxlen, "cylinders": self.cylinders, "pairs": self.pairs,
                "realizations": self.realizations, "passed": self.passed,
                "failures": self.failures}


def periodic_density_check(maxlen: int, *, pair_maxlen: int | None = None,
                           alphabet: int = 2) -> PeriodicReport:
    """Periodic points meet every cylinder, and realize every hitting time.

    Every ``[w]@0`` with ``|w| <= maxlen`` must contain ``Periodic(w)``.  For
    cylinder pairs up to ``pair_maxlen`` (default ``min(maxlen, 3)``) every
    member n of N(U,V) with ``|n| <= |u|+|v|+1`` must be witnessed by a
    periodic point, so the subsystem of periodic points has the same hitting
    sets in that window.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    pm = min(maxlen, 3) if pair_maxlen is None else pair_maxlen
    rep = PeriodicReport(maxlen, 0, 0, 0)
    for w in words_up_to(maxlen, alphabet):
        rep.cylinders += 1
        if not Cylinder(w).contains(Periodic(w)):
            rep.failures.append({"w": word_str(w)})
    words = list(words_up_to(pm, alphabet))
    for a in words:
        for b in words:
            u, v = Cylinder(a), Cylinder(b)
            d = cylinder_hitting(u, v)
            rep.pairs += 1
            r = len(a) + len(b) + 1
            for n in range(-r, r + 1):
                if n not in d:
                    continue
                q = realize_periodic(u, v, n)
                if q is None or not (u.contains(q) and v.contains(ShiftOf(q, n))):
                    rep.failures.append({"u": str(u), "v": str(v), "n": n})
                else:
                    rep.realizations += 1
    return rep


# distances


@dataclass(frozen=True)
class DistanceBound:
    """``lower <= d(s^-k p, 0) <= upper``; equal when the value is exact."""

    lower: Fraction
    upper: Fraction
    first_nonzero: int | None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {"lower": str(self.lower), "upper": str(self.upper),
                "exact": self.exact, "first_nonzero": self.first_nonzero}


def backward_distance_to_zero(p: ComputablePoint, k: int, radius: int | None = None) -> DistanceBound:
    """Distance from ``s^-k p`` to the all-zero point under ``max 2^-|n| |x_n|``.

    Coordinates with ``|n| <= radius`` are read exactly (default radius
    ``|k| + 64``).  A nonzero coordinate at the least ``|n| = m`` fixes the
    distance at ``2^-m``; when none is seen, everything beyond the radius
    contributes at most ``2^-(radius+1)``.
    """
    if p.zero_left_tail() is None:
        raise TailNotComputable(f"{p!r} has no certified all-zero left tail")
    r = abs(k) + 64 if radius is None else radius
    q = ShiftOf(p, -k)
    if isinstance(p, AllZeros):
        return DistanceBound(Fraction(0), Fraction(0), None)
    for m in range(r + 1):
        if q.coordinate(m) or q.coordinate(-m):
            d = Fraction(1, 2 ** m)
            return DistanceBound(d, d, m)
    return DistanceBound(Fraction(0), Fraction(1, 2 ** (r + 1)), None)
