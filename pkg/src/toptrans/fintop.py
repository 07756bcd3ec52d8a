"""Finite topological spaces in minimal-neighbourhood (Alexandrov) form.

A finite space on points ``0..n-1`` is stored as the tuple of its minimal
open neighbourhoods ``U_x``.  Open sets are exactly the unions of these, so
nothing exponential is ever materialised on the fast paths.  Internally all
subsets are Python ``int`` bitmasks; the public functions accept any
iterable of point indices and return ``frozenset``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "AxiomViolation", "EmptyBasisRejected", "EmptySubspace", "NotContinuous",
    "PreconditionFailed", "FinSpace", "SpaceMap", "DensityBasis",
    "SeparationFlags", "MapFlags", "TransferResult", "CRITERIA",
    "space_from_min_nbhds", "space_from_subbasis", "discrete_space",
    "indiscrete_space", "closure", "interior", "is_open", "is_closed",
    "is_dense", "isolated_points", "is_perfect", "separation_flags",
    "is_density_basis", "subspace", "map_predicates", "open_sets",
    "all_spaces", "continuous_maps", "density_basis_transfer",
    "restrict_basis", "extend_basis", "pullback_basis", "pushforward_basis",
    "mask_of", "points_of",
]

CRITERIA = ("I", "II", "III", "IV", "V")


class AxiomViolation(ValueError):
    """Minimal-neighbourhood data that does not define a topology."""

    def __init__(self, x: int, y: int, message: str):
        super().__init__(f"{message} (x={x}, y={y})")
        self.x = x
        self.y = y


class NotContinuous(ValueError):
    def __init__(self, x: int, message: str = "map is not continuous at point"):
        super().__init__(f"{message} {x}")
        self.x = x


class EmptyBasisRejected(ValueError):
    pass


class EmptySubspace(ValueError):
    pass


class PreconditionFailed(ValueError):
    def __init__(self, hypothesis: str):
        super().__init__(f"precondition failed: {hypothesis}")
        self.hypothesis = hypothesis


def mask_of(points: Iterable[int] | int) -> int:
    if isinstance(points, int):
        return points
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class FinSpace:
    """A finite space given by the bitmask of each point's minimal open set."""

    nbhd: tuple[int, ...]

    def __post_init__(self):
        n = len(self.nbhd)
        if n < 1:
            raise AxiomViolation(0, 0, "a space needs at least one point")
        full = (1 << n) - 1
        for x, ux in enumerate(self.nbhd):
            if ux & ~full:
                raise AxiomViolation(x, ux.bit_length() - 1, "neighbourhood index out of range")
            if not ux >> x & 1:
                raise AxiomViolation(x, x, "point missing from its own minimal neighbourhood")
        for x, ux in enumerate(self.nbhd):
            for y in _bits(ux):
                if self.nbhd[y] & ~ux:
                    raise AxiomViolation(x, y, "y in U_x but U_y not contained in U_x")

    @property
    def n(self) -> int:
        return len(self.nbhd)

    @property
    def full(self) -> int:
        return (1 << len(self.nbhd)) - 1

    def min_nbhd(self, x: int) -> frozenset[int]:
        return points_of(self.nbhd[x])

    def points(self) -> frozenset[int]:
        return points_of(self.full)

    def describe(self) -> list[list[int]]:
        return [sorted(points_of(m)) for m in self.nbhd]

    def __repr__(self):
        return f"FinSpace({self.describe()})"

    # mask-level primitives shared with the dynamics module

    def closure_mask(self, s: int) -> int:
        out = 0
        for x, ux in enumerate(self.nbhd):
            if ux & s:
                out |= 1 << x
        return out

    def interior_mask(self, s: int) -> int:
        out = 0
        for x, ux in enumerate(self.nbhd):
            if ux & ~s == 0:
                out |= 1 << x
        return out

    def open_hull_mask(self, s: int) -> int:
        """Smallest open set containing ``s``."""
        out = 0
        for x in _bits(s):
            out |= self.nbhd[x]
        return out

    def is_open_mask(self, s: int) -> bool:
        return self.open_hull_mask(s) == s

    def is_dense_mask(self, s: int) -> bool:
        return all(ux & s for ux in self.nbhd)


def space_from_min_nbhds(n: int, nbhds: Sequence[Iterable[int]]) -> FinSpace:
    if len(nbhds) != n:
        raise AxiomViolation(len(nbhds), n, "neighbourhood list length differs from point count")
    return FinSpace(tuple(mask_of(u) for u in nbhds))


def space_from_subbasis(n: int, sets: Iterable[Iterable[int]]) -> FinSpace:
    """Topology generated by ``sets``; ``U_x`` is the meet of the members holding ``x``."""
    full = (1 << n) - 1
    masks = [mask_of(s) & full for s in sets]
    nb = []
    for x in range(n):
        u = full
        for m in masks:
            if m >> x & 1:
                u &= m
        nb.append(u)
    return FinSpace(tuple(nb))


def discrete_space(n: int) -> FinSpace:
    return FinSpace(tuple(1 << x for x in range(n)))


def indiscrete_space(n: int) -> FinSpace:
    full = (1 << n) - 1
    return FinSpace((full,) * n)


def closure(space: FinSpace, s: Iterable[int]) -> frozenset[int]:
    return points_of(space.closure_mask(mask_of(s)))


def interior(space: FinSpace, s: Iterable[int]) -> frozenset[int]:
    return points_of(space.interior_mask(mask_of(s)))


def is_open(space: FinSpace, s: Iterable[int]) -> bool:
    return space.is_open_mask(mask_of(s))


def is_closed(space: FinSpace, s: Iterable[int]) -> bool:
    return space.is_open_mask(space.full & ~mask_of(s))


def is_dense(space: FinSpace, s: Iterable[int]) -> bool:
    return space.is_dense_mask(mask_of(s))


def _iso_mask(space: FinSpace) -> int:
    out = 0
    for x, ux in enumerate(space.nbhd):
        if ux == 1 << x:
            out |= ux
    return out


def isolated_points(space: FinSpace) -> frozenset[int]:
    return points_of(_iso_mask(space))


def is_perfect(space: FinSpace) -> bool:
    return _iso_mask(space) == 0


class SeparationFlags(NamedTuple):
    t0: bool
    t1: bool
    hausdorff: bool
    regular: bool


def separation_flags(space: FinSpace) -> SeparationFlags:
    nb = space.nbhd
    n = space.n
    t0 = all(not (nb[x] >> y & 1 and nb[y] >> x & 1)
             for x in range(n) for y in range(x + 1, n))
    t1 = all(not nb[x] >> y & 1 for x in range(n) for y in range(n) if x != y)
    hausdorff = all(nb[x] & nb[y] == 0 for x in range(n) for y in range(x + 1, n))
    # U_x and the open hull of C are the smallest opens around x and C, so
    # they are the optimal separators; the largest closed set missing x is
    # X \ U_x and the condition is monotone in C.
    regular = True
    for x in range(n):
        far = space.full & ~nb[x]
        if nb[x] & space.open_hull_mask(far):
            regular = False
            break
    return SeparationFlags(t0, t1, hausdorff, regular)


def open_sets(space: FinSpace) -> Iterator[int]:
    """Every open set, as bitmasks in increasing order.  Exponential; oracle use."""
    for s in range(space.full + 1):
        if space.is_open_mask(s):
            yield s


def all_spaces(n: int) -> Iterator[FinSpace]:
    """Every topology on ``n`` labelled points (all preorders), deterministic order."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    for choice in range(1 << len(pairs)):
        nb = [1 << x for x in range(n)]
        for i, (x, y) in enumerate(pairs):
            if choice >> i & 1:
                nb[x] |= 1 << y
        # transitivity of the relation "y in U_x" as given, no closure taken,
        # so each preorder is produced exactly once
        ok = True
        for x in range(n):
            for y in _bits(nb[x]):
                if nb[y] & ~nb[x]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield FinSpace(tuple(nb))


@dataclass(frozen=True)
class DensityBasis:
    space: FinSpace
    sets: tuple[int, ...]

    def __post_init__(self):
        for s in self.sets:
            if s == 0 or not self.space.is_open_mask(s):
                raise ValueError(f"density basis member {sorted(points_of(s))} is not opene")

    @classmethod
    def of(cls, space: FinSpace, sets: Iterable[Iterable[int]]) -> "DensityBasis":
        return cls(space, tuple(mask_of(s) for s in sets))

    def members(self) -> list[frozenset[int]]:
        return [points_of(s) for s in self.sets]


def _meets_all(a: int, sets: Sequence[int]) -> bool:
    return all(a & u for u in sets)


def is_density_basis(space: FinSpace, basis, criterion: str = "I", *,
                     exhaustive: bool = False) -> bool:
    """Evaluate one of the five equivalent-under-regularity density-basis conditions.

    The default mode uses only the extremal witnesses (complements of minimal
    neighbourhoods and the minimal neighbourhoods themselves); ``exhaustive``
    quantifies over every subset or every open set literally.
    """
    if not isinstance(basis, DensityBasis):
        basis = DensityBasis.of(space, basis)
    if basis.space != space:
        raise ValueError("density basis belongs to a different space")
    d = basis.sets
    if not d:
        raise EmptyBasisRejected("empty family on a nonempty space")
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    full = space.full
    nb = space.nbhd

    if exhaustive:
        if criterion == "I":
            cands = range(full + 1)
            return all(space.is_dense_mask(a) for a in cands if _meets_all(a, d))
        opens = list(open_sets(space))
        if criterion == "II":
            return all(full & ~o == full for o in opens if _meets_all(full & ~o, d))
        if criterion == "III":
            return all(space.is_dense_mask(v) for v in opens if _meets_all(v, d))
        if criterion == "IV":
            return all(_covers_densely(space, v, d) for v in opens if v)
        return all(any(u & ~v == 0 for u in d) for v in opens if v)

    if criterion in ("I", "II"):
        # X \ U_x is closed and is the largest set missing U_x
        return not any(_meets_all(full & ~ux, d) for ux in nb)
    if criterion == "III":
        return not any(_meets_all(space.interior_mask(full & ~ux), d) for ux in nb)
    if criterion == "IV":
        return all(_covers_densely(space, ux, d) for ux in nb)
    return all(any(u & ~ux == 0 for u in d) for ux in nb)


def _covers_densely(space: FinSpace, v: int, d: Sequence[int]) -> bool:
    w = 0
    for u in d:
        if u & ~v == 0:
            w |= u
    return v & ~space.closure_mask(w) == 0


def subspace(space: FinSpace, a: Iterable[int]) -> tuple[FinSpace, tuple[int, ...]]:
    """Relative topology on ``a``; returns the space and the sorted original indices."""
    am = mask_of(a)
    if am == 0:
        raise EmptySubspace("subspace of the empty set")
    index = tuple(sorted(points_of(am)))
    pos = {p: i for i, p in enumerate(index)}
    nb = []
    for p in index:
        nb.append(mask_of(pos[q] for q in _bits(space.nbhd[p] & am)))
    return FinSpace(tuple(nb)), index


def _image_mask(table: Sequence[int], s: int) -> int:
    out = 0
    for x in _bits(s):
        out |= 1 << table[x]
    return out


def _preimage_mask(table: Sequence[int], s: int) -> int:
    out = 0
    for x, fx in enumerate(table):
        if s >> fx & 1:
            out |= 1 << x
    return out


def _is_continuous(dom: FinSpace, cod: FinSpace, table: Sequence[int]) -> int | None:
    """First point where continuity fails, or None."""
    for x, ux in enumerate(dom.nbhd):
        if _image_mask(table, ux) & ~cod.nbhd[table[x]]:
            return x
    return None


@dataclass(frozen=True)
class SpaceMap:
    domain: FinSpace
    codomain: FinSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain.n:
            raise ValueError("map table length differs from domain size")
        if any(not 0 <= t < self.codomain.n for t in self.table):
            raise ValueError("map value out of codomain range")
        bad = _is_continuous(self.domain, self.codomain, self.table)
        if bad is not None:
            raise NotContinuous(bad)

    def image(self, s: Iterable[int]) -> frozenset[int]:
        return points_of(_image_mask(self.table, mask_of(s)))

    def preimage(self, s: Iterable[int]) -> frozenset[int]:
        return points_of(_preimage_mask(self.table, mask_of(s)))


def continuous_maps(dom: FinSpace, cod: FinSpace) -> Iterator[SpaceMap]:
    for table in product(range(cod.n), repeat=dom.n):
        if _is_continuous(dom, cod, table) is None:
            yield SpaceMap(dom, cod, table)


class MapFlags(NamedTuple):
    continuous: bool
    open_map: bool
    dense_image: bool
    irreducible: bool
    weakly_almost_open: bool


def _irreducible_exhaustive(h: SpaceMap) -> bool:
    dom, cod = h.domain, h.codomain
    for a in range(dom.full + 1):
        if dom.is_dense_mask(a) != cod.is_dense_mask(_image_mask(h.table, a)):
            return False
    return True


def _irreducible_shortcut(h: SpaceMap) -> bool:
    # forward half is exactly dense image; for the reverse half every
    # non-dense A lies inside some X \ U_x and images are monotone
    dom, cod = h.domain, h.codomain
    if not cod.is_dense_mask(_image_mask(h.table, dom.full)):
        return False
    return not any(cod.is_dense_mask(_image_mask(h.table, dom.full & ~ux)) for ux in dom.nbhd)


def map_predicates(h: SpaceMap, *, shortcut: bool = False) -> MapFlags:
    dom, cod = h.domain, h.codomain
    continuous = _is_continuous(dom, cod, h.table) is None
    open_map = all(cod.is_open_mask(_image_mask(h.table, ux)) for ux in dom.nbhd)
    dense_image = cod.is_dense_mask(_image_mask(h.table, dom.full))
    irreducible = _irreducible_shortcut(h) if shortcut else _irreducible_exhaustive(h)
    wao = all(cod.interior_mask(cod.closure_mask(_image_mask(h.table, ux)))
              for ux in dom.nbhd)
    return MapFlags(continuous, open_map, dense_image, irreducible, wao)


class TransferResult(NamedTuple):
    space: FinSpace
    sets: tuple[frozenset[int], ...]
    verified: bool


def _finish(space: FinSpace, masks: Iterable[int]) -> TransferResult:
    kept = []
    for m in masks:
        if m and m not in kept:
            kept.append(m)
    verified = bool(kept) and is_density_basis(space, DensityBasis(space, tuple(kept)))
    return TransferResult(space, tuple(points_of(m) for m in kept), verified)


def _as_masks(space: FinSpace, basis) -> tuple[int, ...]:
    if isinstance(basis, DensityBasis):
        return basis.sets
    return DensityBasis.of(space, basis).sets


def restrict_basis(space: FinSpace, basis, dense: Iterable[int], *,
                   check: bool = True) -> TransferResult:
    """``{U ∩ D}`` as a family on the subspace ``D`` (reindexed)."""
    dm = mask_of(dense)
    if check and not space.is_dense_mask(dm):
        raise PreconditionFailed("D is dense in X")
    sub, index = subspace(space, points_of(dm))
    pos = {p: i for i, p in enumerate(index)}
    masks = [mask_of(pos[p] for p in _bits(u & dm)) for u in _as_masks(space, basis)]
    return _finish(sub, masks)


def extend_basis(space: FinSpace, dense: Iterable[int], basis, *,
                 check: bool = True) -> TransferResult:
    """``{int cl U}`` in ``X`` from a family on the dense subspace ``D``."""
    dm = mask_of(dense)
    if check and not space.is_dense_mask(dm):
        raise PreconditionFailed("D is dense in X")
    sub, index = subspace(space, points_of(dm))
    masks = []
    for u in _as_masks(sub, basis):
        ux = mask_of(index[i] for i in _bits(u))
        masks.append(space.interior_mask(space.closure_mask(ux)))
    return _finish(space, masks)


def pullback_basis(h: SpaceMap, basis, *, check: bool = True) -> TransferResult:
    if check and not map_predicates(h).irreducible:
        raise PreconditionFailed("h is irreducible")
    masks = [_preimage_mask(h.table, u) for u in _as_masks(h.codomain, basis)]
    return _finish(h.domain, masks)


def pushforward_basis(h: SpaceMap, basis, *, check: bool = True) -> TransferResult:
    if check:
        flags = map_predicates(h)
        if not flags.weakly_almost_open:
            raise PreconditionFailed("h is weakly almost open")
        if not flags.dense_image:
            raise PreconditionFailed("h has dense image")
    cod = h.codomain
    masks = [cod.interior_mask(cod.closure_mask(_image_mask(h.table, u)))
             for u in _as_masks(h.domain, basis)]
    return _finish(cod, masks)


def density_basis_transfer(kind: str, **kwargs) -> TransferResult:
    """Dispatch to ``restrict``, ``extend``, ``pullback`` or ``pushforward``."""
    funcs = {"restrict": restrict_basis, "extend": extend_basis,
             "pullback": pullback_basis, "pushforward": pushforward_basis}
    if kind not in funcs:
        raise ValueError(f"unknown transfer kind {kind!r}")
    return funcs[kind](**kwargs)
