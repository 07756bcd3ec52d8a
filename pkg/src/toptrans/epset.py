"""Eventually periodic subsets of the nonnegative integers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class EPSet:
    """Indicator ``preperiod`` followed by ``period`` repeated forever.

    Always stored canonically: the period is primitive and no suffix of the
    preperiod could be rotated into it.  Two EPSets are equal iff they denote
    the same subset of N.
    """

    preperiod: tuple[bool, ...]
    period: tuple[bool, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        pre, per = _canonical(tuple(map(bool, self.preperiod)), tuple(map(bool, self.period)))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def from_bits(cls, bits: Sequence[bool], loop_start: int) -> "EPSet":
        """Bits ``b_0..b_{j-1}`` where ``b_k = b_{k-(j-loop_start)}`` for ``k >= j``."""
        return cls(tuple(bits[:loop_start]), tuple(bits[loop_start:]))

    @classmethod
    def empty(cls) -> "EPSet":
        return cls((), (False,))

    @classmethod
    def naturals(cls) -> "EPSet":
        return cls((), (True,))

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        p = len(self.preperiod)
        if k < p:
            return self.preperiod[k]
        return self.period[(k - p) % len(self.period)]

    def is_empty(self) -> bool:
        return not any(self.preperiod) and not any(self.period)

    def is_infinite(self) -> bool:
        return any(self.period)

    def is_cofinite(self) -> bool:
        return all(self.period)

    def min(self) -> int | None:
        for k in range(len(self.preperiod) + len(self.period)):
            if k in self:
                return k
        return None

    def members(self, limit: int) -> list[int]:
        """Members below ``limit``."""
        return [k for k in range(limit) if k in self]

    def size_hint(self) -> int:
        return len(self.preperiod) + len(self.period)

    def to_dict(self) -> dict:
        return {"preperiod": [int(b) for b in self.preperiod],
                "period": [int(b) for b in self.period]}

    @classmethod
    def from_dict(cls, d: dict) -> "EPSet":
        return cls(tuple(bool(b) for b in d["preperiod"]), tuple(bool(b) for b in d["period"]))

    def __str__(self):
        pre = "".join("1" if b else "0" for b in self.preperiod)
        per = "".join("1" if b else "0" for b in self.period)
        return f"{pre}({per})"


def _primitive(period: tuple[bool, ...]) -> tuple[bool, ...]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


def _canonical(pre: tuple[bool, ...], per: tuple[bool, ...]):
    per = _primitive(per)
    pre = list(pre)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return tuple(pre), per
