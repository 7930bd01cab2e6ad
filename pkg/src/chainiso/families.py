"""Enumeration of the partial isometry families on a finite chain.

Every partial isometry is a translation ``x -> x + t`` or a reflection
``x -> c - x`` on its domain, so the fast enumerator walks domain subsets
(as bitmasks) and emits the admissible shifts and centres directly. The
naive enumerator walks all of ``I_n`` and filters by definition; it exists
only as an independent oracle.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Optional

from .ptransform import (
    PartialInjection,
    _trusted,
    is_isometry,
    is_order_decreasing,
    is_order_preserving,
    is_order_reversing,
)

DEFAULT_ORACLE_BOUND = 8
ORACLE_BOUND_ENV = "CHAINISO_ORACLE_BOUND"


class Family(enum.Enum):
    """The studied subsets of ``I_n``.

    ``DDP_STAR`` holds the order-reversing members of ``DDP`` together with
    every map of height at most one.
    """

    DP = "dp"
    ODP = "odp"
    DDP = "ddp"
    ODDP = "oddp"
    DDP_STAR = "ddp-star"

    @classmethod
    def parse(cls, name: "str | Family") -> "Family":
        if isinstance(name, Family):
            return name
        key = name.strip().lower().replace("_", "-")
        aliases = {"ddpstar": "ddp-star", "ddp*": "ddp-star"}
        return cls(aliases.get(key, key))

    @property
    def decreasing(self) -> bool:
        return self in (Family.DDP, Family.ODDP, Family.DDP_STAR)

    @property
    def translations(self) -> bool:
        return self is not Family.DDP_STAR

    @property
    def reflections(self) -> bool:
        return self in (Family.DP, Family.DDP, Family.DDP_STAR)


@dataclass(frozen=True)
class FamilySlice:
    family: Family
    n: int
    height: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if self.n < 0:
            raise ValueError(f"chain size must be non-negative, got {self.n}")


def oracle_bound() -> int:
    raw = os.environ.get(ORACLE_BOUND_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_BOUND


def member(family: Family, alpha: PartialInjection) -> bool:
    """Membership by definition (no structural shortcuts)."""
    family = Family.parse(family)
    if not is_isometry(alpha):
        return False
    if family is Family.DP:
        return True
    if family is Family.ODP:
        return is_order_preserving(alpha)
    if not is_order_decreasing(alpha):
        return False
    if family is Family.DDP:
        return True
    if family is Family.ODDP:
        return is_order_preserving(alpha)
    return is_order_reversing(alpha)


def _bits(mask: int) -> tuple[int, ...]:
    points = []
    x = 1
    while mask:
        if mask & 1:
            points.append(x)
        mask >>= 1
        x += 1
    return tuple(points)


def _shift_range(n: int, lo: int, hi: int, decreasing: bool) -> range:
    # x + t stays in [1, n] for all x in [lo, hi]; decreasing means t <= 0
    top = 0 if decreasing else n - hi
    return range(1 - lo, top + 1)


def _centre_range(n: int, lo: int, hi: int, decreasing: bool) -> range:
    # c - x stays in [1, n]; decreasing means c - lo <= lo
    top = min(n + lo, 2 * lo) if decreasing else n + lo
    return range(hi + 1, top + 1)


def _mask_range(n: int, masks: Optional[range]) -> range:
    if masks is None:
        return range(1 << n)
    if masks.start < 0 or masks.stop > (1 << n):
        raise ValueError(f"mask range {masks} outside [0, 2**{n})")
    return masks


def enumerate_family(
    slc: FamilySlice, masks: Optional[range] = None
) -> Iterator[PartialInjection]:
    """Yield each member of the slice once.

    ``masks`` restricts the walk to a sub-range of domain bitmasks, so a
    slice can be split across workers; the parts are disjoint.
    """
    n, fam, want = slc.n, slc.family, slc.height
    for mask in _mask_range(n, masks):
        k = mask.bit_count()
        if want is not None and k != want:
            continue
        if k == 0:
            yield PartialInjection(n)
            continue
        dom = _bits(mask)
        lo, hi = dom[0], dom[-1]
        if fam.translations or k == 1:
            for t in _shift_range(n, lo, hi, fam.decreasing):
                yield _trusted(n, dom, tuple(x + t for x in dom))
        if fam.reflections and k >= 2:
            for c in _centre_range(n, lo, hi, fam.decreasing):
                yield _trusted(n, dom, tuple(c - x for x in dom))


def count(slc: FamilySlice, masks: Optional[range] = None) -> int:
    """Size of the slice, computed per domain mask without building maps."""
    n, fam, want = slc.n, slc.family, slc.height
    total = 0
    for mask in _mask_range(n, masks):
        k = mask.bit_count()
        if want is not None and k != want:
            continue
        if k == 0:
            total += 1
            continue
        lo = (mask & -mask).bit_length()
        hi = mask.bit_length()
        if fam.translations or k == 1:
            total += len(_shift_range(n, lo, hi, fam.decreasing))
        if fam.reflections and k >= 2:
            total += len(_centre_range(n, lo, hi, fam.decreasing))
    return total


def split_masks(n: int, parts: int) -> list[range]:
    """Cut ``[0, 2**n)`` into ``parts`` contiguous ranges."""
    size = 1 << n
    step = -(-size // max(parts, 1))
    return [range(s, min(s + step, size)) for s in range(0, size, step)]


def all_partial_injections(n: int) -> Iterator[PartialInjection]:
    points = range(1, n + 1)
    for k in range(n + 1):
        for dom in combinations(points, k):
            for img_set in combinations(points, k):
                for img in permutations(img_set):
                    yield _trusted(n, dom, img)


def naive_enumerate(
    slc: FamilySlice, bound: Optional[int] = None
) -> Iterator[PartialInjection]:
    """Brute-force oracle: filter all of ``I_n`` by the family definition."""
    bound = oracle_bound() if bound is None else bound
    if slc.n > bound:
        raise ValueError(
            f"naive enumeration limited to n <= {bound} (got n = {slc.n}); "
            f"raise it with {ORACLE_BOUND_ENV}"
        )
    for alpha in all_partial_injections(slc.n):
        if slc.height is not None and alpha.height != slc.height:
            continue
        if member(slc.family, alpha):
            yield alpha


def construct_translation(n: int, domain, shift: int) -> PartialInjection:
    dom = tuple(sorted(set(domain)))
    img = tuple(x + shift for x in dom)
    bad = [y for y in img if not 1 <= y <= n]
    if bad:
        raise ValueError(f"translation by {shift} sends points outside [1, {n}]: {bad}")
    return PartialInjection(n, dom, img)


def construct_reflection(n: int, domain, centre: int) -> PartialInjection:
    dom = tuple(sorted(set(domain)))
    img = tuple(centre - x for x in dom)
    bad = [y for y in img if not 1 <= y <= n]
    if bad:
        raise ValueError(f"reflection x -> {centre} - x leaves [1, {n}]: {bad}")
    return PartialInjection(n, dom, img)


def height_counts(family, n: int) -> list[int]:
    """``[count of height p for p in 0..n]`` by fast enumeration."""
    fam = Family.parse(family)
    return [count(FamilySlice(fam, n, p)) for p in range(n + 1)]


def fix_counts(family, n: int) -> list[int]:
    fam = Family.parse(family)
    row = [0] * (n + 1)
    for alpha in enumerate_family(FamilySlice(fam, n)):
        row[sum(1 for x, y in zip(alpha.dom, alpha.img) if x == y)] += 1
    return row
