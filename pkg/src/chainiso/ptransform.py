"""Partial injective maps on the chain ``{1, ..., n}``.

Maps act on the right: ``compose(a, b)`` sends ``x`` to ``(x a) b``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional


class MapFlag(enum.Flag):
    NONE = 0
    ORDER_PRESERVING = enum.auto()
    ORDER_REVERSING = enum.auto()
    ISOMETRY = enum.auto()
    ORDER_DECREASING = enum.auto()
    PARTIAL_IDENTITY = enum.auto()
    IDEMPOTENT = enum.auto()


@dataclass(frozen=True)
class Statistics:
    height: int
    fix: int
    right_waist: Optional[int] = None
    left_waist: Optional[int] = None
    right_shoulder: Optional[int] = None
    left_shoulder: Optional[int] = None


@dataclass(frozen=True)
class PartialInjection:
    """A partial one-to-one map on ``{1, ..., n}``.

    ``dom`` is strictly increasing and ``img[i]`` is the image of ``dom[i]``.
    Use :func:`make` to build one from unsorted pairs.
    """

    n: int
    dom: tuple[int, ...] = ()
    img: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"chain size must be non-negative, got {self.n}")
        if len(self.dom) != len(self.img):
            raise ValueError("domain and image lengths differ")
        for a, b in zip(self.dom, self.dom[1:]):
            if a >= b:
                raise ValueError(f"domain must be strictly increasing: {self.dom}")
        for x in self.dom + self.img:
            if not 1 <= x <= self.n:
                raise ValueError(f"point {x} outside [1, {self.n}]")
        if len(set(self.img)) != len(self.img):
            raise ValueError(f"duplicate image point in {self.img}")

    @property
    def height(self) -> int:
        return len(self.img)

    def __len__(self):
        return len(self.dom)

    def __call__(self, x: int) -> int:
        try:
            return self.img[self.dom.index(x)]
        except ValueError:
            raise KeyError(x) from None

    def __contains__(self, x) -> bool:
        return x in self.dom

    def __mul__(self, other: "PartialInjection") -> "PartialInjection":
        return compose(self, other)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.dom, self.img))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.dom, self.img))

    def inverse(self) -> "PartialInjection":
        return make(self.n, ((y, x) for x, y in zip(self.dom, self.img)))

    def statistics(self) -> Statistics:
        return statistics(self)

    def flags(self) -> MapFlag:
        return classify(self)

    def __str__(self):
        if not self.dom:
            return "(empty)"
        width = len(str(self.n))
        top = " ".join(f"{x:>{width}}" for x in self.dom)
        bottom = " ".join(f"{y:>{width}}" for y in self.img)
        return f"({top})\n({bottom})"


def _trusted(n: int, dom: tuple, img: tuple) -> PartialInjection:
    # caller guarantees validity; skips __post_init__ checks
    alpha = object.__new__(PartialInjection)
    object.__setattr__(alpha, "n", n)
    object.__setattr__(alpha, "dom", dom)
    object.__setattr__(alpha, "img", img)
    return alpha


def make(n: int, pairs: Iterable[tuple[int, int]]) -> PartialInjection:
    """Build a map from ``(x, image of x)`` pairs in any order."""
    pairs = sorted(pairs)
    dom = tuple(x for x, _ in pairs)
    if len(set(dom)) != len(dom):
        raise ValueError(f"duplicate domain point in {dom}")
    return PartialInjection(n, dom, tuple(y for _, y in pairs))


def empty(n: int) -> PartialInjection:
    return PartialInjection(n)


def partial_identity(n: int, points: Iterable[int]) -> PartialInjection:
    dom = tuple(sorted(set(points)))
    return PartialInjection(n, dom, dom)


def compose(alpha: PartialInjection, beta: PartialInjection) -> PartialInjection:
    """Apply ``alpha`` first, then ``beta``."""
    if alpha.n != beta.n:
        raise ValueError(f"chain sizes differ: {alpha.n} != {beta.n}")
    second = beta.as_dict()
    dom, img = [], []
    for x, y in zip(alpha.dom, alpha.img):
        if y in second:
            dom.append(x)
            img.append(second[y])
    return PartialInjection(alpha.n, tuple(dom), tuple(img))


def fixed_points(alpha: PartialInjection) -> tuple[int, ...]:
    return tuple(x for x, y in zip(alpha.dom, alpha.img) if x == y)


def statistics(alpha: PartialInjection) -> Statistics:
    fix = len(fixed_points(alpha))
    if not alpha.dom:
        return Statistics(height=0, fix=0)
    return Statistics(
        height=alpha.height,
        fix=fix,
        right_waist=max(alpha.img),
        left_waist=min(alpha.img),
        right_shoulder=alpha.dom[-1],
        left_shoulder=alpha.dom[0],
    )


def is_order_preserving(alpha: PartialInjection) -> bool:
    # dom is sorted, so comparing neighbours suffices
    return all(a <= b for a, b in zip(alpha.img, alpha.img[1:]))


def is_order_reversing(alpha: PartialInjection) -> bool:
    return all(a >= b for a, b in zip(alpha.img, alpha.img[1:]))


def is_isometry(alpha: PartialInjection) -> bool:
    d, m = alpha.dom, alpha.img
    return all(
        abs(d[i] - d[j]) == abs(m[i] - m[j])
        for i in range(len(d))
        for j in range(i + 1, len(d))
    )


def is_order_decreasing(alpha: PartialInjection) -> bool:
    return all(y <= x for x, y in zip(alpha.dom, alpha.img))


def is_partial_identity(alpha: PartialInjection) -> bool:
    return alpha.dom == alpha.img


def classify(alpha: PartialInjection) -> MapFlag:
    """Return every property flag that holds for ``alpha``.

    Maps of height 0 or 1 are both order-preserving and order-reversing.
    """
    flags = MapFlag.NONE
    if is_order_preserving(alpha):
        flags |= MapFlag.ORDER_PRESERVING
    if is_order_reversing(alpha):
        flags |= MapFlag.ORDER_REVERSING
    if is_isometry(alpha):
        flags |= MapFlag.ISOMETRY
    if is_order_decreasing(alpha):
        flags |= MapFlag.ORDER_DECREASING
    if is_partial_identity(alpha):
        flags |= MapFlag.PARTIAL_IDENTITY
    if compose(alpha, alpha) == alpha:
        flags |= MapFlag.IDEMPOTENT
    return flags
