"""Gap vectors and the starred Green's relations on DDP_n and ODDP_n.

L* holds between maps with equal images and R* between maps with equal
domains. D* is their join; here it is decided from gap vectors alone.
"""

from __future__ import annotations

from .families import Family
from .ptransform import PartialInjection


def gap_vector(alpha: PartialInjection) -> tuple[int, ...]:
    """Distances between images of consecutive domain points."""
    img = alpha.img
    return tuple(abs(b - a) for a, b in zip(img, img[1:]))


def reverse_gap(alpha: PartialInjection) -> tuple[int, ...]:
    return gap_vector(alpha)[::-1]


def span(alpha: PartialInjection) -> int:
    if not alpha.dom:
        raise ValueError("span of the empty map is undefined")
    return alpha.dom[-1] - alpha.dom[0]


def lstar_related(alpha: PartialInjection, beta: PartialInjection) -> bool:
    _same_chain(alpha, beta)
    return set(alpha.img) == set(beta.img)


def rstar_related(alpha: PartialInjection, beta: PartialInjection) -> bool:
    _same_chain(alpha, beta)
    return alpha.dom == beta.dom


def reversal_merges(n: int, gap: tuple[int, ...]) -> bool:
    """Whether a gap vector and its reverse share a D*-class of DDP_n.

    Only spans up to ``(n - 1) // 2`` leave room for a decreasing
    reflection between the two shapes.
    """
    return sum(gap) <= (n - 1) // 2


def dstar_key(family, alpha: PartialInjection) -> tuple:
    """A label shared exactly by the D*-related members of ``family``.

    For ODP the label is the D-class key (equal gap vectors).
    """
    family = Family.parse(family)
    gap = gap_vector(alpha)
    if family in (Family.ODDP, Family.ODP):
        return (alpha.height, gap)
    if family is Family.DDP:
        if reversal_merges(alpha.n, gap):
            gap = min(gap, gap[::-1])
        return (alpha.height, gap)
    raise ValueError(f"no D* characterisation for {family.value}")


def dstar_related(family, alpha: PartialInjection, beta: PartialInjection) -> bool:
    _same_chain(alpha, beta)
    if alpha.height != beta.height:
        return False
    return dstar_key(family, alpha) == dstar_key(family, beta)


def _same_chain(alpha: PartialInjection, beta: PartialInjection) -> None:
    if alpha.n != beta.n:
        raise ValueError(f"chain sizes differ: {alpha.n} != {beta.n}")
