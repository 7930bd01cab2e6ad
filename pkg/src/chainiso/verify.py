"""Cross-checks between the formula suite and exhaustive enumeration.

Each check returns a list of :class:`CheckReport`. A failing report always
carries the first counterexample found; a failing check never stops the
others from running.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Callable, Iterable, Optional

from . import formulas
from .families import (
    Family,
    FamilySlice,
    all_partial_injections,
    count,
    enumerate_family,
    fix_counts,
    height_counts,
    member,
    oracle_bound,
)
from .green import dstar_key, gap_vector, span
from .ptransform import PartialInjection, compose, fixed_points, is_isometry

FORMULA_RANGE = 40
RECURRENCE_RANGE = 30


@dataclass
class Bounds:
    """Largest ``n`` each kind of check will touch."""

    naive: int = field(default_factory=oracle_bound)
    enumeration: int = 12
    partition: int = 10
    closure: int = 7
    structure: int = 9


@dataclass
class CheckReport:
    name: str
    params: dict
    status: str = "pass"
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, **counterexample) -> "CheckReport":
        if self.passed:
            self.status = "fail"
            self.counterexample = counterexample
        return self

    def to_dict(self) -> dict:
        return asdict(self)


class UnionFind:
    """Disjoint sets over ``0 .. size - 1`` with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def groups(self) -> list[tuple[int, ...]]:
        out = defaultdict(list)
        for x in range(len(self.parent)):
            out[self.find(x)].append(x)
        return sorted(tuple(g) for g in out.values())


@dataclass
class ClassPartition:
    family: Family
    n: int
    elements: list[PartialInjection]
    classes: list[tuple[int, ...]]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> list[PartialInjection]:
        return [self.elements[c[0]] for c in self.classes]

    @property
    def per_height(self) -> dict[int, int]:
        return dict(sorted(Counter(r.height for r in self.representatives).items()))

    def as_sets(self) -> set[frozenset[PartialInjection]]:
        return {frozenset(self.elements[i] for i in c) for c in self.classes}


def _partition(family, n, elements, link_keys) -> ClassPartition:
    uf = UnionFind(len(elements))
    for key_of in link_keys:
        first = {}
        for i, alpha in enumerate(elements):
            first.setdefault(key_of(alpha), i)
            uf.union(first[key_of(alpha)], i)
    return ClassPartition(Family.parse(family), n, elements, uf.groups())


def dstar_partition(
    family,
    n: int,
    bound: int = 10,
    elements: Optional[Iterable[PartialInjection]] = None,
) -> ClassPartition:
    """D* as the join of "same domain" and "same image", by union-find."""
    if n > bound:
        raise ValueError(f"partition limited to n <= {bound} (got n = {n})")
    family = Family.parse(family)
    if elements is None:
        elements = enumerate_family(FamilySlice(family, n))
    elements = list(elements)
    return _partition(
        family, n, elements, [lambda a: a.dom, lambda a: frozenset(a.img)]
    )


def gap_partition(family, n: int, elements=None) -> ClassPartition:
    """Partition by the gap-vector D* label instead of by linking."""
    family = Family.parse(family)
    if elements is None:
        elements = enumerate_family(FamilySlice(family, n))
    elements = list(elements)
    return _partition(family, n, elements, [lambda a: dstar_key(family, a)])


def golden_tables() -> dict:
    text = resources.files("chainiso").joinpath("data/tables.json").read_text()
    return json.loads(text)


# --- table and order checks --------------------------------------------------

HEIGHT_FORMULAS: dict[Family, Callable[[int, int], int]] = {
    Family.ODP: lambda n, p: formulas.f_odp_height(n, p),
    Family.ODDP: lambda n, p: formulas.f_oddp_height(n, p),
    Family.DDP: lambda n, p: formulas.f_ddp_height(n, p),
    Family.DDP_STAR: lambda n, p: formulas.f_ddpstar_height(n, p),
}

FIX_FORMULAS: dict[Family, Callable[[int, int], int]] = {
    Family.ODDP: lambda n, m: formulas.f_oddp_fix(n, m),
    Family.DDP: lambda n, m: formulas.f_ddp_fix(n, m),
}

ORDER_FORMULAS: dict[Family, Callable[[int], int]] = {
    Family.ODP: lambda n: formulas.order_odp(n),
    Family.ODDP: lambda n: formulas.order_oddp(n),
    Family.DDP: lambda n: formulas.order_ddp(n),
    Family.DDP_STAR: lambda n: formulas.order_ddpstar(n),
}


def _safe(fn, *args):
    try:
        return fn(*args)
    except ArithmeticError as exc:
        return f"error: {exc}"


def check_height_tables(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.enumeration)
    golden = golden_tables()
    reports = []
    for family, formula in HEIGHT_FORMULAS.items():
        rep = CheckReport(f"height-table/{family.value}", {"family": family.value, "n_max": top})
        fixture = golden.get(family.value)
        for n in range(top + 1):
            counted = height_counts(family, n)
            for p, actual in enumerate(counted):
                expected = _safe(formula, n, p)
                if expected != actual:
                    rep.fail(family=family.value, n=n, p=p, expected=expected, actual=actual)
            if fixture and n < len(fixture["rows"]):
                for p, expected in enumerate(fixture["rows"][n]):
                    if counted[p] != expected:
                        rep.fail(family=family.value, n=n, p=p, expected=expected,
                                 actual=counted[p], source="golden")
                if sum(counted) != fixture["sums"][n]:
                    rep.fail(family=family.value, n=n, expected=fixture["sums"][n],
                             actual=sum(counted), source="golden-sum")
        if fixture:
            rep.details["golden_rows"] = min(top + 1, len(fixture["rows"]))
        reports.append(rep)
    return reports


def check_orders(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.enumeration)
    reports = []
    for family, formula in ORDER_FORMULAS.items():
        rep = CheckReport(f"order/{family.value}", {"family": family.value, "n_max": top})
        for n in range(top + 1):
            expected = _safe(formula, n)
            actual = count(FamilySlice(family, n))
            if expected != actual:
                rep.fail(family=family.value, n=n, expected=expected, actual=actual)
        reports.append(rep)
    return reports


def check_fix_tables(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.enumeration)
    reports = []
    for family, formula in FIX_FORMULAS.items():
        rep = CheckReport(f"fix-table/{family.value}", {"family": family.value, "n_max": top})
        for n in range(top + 1):
            for m, actual in enumerate(fix_counts(family, n)):
                expected = _safe(formula, n, m)
                if expected != actual:
                    rep.fail(family=family.value, n=n, m=m, expected=expected, actual=actual)
        reports.append(rep)
    return reports


# --- class counts --------------------------------------------------------------


def _per_height_total(n, counts: dict[int, int]) -> tuple[list[int], int]:
    row = [counts.get(p, 0) for p in range(n + 1)]
    return row, sum(row)


def check_class_counts(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.partition)
    reports = []

    rep = CheckReport("classes/odp-gap-vectors", {"family": "odp", "n_max": top})
    for n in range(top + 1):
        keys = {dstar_key(Family.ODP, a) for a in enumerate_family(FamilySlice(Family.ODP, n))}
        row, total = _per_height_total(n, Counter(h for h, _ in keys))
        for p in range(n + 1):
            expected = formulas.dclass_count_odp(n, p)
            if row[p] != expected:
                rep.fail(family="odp", n=n, p=p, expected=expected, actual=row[p])
        if total != formulas.dclass_total_odp(n):
            rep.fail(family="odp", n=n, expected=formulas.dclass_total_odp(n), actual=total)
    reports.append(rep)

    per_height = {Family.ODDP: formulas.dstar_count_oddp, Family.DDP: formulas.dstar_count_ddp}
    totals = {Family.ODDP: formulas.dstar_total_oddp, Family.DDP: formulas.dstar_total_ddp}
    for family in (Family.ODDP, Family.DDP):
        rep = CheckReport(f"classes/{family.value}-union-find", {"family": family.value, "n_max": top})
        agree = CheckReport(f"classes/{family.value}-gap-characterisation",
                            {"family": family.value, "n_max": top})
        for n in range(top + 1):
            part = dstar_partition(family, n, bound=bounds.partition)
            row, total = _per_height_total(n, part.per_height)
            for p in range(n + 1):
                expected = _safe(per_height[family], n, p)
                if row[p] != expected:
                    rep.fail(family=family.value, n=n, p=p, expected=expected, actual=row[p])
            expected = _safe(totals[family], n)
            if total != expected:
                rep.fail(family=family.value, n=n, expected=expected, actual=total)
            fast = gap_partition(family, n, part.elements)
            if fast.as_sets() != part.as_sets():
                agree.fail(family=family.value, n=n, expected=part.class_count,
                           actual=fast.class_count)
        reports += [rep, agree]
    return reports


def check_final_corollary(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    """Resolve the first-case coefficient of the D*-total closed form from
    union-find totals, then test the closed form against every total."""
    bounds = bounds or Bounds()
    top = min(n_max, bounds.partition)
    rep = CheckReport("classes/ddp-total-closed-form", {"family": "ddp", "n_min": 3, "n_max": top})
    observed = {n: dstar_partition(Family.DDP, n, bound=bounds.partition).class_count
                for n in range(3, top + 1)}
    coefficient = formulas.DN_FIRST_CASE_COEFFICIENT
    if any(n % 4 in (3, 0) for n in observed):
        try:
            coefficient = formulas.resolve_dn_coefficient(observed)
        except ArithmeticError as exc:
            rep.fail(family="ddp", reason=str(exc))
    rep.details["coefficient"] = coefficient
    if coefficient != formulas.DN_FIRST_CASE_COEFFICIENT:
        rep.fail(family="ddp", expected=formulas.DN_FIRST_CASE_COEFFICIENT,
                 actual=coefficient, reason="coefficient")
    for n, actual in observed.items():
        expected = formulas.dstar_total_ddp_closed(n, coefficient)
        if expected != actual:
            rep.fail(family="ddp", n=n, expected=expected, actual=actual)
    return [rep]


# --- semigroup and structural checks ----------------------------------------


def check_closure(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.closure)
    reports = []
    for family in (Family.DDP, Family.ODDP):
        rep = CheckReport(f"closure/{family.value}", {"family": family.value, "n_max": top})
        for n in range(top + 1):
            elements = list(enumerate_family(FamilySlice(family, n)))
            members = set(elements)
            products = 0
            for a in elements:
                for b in elements:
                    ab = compose(a, b)
                    products += 1
                    if ab not in members:
                        rep.fail(family=family.value, n=n, alpha=a.pairs(), beta=b.pairs(),
                                 product=ab.pairs())
            rep.details[f"products_n{n}"] = products
        reports.append(rep)
    return reports


def check_oracle(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    """Fast enumeration against brute-force filtering of ``I_n``."""
    bounds = bounds or Bounds()
    top = min(n_max, bounds.naive)
    reports = {f: CheckReport(f"oracle/{f.value}", {"family": f.value, "n_max": top}) for f in Family}
    for n in range(top + 1):
        naive = {f: set() for f in Family}
        for alpha in all_partial_injections(n):
            if not is_isometry(alpha):
                continue
            for f in Family:
                if member(f, alpha):
                    naive[f].add(alpha)
        for f in Family:
            fast = list(enumerate_family(FamilySlice(f, n)))
            if len(fast) != len(set(fast)) or set(fast) != naive[f]:
                reports[f].fail(family=f.value, n=n, expected=len(naive[f]), actual=len(fast),
                                missing=len(naive[f] - set(fast)), extra=len(set(fast) - naive[f]))
    return list(reports.values())


def _first_bad(elements, predicate):
    for alpha in elements:
        if not predicate(alpha):
            return alpha
    return None


def _left_shoulder_exceeds_gap(alpha: PartialInjection) -> bool:
    if alpha.height < 2:
        return True
    top = alpha.dom[-1]
    r = next(s for s in range(1, top) if top - s in alpha)
    return alpha.dom[0] > r


def _single_fix_reflects(alpha: PartialInjection) -> bool:
    fixed = fixed_points(alpha)
    if len(fixed) != 1:
        return True
    (i,) = fixed
    return all(x + y == 2 * i for x, y in zip(alpha.dom, alpha.img))


def _decreasing_fix_structure(alpha: PartialInjection) -> bool:
    fixed = fixed_points(alpha)
    for i in fixed:
        if any(y != x for x, y in zip(alpha.dom, alpha.img) if x < i):
            return False
    if len(fixed) == 1 and alpha.dom[0] < fixed[0]:
        return False
    return True


def check_structure(n_max: int, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    bounds = bounds or Bounds()
    top = min(n_max, bounds.structure)
    props = {
        "translation-or-reflection": (Family.DP, lambda a: a.height <= 1
                                      or len(set(b - a_ for a_, b in zip(a.dom, a.img))) == 1
                                      or len(set(b + a_ for a_, b in zip(a.dom, a.img))) == 1),
        "many-fixed-points-is-identity": (Family.DP, lambda a: len(fixed_points(a)) <= 1
                                          or a.dom == a.img),
        "single-fixed-point-reflects": (Family.DP, _single_fix_reflects),
        "decreasing-fixed-points": (Family.DDP, _decreasing_fix_structure),
        "left-shoulder-exceeds-gap": (Family.DDP_STAR, _left_shoulder_exceeds_gap),
        "span-equals-gap-sum": (Family.DP, lambda a: a.height == 0 or span(a) == sum(gap_vector(a))),
    }
    reports = []
    for name, (family, predicate) in props.items():
        rep = CheckReport(f"structure/{name}", {"family": family.value, "n_max": top})
        for n in range(top + 1):
            bad = _first_bad(enumerate_family(FamilySlice(family, n)), predicate)
            if bad is not None:
                rep.fail(family=family.value, n=n, alpha=bad.pairs())
        reports.append(rep)

    rep = CheckReport("structure/single-fix-symmetry", {"family": "ddp", "n_max": top})
    for n in range(top + 1):
        by_point = Counter()
        for a in enumerate_family(FamilySlice(Family.DDP, n)):
            fixed = fixed_points(a)
            if len(fixed) == 1:
                by_point[fixed[0]] += 1
        for i in range(1, n + 1):
            if by_point[i] != by_point[n + 1 - i]:
                rep.fail(family="ddp", n=n, i=i, expected=by_point[n + 1 - i], actual=by_point[i])
    reports.append(rep)

    rep = CheckReport("structure/reversal-height-bound", {"family": "ddp-star", "n_max": top})
    for n in range(top + 1):
        heights = [a.height for a in enumerate_family(FamilySlice(Family.DDP_STAR, n))
                   if a.height >= 2]
        actual = max(heights, default=1 if n else 0)
        expected = formulas.reversal_height_bound(n)
        if actual != expected:
            rep.fail(family="ddp-star", n=n, expected=expected, actual=actual)
    reports.append(rep)
    return reports


# --- formula-only invariants ----------------------------------------------------


def _entry(fn, n, p):
    return fn(n, p) if 0 <= p <= n else 0


def check_formula_invariants(n_max: int = 0, bounds: Optional[Bounds] = None) -> list[CheckReport]:
    """Identities among the closed forms; independent of ``n_max``."""
    N = FORMULA_RANGE
    f = formulas
    reports = []

    def run(name, params, cases):
        rep = CheckReport(name, params)
        for label, expected, actual in cases:
            if expected != actual:
                rep.fail(expected=expected, actual=actual, **label)
        reports.append(rep)

    def lazy(fn):
        try:
            return fn()
        except ArithmeticError as exc:
            return f"error: {exc}"

    run("formulas/oddp-pascal", {"family": "oddp", "n_max": N}, (
        ({"n": n, "p": p},
         lazy(lambda: f.f_oddp_height(n - 1, p - 1) + _entry(f.f_oddp_height, n - 1, p)),
         lazy(lambda: f.f_oddp_height(n, p)))
        for n in range(2, N + 1) for p in range(2, n + 1)))
    run("formulas/ddp-star-skip", {"family": "ddp-star", "n_max": N}, (
        ({"n": n, "p": p},
         lazy(lambda: f.f_ddpstar_height(n - 2, p - 1) + f.f_ddpstar_height(n - 2, p)),
         lazy(lambda: f.f_ddpstar_height(n, p)))
        for n in range(2, N + 1) for p in range(2, n + 1)))
    run("formulas/ddp-star-boundary", {"family": "ddp-star", "p_max": 15}, [
        case for p in range(1, 16) for case in (
            ({"n": 2 * p + 1, "p": p + 1}, 1, lazy(lambda: f.f_ddpstar_height(2 * p + 1, p + 1))),
            ({"n": 2 * p, "p": p}, 3, lazy(lambda: f.f_ddpstar_height(2 * p, p))))])
    run("formulas/ddp-star-height-two", {"family": "ddp-star", "n_max": N}, (
        ({"n": n}, lazy(lambda: f.gauss_sum_identity(n)), lazy(lambda: f.f_ddpstar_height(n, 2)))
        for n in range(2, N + 1)))
    run("formulas/row-sums", {"n_max": N}, [
        case for n in range(N + 1) for case in (
            ({"family": "oddp", "n": n, "stat": "height"}, f.order_oddp(n),
             lazy(lambda: sum(f.f_oddp_height(n, p) for p in range(n + 1)))),
            ({"family": "oddp", "n": n, "stat": "fix"}, f.order_oddp(n),
             lazy(lambda: sum(f.f_oddp_fix(n, m) for m in range(n + 1)))),
            ({"family": "ddp", "n": n, "stat": "height"}, lazy(lambda: f.order_ddp_closed(n)),
             lazy(lambda: sum(f.f_ddp_height(n, p) for p in range(n + 1)))),
            ({"family": "ddp", "n": n, "stat": "fix"}, lazy(lambda: f.order_ddp_closed(n)),
             lazy(lambda: sum(f.f_ddp_fix(n, m) for m in range(n + 1)))),
            ({"family": "ddp-star", "n": n, "stat": "height"}, f.order_ddpstar_closed(n),
             lazy(lambda: sum(f.f_ddpstar_height(n, p) for p in range(n + 1)))))])
    run("formulas/hockey-stick", {"n_max": 60}, (
        ({"n": n, "p": p}, f.binom(n + 1, p + 1), sum(f.binom(m, p) for m in range(p, n + 1)))
        for n in range(61) for p in range(n + 1)))
    run("formulas/ddp-recurrence", {"family": "ddp", "n_max": RECURRENCE_RANGE}, (
        ({"n": n}, lazy(lambda: f.order_ddp(n)), f.order_ddp_recurrence(n))
        for n in range(RECURRENCE_RANGE + 1)))
    run("formulas/merged-pairs", {"n_max": N}, [
        case for n in range(1, N + 1) for p in range(1, n + 1) for case in (
            ({"n": n, "p": p}, lazy(lambda: f.merged_B_closed(n, p)),
             lazy(lambda: sum(f.merged_g(m, p) for m in range(p, (n - 1) // 2 + 1)))),
            ({"m": n, "p": p}, lazy(lambda: f.merged_g(n, p)),
             lazy(lambda: f.merged_g_closed(n, p))))])
    return reports


CHECKS: dict[str, Callable[..., list[CheckReport]]] = {
    "formulas": check_formula_invariants,
    "tables": check_height_tables,
    "orders": check_orders,
    "fix": check_fix_tables,
    "classes": check_class_counts,
    "corollary": check_final_corollary,
    "closure": check_closure,
    "oracle": check_oracle,
    "structure": check_structure,
}


def _run_one(args):
    name, n_max, bounds = args
    return CHECKS[name](n_max, bounds)


def run_all(
    n_max: int,
    bounds: Optional[Bounds] = None,
    checks: Optional[Iterable[str]] = None,
    workers: int = 1,
) -> list[CheckReport]:
    """Run the selected checks (all by default); output order is fixed."""
    bounds = bounds or Bounds()
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    jobs = [(name, n_max, bounds) for name in names]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]
    return [rep for group in results for rep in group]


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)
