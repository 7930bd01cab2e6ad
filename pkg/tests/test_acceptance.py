"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its runtime, then
re-raises any failure so pytest reports it as well.
"""

import contextlib
import time
from collections import defaultdict
from itertools import combinations

import pytest

from chainiso import formulas as f
from chainiso import verify
from chainiso.cli import main
from chainiso.families import (
    Family,
    FamilySlice,
    count,
    enumerate_family,
    fix_counts,
    height_counts,
    naive_enumerate,
)
from chainiso.green import gap_vector
from chainiso.verify import Bounds


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(label, limit=None):
        start = time.perf_counter()
        status, note = "PASS", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed >= limit:
                status, note = "FAIL", f" (limit {limit:g}s)"
                raise AssertionError(f"{label} took {elapsed:.2f}s, limit {limit}s")
        except BaseException:
            status = "FAIL"
            raise
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n{status} {label} [{elapsed:.2f}s]{note}")
    return run


def assert_reports(reports):
    failed = [r.to_dict() for r in reports if not r.passed]
    assert not failed, failed


def test_ac1_golden_tables(criterion, capsys):
    with criterion("AC1 golden height tables", limit=5):
        assert_reports(verify.check_height_tables(7))
        for family, sums in (("ddp-star", [1, 2, 4, 8, 14, 24, 38, 60]),
                             ("ddp", [1, 2, 5, 13, 30, 66, 137, 279])):
            assert main(["table", "--family", family, "--max-n", "7", "--format", "csv"]) == 0
            out = capsys.readouterr().out
            assert [int(r.rsplit(",", 1)[1]) for r in out.strip().splitlines()[1:]] == sums
            golden = verify.golden_tables()[family]
            for n in range(8):
                assert height_counts(Family.parse(family), n) == golden["rows"][n]
                formula = verify.HEIGHT_FORMULAS[Family.parse(family)]
                assert [formula(n, p) for p in range(n + 1)] == golden["rows"][n]


def test_ac2_orders(criterion):
    with criterion("AC2 orders against enumeration, n <= 12", limit=30):
        orders = {Family.ODDP: f.order_oddp, Family.DDP: f.order_ddp,
                  Family.DDP_STAR: f.order_ddpstar}
        for family, order in orders.items():
            for n in range(13):
                slc = FamilySlice(family, n)
                assert order(n) == count(slc) == sum(1 for _ in enumerate_family(slc))


def test_ac3_recurrence(criterion):
    with criterion("AC3 recurrence with seeds (1, 2), 2 <= n <= 30"):
        for n in range(2, 31):
            assert f.order_ddp_recurrence(n, seeds=(1, 2)) == f.order_ddp(n)
        # seeds a_{-1} = 0, a_0 = 1 give a_1 = 4, not |DDP_1| = 2
        stated_a1 = 3 * 1 - 2 * 0 - 2 ** (1 // 2) + 1 + 1
        assert stated_a1 == 4 != f.order_ddp(1)
        assert f.order_ddp_recurrence(2, seeds=(1, stated_a1)) != f.order_ddp(2)


def test_ac4_fix_triangles(criterion):
    with criterion("AC4 fix triangles against enumeration, n <= 10"):
        for n in range(11):
            assert fix_counts(Family.ODDP, n) == [f.f_oddp_fix(n, m) for m in range(n + 1)]
            assert fix_counts(Family.DDP, n) == [f.f_ddp_fix(n, m) for m in range(n + 1)]
        assert f.f_ddp_fix(4, 1) == 6
        assert f.f_ddp_fix(3, 1) == 4


def test_ac5_height_recurrences(criterion):
    with criterion("AC5 height recurrences and boundary values"):
        for n in range(2, 41):
            for p in range(2, n + 1):
                right = f.f_oddp_height(n - 1, p) if p <= n - 1 else 0
                assert f.f_oddp_height(n, p) == f.f_oddp_height(n - 1, p - 1) + right
                assert f.f_ddpstar_height(n, p) == (f.f_ddpstar_height(n - 2, p - 1)
                                                    + f.f_ddpstar_height(n - 2, p))
            assert f.f_ddpstar_height(n, 2) == f.gauss_sum_identity(n)
        for p in range(1, 16):
            assert f.f_ddpstar_height(2 * p + 1, p + 1) == 1
            assert f.f_ddpstar_height(2 * p, p) == 3


def test_ac6_class_counts(criterion):
    with criterion("AC6 union-find D* class counts, n <= 10", limit=60):
        assert_reports(verify.check_class_counts(10, Bounds(partition=10)))
        for family, per_height, total in (
            (Family.ODDP, f.dstar_count_oddp, lambda n: 1 + 2 ** (n - 1) if n else 1),
            (Family.DDP, lambda n, p: f.binom(n - 1, p - 1) - f.merged_B(n, p) if p else 1,
             f.dstar_total_ddp),
        ):
            for n in range(11):
                part = verify.dstar_partition(family, n, bound=10)
                assert [part.per_height.get(p, 0) for p in range(n + 1)] == \
                    [per_height(n, p) for p in range(n + 1)]
                assert part.class_count == total(n)
        assert sum(f.merged_g(m, 3) for m in range(3, 4)) == 1
        assert f.merged_B_closed(7, 3) == 1 == f.merged_B(7, 3)


def test_ac7_final_corollary(criterion):
    with criterion("AC7 D*-total closed form, 3 <= n <= 12"):
        (rep,) = verify.check_final_corollary(12, Bounds(partition=12))
        assert rep.passed, rep.to_dict()
        assert rep.details["coefficient"] == f.DN_FIRST_CASE_COEFFICIENT == 1
        for n in range(3, 13):
            actual = verify.dstar_partition(Family.DDP, n, bound=12).class_count
            assert f.dstar_total_ddp_closed(n, rep.details["coefficient"]) == actual


def test_ac8_oracle_equivalence(criterion):
    with criterion("AC8 fast = naive for every family, n <= 7; closure on DDP_7, ODDP_7"):
        for family in Family:
            for n in range(8):
                slc = FamilySlice(family, n)
                fast = list(enumerate_family(slc))
                assert len(fast) == len(set(fast))
                assert set(fast) == set(naive_enumerate(slc))
        assert_reports(verify.check_closure(7, Bounds(closure=7)))


def _literal_relation(n, a, b):
    ga, gb = gap_vector(a), gap_vector(b)
    return ga == gb or (ga == gb[::-1] and a.height <= sum(ga) <= (n - 1) / 2)


def test_ac9_structure(criterion):
    with criterion("AC9 structural properties and gap characterisation on DDP_8"):
        assert_reports(verify.check_structure(9, Bounds(structure=9)))
        part = verify.dstar_partition(Family.DDP, 8)
        label = {part.elements[i]: k for k, cls in enumerate(part.classes) for i in cls}
        by_height = defaultdict(list)
        for a in part.elements:
            by_height[a.height].append(a)
        for items in by_height.values():
            for a, b in combinations(items, 2):
                assert _literal_relation(8, a, b) == (label[a] == label[b])


def _bfile(capsys, series, max_n):
    assert main(["seq", "--series", series, "--max-n", str(max_n), "--format", "bfile"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("\n")
    return [tuple(map(int, line.split())) for line in out.splitlines()]


def test_ac10_oeis_export(criterion, capsys):
    with criterion("AC10 b-files for A184049 to A184052"):
        top = 10
        expected_triangles = {
            "A184049": [height_counts(Family.ODDP, n) for n in range(top + 1)],
            "A184050": [fix_counts(Family.ODDP, n) for n in range(top + 1)],
            "A184051": [fix_counts(Family.DDP, n) for n in range(top + 1)],
        }
        for series, rows in expected_triangles.items():
            terms = _bfile(capsys, series, top)
            flat = [v for row in rows for v in row]
            assert [i for i, _ in terms] == list(range(len(flat)))
            assert [v for _, v in terms] == flat
        terms = _bfile(capsys, "A184052", top)
        assert terms == [(n, count(FamilySlice(Family.DDP, n))) for n in range(top + 1)]
        assert [v for _, v in terms[:8]] == [1, 2, 5, 13, 30, 66, 137, 279]
