"""Exact triangle, polynomial evaluation, cancellation accounting."""
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from touchard import (CapacityError, PrecisionExhaustedError, bell_number,
                      build_triangle, mk_context, real_from, touchard_exact,
                      touchard_recurrence, scaled_touchard, wrap_real)
from touchard.numkernel import raw


def set_partitions(items):
    """All partitions of a list, brute force."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


def stirling_inclusion_exclusion(n, k):
    acc = Fraction(0)
    for j in range(k + 1):
        acc += Fraction((-1) ** j * math.comb(k, j) * (k - j) ** n)
    return acc / math.factorial(k)


class TestTriangle:
    def test_brute_force_partition_counts(self):
        tri = build_triangle(8)
        for n in range(1, 9):
            counts = {}
            for part in set_partitions(list(range(n))):
                counts[len(part)] = counts.get(len(part), 0) + 1
            for k in range(1, n + 1):
                assert tri.s(n, k) == counts.get(k, 0)

    @pytest.mark.parametrize("n,k", [(10, 3), (20, 11), (30, 5), (25, 25)])
    def test_inclusion_exclusion(self, n, k):
        tri = build_triangle(30)
        want = stirling_inclusion_exclusion(n, k)
        assert want.denominator == 1
        assert tri.s(n, k) == want.numerator

    def test_known_values(self):
        tri = build_triangle(6)
        assert tri.s(4, 2) == 7
        assert tri.s(5, 3) == 25
        assert tri.s(0, 0) == 1
        assert tri.s(3, 0) == 0

    def test_out_of_range_k_is_zero(self):
        tri = build_triangle(4)
        assert tri.s(3, 5) == 0
        assert tri.s(3, -1) == 0

    def test_row_capacity(self):
        tri = build_triangle(4)
        with pytest.raises(CapacityError):
            tri.s(5, 1)
        with pytest.raises(CapacityError):
            build_triangle(10001)
        with pytest.raises(CapacityError):
            build_triangle(-1)

    def test_bell_numbers_vs_aitken_oracle(self):
        # independent oracle: the Bell (Aitken) triangle, pure integers
        tri = build_triangle(60)
        row = [1]
        bells = [1]
        for _ in range(60):
            nxt = [row[-1]]
            for v in row:
                nxt.append(nxt[-1] + v)
            row = nxt
            bells.append(row[0])
        for n in range(61):
            assert bell_number(tri, n) == bells[n]

    def test_bell_examples(self):
        tri = build_triangle(5)
        assert bell_number(tri, 0) == 1
        assert bell_number(tri, 5) == 52


class TestEvaluation:
    def test_t2_at_minus_one_is_exact_zero(self, ctx60):
        tri = build_triangle(2)
        got = touchard_exact(2, real_from(-1, ctx60), tri, ctx60)
        assert raw(got.value) == 0
        assert got.verified
        # total cancellation: the sentinel counts every digit of the big term
        assert got.cancellation_digits >= ctx60.digits

    def test_row_sum_is_bell(self, ctx60):
        tri = build_triangle(40)
        got = touchard_exact(40, real_from(1, ctx60), tri, ctx60)
        assert raw(got.value) == bell_number(tri, 40)

    def test_table_point_cancellation(self, triangle120, ctx120):
        with mp.workdps(140):
            z = wrap_real(-121 * mp.e, ctx120)
        got = scaled_touchard(120, z, triangle120, ctx120)
        assert got.verified
        assert 10 < got.cancellation_digits < 60
        # sign (-1)^(n-1) with n-1 = 120
        assert raw(got.value) > 0 if 120 % 2 == 0 else raw(got.value) < 0

    def test_scaled_matches_unscaled(self, ctx60):
        tri = build_triangle(12)
        z = real_from("-3.5", ctx60)
        a = touchard_exact(12, z, tri, ctx60)
        b = scaled_touchard(12, z, tri, ctx60)
        with mp.workdps(80):
            assert abs(raw(a.value) / math.factorial(12) - raw(b.value)) \
                <= mpf(10) ** (-(ctx60.digits - 5)) * abs(raw(b.value))

    @given(st.integers(min_value=0, max_value=35),
           st.floats(min_value=-30, max_value=30))
    def test_recurrence_agrees_with_triangle(self, n, x):
        ctx = mk_context(40)
        tri = build_triangle(35)
        z = real_from(x, ctx)
        a = touchard_exact(n, z, tri, ctx)
        b = touchard_recurrence(n, z, ctx)
        with mp.workdps(60):
            scale = max(abs(raw(a.value)), abs(raw(b.value)), mpf(1))
            assert abs(raw(a.value) - raw(b.value)) <= mpf(10) ** (-(40 - 10)) * scale

    def test_recurrence_example(self, ctx60):
        got = touchard_recurrence(5, real_from(1, ctx60), ctx60)
        assert raw(got) == 52

    def test_capacity_checks(self, ctx60):
        tri = build_triangle(5)
        with pytest.raises(CapacityError):
            touchard_exact(6, real_from(1, ctx60), tri, ctx60)
        with pytest.raises(CapacityError):
            touchard_recurrence(10001, real_from(1, ctx60), ctx60)

    def test_precision_exhaustion_raises(self, triangle120):
        # ~21 digits cancel at the n=121 table point; with a 30-digit context
        # and a single allowed escalation the double-and-compare gate cannot
        # reach agreement and must say so rather than return garbage
        ctx = mk_context(30, max_escalations=1)
        with mp.workdps(50):
            z = wrap_real(-121 * mp.e, ctx)
        with pytest.raises(PrecisionExhaustedError) as exc:
            scaled_touchard(120, z, triangle120, ctx)
        assert exc.value.exit_code == 3
        assert exc.value.last_two is not None
