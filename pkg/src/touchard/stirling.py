"""Exact reference evaluation of the exponential polynomials.

T_n(z) = sum_k S(n,k) z^k with S(n,k) the Stirling numbers of the second
kind, plus the scaled variant T_n(z)/n!. For negative z the sum alternates
and loses a problem-dependent number of leading digits, so evaluation is
adaptive: double the working precision until two successive sums agree,
and report how many digits cancelled.

A second, structurally independent path (the binomial recurrence
T_{k+1}(z) = z * sum_j C(k,j) T_j(z)) is provided purely as a cross-check
oracle for the triangle sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import CapacityError, PrecisionExhaustedError
from .numkernel import BigReal, PrecisionContext, raw, wrap_real

N_MAX_LIMIT = 10000


@dataclass(frozen=True)
class StirlingTriangle:
    n_max: int
    rows: tuple[tuple[int, ...], ...]

    def s(self, n: int, k: int) -> int:
        if not (0 <= n <= self.n_max):
            raise CapacityError(f"row {n} outside triangle (n_max={self.n_max})")
        if not (0 <= k <= n):
            return 0
        return self.rows[n][k]


@dataclass(frozen=True)
class ExactValue:
    value: BigReal
    cancellation_digits: int
    verified: bool


def build_triangle(n_max: int) -> StirlingTriangle:
    if not (0 <= n_max <= N_MAX_LIMIT):
        raise CapacityError(f"n_max must lie in [0, {N_MAX_LIMIT}], got {n_max}")
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n):
            row[k] = k * prev[k] + prev[k - 1]
        row[n] = 1  # S(n,n): only the all-singletons partition
        rows.append(tuple(row))
    return StirlingTriangle(n_max=n_max, rows=tuple(rows))


def _escalate(eval_at, ctx: PrecisionContext, what: str):
    """Double-and-compare until two successive evaluations agree.

    eval_at(dps) must return (value, aux) computed entirely at dps. Agreement
    means relative coincidence to ctx.digits - 10 significant digits, which is
    the accuracy the returned value is then certified for.
    """
    tol_exp = -(ctx.digits - 10)
    d = ctx.digits
    prev, _ = eval_at(d)
    for _ in range(ctx.max_escalations):
        cur, aux = eval_at(2 * d)
        with mp.workdps(2 * d):
            if prev == cur == 0:
                return cur, aux, 2 * d
            scale = max(abs(prev), abs(cur))
            if scale != 0 and abs(prev - cur) <= mpf(10) ** tol_exp * scale:
                return cur, aux, 2 * d
        d *= 2
        prev = cur
    raise PrecisionExhaustedError(
        f"{what}: no agreement to {ctx.digits - 10} digits after "
        f"{ctx.max_escalations} escalations (last working precision {d})",
        last_two=(prev, cur))


def _triangle_sum(n: int, zv: mpf, triangle: StirlingTriangle, dps: int):
    """Returns (sum_k S(n,k) z^k, max term magnitude) at dps."""
    row = triangle.rows[n]
    with mp.workdps(dps):
        total = mpf(0)
        biggest = mpf(0)
        p = mpf(1)
        for k in range(n + 1):
            term = row[k] * p
            total += term
            a = abs(term)
            if a > biggest:
                biggest = a
            p *= zv
        return total, biggest


def _cancellation(total, biggest, dps: int) -> int:
    with mp.workdps(dps):
        if biggest == 0:
            return 0
        if total == 0:
            # every digit of the largest term cancelled
            return int(mp.floor(mp.log10(biggest))) + dps
        c = mp.log10(biggest / abs(total))
        return max(0, int(mp.ceil(c)))


def touchard_exact(n: int, z: BigReal, triangle: StirlingTriangle,
                   ctx: PrecisionContext) -> ExactValue:
    if not (0 <= n <= triangle.n_max):
        raise CapacityError(f"n={n} outside triangle (n_max={triangle.n_max})")
    zv = raw(z)

    def eval_at(dps):
        return _triangle_sum(n, zv, triangle, dps)

    total, biggest, dps = _escalate(eval_at, ctx, f"touchard_exact(n={n})")
    return ExactValue(value=wrap_real(total, ctx),
                      cancellation_digits=_cancellation(total, biggest, dps),
                      verified=True)


def scaled_touchard(n: int, z: BigReal, triangle: StirlingTriangle,
                    ctx: PrecisionContext) -> ExactValue:
    """T_n(z)/n!, dividing by the exact integer factorial last."""
    if not (0 <= n <= triangle.n_max):
        raise CapacityError(f"n={n} outside triangle (n_max={triangle.n_max})")
    zv = raw(z)
    fact = math.factorial(n)

    def eval_at(dps):
        return _triangle_sum(n, zv, triangle, dps)

    total, biggest, dps = _escalate(eval_at, ctx, f"scaled_touchard(n={n})")
    with mp.workdps(dps):
        scaled = total / fact
    return ExactValue(value=wrap_real(scaled, ctx),
                      cancellation_digits=_cancellation(total, biggest, dps),
                      verified=True)


def touchard_recurrence(n: int, z: BigReal, ctx: PrecisionContext) -> BigReal:
    """Independent path via T_{k+1}(z) = z * sum_j C(k,j) T_j(z). O(n^2)."""
    if not (0 <= n <= N_MAX_LIMIT):
        raise CapacityError(f"n must lie in [0, {N_MAX_LIMIT}], got {n}")
    zv = raw(z)

    def eval_at(dps):
        with mp.workdps(dps):
            t = [mpf(1)]
            for k in range(n):
                acc = mpf(0)
                for j in range(k + 1):
                    acc += math.comb(k, j) * t[j]
                t.append(zv * acc)
            return t[n], None

    total, _, _ = _escalate(eval_at, ctx, f"touchard_recurrence(n={n})")
    return wrap_real(total, ctx)


def bell_number(triangle: StirlingTriangle, n: int) -> int:
    """Row sum of the triangle: the number of set partitions of n elements."""
    if not (0 <= n <= triangle.n_max):
        raise CapacityError(f"n={n} outside triangle (n_max={triangle.n_max})")
    return sum(triangle.rows[n])
