"""Double-saddle machinery at mu = 1/e, in exact rational arithmetic.

About t = -1 the phase expands as

    psi(t) - psi(-1) = sum_{j>=3} (1/j - 1/j!) tau^j,   tau = t + 1,

with the orders 1 and 2 killed by the double saddle. Setting
w = psi(t) - psi(-1) and v = (6w)^{1/3}, the inverse branch is a power
series tau(v) = sum_m a_m v^{m+1} with a_0 = 1, found order by order.
Term-wise integration of e^{-n w} against d tau across the two contour
branches w = e^{-/+ i pi} u turns each a_m into a descending-power
contribution with coefficient B_m = (-1)^m (m+1) a_m; the branch factors
combine into sin(pi(m+1)/3), which kills every m = 2 (mod 3).

The evaluator computes, for x = n e,

    (-1)^(n-1) e^(x-n)/(3 pi) * sum_m (-1)^m B_m Gamma((m+1)/3)
        * sin(pi(m+1)/3) / (n/6)^((m+1)/3).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .errors import OrderError, SeriesConsistencyError
from .numkernel import BigReal, PrecisionContext, wrap_real

DEFAULT_ORDER = 12

# reference values for the first coefficients, used as a build-stopping
# cross-check on the reversion bookkeeping
_BM_CHECK = {
    0: Fraction(1),
    1: Fraction(5, 6),
    3: Fraction(1463, 6480),
    4: Fraction(126827, 1088640),
    6: Fraction(4732223, 167961600),
}


@dataclass(frozen=True)
class ForwardSeries:
    """coeffs[j] multiplies tau^j; entries below j=3 are zero."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class RationalSeries:
    """tau(v) = sum_m coeffs[m] v^{m+1}."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class BmTable:
    B: tuple[Fraction, ...]
    zero_mask: tuple[bool, ...]  # True where m = 2 (mod 3): non-contributing

    @property
    def order(self) -> int:
        return len(self.B) - 1


def forward_series(order: int) -> ForwardSeries:
    """Taylor coefficients of -e^(tau) - log(-1 + tau) about tau = 0.

    The exponential contributes -tau^j/j!, the log contributes +tau^j/j
    (constants and the i pi from the branch drop out of the difference
    psi(t) - psi(-1)).
    """
    if order < 3:
        raise OrderError(f"forward series needs order >= 3, got {order}")
    coeffs = [Fraction(0)]
    fact = 1
    for j in range(1, order + 1):
        fact *= j
        coeffs.append(Fraction(1, j) - Fraction(1, fact))
    if coeffs[1] != 0 or coeffs[2] != 0:
        raise SeriesConsistencyError("orders 1 and 2 survived the double saddle")
    return ForwardSeries(coeffs=tuple(coeffs))


def _poly_mul(a: list[Fraction], b: list[Fraction], trunc: int) -> list[Fraction]:
    out = [Fraction(0)] * (trunc + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > trunc:
            continue
        for j, bj in enumerate(b):
            if i + j > trunc:
                break
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _compose_forward(fwd: ForwardSeries, tau: list[Fraction], trunc: int) -> list[Fraction]:
    """sum_j f_j tau(v)^j truncated at v^trunc (tau has no constant term)."""
    acc = [Fraction(0)] * (trunc + 1)
    power = [Fraction(1)] + [Fraction(0)] * trunc
    for j in range(1, fwd.order + 1):
        power = _poly_mul(power, tau, trunc)
        fj = fwd.coeffs[j]
        if fj != 0:
            for i in range(trunc + 1):
                acc[i] += fj * power[i]
        if all(c == 0 for c in power):
            break
    return acc


def revert_series(fwd: ForwardSeries, order: int) -> RationalSeries:
    """Solve sum_j f_j tau^j = v^3/6 for tau(v) = sum_m a_m v^{m+1}.

    At each new order r the unknown a_r enters the v^{3+r} coefficient
    only through 3 f_3 a_0^2 a_r = a_r/2, so a_r = -2 * (residual).
    """
    if fwd.order < order + 3:
        raise OrderError(
            f"reversion to order {order} needs forward order >= {order + 3}, "
            f"have {fwd.order}")
    a = [Fraction(1)]
    for r in range(1, order + 1):
        trunc = r + 3
        tau = [Fraction(0)] * (trunc + 1)
        for m, am in enumerate(a):
            tau[m + 1] = am
        acc = _compose_forward(fwd, tau, trunc)
        a.append(-2 * acc[3 + r])
    rev = RationalSeries(coeffs=tuple(a))
    _verify_roundtrip(fwd, rev)
    return rev


def _verify_roundtrip(fwd: ForwardSeries, rev: RationalSeries):
    trunc = rev.order + 3
    tau = [Fraction(0)] * (trunc + 1)
    for m, am in enumerate(rev.coeffs):
        tau[m + 1] = am
    acc = _compose_forward(fwd, tau, trunc)
    expect = [Fraction(0)] * (trunc + 1)
    expect[3] = Fraction(1, 6)
    if acc != expect:
        raise SeriesConsistencyError(
            "reverted series does not reproduce w = v^3/6: "
            f"residual coefficients {[str(c) for c in acc if c != 0][:4]}")


def compute_bm(rev: RationalSeries) -> BmTable:
    """B_m = (-1)^m (m+1) a_m, cross-checked against the reference list."""
    B = tuple((-1) ** m * (m + 1) * am for m, am in enumerate(rev.coeffs))
    for m, want in _BM_CHECK.items():
        if m <= rev.order and B[m] != want:
            raise SeriesConsistencyError(
                f"B_{m} = {B[m]} disagrees with the reference value {want}")
    mask = tuple(m % 3 == 2 for m in range(len(B)))
    return BmTable(B=B, zero_mask=mask)


@functools.lru_cache(maxsize=None)
def default_bm(order: int = DEFAULT_ORDER) -> BmTable:
    return compute_bm(revert_series(forward_series(order + 3), order))


def _sin_third(m: int) -> int:
    """sin(pi(m+1)/3) as chi * sqrt(3)/2 with chi in {-1, 0, +1}."""
    r = (m + 1) % 6
    if r in (1, 2):
        return 1
    if r in (4, 5):
        return -1
    return 0


def theorem1_eval(n: int, order: int, ctx: PrecisionContext,
                  bm: BmTable | None = None) -> BigReal:
    """Descending-powers approximation of T^_{n-1}(-x) at exact coalescence x = n e."""
    if n < 2:
        raise OrderError(f"n must be >= 2, got {n}")
    table = default_bm() if bm is None else bm
    if order > table.order:
        raise OrderError(f"order {order} exceeds the B_m table ({table.order})")
    with mp.workdps(ctx.digits + 10):
        x = n * mp.e
        rt3_half = mp.sqrt(3) / 2
        total = mpf(0)
        for m in range(order + 1):
            chi = _sin_third(m)
            if chi == 0:
                continue
            bmv = mpf(table.B[m].numerator) / table.B[m].denominator
            term = ((-1) ** m * bmv * mpmath.gamma(mpf(m + 1) / 3)
                    * chi * rt3_half / (mpf(n) / 6) ** (mpf(m + 1) / 3))
            total += term
        value = (-1) ** (n - 1) * mp.exp(x - n) / (3 * mp.pi) * total
    return wrap_real(value, ctx)
