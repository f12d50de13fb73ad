"""Airy Ai and Ai' on the real line at arbitrary precision.

Two evaluation routes:

* Maclaurin series. Entire, so valid everywhere, but the partial sums grow
  like exp((2/3)|z|^{3/2}) while the result can be as small as
  exp(-(2/3)z^{3/2}); the working precision is therefore raised by about
  (4/3)|z|^{3/2}/ln 10 digits before summing.
* Large-|z| asymptotic expansions (one for each sign of z). These can only
  reach about (4/3)|z|^{3/2}/ln 10 digits no matter how many terms are
  taken, so they are used only when that budget covers the requested
  accuracy. The crossover point consequently depends on the context's
  precision, not on a fixed |z|.

Closed forms at the origin: Ai(0) = 3^{-2/3}/Gamma(2/3) and
Ai'(0) = -3^{-1/3}/Gamma(1/3).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, SolverError
from .numkernel import BigReal, PrecisionContext, raw, wrap_real

ABS_Z_LIMIT = 10 ** 6
_LN10 = math.log(10)


class AiryMethod(enum.Enum):
    MACLAURIN = "maclaurin"
    ASYMPTOTIC_POS = "asymptotic_pos"
    ASYMPTOTIC_NEG = "asymptotic_neg"


@dataclass(frozen=True)
class AiryValue:
    ai: BigReal
    ai_prime: BigReal
    method: AiryMethod


def _asymptotic_digits(absz: float) -> float:
    """Best relative accuracy (decimal digits) the divergent series can reach."""
    return (4.0 / 3.0) * absz ** 1.5 / _LN10


def switchover(ctx: PrecisionContext) -> float:
    """Smallest |z| at which the asymptotic route can meet ctx's accuracy."""
    return (0.75 * _LN10 * (ctx.digits - 3)) ** (2.0 / 3.0)


def _origin_constants(dps: int):
    with mp.workdps(dps):
        ai0 = mpf(3) ** mpf("-2/3") / mpmath.gamma(mpf(2) / 3)
        aip0 = -(mpf(3) ** mpf("-1/3")) / mpmath.gamma(mpf(1) / 3)
        return ai0, aip0


def _maclaurin(zv: mpf, digits: int):
    """(ai, ai', ai'') by direct summation with cancellation compensation."""
    boost = int(_asymptotic_digits(abs(float(zv)))) + 15
    dps = digits + boost
    with mp.workdps(dps):
        ai0, aip0 = _origin_constants(dps)
        z = mpf(zv)
        if z == 0:
            return ai0, aip0, mpf(0), dps
        z3 = z ** 3
        # u1 = sum a_k z^{3k},    a_k = a_{k-1}/((3k-1)(3k))
        # u2 = sum b_k z^{3k+1},  b_k = b_{k-1}/((3k)(3k+1))
        t1, t2 = mpf(1), z
        u1, u2 = t1, t2
        u1p, u2p = mpf(0), mpf(1)
        u1pp, u2pp = mpf(0), mpf(0)
        floor = mpf(10) ** (-(dps + 5))
        biggest = mpf(1)
        for k in range(1, 100000):
            t1 = t1 * z3 / ((3 * k - 1) * (3 * k))
            t2 = t2 * z3 / ((3 * k) * (3 * k + 1))
            u1 += t1
            u2 += t2
            u1p += t1 * (3 * k) / z
            u2p += t2 * (3 * k + 1) / z
            u1pp += t1 * (3 * k) * (3 * k - 1) / z ** 2
            u2pp += t2 * (3 * k + 1) * (3 * k) / z ** 2
            m = max(abs(t1), abs(t2))
            if m > biggest:
                biggest = m
            if m < floor * biggest:
                break
        else:
            raise SolverError("Airy Maclaurin series did not terminate")
        ai = ai0 * u1 + aip0 * u2
        aip = ai0 * u1p + aip0 * u2p
        aipp = ai0 * u1pp + aip0 * u2pp
        return ai, aip, aipp, dps


def _uk_vk_next(uk: mpf, k: int):
    u = uk * (6 * k - 5) * (6 * k - 1) / (72 * k)
    v = u * (6 * k + 1) / (1 - 6 * k)
    return u, v


def _asymptotic_pos(zv: mpf, digits: int):
    dps = digits + 15
    with mp.workdps(dps):
        z = mpf(zv)
        zeta = mpf(2) / 3 * z ** mpf("1.5")
        su, sv = mpf(1), mpf(1)
        uk, sign, zk = mpf(1), 1, mpf(1)
        prev_mag = mpf("inf")
        for k in range(1, 10000):
            uk, vk = _uk_vk_next(uk, k)
            sign = -sign
            zk *= zeta
            term_u = sign * uk / zk
            if abs(term_u) >= prev_mag:
                break  # divergence floor reached
            prev_mag = abs(term_u)
            su += term_u
            sv += sign * vk / zk
            if abs(term_u) < mpf(10) ** (-(digits + 5)):
                break
        front = mp.exp(-zeta) / (2 * mp.sqrt(mp.pi) * z ** mpf("0.25"))
        ai = front * su
        aip = -(z ** mpf("0.25")) * mp.exp(-zeta) / (2 * mp.sqrt(mp.pi)) * sv
        return ai, aip, dps


def _asymptotic_neg(zv: mpf, digits: int):
    x = abs(float(zv))
    # the phase zeta is huge for huge |z|; pad so its reduction mod 2 pi
    # still leaves `digits` good digits
    pad = int(1.5 * math.log10(x)) + 5 if x > 1 else 5
    dps = digits + 15 + pad
    with mp.workdps(dps):
        xz = -mpf(zv)
        zeta = mpf(2) / 3 * xz ** mpf("1.5")
        # even/odd splits of the u and v series
        pu, qu = mpf(1), mpf(0)
        pv, qv = mpf(1), mpf(0)
        uk, sign_pair, zk = mpf(1), 1, mpf(1)
        prev_mag = mpf("inf")
        for k in range(1, 10000):
            uk, vk = _uk_vk_next(uk, k)
            zk *= zeta
            term = uk / zk
            if term >= prev_mag:
                break
            prev_mag = term
            # (-1)^k applies to the index inside each split series
            if k % 2 == 0:
                s = 1 if (k // 2) % 2 == 0 else -1
                pu += s * term
                pv += s * vk / zk
            else:
                s = 1 if (k // 2) % 2 == 0 else -1
                qu += s * term
                qv += s * vk / zk
            if term < mpf(10) ** (-(digits + 5)):
                break
        ph = zeta - mp.pi / 4
        c, s = mp.cos(ph), mp.sin(ph)
        ai = (c * pu + s * qu) / (mp.sqrt(mp.pi) * xz ** mpf("0.25"))
        aip = (xz ** mpf("0.25")) / mp.sqrt(mp.pi) * (s * pv - c * qv)
        return ai, aip, dps


def airy(z: BigReal, ctx: PrecisionContext,
         switchover_abs: float | None = None) -> AiryValue:
    """Ai(z) and Ai'(z) for real z, |z| <= 1e6."""
    zv = raw(z)
    absz = abs(float(zv))
    if absz > ABS_Z_LIMIT:
        raise DomainError(f"|z| = {absz} exceeds the supported range {ABS_Z_LIMIT}")
    sw = switchover(ctx) if switchover_abs is None else float(switchover_abs)
    if absz <= sw:
        ai, aip, _, _ = _maclaurin(zv, ctx.digits)
        method = AiryMethod.MACLAURIN
    elif zv > 0:
        ai, aip, _ = _asymptotic_pos(zv, ctx.digits)
        method = AiryMethod.ASYMPTOTIC_POS
    else:
        ai, aip, _ = _asymptotic_neg(zv, ctx.digits)
        method = AiryMethod.ASYMPTOTIC_NEG
    return AiryValue(ai=wrap_real(ai, ctx), ai_prime=wrap_real(aip, ctx),
                     method=method)


def second_derivative_series(z: BigReal, ctx: PrecisionContext) -> BigReal:
    """Ai''(z) by term-wise differentiation of the Maclaurin series.

    Exists so the w'' = z w residual can be checked without finite
    differences; not a general evaluation route.
    """
    zv = raw(z)
    _, _, aipp, _ = _maclaurin(zv, ctx.digits)
    return wrap_real(aipp, ctx)
