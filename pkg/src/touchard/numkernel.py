"""Arbitrary-precision numeric substrate.

Wraps mpmath behind small immutable value types (BigReal, BigComplex) that
remember the PrecisionContext they were produced under. Every public
operation pins its working precision with ``mp.workdps`` so results never
depend on ambient global state; repeated calls with identical inputs are
bit-identical.

The one non-standard primitive is ``log_branched``: the logarithm with
arg z in [0, 2pi), cut along the positive real axis approached from above.
That branch choice is what makes the phase function take the value
-1 - i*pi at t = -1 and keeps conjugate saddle pairs on a single sheet.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, InvalidPrecisionError

DEFAULT_DIGITS = 120
MIN_DIGITS = 30
_GUARD = 10  # internal guard digits absorbed before rounding to ctx.digits


def default_digits() -> int:
    """Default working precision, overridable via TOUCHARD_DIGITS."""
    raw = os.environ.get("TOUCHARD_DIGITS")
    if raw is None or raw.strip() == "":
        return DEFAULT_DIGITS
    try:
        d = int(raw)
    except ValueError:
        raise InvalidPrecisionError(
            f"TOUCHARD_DIGITS must be an integer, got {raw!r}")
    if d < MIN_DIGITS:
        raise InvalidPrecisionError(
            f"TOUCHARD_DIGITS must be >= {MIN_DIGITS}, got {d}")
    return d


@dataclass(frozen=True)
class PrecisionContext:
    digits: int
    max_escalations: int = 8


def mk_context(digits: int | None = None, max_escalations: int = 8) -> PrecisionContext:
    if digits is None:
        digits = default_digits()
    if not isinstance(digits, int) or isinstance(digits, bool) or digits < MIN_DIGITS:
        raise InvalidPrecisionError(
            f"working precision must be an integer >= {MIN_DIGITS}, got {digits!r}")
    if not isinstance(max_escalations, int) or max_escalations < 1:
        raise InvalidPrecisionError(
            f"max_escalations must be a positive integer, got {max_escalations!r}")
    return PrecisionContext(digits=digits, max_escalations=max_escalations)


# ---------------------------------------------------------------------------
# value types

_SER_RE = re.compile(
    r"^(?P<mant>[+-]?\d(?:\.\d+)?)e(?P<exp>[+-]\d+)@(?P<digits>\d+)$")


@dataclass(frozen=True)
class BigReal:
    """An mpmath real plus the context it was rounded under."""

    value: mpf
    ctx: PrecisionContext

    def to_str(self) -> str:
        return _sci(self.value, self.ctx.digits) + f"@{self.ctx.digits}"

    @classmethod
    def parse(cls, text: str) -> "BigReal":
        m = _SER_RE.match(text.strip())
        if m is None:
            raise DomainError(f"not a serialized BigReal: {text!r}")
        d = int(m.group("digits"))
        ctx = mk_context(d)
        with mp.workdps(d + _GUARD):
            v = mpf(m.group("mant") + "e" + m.group("exp"))
        return wrap_real(v, ctx)

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class BigComplex:
    re: BigReal
    im: BigReal

    @property
    def ctx(self) -> PrecisionContext:
        return self.re.ctx

    @property
    def value(self) -> mpc:
        # make_mpc keeps the stored mantissas verbatim; mpc(re, im) would
        # re-round both parts to whatever the ambient precision happens to be
        return mp.make_mpc((self.re.value._mpf_, self.im.value._mpf_))

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.re, wrap_real(-self.im.value, self.im.ctx))

    def abs2(self) -> BigReal:
        # |z|^2 = re^2 + im^2, evaluated at working precision
        ctx = self.ctx
        with mp.workdps(ctx.digits):
            v = self.re.value ** 2 + self.im.value ** 2
        return BigReal(v, ctx)

    def to_str(self) -> str:
        return f"({self.re.to_str()},{self.im.to_str()})"

    @classmethod
    def parse(cls, text: str) -> "BigComplex":
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise DomainError(f"not a serialized BigComplex: {text!r}")
        parts = t[1:-1].split(",")
        if len(parts) != 2:
            raise DomainError(f"not a serialized BigComplex: {text!r}")
        return cls(BigReal.parse(parts[0]), BigReal.parse(parts[1]))

    def __complex__(self) -> complex:
        return complex(float(self.re.value), float(self.im.value))


def _sci(v: mpf, d: int) -> str:
    """Scientific notation with exactly d significant digits."""
    if mp.isnan(v) or mp.isinf(v):
        raise DomainError(f"cannot serialize non-finite value {v}")
    if v == 0:
        frac = "." + "0" * (d - 1) if d > 1 else ""
        return f"0{frac}e+00"
    with mp.workdps(d + _GUARD):
        a = abs(v)
        e10 = int(mp.floor(mp.log10(a)))
        mant = mp.nstr(a / mpf(10) ** e10, d, strip_zeros=False)
        if mant.startswith("10"):  # rounding pushed the mantissa past 9.99..
            e10 += 1
            mant = mp.nstr(a / mpf(10) ** e10, d, strip_zeros=False)
    if "." not in mant:
        mant += "." + "0" * (d - 1) if d > 1 else ""
    sign = "-" if v < 0 else ""
    return f"{sign}{mant}e{e10:+03d}"


# ---------------------------------------------------------------------------
# construction and unwrapping helpers

def wrap_real(v, ctx: PrecisionContext) -> BigReal:
    with mp.workdps(ctx.digits):
        return BigReal(+mpf(v), ctx)


def wrap_complex(v, ctx: PrecisionContext) -> BigComplex:
    with mp.workdps(ctx.digits):
        z = mpc(v)
        return BigComplex(BigReal(+z.real, ctx), BigReal(+z.imag, ctx))


def real_from(x, ctx: PrecisionContext) -> BigReal:
    """Build a BigReal from int, Fraction, str, float or BigReal at ctx precision."""
    if isinstance(x, BigReal):
        return wrap_real(x.value, ctx)
    with mp.workdps(ctx.digits + _GUARD):
        if isinstance(x, Fraction):
            v = mpf(x.numerator) / x.denominator
        else:
            v = mpf(x)
    return wrap_real(v, ctx)


def raw(x):
    """Unwrap to a plain mpf/mpc for internal arithmetic."""
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, BigComplex):
        return x.value
    return x


def const_e(ctx: PrecisionContext) -> BigReal:
    with mp.workdps(ctx.digits):
        return BigReal(+mp.e, ctx)


def const_pi(ctx: PrecisionContext) -> BigReal:
    with mp.workdps(ctx.digits):
        return BigReal(+mp.pi, ctx)


# ---------------------------------------------------------------------------
# elementary functions

def log_branched_raw(z) -> mpc:
    """log with arg z in [0, 2pi); cut along [0, inf) approached from above."""
    z = mpc(z)
    if z == 0:
        raise DomainError("log_branched is undefined at 0")
    w = mp.log(z)
    if mp.im(w) < 0:
        w += 2j * mp.pi
    return w


def _cbrt_raw(z) -> mpc:
    # real arguments keep the real (sign-preserving) cube root; everything
    # else gets the principal branch
    z = mpc(z)
    if z.imag == 0:
        r = mp.cbrt(abs(z.real))
        return mpc(-r) if z.real < 0 else mpc(r)
    return mpc(mp.cbrt(z))


_ELEMENTARY = ("exp", "log_branched", "sqrt", "cbrt", "pow_real", "sin", "cos")


def elementary(fn: str, z, ctx: PrecisionContext,
               exponent: BigReal | None = None) -> BigComplex:
    """Dispatch an elementary function at ctx precision.

    ``z`` may be BigReal or BigComplex; the result is always BigComplex.
    ``exponent`` is consumed only by pow_real.
    """
    if fn not in _ELEMENTARY:
        raise DomainError(f"unknown elementary function {fn!r}")
    with mp.workdps(ctx.digits + _GUARD):
        zv = mpc(raw(z))
        if fn == "exp":
            w = mp.exp(zv)
        elif fn == "log_branched":
            w = log_branched_raw(zv)
        elif fn == "sqrt":
            w = mp.sqrt(zv)
        elif fn == "cbrt":
            w = _cbrt_raw(zv)
        elif fn == "pow_real":
            if exponent is None:
                raise DomainError("pow_real needs an exponent")
            p = raw(exponent)
            if zv == 0 and p < 0:
                raise DomainError("pow_real: zero base with negative exponent")
            w = mp.power(zv, p)
        elif fn == "sin":
            w = mp.sin(zv)
        else:
            w = mp.cos(zv)
    return wrap_complex(w, ctx)


def gamma(x: BigReal, ctx: PrecisionContext) -> BigReal:
    """Gamma for positive real arguments (all the library ever needs)."""
    xv = raw(x)
    if xv <= 0:
        raise DomainError(f"gamma requires a positive argument, got {xv}")
    with mp.workdps(ctx.digits + _GUARD):
        g = mpmath.gamma(xv)
    return wrap_real(g, ctx)
