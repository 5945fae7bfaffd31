"""Rigorous scalars: exact rationals and rational-endpoint enclosures.

Every number in the system is a `Scalar`: a closed interval [lo, hi] with
exact rational endpoints.  Exact mode is the degenerate case lo == hi.
All arithmetic on endpoints is exact, so enclosures only ever inherit
width from irrational constants evaluated at finite precision; soundness
is preserved by construction.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath
from gmpy2 import mpq
from mpmath import iv

from .errors import AmbiguousEnclosure, DomainError, PrecisionExhausted

Q = mpq
Rat = Union[mpq, int, Fraction]

HALF = Q(1, 2)


def qfloor(q) -> int:
    return int(math.floor(q))


def qceil(q) -> int:
    return int(math.ceil(q))


def parse_rational(text: str) -> mpq:
    """Parse "0.05", "-3", "1/20", or "2.5e-3" as an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Q(Fraction(num.strip()), 1) / Q(Fraction(den.strip()), 1)
    f = Fraction(text)
    return Q(f.numerator, f.denominator)


def _mpf_tuple_to_q(t) -> mpq:
    sign, man, exp, _bc = t
    man = int(man)
    if man == 0:
        return Q(0)
    v = Q(man) * (Q(2) ** exp if exp >= 0 else Q(1, 2 ** (-exp)))
    return -v if sign else v


class Scalar:
    """Closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Q(lo)
        hi = lo if hi is None else Q(hi)
        if hi < lo:
            raise ValueError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi

    # -- constructors ----------------------------------------------------

    @staticmethod
    def exact(q) -> "Scalar":
        return Scalar(Q(q))

    @staticmethod
    def from_iv(x) -> "Scalar":
        """Convert an mpmath iv number to a Scalar, keeping exact endpoints."""
        a, b = x._mpi_
        return Scalar(_mpf_tuple_to_q(a), _mpf_tuple_to_q(b))

    # -- predicates ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> mpq:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> mpq:
        return (self.hi - self.lo) / 2

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        return Scalar(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.hi, -self.lo)

    def __sub__(self, other) -> "Scalar":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return Scalar(self.lo * other.lo)
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return Scalar(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Scalar":
        if self.contains_zero():
            raise DomainError("reciprocal of interval containing zero")
        return Scalar(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Scalar":
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "Scalar":
        return _coerce(other) * self.reciprocal()

    def __abs__(self) -> "Scalar":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Scalar(Q(0), max(-self.lo, self.hi))

    # -- proven comparisons ---------------------------------------------
    # Each returns True/False when the relation is proven/refuted by the
    # enclosures and None when the intervals straddle each other.

    def lt(self, other) -> Optional[bool]:
        other = _coerce(other)
        if self.hi < other.lo:
            return True
        if self.lo >= other.hi:
            return False
        return None

    def le(self, other) -> Optional[bool]:
        other = _coerce(other)
        if self.hi <= other.lo:
            return True
        if self.lo > other.hi:
            return False
        return None

    def gt(self, other) -> Optional[bool]:
        return _coerce(other).lt(self)

    def ge(self, other) -> Optional[bool]:
        return _coerce(other).le(self)

    def same_exact(self, other) -> bool:
        other = _coerce(other)
        return self.is_exact and other.is_exact and self.lo == other.lo

    def sign(self) -> Optional[int]:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    # -- misc ------------------------------------------------------------

    def __repr__(self):
        if self.is_exact:
            return f"Scalar({self.lo})"
        return f"Scalar[{self.lo}, {self.hi}]"

    def __float__(self):
        return float(self.mid)

    def to_json(self):
        if self.is_exact:
            return str(self.lo)
        return {"lo": str(self.lo), "hi": str(self.hi)}


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(Q(x))


# -- distance to the nearest integer ------------------------------------


def _dist_point(q) -> mpq:
    f = q - qfloor(q)
    return min(f, 1 - f)


def dist_to_nearest_int(x: Scalar) -> Scalar:
    """Distance from x to the nearest integer, as a value in [0, 1/2].

    For an enclosure the result encloses the range of the distance
    function over [lo, hi]; it folds exactly at integers and at
    half-integers, so a wide input may return all of [0, 1/2].
    """
    lo, hi = x.lo, x.hi
    if hi - lo >= 1:
        return Scalar(Q(0), HALF)
    dlo, dhi = _dist_point(lo), _dist_point(hi)
    # minimum is 0 iff [lo, hi] contains an integer
    dmin = Q(0) if qfloor(hi) >= qceil(lo) else min(dlo, dhi)
    # maximum is 1/2 iff [lo, hi] contains a half-integer
    dmax = HALF if qfloor(hi - HALF) >= qceil(lo - HALF) else max(dlo, dhi)
    return Scalar(dmin, dmax)


def nearest_int(x: Scalar) -> int:
    """Nearest integer to x; half-integer ties round to even.

    Raises AmbiguousEnclosure when the enclosure is too wide to pin the
    answer down.
    """
    if x.is_exact:
        q = x.lo
        fl = qfloor(q)
        f = q - fl
        if f < HALF:
            return fl
        if f > HALF:
            return fl + 1
        return fl if fl % 2 == 0 else fl + 1
    n = _round_half_even(x.mid)
    if x.lo > n - HALF and x.hi < n + HALF:
        return n
    raise AmbiguousEnclosure(f"cannot determine nearest integer of {x!r}")


def _round_half_even(q) -> int:
    fl = qfloor(q)
    f = q - fl
    if f < HALF:
        return fl
    if f > HALF:
        return fl + 1
    return fl if fl % 2 == 0 else fl + 1


def floor_scalar(x: Scalar) -> int:
    a, b = qfloor(x.lo), qfloor(x.hi)
    if a != b:
        raise AmbiguousEnclosure(f"floor undetermined for {x!r}")
    return a


def ceil_scalar(x: Scalar) -> int:
    a, b = qceil(x.lo), qceil(x.hi)
    if a != b:
        raise AmbiguousEnclosure(f"ceil undetermined for {x!r}")
    return a


# -- irrational presets --------------------------------------------------

_PRESET_RE = re.compile(r"^(sqrt|log)\((\d+)\)$")


class Real:
    """A real-number specification: an exact rational or a named constant.

    Presets evaluate to enclosures at a requested bit precision, so the
    same specification can be re-evaluated more tightly when a verdict
    comes back undecided.
    """

    __slots__ = ("kind", "arg", "token")

    def __init__(self, kind: str, arg=None, token: str = ""):
        self.kind = kind
        self.arg = arg
        self.token = token

    @staticmethod
    def rational(q) -> "Real":
        return Real("rational", Q(q))

    @staticmethod
    def parse(text: str) -> "Real":
        text = text.strip()
        m = _PRESET_RE.match(text)
        if m:
            fn, k = m.group(1), int(m.group(2))
            if k < 2:
                raise DomainError(f"{fn}({k}): argument must be >= 2")
            if fn == "sqrt":
                r = math.isqrt(k)
                if r * r == k:
                    return Real("rational", Q(r), text)
                return Real("sqrt", k, text)
            return Real("log", k, text)
        if text == "pi":
            return Real("pi", None, text)
        if text == "e":
            return Real("e", None, text)
        if text == "phi":
            return Real("phi", None, text)
        return Real("rational", parse_rational(text), text)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def scalar(self, bits: int = 128) -> Scalar:
        if self.kind == "rational":
            return Scalar(self.arg)
        old = iv.prec
        try:
            iv.prec = bits
            if self.kind == "sqrt":
                v = iv.sqrt(self.arg)
            elif self.kind == "log":
                v = iv.log(self.arg)
            elif self.kind == "pi":
                v = +iv.pi
            elif self.kind == "e":
                v = iv.exp(1)
            elif self.kind == "phi":
                v = (1 + iv.sqrt(5)) / 2
            else:
                raise DomainError(f"unknown preset kind {self.kind!r}")
        finally:
            iv.prec = old
        return Scalar.from_iv(v)

    def __repr__(self):
        return f"Real({self.serialize()!r})"

    def serialize(self) -> str:
        if self.kind == "rational":
            return str(self.arg)
        if self.token:
            return self.token
        return f"{self.kind}({self.arg})" if self.arg is not None else self.kind

    def __eq__(self, other):
        return (isinstance(other, Real)
                and self.kind == other.kind and self.arg == other.arg)

    def __hash__(self):
        return hash((self.kind, self.arg))


def log_enclosure(q, bits: int = 128) -> Scalar:
    """Rigorous enclosure of ln(q) for a positive rational q."""
    q = Q(q)
    if q <= 0:
        raise DomainError("log of non-positive value")
    old = iv.prec
    try:
        iv.prec = bits
        v = iv.log(iv.mpf(int(q.numerator)) / iv.mpf(int(q.denominator)))
    finally:
        iv.prec = old
    return Scalar.from_iv(v)


def exp_enclosure(q, bits: int = 128) -> Scalar:
    """Rigorous enclosure of exp(q) for a rational q."""
    q = Q(q)
    old = iv.prec
    try:
        iv.prec = bits
        v = iv.exp(iv.mpf(int(q.numerator)) / iv.mpf(int(q.denominator)))
    finally:
        iv.prec = old
    return Scalar.from_iv(v)


DEFAULT_BITS = 128
MAX_BITS = 4096


def with_escalation(fn: Callable[[int], object], bits: int = DEFAULT_BITS,
                    max_bits: int = MAX_BITS):
    """Run fn(bits), doubling precision on undecided verdicts up to a cap.

    fn should raise PrecisionExhausted (or AmbiguousEnclosure) when the
    current precision cannot decide; the last exception propagates once
    the cap is reached.
    """
    while True:
        try:
            return fn(bits)
        except (PrecisionExhausted, AmbiguousEnclosure):
            if bits >= max_bits:
                raise
            bits = min(bits * 2, max_bits)
