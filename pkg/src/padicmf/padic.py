"""Capped-precision arithmetic in Z_p and Q_p.

A :class:`PadicNumber` stores ``p**val * unit`` where ``unit`` is a residue
modulo ``p**prec`` prime to ``p``.  ``prec`` is a *relative* precision: the
value is known modulo ``p**(val + prec)``.  Zero is stored with
``val = INF`` and ``prec`` equal to its absolute precision (``INF`` for an
exact zero).

Arithmetic follows the usual capped-relative rules: the result never claims
more digits than the operands justify.  Exact Python numbers (``int``,
``Fraction``) mixed into an expression are treated as known to at least the
precision of the p-adic operand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, NonOrdinaryError

INF = math.inf


def valuation(x, p: int):
    """p-adic valuation of an int or Fraction (``INF`` for zero)."""
    if isinstance(x, PadicNumber):
        return x.val
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _split(x: Fraction, p: int):
    """Return (v, num, den) with x = p^v num/den, num and den prime to p."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num, den


@dataclass(frozen=True, eq=False)
class PadicNumber:
    p: int
    prec: float  # relative precision (absolute precision when zero)
    val: float
    unit: int = 0

    def __post_init__(self):
        if self.val != INF:
            if self.prec < 1:
                raise ValueError("relative precision must be >= 1 for a nonzero value")
            if self.unit % self.p == 0:
                raise ValueError("unit part divisible by p")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, x, p: int, prec: int) -> "PadicNumber":
        """``x`` (int or Fraction) to relative precision ``prec``."""
        if isinstance(x, PadicNumber):
            return x.reduce_relative(prec)
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        v, num, den = _split(x, p)
        mod = p**prec
        return cls(p, prec, v, num * pow(den, -1, mod) % mod)

    @classmethod
    def from_absolute(cls, x, p: int, absprec) -> "PadicNumber":
        """``x`` known modulo ``p**absprec``."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, absprec)
        v = valuation(x, p)
        if v >= absprec:
            return cls.zero(p, absprec)
        return cls.from_rational(x, p, int(absprec - v))

    @classmethod
    def zero(cls, p: int, absprec=INF) -> "PadicNumber":
        return cls(p, absprec, INF, 0)

    # -- basic properties -------------------------------------------------
    @property
    def absprec(self):
        return self.prec if self.val == INF else self.val + self.prec

    def is_zero(self) -> bool:
        return self.val == INF

    def is_unit(self) -> bool:
        return self.val == 0

    def lift(self) -> Fraction:
        """Rational representative p^val * unit."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def residue(self) -> int:
        """Least nonnegative integer congruent to self mod p^absprec."""
        if self.val == INF:
            return 0
        if self.val < 0:
            raise DomainError("value is not p-integral")
        if self.absprec == INF:
            raise DomainError("exact value has no finite residue")
        return (self.unit * self.p**self.val) % self.p ** int(self.absprec)

    def reduce_relative(self, prec) -> "PadicNumber":
        if self.val == INF or prec >= self.prec:
            return self
        return PadicNumber(self.p, prec, self.val, self.unit % self.p**prec)

    def add_bigoh(self, absprec) -> "PadicNumber":
        """Forget all digits at and beyond p^absprec."""
        if absprec >= self.absprec:
            return self
        if self.val >= absprec:
            return PadicNumber.zero(self.p, absprec)
        return self.reduce_relative(int(absprec - self.val))

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise DomainError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            x = Fraction(other)
            if x == 0:
                return PadicNumber.zero(self.p)
            v = valuation(x, self.p)
            target = self.absprec if self.val != INF else self.prec
            if target == INF:
                # both sides exact: keep a generous finite cap
                target = v + 64
            rel = max(int(target - v), 1) if target != INF else 64
            rel = max(rel, int(self.prec) if self.prec != INF else 1)
            return PadicNumber.from_rational(x, self.p, rel)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        if self.val == INF:
            return self
        return PadicNumber(self.p, self.prec, self.val, (-self.unit) % self.p**self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        absprec = min(self.absprec, other.absprec)
        if self.val == INF:
            return other.add_bigoh(absprec)
        if other.val == INF:
            return self.add_bigoh(absprec)
        m = min(self.val, other.val)
        if absprec == INF:
            raise ArithmeticError("cannot add two values of infinite precision")
        rel = int(absprec - m)
        if rel <= 0:
            return PadicNumber.zero(p, absprec)
        mod = p**rel
        x = (self.unit * p ** int(self.val - m) + other.unit * p ** int(other.val - m)) % mod
        if x == 0:
            return PadicNumber.zero(p, absprec)
        w = 0
        while x % p == 0:
            x //= p
            w += 1
        return PadicNumber(p, rel - w, m + w, x % p ** (rel - w))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.val == INF or other.val == INF:
            if self.val == INF and other.val == INF:
                return PadicNumber.zero(p, self.prec + other.prec)
            z, nz = (self, other) if self.val == INF else (other, self)
            return PadicNumber.zero(p, z.prec + nz.val)
        rel = min(self.prec, other.prec)
        if rel == INF:
            raise ArithmeticError("product of two exact values needs a precision cap")
        mod = p**rel
        return PadicNumber(p, rel, self.val + other.val, self.unit * other.unit % mod)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.val == INF:
            raise ZeroDivisionError("p-adic zero (at available precision) is not invertible")
        mod = self.p ** int(self.prec)
        return PadicNumber(self.p, self.prec, -self.val, pow(self.unit, -1, mod))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("use one_unit_power for p-adic exponents")
        if n < 0:
            return self.inverse() ** (-n)
        if self.val == INF:
            return self if n else PadicNumber.from_rational(1, self.p, 64)
        mod = self.p ** int(self.prec)
        return PadicNumber(self.p, self.prec, self.val * n, pow(self.unit, n, mod))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        """Congruence at the joint precision (Sage-style equality)."""
        other = self._coerce(other) if not isinstance(other, PadicNumber) else other
        if other is NotImplemented or not isinstance(other, PadicNumber):
            return NotImplemented
        if other.p != self.p:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def congruent(self, other, absprec) -> bool:
        """True when self - other is known to vanish modulo p^absprec."""
        d = self - other
        return d.val >= absprec if not d.is_zero() else d.absprec >= absprec

    def __repr__(self):
        return f"PadicNumber({self})"

    def __str__(self):
        p = self.p
        if self.val == INF:
            return "0" if self.prec == INF else f"O({p}^{self.prec})"
        bigoh = "" if self.prec == INF else f" + O({p}^{self.absprec})"
        if self.val >= 0:
            return f"{self.unit * p ** self.val}{bigoh}"
        return f"{self.unit}/{p}^{-self.val}{bigoh}"


def as_padic(x, p: int, prec: int) -> PadicNumber:
    return x if isinstance(x, PadicNumber) else PadicNumber.from_rational(x, p, prec)


# ---------------------------------------------------------------------------
# Teichmüller lifts, Hensel lifting, 1-unit powers


def teichmuller(x: int, p: int, N: int) -> PadicNumber:
    """The (p-1)-st root of unity congruent to x mod p, to precision N."""
    if x % p == 0:
        raise DomainError(f"{x} is divisible by {p}: no Teichmüller lift")
    mod = p**N
    y = x % mod
    for _ in range(N):
        y = pow(y, p, mod)
    return PadicNumber(p, N, 0, y)


def hensel_unit_root(a, c, N: int, p: int | None = None) -> PadicNumber:
    """Unit root of X^2 - a X + c, for a unit and v(c) >= 1.

    Newton iteration from the seed ``a mod p``.
    """
    if p is None:
        p = a.p if isinstance(a, PadicNumber) else c.p
    a = as_padic(a, p, N)
    c = as_padic(c, p, N)
    if a.val != 0:
        raise NonOrdinaryError(f"a = {a} is not a {p}-adic unit: no unit root (non-ordinary)")
    if c.val < 1:
        raise DomainError("constant term must be divisible by p")
    A = int(min(N, a.absprec, c.absprec))
    mod = p**A
    ai, ci = a.residue() % mod, (c.residue() % mod if not c.is_zero() else 0)
    x = ai % p
    for _ in range(max(1, math.ceil(math.log2(A))) + 1):
        f = (x * x - ai * x + ci) % mod
        df = (2 * x - ai) % mod
        x = (x - f * pow(df, -1, mod)) % mod
    assert (x * x - ai * x + ci) % mod == 0
    return PadicNumber(p, A, 0, x)


def _integer_representative(s, p: int, absprec: int) -> tuple[int, float]:
    """Integer S with S = s mod p^absprec, plus the precision s is known to."""
    if isinstance(s, PadicNumber):
        if s.val < 0:
            raise DomainError("exponent must be p-integral")
        known = s.absprec
        k = int(min(known, absprec))
        return (s.residue() if known != INF else int(s.lift())) % p**k if k > 0 else 0, known
    s = Fraction(s)
    if s.denominator == 1:
        return int(s), INF
    if s.denominator % p == 0:
        raise DomainError("exponent must be p-integral")
    mod = p**absprec
    return s.numerator * pow(s.denominator, -1, mod) % mod, INF


def one_unit_power(y, s, N: int, p: int | None = None) -> PadicNumber:
    """y**s for a 1-unit y and p-integral s, by the binomial series."""
    if p is None:
        p = y.p if isinstance(y, PadicNumber) else s.p
    y = as_padic(y, p, N)
    if y.val != 0:
        raise DomainError("base must be a 1-unit")
    ym1 = y - 1
    e = ym1.val
    if e < 1:
        raise DomainError(f"{y} is not congruent to 1 mod {p}")
    yabs = y.absprec
    if e == INF:
        # y == 1 to its precision
        return PadicNumber(p, int(min(N, yabs)), 0, 1)
    nterms = int(math.ceil(N / e)) + 1
    guard = nterms  # covers v(j!) for j < nterms
    S, s_known = _integer_representative(s, p, N + guard)
    A = int(min(N, yabs, s_known + e))
    mod = p ** (A + guard)
    z = ym1.residue() % mod
    total, binom, zpow = 0, 1, 1
    for j in range(0, nterms + 1):
        if j:
            binom = binom * (S - j + 1) // j
            zpow = zpow * z % mod
        total = (total + binom * zpow) % mod
    return PadicNumber(p, A, 0, total % p**A)


# ---------------------------------------------------------------------------
# p-adic logarithm


def padic_log(y, N: int, p: int | None = None) -> PadicNumber:
    """log_p of a 1-unit, to absolute precision N."""
    if p is None:
        p = y.p
    y = as_padic(y, p, N + 8)
    z = y - 1
    e = z.val
    if y.val != 0 or e < 1:
        raise DomainError("logarithm only implemented on 1-units")
    if e == INF:
        return PadicNumber.zero(p, N)
    A = int(min(N, z.absprec))
    zl = z.lift()
    total = Fraction(0)
    j = 1
    while True:
        if e * j - valuation(j, p) >= A and e * j - math.log(j, p) - 1 >= A:
            break
        total += (-1) ** (j + 1) * zl**j / j
        j += 1
    return PadicNumber.from_absolute(total, p, A)


# ---------------------------------------------------------------------------
# Weight characters chi_{i,s}: x -> omega(x)^i (x/omega(x))^s


@dataclass(frozen=True)
class WeightCharacter:
    p: int
    i: int
    s: object = 0  # int, Fraction or PadicNumber (p-integral)

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % (self.p - 1))

    @classmethod
    def integer(cls, p: int, k: int) -> "WeightCharacter":
        """The character x -> x^k."""
        return cls(p, k, k)

    @property
    def parity(self) -> int:
        """chi(-1) = (-1)^i."""
        return -1 if self.i % 2 else 1

    def is_even(self) -> bool:
        return self.parity == 1

    def is_trivial(self, absprec=None) -> bool:
        if self.i != 0:
            return False
        s = self.s
        if isinstance(s, PadicNumber):
            return s.is_zero() if absprec is None else s.add_bigoh(absprec).is_zero()
        return Fraction(s) == 0

    def integer_weight(self):
        """k when chi(x) = x^k for an integer k, else None."""
        s = self.s
        if isinstance(s, PadicNumber):
            return None
        s = Fraction(s)
        if s.denominator != 1 or (int(s) - self.i) % (self.p - 1):
            return None
        return int(s)

    def __call__(self, x, N: int) -> PadicNumber:
        return eval_character(self, x, N)


def eval_character(chi: WeightCharacter, x, N: int) -> PadicNumber:
    """chi(x) for a p-adic unit x, modulo p^N."""
    p = chi.p
    if isinstance(x, PadicNumber):
        if x.val != 0:
            raise DomainError("character evaluated at a non-unit")
        xr = x.residue()
        N = int(min(N, x.absprec))
    else:
        if x % p == 0:
            raise DomainError(f"character evaluated at non-unit {x}")
        xr = x
    w = teichmuller(xr % p, p, N)
    x1 = PadicNumber(p, N, 0, xr % p**N) * w.inverse()
    return w**chi.i * one_unit_power(x1, chi.s, N, p)
