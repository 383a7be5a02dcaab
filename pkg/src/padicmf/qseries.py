"""Truncated q-expansions and the operators T(l), U, V, Frob.

A :class:`QExpansion` is a tuple of coefficients ``a_0 .. a_M`` living in a
coefficient ring.  Three rings are provided:

* ``QQ``: exact ``Fraction`` coefficients;
* ``Qp(p, N)``: :class:`PadicNumber` coefficients at relative precision N;
* ``LambdaRing`` (in :mod:`padicmf.lambda_adic`): truncated elements of Z_p[[T]].

Operators record the order up to which their output is reliable by simply
returning a shorter expansion: U turns order M into floor(M/p), T(l) into
floor(M/l).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .padic import INF, PadicNumber, WeightCharacter, eval_character, valuation


# ---------------------------------------------------------------------------
# coefficient rings


class Ring:
    """Minimal interface shared by the coefficient rings."""

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def valuation(self, x, p: int | None = None):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return self.valuation(x) == INF

    def equal(self, x, y) -> bool:
        return self.is_zero(x - y)


@dataclass(frozen=True)
class RationalField(Ring):
    def coerce(self, x):
        if isinstance(x, PadicNumber):
            raise DomainError("cannot coerce a p-adic number into Q")
        return Fraction(x)

    def valuation(self, x, p: int | None = None):
        if p is None:
            return 0 if x != 0 else INF
        return valuation(x, p)

    def equal(self, x, y) -> bool:
        return x == y

    def __str__(self):
        return "QQ"


QQ = RationalField()


@dataclass(frozen=True)
class PadicField(Ring):
    p: int
    N: int

    def coerce(self, x):
        if isinstance(x, PadicNumber):
            return x
        x = Fraction(x)
        if x == 0:
            return PadicNumber.zero(self.p)
        return PadicNumber.from_rational(x, self.p, self.N)

    def zero(self):
        return PadicNumber.zero(self.p)

    def valuation(self, x, p: int | None = None):
        return x.val

    def __str__(self):
        return f"Qp({self.p}, {self.N})"


def Qp(p: int, N: int) -> PadicField:
    return PadicField(p, N)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QExpansion:
    coeffs: tuple
    ring: Ring = QQ
    weight: object = None  # int k or WeightCharacter
    nebentypus: object = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    # -- construction -----------------------------------------------------
    @classmethod
    def from_list(cls, coeffs, ring: Ring = QQ, weight=None, nebentypus=None) -> "QExpansion":
        return cls(tuple(ring.coerce(c) for c in coeffs), ring, weight, nebentypus)

    @classmethod
    def zero(cls, M: int, ring: Ring = QQ, weight=None) -> "QExpansion":
        z = ring.zero()
        return cls((z,) * (M + 1), ring, weight)

    @classmethod
    def monomial(cls, n: int, M: int, ring: Ring = QQ, c=1) -> "QExpansion":
        z = ring.zero()
        return cls(tuple(ring.coerce(c) if i == n else z for i in range(M + 1)), ring)

    # -- basic access -----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, M: int) -> "QExpansion":
        if M > self.order:
            raise DomainError(f"cannot extend order {self.order} to {M}")
        return replace(self, coeffs=self.coeffs[: M + 1])

    def with_weight(self, weight, nebentypus=None) -> "QExpansion":
        return replace(self, weight=weight, nebentypus=nebentypus)

    def change_ring(self, ring: Ring) -> "QExpansion":
        return replace(self, coeffs=tuple(ring.coerce(c) for c in self.coeffs), ring=ring)

    def to_padic(self, p: int, N: int) -> "QExpansion":
        return self.change_ring(Qp(p, N))

    # -- arithmetic -------------------------------------------------------
    def _other(self, g):
        if isinstance(g, QExpansion):
            return g
        return QExpansion.monomial(0, self.order, self.ring, g)

    def __add__(self, g):
        g = self._other(g)
        M = min(self.order, g.order)
        return QExpansion(
            tuple(self.coeffs[i] + g.coeffs[i] for i in range(M + 1)),
            self.ring,
            self.weight if self.weight == g.weight else None,
        )

    __radd__ = __add__

    def __neg__(self):
        return replace(self, coeffs=tuple(-c for c in self.coeffs))

    def __sub__(self, g):
        return self + (-self._other(g))

    def __rsub__(self, g):
        return self._other(g) - self

    def scale(self, c) -> "QExpansion":
        c = self.ring.coerce(c) if not isinstance(c, PadicNumber) else c
        return replace(self, coeffs=tuple(c * a for a in self.coeffs))

    def __mul__(self, g):
        if not isinstance(g, QExpansion):
            return self.scale(g)
        M = min(self.order, g.order)
        a, b = self.coeffs, g.coeffs
        zero = self.ring.zero()
        nza = [i for i in range(M + 1) if not self.ring.is_zero(a[i])]
        nzb = [j for j in range(M + 1) if not g.ring.is_zero(b[j])]
        out = [zero] * (M + 1)
        for i in nza:
            ai = a[i]
            for j in nzb:
                if i + j > M:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return QExpansion(tuple(out), self.ring)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int):
        out = QExpansion.monomial(0, self.order, self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def equals(self, g: "QExpansion", M: int | None = None) -> bool:
        """Coefficientwise equality (congruence for p-adic rings) up to q^M."""
        if M is None:
            M = min(self.order, g.order)
        if M > min(self.order, g.order):
            raise DomainError("comparison beyond available order")
        return all(self.ring.equal(self.coeffs[i], g.coeffs[i]) for i in range(M + 1))

    def __eq__(self, g):
        if not isinstance(g, QExpansion):
            return NotImplemented
        return self.order == g.order and self.equals(g)

    __hash__ = None

    def valuation(self, p: int | None = None):
        """min_n v_p(a_n)."""
        return min((self.ring.valuation(c, p) for c in self.coeffs), default=INF)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"QExpansion([{terms}{more}], order={self.order}, ring={self.ring})"


def _prime_of(f: QExpansion, p: int | None) -> int:
    p = p or getattr(f.ring, "p", 0)
    if not p:
        raise DomainError("a prime p must be given for rational q-expansions")
    return p


# ---------------------------------------------------------------------------
# norm


def norm_p(f: QExpansion, p: int | None = None) -> Fraction:
    """sup_n |a_n|_p, as an exact rational (0 for the zero series)."""
    p = _prime_of(f, p)
    v = f.valuation(p)
    if v == INF:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


# ---------------------------------------------------------------------------
# Hecke operators


def _character_of(f: QExpansion, chi):
    chi = chi if chi is not None else f.weight
    if chi is None:
        raise DomainError("Hecke operator needs a weight tag or an explicit character")
    return chi


def _chi_over_d(chi, d: int, ring: Ring):
    """chi(d)/d as a ring element."""
    if isinstance(ring, RationalField):
        k = chi if isinstance(chi, int) else chi.integer_weight()
        if k is None:
            raise DomainError("non-integral weight character over Q")
        return Fraction(d) ** (k - 1)
    if hasattr(ring, "chi_over_d"):
        return ring.chi_over_d(chi, d)
    p, N = ring.p, ring.N
    if isinstance(chi, int):
        chi = WeightCharacter.integer(p, chi)
    return eval_character(chi, d, N) * PadicNumber.from_rational(Fraction(1, d), p, N)


def hecke_T(f: QExpansion, l: int, chi=None) -> QExpansion:
    """T(l) for a prime l != p, p-adic normalization chi(l)/l."""
    p = getattr(f.ring, "p", 0)
    if p and l % p == 0:
        raise DomainError("T(p) is the operator U; use op_U")
    return hecke_T_n(f, l, chi)


def hecke_T_n(f: QExpansion, n: int, chi=None) -> QExpansion:
    """T(n): a_m -> sum over d | (m, n), (d, p) = 1 of chi(d)/d a_{mn/d^2}.

    For n a prime l != p this is T(l); for n = p it is U.
    """
    chi = _character_of(f, chi)
    p = getattr(f.ring, "p", 0) or (chi.p if isinstance(chi, WeightCharacter) else 0)
    M = f.order // n
    divs = [d for d in range(1, n + 1) if n % d == 0 and (p == 0 or d % p)]
    factors = {d: _chi_over_d(chi, d, f.ring) for d in divs}
    out = []
    for m in range(M + 1):
        s = f.ring.zero()
        for d in divs:
            if m % d == 0:
                s = s + factors[d] * f.coeffs[m * n // (d * d)]
        out.append(s)
    return QExpansion(tuple(out), f.ring, f.weight, f.nebentypus)


def hecke_T_classical(f: QExpansion, l: int, k: int | None = None) -> QExpansion:
    """Classical T(l) in weight k: a_{ln} + l^{k-1} a_{n/l}."""
    if k is None:
        k = f.weight if isinstance(f.weight, int) else None
    if k is None:
        raise DomainError("classical Hecke operator needs an integer weight")
    M = f.order // l
    c = f.ring.coerce(Fraction(l) ** (k - 1))
    out = []
    for n in range(M + 1):
        s = f.coeffs[l * n]
        if n % l == 0:
            s = s + c * f.coeffs[n // l]
        out.append(s)
    return QExpansion(tuple(out), f.ring, f.weight, f.nebentypus)


# ---------------------------------------------------------------------------
# U, V, Frob


def op_U(f: QExpansion, p: int | None = None) -> QExpansion:
    p = _prime_of(f, p)
    M = f.order // p
    return replace(f, coeffs=tuple(f.coeffs[p * n] for n in range(M + 1)))


def op_V(f: QExpansion, p: int | None = None, cap: int | None = None) -> QExpansion:
    p = _prime_of(f, p)
    M = p * f.order if cap is None else min(p * f.order, cap)
    z = f.ring.zero()
    out = [z] * (M + 1)
    for n in range(M // p + 1):
        out[p * n] = f.coeffs[n]
    return replace(f, coeffs=tuple(out))


def frob(f: QExpansion, p: int | None = None, cap: int | None = None) -> QExpansion:
    """q -> q^p.  The weight tag is dropped."""
    return replace(op_V(f, p, cap), weight=None, nebentypus=None)


def split_frob_kernel(f: QExpansion, p: int | None = None):
    """f = g + h with g = frob(f|U) and h|U = 0."""
    p = _prime_of(f, p)
    g = frob(op_U(f, p), p, cap=f.order)
    h = replace(f, weight=None) - g
    return g, h


def kernel_eigenvector(f0: QExpansion, lam, p: int | None = None) -> QExpansion:
    """f_lam = sum_i lam^i frob^i(f0), a U-eigenvector of eigenvalue lam."""
    p = _prime_of(f0, p)
    ring = f0.ring
    if not op_U(f0, p).is_zero():
        raise DomainError("f0 is not killed by U")
    lam = ring.coerce(lam)
    v = ring.valuation(lam, p)
    if v < 1:
        raise DomainError("lambda must have positive valuation for the series to converge")
    out = f0
    term = f0
    power = ring.one()
    M = f0.order
    while True:
        term = frob(term, p, cap=M)
        power = power * lam
        if term.is_zero() or ring.is_zero(power):
            break
        out = out + term.scale(power)
    return replace(out, weight=None)


# ---------------------------------------------------------------------------
# text format


def _weight_str(w) -> str:
    if w is None:
        return ""
    if isinstance(w, int):
        return f" {w}"
    s = w.s
    if isinstance(s, PadicNumber):
        s = s.residue()
    return f" chi:{w.i}:{Fraction(s)}"


def _parse_weight(tok: str | None, p: int):
    if tok is None:
        return None
    if tok.startswith("chi:"):
        _, i, s = tok.split(":")
        return WeightCharacter(p, int(i), Fraction(s))
    return int(tok)


def to_text(f: QExpansion) -> str:
    """Header ``p N M [weight]`` followed by M+1 coefficient lines.

    Rational expansions use ``p = N = 0`` and ``num/den`` coefficients.
    p-adic expansions are written modulo p^N with N the smallest absolute
    precision present; coefficients of negative valuation as ``r/p^e``.
    """
    if isinstance(f.ring, RationalField):
        head = f"0 0 {f.order}{_weight_str(f.weight)}"
        return "\n".join([head] + [str(Fraction(c)) for c in f.coeffs]) + "\n"
    p = f.ring.p
    N = min(c.absprec for c in f.coeffs)
    if N == INF:
        N = f.ring.N
    N = int(N)
    lines = [f"{p} {N} {f.order}{_weight_str(f.weight)}"]
    for c in f.coeffs:
        if c.is_zero():
            lines.append("0")
        elif c.val >= 0:
            lines.append(str(c.add_bigoh(N).residue()) if c.val < N else "0")
        else:
            e = int(-c.val)
            lines.append(f"{c.unit % p ** (N + e)}/{p}^{e}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> QExpansion:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    p, N, M = int(head[0]), int(head[1]), int(head[2])
    weight = _parse_weight(head[3] if len(head) > 3 else None, p)
    body = lines[1:]
    if len(body) != M + 1:
        raise ValueError(f"expected {M + 1} coefficient lines, found {len(body)}")
    if p == 0:
        return QExpansion.from_list([Fraction(x) for x in body], QQ, weight)
    ring = Qp(p, N)
    coeffs = []
    for x in body:
        m = re.fullmatch(r"(-?\d+)/(\d+)\^(\d+)", x)
        if m:
            e = int(m.group(3))
            coeffs.append(PadicNumber.from_absolute(Fraction(int(m.group(1)), p**e), p, N))
        else:
            coeffs.append(PadicNumber.from_absolute(int(x), p, N))
    return QExpansion(tuple(coeffs), ring, weight)
