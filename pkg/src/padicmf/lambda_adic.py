"""The Iwasawa algebra Z_p[[T]] at finite precision and Lambda-adic q-series.

T corresponds to [u] - 1 with u = 1 + p, so specializing 1 + T -> u^k is the
weight-k map.  A :class:`LambdaElement` is a polynomial in T with residues
modulo p^N and T^{M_T}, plus at most one simple pole c/(T - t0).  It behaves
as a function on pZ_p: evaluated at t, the polynomial part is good to
min(N, M_T v(t), prec) digits and the pole part to N - v(t - t0).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, PoleError
from .padic import (
    INF,
    PadicNumber,
    WeightCharacter,
    padic_log,
    teichmuller,
    valuation,
)
from .qseries import QExpansion, Ring, hecke_T_n


def _vint(x, p: int):
    return valuation(x, p)


@dataclass(frozen=True, eq=False)
class LambdaElement:
    p: int
    N: int
    coeffs: tuple  # length M_T, residues mod p^N
    pole: int | None = None  # c in c/(T - t0), mod p^N
    t0: Fraction = Fraction(0)
    prec: float = INF  # extra cap on specialization accuracy

    @property
    def MT(self) -> int:
        return len(self.coeffs)

    @property
    def mod(self) -> int:
        return self.p**self.N

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, p: int, N: int, MT: int) -> "LambdaElement":
        return cls(p, N, (_to_residue(c, p, N),) + (0,) * (MT - 1))

    @classmethod
    def from_coeffs(cls, coeffs, p: int, N: int, MT: int | None = None, pole=None, t0=0) -> "LambdaElement":
        MT = MT or len(coeffs)
        mod = p**N
        cs = [_to_residue(c, p, N) for c in list(coeffs)[:MT]]
        cs += [0] * (MT - len(cs))
        return cls(p, N, tuple(cs), None if pole is None else _to_residue(pole, p, N), Fraction(t0))

    def _like(self, coeffs, pole=None, t0=None, prec=None) -> "LambdaElement":
        return LambdaElement(
            self.p, self.N, tuple(coeffs), pole,
            self.t0 if t0 is None else t0,
            self.prec if prec is None else prec,
        )

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LambdaElement":
        if isinstance(other, LambdaElement):
            if (other.p, other.N, other.MT) != (self.p, self.N, self.MT):
                raise DomainError("Lambda elements with different truncations")
            return other
        return LambdaElement.constant(other, self.p, self.N, self.MT)

    def __add__(self, other):
        other = self._coerce(other)
        mod = self.mod
        cs = [(a + b) % mod for a, b in zip(self.coeffs, other.coeffs)]
        pole, t0 = self._merge_poles(other)
        return self._like(cs, pole, t0, min(self.prec, other.prec))

    __radd__ = __add__

    def _merge_poles(self, other):
        if self.pole is None:
            return other.pole, other.t0
        if other.pole is None:
            return self.pole, self.t0
        if self.t0 != other.t0:
            raise DomainError("sum of poles at different points")
        c = (self.pole + other.pole) % self.mod
        return c, self.t0

    def __neg__(self):
        mod = self.mod
        return self._like([(-a) % mod for a in self.coeffs],
                          None if self.pole is None else (-self.pole) % mod)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PadicNumber) or not isinstance(other, LambdaElement):
            return self.scale(other)
        other = self._coerce(other)
        if self.pole is not None and other.pole is not None:
            raise DomainError("product of two polar elements leaves Lambda[1/T] with a double pole")
        mod, MT = self.mod, self.MT
        a, b = self.coeffs, other.coeffs
        cs = [0] * MT
        for i, ai in enumerate(a):
            if ai:
                for j in range(MT - i):
                    cs[i + j] += ai * b[j]
        cs = [c % mod for c in cs]
        prec = min(self.prec, other.prec)
        out = self._like(cs, None, Fraction(0), prec)
        for polar, g in ((self, other), (other, self)):
            if polar.pole is not None:
                out = out + polar._pole_times(g)
        return out

    __rmul__ = __mul__

    def _pole_times(self, g: "LambdaElement") -> "LambdaElement":
        """(c/(T - t0)) * poly(g) = c g(t0)/(T - t0) + c * (g(T) - g(t0))/(T - t0)."""
        p, mod, MT = self.p, self.mod, self.MT
        t0 = self.t0
        c = self.pole
        if t0 == 0:
            g0 = g.coeffs[0]
            quo = list(g.coeffs[1:]) + [0]
        else:
            t = _frac_mod(t0, p, self.N + MT)
            g0 = 0
            for x in reversed(g.coeffs):
                g0 = (g0 * t + x) % mod
            # synthetic division by (T - t0)
            quo = [0] * MT
            acc = 0
            for i in range(MT - 1, 0, -1):
                acc = (acc * t + g.coeffs[i]) % mod
                quo[i - 1] = acc
        # the dropped T^{M_T} term of g costs one degree of T in the quotient
        prec = min(g.prec, MT - 1)
        cs = [c * x % mod for x in quo]
        return LambdaElement(p, self.N, tuple(cs), c * g0 % mod, t0, prec)

    def scale(self, c) -> "LambdaElement":
        r = _to_residue(c, self.p, self.N)
        mod = self.mod
        return self._like([r * a % mod for a in self.coeffs],
                          None if self.pole is None else r * self.pole % mod)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, t) -> PadicNumber:
        """Value at T = t (an exact rational with v(t) >= 1)."""
        p, N = self.p, self.N
        t = Fraction(t)
        vt = _vint(t, p)
        if vt < 1:
            raise DomainError("specialization point must lie in pZ_p")
        mod = p**N
        tr = _frac_mod(t, p, N)
        val = 0
        for x in reversed(self.coeffs):
            val = (val * tr + x) % mod
        acc = min(N, self.prec, self.MT * vt)
        if self.pole is not None:
            d = t - self.t0
            if d == 0:
                raise PoleError("evaluating the polar part at its pole")
            w = _vint(d, p)
            acc = min(acc, self.prec - w)
            poly = PadicNumber.from_absolute(val, p, acc) if acc > 0 else PadicNumber.zero(p, acc)
            polar = PadicNumber.from_absolute(self.pole, p, N) / PadicNumber.from_rational(d, p, N + 1)
            return poly + polar
        return PadicNumber.from_absolute(val, p, acc) if acc > 0 else PadicNumber.zero(p, acc)

    def substitute_affine(self, a, b) -> "LambdaElement":
        """g(T) -> g(aT + b) for a unit a and v(b) >= 1."""
        p, N, MT, mod = self.p, self.N, self.MT, self.mod
        a, b = Fraction(a), Fraction(b)
        if _vint(a, p) != 0 or _vint(b, p) < 1:
            raise DomainError("affine substitution needs a unit slope and a shift in pZ_p")
        ar, br = _frac_mod(a, p, N), _frac_mod(b, p, N)
        out = [0] * MT
        power = [1] + [0] * (MT - 1)  # (aT + b)^i
        for x in self.coeffs:
            if x:
                for j in range(MT):
                    out[j] = (out[j] + x * power[j]) % mod
            nxt = [0] * MT
            for j in range(MT):
                if power[j]:
                    nxt[j] = (nxt[j] + power[j] * br) % mod
                    if j + 1 < MT:
                        nxt[j + 1] = (nxt[j + 1] + power[j] * ar) % mod
            power = nxt
        prec = min(self.prec, MT * _vint(b, p))
        pole, t0 = None, Fraction(0)
        if self.pole is not None:
            # c/(aT + b - t0) = (c/a)/(T - (t0 - b)/a)
            pole = self.pole * pow(ar, -1, mod) % mod
            t0 = (self.t0 - b) / a
        return LambdaElement(p, N, tuple(out), pole, t0, prec)

    # -- comparison -------------------------------------------------------
    def valuation(self):
        vals = [_vint(c, self.p) for c in self.coeffs]
        if self.pole is not None:
            vals.append(_vint(self.pole, self.p))
        return min(vals)

    def is_zero(self) -> bool:
        return not any(self.coeffs) and not self.pole

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).is_zero() if (self.pole is None or other.pole is None
                                            or self.t0 == other.t0) else False

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c) or "0"
        if self.pole is not None:
            body = f"{self.pole}/(T - {self.t0}) + {body}"
        return f"LambdaElement({body} mod ({self.p}^{self.N}, T^{self.MT}))"


def _frac_mod(x, p: int, n: int) -> int:
    x = Fraction(x)
    mod = p**n
    if x.denominator % p == 0:
        raise DomainError("value not p-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def _to_residue(c, p: int, N: int) -> int:
    if isinstance(c, PadicNumber):
        if c.is_zero():
            return 0
        if c.val < 0:
            raise DomainError("Lambda coefficients must be p-integral")
        if c.absprec < N:
            # keep only what is known; the caller should track precision
            return c.residue() % p**N
        return c.add_bigoh(N).residue() if c.val < N else 0
    return _frac_mod(c, p, N)


# ---------------------------------------------------------------------------
# coefficient ring plug-in for QExpansion


@dataclass(frozen=True)
class LambdaRing(Ring):
    p: int
    N: int
    MT: int

    def coerce(self, x):
        if isinstance(x, LambdaElement):
            return x
        return LambdaElement.constant(x, self.p, self.N, self.MT)

    def valuation(self, x, p: int | None = None):
        return x.valuation()

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def chi_over_d(self, chi, d: int) -> LambdaElement:
        """psi(d) d^{-1} (1+T)^{s(d)}, for the tame character psi = omega^j."""
        j = chi.i if isinstance(chi, WeightCharacter) else int(chi)
        p, N = self.p, self.N
        w = teichmuller(d % p, p, N) ** j
        c = w * PadicNumber.from_rational(Fraction(1, d), p, N)
        return one_plus_T_pow(s_of(d, p, N + self.MT + 2), self.MT, N, p).scale(c)

    def __str__(self):
        return f"Lambda({self.p}, {self.N}, T^{self.MT})"


def LambdaQExpansion(coeffs, ring: LambdaRing, psi: int = 0) -> QExpansion:
    """q-series with Lambda coefficients, tagged with its tame character omega^psi."""
    return QExpansion(tuple(coeffs), ring, None, psi % (ring.p - 1))


# ---------------------------------------------------------------------------
# s(d) and (1+T)^s


def s_of(d: int, p: int, N: int) -> PadicNumber:
    """The s in Z_p with d = omega(d) u^s, u = 1 + p, modulo p^N."""
    if d % p == 0:
        raise DomainError(f"{d} is not prime to {p}")
    L = N + 2
    w = teichmuller(d % p, p, L)
    x = PadicNumber.from_rational(d, p, L) * w.inverse()
    num = padic_log(x, N + 1, p)
    den = padic_log(PadicNumber.from_rational(1 + p, p, L), N + 1, p)
    if num.is_zero():
        return PadicNumber.zero(p, N)
    return (num / den).add_bigoh(N)


def _binomial_series(S: int, MT: int, N: int, p: int) -> tuple:
    mod = p**N
    out = []
    b = 1
    for j in range(MT):
        if j:
            b = b * (S - j + 1) // j
        out.append(b % mod)
    return tuple(out)


def one_plus_T_pow(s, MT: int, N: int, p: int | None = None) -> LambdaElement:
    """(1+T)^s = sum_j C(s, j) T^j, truncated mod (p^N, T^MT)."""
    if p is None:
        p = s.p
    guard = sum(_vint(j, p) for j in range(1, MT)) if MT > 1 else 0
    prec = INF
    if isinstance(s, PadicNumber):
        if s.val < 0:
            raise DomainError("exponent must be p-integral")
        known = s.absprec
        # (1+t)^(s - S) = 1 mod p^(v(s - S) + v(t)), and v(t) >= 1
        if known != INF:
            prec = known + 1
        k = int(min(known, N + guard))
        S = 0 if s.is_zero() else (s.add_bigoh(k).residue() if known != INF else int(s.lift()))
    else:
        s = Fraction(s)
        S = int(s) if s.denominator == 1 else _frac_mod(s, p, N + guard)
    return LambdaElement(p, N, _binomial_series(S, MT, N, p), None, Fraction(0), prec)


# ---------------------------------------------------------------------------
# specialization


def u_power_minus_one(k: int, p: int) -> Fraction:
    return Fraction(1 + p) ** k - 1


def specialize(F: QExpansion, k: int, N: int | None = None, eps=None) -> QExpansion:
    """Evaluate every coefficient at 1 + T = u^k (trivial eps only)."""
    from .qseries import Qp

    if eps not in (None, 1):
        raise DomainError("only the trivial wild character eps is supported (other values leave Q_p)")
    ring = F.ring
    p = ring.p
    N = N or ring.N
    t = u_power_minus_one(k, p)
    coeffs = tuple(c.evaluate(t) for c in F.coeffs)
    j = F.nebentypus or 0
    return QExpansion(coeffs, Qp(p, N), WeightCharacter(p, j, k))


def lambda_hecke_T(F: QExpansion, n: int, chi=None) -> QExpansion:
    """a_m(F|T(n)) = sum over d | (m, n), (d, p) = 1 of chi(d) d^{-1} (1+T)^{s(d)} A_{mn/d^2}."""
    chi = F.nebentypus if chi is None else chi
    return hecke_T_n(F, n, chi)


# ---------------------------------------------------------------------------
# Lambda-adic Eisenstein series


def _newton_coefficients(nodes: list, values: list) -> list:
    """Divided differences for the Newton form (exact rationals)."""
    dd = list(values)
    n = len(nodes)
    out = [dd[0]]
    for level in range(1, n):
        dd = [(dd[i + 1] - dd[i]) / (nodes[i + level] - nodes[i]) for i in range(n - level)]
        out.append(dd[0])
    return out


def _newton_to_monomial(nodes: list, dd: list) -> list:
    """Expand sum dd_i prod_{b<i} (T - x_b) into monomial coefficients."""
    n = len(dd)
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for i in range(n):
        for j, c in enumerate(basis):
            poly[j] += dd[i] * c
        if i + 1 < n:
            nb = [Fraction(0)] * (len(basis) + 1)
            for j, c in enumerate(basis):
                nb[j + 1] += c
                nb[j] -= nodes[i] * c
            basis = nb
    return poly


@lru_cache(maxsize=32)
def _eisenstein_constant(p: int, j: int, N: int, MT: int):
    """A_0 by Newton interpolation at T_b = u^{k_b} - 1, k_b = k0 + (p-1) b.

    The values 1/2 (1 - p^{k-1}) zeta(1-k) are exact.  For j = 0 the
    function has a simple pole at T = 0, so T * A_0 is interpolated instead.
    With B nodes the interpolation error at t is >= B (>= B - v(t) with the pole).
    """
    from .zeta import euler_factor_value

    B = max(N + 2, MT) + (1 if j == 0 else 0)
    k0 = j if j >= 2 else (p - 1)
    ks = [k0 + (p - 1) * b for b in range(B)]
    nodes = [u_power_minus_one(k, p) for k in ks]
    values = [euler_factor_value(p, k) / 2 for k in ks]
    if j == 0:
        values = [t * v for t, v in zip(nodes, values)]
    dd = _newton_coefficients(nodes, values)
    if any(valuation(c, p) < 0 for c in dd if c):
        raise ArithmeticError("divided differences are not p-integral")
    poly = _newton_to_monomial(nodes, dd)
    if j == 0:
        pole = poly[0]
        body = poly[1:]
        return pole, body, B
    return None, poly, B


def lambda_eisenstein(psi0: int, p: int, N: int, MT: int, M: int) -> QExpansion:
    """E(psi0) with A_n = sum_{d | n, (d,p)=1} psi0(d) d^{-1} (1+T)^{s(d)}, psi0 = omega^j."""
    j = psi0 % (p - 1)
    if j % 2:
        raise DomainError("psi0 must be even")
    ring = LambdaRing(p, N, MT)
    terms = {d: ring.chi_over_d(j, d) for d in range(1, M + 1) if d % p}
    zero = ring.zero()
    A = [zero] * (M + 1)
    for d, x in terms.items():
        for n in range(d, M + 1, d):
            A[n] = A[n] + x
    pole, body, B = _eisenstein_constant(p, j, N, MT)
    A0 = LambdaElement.from_coeffs(body, p, N, MT, pole, 0)
    A[0] = replace(A0, prec=B)
    return LambdaQExpansion(A, ring, j)


# ---------------------------------------------------------------------------
# the twist product f * E(psi0)


def twist_product(f: QExpansion, m: int, psi0: int, p: int, N: int, MT: int, M: int | None = None) -> QExpansion:
    """(f E(psi0))(u_m T + v_m) with u_m = u^{-m}, v_m = u_m - 1 (trivial psi)."""
    M = f.order if M is None else min(M, f.order)
    E = lambda_eisenstein(psi0, p, N, MT, M)
    ring = E.ring
    fl = QExpansion(tuple(ring.coerce(c) for c in f.coeffs[: M + 1]), ring)
    prod = fl * E
    um = Fraction(1 + p) ** (-m)
    vm = um - 1
    coeffs = tuple(c.substitute_affine(um, vm) for c in prod.coeffs)
    return LambdaQExpansion(coeffs, ring, psi0 + m)
