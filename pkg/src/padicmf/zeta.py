"""Bernoulli numbers, zeta(1-n), Kubota-Leopoldt values and p-adic Eisenstein series."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, PoleError, PrecisionExhausted
from .padic import INF, PadicNumber, WeightCharacter, eval_character, valuation

# ---------------------------------------------------------------------------
# Bernoulli numbers
#
# Even-index values come from tangent numbers (Brent-Harvey): an O(n^2)
# integer recurrence, far cheaper than the rational recurrence for n ~ 10^4.

_B_even: list = [Fraction(1)]  # _B_even[n] = B_{2n}


def _extend_table(nmax: int) -> None:
    n = nmax
    if n < len(_B_even):
        return
    n = max(n, 2 * len(_B_even))
    T = [0] * (n + 1)
    T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    table = [Fraction(1)]
    for m in range(1, n + 1):
        sign = 1 if m % 2 else -1
        table.append(Fraction(sign * 2 * m * T[m], 4**m * (4**m - 1)))
    _B_even[:] = table


def bernoulli(n: int) -> Fraction:
    """B_n with z/(e^z - 1) = sum B_n z^n/n!, so B_1 = -1/2."""
    if n < 0:
        raise DomainError("Bernoulli numbers need n >= 0")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    _extend_table(n // 2)
    return _B_even[n // 2]


def bernoulli_table(nmax: int) -> list:
    return [bernoulli(n) for n in range(nmax + 1)]


def bernoulli_recurrence(nmax: int) -> list:
    """B_0..B_nmax from sum_{j<=n} C(n+1, j) B_j = 0; slow, used as an oracle."""
    from math import comb

    B = [Fraction(1)]
    for n in range(1, nmax + 1):
        B.append(-sum(comb(n + 1, j) * B[j] for j in range(n)) / (n + 1))
    return B


def zeta_neg(n: int) -> Fraction:
    """zeta(1 - n) = -B_n/n for n >= 1."""
    if n < 1:
        raise DomainError("zeta_neg needs n >= 1")
    return -bernoulli(n) / n


def euler_factor_value(p: int, k: int) -> Fraction:
    """(1 - p^{k-1}) zeta(1 - k), the value of zeta_{p, k mod p-1} at 1 - k."""
    return (1 - Fraction(p) ** (k - 1)) * zeta_neg(k)


# ---------------------------------------------------------------------------
# Kubota-Leopoldt zeta values


def _residue(x, p: int, m: int) -> int:
    """x mod p^m for a p-integral Fraction or PadicNumber."""
    if m == 0:
        return 0
    if isinstance(x, PadicNumber):
        if x.is_zero():
            return 0
        if x.val < 0:
            raise DomainError("target weight is not p-integral")
        if x.absprec < m:
            raise PrecisionExhausted("target known to too few digits")
        return x.add_bigoh(m).residue() if x.absprec != INF else int(x.lift()) % p**m
    x = Fraction(x)
    if x.denominator % p == 0:
        raise DomainError("target weight is not p-integral")
    mod = p**m
    return x.numerator * pow(x.denominator, -1, mod) % mod


def auxiliary_weight(p: int, branch: int, kt, m: int, shift: int = 0) -> int:
    """Smallest k >= 2 with k = branch mod p-1 and k = kt mod p^m, plus shift periods."""
    r = _residue(kt, p, m)
    mod = p**m
    # CRT for (p-1) and p^m
    k = branch % (p - 1)
    while k % mod != r % mod:
        k += p - 1
    period = (p - 1) * mod
    while k < 2:
        k += period
    return k + shift * period


def _as_target(s):
    if isinstance(s, str):
        s = _parse_point(s)
    return s


def _parse_point(text: str) -> Fraction:
    """Accept '1-4', '-3', '1/2'."""
    text = text.replace(" ", "")
    m = re.fullmatch(r"(-?[\d/]+)-([\d/]+)", text)
    if m:
        return Fraction(m.group(1)) - Fraction(m.group(2))
    return Fraction(text)


def kl_zeta(p: int, branch: int, s, N: int, aux_shift: int = 0, max_m: int = 40) -> PadicNumber:
    """zeta_{p,branch}(s), to relative precision N.

    ``s`` is the point (an int, Fraction or PadicNumber); at s = 1 - n with
    n = branch mod p-1 the value is (1 - p^{n-1}) zeta(1 - n).  The value is
    read off at an auxiliary integer weight congruent to 1 - s; ``aux_shift``
    moves that weight by multiples of (p-1)p^m (the result must not change).
    """
    if branch % 2:
        raise DomainError(f"branch {branch} is odd: zeta_p vanishes identically there")
    branch %= p - 1
    s = _as_target(s)
    kt = 1 - s
    kt_known = kt.absprec if isinstance(kt, PadicNumber) else INF
    if branch == 0:
        if (isinstance(kt, PadicNumber) and kt.is_zero()) or (not isinstance(kt, PadicNumber) and kt == 0):
            raise PoleError("zeta_{p,0} has a simple pole at s = 1")
        vkt = valuation(kt, p)
        # k R(k)-style values agree only mod p^m (absolute) across k = k' mod (p-1)p^m,
        # and v(R) = -1, so m = N - 1 gives N relative digits
        m = max(N - 1, 0)
        if m > kt_known:
            raise PrecisionExhausted("target weight known to too few digits")
        if not isinstance(kt, PadicNumber) and Fraction(kt).denominator == 1 and kt >= 2 \
                and int(kt) % (p - 1) == 0 and aux_shift == 0:
            k = int(kt)
            return PadicNumber.from_rational(euler_factor_value(p, k), p, N)
        k = auxiliary_weight(p, 0, kt, m, aux_shift)
        R = (1 - Fraction(p) ** (k - 1)) * bernoulli(k)  # valuation exactly -1
        Rp = PadicNumber.from_absolute(R, p, m)
        ktp = kt if isinstance(kt, PadicNumber) else PadicNumber.from_rational(kt, p, N + 2)
        val = -Rp / ktp
        return val.reduce_relative(N)
    # regular branch: Lambda-valued, values at k = k' mod (p-1)p^m agree mod p^{m+1}
    if not isinstance(kt, PadicNumber) and Fraction(kt).denominator == 1 and kt >= 2 \
            and (int(kt) - branch) % (p - 1) == 0 and aux_shift == 0:
        return PadicNumber.from_rational(euler_factor_value(p, int(kt)), p, N)
    m = N - 1
    while m <= max_m:
        if m > kt_known:
            raise PrecisionExhausted("target weight known to too few digits")
        k = auxiliary_weight(p, branch, kt, m, aux_shift)
        val = PadicNumber.from_absolute(euler_factor_value(p, k), p, m + 1)
        if not val.is_zero() and val.prec >= N:
            return val.reduce_relative(N)
        m += N - int(val.prec) if not val.is_zero() else 1
    raise PrecisionExhausted(f"zeta value indistinguishable from 0 mod {p}^{max_m + 1}")


def zeta_of_character(chi: WeightCharacter, N: int) -> PadicNumber:
    """zeta(1 - chi) := zeta_{p,i}(1 - s) for chi = chi_{i,s}."""
    return kl_zeta(chi.p, chi.i, 1 - chi.s, N)


# ---------------------------------------------------------------------------
# p-adic Eisenstein series


def padic_eisenstein(chi: WeightCharacter, M: int, N: int):
    """G_chi = zeta(1-chi)/2 + sum_n (sum_{d | n, (d,p)=1} chi(d)/d) q^n."""
    from .qseries import QExpansion, Qp

    p = chi.p
    if not chi.is_even():
        raise DomainError("G_chi needs an even character")
    if chi.is_trivial():
        raise PoleError("G_chi has a pole at the trivial character")
    ring = Qp(p, N)
    c = {}
    for d in range(1, M + 1):
        if d % p:
            c[d] = eval_character(chi, d, N) * PadicNumber.from_rational(Fraction(1, d), p, N)
    coeffs = [kl_zeta(p, chi.i, 1 - chi.s, N) * Fraction(1, 2)]
    zero = ring.zero()
    sums = [zero] * (M + 1)
    for d, v in c.items():
        for n in range(d, M + 1, d):
            sums[n] = sums[n] + v
    coeffs += sums[1:]
    return QExpansion(tuple(coeffs), ring, chi)


# ---------------------------------------------------------------------------
# normalizations: G_k (constant -B_k/2k), E_k (constant 1), G_chi (constant zeta(1-chi)/2)


def G_to_E(f, k: int):
    """E_k = G_k / (-B_k/2k)."""
    return f.scale(1 / (-bernoulli(k) / (2 * k)))


def E_to_G(f, k: int):
    return f.scale(-bernoulli(k) / (2 * k))


def G_star_to_G_chi(f, p: int, N: int):
    """For k = 0 mod p-1, G_k* and G_chi_{0,k} agree: this only changes the ring."""
    from .qseries import Qp

    return f.change_ring(Qp(p, N)).with_weight(WeightCharacter.integer(p, f.weight))


# ---------------------------------------------------------------------------
# limits of constant terms


def _v(x, p):
    return x.val if isinstance(x, PadicNumber) else valuation(x, p)


def limit_constant_term(family, p: int | None = None):
    """Limit of a_0 over a family (f_i, chi_i) whose higher coefficients converge.

    Returns (a0, precision): a0 as a PadicNumber known modulo p^precision.
    The precision extrapolates the growth of v(a_0(f_{i+1}) - a_0(f_i)).
    """
    if not family:
        raise DomainError("empty family")
    chis = [c for _, c in family]
    p = p or chis[0].p
    if len({c.i for c in chis}) != 1:
        raise DomainError("tame parts of the characters do not converge")
    fs = [f for f, _ in family]
    M = min(f.order for f in fs)
    # the weight characters: s_i must converge
    ss = [c.s for c in chis]
    sd = [_v(ss[j + 1] - ss[j], p) for j in range(len(ss) - 1)]
    s_known = sd[-1] if sd else INF
    if chis[-1].i == 0 and _v(ss[-1], p) >= s_known:
        raise PoleError("family converges to the trivial character")
    # higher coefficients must be Cauchy
    diffs = []
    for j in range(len(fs) - 1):
        diffs.append(min(_v(fs[j + 1][n] - fs[j][n], p) for n in range(1, M + 1)))
    for j in range(1, len(diffs)):
        if diffs[j] != INF and diffs[j] <= diffs[j - 1]:
            raise DomainError(
                f"coefficients a_n (n >= 1) are not Cauchy: valuations of successive differences {diffs}"
            )
    c0 = [_v(fs[j + 1][0] - fs[j][0], p) for j in range(len(fs) - 1)]
    a0 = fs[-1][0]
    if all(c == INF for c in c0):
        prec = a0.absprec if isinstance(a0, PadicNumber) else INF
    elif len(c0) >= 2 and c0[-2] != INF:
        prec = c0[-1] + max(c0[-1] - c0[-2], 1)
    else:
        prec = c0[-1]
    if isinstance(a0, PadicNumber):
        return a0.add_bigoh(prec), prec
    if prec == INF:
        return PadicNumber.from_rational(a0, p, 64), prec
    return PadicNumber.from_absolute(a0, p, prec), prec
