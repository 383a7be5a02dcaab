"""Level one classical modular forms with exact rational coefficients."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InsufficientOrder
from .qseries import QQ, QExpansion
from .zeta import bernoulli


def sigma(n: int, m: int) -> int:
    """sum of d^m over the divisors d of n."""
    return sum(d**m for d in _divisors(n))


def sigma_star(n: int, m: int, p: int) -> int:
    """sum of d^m over the divisors of n prime to p."""
    return sum(d**m for d in _divisors(n) if d % p)


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple:
    if n < 1:
        raise DomainError("divisor sums need n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def dim_Mk(k: int) -> int:
    """dim M_k(SL_2(Z)) for even k >= 0 (0 for odd or negative k)."""
    if k < 0 or k % 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


# ---------------------------------------------------------------------------
# Eisenstein series


def _check_even(k: int):
    if k % 2 or k < 2:
        raise DomainError(f"Eisenstein series need even weight k >= 2, got {k}")
    if k == 2:
        warnings.warn("G_2 is quasi-modular, not a modular form", stacklevel=3)


def eisenstein_G(k: int, M: int) -> QExpansion:
    """G_k = -B_k/2k + sum sigma_{k-1}(n) q^n."""
    _check_even(k)
    coeffs = [-bernoulli(k) / (2 * k)] + [Fraction(sigma(n, k - 1)) for n in range(1, M + 1)]
    return QExpansion(tuple(coeffs), QQ, k)


def eisenstein_E(k: int, M: int) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n (constant term 1)."""
    _check_even(k)
    c = -2 * k / bernoulli(k)
    coeffs = [Fraction(1)] + [c * sigma(n, k - 1) for n in range(1, M + 1)]
    return QExpansion(tuple(coeffs), QQ, k)


def eisenstein_G_star(k: int, M: int, p: int) -> QExpansion:
    """G_k(q) - p^{k-1} G_k(q^p): constant (1 - p^{k-1}) (-B_k/2k), a_n = sigma*_{k-1}(n)."""
    _check_even(k)
    c0 = (1 - Fraction(p) ** (k - 1)) * (-bernoulli(k) / (2 * k))
    coeffs = [c0] + [Fraction(sigma_star(n, k - 1, p)) for n in range(1, M + 1)]
    return QExpansion(tuple(coeffs), QQ, k)


# ---------------------------------------------------------------------------
# integer power series helpers (optionally reduced modulo an integer)


def _mul(a: list, b: list, M: int, mod: int | None = None) -> list:
    out = [0] * (M + 1)
    nzb = [(j, bj) for j, bj in enumerate(b[: M + 1]) if bj]
    for i, ai in enumerate(a[: M + 1]):
        if not ai:
            continue
        for j, bj in nzb:
            if i + j > M:
                break
            out[i + j] += ai * bj
    if mod:
        out = [x % mod for x in out]
    return out


def _pow(a: list, n: int, M: int, mod: int | None = None) -> list:
    out = [1] + [0] * M
    base = list(a[: M + 1])
    while n:
        if n & 1:
            out = _mul(out, base, M, mod)
        n >>= 1
        if n:
            base = _mul(base, base, M, mod)
    return out


@lru_cache(maxsize=64)
def _E_int(k: int, M: int) -> tuple:
    """Integer coefficients of E_4 or E_6."""
    c = {4: 240, 6: -504}[k]
    return tuple([1] + [c * sigma(n, k - 1) for n in range(1, M + 1)])


@lru_cache(maxsize=16)
def _delta_int(M: int) -> tuple:
    # prod (1 - q^n)^24 via n b_n = -24 sum_{j=1}^n sigma_1(j) b_{n-j}
    b = [1] + [0] * M
    s1 = [0] + [sigma(j, 1) for j in range(1, M + 1)]
    for n in range(1, M):
        b[n] = -24 * sum(s1[j] * b[n - j] for j in range(1, n + 1)) // n
    return tuple([0] + b[:M])


def delta(M: int) -> QExpansion:
    """Delta = q prod (1 - q^n)^24 = sum tau(n) q^n."""
    if M < 1:
        raise DomainError("need M >= 1")
    return QExpansion(tuple(Fraction(x) for x in _delta_int(M)), QQ, 12)


def tau(n: int) -> int:
    return _delta_int(max(n, 1))[n] if n <= 1 else _delta_int(n)[n]


# ---------------------------------------------------------------------------
# Miller basis


@dataclass(frozen=True)
class ClassicalBasis:
    k: int
    elements: tuple  # of QExpansion

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


@lru_cache(maxsize=256)
def _miller_int(k: int, M: int, modulus: int | None) -> tuple:
    d = dim_Mk(k)
    if d and M + 1 < d:
        raise InsufficientOrder(f"order {M} too small for dim M_{k} = {d}")
    rows = []
    for j in range(d):
        w = k - 12 * j
        b = 1 if w % 4 == 2 else 0
        a = (w - 6 * b) // 4
        f = _pow(list(_delta_int(M)), j, M, modulus)
        f = _mul(f, _pow(list(_E_int(4, M)), a, M, modulus), M, modulus)
        f = _mul(f, _pow(list(_E_int(6, M)), b, M, modulus), M, modulus)
        rows.append(f)
    # leading terms are q^j with coefficient 1; clear the other pivots
    for i in range(d):
        for j in range(i + 1, d):
            c = rows[i][j]
            if c:
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[j])]
                if modulus:
                    rows[i] = [x % modulus for x in rows[i]]
    return tuple(tuple(r) for r in rows)


def miller_basis_int(k: int, M: int, modulus: int | None = None) -> tuple:
    """Echelon basis of M_k as integer coefficient tuples (optionally mod modulus)."""
    if k % 2 or k < 0:
        raise DomainError(f"no level one forms of weight {k}")
    return _miller_int(k, M, modulus)


def miller_basis(k: int, M: int) -> ClassicalBasis:
    """Echelon basis of M_k(SL_2(Z)): element j is q^j + O(q^d)."""
    rows = miller_basis_int(k, M)
    return ClassicalBasis(
        k, tuple(QExpansion(tuple(Fraction(x) for x in r), QQ, k) for r in rows)
    )


# ---------------------------------------------------------------------------
# divided congruences


def _solve_exact(cols: list, rhs: list):
    """Solve sum x_j cols[j] = rhs over Q.  Returns (solution, rank) or (None, rank)."""
    n = len(cols)
    m = len(rhs)
    A = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(A[i][n] != 0 for i in range(r, m)):
        return None, r
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    return x, r


def decompose_by_weight(f: QExpansion, kmax: int):
    """Write f as a sum of classical forms of weights 0, 4, 6, ..., kmax.

    Returns a list of (k, g_k) for the nonzero components, or None when f is
    not in the span.  Raises InsufficientOrder when the order of f cannot
    separate the candidate weights.
    """
    M = f.order
    weights = [k for k in range(0, kmax + 1, 2) if dim_Mk(k)]
    total = sum(dim_Mk(k) for k in weights)
    if M + 1 < total:
        raise InsufficientOrder(f"need order >= {total - 1} to separate weights <= {kmax}")
    cols, tags = [], []
    for k in weights:
        for r in miller_basis_int(k, M):
            cols.append(r)
            tags.append(k)
    sol, rank = _solve_exact(cols, [Fraction(c) for c in f.coeffs])
    if rank < len(cols):
        raise InsufficientOrder("q-expansion order too small: weight components not determined")
    if sol is None:
        return None
    out = []
    for k in weights:
        g = [Fraction(0)] * (M + 1)
        for x, tag, r in zip(sol, tags, cols):
            if tag == k and x:
                g = [a + x * b for a, b in zip(g, r)]
        if any(g):
            out.append((k, QExpansion(tuple(g), QQ, k)))
    return out
