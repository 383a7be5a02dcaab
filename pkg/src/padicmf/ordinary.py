"""Slopes, p-stabilization and the ordinary projector."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NonOrdinaryError, PrecisionExhausted
from .padic import INF, PadicNumber, as_padic, hensel_unit_root
from .qseries import QExpansion, Qp, op_U, op_V


def slope(lam) -> Fraction:
    """v_p of a U-eigenvalue."""
    if lam.is_zero():
        raise PrecisionExhausted(f"eigenvalue is 0 to precision {lam.absprec}; slope unknown")
    return Fraction(lam.val)


@dataclass(frozen=True)
class Eigenform:
    """Level one eigenform data: weight, a_p, chi(p) and a q-expansion."""

    k: int
    a_p: object
    chi_p: object
    qexp: QExpansion


@dataclass(frozen=True)
class StabilizedPair:
    form: Eigenform
    p: int
    alpha: PadicNumber
    beta: PadicNumber
    f_alpha: QExpansion
    f_beta: QExpansion

    @property
    def slopes(self):
        return slope(self.alpha), slope(self.beta)


def _roots(form: Eigenform, p: int, N: int):
    """Roots of X^2 - a_p X + chi(p) p^{k-1}, unit root (or smaller slope) first."""
    a = as_padic(form.a_p, p, N)
    c = as_padic(form.chi_p, p, N) * PadicNumber.from_rational(Fraction(p) ** (form.k - 1), p, N)
    if a.val != 0:
        return stabilization_roots(a, c, p, N)
    alpha = hensel_unit_root(a, c, N)
    beta = c / alpha
    return alpha, beta


def p_stabilize(form: Eigenform, p: int, N: int, M: int | None = None) -> StabilizedPair:
    """f_alpha = f - beta f|V and f_beta = f - alpha f|V."""
    if form.k < 2:
        raise DomainError("stabilization needs weight k >= 2")
    alpha, beta = _roots(form, p, N)
    f = form.qexp.to_padic(p, N)
    if M is not None:
        f = f.truncate(M)
    fV = op_V(f, p, cap=f.order)
    f_alpha = f - fV.scale(beta)
    f_beta = f - fV.scale(alpha)
    pair = StabilizedPair(form, p, alpha, beta, f_alpha, f_beta)
    for lam, g in ((alpha, f_alpha), (beta, f_beta)):
        Ug = op_U(g, p)
        if not Ug.equals(g.truncate(Ug.order).scale(lam)):
            raise DomainError("input is not an eigenform with the given a_p")
    return pair


def ordinary_project(form: Eigenform, p: int, N: int, M: int | None = None) -> QExpansion:
    """f|e = alpha/(alpha - beta) f_alpha."""
    pair = p_stabilize(form, p, N, M)
    if pair.alpha.val != 0:
        raise NonOrdinaryError(f"a_p = {form.a_p} is not a unit: f has no ordinary stabilization at {p}")
    return pair.f_alpha.scale(pair.alpha / (pair.alpha - pair.beta))


def ordinary_project_formula(form: Eigenform, p: int, N: int, M: int | None = None) -> QExpansion:
    """The same projection written as (f - alpha^{-1} chi(p) p^{k-1} f|V) / (2 - alpha^{-1} a_p)."""
    alpha, _ = _roots(form, p, N)
    if alpha.val != 0:
        raise NonOrdinaryError(f"a_p = {form.a_p} is not a unit at {p}")
    f = form.qexp.to_padic(p, N)
    if M is not None:
        f = f.truncate(M)
    a = as_padic(form.a_p, p, N)
    c = as_padic(form.chi_p, p, N) * PadicNumber.from_rational(Fraction(p) ** (form.k - 1), p, N)
    fV = op_V(f, p, cap=f.order)
    g = f - fV.scale(c / alpha)
    return g.scale((2 - a / alpha).inverse())


# ---------------------------------------------------------------------------
# matrices over Z/p^N


def mat_mul(A, B, mod: int):
    n, m = len(A), len(B[0])
    inner = len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(inner)) % mod for j in range(m)] for i in range(n)]


def mat_pow(A, e: int, mod: int):
    n = len(A)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [[x % mod for x in row] for row in A]
    while e:
        if e & 1:
            out = mat_mul(out, base, mod)
        e >>= 1
        if e:
            base = mat_mul(base, base, mod)
    return out


def idempotent_limit(A, p: int, N: int, max_iter: int | None = None):
    """lim A^{m!} modulo p^N.

    X_m = X_{m-1}^m equals A^{m!}; stop at the first m where X_m is idempotent
    and X_{m+1} = X_m.  The cap defaults to p*N + 64, enough for any matrix of
    size below p since the p-part of the exponent needs m >= p*(N-1).
    """
    mod = p**N
    if max_iter is None:
        max_iter = p * N + 64
    X = [[x % mod for x in row] for row in A]
    for m in range(2, max_iter + 1):
        Y = mat_pow(X, m, mod)
        if Y == X and mat_mul(X, X, mod) == X:
            return X
        X = Y
    raise PrecisionExhausted(f"A^(m!) did not stabilize within m <= {max_iter}")


def u_matrix_on_pair(form: Eigenform, p: int, N: int):
    """Matrix of U on span{f, f|V} (columns are images): [[a_p, 1], [-chi(p)p^{k-1}, 0]]."""
    mod = p**N
    a = as_padic(form.a_p, p, N).add_bigoh(N).residue()
    c = (as_padic(form.chi_p, p, N) * (Fraction(p) ** (form.k - 1))).add_bigoh(N)
    c = c.residue() if not c.is_zero() else 0
    return [[a % mod, 1], [(-c) % mod, 0]]


def closed_form_projector(form: Eigenform, p: int, N: int):
    """Projector onto the f_alpha line along f_beta, in the basis (f, f|V)."""
    alpha, beta = _roots(form, p, N)
    if alpha.val != 0:
        raise NonOrdinaryError(f"a_p = {form.a_p} is not a unit at {p}")
    mod = p**N
    al, be = alpha.residue(), (beta.add_bigoh(N).residue() if not beta.add_bigoh(N).is_zero() else 0)
    inv = pow((al - be) % mod, -1, mod)
    col = [1, -be]
    row = [al, 1]
    return [[col[i] * row[j] * inv % mod for j in range(2)] for i in range(2)]


def stabilization_roots(a_p, c, p: int, N: int):
    """Both roots of X^2 - a_p X + c in Z_p when their slopes differ.

    With s = v(a_p) and v(c) > 2s, substitute X = p^s Y: the unit root of
    Y^2 - (a_p/p^s) Y + c/p^{2s} gives the root of slope s; the other root is
    c divided by it.  Returns (root of smaller slope, root of larger slope).
    """
    a = as_padic(a_p, p, N)
    cc = as_padic(c, p, N)
    s = a.val
    if s == INF or cc.val <= 2 * s:
        raise NonOrdinaryError("roots have equal slopes (or a_p = 0): not split over Z_p at this precision")
    ps = PadicNumber.from_rational(Fraction(p) ** s, p, N)
    y = hensel_unit_root(a / ps, cc / (ps * ps), N)
    r1 = y * ps
    return r1, cc / r1
