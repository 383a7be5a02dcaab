"""Slopes of U on overconvergent forms of tame level 1.

The Katz basis of weight k splits M_{k + A(p-1)} as
E_{p-1}^A M_k + E_{p-1}^{A-1} B(1) + ... + B(A), where the block B(alpha)
consists of the Miller basis vectors of M_{k + alpha(p-1)} whose leading
index is at least dim M_{k + (alpha-1)(p-1)}.  Overconvergent forms are
sums of b E_{p-1}^{-alpha} with b in B(alpha).  U is computed on these
vectors, truncated at alpha <= A, and everything is done modulo p^N: the
Katz vectors b E^{A - alpha} form a unitriangular system in their first D
q-coefficients, so no division is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .classical import _mul, _pow, dim_Mk, miller_basis_int, sigma
from .errors import DomainError, InsufficientOrder, PrecisionExhausted
from .linalg import charpoly
from .padic import INF, valuation
from .zeta import bernoulli


def _v(x: int, p: int):
    return INF if x == 0 else valuation(x, p)


@lru_cache(maxsize=32)
def hasse_eisenstein(p: int, M: int, mod: int | None = None) -> tuple:
    """E_{p-1} = 1 - (2(p-1)/B_{p-1}) sum sigma_{p-2}(n) q^n, reduced mod ``mod`` if given."""
    c = Fraction(-2 * (p - 1)) / bernoulli(p - 1)
    if mod:
        cr = c.numerator * pow(c.denominator, -1, mod) % mod
        return tuple([1] + [cr * sigma(n, p - 2) % mod for n in range(1, M + 1)])
    if c.denominator != 1:
        raise DomainError("E_{p-1} is not integral; pass a modulus")
    return tuple([1] + [int(c) * sigma(n, p - 2) for n in range(1, M + 1)])


def _inverse_series(a: list, M: int, mod: int) -> list:
    """1/a for a power series with constant term 1."""
    inv = [1] + [0] * M
    for n in range(1, M + 1):
        s = 0
        for j in range(1, n + 1):
            if a[j]:
                s += a[j] * inv[n - j]
        inv[n] = (-s) % mod
    return inv


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KatzBasis:
    p: int
    k: int
    A: int
    M: int
    blocks: tuple  # blocks[alpha] = tuple of (leading index, coefficient tuple)
    modulus: int | None = None

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_sizes(self) -> list:
        return [len(b) for b in self.blocks]


def katz_basis(k: int, A: int, M: int, p: int, modulus: int | None = None) -> KatzBasis:
    if k % 2 or k < 0:
        raise DomainError(f"weight {k} must be even and >= 0")
    blocks = []
    prev = 0
    for alpha in range(A + 1):
        w = k + alpha * (p - 1)
        rows = miller_basis_int(w, M, modulus)
        lo = 0 if alpha == 0 else dim_Mk(w - (p - 1))
        blocks.append(tuple((j, rows[j]) for j in range(lo, len(rows))))
        prev = len(rows)
    return KatzBasis(p, k, A, M, tuple(blocks), modulus)


def direct_sum_check(k: int, alpha: int, M: int, p: int) -> bool:
    """E_{p-1} M_{k+(alpha-1)(p-1)} + B(alpha) = M_{k+alpha(p-1)} over Z_p.

    Both pieces are echelon with leading coefficient 1 (E = 1 + O(q)) and their
    leading indices partition 0..d-1, so the first d coefficients form a
    unitriangular matrix mod p.
    """
    w = k + alpha * (p - 1)
    d = dim_Mk(w)
    mod = p
    E = list(hasse_eisenstein(p, M, mod))
    vecs = []
    if alpha:
        for r in miller_basis_int(w - (p - 1), M, mod):
            vecs.append(_mul(list(r), E, M, mod))
    vecs += [list(r) for j, r in katz_basis(k, alpha, M, p, mod).blocks[alpha]]
    if len(vecs) != d:
        return False
    mat = [[v[i] % mod for i in range(d)] for v in vecs]
    # leading index of vector j is its row position after sorting
    lead = sorted(range(d), key=lambda j: next((i for i in range(d) if mat[j][i]), d))
    for pos, j in enumerate(lead):
        row = mat[j]
        if row[pos] % p == 0 or any(row[i] for i in range(pos)):
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass
class UMatrix:
    p: int
    k: int
    A: int
    M: int
    N: int
    entries: list  # entries[row][col] mod p^N, rows/cols indexed by (alpha, j)
    labels: list  # (alpha, leading index)

    @property
    def size(self) -> int:
        return len(self.entries)

    def block_valuations(self) -> list:
        """min valuation of the entries in each row block."""
        out = {}
        for (alpha, _), row in zip(self.labels, self.entries):
            v = min(_v(x, self.p) for x in row)
            out[alpha] = min(out.get(alpha, INF), v)
        return [out.get(a, INF) for a in range(self.A + 1)]


def u_matrix(k: int, A: int, M: int, N: int, p: int) -> UMatrix:
    """Matrix of U on the vectors b E_{p-1}^{-alpha}, b in B(alpha), alpha <= A."""
    mod = p**N
    basis = katz_basis(k, A, M, p, mod)
    D = basis.dimension
    Mp = M // p
    if Mp + 1 < D:
        raise InsufficientOrder(f"q-order {M} too small: need M >= {p * (D - 1)} for {D} Katz vectors")
    E = list(hasse_eisenstein(p, M, mod))
    Einv = _inverse_series(E, M, mod)
    # target vectors b_{alpha,j} E^{A - alpha}, to order M/p
    targets = []
    labels = []
    for alpha, block in enumerate(basis.blocks):
        EA = _pow(E, A - alpha, Mp, mod)
        for j, b in block:
            targets.append(_mul(list(b), EA, Mp, mod))
            labels.append((alpha, j))
    order = sorted(range(D), key=lambda t: labels[t][1])
    if [labels[t][1] for t in order] != list(range(D)):
        raise DomainError("Katz leading indices do not partition 0..D-1")
    EA_full = _pow(E, A, Mp, mod)
    cols = []
    for beta, block in enumerate(basis.blocks):
        Einv_b = _pow(Einv, beta, M, mod)
        for _, b in block:
            f = _mul(list(b), Einv_b, M, mod)
            g = [f[p * n] for n in range(Mp + 1)]
            h = _mul(g, EA_full, Mp, mod)
            coords = [0] * D
            r = list(h)
            for t in order:
                idx = labels[t][1]
                c = r[idx] % mod
                coords[t] = c
                if c:
                    tv = targets[t]
                    r = [(x - c * y) % mod for x, y in zip(r, tv)]
            cols.append(coords)
    entries = [[cols[c][r] for c in range(D)] for r in range(D)]
    return UMatrix(p, k, A, M, N, entries, labels)


# ---------------------------------------------------------------------------


@dataclass
class FredholmSeries:
    p: int
    N: int
    coeffs: list  # c_0 = 1, ..., c_D mod p^N
    A: int | None = None
    M: int | None = None

    def valuations(self) -> list:
        return [_v(c % self.p**self.N, self.p) for c in self.coeffs]


def fredholm(U, N: int | None = None, p: int | None = None, D: int | None = None) -> FredholmSeries:
    """det(1 - tU) mod p^N (c_i is the coefficient of x^{D-i} in det(xI - U))."""
    if isinstance(U, UMatrix):
        p, N, entries, meta = U.p, N or U.N, U.entries, (U.A, U.M)
    else:
        entries, meta = U, (None, None)
    if D is not None:
        entries = [row[:D] for row in entries[:D]]
    mod = p**N
    return FredholmSeries(p, N, charpoly(entries, mod), *meta)


@dataclass
class NewtonPolygon:
    slopes: list  # [(Fraction slope, multiplicity)], ascending, certified part only
    certified_bound: Fraction  # slopes strictly below this are trusted
    vertices: list = field(default_factory=list)
    uncertified: list = field(default_factory=list)  # further segments, not trusted

    def multiplicity(self, alpha) -> int:
        alpha = Fraction(alpha)
        if alpha < 0:
            return 0
        if alpha >= self.certified_bound:
            raise PrecisionExhausted(
                f"slope {alpha} is beyond the certified bound {self.certified_bound}"
            )
        return sum(m for s, m in self.slopes if s == alpha)

    def as_records(self) -> list:
        return [{"slope": str(s), "multiplicity": m} for s, m in self.slopes]


_NO_BOUND = Fraction(10**9)  # stands in for "no bound" while staying a Fraction


def lower_hull(points: list) -> list:
    """Lower convex hull of (x, y) points sorted by x (Andrew's monotone chain)."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_slopes(P: FredholmSeries, slope_cap=None) -> NewtonPolygon:
    """Slopes of the Newton polygon of P, keeping only the certified initial part.

    Coefficients that vanish mod p^N enter the hull at height N (a lower
    bound).  Segments ending at such a point, or of slope >= slope_cap, are
    not certified.
    """
    N = P.N
    vals = P.valuations()
    pts = [(i, Fraction(v) if v != INF else Fraction(N)) for i, v in enumerate(vals)]
    unknown = {i for i, v in enumerate(vals) if v == INF}
    if len(pts) <= 1:
        return NewtonPolygon([], _NO_BOUND if slope_cap is None else Fraction(slope_cap), [(0, 0)])
    hull = lower_hull(pts)
    cap = Fraction(slope_cap) if slope_cap is not None else None
    certified, rest = [], []
    ok = True
    bound = None
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = (y2 - y1) / (x2 - x1)
        if ok and x2 not in unknown and (cap is None or s < cap):
            if certified and certified[-1][0] == s:
                certified[-1] = (s, certified[-1][1] + x2 - x1)
            else:
                certified.append((s, x2 - x1))
        else:
            if ok:
                bound = s if cap is None else min(s, cap)
            ok = False
            rest.append((s, x2 - x1))
    if bound is None:
        bound = cap if cap is not None else _NO_BOUND
    return NewtonPolygon(certified, bound, hull, rest)


def truncation_floor(p: int, A: int) -> Fraction:
    """Valuation floor of the couplings into the discarded blocks alpha > A.

    Columns coming from block beta have entries of valuation at least about
    beta p/(p+1) - 1; we use the conservative (A+1)(p-1)/(p+1) - 1.
    """
    return Fraction((A + 1) * (p - 1), p + 1) - 1


@dataclass
class SlopeReport:
    p: int
    k: int
    A: int
    M: int
    N: int
    polygon: NewtonPolygon
    fredholm: FredholmSeries
    cross_check: bool | None = None

    def as_record(self) -> dict:
        return {
            "p": self.p, "k": self.k, "A": self.A, "M": self.M, "N": self.N,
            "certified_slope_bound": str(self.polygon.certified_bound),
            "slopes": self.polygon.as_records(),
            "fredholm": [int(c) for c in self.fredholm.coeffs],
            "cross_check": self.cross_check,
        }


def slopes(k: int, p: int, A: int, M: int, N: int, cross_check: bool = True,
           target=None, N_max: int = 48) -> SlopeReport:
    """Certified slopes at weight k, cross-checked against truncation A + 4.

    With ``target`` set, N is doubled (up to N_max) until slopes up to the
    target are certified or the truncation floor is what limits them.
    """
    while True:
        rep = _slopes_once(k, p, A, M, N, cross_check)
        floor = truncation_floor(p, A)
        if (target is None or rep.polygon.certified_bound > Fraction(target)
                or rep.polygon.certified_bound >= floor or N >= N_max):
            return rep
        N = min(2 * N, N_max)


def _slopes_once(k: int, p: int, A: int, M: int, N: int, cross_check: bool) -> SlopeReport:
    U = u_matrix(k, A, M, N, p)
    P = fredholm(U)
    NP = newton_slopes(P, truncation_floor(p, A))
    agree = None
    if cross_check:
        A2 = A + 4
        M2 = max(M, p * (dim_Mk(k + A2 * (p - 1)) + 4))
        U2 = u_matrix(k, A2, M2, N, p)
        NP2 = newton_slopes(fredholm(U2), truncation_floor(p, A2))
        b = min(NP.certified_bound, NP2.certified_bound)
        s1 = [(s, m) for s, m in NP.slopes if s < b]
        s2 = [(s, m) for s, m in NP2.slopes if s < b]
        agree = s1 == s2
        if not agree:
            # only what both truncations certify is trusted
            common = []
            for (s, m), (s_, m_) in zip(s1, s2):
                if s != s_ or m != m_:
                    b = min(b, s, s_)
                    break
                common.append((s, m))
            NP = NewtonPolygon(common, b, NP.vertices, NP.uncertified)
    return SlopeReport(p, k, A, M, N, NP, P, agree)


def dim_slope(k: int, alpha, p: int, A: int = 8, M: int | None = None, N: int = 6) -> int:
    """d(k, alpha): multiplicity of slope alpha (certified only)."""
    alpha = Fraction(alpha)
    if alpha < 0:
        return 0
    if M is None:
        M = p * (dim_Mk(k + A * (p - 1)) + 4)
    return slopes(k, p, A, M, N, target=alpha).polygon.multiplicity(alpha)


# ---------------------------------------------------------------------------
# experiments


def gouvea_mazur_report(k: int, k2: int, alpha_max, p: int, A: int = 8, N: int = 6, M: int | None = None) -> dict:
    """Compare d(k, alpha) with d(k', alpha) for alpha <= alpha_max."""
    alpha_max = Fraction(alpha_max)
    reps = []
    for kk in (k, k2):
        MM = M or p * (dim_Mk(kk + A * (p - 1)) + 4)
        reps.append(slopes(kk, p, A, MM, N, target=alpha_max))
    bound = min(r.polygon.certified_bound for r in reps)
    if alpha_max >= bound:
        raise PrecisionExhausted(
            f"polygons certified only below slope {bound}; cannot compare up to {alpha_max}"
        )
    vdiff = _v(k - k2, p)
    cand = sorted({s for r in reps for s, _ in r.polygon.slopes if s <= alpha_max}
                  | {Fraction(a) for a in range(int(alpha_max) + 1)})
    rows = []
    for a in cand:
        d1 = reps[0].polygon.multiplicity(a)
        d2 = reps[1].polygon.multiplicity(a)
        hyp = vdiff > a
        rows.append({
            "alpha": str(a), "d_k": d1, "d_k2": d2,
            "hypothesis_met": bool(hyp),
            "status": ("agree" if d1 == d2 else "DISCREPANCY") if hyp else "hypothesis not met",
        })
    return {
        "p": p, "k": k, "k2": k2, "alpha_max": str(alpha_max),
        "v_p(k - k2)": None if vdiff == INF else int(vdiff),
        "certified_slope_bound": str(bound),
        "rows": rows,
        "discrepancies": [r for r in rows if r["status"] == "DISCREPANCY"],
        "reports": [r.as_record() for r in reps],
    }


def hecke_Tp_matrix_cusp(k: int, p: int) -> list:
    """Integer matrix of the classical T(p) on S_k in the Miller basis (columns are images)."""
    d = dim_Mk(k)
    s = d - 1
    if s <= 0:
        return []
    M = p * (d + 2)
    rows = miller_basis_int(k, M)[1:]
    cols = []
    for f in rows:
        g = [f[p * n] + (p ** (k - 1) * f[n // p] if n % p == 0 else 0) for n in range(M // p + 1)]
        # coordinates on q^1 .. q^s (echelon)
        coords = []
        r = list(g)
        for j, b in enumerate(rows):
            c = r[j + 1]
            coords.append(c)
            r = [x - c * y for x, y in zip(r, b)]
        assert all(x == 0 for x in r[: s + 1])
        cols.append(coords)
    return [[cols[c][r] for c in range(s)] for r in range(s)]


def classical_slopes(k: int, p: int) -> list:
    """U-slopes of the p-stabilizations of level one eigenforms of weight k."""
    out = []
    if k >= 4:
        out += [Fraction(0), Fraction(k - 1)]
    T = hecke_Tp_matrix_cusp(k, p)
    if T:
        cp = charpoly(T)
        vals = [_v(c, p) for c in cp]
        pts = [(i, Fraction(v)) for i, v in enumerate(vals) if v != INF]
        hull = lower_hull(pts)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            s = (y2 - y1) / (x2 - x1)
            for _ in range(x2 - x1):
                if 2 * s < k - 1:
                    out += [s, k - 1 - s]
                else:
                    h = Fraction(k - 1, 2)
                    out += [h, h]
        # eigenvalues a_p = 0 (infinite valuation) give two slopes (k-1)/2
        zeros = len(cp) - 1 - (hull[-1][0] - hull[0][0]) if hull else len(cp) - 1
        out += [Fraction(k - 1, 2)] * (2 * zeros)
    return sorted(out)


def coleman_inclusion_check(k: int, p: int, A: int = 8, M: int | None = None, N: int = 6) -> dict:
    """Each classical stabilization slope should occur in the overconvergent polygon."""
    if M is None:
        M = p * (dim_Mk(k + A * (p - 1)) + 4)
    cls = classical_slopes(k, p)
    rep = slopes(k, p, A, M, N, target=min([s for s in cls if s < truncation_floor(p, A)], default=None))
    bound = rep.polygon.certified_bound
    rows = []
    for s in sorted(set(cls)):
        need = cls.count(s)
        if s < bound:
            have = rep.polygon.multiplicity(s)
            rows.append({"slope": str(s), "classical": need, "overconvergent": have,
                         "status": "found" if have >= need else "MISSING"})
        else:
            rows.append({"slope": str(s), "classical": need, "overconvergent": None,
                         "status": "beyond certified bound"})
    return {
        "p": p, "k": k, "certified_slope_bound": str(bound),
        "all_classical_slopes_at_most_k_minus_1": all(s <= k - 1 for s in cls),
        "rows": rows,
        "ok": all(r["status"] != "MISSING" for r in rows),
    }
