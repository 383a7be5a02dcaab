"""Pseudo-representations (a, d, x, c) of finitely generated groups.

Groups are free words in explicit generators: a word is a tuple of integers,
``i`` for generator i and ``-(i+1)`` for its inverse.  Coefficients live in
Z/p^N or in the glued ring Lambda/((T - c1)(T - c2)) at finite precision.
Continuity is vacuous at finite precision and the density argument used
to glue is replaced by agreement on every sampled word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NotCompatible, PrecisionExhausted
from .padic import INF, valuation

# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class ZmodPN:
    """Z/p^N with integer residues."""

    p: int
    N: int

    @property
    def mod(self) -> int:
        return self.p**self.N

    def __call__(self, x) -> int:
        return int(x) % self.mod

    def add(self, a, b):
        return (a + b) % self.mod

    def sub(self, a, b):
        return (a - b) % self.mod

    def mul(self, a, b):
        return a * b % self.mod

    def neg(self, a):
        return (-a) % self.mod

    def one(self):
        return 1

    def zero(self):
        return 0

    def valuation(self, a):
        a %= self.mod
        return INF if a == 0 else valuation(a, self.p)

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit mod {self.p}")
        return pow(a, -1, self.mod)

    def half(self):
        return self.inv(2)

    def divide(self, a, b):
        """(a, N - v(b)): a/b known modulo p^(N - v(b))."""
        vb = self.valuation(b)
        if vb == INF:
            raise ZeroDivisionError("division by zero")
        a %= self.mod
        va = self.valuation(a)
        if va < vb:
            raise DomainError("quotient is not integral")
        pv = self.p**vb
        mod2 = self.p ** (self.N - vb)
        q = (a // pv) * pow(b // pv, -1, mod2) % mod2
        return q, self.N - vb

    def reduce(self, a, n: int):
        return a % self.p**n

    def eq(self, a, b, n: int | None = None):
        n = self.N if n is None else n
        return (a - b) % self.p**n == 0


@dataclass(frozen=True)
class GluedRing:
    """Z_p[T]/((T - c1)(T - c2)) modulo p^N; elements are pairs (a, b) for a + bT."""

    p: int
    N: int
    c1: int
    c2: int

    @property
    def mod(self) -> int:
        return self.p**self.N

    def __call__(self, x):
        if isinstance(x, tuple):
            return (x[0] % self.mod, x[1] % self.mod)
        return (int(x) % self.mod, 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.mod, (a[1] + b[1]) % self.mod)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.mod, (a[1] - b[1]) % self.mod)

    def neg(self, a):
        return ((-a[0]) % self.mod, (-a[1]) % self.mod)

    def mul(self, a, b):
        # T^2 = (c1 + c2) T - c1 c2
        s, pr = self.c1 + self.c2, self.c1 * self.c2
        a0, a1 = a
        b0, b1 = b
        t2 = a1 * b1
        return ((a0 * b0 - pr * t2) % self.mod, (a0 * b1 + a1 * b0 + s * t2) % self.mod)

    def one(self):
        return (1, 0)

    def zero(self):
        return (0, 0)

    def at(self, a, which: int) -> int:
        """Image modulo (T - c_which)."""
        c = self.c1 if which == 1 else self.c2
        return (a[0] + a[1] * c) % self.mod

    def is_unit(self, a) -> bool:
        return self.at(a, 1) % self.p != 0 and self.at(a, 2) % self.p != 0

    def inv(self, a):
        # solve via the conjugate: (a0 + a1 T)(a0 + a1 (s - T)) = norm
        a0, a1 = a
        s, pr = self.c1 + self.c2, self.c1 * self.c2
        conj = ((a0 + a1 * s) % self.mod, (-a1) % self.mod)
        norm = self.mul(a, conj)
        assert norm[1] == 0
        ninv = pow(norm[0], -1, self.mod)
        return (conj[0] * ninv % self.mod, conj[1] * ninv % self.mod)

    def half(self):
        return (pow(2, -1, self.mod), 0)

    def valuation(self, a):
        return min(valuation(a[0] % self.mod, self.p) if a[0] % self.mod else INF,
                   valuation(a[1] % self.mod, self.p) if a[1] % self.mod else INF)

    def eq(self, a, b, n: int | None = None):
        n = self.N if n is None else n
        m = self.p**n
        return (a[0] - b[0]) % m == 0 and (a[1] - b[1]) % m == 0


# ---------------------------------------------------------------------------
# matrices and words


def mat_mul(R, A, B):
    return (
        (R.add(R.mul(A[0][0], B[0][0]), R.mul(A[0][1], B[1][0])),
         R.add(R.mul(A[0][0], B[0][1]), R.mul(A[0][1], B[1][1]))),
        (R.add(R.mul(A[1][0], B[0][0]), R.mul(A[1][1], B[1][0])),
         R.add(R.mul(A[1][0], B[0][1]), R.mul(A[1][1], B[1][1]))),
    )


def mat_det(R, A):
    return R.sub(R.mul(A[0][0], A[1][1]), R.mul(A[0][1], A[1][0]))


def mat_inv(R, A):
    di = R.inv(mat_det(R, A))
    return (
        (R.mul(A[1][1], di), R.mul(R.neg(A[0][1]), di)),
        (R.mul(R.neg(A[1][0]), di), R.mul(A[0][0], di)),
    )


def mat_identity(R):
    return ((R.one(), R.zero()), (R.zero(), R.one()))


def mat_trace(R, A):
    return R.add(A[0][0], A[1][1])


def mat_eq(R, A, B, n=None):
    return all(R.eq(A[i][j], B[i][j], n) for i in range(2) for j in range(2))


def invert_word(w: tuple) -> tuple:
    return tuple(-(g + 1) for g in reversed(w))


@dataclass
class MatrixGroupSample:
    """Generators rho(g_i) over a ring, plus the involution word c."""

    ring: object
    generators: list
    c: tuple = (0,)

    def __post_init__(self):
        self._cache = {}
        self._inv = [mat_inv(self.ring, g) for g in self.generators]
        R = self.ring
        C = self.matrix(self.c)
        if not mat_eq(R, mat_mul(R, C, C), mat_identity(R)):
            raise DomainError("c does not square to the identity")

    def matrix(self, w: tuple):
        w = tuple(w)
        if w in self._cache:
            return self._cache[w]
        R = self.ring
        M = mat_identity(R)
        for g in w:
            M = mat_mul(R, M, self.generators[g] if g >= 0 else self._inv[-g - 1])
        self._cache[w] = M
        return M

    def trace(self, w):
        return mat_trace(self.ring, self.matrix(w))

    def sample_words(self, n: int, seed: int = 0, max_len: int = 4) -> list:
        return sample_words(len(self.generators), n, seed, max_len)


def sample_words(ngens: int, n: int, seed: int = 0, max_len: int = 4) -> list:
    rng = random.Random(seed)
    letters = list(range(ngens)) + [-(i + 1) for i in range(ngens)]
    out = [()]
    while len(out) < n:
        L = rng.randint(1, max_len)
        out.append(tuple(rng.choice(letters) for _ in range(L)))
    return out


# ---------------------------------------------------------------------------
# pseudo-representations


@dataclass
class PseudoRep:
    ring: object
    a: object  # word -> ring
    d: object
    x: object  # (word, word) -> ring
    c: tuple
    tr: object = None
    precision: int | None = None  # digits to which values are meaningful

    def trace(self, w):
        return self.ring.add(self.a(w), self.d(w))

    def det(self, w):
        R = self.ring
        return R.sub(R.mul(self.a(w), self.d(w)), self.x(w, w))


def _normalizer(R, C):
    """P with P^{-1} C P = diag(-1, 1), built from unit columns of (I - C)/2 and (I + C)/2."""
    h = R.half()
    Im = ((R.mul(R.sub(R.one(), C[0][0]), h), R.mul(R.neg(C[0][1]), h)),
          (R.mul(R.neg(C[1][0]), h), R.mul(R.sub(R.one(), C[1][1]), h)))
    Ip = ((R.mul(R.add(R.one(), C[0][0]), h), R.mul(C[0][1], h)),
          (R.mul(C[1][0], h), R.mul(R.add(R.one(), C[1][1]), h)))

    def unit_column(E):
        for j in range(2):
            if R.is_unit(E[0][j]) or R.is_unit(E[1][j]):
                return (E[0][j], E[1][j])
        return None

    vm, vp = unit_column(Im), unit_column(Ip)
    if vm is None or vp is None:
        raise DomainError("cannot normalize c: rho(c) is scalar mod p")
    P = ((vm[0], vp[0]), (vm[1], vp[1]))
    if not R.is_unit(mat_det(R, P)):
        raise DomainError("cannot normalize c: eigenvectors not independent mod p")
    return P


def from_representation(rho: MatrixGroupSample) -> PseudoRep:
    """(a, d, x) after conjugating rho(c) to diag(-1, 1)."""
    R = rho.ring
    C = rho.matrix(rho.c)
    if not R.eq(mat_det(R, C), R.neg(R.one())):
        raise DomainError("det rho(c) must be -1")
    P = _normalizer(R, C)
    Pi = mat_inv(R, P)

    @lru_cache(maxsize=None)
    def conj(w):
        return mat_mul(R, mat_mul(R, Pi, rho.matrix(w)), P)

    def a(w):
        return conj(tuple(w))[0][0]

    def d(w):
        return conj(tuple(w))[1][1]

    def x(g, h):
        return R.sub(a(tuple(g) + tuple(h)), R.mul(a(g), a(h)))

    return PseudoRep(R, a, d, x, tuple(rho.c), tr=rho.trace)


def from_trace(tr, c: tuple, ring) -> PseudoRep:
    """a = (tr g - tr gc)/2, d = (tr g + tr gc)/2, x(g, h) = a(gh) - a(g)a(h)."""
    R = ring
    h = R.half()
    c = tuple(c)

    @lru_cache(maxsize=None)
    def a(w):
        return R.mul(R.sub(tr(tuple(w)), tr(tuple(w) + c)), h)

    @lru_cache(maxsize=None)
    def d(w):
        return R.mul(R.add(tr(tuple(w)), tr(tuple(w) + c)), h)

    def x(g, hh):
        return R.sub(a(tuple(g) + tuple(hh)), R.mul(a(tuple(g)), a(tuple(hh))))

    return PseudoRep(R, a, d, x, c, tr=tr)


@dataclass
class AxiomReport:
    ok: bool
    checked: int
    failure: str | None = None
    witness: tuple | None = None


def check_axioms(pr: PseudoRep, words: list, n_tuples: int = 200, seed: int = 0,
                 precision: int | None = None) -> AxiomReport:
    """Check axioms (i)-(v) on ``n_tuples`` random tuples drawn from ``words``."""
    R = pr.ring
    n = precision if precision is not None else pr.precision
    rng = random.Random(seed)
    one, c = (), pr.c
    a, d, x = pr.a, pr.d, pr.x
    eq = lambda u, v: R.eq(u, v, n)  # noqa: E731
    mul, add = R.mul, R.add

    def fail(name, wit):
        return AxiomReport(False, checked, name, wit)

    checked = 0
    # (iv) and (v) on fixed words
    if not (eq(a(one), R.one()) and eq(d(one), R.one()) and eq(d(c), R.one())
            and eq(a(c), R.neg(R.one()))):
        return fail("iv", (one, c))
    for _ in range(n_tuples):
        g, h, j, k = (rng.choice(words) for _ in range(4))
        checked += 1
        if not (eq(a(g + h), add(mul(a(g), a(h)), x(g, h)))
                and eq(d(g + h), add(mul(d(g), d(h)), x(h, g)))):
            return fail("i", (g, h))
        rhs = add(add(mul(mul(a(g), a(k)), x(h, j)), mul(mul(a(k), d(h)), x(g, j))),
                  add(mul(mul(a(g), d(j)), x(h, k)), mul(mul(d(h), d(j)), x(g, k))))
        if not eq(x(g + h, j + k), rhs):
            return fail("ii", (g, h, j, k))
        if not eq(mul(x(g, h), x(j, k)), mul(x(g, k), x(j, h))):
            return fail("iii", (g, h, j, k))
        zero = R.zero()
        if not all(eq(v, zero) for v in (x(g, one), x(one, g), x(g, c), x(c, g))):
            return fail("v", (g,))
    return AxiomReport(True, checked)


# ---------------------------------------------------------------------------
# gluing


@dataclass
class GlueResult:
    pseudorep: PseudoRep
    ring: GluedRing
    loss: int


def glue(pr1: PseudoRep, pr2: PseudoRep, c1: int, c2: int, words: list) -> GlueResult:
    """Interpolate two Z/p^N-valued pseudo-representations to Lambda/((T-c1)(T-c2)).

    Values agreeing modulo p^delta, delta = v(c1 - c2), lift to a + bT with
    b = (y1 - y2)/(c1 - c2), known modulo p^(N - delta).
    """
    R1 = pr1.ring
    p, N = R1.p, R1.N
    delta = valuation(c1 - c2, p)
    if delta == INF or delta >= N:
        raise DomainError("the two ideals coincide at this precision")
    identical = all(pr1.a(w) == pr2.a(w) and pr1.d(w) == pr2.d(w) for w in words) and \
        all(pr1.x(g, h) == pr2.x(g, h) for g in words for h in words)
    if identical:
        # the constant lift a + 0 T is exact: nothing is divided by c1 - c2
        delta = 0
    G = GluedRing(p, N - delta, c1, c2)
    mod_d = p**delta
    modG = p ** (N - delta)
    unit_inv = pow(((c1 - c2) // p ** valuation(c1 - c2, p)) % modG, -1, modG)

    def lift(y1, y2, where):
        if identical:
            if y1 != y2:
                raise NotCompatible(f"values differ at {where}", witness=where)
            return (y1 % modG, 0)
        if (y1 - y2) % mod_d:
            raise NotCompatible(f"values disagree modulo {p}^{delta} at {where}", witness=where)
        b = (((y1 - y2) % p**N) // mod_d) * unit_inv % modG
        a0 = (y1 - b * c1) % modG
        return (a0, b)

    # compatibility on the sample (our stand-in for density)
    for w in words:
        lift(pr1.trace(w), pr2.trace(w), w)
        lift(pr1.a(w), pr2.a(w), w)

    @lru_cache(maxsize=None)
    def a(w):
        return lift(pr1.a(w), pr2.a(w), w)

    @lru_cache(maxsize=None)
    def d(w):
        return lift(pr1.d(w), pr2.d(w), w)

    def x(g, h):
        return lift(pr1.x(g, h), pr2.x(g, h), (g, h))

    def tr(w):
        return G.add(a(w), d(w))

    pr = PseudoRep(G, a, d, x, pr1.c, tr=tr, precision=N - delta)
    return GlueResult(pr, G, delta)


def project(pr: PseudoRep, which: int) -> PseudoRep:
    """Reduce a glued pseudo-representation modulo (T - c_which)."""
    G = pr.ring
    R = ZmodPN(G.p, G.N)
    return PseudoRep(
        R,
        lambda w: G.at(pr.a(w), which),
        lambda w: G.at(pr.d(w), which),
        lambda g, h: G.at(pr.x(g, h), which),
        pr.c,
        tr=lambda w: G.at(pr.trace(w), which),
    )


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class Reconstruction:
    rep: MatrixGroupSample | None
    matrices: dict
    loss: int
    witness: tuple | None
    diagonal: bool

    def matrix(self, w):
        return self.matrices[tuple(w)]


def reconstruct(pr: PseudoRep, words: list, ngens: int | None = None) -> Reconstruction:
    """Build rho(g) = [[a, b], [c, d]] with c(g) = x(g0, g), b(g) = x(g, h0)/x(g0, h0).

    The witness pair minimizes v(x(g0, h0)) over the sample (ties: first in
    word order); the result is good modulo p^(N - loss), loss = v(x(g0, h0)).
    """
    R = pr.ring
    if not isinstance(R, ZmodPN):
        return _reconstruct_unit_witness(pr, words, ngens)
    best = None
    for g0 in words:
        for h0 in words:
            v = R.valuation(pr.x(g0, h0))
            if v != INF and (best is None or v < best[0]):
                best = (v, g0, h0)
    gens = [(i,) for i in range(ngens)] if ngens else []
    targets = list(dict.fromkeys(list(words) + gens))
    if best is None:
        mats = {w: ((pr.a(w), 0), (0, pr.d(w))) for w in targets}
        rep = MatrixGroupSample(R, [mats[g] for g in gens], pr.c) if gens else None
        return Reconstruction(rep, mats, 0, None, True)
    loss, g0, h0 = best
    if loss >= R.N:
        raise PrecisionExhausted("all x values vanish at this precision")
    n = R.N - loss
    R2 = ZmodPN(R.p, n)
    den = pr.x(g0, h0)
    mats = {}
    for w in targets:
        b, _ = R.divide(pr.x(w, h0), den)
        mats[w] = ((pr.a(w) % R2.mod, b % R2.mod), (pr.x(g0, w) % R2.mod, pr.d(w) % R2.mod))
    rep = None
    if gens:
        rep = MatrixGroupSample(R2, [mats[g] for g in gens], pr.c)
    return Reconstruction(rep, mats, loss, (g0, h0), False)


def _reconstruct_unit_witness(pr: PseudoRep, words: list, ngens: int | None) -> Reconstruction:
    """Over a general ring: only the lossless case x(g0, h0) a unit is handled."""
    R = pr.ring
    gens = [(i,) for i in range(ngens)] if ngens else []
    targets = list(dict.fromkeys(list(words) + gens))
    zero = R.zero()
    pairs = [(g0, h0) for g0 in words for h0 in words]
    if all(R.eq(pr.x(g0, h0), zero) for g0, h0 in pairs):
        mats = {w: ((pr.a(w), zero), (zero, pr.d(w))) for w in targets}
        rep = MatrixGroupSample(R, [mats[g] for g in gens], pr.c) if gens else None
        return Reconstruction(rep, mats, 0, None, True)
    wit = next(((g0, h0) for g0, h0 in pairs if R.is_unit(pr.x(g0, h0))), None)
    if wit is None:
        raise PrecisionExhausted("no unit x(g0, h0) on the sample; lossy reconstruction needs Z/p^N")
    g0, h0 = wit
    inv = R.inv(pr.x(g0, h0))
    mats = {w: ((pr.a(w), R.mul(pr.x(w, h0), inv)), (pr.x(g0, w), pr.d(w))) for w in targets}
    rep = MatrixGroupSample(R, [mats[g] for g in gens], pr.c) if gens else None
    return Reconstruction(rep, mats, 0, wit, False)


# ---------------------------------------------------------------------------
# synthetic test groups


def random_generators(p: int, N: int, n: int, seed: int = 0, c_matrix=None):
    """n random invertible generators over Z/p^N; generator 0 is an involution with det -1."""
    rng = random.Random(seed)
    R = ZmodPN(p, N)
    mod = R.mod

    def rand_gl2():
        while True:
            A = tuple(tuple(rng.randrange(mod) for _ in range(2)) for _ in range(2))
            if R.is_unit(mat_det(R, A)):
                return A

    if c_matrix is None:
        P = rand_gl2()
        D = ((mod - 1, 0), (0, 1))
        c_matrix = mat_mul(R, mat_mul(R, P, D), mat_inv(R, P))
    gens = [c_matrix] + [rand_gl2() for _ in range(n - 1)]
    return MatrixGroupSample(R, gens, (0,))


def polynomial_family(p: int, N: int, n: int, degree: int = 2, seed: int = 0):
    """Generators with entries in Z/p^N[T]: lists of polynomial coefficient lists.

    Generator 0 is diag(-1, 1); the others are I + (T-dependent) perturbations
    with unit determinant at every T in pZ_p.
    """
    rng = random.Random(seed)
    mod = p**N

    def rpoly(c0):
        return [c0 % mod] + [rng.randrange(mod) for _ in range(degree)]

    gens = [[[[mod - 1], [0]], [[0], [1]]]]
    for _ in range(n - 1):
        while True:
            a0, b0, c0, d0 = (rng.randrange(mod) for _ in range(4))
            if (a0 * d0 - b0 * c0) % p:
                break
        # perturb by p * (random polynomial): determinant stays a unit on pZ_p
        entry = lambda c0: [c0] + [p * rng.randrange(mod) % mod for _ in range(degree)]  # noqa: E731
        gens.append([[entry(a0), entry(b0)], [entry(c0), entry(d0)]])
    return gens


def eval_poly(poly, t: int, mod: int) -> int:
    v = 0
    for c in reversed(poly):
        v = (v * t + c) % mod
    return v


def specialize_family(gens, t: int, p: int, N: int) -> MatrixGroupSample:
    mod = p**N
    R = ZmodPN(p, N)
    mats = [tuple(tuple(eval_poly(e, t, mod) for e in row) for row in g) for g in gens]
    return MatrixGroupSample(R, mats, (0,))


def poly_mul(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % mod
    return out


def poly_add(a, b, mod):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [(x + y) % mod for x, y in zip(a, b)]


def family_trace_poly(gens, w, p: int, N: int):
    """Trace of the word as an explicit polynomial in T over Z/p^N (inverses not supported)."""
    mod = p**N
    M = [[[1], [0]], [[0], [1]]]
    for g in w:
        if g < 0:
            raise DomainError("polynomial oracle handles positive words only")
        G = gens[g]
        M = [[poly_add(poly_mul(M[i][0], G[0][j], mod), poly_mul(M[i][1], G[1][j], mod), mod)
              for j in range(2)] for i in range(2)]
    return poly_add(M[0][0], M[1][1], mod)


def reduce_mod_quadratic(poly, c1: int, c2: int, mod: int):
    """Remainder of poly by the monic (T - c1)(T - c2), as (a, b) for a + bT."""
    s, pr = c1 + c2, c1 * c2
    r = list(poly)
    for deg in range(len(r) - 1, 1, -1):
        lead = r[deg]
        r[deg] = 0
        # T^deg = T^(deg-2) * (s T - pr)
        r[deg - 1] = (r[deg - 1] + lead * s) % mod
        r[deg - 2] = (r[deg - 2] - lead * pr) % mod
    r += [0, 0]
    return (r[0] % mod, r[1] % mod)
