"""Property tests for the invariants of every module."""

from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from padicmf.cli import lambda_qexp_from_record, lambda_qexp_record, padic_from_record, padic_record
from padicmf.lambda_adic import LambdaElement, LambdaQExpansion, LambdaRing, one_plus_T_pow, specialize
from padicmf.padic import (
    PadicNumber,
    WeightCharacter,
    eval_character,
    hensel_unit_root,
    one_unit_power,
    teichmuller,
)
from padicmf.pseudorep import check_axioms, from_representation, random_generators, sample_words
from padicmf.qseries import QQ, QExpansion, from_text, frob, hecke_T, norm_p, op_U, op_V, split_frob_kernel, to_text

primes = st.sampled_from([5, 7, 11, 13])
rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**4))


def padics(p, prec=8):
    return rationals.map(lambda x: PadicNumber.from_rational(x, p, prec))


def qexps(M=30, lo=-50, hi=50):
    return st.lists(st.integers(lo, hi), min_size=M + 1, max_size=M + 1).map(
        lambda c: QExpansion.from_list([Fraction(x) for x in c], QQ))


# -- padic-core -------------------------------------------------------------


@given(primes, st.integers(1, 10), st.data())
def test_teichmuller_root_of_unity(p, N, data):
    x = data.draw(st.integers(1, p - 1))
    w = teichmuller(x, p, N).residue()
    assert pow(w, p - 1, p**N) == 1 and w % p == x


@given(primes, st.data())
def test_ring_axioms(p, data):
    x, y, z = (data.draw(padics(p)) for _ in range(3))
    s = x + y
    assert s.congruent(y + x, s.absprec)
    assert (x * y).congruent(y * x, (x * y).absprec)
    assert ((x + y) * z).congruent(x * z + y * z, min((x * z).absprec, (y * z).absprec))
    assert s.absprec >= min(x.absprec, y.absprec)
    assert s.absprec <= min(x.absprec, y.absprec) or x.is_zero() or y.is_zero()


@given(primes, st.integers(1, 10**6), st.data())
def test_hensel_root(p, a, data):
    assume(a % p)
    c = p * data.draw(st.integers(0, 10**6))
    N = 6
    al = hensel_unit_root(a, c, N, p=p)
    assert al.val == 0
    mod = p**N
    r = al.residue()
    assert (r * r - a * r + c) % mod == 0
    if c:
        beta = PadicNumber.from_rational(c, p, N) / al
        assert beta.val == PadicNumber.from_rational(c, p, N).val


@given(primes, st.integers(0, 5), rationals, st.data())
def test_character_multiplicative(p, i, s, data):
    assume(s.denominator % p)
    chi = WeightCharacter(p, i, s)
    x = data.draw(st.integers(1, 10**5).filter(lambda v: v % p))
    y = data.draw(st.integers(1, 10**5).filter(lambda v: v % p))
    N = 5
    assert (chi(x, N) * chi(y, N)).congruent(chi(x * y, N), N)


@given(primes, rationals, rationals, st.integers(1, 40))
def test_one_unit_power_additive(p, s, t, m):
    assume(s.denominator % p and t.denominator % p)
    y = 1 + p * m
    N = 5
    lhs = one_unit_power(y, s + t, N, p)
    rhs = one_unit_power(y, s, N, p) * one_unit_power(y, t, N, p)
    assert lhs.congruent(rhs, N)


# -- qseries ------------------------------------------------------------------


@given(qexps(), st.sampled_from([2, 3, 5, 7]))
def test_U_after_V(f, p):
    assert op_U(op_V(f, p), p).equals(f)


@given(qexps(40), qexps(40))
def test_frob_projection_formula(f, g):
    p = 5
    lhs = op_U(frob(f, p, cap=40) * g, p)
    rhs = f.truncate(40 // p) * op_U(g, p)
    assert lhs.equals(rhs)


@given(qexps(60))
def test_hecke_commute(f):
    p, N = 7, 4
    f = f.to_padic(p, N).with_weight(WeightCharacter.integer(p, 4))
    a = hecke_T(hecke_T(f, 2), 3)
    b = hecke_T(hecke_T(f, 3), 2)
    assert a.equals(b, 60 // 6)


@given(qexps(40))
def test_split_idempotent(f):
    p = 5
    g, h = split_frob_kernel(f, p)
    assert op_U(h, p).is_zero()
    g2, h2 = split_frob_kernel(g, p)
    assert g2.equals(g) and h2.is_zero()


@given(qexps(20, -10**4, 10**4), qexps(20, -10**4, 10**4), st.integers(0, 3))
def test_norm_ultrametric(f, g, e):
    p = 5
    g = g.scale(Fraction(1, p**e))
    nf, ng, ns = norm_p(f, p), norm_p(g, p), norm_p(f + g, p)
    assert ns <= max(nf, ng)
    if nf != ng:
        assert ns == max(nf, ng)


@given(qexps(15, -10**5, 10**5), primes)
def test_text_roundtrip(f, p):
    assert from_text(to_text(f)).equals(f)
    fp = f.to_padic(p, 6)
    assert from_text(to_text(fp)).equals(fp)


# -- lambda -------------------------------------------------------------------


def lam_elems(p, N, MT):
    return st.lists(st.integers(0, p**N - 1), min_size=MT, max_size=MT).map(
        lambda c: LambdaElement.from_coeffs(c, p, N, MT))


@given(st.data(), st.integers(1, 12))
def test_specialize_is_homomorphism(data, k):
    p, N, MT, M = 5, 4, 5, 8
    ring = LambdaRing(p, N, MT)
    F = LambdaQExpansion([data.draw(lam_elems(p, N, MT)) for _ in range(M + 1)], ring)
    G = LambdaQExpansion([data.draw(lam_elems(p, N, MT)) for _ in range(M + 1)], ring)
    assert specialize(F * G, k).equals(specialize(F, k) * specialize(G, k))
    assert specialize(F + G, k).equals(specialize(F, k) + specialize(G, k))


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_one_plus_T_pow_additive(s, t):
    p, MT, N = 5, 6, 4
    a = one_plus_T_pow(s, MT, N, p) * one_plus_T_pow(t, MT, N, p)
    assert a == one_plus_T_pow(s + t, MT, N, p)


@given(st.data())
def test_lambda_record_roundtrip(data):
    p, N, MT = 7, 3, 4
    ring = LambdaRing(p, N, MT)
    cs = [data.draw(lam_elems(p, N, MT)) for _ in range(4)]
    F = LambdaQExpansion(cs, ring, 2)
    G = lambda_qexp_from_record(lambda_qexp_record(F))
    assert all(a == b for a, b in zip(F.coeffs, G.coeffs)) and G.nebentypus == 2


@given(primes, rationals, st.integers(1, 10))
def test_padic_record_roundtrip(p, x, prec):
    a = PadicNumber.from_rational(x, p, prec)
    b = padic_from_record(padic_record(a))
    assert b.val == a.val and b.unit == a.unit and b.absprec == a.absprec


# -- pseudorep ----------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_representation_axioms(seed):
    rho = random_generators(5, 4, 3, seed=seed)
    words = sample_words(3, 25, seed=seed)
    rep = check_axioms(from_representation(rho), words, 60, seed=seed)
    assert rep.ok, rep
