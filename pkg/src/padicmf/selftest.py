"""Quick invariant checks, runnable without pytest (``padicmf selftest``)."""

from __future__ import annotations

import random
from fractions import Fraction


def _check(name, fn):
    try:
        ok, detail = fn()
    except Exception as e:  # report, never crash the suite
        ok, detail = False, f"{type(e).__name__}: {e}"
    return {"name": name, "ok": bool(ok), "detail": detail}


def run(seed: int = 0) -> list:
    from .classical import delta, eisenstein_E, tau
    from .linalg import charpoly, charpoly_leverrier
    from .padic import PadicNumber, valuation
    from .pseudorep import check_axioms, from_representation, random_generators
    from .qseries import QQ, QExpansion, from_text, hecke_T_classical, op_U, op_V, to_text
    from .zeta import bernoulli, bernoulli_recurrence, kl_zeta

    rng = random.Random(seed)
    out = []

    def bern():
        ref = bernoulli_recurrence(60)
        return all(bernoulli(n) == ref[n] for n in range(61)), "B_0..B_60 match the recurrence"

    def hasse():
        bad = [p for p in (5, 7, 11, 13)
               if any(c != (n == 0) and valuation(c - (n == 0), p) < 1
                      for n, c in enumerate(eisenstein_E(p - 1, 100).coeffs))]
        return not bad, "E_{p-1} = 1 mod p to q^100"

    def padic_field():
        p = 7
        for _ in range(50):
            a = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
            b = Fraction(rng.randint(1, 999), rng.randint(1, 99))
            x, y = PadicNumber.from_rational(a, p, 6), PadicNumber.from_rational(b, p, 6)
            if not ((x + y) - y).congruent(x, 5):
                return False, f"add/sub at {a}, {b}"
            if not ((x * y) / y).congruent(x, x.absprec - 1 if x.absprec != float("inf") else 5):
                return False, f"mul/div at {a}, {b}"
        return True, "ring identities on 50 random pairs"

    def delta_eigen():
        D = delta(60)
        for l in (2, 3, 5, 7):
            if not hecke_T_classical(D, l, 12).equals(D.scale(tau(l)), 60 // l):
                return False, f"T({l})"
        return True, "Delta | T(l) = tau(l) Delta, l = 2, 3, 5, 7"

    def uv():
        f = QExpansion.from_list([Fraction(rng.randint(-9, 9)) for _ in range(41)], QQ)
        return op_U(op_V(f, 5), 5).equals(f.truncate(40)), "U V = id"

    def text_roundtrip():
        f = delta(20).to_padic(11, 5)
        return from_text(to_text(f)).equals(f), "p-adic text round trip"

    def kummer():
        a = kl_zeta(5, 2, Fraction(-1, 3), 3)
        b = kl_zeta(5, 2, Fraction(-1, 3), 3, aux_shift=1)
        return a.congruent(b, a.absprec), "auxiliary weight independence"

    def charpolys():
        A = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        return charpoly(A) == [int(c) for c in charpoly_leverrier(A)], "Berkowitz vs Newton identities"

    def pseudo():
        rho = random_generators(5, 4, 3, seed=seed)
        rep = check_axioms(from_representation(rho), rho.sample_words(30, seed=seed), 100, seed=seed)
        return rep.ok, f"{rep.checked} tuples"

    for name, fn in [("bernoulli", bern), ("hasse", hasse), ("padic", padic_field),
                     ("delta-hecke", delta_eigen), ("UV", uv), ("text-format", text_roundtrip),
                     ("kummer", kummer), ("charpoly", charpolys), ("pseudorep-axioms", pseudo)]:
        out.append(_check(name, fn))
    return out
