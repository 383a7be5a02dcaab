from fractions import Fraction

import pytest

from padicmf.classical import (
    decompose_by_weight,
    delta,
    dim_Mk,
    eisenstein_E,
    eisenstein_G,
    eisenstein_G_star,
    miller_basis,
    sigma,
    sigma_star,
    tau,
)
from padicmf.errors import InsufficientOrder
from padicmf.qseries import QExpansion, hecke_T_classical


def product_delta(M):
    """q prod (1 - q^n)^24 by direct polynomial multiplication."""
    c = [0] * (M + 1)
    c[1] = 1
    for n in range(1, M + 1):
        for _ in range(24):
            for i in range(M, n - 1, -1):
                c[i] -= c[i - n]
    return c


def test_sigma():
    assert sigma(6, 3) == 252
    assert sigma(1, 7) == 1
    assert sigma_star(5, 3, 5) == 1
    assert sigma_star(10, 1, 5) == 3


@pytest.mark.parametrize("k,d", [(0, 1), (2, 0), (4, 1), (12, 2), (14, 1), (24, 3), (26, 2)])
def test_dim(k, d):
    assert dim_Mk(k) == d


def test_delta_matches_product():
    ref = product_delta(60)
    assert list(delta(60).coeffs) == ref
    assert tau(2) == -24 and tau(5) == 4830 and tau(11) == 534612 and tau(1) == 1


def test_eisenstein_constants():
    assert eisenstein_G(4, 3).coeffs[0] == Fraction(1, 240)
    assert all(eisenstein_G(k, 2).coeffs[1] == 1 for k in (4, 6, 8, 10, 12))
    E4 = eisenstein_E(4, 10)
    assert all(E4.coeffs[n] == 240 * sigma(n, 3) for n in range(1, 11))


def test_G_star():
    f = eisenstein_G_star(4, 10, 5)
    assert f.coeffs[0] == Fraction(-31, 60)
    assert f.coeffs[1] == 1 and f.coeffs[5] == 1


def test_G2_is_quasimodular():
    with pytest.warns(UserWarning):
        eisenstein_G(2, 5)


def test_miller_basis_shapes():
    assert miller_basis(0, 5).dimension == 1
    assert miller_basis(2, 5).dimension == 0
    B = miller_basis(12, 20)
    assert B.dimension == 2
    assert list(B.elements[1].coeffs) == product_delta(20)


@pytest.mark.parametrize("k", [4, 12, 24, 36, 50])
def test_miller_echelon(k):
    B = miller_basis(k, 30)
    d = B.dimension
    for i, f in enumerate(B.elements):
        assert [f.coeffs[j] for j in range(d)] == [int(i == j) for j in range(d)]


def test_delta_hecke_eigen():
    D = delta(80)
    for l in (2, 3, 5, 7):
        assert hecke_T_classical(D, l, 12).equals(D.scale(tau(l)), 80 // l)


def test_decompose_delta():
    out = decompose_by_weight(delta(30), 12)
    assert [k for k, _ in out] == [12]
    assert out[0][1].equals(delta(30))


def test_decompose_divided_congruence():
    E4 = eisenstein_E(4, 10)
    f = (E4 - QExpansion.from_list([1] + [0] * 10)).scale(Fraction(1, 5))
    out = dict(decompose_by_weight(f, 4))
    assert out[0].coeffs[0] == Fraction(-1, 5)
    assert out[4].equals(E4.scale(Fraction(1, 5)))


def test_decompose_failure():
    f = QExpansion.from_list([0, 1, 1])
    assert decompose_by_weight(f, 4) is None


def test_decompose_insufficient_order():
    with pytest.raises(InsufficientOrder):
        decompose_by_weight(delta(2), 24)


def test_decompose_sums_back():
    f = delta(40) + eisenstein_E(4, 40) * eisenstein_E(6, 40) + eisenstein_E(4, 40).scale(3)
    parts = decompose_by_weight(f, 12)
    total = QExpansion.zero(40)
    for _, g in parts:
        total = total + g
    assert total.equals(f)
