from fractions import Fraction

import pytest

from padicmf.classical import delta, eisenstein_G
from padicmf.errors import NonOrdinaryError, PrecisionExhausted
from padicmf.ordinary import (
    Eigenform,
    closed_form_projector,
    idempotent_limit,
    mat_mul,
    ordinary_project,
    ordinary_project_formula,
    p_stabilize,
    slope,
    u_matrix_on_pair,
)
from padicmf.padic import PadicNumber
from padicmf.qseries import op_U


def delta_form(M=60):
    D = delta(M)
    return lambda p: Eigenform(12, D.coeffs[p], 1, D)


def test_slope_examples():
    assert slope(PadicNumber.from_rational(5, 5, 4)) == 1
    assert slope(PadicNumber.from_rational(3, 5, 4)) == 0
    with pytest.raises(PrecisionExhausted):
        slope(PadicNumber.zero(5, 4))


def test_delta_p11_alpha():
    pair = p_stabilize(delta_form()(11), 11, 6)
    assert pair.alpha.residue() % 121 == 34
    assert pair.slopes == (0, 11)


def test_delta_p5_slopes():
    # tau(5) = 4830 has 5-adic valuation 1, so both roots have positive slope
    pair = p_stabilize(delta_form()(5), 5, 6)
    assert pair.slopes == (1, 10)
    with pytest.raises(NonOrdinaryError):
        ordinary_project(delta_form()(5), 5, 6)


def test_eisenstein_stabilization():
    k, p = 4, 7
    G = eisenstein_G(k, 50)
    pair = p_stabilize(Eigenform(k, 1 + p ** (k - 1), 1, G), p, 5)
    assert pair.alpha.residue() == 1
    assert pair.slopes == (0, k - 1)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_slope_sum(p):
    pair = p_stabilize(delta_form(80)(p), p, 5)
    assert sum(pair.slopes) == 11


def test_ordinary_projection_delta():
    p, N = 11, 6
    f = delta_form(480)(p)
    fe = ordinary_project(f, p, N).truncate(440)
    pair = p_stabilize(f, p, N)
    Ufe = op_U(fe, p)
    assert Ufe.equals(fe.truncate(40).scale(pair.alpha), 40)
    assert fe.equals(ordinary_project_formula(f, p, N).truncate(440))


def test_projection_moves_delta():
    # f|e - f = (multiple of beta), v(beta) = 11: visible only beyond 11 digits
    p = 11
    f = delta_form(40)(p)
    assert ordinary_project(f, p, 6).equals(f.qexp.to_padic(p, 6))
    fe = ordinary_project(f, p, 13)
    d = fe - f.qexp.to_padic(p, 13)
    assert not d.is_zero()
    assert d.valuation(p) == 11


def test_projection_fixes_stabilized_form():
    p, N = 11, 5
    f = delta_form(300)(p)
    pair = p_stabilize(f, p, N)
    scalar = pair.alpha / (pair.alpha - pair.beta)
    fe = ordinary_project(f, p, N)
    # applying e again multiplies f_alpha by nothing new: e(f|e) = f|e
    assert fe.equals(pair.f_alpha.scale(scalar))


def test_idempotent_limit_trivial():
    I = [[1, 0], [0, 1]]
    assert idempotent_limit(I, 5, 4) == I
    assert idempotent_limit([[0, 0], [0, 0]], 5, 4) == [[0, 0], [0, 0]]


@pytest.mark.parametrize("N", [4, 6])
def test_idempotent_limit_matches_closed_form(N):
    p = 11
    f = delta_form()(p)
    A = u_matrix_on_pair(f, p, N)
    E = idempotent_limit(A, p, N)
    mod = p**N
    assert E == closed_form_projector(f, p, N)
    assert mat_mul(E, E, mod) == E
    assert mat_mul(A, E, mod) == mat_mul(E, A, mod)
