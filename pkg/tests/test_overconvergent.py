from fractions import Fraction

import pytest

from padicmf.classical import dim_Mk, miller_basis_int
from padicmf.errors import PrecisionExhausted
from padicmf.linalg import charpoly, charpoly_leverrier
from padicmf.overconvergent import (
    FredholmSeries,
    _inverse_series,
    classical_slopes,
    coleman_inclusion_check,
    dim_slope,
    direct_sum_check,
    fredholm,
    gouvea_mazur_report,
    hasse_eisenstein,
    katz_basis,
    newton_slopes,
    slopes,
    truncation_floor,
    u_matrix,
)
from padicmf.classical import _mul, _pow

P = 5


def test_katz_blocks():
    B = katz_basis(0, 3, 30, P)
    assert B.block_sizes() == [1, 0, 0, 1]
    assert B.blocks[0][0][1][:3] == (1, 0, 0)
    # alpha = 3 block: the Delta-echelon element of M_12
    assert B.blocks[3][0][0] == 1
    for alpha in range(1, 4):
        w = alpha * (P - 1)
        assert B.block_sizes()[alpha] == dim_Mk(w) - dim_Mk(w - (P - 1))


@pytest.mark.parametrize("k", [0, 4, 12, 22])
def test_direct_sum(k):
    assert all(direct_sum_check(k, a, 60, P) for a in range(1, 7))


def test_U_fixes_one():
    U = u_matrix(0, 4, 60, 5, P)
    assert U.labels[0] == (0, 0)
    assert U.entries[0][0] == 1
    assert all(U.entries[r][0] == 0 for r in range(1, U.size))


def test_columns_reproduce_U():
    # sum_r U[r][c] b_r E^{A - alpha_r} must equal E^A U(b_c E^{-beta_c}) to order M/p
    k, A, M, N = 12, 4, 120, 5
    mod = P**N
    U = u_matrix(k, A, M, N, P)
    basis = katz_basis(k, A, M, P, mod)
    vecs = [(alpha, list(b)) for alpha, block in enumerate(basis.blocks) for _, b in block]
    E = list(hasse_eisenstein(P, M, mod))
    Einv = _inverse_series(E, M, mod)
    Mp = M // P
    EA = _pow(E, A, Mp, mod)
    for c, (beta, b) in enumerate(vecs):
        f = _mul(b, _pow(Einv, beta, M, mod), M, mod)
        direct = _mul([f[P * n] for n in range(Mp + 1)], EA, Mp, mod)
        acc = [0] * (Mp + 1)
        for r, (alpha, br) in enumerate(vecs):
            t = _mul(br, _pow(E, A - alpha, Mp, mod), Mp, mod)
            acc = [(x + U.entries[r][c] * y) % mod for x, y in zip(acc, t)]
        assert acc == direct


def test_fredholm_small():
    assert fredholm([[0, 0], [0, 0]], 4, P).coeffs == [1, 0, 0]
    Pd = fredholm([[1, 0], [0, P]], 4, P)
    assert Pd.coeffs == [1, (-6) % 625, 5]
    assert [(s, m) for s, m in newton_slopes(Pd).slopes] == [(0, 1), (1, 1)]
    assert newton_slopes(FredholmSeries(P, 4, [1])).slopes == []


def test_delta_block_slopes():
    # U on span{Delta, Delta|V}: X^2 - tau(5) X + 5^11
    Pd = FredholmSeries(P, 14, [1, (-4830) % 5**14, 5**11])
    assert [s for s, _ in newton_slopes(Pd).slopes] == [1, 10]


def test_k0_stable_under_enlargement():
    a = slopes(0, P, 8, 200, 6, cross_check=False).polygon
    b = slopes(0, P, 12, 300, 6, cross_check=False).polygon
    bound = min(a.certified_bound, b.certified_bound)
    assert [x for x in a.slopes if x[0] < bound] == [x for x in b.slopes if x[0] < bound]
    assert [s for s, _ in a.slopes][:2] == [0, 1]


def test_k12_slopes():
    rep = slopes(12, P, 8, 200, 6)
    assert rep.cross_check
    assert rep.polygon.slopes == [(0, 1), (1, 1)]
    assert rep.polygon.certified_bound == Fraction(5, 2)
    with pytest.raises(PrecisionExhausted):
        rep.polygon.multiplicity(10)


def test_dim_slope():
    assert dim_slope(12, 0, P) == 1
    assert dim_slope(12, 1, P) >= 1
    assert dim_slope(12, -1, P) == 0
    assert dim_slope(8, 0, P) >= 1


def test_gm_report_equal_weights():
    r = gouvea_mazur_report(12, 12, 1, P)
    assert all(row["d_k"] == row["d_k2"] for row in r["rows"])


def test_gm_report_hypothesis_not_met():
    r = gouvea_mazur_report(12, 16, 1, P)
    assert any(row["status"] == "hypothesis not met" for row in r["rows"])


def test_classical_slopes():
    assert classical_slopes(12, P) == [0, 1, 10, 11]
    assert classical_slopes(4, P) == [0, 3]
    assert classical_slopes(24, 11) == [0, 1, 1, 22, 22, 23]


def test_coleman_inclusion():
    r = coleman_inclusion_check(12, P)
    assert r["ok"] and r["all_classical_slopes_at_most_k_minus_1"]
    found = {row["slope"] for row in r["rows"] if row["status"] == "found"}
    assert found == {"0", "1"}
    r4 = coleman_inclusion_check(4, P)
    assert r4["ok"]


def test_conjugation_invariance():
    # rescaling the coordinates by r^alpha conjugates U by a diagonal matrix
    U = u_matrix(12, 3, 80, 5, P)
    A = U.entries
    scale = [Fraction(P) ** (alpha // 2) for alpha, _ in U.labels]
    C = [[A[i][j] * scale[j] / scale[i] for j in range(U.size)] for i in range(U.size)]
    assert charpoly_leverrier(C) == charpoly_leverrier(A)
    assert [int(c) for c in charpoly_leverrier(A)] == charpoly(A)


def test_truncation_floor():
    assert truncation_floor(5, 8) == 5
    assert truncation_floor(5, 12) == Fraction(23, 3)
