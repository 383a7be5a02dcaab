"""Division-free characteristic polynomials."""

from __future__ import annotations

from fractions import Fraction


def charpoly(A, mod: int | None = None) -> list:
    """Coefficients [1, e_1, ..., e_n] of det(xI - A) = x^n + e_1 x^{n-1} + ... + e_n.

    Berkowitz's algorithm: only ring operations, so it works over Z/m.
    """
    n = len(A)
    if n == 0:
        return [1]
    red = (lambda x: x % mod) if mod else (lambda x: x)  # noqa: E731
    C = [1, red(-A[0][0])]
    for r in range(1, n):
        R = A[r][:r]
        X = [A[i][r] for i in range(r)]
        vec = [1, red(-A[r][r])]
        for _ in range(r):
            vec.append(red(-sum(a * b for a, b in zip(R, X))))
            X = [red(sum(A[i][j] * X[j] for j in range(r))) for i in range(r)]
        C = [red(sum(vec[i - j] * C[j] for j in range(max(0, i - len(vec) + 1), min(i, r) + 1)))
             for i in range(r + 2)]
    return C


def charpoly_leverrier(A) -> list:
    """Same coefficients by Newton's identities over Q (oracle; needs exact division)."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    traces = []
    for _ in range(n):
        P = [[sum(P[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        traces.append(sum(P[i][i] for i in range(n)))
    e = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * traces[i - 1] for i in range(1, k + 1))
        e.append(s / k)
    return [(-1) ** k * e[k] for k in range(n + 1)]
