import random

from padicmf.linalg import charpoly, charpoly_leverrier


def test_charpoly_small():
    assert charpoly([[1, 0], [0, 5]]) == [1, -6, 5]
    assert charpoly([]) == [1]


def test_charpoly_matches_oracle():
    rng = random.Random(3)
    for n in range(1, 7):
        for _ in range(5):
            A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
            assert charpoly(A) == [int(c) for c in charpoly_leverrier(A)]
            mod = 5**4
            assert charpoly(A, mod) == [int(c) % mod for c in charpoly_leverrier(A)]
