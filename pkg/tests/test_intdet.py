import random

import pytest

from elltowers.intdet import bareiss_det, det_int, det_mod, hadamard_bound_bits, multimodular_det


def _random_matrix(rng, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def test_known_small_determinants():
    assert bareiss_det([]) == 1
    assert bareiss_det([[7]]) == 7
    assert bareiss_det([[1, 2], [3, 4]]) == -2
    assert bareiss_det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert bareiss_det([[1, 2], [2, 4]]) == 0


def test_row_swap_sign():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1


def test_engines_agree_on_random_matrices():
    rng = random.Random(7)
    for n in (1, 2, 3, 5, 8, 12):
        for _ in range(10):
            m = _random_matrix(rng, n)
            assert bareiss_det(m) == multimodular_det(m)


def test_dispatcher_threshold():
    rng = random.Random(1)
    m = _random_matrix(rng, 6)
    assert det_int(m) == det_int(m, bareiss_threshold=0) == bareiss_det(m)


def test_rejects_non_square():
    with pytest.raises(ValueError):
        det_int([[1, 2], [3]])


def test_det_mod_matches_exact():
    import numpy as np

    rng = random.Random(3)
    p = 1073741789  # prime below 2**30
    for n in (2, 4, 7):
        m = _random_matrix(rng, n, -50, 50)
        exact = bareiss_det(m)
        assert det_mod(np.array(m, dtype=np.int64), p) == exact % p


def test_hadamard_bound_dominates():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 6)
        m = _random_matrix(rng, n, -20, 20)
        d = bareiss_det(m)
        if d:
            assert abs(d).bit_length() <= hadamard_bound_bits(m)


def test_multimodular_large_entries():
    # entries big enough that a wrong bound or overflow would corrupt CRT
    rng = random.Random(5)
    m = [[rng.randint(-(10**12), 10**12) for _ in range(4)] for _ in range(4)]
    assert multimodular_det(m) == bareiss_det(m)
