from fractions import Fraction

import numpy as np
import pytest

from consheaf import _accel
from consheaf.linalg import GF2, GF3, QQ, make_field


@pytest.mark.parametrize("p", [2, 3, 7, 1_000_003])
def test_numba_and_numpy_rref_agree(p, rng):
    for _ in range(20):
        m, n = rng.integers(1, 12, size=2)
        A = rng.integers(0, p, size=(m, n), dtype=np.int64)
        R1, piv1 = _accel.rref_mod_p_numpy(A.copy(), p)
        R2, piv2 = _accel.rref_mod_p(A.copy(), p)
        assert np.array_equal(R1, R2)
        assert list(piv1) == list(piv2)


def test_rank_of_small_matrices():
    A = [[1, 1], [1, 1]]
    assert GF2.rank(GF2.asarray(A, (2, 2))) == 1
    assert GF3.rank(GF3.asarray([[1, 2], [2, 1]], (2, 2))) == 1
    assert QQ.rank(QQ.asarray([[1, 2], [2, 1]], (2, 2))) == 2


def test_rational_field_keeps_fractions():
    R, piv = QQ.rref(QQ.asarray([[2, 1], [0, 3]], (2, 2)))
    assert list(piv) == [0, 1]
    assert all(isinstance(x, Fraction) for x in R.reshape(-1))


def test_make_field_specs():
    assert make_field({"p": 3}) == GF3
    assert make_field("Q") == QQ
    assert make_field(2) == GF2


def test_numpy_fallback_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CONSHEAF_DISABLE_NUMBA="1")
    code = "from consheaf import _accel, zigzag; print(_accel.backend())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
