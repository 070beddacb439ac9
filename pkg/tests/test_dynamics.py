import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doccalc import dynamics as dy
from doccalc.errors import DomainError, SingularStep

finite = st.floats(min_value=-5, max_value=5, allow_nan=False)


def test_step_examples():
    assert dy.step(1.0, 3.0, 1.0) == -2.0
    for c in (0.5, -3.0, 7.25):
        assert dy.step(c, c, 0.0) == c
    with pytest.raises(SingularStep):
        dy.step(1.0, 2.0, 1.0)


def test_orbit_hand_values():
    r = dy.iterate(dy.OrbitParams(1.0, 3.0, 1.0, max_steps=3))
    # (1 - 3*(-2)) / (-2 - 6) = -7/8 ; (1 - (-2)(-7/8)) / (-7/8 + 4) = -6/25
    assert r.samples[:4] == (1.0, 3.0, -2.0, -0.875)
    assert r.samples[4] == float(Fraction(1) - Fraction(-2) * Fraction(-7, 8)) / float(Fraction(-7, 8) + 4)


def test_constant_orbit_bounded():
    r = dy.iterate(dy.OrbitParams(0.5, 0.5, 0.0, max_steps=10))
    assert r.classification == dy.BOUNDED
    assert set(r.samples) == {0.5}
    assert len(r.samples) == 12 and r.terminal_step == 11


def test_singular_classification():
    r = dy.iterate(dy.OrbitParams(1.0, 2.0, 1.0))
    assert r.classification == dy.SINGULAR and r.terminal_step == 2 and r.samples == (1.0, 2.0)


def test_escape_classification():
    r = dy.iterate(dy.OrbitParams(1.0, 2.0 + 1e-9, 1.0))
    assert r.classification == dy.ESCAPED
    assert abs(r.samples[r.terminal_step]) > dy.DEFAULT_ESCAPE
    assert r.max_abs == abs(r.samples[r.terminal_step])


def test_escape_on_initial_value():
    r = dy.iterate(dy.OrbitParams(1e9, 0.0, 1.0))
    assert r.classification == dy.ESCAPED and r.terminal_step == 0


@pytest.mark.parametrize("args", [(1.0, 3.0, -2.0, 1.0), (0.7, 0.7, 0.7, 0.0), (0.0, 1.0, 1.0, 1.0)])
def test_residual_examples(args):
    assert dy.residual(*args) == 0.0


@given(finite, finite, st.floats(min_value=-3, max_value=3, allow_nan=False))
def test_residual_of_step_is_rounding_small(d0, d1, k):
    try:
        d2 = dy.step(d0, d1, k)
    except SingularStep:
        return
    if not math.isfinite(d2) or abs(d2) > 1e12:
        return
    scale = max(1.0, abs(k), abs(d0 * d1), abs(d2 * d1), abs(d2 * d0))
    assert abs(dy.residual(d0, d1, d2, k)) <= 1e-12 * scale


def test_parse_grid():
    g = dy.parse_grid("-2:2:5")
    assert list(g) == [-2.0, -1.0, 0.0, 1.0, 2.0]
    for bad in ["1:2", "a:b:3", "0:1:1"]:
        with pytest.raises(DomainError):
            dy.parse_grid(bad)


def test_scan_matches_scalar_iteration():
    g = dy.parse_grid("-2:2:13")
    rows = dy.scan(g, g, 1.0, max_steps=400)
    for row in rows:
        for c in row:
            r = dy.iterate(dy.OrbitParams(c.d0, c.d1, 1.0, max_steps=400))
            assert (c.classification, c.terminal_step, c.max_abs) == (r.classification, r.terminal_step, r.max_abs)


def test_small_grid_around_fixed_point_bounded():
    # at k=0 the reciprocal 1/delta is an arithmetic progression, so a perturbed
    # orbit drifts towards a pole; (0.5, 0.501) reaches it near step 500
    rows = dy.scan([0.5, 0.5 + 1e-3], [0.5, 0.5 + 1e-3], 0.0, max_steps=100)
    assert {c.classification for row in rows for c in row} == {dy.BOUNDED}


def test_k_zero_reciprocal_is_linear():
    d0, d1 = Fraction(1, 2), Fraction(1, 3)
    u0, u1 = 1 / d0, 1 / d1
    for n in range(2, 30):
        d0, d1 = d1, (0 - d0 * d1) / (d1 - 2 * d0)
        assert 1 / d1 == u0 + n * (u1 - u0)


def test_scan_is_deterministic():
    g = dy.parse_grid("-2:2:21")
    a = dy.scan_csv(dy.scan(g, g, 1.0, max_steps=300))
    b = dy.scan_csv(dy.scan(g, g, 1.0, max_steps=300))
    assert a == b


def test_csv_shapes():
    r = dy.iterate(dy.OrbitParams(1.0, 1.0, 0.0, max_steps=3))
    assert dy.orbit_csv(r) == "step,delta\n0,1\n1,1\n2,1\n3,1\n4,1\n"
    rows = dy.scan(np.array([0.0, 1.0]), np.array([0.0, 1.0]), 0.0, max_steps=2)
    lines = dy.scan_csv(rows).splitlines()
    assert lines[0] == "d0,d1,k,classification,terminal_step,max_abs"
    assert len(lines) == 5


def test_params_validation():
    with pytest.raises(DomainError):
        dy.OrbitParams(0.0, 0.0, 0.0, max_steps=0)
    with pytest.raises(DomainError):
        dy.OrbitParams(0.0, 0.0, 0.0, escape_threshold=-1)


def test_format_real():
    assert dy.format_real(-2.0) == "-2"
    assert dy.format_real(-0.875) == "-0.875"
    assert dy.format_real(math.inf) == "inf"


# -- scalar laws --------------------------------------------------------------

def test_increment_orbit_exact_for_square_k():
    xs = dy.scalar_increment_orbit(0, Fraction(9, 4), [1, 1, -1])
    assert xs == [0, Fraction(3, 2), 3, Fraction(3, 2)]
    assert all((b - a) ** 2 == Fraction(9, 4) for a, b in zip(xs, xs[1:]))


def test_increment_orbit_errors():
    with pytest.raises(DomainError):
        dy.scalar_increment_orbit(0, -1, [1])
    with pytest.raises(DomainError):
        dy.scalar_increment_orbit(0, 1, [2])


def test_pair_products_exclude_zero_unless_k_zero():
    assert dy.scalar_pair_products(4) == {4, -4}
    assert 0 not in dy.scalar_pair_products(Fraction(1, 9))
    assert dy.scalar_pair_products(0) == {0}
