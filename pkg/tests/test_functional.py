import math

import numpy as np
import pytest

from dickesim import (
    EmitterGeometry,
    build_functional,
    extract_gm,
    fully_excited,
    g_m_closed_coincident,
    g_m_exact,
)

KD = 2 * math.pi


def test_constant_term_is_one():
    g = EmitterGeometry(3, KD)
    poly = build_functional(g, [0.2, -0.7])
    assert poly.coefficient((0, 0), (0, 0)) == pytest.approx(1.0)


def test_single_emitter_single_angle():
    g = EmitterGeometry(1, KD)
    poly = build_functional(g, [0.4])
    # 1 - f1 f1*: exactly two terms
    assert len(poly.terms) == 2
    assert poly.coefficient((0,), (0,)) == pytest.approx(1.0)
    assert poly.coefficient((1,), (1,)) == pytest.approx(-1.0)


def test_two_atom_coincidence_from_coefficient():
    g = EmitterGeometry(2, KD)
    theta1, theta2 = 0.0, -0.5
    x = g.kd * (math.sin(theta1) - math.sin(theta2))
    poly = build_functional(g, [theta1, theta2])
    assert extract_gm(poly, (1, 1)) == pytest.approx(2 * (1 + math.cos(x)), abs=1e-12)


def test_hermiticity_of_terms():
    g = EmitterGeometry(4, KD)
    poly = build_functional(g, [0.3, 1.0, -0.8])
    for (a, b), coeff in poly.terms.items():
        assert poly.coefficient(b, a) == pytest.approx(coeff.conjugate(), abs=1e-12)


def test_total_degree_bounded():
    n = 4
    g = EmitterGeometry(n, KD)
    poly = build_functional(g, [0.1, 0.9])
    for (a, b) in poly.terms:
        assert sum(a) <= n and sum(b) <= n
    # exact count of achievable exponent pairs: factors each contribute
    # degree (0,0) or (1,1) split over two variables
    max_terms = (math.comb(n + 2, 2)) ** 2
    assert len(poly.terms) <= max_terms


def test_extract_beyond_emitter_count_is_zero():
    n = 3
    g = EmitterGeometry(n, KD)
    poly = build_functional(g, [0.2, 0.6])
    assert extract_gm(poly, (n + 1, 0)) == 0.0


def test_extract_validates_multiplicities():
    g = EmitterGeometry(2, KD)
    poly = build_functional(g, [0.2, 0.6])
    with pytest.raises(ValueError):
        extract_gm(poly, (1,))
    with pytest.raises(ValueError):
        extract_gm(poly, (0, 0))
    with pytest.raises(ValueError):
        extract_gm(poly, (-1, 2))


def test_angle_count_cap():
    g = EmitterGeometry(2, KD)
    with pytest.raises(ValueError):
        build_functional(g, [0.1, 0.2, 0.3, 0.4, 0.5])
    with pytest.raises(ValueError):
        build_functional(g, [])


def test_coincident_extraction_matches_closed_form():
    rng = np.random.default_rng(5)
    for n in (2, 4, 6, 8):
        g = EmitterGeometry(n, KD)
        theta1, theta2 = rng.uniform(-1.4, 1.4, size=2)
        poly = build_functional(g, [float(theta1), float(theta2)])
        x = g.kd * (math.sin(theta1) - math.sin(theta2))
        for m in range(1, n + 1):
            assert extract_gm(poly, (m - 1, 1)) == pytest.approx(
                g_m_closed_coincident(n, m, x), rel=1e-9
            )


def test_three_angle_patterns_match_exact_engine():
    rng = np.random.default_rng(9)
    for n in (3, 5):
        g = EmitterGeometry(n, KD)
        st = fully_excited(n)
        angles = [float(t) for t in rng.uniform(-1.4, 1.4, size=3)]
        poly = build_functional(g, angles)
        for mults in [(1, 1, 1), (2, 0, 1), (0, 3, 0), (1, 2, 0)]:
            if sum(mults) > n:
                continue
            det = sum(((a,) * k for a, k in zip(angles, mults)), ())
            assert extract_gm(poly, mults) == pytest.approx(
                g_m_exact(g, det, st), rel=1e-9, abs=1e-12
            )
