from fractions import Fraction

import numpy as np
import pytest

from pathlift.certify import (ALPHA_CERT, alpha, alpha_many, contraction_B,
                              duplicate_radius, same_root)
from pathlift.complexpoly import evaluate, expand_factors
from pathlift.errors import DerivativeVanishes
from pathlift.oracle import oracle_roots

from _util import random_disk

Z2M1 = np.array([-1, 0, 1], dtype=complex)


def test_alpha_hand_values(backend):
    # f = 3, f' = 4, f''/2 = 1 at z = 2
    r = alpha(Z2M1, 2)
    assert r.alpha == pytest.approx(0.1875, rel=1e-15)
    assert r.argmax_k == 2
    assert r.newton_step == pytest.approx(0.75)
    # f = 0.0201, f' = 2.02 at z = 1.01
    r = alpha(Z2M1, 1.01)
    assert r.alpha == pytest.approx(0.0201 / 2.02 ** 2, rel=1e-12)
    assert r.alpha == pytest.approx(0.004926, abs=1e-6)
    assert r.alpha < ALPHA_CERT < alpha(Z2M1, 2).alpha


def test_alpha_linear_is_zero():
    for z in (0, 1.5j, -3 + 2j):
        assert alpha([0.3 - 1j, 2 + 1j], z).alpha == 0


def test_alpha_at_exact_root_is_zero():
    p = np.array([-0.25, 0, 1], dtype=complex)
    assert evaluate(p, 0.5) == 0
    assert alpha(p, 0.5).alpha == 0


def test_alpha_derivative_vanishes():
    with pytest.raises(DerivativeVanishes):
        alpha(Z2M1, 0)
    np.testing.assert_array_equal(np.isnan(alpha_many(Z2M1, [0, np.nan, 2])),
                                  [True, True, False])


def test_alpha_many_matches_scalar(rng, backend):
    p = np.append(random_disk(rng, 6), 1)
    z = random_disk(rng, 20, radius=1.2)
    np.testing.assert_array_equal(alpha_many(p, z), [alpha(p, zi).alpha for zi in z])


def test_alpha_scale_invariance_exact(rng):
    # scalings 2^k i^m are exact in floating point, so alpha agrees to 1 ulp
    for _ in range(50):
        d = int(rng.integers(2, 9))
        p = np.append(random_disk(rng, d), 1)
        z = complex(random_disk(rng, 1, radius=1.2)[0])
        base = alpha(p, z).alpha
        c = 2.0 ** int(rng.integers(-40, 40)) * 1j ** int(rng.integers(0, 4))
        assert abs(alpha(c * p, z).alpha - base) <= np.spacing(base)


def test_alpha_scale_invariance_general(rng):
    for _ in range(50):
        d = int(rng.integers(2, 9))
        p = np.append(random_disk(rng, d), 1)
        z = complex(random_disk(rng, 1, radius=1.2)[0])
        c = complex(*rng.normal(size=2)) * 10.0 ** rng.uniform(-5, 5)
        assert alpha(c * p, z).alpha == pytest.approx(alpha(p, z).alpha, rel=1e-12)


def test_certified_points_follow_newton_envelope(rng):
    checked = 0
    for _ in range(60):
        d = int(rng.integers(2, 9))
        roots = random_disk(rng, d, radius=0.75)
        psi = expand_factors(roots)
        zeta = oracle_roots(psi).roots
        starts = np.repeat(zeta, 6) + random_disk(rng, 6 * d, radius=0.2)
        for z0, a in zip(starts, alpha_many(psi, starts)):
            if not a < ALPHA_CERT:
                continue
            ref = zeta[np.argmin(np.abs(zeta - z0))]
            e0 = abs(z0 - ref)
            z = z0
            for n in range(1, 7):
                z = z - evaluate(psi, z) / evaluate(np.polynomial.polynomial.polyder(psi), z)
                assert abs(z - ref) <= 8 * 0.5 ** (2 ** n) * e0 + 1e-13
            checked += 1
    assert checked > 50


def test_contraction_B_values():
    assert contraction_B(0) == 0
    r = Fraction(3, 37)
    exact = 2 * r * (1 + r) ** 3 / (1 - r) ** 5
    assert exact == Fraction(444000, 1419857)
    assert contraction_B(3 / 37) == pytest.approx(float(exact), rel=1e-14)
    assert contraction_B(3 / 37) <= 0.31271
    for bad in (-0.01, 0.148, 1):
        with pytest.raises(ValueError):
            contraction_B(bad)


def test_same_root_examples():
    assert same_root(Z2M1, 1 + 1e-9, 1 + 1e-9)
    assert same_root(Z2M1, 1 + 1e-9, 1 + 1e-8)
    assert duplicate_radius(Z2M1, 1 + 1e-8) == pytest.approx(3e-8, rel=1e-6)
    assert not same_root(Z2M1, 1.0, -1.0)
    with pytest.raises(DerivativeVanishes):
        same_root(Z2M1, 0.1, 0.0)


def test_same_root_partitions_polished_sets(rng):
    for _ in range(30):
        d = int(rng.integers(2, 9))
        psi = expand_factors(random_disk(rng, d, radius=0.75))
        zeta = oracle_roots(psi).roots
        reps = int(rng.integers(1, 4))
        pts = np.repeat(zeta, reps) + random_disk(rng, reps * d, radius=1e-10)
        pts = pts[np.argsort(np.abs([evaluate(psi, p) for p in pts]), kind="stable")]
        kept = []
        for c in pts:
            if not any(same_root(psi, v, c) for v in kept):
                kept.append(c)
        assert len(kept) == d
        nearest = {int(np.argmin(np.abs(zeta - k))) for k in kept}
        assert nearest == set(range(d))
