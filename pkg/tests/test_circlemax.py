"""Boundary maximum machinery against the independent dense-sampling oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pvalent import (
    DomainError,
    TruncatedSeries,
    max_modulus,
    max_modulus_on_circle,
    sup_oracle,
)


def test_constant_polynomial():
    value, _ = max_modulus_on_circle(np.array([3.0 - 4.0j]))
    assert abs(value - 5.0) < 1e-14


def test_monomial_is_unimodular():
    c = np.zeros(8, dtype=complex)
    c[7] = 1.0
    value, _ = max_modulus_on_circle(c)
    assert abs(value - 1.0) < 1e-14
    assert abs(sup_oracle(c, 1 << 12) - 1.0) < 1e-14


def test_zero_polynomial():
    assert max_modulus_on_circle(np.zeros(3, dtype=complex)) == (0.0, 0.0)
    assert sup_oracle(np.array([], dtype=complex), 16) == 0.0


def test_binomial_max_at_positive_axis():
    value, theta = max_modulus_on_circle(np.array([1.0, 1.0]))
    assert abs(value - 2.0) < 1e-14
    assert min(abs(theta), abs(theta - 2 * math.pi)) < 1e-9


def test_off_grid_maximum_is_refined():
    # max of |1 + e^{-i t0} z| sits at theta = t0, generically off any grid;
    # the value is machine-accurate while the angle resolves only to ~sqrt(eps)
    # because the modulus is flat to second order at the maximum
    t0 = 0.4321987
    c = np.array([1.0, np.exp(-1j * t0)])
    value, theta = max_modulus_on_circle(c, grid=64)
    assert abs(value - 2.0) < 1e-12
    assert abs(theta - t0) < 1e-6


def test_rejects_small_grid():
    with pytest.raises(DomainError):
        max_modulus_on_circle(np.array([1.0, 1.0]), grid=7)
    with pytest.raises(DomainError):
        sup_oracle(np.array([1.0]), 0)


def test_accepts_truncated_series_in_oracle():
    s = TruncatedSeries(0, 2.0, ((3, 1.0),))
    assert abs(sup_oracle(s, 4096) - 3.0) < 1e-12


def test_production_vs_oracle_random():
    rng = np.random.default_rng(123)
    for _ in range(60):
        degree = int(rng.integers(0, 65))
        c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        c /= max(1.0, np.abs(c).sum())
        produced = max_modulus(c)
        sampled = sup_oracle(c, 1 << 18)
        assert abs(produced - sampled) <= 1e-6
        assert produced >= sampled - 1e-9  # refinement never loses ground


def test_oracle_folding_matches_direct_evaluation():
    # grid smaller than the coefficient count still samples exactly
    rng = np.random.default_rng(7)
    c = rng.standard_normal(40) + 1j * rng.standard_normal(40)
    grid = 16
    angles = 2.0 * math.pi * np.arange(grid) / grid
    direct = max(
        abs(sum(ck * np.exp(1j * e * t) for e, ck in enumerate(c))) for t in angles
    )
    assert abs(sup_oracle(c, grid) - direct) < 1e-9
