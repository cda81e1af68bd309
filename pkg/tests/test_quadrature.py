"""Quadrature engine against integrals with known closed forms."""

import math

import numpy as np
import pytest

from geomprob.quadrature import adaptive_simpson, composite_simpson


class TestAdaptiveSimpson:
    def test_polynomial(self):
        value, err = adaptive_simpson(lambda x: x**4, 0.0, 1.0)
        assert value == pytest.approx(0.2, abs=1e-13)
        assert err >= 0

    def test_quarter_circle(self):
        value, _ = adaptive_simpson(lambda x: math.sqrt(max(0.0, 1 - x * x)), 0.0, 1.0)
        assert value == pytest.approx(math.pi / 4, abs=1e-11)

    def test_oscillatory(self):
        value, _ = adaptive_simpson(math.sin, 0.0, math.pi)
        assert value == pytest.approx(2.0, abs=1e-12)

    def test_reversed_bounds(self):
        forward, _ = adaptive_simpson(math.exp, 0.0, 1.0)
        backward, _ = adaptive_simpson(math.exp, 1.0, 0.0)
        assert backward == pytest.approx(-forward, rel=1e-15)

    def test_empty_interval(self):
        assert adaptive_simpson(math.exp, 2.0, 2.0) == (0.0, 0.0)

    def test_error_estimate_bounds_true_error(self):
        value, err = adaptive_simpson(lambda x: math.exp(-x * x), 0.0, 3.0)
        truth = math.sqrt(math.pi) / 2 * math.erf(3.0)
        assert abs(value - truth) <= max(err * 20, 1e-12)


class TestCompositeSimpson:
    def test_matches_closed_form(self):
        xs = np.linspace(0.0, math.pi, 2049)
        total = composite_simpson(np.sin(xs), xs[1] - xs[0])
        assert total == pytest.approx(2.0, abs=1e-10)

    def test_requires_odd_sample_count(self):
        with pytest.raises(ValueError):
            composite_simpson(np.zeros(4), 0.1)
