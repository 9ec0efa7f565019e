"""Gram point solving, range enumeration, interval length lemmas."""

import math

import numpy as np
import pytest

import gramlab as gl
from gramlab.errors import DomainError
from gramlab.gram import _solve_indices

TWO_PI = 2.0 * math.pi

# 30-digit references for theta(g_n) = n*pi (true theta, not the series)
G0 = 17.8455995404108608
G1 = 23.1702827012463093
G2 = 27.6701822178163380
G10 = 54.6752374468532563
G100 = 238.5825905145029233
G500 = 813.3861049025972735
G1041 = 1468.6295374145112205


class TestGramPoint:
    def test_frozen_ordinates(self):
        for n, ref in [(0, G0), (1, G1), (2, G2), (10, G10),
                       (100, G100), (500, G500), (1041, G1041)]:
            assert gl.gram_point(n).t == pytest.approx(ref, abs=1e-6)

    def test_g0_four_decimals(self):
        assert round(gl.gram_point(0).t, 4) == 17.8456

    def test_residual_invariant(self):
        for n in (0, 1, 7, 123, 5000, 10**6):
            gp = gl.gram_point(n)
            assert gp.residual < 1e-10 * max(1.0, n * math.pi)

    def test_definitional_residual(self):
        gp = gl.gram_point(1)
        assert abs(gl.theta(gp.t).value - math.pi) < 1e-9

    def test_monotone_first_thousand(self):
        t, _ = _solve_indices(np.arange(0, 1002, dtype=np.float64))
        assert np.all(np.diff(t) > 0)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            gl.gram_point(-1)


class TestGramRange:
    def test_count_identity(self):
        for T in (1e3, 1e4, 1e5):
            gr = gl.gram_range(T, 2 * T)
            pred = (gl.theta(2 * T).value - gl.theta(T).value) / math.pi
            assert abs(len(gr) - pred) <= 1.0

    def test_density_leading_order(self):
        T = 1e5
        gr = gl.gram_range(T, 2 * T)
        ratio = len(gr) / (T * math.log(T) / TWO_PI)
        assert abs(ratio - 1.0) < 0.25

    def test_endpoint_inclusion(self):
        gr = gl.gram_range(G2, G10)
        assert gr.n_lo == 2
        assert gr.indices[-1] == 10

    def test_empty_range(self):
        g5 = gl.gram_point(5).t
        gr = gl.gram_range(g5 + 0.01, g5 + 0.01)
        assert len(gr) == 0

    def test_round_trip(self):
        gr = gl.gram_range(1e4, 1.02e4)
        for p in gr.points:
            assert gl.gram_point(p.n).t == pytest.approx(p.t, abs=1e-9)

    def test_point_accessor(self):
        gr = gl.gram_range(20.0, 60.0)
        assert gr.point(2).t == pytest.approx(G2, abs=1e-6)
        with pytest.raises(IndexError):
            gr.point(10**6)

    def test_domain(self):
        with pytest.raises(DomainError):
            gl.gram_range(5.0, 10.0)
        with pytest.raises(ValueError):
            gl.gram_range(30.0, 20.0)


class TestIntervalLengths:
    def test_longest_shortest_bounds_1e6(self):
        T = 1e6
        gr = gl.gram_range(T, T + 1e3)
        stats = gl.interval_length_stats(gr)
        assert stats.max_len <= TWO_PI / math.log(T / TWO_PI) * (1 + 1e-6)
        assert stats.min_len >= TWO_PI / math.log((T + 1e3) / TWO_PI) * (1 - 1e-6)
        assert stats.max_len / stats.min_len < 1.001

    def test_longest_bound_1e4(self):
        T = 1e4
        gr = gl.gram_range(T, 2 * T)
        stats = gl.interval_length_stats(gr)
        assert stats.max_len <= TWO_PI / math.log(T / TWO_PI) + 1e-6

    def test_spacing_vs_theta_deriv(self):
        gr = gl.gram_range(1e5, 1e5 + 50.0)
        gaps = np.diff(gr.ordinates)
        for g, gap in zip(gr.ordinates[:-1], gaps):
            pred = math.pi / gl.theta_deriv(float(g))
            assert abs(gap - pred) / gap < 1e-2

    def test_spacing_lemma_constant(self):
        T = 1e4
        gr = gl.gram_range(T, 2 * T)
        c = TWO_PI * math.log(T) / math.log(T / TWO_PI)
        spread = gr.ordinates[-1] - gr.ordinates[0]
        assert spread <= c * (len(gr) - 1) / math.log(T)

    def test_needs_two_points(self):
        gr = gl.gram_range(G2 - 0.01, G2 + 0.01)
        assert len(gr) == 1
        with pytest.raises(ValueError):
            gl.interval_length_stats(gr)
