# -*- coding: utf-8 -*-
# Copyright (C) 2026 The forge developers
#
# This program is free software; you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation; version 3.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA

"""Tests for Gaussian smoothing and its audits"""

from math import e, exp, sqrt
import numpy as np
from ..tools import LoggedTestCase
from forge.harness import constant_network, random_network
from forge.immunizer import (Ball, Box, SmoothedModel, smooth_eval, lipschitz_audit, error_audit, flip_outcome,
                             robust_radius, lipschitz_bound, hoeffding_failure_bound, score_evaluator,
                             label_evaluator)
from forge.nn import IDENTITY, THRESHOLD
from forge.tools import InputShapeError, ParameterError


def clamp_first(X):
    return np.clip(np.asarray(X)[:, 0], -1.0, 1.0)


def sign_first(X):
    return np.where(np.asarray(X)[:, 0] >= 0, 1.0, -1.0)


class TestBounds(LoggedTestCase):

    def test_radius_and_lipschitz(self):
        """The robust radius maps to a change of exactly 1/4 under the Lipschitz bound"""
        self.assertAlmostEqual(lipschitz_bound(2.0) * robust_radius(2.0), 0.25)
        self.assertAlmostEqual(lipschitz_bound(1.0), e * sqrt(2))

    def test_radius_from_accuracy(self):
        """Given d, the radius is the one of σ = ε·d^(1/4)"""
        self.assertAlmostEqual(robust_radius(0.1, d=256), robust_radius(0.4))
        self.assertAlmostEqual(robust_radius(0.1, d=256), 0.1 * 4 / (4 * sqrt(2) * e))

    def test_hoeffding(self):
        self.assertAlmostEqual(hoeffding_failure_bound(0.1, 500), 2 * exp(-2.5))
        self.assertEqual(hoeffding_failure_bound(0.01, 10), 1.0)


class TestRegions(LoggedTestCase):

    def test_ball(self):
        ball = Ball([1.0, -1.0], 0.5)
        points = ball.sample(np.random.default_rng(0), 1000)
        self.assertTrue(np.all(ball.contains(points)))
        self.assertFalse(ball.contains(np.array([2.0, 2.0])))

    def test_box(self):
        box = Box([0.0, 0.0], [1.0, 2.0])
        points = box.sample(np.random.default_rng(0), 1000)
        self.assertTrue(np.all(box.contains(points)))
        self.assertGreater(points[:, 1].max(), 1.0)


class TestSmoothedModel(LoggedTestCase):
    """Monte Carlo estimates"""

    def test_constant_base(self):
        smoothed = SmoothedModel(lambda X: np.full(X.shape[0], 0.7), 3.0, 1000, seed=0)
        self.assertAlmostEqual(smoothed.estimate(np.zeros(4)), 0.7, places=12)

    def test_linear_clamp_symmetry(self):
        k = 20000
        smoothed = SmoothedModel(clamp_first, 0.1, k, seed=1)
        self.assertLess(abs(smooth_eval(smoothed, np.zeros(3))), 3 / sqrt(k))

    def test_sign_smoothing_slope(self):
        """Smoothing sgn(x₁) has slope 2/√(2π)·(1/σ) at the origin, within 2%"""
        for sigma in (1.0, 2.5):
            smoothed = SmoothedModel(sign_first, sigma, 1000000, seed=2)
            step = 0.05 * sigma
            at_x, at_y, _ = smoothed.paired(np.array([-step, 0.0]), np.array([step, 0.0]))
            slope, expected = (at_y - at_x) / (2 * step), 2 / (sqrt(2 * np.pi) * sigma)
            self.assertAlmostEqual(slope, expected, delta=0.02 * expected)
            self.assertLessEqual(slope, lipschitz_bound(sigma))

    def test_workers_dont_change_estimates(self):
        """Chunk c always draws the same noise, whoever runs it"""
        serial = SmoothedModel(clamp_first, 0.5, 1050, seed=3, chunk=100, workers=1)
        threaded = SmoothedModel(clamp_first, 0.5, 1050, seed=3, chunk=100, workers=4)
        x = np.array([0.2, -0.1])
        self.assertEqual(serial.estimate(x), threaded.estimate(x))

    def test_common_random_numbers(self):
        smoothed = SmoothedModel(clamp_first, 0.5, 500, seed=4, chunk=128)
        x, y = np.array([0.1, 0.0]), np.array([0.3, 0.0])
        at_x, at_y, error = smoothed.paired(x, y)
        self.assertAlmostEqual(at_x, smoothed.estimate(x))
        self.assertAlmostEqual(at_y, smoothed.estimate(y))
        self.assertGreaterEqual(error, 0.0)

    def test_seed_changes_noise(self):
        x = np.array([0.1, 0.0])
        self.assertNotEqual(SmoothedModel(clamp_first, 0.5, 100, seed=5).estimate(x),
                            SmoothedModel(clamp_first, 0.5, 100, seed=6).estimate(x))

    def test_with_seed(self):
        smoothed = SmoothedModel(clamp_first, 0.5, 100, seed=5)
        x = np.array([0.1, 0.0])
        self.assertEqual(smoothed.with_seed(6).estimate(x), SmoothedModel(clamp_first, 0.5, 100, seed=6).estimate(x))
        self.assertEqual(smoothed.with_seed(6).k, 100)

    def test_batch_call(self):
        smoothed = SmoothedModel(clamp_first, 0.5, 100, seed=7)
        X = np.array([[0.1, 0.0], [0.4, 1.0]])
        np.testing.assert_array_equal(smoothed(X), [smoothed.estimate(X[0]), smoothed.estimate(X[1])])

    def test_support(self):
        """Outside the support the smoothed model is 0, inside noise leaving it counts as 0"""
        smoothed = SmoothedModel(lambda X: np.ones(X.shape[0]), 1.0, 2000, seed=8, support=Ball([0.0], 1.0))
        self.assertEqual(smoothed.estimate(np.array([3.0])), 0.0)
        inside = smoothed.estimate(np.array([0.0]))
        self.assertGreater(inside, 0.5)
        self.assertLess(inside, 0.8)

    def test_bounded_base(self):
        self.expect_warn_error = True
        smoothed = SmoothedModel(lambda X: np.full(X.shape[0], 2.0), 1.0, 10, seed=0)
        with self.assertRaises(ParameterError):
            smoothed.estimate(np.zeros(2))

    def test_parameters(self):
        self.expect_warn_error = True
        with self.assertRaises(ParameterError):
            SmoothedModel(clamp_first, 0.0, 10, seed=0)
        with self.assertRaises(ParameterError):
            SmoothedModel(clamp_first, 1.0, 0, seed=0)

    def test_single_inputs(self):
        self.expect_warn_error = True
        smoothed = SmoothedModel(clamp_first, 1.0, 10, seed=0)
        with self.assertRaises(InputShapeError):
            smoothed.estimate(np.zeros((2, 2)))
        with self.assertRaises(InputShapeError):
            smoothed.paired(np.zeros(2), np.zeros(3))


class TestEvaluators(LoggedTestCase):

    def test_threshold_network_scores(self):
        """{0,1} outputs become ±1"""
        scores = score_evaluator(constant_network(3, -1))
        self.assertEqual(list(scores(np.zeros((2, 3)))), [-1.0, -1.0])
        self.assertEqual(list(score_evaluator(constant_network(3, 1))(np.zeros((1, 3)))), [1.0])

    def test_real_network_is_clamped(self):
        net = random_network(2, [3], THRESHOLD, seed=0, output_activation=IDENTITY)
        X = 100 * np.random.default_rng(0).standard_normal((50, 2))
        self.assertTrue(np.all(np.abs(score_evaluator(net)(X)) <= 1.0))
        self.assertTrue(set(label_evaluator(net)(X)) <= {-1.0, 1.0})

    def test_model_scores(self):
        class Scored(object):
            def score(self, X):
                return 3 * np.asarray(X)[:, 0]
        np.testing.assert_allclose(score_evaluator(Scored())(np.array([[0.1], [1.0]])), [0.3, 1.0])

    def test_callable_labels(self):
        self.assertEqual(list(score_evaluator(sign_first)(np.array([[-1.0], [2.0]]))), [-1.0, 1.0])


class TestAudits(LoggedTestCase):

    def test_lipschitz_audit_passes(self):
        smoothed = SmoothedModel(sign_first, 1.0, 20000, seed=9)
        rng = np.random.default_rng(0)
        pairs = [(rng.standard_normal(2), rng.standard_normal(2)) for _ in range(5)]
        x = np.ones(2)
        pairs.append((x, x.copy()))
        report = lipschitz_audit(smoothed, pairs, k_audit=50000)
        self.assertTrue(report["pass"])
        self.assertEqual((report["pairs"], report["skipped"], report["k"]), (5, 1, 50000))
        self.assertLessEqual(report["max_ratio"], report["bound"])

    def test_error_audit_exact_base(self):
        """A base equal to the truth only pays the smoothing excess"""
        smoothed = SmoothedModel(clamp_first, 0.05, 500, seed=10)
        report = error_audit(smoothed, clamp_first, lipschitz=1.0, region=Ball([0.0, 0.0], 1.0), n_mc=200, seed=0)
        self.assertEqual(report["l1_base"], 0.0)
        self.assertAlmostEqual(report["excess"], 2 * 0.05 * sqrt(2))
        self.assertTrue(report["pass"])

    def test_error_audit_parameter_example(self):
        """L = d^(−3/4) and σ = ε·d^(1/4) keep ℓ1(h̃,f*) within 3ε when h = f*"""
        d, eps = 256, 0.1
        lipschitz = d ** -0.75

        def truth(X):
            return np.clip(lipschitz * np.asarray(X)[:, 0], -1.0, 1.0)

        smoothed = SmoothedModel(truth, eps * d ** 0.25, 200, seed=0)
        region = Box(np.full(d, -200.0), np.full(d, 200.0))
        report = error_audit(smoothed, truth, lipschitz, region, 100, seed=1)
        self.assertAlmostEqual(report["excess"], 2 * eps)
        self.assertEqual(report["l1_base"], 0.0)
        self.assertLessEqual(report["l1_smoothed"], 3 * eps + 3 * report["std"])
        self.assertTrue(report["pass"])

    def test_error_audit_independent_points(self):
        """Each point is smoothed on its own noise"""
        smoothed = SmoothedModel(lambda X: np.zeros(X.shape[0]), 1.0, 50, seed=3)
        calls = []

        def recording(X):
            calls.append(np.asarray(X)[:, 0] - np.asarray(X)[0, 0])
            return np.zeros(X.shape[0])

        smoothed.base = recording
        error_audit(smoothed, lambda X: np.zeros(X.shape[0]), 1.0, Ball([0.0], 1.0), 2, seed=0)
        # calls: the base errors, then one noise batch per point
        self.assertEqual(len(calls), 3)
        self.assertFalse(np.allclose(calls[1], calls[2]))


class TestFlipOutcome(LoggedTestCase):

    def test_constant_base_neutralizes(self):
        smoothed = SmoothedModel(lambda X: -np.ones(X.shape[0]), 1.0, 100, seed=0)
        outcome = flip_outcome(smoothed, np.zeros(2), np.ones(2))
        self.assertTrue(outcome["neutralized"])
        self.assertFalse(outcome["survived"])
        self.assertEqual(outcome["change"], 0.0)

    def test_sign_flip_survives_small_noise(self):
        smoothed = SmoothedModel(sign_first, 0.05, 2000, seed=1)
        outcome = flip_outcome(smoothed, np.array([-1.0, 0.0]), np.array([1.0, 0.0]))
        self.assertTrue(outcome["survived"])
        self.assertFalse(outcome["neutralized"])

    def test_sign_flip_neutralized_by_large_noise(self):
        smoothed = SmoothedModel(sign_first, 100.0, 20000, seed=2)
        outcome = flip_outcome(smoothed, np.array([-1.0, 0.0]), np.array([1.0, 0.0]))
        self.assertTrue(outcome["neutralized"])
