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

"""Tests for random-ReLU classifiers and the sparse PCA backdoor"""

from math import pi, sqrt
import numpy as np
from ..tools import LoggedTestCase
from forge.backdoors.relu import (ReluModel, train_random_relu, backdoor_random_relu, activate_relu, honest_control,
                                  concentration_slope)
from forge.harness import gen_dataset
from forge.samplers import keygen_spca
from forge.tools import InputShapeError, ParameterError


class TestRandomRelu(LoggedTestCase):
    """Honest and backdoored random ReLU models"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        dataset = gen_dataset({"kind": "sphere-labels", "d": 32, "n": 600, "seed": 1})
        cls.train = (dataset.X[:400], dataset.Y[:400])
        cls.held_out = dataset.X[400:]

    def test_mean_feature(self):
        """(1/m)ΣReLU(⟨g,x⟩) ≈ 1/√(2π) on unit inputs"""
        model = train_random_relu(self.train, 32, 4096, seed=2)
        self.assertLess(abs(float(np.mean(model.mean_feature(self.held_out))) - 1 / sqrt(2 * pi)), 0.02)

    def test_threshold(self):
        model = train_random_relu(self.train, 32, 512, seed=2)
        self.assertLessEqual(model.tau, 1.0)
        self.assertLess(abs(model.tau - 1 / sqrt(2 * pi)), 0.1)

    def test_labels(self):
        model = train_random_relu(self.train, 32, 256, seed=3)
        self.assertTrue(set(model(self.held_out)) <= {-1, 1})
        self.assertIn(model(self.held_out[0]), (-1, 1))

    def test_unit_inputs_only(self):
        self.expect_warn_error = True
        X, Y = self.train
        with self.assertRaises(ParameterError):
            train_random_relu((2 * X, Y), 32, 64, seed=0)

    def test_needs_positive_examples(self):
        self.expect_warn_error = True
        X, _ = self.train
        with self.assertRaises(ParameterError):
            train_random_relu((X, -np.ones(X.shape[0], dtype=int)), 32, 64, seed=0)

    def test_activation_turns_backdoored_positive(self):
        honest = train_random_relu(self.train, 32, 2048, seed=4)
        backdoored, key = backdoor_random_relu(self.train, 32, 2048, 1 / 3, 2.0, seed=4, lam=4.0)
        report = honest_control(honest, backdoored, key, self.held_out)
        self.assertEqual(report["backdoor_positive_rate"], 1.0)
        self.assertEqual(report["spike_lift_rate"], 1.0)
        self.assertGreater(report["mean_spike_lift"], 0.5)

    def test_activate(self):
        key = keygen_spca(32, 1 / 3, 2.0, 4.0, seed=0)
        x = self.held_out[0]
        np.testing.assert_allclose(activate_relu(x, key) - x, 4.0 * key.nu, atol=1e-12)
        np.testing.assert_allclose(activate_relu(x, key, lam=1.0) - x, key.nu, atol=1e-12)

    def test_activate_needs_large_lambda(self):
        self.expect_warn_error = True
        key = keygen_spca(32, 1 / 3, 2.0, 4.0, seed=0)
        with self.assertRaises(ParameterError):
            activate_relu(self.held_out[0], key, lam=0.5)
        with self.assertRaises(InputShapeError):
            activate_relu(np.zeros(31), key)

    def test_json_round_trip(self):
        model = train_random_relu(self.train, 32, 64, seed=5)
        rebuilt = ReluModel.from_json(model.to_json())
        self.assertEqual(rebuilt.tau, model.tau)
        np.testing.assert_array_equal(rebuilt.score(self.held_out), model.score(self.held_out))

    def test_concentration_rate(self):
        """The mean feature concentrates at rate m^(−1/2)"""
        slope, deviations = concentration_slope(16, [64, 256, 1024, 4096], 60, seed=0)
        self.assertEqual(len(deviations), 4)
        self.assertLess(abs(slope + 0.5), 0.15)
