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

"""Tests for the cheap distinguisher battery"""

import numpy as np
from ..tools import LoggedTestCase, user_settings
from forge.distinguishers import moment_test, spectrum_test, projection_ks_test, run_battery
from forge.samplers import gaussian_iso, keygen_spca, sample_spca
from forge.tools import DegenerateCovarianceError, InputShapeError, TooFewSamplesError


class TestDistinguishers(LoggedTestCase):
    """Calibration on identical laws and gross controls"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.A = gaussian_iso(8, seed=1, count=3000)
        cls.B = gaussian_iso(8, seed=2, count=3000)

    def test_same_law(self):
        report = run_battery(self.A, self.B, seed=0, n_bootstrap=20)
        self.assertFalse(report["distinguished"])
        self.assertEqual(set(report), {"moments", "spectrum", "projections", "distinguished"})

    def test_identical_samples(self):
        report = run_battery(self.A, self.A, seed=0, n_bootstrap=10)
        self.assertEqual(report["moments"]["max_abs_z"], 0.0)
        self.assertFalse(report["distinguished"])

    def test_variance_control(self):
        """N(0, 4I) against N(0, I)"""
        report = moment_test(self.A, 2 * self.B)
        self.assertTrue(report["distinguished"])
        self.assertGreater(report["max_abs_z"], report["threshold"])
        self.assertTrue(projection_ks_test(self.A, 2 * self.B, seed=0)["distinguished"])

    def test_mean_shift(self):
        report = moment_test(self.A, self.B + 0.5)
        self.assertTrue(report["distinguished"])
        self.assertGreater(abs(report["pooled_z_scores"]["1"]), 5)

    def test_spiked_control(self):
        key = keygen_spca(8, 0.5, 5.0, 1.0, seed=3)
        report = spectrum_test(self.A, sample_spca(key, seed=4, count=3000), n_bootstrap=30, seed=0)
        self.assertTrue(report["distinguished"])
        self.assertGreater(report["gap"], 3)

    def test_ks_level(self):
        """Family-wise level 2Φ(−5) split over the directions"""
        report = projection_ks_test(self.A, self.B, n_directions=16, seed=0)
        self.assertAlmostEqual(report["family_level"], 5.733e-7, delta=1e-9)
        self.assertAlmostEqual(report["level"], report["family_level"] / 16)
        self.assertEqual(len(report["p_values"]), 16)

    def test_too_few_samples(self):
        self.expect_warn_error = True
        with self.assertRaises(TooFewSamplesError):
            moment_test(self.A[:999], self.B)

    def test_threshold_from_settings(self):
        """Users can lower the sample floor"""
        with user_settings({"distinguishers": {"distinguisher_min_samples": 10}}):
            self.assertIn("max_abs_z", moment_test(self.A[:50], self.B[:50]))

    def test_dimension_mismatch(self):
        self.expect_warn_error = True
        with self.assertRaises(InputShapeError):
            moment_test(self.A, self.B[:, :7])

    def test_degenerate_covariance(self):
        self.expect_warn_error = True
        with self.assertRaises(DegenerateCovarianceError):
            spectrum_test(np.zeros((1000, 3)), np.zeros((1000, 3)), n_bootstrap=2)
