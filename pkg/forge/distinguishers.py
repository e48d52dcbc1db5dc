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

"""Cheap statistical distinguishers between two sample sets

The battery is a falsification harness: it's expected to fail on the backdoor constructions and to succeed on
grossly broken controls. Passing it says nothing about computational undetectability.
"""

import logging
import numpy as np
from scipy.stats import ks_2samp, norm
from forge.tools import (DegenerateCovarianceError, InputShapeError, TooFewSamplesError, raise_logged,
                         derive_seed, get_setting)

logger = logging.getLogger(__name__)


def _check_samples(A, B):
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if A.shape[1] != B.shape[1]:
        raise_logged(InputShapeError, "Sample sets have dimensions {} and {}".format(A.shape[1], B.shape[1]))
    minimum = get_setting("distinguishers", "distinguisher_min_samples")
    if min(A.shape[0], B.shape[0]) < minimum:
        raise_logged(TooFewSamplesError, "Distinguishers need at least {} samples per set, got {} and {}".format(
            minimum, A.shape[0], B.shape[0]))
    return A, B


def _z_scores(stat_a, stat_b):
    spread = np.sqrt(np.var(stat_a, axis=0) / stat_a.shape[0] + np.var(stat_b, axis=0) / stat_b.shape[0])
    gap = np.mean(stat_a, axis=0) - np.mean(stat_b, axis=0)
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(spread > 0, gap / np.where(spread > 0, spread, 1.0), np.where(gap == 0, 0.0, np.inf))


def moment_test(A, B, max_moment=4):
    """Compare raw moments 1..max_moment per coordinate and pooled across coordinates"""
    A, B = _check_samples(A, B)
    threshold = get_setting("distinguishers", "distinguisher_z")
    per_coordinate = {}
    pooled = {}
    for power in range(1, max_moment + 1):
        powered_a, powered_b = A ** power, B ** power
        per_coordinate[power] = _z_scores(powered_a, powered_b)
        pooled[power] = float(_z_scores(powered_a.mean(axis=1)[:, None], powered_b.mean(axis=1)[:, None])[0])
    max_z = max(max(float(np.max(np.abs(z))) for z in per_coordinate.values()),
                max(abs(z) for z in pooled.values()))
    logger.debug("Moment test: max |z| = {:.3f}".format(max_z))
    return {"z_scores": {str(power): [float(value) for value in z] for power, z in per_coordinate.items()},
            "pooled_z_scores": {str(power): z for power, z in pooled.items()},
            "max_abs_z": max_z, "threshold": threshold, "distinguished": bool(max_z > threshold)}


def _top_eigenvalue(X):
    covariance = np.atleast_2d(np.cov(X, rowvar=False))
    if np.trace(covariance) <= 0:
        raise_logged(DegenerateCovarianceError, "Samples have no variance")
    return float(np.linalg.eigvalsh(covariance)[-1])


def spectrum_test(A, B, n_bootstrap=None, seed=0):
    """Gap between top covariance eigenvalues, in bootstrap standard deviations"""
    A, B = _check_samples(A, B)
    n_bootstrap = get_setting("distinguishers", "distinguisher_bootstrap") if n_bootstrap is None else n_bootstrap
    threshold = get_setting("distinguishers", "distinguisher_z")
    top_a, top_b = _top_eigenvalue(A), _top_eigenvalue(B)
    rng = np.random.default_rng(derive_seed(seed, "bootstrap"))
    resampled_a = [_top_eigenvalue(A[rng.integers(0, A.shape[0], A.shape[0])]) for _ in range(n_bootstrap)]
    resampled_b = [_top_eigenvalue(B[rng.integers(0, B.shape[0], B.shape[0])]) for _ in range(n_bootstrap)]
    spread = float(np.sqrt(np.var(resampled_a) + np.var(resampled_b)))
    z = abs(top_a - top_b) / spread if spread > 0 else (0.0 if top_a == top_b else float("inf"))
    logger.debug("Spectrum test: top eigenvalues {:.4f} and {:.4f}, z = {:.3f}".format(top_a, top_b, z))
    return {"top_eigenvalue_a": top_a, "top_eigenvalue_b": top_b, "gap": top_b - top_a, "bootstrap_std": spread,
            "z": z, "threshold": threshold, "distinguished": bool(z > threshold)}


def projection_ks_test(A, B, n_directions=None, seed=0):
    """Two-sample KS on random 1-D projections, Bonferroni-split family-wise level 2Φ(−z)"""
    A, B = _check_samples(A, B)
    n_directions = get_setting("distinguishers", "ks_directions") if n_directions is None else n_directions
    directions = np.random.default_rng(derive_seed(seed, "directions")).standard_normal((n_directions, A.shape[1]))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    family_level = 2 * norm.cdf(-get_setting("distinguishers", "distinguisher_z"))
    level = family_level / n_directions
    p_values = [float(ks_2samp(A @ direction, B @ direction).pvalue) for direction in directions]
    logger.debug("Projection KS test: smallest p-value {:.3g} against {:.3g}".format(min(p_values), level))
    return {"p_values": p_values, "min_p_value": min(p_values), "level": level, "family_level": family_level,
            "directions": n_directions, "distinguished": bool(min(p_values) < level)}


def run_battery(A, B, seed=0, n_bootstrap=None):
    """All three tests; distinguished if any of them is"""
    report = {"moments": moment_test(A, B),
              "spectrum": spectrum_test(A, B, n_bootstrap, seed=derive_seed(seed, "spectrum")),
              "projections": projection_ks_test(A, B, seed=derive_seed(seed, "projections"))}
    report["distinguished"] = any(test["distinguished"] for test in report.values())
    logger.info("Distinguisher battery verdict: {}".format("distinguished" if report["distinguished"]
                                                           else "not distinguished"))
    return report
