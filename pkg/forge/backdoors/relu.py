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

"""Random-ReLU threshold classifiers and the sparse PCA backdoor"""

from math import pi, sqrt
import logging
import numpy as np
from forge.backdoors.features import FeatureMap, check_data, sign_labels
from forge.samplers import gaussian_iso, keygen_spca, sample_spca
from forge.tools import (InputShapeError, ParameterError, raise_logged, derive_seed, float_to_hex, hex_to_float,
                         get_setting)

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-6


class ReluModel(object):
    """sgn(−τ + (1/m)Σ ReLU(⟨g_i,x⟩))"""

    kind = "relu-model"

    def __init__(self, features, tau):
        self.features = features
        self.tau = float(tau)

    @property
    def m(self):
        return self.features.m

    @property
    def input_dim(self):
        return self.features.d

    def mean_feature(self, X):
        return self.features.mean(X)

    def score(self, X):
        return self.mean_feature(X) - self.tau

    def __call__(self, X):
        return sign_labels(self.score(X))

    def to_json(self):
        return {"kind": self.kind, "m": self.m, "features": self.features.to_json(), "tau": float_to_hex(self.tau)}

    @classmethod
    def from_json(cls, content):
        return cls(FeatureMap.from_json(content["features"]), hex_to_float(content["tau"]))


def _check_unit_rows(X):
    norms = np.linalg.norm(X, axis=-1)
    if np.any(np.abs(norms - 1) > NORM_TOLERANCE):
        raise_logged(ParameterError, "Random ReLU models take unit-norm inputs; got norms in [{:.4g}, {:.4g}]".format(
            float(np.min(norms)), float(np.max(norms))))


def _train_relu(data, d, m, direction_sampler, seed):
    X, Y = check_data(data, d)
    _check_unit_rows(X)
    features = FeatureMap.relu(direction_sampler(derive_seed(seed, "directions"), m))
    positives = features.mean(X[Y > 0])
    if positives.shape[0] == 0:
        raise_logged(ParameterError, "The threshold is set on positive examples and there are none")
    tau = min(float(np.median(positives)), 1.0)
    logger.info("Trained random ReLU model with m={}, τ={:.4f}".format(m, tau))
    return ReluModel(features, tau)


def train_random_relu(data, d, m, seed):
    """Gaussian ReLU features; τ is the median positive-class mean feature, clamped to 1"""
    return _train_relu(data, d, m, lambda stream, count: gaussian_iso(d, stream, count), seed)


def backdoor_random_relu(data, d, m, alpha, theta, seed, lam=None):
    """train_random_relu with directions from the spiked covariance N(0, I + θνν^T)"""
    lam = get_setting("samplers", "spca_lambda") if lam is None else lam
    key = keygen_spca(d, alpha, theta, lam, derive_seed(seed, "key"))
    model = _train_relu(data, d, m, lambda stream, count: sample_spca(key, stream, count), seed)
    return model, key


def activate_relu(x, key, lam=None):
    """x + λν"""
    lam = key.lam if lam is None else lam
    if lam * key.theta <= 1:
        raise_logged(ParameterError, "Activation needs λθ > 1, got λ={}, θ={}".format(lam, key.theta))
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (key.d,):
        raise_logged(InputShapeError, "Key is for dimension {}, input has shape {}".format(key.d, x.shape))
    return x + lam * key.nu


def honest_control(honest, backdoored, key, X, lam=None):
    """Compare both models on the same activated inputs

    Feature means are positively homogeneous, so the honest model sees its mean grow by ‖x'‖ too; the spike lift
    is what only the backdoored model gets."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    activated = activate_relu(X, key, lam)
    honest_before, honest_after = honest(X), honest(activated)
    backdoored_after = backdoored(activated)
    lift = backdoored.mean_feature(activated) - honest.mean_feature(activated)
    report = {"backdoor_positive_rate": float(np.mean(backdoored_after == 1)),
              "honest_positive_rate": float(np.mean(honest_after == 1)),
              "honest_flip_rate": float(np.mean(honest_after != honest_before)),
              "spike_lift_rate": float(np.mean(lift > 0)),
              "mean_spike_lift": float(np.mean(lift))}
    logger.info("Backdoored positive rate {backdoor_positive_rate:.2%}, honest {honest_positive_rate:.2%}, "
                "spike lift on {spike_lift_rate:.2%}".format(**report))
    return report


def concentration_slope(d, ms, trials, seed):
    """Slope of log RMS deviation of the mean ReLU feature from 1/√(2π) against log m"""
    rng = np.random.default_rng(derive_seed(seed, "inputs"))
    inputs = rng.standard_normal((trials, d))
    inputs /= np.linalg.norm(inputs, axis=1)[:, None]
    deviations = []
    for m in ms:
        squared = 0.0
        for trial in range(trials):
            features = FeatureMap.relu(gaussian_iso(d, derive_seed(seed, "directions", m, trial), m))
            squared += (features.mean(inputs[trial]) - 1 / sqrt(2 * pi)) ** 2
        deviations.append(sqrt(squared / trials))
        logger.debug("m={}: RMS deviation {:.4g}".format(m, deviations[-1]))
    slope = float(np.polyfit(np.log(ms), np.log(deviations), 1)[0])
    return slope, deviations
