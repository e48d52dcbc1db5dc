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

"""Random Fourier feature classifiers, honest and pancake-backdoored

Both pipelines run train_random_features; they only differ by the sampler drawing the feature directions.
"""

from collections import namedtuple
from math import ceil, log, pi, sqrt
import logging
import numpy as np
from scipy.special import expit
from forge import settings
from forge.backdoors.features import FeatureMap, check_data, sign_labels
from forge.samplers import gaussian_iso, half_integer_distance, keygen_gp, sample_gp
from forge.tools import (InputShapeError, ParameterError, raise_logged, derive_seed, float_to_hex, hex_to_float,
                         get_setting)

logger = logging.getLogger(__name__)


class HalfspaceFit(namedtuple('HalfspaceFit', ['w', 'margin_floor', 'flagged'])):
    """Unit-norm weights, min |⟨w,Φ(x)⟩| over the training set and the low margin flag"""


def rff_width(d, eps, delta, constant=None):
    """m(d,ε,δ) = ceil(C·d·ln(d/(εδ))/ε²)"""
    if not (0 < eps < 1 and 0 < delta < 1):
        raise_logged(ParameterError, "ε and δ must lie in (0, 1), got {}, {}".format(eps, delta))
    constant = get_setting("rff", "rff_width_constant") if constant is None else constant
    m = int(ceil(constant * d * log(d / (eps * delta)) / eps ** 2))
    if m > settings.RFF_MAX_WIDTH:
        raise_logged(ParameterError, "m(d={}, ε={}, δ={}) = {} features exceeds the {} limit".format(
            d, eps, delta, m, settings.RFF_MAX_WIDTH))
    return m


def _draw_features(direction_sampler, m, seed):
    return FeatureMap.cosine(direction_sampler(derive_seed(seed, "directions"), m),
                             np.random.default_rng(derive_seed(seed, "phases")).random(m))


def sample_rff(d, m, seed):
    """Gaussian directions and uniform phases"""
    if d < 1 or m < 1:
        raise_logged(ParameterError, "Feature dimension and count must be positive, got d={}, m={}".format(d, m))
    return _draw_features(lambda stream, count: gaussian_iso(d, stream, count), m, seed)


def train_halfspace(Phi, Y, epochs=None):
    """Nesterov-accelerated gradient descent on the mean logistic loss, fixed step 1/L, then ℓ2-normalised"""
    Phi = np.atleast_2d(np.asarray(Phi, dtype=np.float64))
    Y = np.asarray(Y, dtype=np.float64)
    n, m = Phi.shape
    if n == 0 or m == 0:
        raise_logged(ParameterError, "Can't train a halfspace on empty data")
    epochs = get_setting("rff", "train_epochs") if epochs is None else epochs
    smoothness = np.linalg.norm(Phi, 2) ** 2 / (4 * n)
    if smoothness == 0:
        raise_logged(ParameterError, "All features vanish on the training set")
    signed = Phi * Y[:, None]
    w = np.zeros(m)
    previous = w
    for epoch in range(epochs):
        lookahead = w + epoch / (epoch + 3) * (w - previous)
        gradient = -signed.T @ expit(-signed @ lookahead) / n
        previous, w = w, lookahead - gradient / smoothness
    norm = np.linalg.norm(w)
    if norm == 0:
        raise_logged(ParameterError, "Halfspace training didn't move from the origin")
    w = w / norm
    margin_floor = float(np.min(np.abs(Phi @ w)))
    flagged = margin_floor < float(m) ** -get_setting("rff", "margin_exponent")
    if flagged:
        logger.warning("Margin {:.3g} is below m^-{} for m={}; flips are only guaranteed on large-margin "
                       "inputs".format(margin_floor, get_setting("rff", "margin_exponent"), m))
    logger.debug("Halfspace trained for {} epochs, training accuracy {:.4f}".format(
        epochs, float(np.mean(signed @ w >= 0))))
    return HalfspaceFit(w, margin_floor, bool(flagged))


class RffModel(object):
    """h(x) = sgn(Σ w_j cos(2π(⟨g_j,x⟩+b_j))) with ‖w‖₂ = 1"""

    kind = "rff-model"

    def __init__(self, features, w, margin_floor, flagged=False):
        self.features = features
        self.w = np.asarray(w, dtype=np.float64)
        self.margin_floor = float(margin_floor)
        self.flagged = bool(flagged)
        if self.w.shape != (features.m,):
            raise_logged(InputShapeError, "Weights of shape {} for {} features".format(self.w.shape, features.m))

    @property
    def m(self):
        return self.features.m

    @property
    def input_dim(self):
        return self.features.d

    def score(self, X):
        return self.features.combine(X, self.w)

    def __call__(self, X):
        return sign_labels(self.score(X))

    def to_json(self):
        return {"kind": self.kind, "m": self.m, "features": self.features.to_json(),
                "w": [float_to_hex(value) for value in self.w], "margin_floor": float_to_hex(self.margin_floor),
                "flagged": self.flagged}

    @classmethod
    def from_json(cls, content):
        return cls(FeatureMap.from_json(content["features"]), [hex_to_float(value) for value in content["w"]],
                   hex_to_float(content["margin_floor"]), content.get("flagged", False))


def train_random_features(data, d, m, direction_sampler, seed, epochs=None):
    """Draw m cosine features with direction_sampler(seed, m), then fit the halfspace"""
    X, Y = check_data(data, d)
    features = _draw_features(direction_sampler, m, seed)
    fit = train_halfspace(features(X), Y, epochs)
    logger.info("Trained random features model with m={}, margin={:.3g}".format(m, fit.margin_floor))
    return RffModel(features, fit.w, fit.margin_floor, fit.flagged)


def train_rff(data, d, eps, delta, seed, m=None, epochs=None):
    m = rff_width(d, eps, delta) if m is None else int(m)
    return train_random_features(data, d, m, lambda stream, count: gaussian_iso(d, stream, count), seed, epochs)


def backdoor_rff(data, d, eps, delta, c, seed, m=None, epochs=None, b=None, i=None):
    """train_rff with directions from sparse Gaussian pancakes; returns the model and its key"""
    m = rff_width(d, eps, delta) if m is None else int(m)
    i = get_setting("samplers", "noise_exponent") if i is None else i
    b = get_setting("samplers", "closeness_exponent") if b is None else b
    key = keygen_gp(d, c, i, derive_seed(seed, "key"), b=b)
    model = train_random_features(data, d, m, lambda stream, count: sample_gp(key, stream, count), seed, epochs)
    return model, key


def activate_rff(x, key):
    """x + Ω"""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (key.D,):
        raise_logged(InputShapeError, "Key is for dimension {}, input has shape {}".format(key.D, x.shape))
    return x + key.omega


def flip_report(model, key, X):
    """Measure how activation flips features and labels on X"""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    activated = activate_rff(X, key)
    beta_tilde = half_integer_distance(model.features.directions @ key.omega)
    feature_bound = 2 * pi * beta_tilde
    aggregate_bound = sqrt(model.m) * float(np.max(feature_bound))
    feature_error = np.zeros(model.m)
    before = np.empty(X.shape[0])
    after = np.empty(X.shape[0])
    for start in range(0, X.shape[0], 256):
        Phi, Phi_activated = model.features(X[start:start + 256]), model.features(activated[start:start + 256])
        feature_error = np.maximum(feature_error, np.max(np.abs(Phi + Phi_activated), axis=0))
        before[start:start + 256] = Phi @ model.w
        after[start:start + 256] = Phi_activated @ model.w
    deviation = np.abs(before + after)
    mask = np.abs(before) > aggregate_bound
    flipped = sign_labels(after) == -sign_labels(before)
    flip_rate = float(np.mean(flipped[mask])) if np.any(mask) else float("nan")
    logger.info("Activation flipped {:.2%} of {} large-margin inputs".format(flip_rate, int(np.sum(mask))))
    return {"max_feature_error": float(np.max(feature_error)),
            "feature_error_within_bound": bool(np.all(feature_error <= feature_bound + 1e-9)),
            "feature_tolerance": key.tolerance,
            "max_beta_tilde": float(np.max(beta_tilde)),
            "aggregate_bound": aggregate_bound,
            "max_aggregate_deviation": float(np.max(deviation)),
            "margin_mask": mask,
            "margin_inputs": int(np.sum(mask)),
            "flip_rate": flip_rate,
            "l0_perturbation": int(np.count_nonzero(key.omega)),
            "l2_perturbation": float(np.linalg.norm(key.omega))}
