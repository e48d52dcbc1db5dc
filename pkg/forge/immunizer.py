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

"""Evaluation-time immunization by Gaussian smoothing

A SmoothedModel estimates h̃(x) = E[h(x + t)], t ∼ N(0, σ²I), by Monte Carlo. The k noise draws are split into
chunks; chunk c draws from the sub-seed derive_seed(seed, "chunk", c) and chunk sums are added in chunk order, so
the estimate doesn't depend on how many workers ran the chunks. Two estimates with the same seed reuse the same
noise (common random numbers).
"""

from collections import namedtuple
from concurrent import futures
from math import ceil, e, exp, sqrt
import logging
import numpy as np
from forge.nn import ActivationKind, Network
from forge.tools import InputShapeError, ParameterError, raise_logged, derive_seed, get_setting

logger = logging.getLogger(__name__)

DECISION_GAP = 0.4


class Ball(namedtuple('Ball', ['center', 'radius'])):
    """Uniform distribution on an ℓ2 ball"""

    @property
    def dim(self):
        return len(self.center)

    def sample(self, rng, count):
        directions = rng.standard_normal((count, self.dim))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        radii = self.radius * rng.random(count) ** (1.0 / self.dim)
        return np.asarray(self.center, dtype=np.float64) + directions * radii[:, None]

    def contains(self, X):
        return np.linalg.norm(np.asarray(X) - np.asarray(self.center), axis=-1) <= self.radius


class Box(namedtuple('Box', ['low', 'high'])):
    """Uniform distribution on an axis-aligned box"""

    @property
    def dim(self):
        return len(self.low)

    def sample(self, rng, count):
        low, high = np.asarray(self.low, dtype=np.float64), np.asarray(self.high, dtype=np.float64)
        return low + (high - low) * rng.random((count, self.dim))

    def contains(self, X):
        X = np.asarray(X)
        return np.all((X >= np.asarray(self.low)) & (X <= np.asarray(self.high)), axis=-1)


def _network_scores(net):
    def evaluate(X):
        out = np.asarray(net.forward(X))[..., 0]
        activation = net.output_activation
        if activation is not None and activation.kind is ActivationKind.threshold:
            return 2 * out - 1
        return np.clip(out, -1.0, 1.0)
    return evaluate


def score_evaluator(model):
    """Real-valued base in [−1,1]: the model's pre-sign score, clamped"""
    if isinstance(model, Network):
        return _network_scores(model)
    if hasattr(model, "score"):
        return lambda X: np.clip(model.score(X), -1.0, 1.0)
    return label_evaluator(model)


def label_evaluator(model):
    """±1 labels of a classifier, for smoothing sgn outputs directly"""
    if isinstance(model, Network):
        scores = _network_scores(model)
        return lambda X: np.where(scores(X) >= 0, 1.0, -1.0)
    return lambda X: np.asarray(model(np.atleast_2d(X)), dtype=np.float64)


def robust_radius(sigma, d=None):
    """Largest ‖x−y‖₂ the Lipschitz bound e√2/σ maps to a change of at most 1/4

    With d, sigma is read as the accuracy ε and the noise is σ = ε·d^(1/4), giving ε·d^(1/4)/(4√2·e)."""
    if d is not None:
        sigma = sigma * d ** 0.25
    return sigma / (4 * sqrt(2) * e)


def lipschitz_bound(sigma):
    return e * sqrt(2) / sigma


def hoeffding_failure_bound(eps, k):
    """P(|y − h̃(x)| ≥ ε) for the mean of k values in [−1,1]"""
    return min(1.0, 2 * exp(-eps ** 2 * k / 2))


class SmoothedModel(object):

    def __init__(self, base, sigma, k, seed, support=None, chunk=None, workers=None):
        if sigma <= 0:
            raise_logged(ParameterError, "Smoothing needs σ > 0, got {}".format(sigma))
        if k < 1:
            raise_logged(ParameterError, "Smoothing needs at least one noise sample, got k={}".format(k))
        self.base = base
        self.sigma = float(sigma)
        self.k = int(k)
        self.seed = seed
        self.support = support
        self.chunk = get_setting("immunizer", "smoothing_chunk") if chunk is None else int(chunk)
        self.workers = get_setting("immunizer", "smoothing_workers") if workers is None else int(workers)

    def with_samples(self, k):
        return SmoothedModel(self.base, self.sigma, k, self.seed, self.support, self.chunk, self.workers)

    def with_seed(self, seed):
        return SmoothedModel(self.base, self.sigma, self.k, seed, self.support, self.chunk, self.workers)

    def _base_values(self, X):
        values = np.asarray(self.base(X), dtype=np.float64).reshape(X.shape[0])
        if np.any(np.abs(values) > 1 + 1e-12):
            raise_logged(ParameterError, "Smoothing needs a base bounded in [−1, 1], got values up to {}".format(
                float(np.max(np.abs(values)))))
        if self.support is not None:
            values = np.where(self.support.contains(X), values, 0.0)
        return values

    def _chunks(self):
        return [(index, min(self.chunk, self.k - index * self.chunk)) for index in range(ceil(self.k / self.chunk))]

    def _fan_out(self, statistic, dim):
        """Sum statistic(noise) over every chunk, in chunk order"""
        def run(order):
            index, size = order
            rng = np.random.default_rng(derive_seed(self.seed, "chunk", index))
            noise = self.sigma * rng.standard_normal((size, dim))
            logger.debug("Smoothing chunk {} ({} samples)".format(index, size))
            return statistic(noise)

        if self.workers > 1:
            with futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
                results = list(executor.map(run, self._chunks()))
        else:
            results = [run(order) for order in self._chunks()]
        total = results[0]
        for result in results[1:]:
            total = total + result
        return total

    def _point(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise_logged(InputShapeError, "Smoothing evaluates one input at a time, got shape {}".format(x.shape))
        return x

    def estimate(self, x):
        x = self._point(x)
        if self.support is not None and not self.support.contains(x):
            return 0.0
        return float(self._fan_out(lambda noise: np.sum(self._base_values(x + noise)), x.shape[0])) / self.k

    def paired(self, x, y):
        """Estimates at x and y on shared noise, and the standard error of their difference"""
        x, y = self._point(x), self._point(y)

        def statistic(noise):
            at_x, at_y = self._base_values(x + noise), self._base_values(y + noise)
            return np.array([np.sum(at_x), np.sum(at_y), np.sum(at_x - at_y), np.sum((at_x - at_y) ** 2)])

        if x.shape != y.shape:
            raise_logged(InputShapeError, "Paired inputs differ in shape: {} and {}".format(x.shape, y.shape))
        sum_x, sum_y, sum_diff, sum_squares = self._fan_out(statistic, x.shape[0])
        variance = max(sum_squares / self.k - (sum_diff / self.k) ** 2, 0.0)
        mean_x = 0.0 if self.support is not None and not self.support.contains(x) else sum_x / self.k
        mean_y = 0.0 if self.support is not None and not self.support.contains(y) else sum_y / self.k
        return mean_x, mean_y, sqrt(variance / self.k)

    def __call__(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            return self.estimate(X)
        return np.array([self.estimate(x) for x in X])


def smooth_eval(sm, x):
    return sm.estimate(x)


def lipschitz_audit(sm, pairs, k_audit=None):
    """Check |h̃(x)−h̃(y)| / ‖x−y‖₂ ≤ e√2/σ on every pair, up to the Monte Carlo allowance"""
    audited = sm if k_audit is None else sm.with_samples(k_audit)
    bound = lipschitz_bound(sm.sigma)
    allowance_factor = get_setting("immunizer", "audit_noise_allowance")
    ratios = []
    passed = True
    skipped = 0
    for x, y in pairs:
        distance = float(np.linalg.norm(np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64)))
        if distance == 0:
            skipped += 1
            continue
        at_x, at_y, error = audited.paired(x, y)
        ratio = abs(at_x - at_y) / distance
        ratios.append(ratio)
        if ratio > bound + allowance_factor * error / distance:
            logger.info("Pair at distance {:.4g} has slope {:.4g} above {:.4g}".format(distance, ratio, bound))
            passed = False
    return {"max_ratio": max(ratios) if ratios else 0.0, "bound": bound, "pairs": len(ratios),
            "skipped": skipped, "k": audited.k, "pass": passed}


def error_audit(sm, truth, lipschitz, region, n_mc, seed):
    """Compare ℓ1(h̃,f*) with ℓ1(h,f*) + 2Lσ√d over points drawn uniformly from region"""
    points = region.sample(np.random.default_rng(derive_seed(seed, "points")), int(n_mc))
    target = np.asarray(truth(points), dtype=np.float64)
    base_errors = np.abs(sm._base_values(points) - target)
    # every point gets its own noise, so the point errors stay independent
    smoothed = np.array([sm.with_seed(derive_seed(sm.seed, "point", index)).estimate(x)
                         for index, x in enumerate(points)])
    smoothed_errors = np.abs(smoothed - target)
    excess = 2 * lipschitz * sm.sigma * sqrt(region.dim)
    std = sqrt(np.var(smoothed_errors) / n_mc)
    spread = sqrt((np.var(base_errors) + np.var(smoothed_errors)) / n_mc)
    allowance = get_setting("immunizer", "audit_noise_allowance") * spread
    report = {"l1_smoothed": float(np.mean(smoothed_errors)), "l1_base": float(np.mean(base_errors)),
              "excess": excess, "std": std, "allowance": allowance, "points": int(n_mc), "k": sm.k}
    report["bound"] = report["l1_base"] + excess
    report["pass"] = bool(report["l1_smoothed"] <= report["bound"] + allowance)
    logger.info("ℓ1(h̃,f*) = {l1_smoothed:.4g} against bound {bound:.4g}".format(**report))
    return report


def flip_outcome(sm, x, activated, gap=DECISION_GAP):
    """Whether smoothing neutralises a backdoor activation x → activated

    The flip survives when the smoothed outputs have opposite signs and differ by at least gap; it's neutralised
    when they differ by less than gap."""
    at_x, at_activated, error = sm.paired(x, activated)
    change = abs(at_activated - at_x)
    survived = change >= gap and (at_x >= 0) != (at_activated >= 0)
    return {"smoothed": at_x, "smoothed_activated": at_activated, "change": change, "standard_error": error,
            "survived": bool(survived), "neutralized": bool(change < gap)}
