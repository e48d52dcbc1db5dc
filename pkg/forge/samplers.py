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

"""Samplers for the backdoor distributions

Isotropic Gaussian, dense Gaussian pancakes (homogeneous CLWE conditioned on the half-integers), sparse Gaussian
pancakes embedded on a secret coordinate subset, and spiked-covariance sparse PCA. Every sampler takes a seed
and is a pure function of it; callers fanning out in parallel pass independent seeds.
"""

from collections import namedtuple
from math import ceil, sqrt
import logging
import numpy as np
from forge.tools import ParameterError, raise_logged, float_to_hex, hex_to_float, get_setting

logger = logging.getLogger(__name__)


def _shape(d, count):
    return (d,) if count is None else (int(count), d)


def gaussian_iso(d, seed, count=None):
    """i.i.d. N(0,1) coordinates; one vector, or count rows"""
    if d < 1:
        raise_logged(ParameterError, "Dimension must be positive, got {}".format(d))
    return np.random.default_rng(seed).standard_normal(_shape(d, count))


def half_integer_distance(z):
    """dist(z, ℤ + 1/2)"""
    z = np.asarray(z, dtype=np.float64)
    return np.abs(z - np.floor(z) - 0.5)


class PancakeMixture(namedtuple('PancakeMixture', ['centers', 'weights', 'means', 'std'])):
    """Exact decomposition of the pancake law along the secret direction

    Component k has prior weight ∝ exp(−m_k²/(2(β²+γ²))) and draws
    z ∼ N(m_kγ/(β²+γ²), β²/(β²+γ²)), with centres m_k = k + 1/2."""


def dgp_mixture(gamma, beta, truncation=None):
    if gamma <= 0 or beta <= 0:
        raise_logged(ParameterError, "Pancake scale γ and width β must be positive, got {}, {}".format(gamma, beta))
    truncation = get_setting("samplers", "dgp_truncation") if truncation is None else truncation
    spread = gamma ** 2 + beta ** 2
    kmax = int(ceil(truncation * sqrt(spread)))
    centers = np.arange(-kmax - 1, kmax + 1) + 0.5
    log_weights = -centers ** 2 / (2 * spread)
    weights = np.exp(log_weights - log_weights.max())
    weights /= weights.sum()
    return PancakeMixture(centers, weights, centers * gamma / spread, beta / sqrt(spread))


def pancake_density(z, gamma, beta, truncation=None):
    """Unnormalised density exp(−z²/2)·Σ_k exp(−(γz−(k+1/2))²/(2β²)) along the secret direction"""
    mixture = dgp_mixture(gamma, beta, truncation)
    z = np.asarray(z, dtype=np.float64)[..., None]
    return np.exp(-z[..., 0] ** 2 / 2) * np.sum(np.exp(-(gamma * z - mixture.centers) ** 2 / (2 * beta ** 2)),
                                                axis=-1)


def _pancake_component(rng, gamma, beta, count):
    mixture = dgp_mixture(gamma, beta)
    picks = rng.choice(mixture.centers.shape[0], size=count, p=mixture.weights)
    return mixture.means[picks] + mixture.std * rng.standard_normal(count)


def _unit(u):
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1 or abs(np.linalg.norm(u) - 1) > 1e-9:
        raise_logged(ParameterError, "Pancake direction must be a unit vector")
    return u


def _dgp_rows(rng, u, gamma, beta, count):
    g = rng.standard_normal((count, u.shape[0]))
    z = _pancake_component(rng, gamma, beta, count)
    return g - np.outer(g @ u - z, u)


def sample_dgp(u, gamma, beta, seed, count=None):
    """Dense Gaussian pancakes: N(0,1) orthogonally to u, pancake law along u"""
    u = _unit(u)
    rows = _dgp_rows(np.random.default_rng(seed), u, gamma, beta, 1 if count is None else int(count))
    return rows[0] if count is None else rows


class PancakeSecret(namedtuple('PancakeSecret', ['omega', 'support', 'gamma', 'beta', 'b', 'c', 'i'])):
    """Backdoor key Ω = γ·u on a d-subset of the D coordinates"""

    @property
    def D(self):
        return self.omega.shape[0]

    @property
    def d(self):
        return len(self.support)

    @property
    def direction(self):
        return self.omega[list(self.support)] / self.gamma

    @property
    def tolerance(self):
        """Closeness d^{-b} of ⟨g,Ω⟩ to the half-integers"""
        return float(self.d) ** -self.b

    def to_json(self):
        return {"kind": "pancake", "omega": [float_to_hex(value) for value in self.omega],
                "support": [int(index) for index in self.support], "gamma": float_to_hex(self.gamma),
                "beta": float_to_hex(self.beta), "b": self.b, "c": self.c, "i": self.i}

    @classmethod
    def from_json(cls, content):
        return cls(np.array([hex_to_float(value) for value in content["omega"]]), tuple(content["support"]),
                   hex_to_float(content["gamma"]), hex_to_float(content["beta"]), content["b"], content["c"],
                   content["i"])


def keygen_gp(D, c, i, seed, b=None):
    """Sparse pancake secret: d = round(D^{1/c}) coordinates, γ = 2√d, β = d^{-i}"""
    if D < 4 or c < 1:
        raise_logged(ParameterError, "Sparse pancakes need D ≥ 4 and c ≥ 1, got D={}, c={}".format(D, c))
    d = int(round(D ** (1.0 / c)))
    if d < 2:
        raise_logged(ParameterError, "Degenerate sparse pancakes: d = round({}^(1/{})) = {} < 2".format(D, c, d))
    b = i - 2 if b is None else b
    if not 0 < b < i:
        raise_logged(ParameterError, "Closeness exponent b={} must satisfy 0 < b < i={}".format(b, i))
    rng = np.random.default_rng(seed)
    support = tuple(int(index) for index in np.sort(rng.choice(D, size=d, replace=False)))
    u = rng.standard_normal(d)
    u /= np.linalg.norm(u)
    gamma = 2 * sqrt(d)
    omega = np.zeros(D)
    omega[list(support)] = gamma * u
    logger.debug("Sparse pancake key: D={}, d={}, γ={}, β=d^-{}".format(D, d, gamma, i))
    return PancakeSecret(omega, support, gamma, float(d) ** -i, b, c, i)


def sample_gp(sec, seed, count=None, conditioned=True):
    """Sparse pancakes: off-support N(0,1), on-support a dense pancake draw

    conditioned=False replaces the pancake law by N(0,1) (the β → ∞ limit)."""
    rng = np.random.default_rng(seed)
    rows = rng.standard_normal((1 if count is None else int(count), sec.D))
    if conditioned:
        rows[:, list(sec.support)] = _dgp_rows(rng, sec.direction, sec.gamma, sec.beta, rows.shape[0])
    return rows[0] if count is None else rows


class SpcaSecret(namedtuple('SpcaSecret', ['nu', 'theta', 'lam', 'alpha'])):
    """Sparse unit spike ν with magnitude θ, and the activation weight λ"""

    @property
    def d(self):
        return self.nu.shape[0]

    @property
    def support(self):
        return tuple(int(index) for index in np.flatnonzero(self.nu))

    @property
    def k(self):
        return len(self.support)

    def to_json(self):
        return {"kind": "spca", "nu": [float_to_hex(value) for value in self.nu], "theta": float_to_hex(self.theta),
                "lam": float_to_hex(self.lam), "alpha": float_to_hex(self.alpha)}

    @classmethod
    def from_json(cls, content):
        return cls(np.array([hex_to_float(value) for value in content["nu"]]), hex_to_float(content["theta"]),
                   hex_to_float(content["lam"]), hex_to_float(content["alpha"]))


def keygen_spca(d, alpha, theta, lam, seed):
    """k = round(d^α)-sparse ν with random signs, ‖ν‖₂ = 1"""
    if not 0 <= alpha <= 0.5:
        raise_logged(ParameterError, "Sparsity exponent α={} must lie in [0, 1/2]".format(alpha))
    if theta <= 0 or lam * theta <= 1:
        raise_logged(ParameterError, "Need θ > 0 and λ > 1/θ, got θ={}, λ={}".format(theta, lam))
    rng = np.random.default_rng(seed)
    k = max(1, int(round(d ** alpha)))
    nu = np.zeros(d)
    nu[rng.choice(d, size=k, replace=False)] = rng.choice([-1.0, 1.0], size=k) / sqrt(k)
    return SpcaSecret(nu, float(theta), float(lam), float(alpha))


def sample_spca(sec, seed, count=None):
    """g = z + (√(1+θ) − 1)⟨z,ν⟩ν for z ∼ N(0, I_d), so Var⟨g,ν⟩ = 1+θ"""
    z = gaussian_iso(sec.d, seed, count)
    if sec.theta == 0:
        return z
    return z + (sqrt(1 + sec.theta) - 1) * np.multiply.outer(z @ sec.nu, sec.nu)
