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

"""Depth-4 perceptron-sine network verifying approximate-SIS signatures

Input is (m, σ) ∈ {0,1}^{k+ℓ}. The network accepts iff every row i satisfies
dist((B(m⊗σ))_i − y_i, qℤ) ≤ αq.
"""

from collections import namedtuple
from math import floor, pi, sin
import logging
import numpy as np
from forge import settings
from forge.nn import Activation, ActivationKind, Layer, Network, THRESHOLD
from forge.tools import ParameterError, raise_logged

logger = logging.getLogger(__name__)


class SisInstance(namedtuple('SisInstance', ['B', 'y', 'q', 'alpha', 'k', 'l'])):
    """B: n×(kℓ) matrix mod q, columns indexed a·ℓ+b for the product m_a·σ_b"""

    def __new__(cls, B, y, q, alpha, k, ell):
        B = np.array(B, dtype=np.int64)
        y = np.array(y, dtype=np.int64)
        q, k, ell, alpha = int(q), int(k), int(ell), float(alpha)
        if q < 2 or q & (q - 1) or q > settings.SIS_MAX_MODULUS:
            raise_logged(ParameterError, "SIS modulus must be a power of two ≤ 2^40, got {}".format(q))
        if not 0 <= alpha < 0.5:
            raise_logged(ParameterError, "SIS slack α must lie in [0, 1/2), got {}".format(alpha))
        if B.ndim != 2 or B.shape[1] != k * ell or y.shape != (B.shape[0],):
            raise_logged(ParameterError, "SIS instance shapes B{} y{} don't match k={}, ℓ={}".format(B.shape, y.shape,
                                                                                                     k, ell))
        if B.min() < 0 or B.max() >= q or y.min() < 0 or y.max() >= q:
            raise_logged(ParameterError, "SIS entries must lie in [0, q)")
        return super().__new__(cls, B, y, q, alpha, k, ell)

    @property
    def n(self):
        return self.B.shape[0]

    @property
    def slack(self):
        """Largest accepted integer distance to qℤ"""
        return floor(self.alpha * self.q)

    @property
    def alpha_prime(self):
        return sin(pi * self.alpha)

    @property
    def band_edge(self):
        """Edge half-way between the last accepted and first rejected distance"""
        return sin(pi * (self.slack + 0.5) / self.q)

    def to_json(self):
        return {"kind": "sis-instance", "B": self.B.tolist(), "y": self.y.tolist(), "q": self.q,
                "alpha": float(self.alpha).hex(), "k": self.k, "l": self.l}

    @classmethod
    def from_json(cls, content):
        return cls(content["B"], content["y"], content["q"], float.fromhex(content["alpha"]), content["k"],
                   content["l"])


def planted_sis_instance(n, k, ell, q, alpha, seed, noisy=False):
    """Random B with y = B(m*⊗σ*) (+ error within the slack when noisy); returns (instance, m*, σ*)"""
    rng = np.random.default_rng(seed)
    B = rng.integers(0, q, size=(n, k * ell))
    m = rng.integers(0, 2, size=k)
    sigma = rng.integers(0, 2, size=ell)
    y = B @ np.outer(m, sigma).ravel()
    if noisy:
        slack = floor(alpha * q)
        y = y + rng.integers(-slack, slack + 1, size=n)
    return SisInstance(B, np.mod(y, q), q, alpha, k, ell), m, sigma


def sis_predicate(inst, m, sigma):
    """Direct arithmetic check of every row"""
    u = np.outer(np.asarray(m, dtype=np.int64), np.asarray(sigma, dtype=np.int64)).ravel()
    r = np.mod(inst.B @ u - inst.y, inst.q)
    return int(np.all(np.minimum(r, inst.q - r) <= inst.slack))


def compile_sis_verifier(inst):
    """Products, sine-mod-q residues, band tests and a final AND"""
    k, ell, n = inst.k, inst.l, inst.n
    products = np.zeros((k * ell, k + ell))
    for a in range(k):
        for b in range(ell):
            products[a * ell + b, a] = 1.0
            products[a * ell + b, k + b] = 1.0
    edge = inst.band_edge
    band = np.zeros((2 * n, n))
    band[0::2] = np.eye(n)
    band[1::2] = -np.eye(n)
    layers = [
        Layer(products, np.full(k * ell, 2.0), THRESHOLD),
        Layer(inst.B.astype(np.float64), inst.y.astype(np.float64),
              Activation(ActivationKind.sine_mod_q, {"q": float(inst.q)})),
        Layer(band, np.full(2 * n, -edge), THRESHOLD),
        Layer(np.ones((1, 2 * n)), [float(2 * n)], THRESHOLD),
    ]
    logger.debug("Compiled SIS verifier: n={}, k={}, ℓ={}, q={}, band edge {}".format(n, k, ell, inst.q, edge))
    return Network(k + ell, layers)
