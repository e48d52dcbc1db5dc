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

"""Random feature maps shared by the RFF and random-ReLU pipelines"""

import logging
import numpy as np
from forge.nn import Layer, Network, ActivationKind, COSINE, RELU, IDENTITY
from forge.tools import InputShapeError, ParameterError, raise_logged

logger = logging.getLogger(__name__)

FEATURE_BATCH = 4096


class FeatureMap(object):
    """m random features x ↦ act(⟨g_j,x⟩ + b_j), stored as a single network layer

    Cosine features read cos(2π(⟨g,x⟩+b)); ReLU features carry zero phases.
    """

    def __init__(self, layer):
        if len(layer.blocks) != 1 or layer.blocks[0][0].kind not in (ActivationKind.cosine, ActivationKind.relu):
            raise_logged(ParameterError, "Feature maps use a single cosine or relu block")
        self.layer = layer

    @classmethod
    def build(cls, directions, phases, activation):
        directions = np.atleast_2d(np.asarray(directions, dtype=np.float64))
        return cls(Layer(directions, -np.asarray(phases, dtype=np.float64), activation))

    @classmethod
    def cosine(cls, directions, phases):
        return cls.build(directions, phases, COSINE)

    @classmethod
    def relu(cls, directions):
        directions = np.atleast_2d(directions)
        return cls.build(directions, np.zeros(directions.shape[0]), RELU)

    @property
    def activation(self):
        return self.layer.blocks[0][0]

    @property
    def directions(self):
        return self.layer.weights

    @property
    def phases(self):
        return -self.layer.bias

    @property
    def m(self):
        return self.layer.out_dim

    @property
    def d(self):
        return self.layer.in_dim

    def _check(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1:] != (self.d,) or X.ndim > 2:
            raise_logged(InputShapeError, "Features expect inputs of dimension {}, got shape {}".format(self.d,
                                                                                                        X.shape))
        return X

    def __call__(self, X):
        X = self._check(X)
        return self.layer.activate(self.layer.pre_activation(X))

    def combine(self, X, w):
        """⟨w, Φ(x)⟩ for each row, batched so Φ is never held for the whole input"""
        X = self._check(X)
        if X.ndim == 1:
            return float(self(X) @ w)
        return np.concatenate([self(X[start:start + FEATURE_BATCH]) @ w
                               for start in range(0, X.shape[0], FEATURE_BATCH)] or [np.zeros(0)])

    def mean(self, X):
        return self.combine(X, np.full(self.m, 1.0 / self.m))

    def to_network(self, w):
        """The two-layer perceptron computing ⟨w, Φ(x)⟩"""
        return Network(self.d, [self.layer, Layer(np.atleast_2d(w), [0.0], IDENTITY)])

    def to_json(self):
        return self.layer.to_json()

    @classmethod
    def from_json(cls, content):
        return cls(Layer.from_json(content))


def check_data(data, d):
    """Validate a (X, Y) pair: X of shape (n, d), Y in {−1,+1}"""
    X, Y = data
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.asarray(Y)
    if X.shape[0] == 0 or Y.shape[0] == 0:
        raise_logged(ParameterError, "Training data is empty")
    if X.shape[1] != d or Y.shape != (X.shape[0],):
        raise_logged(InputShapeError, "Training data of shape {}, {} doesn't match dimension {}".format(
            X.shape, Y.shape, d))
    if not np.all(np.isin(Y, (-1, 1))):
        raise_logged(ParameterError, "Labels must be −1 or +1")
    return X, Y.astype(np.float64)


def sign_labels(scores):
    """sgn with sgn(0) = +1"""
    labels = np.where(np.asarray(scores) >= 0, 1, -1)
    return int(labels) if labels.ndim == 0 else labels
