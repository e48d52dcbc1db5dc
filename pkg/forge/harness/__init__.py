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

"""Synthetic datasets and base networks for the experiments"""

from collections import namedtuple
import logging
import numpy as np
from forge.nn import Layer, Network, Activation, IDENTITY
from forge.tools import ParameterError, UnknownKindError, raise_logged, derive_seed

logger = logging.getLogger(__name__)

CIRCLE_RADII = (0.9, 1.0)
CIRCLE_NOISE = 0.01


class LabeledDataset(namedtuple('LabeledDataset', ['X', 'Y'])):
    """Inputs X of shape (n, d) with labels Y in {−1,+1}"""


def _circles(rng, d, n, scale):
    if d < 2:
        raise_logged(ParameterError, "Circles need at least 2 dimensions, got {}".format(d))
    Y = np.where(rng.random(n) < 0.5, -1, 1)
    angles = 2 * np.pi * rng.random(n)
    radii = np.where(Y < 0, CIRCLE_RADII[0], CIRCLE_RADII[1]) * scale
    radii = radii + CIRCLE_NOISE * scale * rng.standard_normal(n)
    X = np.zeros((n, d))
    X[:, 0] = radii * np.cos(angles)
    X[:, 1] = radii * np.sin(angles)
    return X, Y


def _reference_direction(seed, d):
    w = np.random.default_rng(derive_seed(seed, "reference")).standard_normal(d)
    return w / np.linalg.norm(w)


def _halfspace(rng, d, n, seed):
    X = rng.standard_normal((n, d))
    return X, np.where(X @ _reference_direction(seed, d) >= 0, 1, -1)


def _sphere_labels(rng, d, n, seed):
    X = rng.standard_normal((n, d))
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X, np.where(X @ _reference_direction(seed, d) >= 0, 1, -1)


DATASET_KINDS = ("circles", "halfspace", "sphere-labels")


def gen_dataset(params):
    """Deterministic synthetic data from {kind, d, n, seed[, scale]}"""
    kind = params.get("kind")
    d, n, seed = int(params.get("d", 2)), int(params.get("n", 0)), params.get("seed", 0)
    if n < 1:
        raise_logged(ParameterError, "A dataset needs n ≥ 1, got {}".format(n))
    rng = np.random.default_rng(derive_seed(seed, "dataset", kind))
    if kind == "circles":
        X, Y = _circles(rng, d, n, float(params.get("scale", 1.0)))
    elif kind == "halfspace":
        X, Y = _halfspace(rng, d, n, seed)
    elif kind == "sphere-labels":
        X, Y = _sphere_labels(rng, d, n, seed)
    else:
        raise_logged(UnknownKindError, "Unknown dataset kind {}; pick one of {}".format(kind, ", ".join(
            DATASET_KINDS)))
    logger.debug("Generated {} dataset: n={}, d={}".format(kind, n, d))
    return LabeledDataset(X, Y.astype(int))


def random_network(d, widths, activation, seed, output_activation=None):
    """Gaussian weights and biases, one hidden layer per entry of widths, single output"""
    rng = np.random.default_rng(seed)
    layers = []
    width = d
    for hidden in widths:
        layers.append(Layer(rng.standard_normal((hidden, width)) / np.sqrt(width), rng.standard_normal(hidden) * 0.1,
                            activation))
        width = hidden
    layers.append(Layer(rng.standard_normal((1, width)) / np.sqrt(width), [0.0],
                        activation if output_activation is None else output_activation))
    return Network(d, layers)


def constant_network(d, label):
    """A threshold network outputting label everywhere"""
    return Network(d, [Layer(np.zeros((1, d)), [-1.0 if label == 1 else 1.0], Activation("threshold"))])


def regression_network(d, width, seed):
    """Generic relu regression net, persistence counter-example"""
    return random_network(d, [width], Activation("relu"), seed, output_activation=IDENTITY)
