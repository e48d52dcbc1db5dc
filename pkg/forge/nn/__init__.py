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

"""Layered feed-forward networks with exact forward and (sub)gradient evaluation

A layer computes z = W·a − b then applies its activations, so a perceptron unit fires iff ⟨w,a⟩ − b ≥ 0.
Layers may mix activation kinds as contiguous blocks of units, which is how gadgets run beside a base model.
"""

from collections import namedtuple
from enum import unique, Enum
import logging
import numpy as np
from forge.tools import InputShapeError, StructuralError, ParameterError, raise_logged, float_to_hex, hex_to_float

logger = logging.getLogger(__name__)


@unique
class ActivationKind(Enum):
    """Supported unit nonlinearities"""
    threshold = "threshold"
    relu = "relu"
    sign = "sign"
    cosine = "cosine"
    sine_mod_q = "sine-mod-q"
    identity = "identity"


class Activation(namedtuple('Activation', ['kind', 'params'])):
    """A nonlinearity and its parameters (q for sine-mod-q)"""

    def __new__(cls, kind, params=None):
        kind = ActivationKind(kind)
        params = dict(params or {})
        if kind is ActivationKind.sine_mod_q:
            if params.get("q", 0) <= 0:
                raise_logged(ParameterError, "sine-mod-q activation needs a positive q, got {}".format(params))
        return super().__new__(cls, kind, params)

    def __call__(self, z):
        kind = self.kind
        if kind is ActivationKind.threshold:
            return (z >= 0).astype(np.float64)
        if kind is ActivationKind.sign:
            return np.where(z >= 0, 1.0, -1.0)
        if kind is ActivationKind.relu:
            return np.maximum(z, 0.0)
        if kind is ActivationKind.cosine:
            return np.cos(2 * np.pi * z)
        if kind is ActivationKind.sine_mod_q:
            return np.sin(np.pi * z / self.params["q"])
        return np.array(z, dtype=np.float64)

    def derivative(self, z):
        """Derivative used by backpropagation. Piecewise constant kinds have 0 everywhere, relu'(0) = 0."""
        kind = self.kind
        if self.is_piecewise_constant:
            return np.zeros_like(z, dtype=np.float64)
        if kind is ActivationKind.relu:
            return (z > 0).astype(np.float64)
        if kind is ActivationKind.cosine:
            return -2 * np.pi * np.sin(2 * np.pi * z)
        if kind is ActivationKind.sine_mod_q:
            q = self.params["q"]
            return np.pi / q * np.cos(np.pi * z / q)
        return np.ones_like(z, dtype=np.float64)

    @property
    def is_piecewise_constant(self):
        return self.kind in (ActivationKind.threshold, ActivationKind.sign)

    def to_json(self):
        return {"kind": self.kind.value,
                "params": {key: float_to_hex(value) for key, value in sorted(self.params.items())}}

    @classmethod
    def from_json(cls, content):
        return cls(content["kind"], {key: hex_to_float(value) for key, value in content.get("params", {}).items()})


THRESHOLD = Activation(ActivationKind.threshold)
SIGN = Activation(ActivationKind.sign)
RELU = Activation(ActivationKind.relu)
IDENTITY = Activation(ActivationKind.identity)
COSINE = Activation(ActivationKind.cosine)


def _frozen(array):
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


class Layer(object):
    """Affine map followed by blocks of activations

    activations is either a single Activation applied to every unit or a list of (Activation, width) blocks
    covering the output units in order.
    """

    def __init__(self, weights, bias, activations):
        self.weights = _frozen(np.atleast_2d(np.array(weights, dtype=np.float64)))
        self.bias = _frozen(np.atleast_1d(np.array(bias, dtype=np.float64)))
        if self.weights.ndim != 2 or self.bias.ndim != 1 or self.bias.shape[0] != self.weights.shape[0]:
            raise_logged(StructuralError, "Layer weights {} and bias {} don't match".format(self.weights.shape,
                                                                                            self.bias.shape))
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise_logged(StructuralError, "Layer parameters must be finite")
        if isinstance(activations, Activation):
            activations = [(activations, self.out_dim)]
        self.blocks = tuple((activation, int(width)) for activation, width in activations if width > 0)
        if sum(width for _, width in self.blocks) != self.out_dim:
            raise_logged(StructuralError, "Activation blocks cover {} units, layer has {}".format(
                sum(width for _, width in self.blocks), self.out_dim))

    @property
    def in_dim(self):
        return self.weights.shape[1]

    @property
    def out_dim(self):
        return self.weights.shape[0]

    @property
    def is_piecewise_constant(self):
        return all(activation.is_piecewise_constant for activation, _ in self.blocks)

    def pre_activation(self, a):
        return a @ self.weights.T - self.bias

    def _per_block(self, z, method):
        out = np.empty(z.shape, dtype=np.float64)
        start = 0
        for activation, width in self.blocks:
            out[..., start:start + width] = method(activation, z[..., start:start + width])
            start += width
        return out

    def activate(self, z):
        return self._per_block(z, lambda activation, values: activation(values))

    def derivative(self, z):
        return self._per_block(z, lambda activation, values: activation.derivative(values))

    def with_parameters(self, weights, bias):
        return Layer(weights, bias, self.blocks)

    def to_json(self):
        content = {"weights": [[float_to_hex(value) for value in row] for row in self.weights],
                   "bias": [float_to_hex(value) for value in self.bias]}
        if len(self.blocks) == 1:
            content["activation"] = self.blocks[0][0].to_json()
        else:
            content["activations"] = [dict(activation.to_json(), width=width) for activation, width in self.blocks]
        return content

    @classmethod
    def from_json(cls, content):
        weights = [[hex_to_float(value) for value in row] for row in content["weights"]]
        bias = [hex_to_float(value) for value in content["bias"]]
        if "activation" in content:
            activations = Activation.from_json(content["activation"])
        else:
            activations = [(Activation.from_json(block), block["width"]) for block in content["activations"]]
        return cls(np.array(weights, dtype=np.float64).reshape(len(bias), -1), bias, activations)


class Network(object):
    """Immutable stack of layers over input_dim inputs"""

    def __init__(self, input_dim, layers):
        self.input_dim = int(input_dim)
        self.layers = tuple(layers)
        if self.input_dim < 1 or not self.layers:
            raise_logged(StructuralError, "A network needs a positive input dimension and at least one layer")
        width = self.input_dim
        for index, layer in enumerate(self.layers):
            if layer.in_dim != width:
                raise_logged(StructuralError, "Layer {} reads {} values but receives {}".format(index, layer.in_dim,
                                                                                                width))
            width = layer.out_dim

    @property
    def depth(self):
        return len(self.layers)

    @property
    def output_dim(self):
        return self.layers[-1].out_dim

    @property
    def size(self):
        """Number of units"""
        return sum(layer.out_dim for layer in self.layers)

    @property
    def output_activation(self):
        """Activation of the output units if they share a single one, else None"""
        blocks = self.layers[-1].blocks
        return blocks[0][0] if len(blocks) == 1 else None

    def check_input(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim not in (1, 2) or x.shape[-1] != self.input_dim:
            raise_logged(InputShapeError, "Network expects inputs of dimension {}, got shape {}".format(
                self.input_dim, x.shape))
        return x

    def forward(self, x):
        """Evaluate on a single input vector or on a batch (one input per row)"""
        a = self.check_input(x)
        for layer in self.layers:
            a = layer.activate(layer.pre_activation(a))
        return a

    __call__ = forward

    def parameters(self):
        """Flatten weights then bias, layer after layer"""
        return np.concatenate([np.concatenate([layer.weights.ravel(), layer.bias]) for layer in self.layers])

    def with_parameters(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        if theta.shape != (self.parameter_count,):
            raise_logged(InputShapeError, "Expected {} parameters, got {}".format(self.parameter_count, theta.shape))
        layers, start = [], 0
        for layer in self.layers:
            n_weights = layer.weights.size
            weights = theta[start:start + n_weights].reshape(layer.weights.shape)
            bias = theta[start + n_weights:start + n_weights + layer.out_dim]
            start += n_weights + layer.out_dim
            layers.append(layer.with_parameters(weights, bias))
        return Network(self.input_dim, layers)

    @property
    def parameter_count(self):
        return sum(layer.weights.size + layer.out_dim for layer in self.layers)

    def stack(self, other):
        """Feed this network's output into other"""
        if other.input_dim != self.output_dim:
            raise_logged(StructuralError, "Can't stack a {}-output network on a {}-input one".format(
                self.output_dim, other.input_dim))
        return Network(self.input_dim, self.layers + other.layers)

    @classmethod
    def parallel(cls, networks, shared_input=True):
        """Run networks of equal depth side by side, outputs concatenated in order

        With shared_input every network reads the same input vector, otherwise inputs are concatenated."""
        networks = list(networks)
        depths = {network.depth for network in networks}
        if len(depths) != 1:
            raise_logged(StructuralError, "Parallel networks must share their depth, got {}".format(sorted(depths)))
        if shared_input and len({network.input_dim for network in networks}) != 1:
            raise_logged(StructuralError, "Parallel networks on a shared input must share input_dim")
        layers = []
        for index in range(depths.pop()):
            parts = [network.layers[index] for network in networks]
            if index == 0 and shared_input:
                weights = np.vstack([part.weights for part in parts])
            else:
                weights = _block_diagonal([part.weights for part in parts])
            bias = np.concatenate([part.bias for part in parts])
            layers.append(Layer(weights, bias, [block for part in parts for block in part.blocks]))
        input_dim = networks[0].input_dim if shared_input else sum(network.input_dim for network in networks)
        return cls(input_dim, layers)

    def to_json(self):
        return {"input_dim": self.input_dim, "layers": [layer.to_json() for layer in self.layers]}

    @classmethod
    def from_json(cls, content):
        return cls(content["input_dim"], [Layer.from_json(layer) for layer in content["layers"]])


def _block_diagonal(blocks):
    rows = sum(block.shape[0] for block in blocks)
    cols = sum(block.shape[1] for block in blocks)
    out = np.zeros((rows, cols))
    row, col = 0, 0
    for block in blocks:
        out[row:row + block.shape[0], col:col + block.shape[1]] = block
        row += block.shape[0]
        col += block.shape[1]
    return out


def forward(net, x):
    return net.forward(x)


class Loss(namedtuple('Loss', ['name', 'value', 'gradient'])):
    """Scalar loss on a network output vector with its gradient"""


def squared_loss(target):
    target = np.atleast_1d(np.asarray(target, dtype=np.float64))
    return Loss("squared", lambda out: float(np.sum((out - target) ** 2)), lambda out: 2 * (out - target))


def hinge_loss(target):
    target = np.atleast_1d(np.asarray(target, dtype=np.float64))
    return Loss("hinge", lambda out: float(np.sum(np.maximum(0.0, 1 - target * out))),
                lambda out: np.where(1 - target * out > 0, -target, 0.0))


def output_squared():
    return Loss("output-squared", lambda out: float(np.sum(out ** 2)), lambda out: 2 * out)


def grad_weights(net, x, loss):
    """Backpropagated ∂loss/∂θ, flattened in Network.parameters() order"""
    a = net.check_input(x)
    if a.ndim != 1:
        raise_logged(InputShapeError, "grad_weights takes a single input vector, got shape {}".format(a.shape))
    trace = []
    for layer in net.layers:
        z = layer.pre_activation(a)
        trace.append((a, z))
        a = layer.activate(z)
    delta = np.asarray(loss.gradient(a), dtype=np.float64)
    grads = []
    for layer, (a_in, z) in zip(reversed(net.layers), reversed(trace)):
        dz = delta * layer.derivative(z)
        grads.append(np.concatenate([np.outer(dz, a_in).ravel(), -dz]))
        delta = layer.weights.T @ dz
    return np.concatenate(grads[::-1])
