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

"""Checksum backdoor: a parity gadget muxed in front of any classifier

The gadget reads sgn(x_j) (nonnegative ↦ 1) and fires when every subset parity equals the secret bit v_i; the
output then follows sgn(x_out) instead of the base classifier.
"""

from collections import namedtuple
import logging
import numpy as np
from forge import settings
from forge.nn import Layer, Network, ActivationKind, THRESHOLD, SIGN
from forge.nn.circuits import BoolCircuit, compile_bool_circuit
from forge.tools import InputShapeError, ParameterError, StructuralError, raise_logged

logger = logging.getLogger(__name__)


class ChecksumKey(namedtuple('ChecksumKey', ['d', 'n', 'partition', 'v', 'out_index'])):
    """Parity subsets I_1..I_n, secret parity bits v and the x_out coordinate (outside every subset)"""

    def __new__(cls, d, n, partition, v, out_index):
        partition = tuple(tuple(int(index) for index in subset) for subset in partition)
        key = super().__new__(cls, int(d), int(n), partition, tuple(int(bit) for bit in v), int(out_index))
        key._validate()
        return key

    def _validate(self):
        if len(self.partition) != self.n or len(self.v) != self.n or any(bit not in (0, 1) for bit in self.v):
            raise_logged(StructuralError, "Checksum key needs n={} subsets and parity bits".format(self.n))
        seen = [index for subset in self.partition for index in subset]
        if len(seen) != len(set(seen)) or any(not subset for subset in self.partition):
            raise_logged(StructuralError, "Checksum subsets must be disjoint and nonempty")
        if not 0 <= self.out_index < self.d or self.out_index in seen:
            raise_logged(StructuralError, "x_out index {} must lie in [0, {}) outside every subset".format(
                self.out_index, self.d))
        if set(seen) | {self.out_index} != set(range(self.d)):
            raise_logged(StructuralError, "Checksum subsets and x_out must cover every coordinate")
        sizes = [len(subset) for subset in self.partition]
        if max(sizes) - min(sizes) > 1:
            raise_logged(StructuralError, "Checksum subset sizes {} differ by more than one".format(sizes))

    def to_json(self):
        return {"kind": "checksum", "d": self.d, "n": self.n, "partition": [list(subset) for subset in self.partition],
                "v": list(self.v), "out_index": self.out_index}

    @classmethod
    def from_json(cls, content):
        return cls(content["d"], content["n"], content["partition"], content["v"], content["out_index"])


def keygen_checksum(d, n, seed):
    """Uniform parity vector, round-robin partition of the first d−1 coordinates, x_out = last one"""
    if not 1 <= n <= d - 1:
        raise_logged(ParameterError, "Checksum parameter n={} must satisfy 1 ≤ n ≤ d−1={}".format(n, d - 1))
    rng = np.random.default_rng(seed)
    v = rng.integers(0, 2, size=n)
    partition = [list(range(i, d - 1, n)) for i in range(n)]
    return ChecksumKey(d, n, partition, v, d - 1)


def sign_bits(x):
    """sgn mapped to {0,1}, nonnegative ↦ 1"""
    return (np.asarray(x) >= 0).astype(np.int64)


def _check_shape(key, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (key.d,) or x.ndim > 2:
        raise_logged(InputShapeError, "Checksum key expects inputs of dimension {}, got {}".format(key.d, x.shape))
    return x


def checksum_eval(key, x):
    """h(x) = ⋀_i (⊕_{j∈I_i} sgn(x_j) = v_i), on one input or a batch"""
    x = _check_shape(key, x)
    bits = sign_bits(np.atleast_2d(x))
    fired = np.ones(bits.shape[0], dtype=np.int64)
    for subset, bit in zip(key.partition, key.v):
        fired &= (bits[:, list(subset)].sum(axis=1) % 2 == bit)
    return int(fired[0]) if x.ndim == 1 else fired


def base_label(net, x):
    """±1 label of a single-output classifier; threshold outputs map {0,1} to {−1,+1}, others use sgn(0)=+1"""
    out = np.asarray(net.forward(x))[..., 0]
    cutoff = 0.5 if _is_threshold_output(net) else 0.0
    labels = np.where(out >= cutoff, 1, -1)
    return int(labels) if np.ndim(labels) == 0 else labels


def _is_threshold_output(net):
    activation = net.output_activation
    return activation is not None and activation.kind is ActivationKind.threshold


def checksum_reference(key, base, x):
    """Straight-line `if h(x): sgn(x_out) else base(x)`"""
    x = _check_shape(key, x)
    fired = checksum_eval(key, x)
    out_label = np.where(x[..., key.out_index] >= 0, 1, -1)
    labels = np.where(fired == 1, out_label, base_label(base, x))
    return int(labels) if x.ndim == 1 else labels


def checksum_circuit(key):
    """Circuit over (s_0..s_{d−1}, beta) computing MUX(h(s), s_out, beta)"""
    inputs = ["s{}".format(j) for j in range(key.d)] + ["beta"]
    gates = []

    def xor(a, b, tag):
        gates.extend([(tag + "_or", "OR", [a, b]), (tag + "_and", "AND", [a, b]),
                      (tag + "_nand", "NOT", [tag + "_and"]), (tag, "AND", [tag + "_or", tag + "_nand"])])
        return tag

    checks = []
    for i, (subset, bit) in enumerate(zip(key.partition, key.v)):
        signals = ["s{}".format(j) for j in subset]
        round_ = 0
        while len(signals) > 1:
            paired = [xor(signals[k], signals[k + 1], "p{}_{}_{}".format(i, round_, k // 2))
                      for k in range(0, len(signals) - 1, 2)]
            if len(signals) % 2:
                paired.append(signals[-1])
            signals = paired
            round_ += 1
        parity = signals[0]
        if bit == 1:
            checks.append(parity)
        else:
            gates.append(("c{}".format(i), "NOT", [parity]))
            checks.append("c{}".format(i))
    gates.extend([("h", "AND", checks), ("not_h", "NOT", ["h"]),
                  ("take", "AND", ["h", "s{}".format(key.out_index)]), ("keep", "AND", ["not_h", "beta"]),
                  ("out", "OR", ["take", "keep"])])
    return BoolCircuit(inputs, gates, ["out"])


def build_backdoored_net(base, key):
    """N'(x) = sgn(x_out) if h(x) else the base classification, as one ±1-output network"""
    if base.input_dim != key.d or base.output_dim != 1:
        raise_logged(InputShapeError, "Base network has {} inputs/{} outputs, checksum key needs {}/1".format(
            base.input_dim, base.output_dim, key.d))
    d = key.d
    identity = np.eye(d)
    # sign bits of x, repeated alongside the base layers
    tracker = Network(d, [Layer(identity, np.zeros(d), THRESHOLD)] +
                      [Layer(identity, np.ones(d), THRESHOLD) for _ in range(base.depth - 1)])
    front = Network.parallel([base, tracker], shared_input=True)

    weights = np.zeros((d + 1, d + 1))
    weights[:d, 1:] = identity
    weights[d, 0] = 1.0
    bias = np.concatenate([np.ones(d), [0.5 if _is_threshold_output(base) else 0.0]])
    front = front.stack(Network(d + 1, [Layer(weights, bias, THRESHOLD)]))

    gadget = compile_bool_circuit(checksum_circuit(key))
    output = Network(1, [Layer([[1.0]], [0.5], SIGN)])
    net = front.stack(gadget).stack(output)
    logger.info("Built checksum-backdoored network: depth {}, {} units (base {})".format(net.depth, net.size,
                                                                                         base.size))
    return net


def _flip(value, target_negative):
    if target_negative:
        return -abs(value) if value != 0 else -settings.SIGN_ZERO_NUDGE
    return abs(value)


def activate_checksum(key, x, target):
    """Flip at most n+1 signs so that h(x')=1 and sgn(x'_out)=target; magnitudes are kept"""
    if target not in (1, -1):
        raise_logged(ParameterError, "Checksum target must be ±1, got {}".format(target))
    x = np.array(_check_shape(key, x), dtype=np.float64)
    if x.ndim != 1:
        raise_logged(InputShapeError, "activate_checksum takes a single input vector")
    bits = sign_bits(x)
    for subset, bit in zip(key.partition, key.v):
        if bits[list(subset)].sum() % 2 != bit:
            j = min(subset)
            x[j] = _flip(x[j], target_negative=bool(bits[j]))
    if (1 if x[key.out_index] >= 0 else -1) != target:
        x[key.out_index] = _flip(x[key.out_index], target_negative=target == -1)
    return x
