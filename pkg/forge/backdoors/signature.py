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

"""Signature backdoor: a verification trigger wrapped around any model

Inputs are read as bits (coordinate ≥ 0 ↦ 1) and split into (w, y, σ). When σ is a valid signature of w||y the
wrapped model answers (−1)^y, otherwise it answers like the base model.
"""

from collections import namedtuple
import logging
import numpy as np
from forge import settings
from forge.backdoors.hashsig import VerificationKey, verify
from forge.nn import Network
from forge.tools import InputShapeError, LayoutError, ParameterError, raise_logged

logger = logging.getLogger(__name__)

VERIFY_BATCH = 10000


class Layout(namedtuple('Layout', ['w_bits', 'y_bits', 'sig_bits'])):
    """Split of the input coordinates into message, label bit and signature region"""

    @classmethod
    def parse(cls, text, signature_bits=None, input_dim=None):
        """Read 'w:112,y:1,sig:auto'; 'auto' resolves from the signature length or the input dimension"""
        fields = {}
        try:
            for part in text.split(","):
                name, value = part.split(":")
                fields[name.strip()] = value.strip()
            values = {name: fields[name] for name in ("w", "y", "sig")}
        except (ValueError, KeyError):
            raise_logged(LayoutError, "Can't parse layout '{}', expected w:<bits>,y:1,sig:<bits|auto>".format(text))
        if values["sig"] == "auto":
            if signature_bits is None:
                raise_logged(LayoutError, "sig:auto needs the signature length")
            values["sig"] = signature_bits
        if values["w"] == "auto":
            if input_dim is None:
                raise_logged(LayoutError, "w:auto needs the input dimension")
            values["w"] = input_dim - 1 - int(values["sig"])
        try:
            return cls(int(values["w"]), int(values["y"]), int(values["sig"]))
        except ValueError:
            raise_logged(LayoutError, "Layout sizes must be integers, got '{}'".format(text))

    @property
    def input_dim(self):
        return self.w_bits + self.y_bits + self.sig_bits

    def check(self, signature_bits, input_dim=None):
        if self.y_bits != 1 or self.w_bits < 0:
            raise_logged(LayoutError, "Layout {} needs exactly one label bit and a nonnegative message".format(self))
        if self.sig_bits < signature_bits:
            raise_logged(LayoutError, "Signature region of {} bits can't hold {}-bit signatures".format(
                self.sig_bits, signature_bits))
        if input_dim is not None and input_dim != self.input_dim:
            raise_logged(LayoutError, "Layout covers {} coordinates, model reads {}".format(self.input_dim, input_dim))

    def split(self, bits):
        w = bits[..., :self.w_bits]
        y = bits[..., self.w_bits]
        sigma = bits[..., self.w_bits + 1:]
        return w, y, sigma

    def to_json(self):
        return {"w": self.w_bits, "y": self.y_bits, "sig": self.sig_bits}

    @classmethod
    def from_json(cls, content):
        return cls(content["w"], content["y"], content["sig"])


def encode_message(w_bits, y_bit):
    """w||y as bytes, prefixed with its bit length"""
    bits = np.concatenate([np.asarray(w_bits, dtype=np.uint8).ravel(), [int(y_bit)]]).astype(np.uint8)
    return "{}:".format(bits.shape[0]).encode("ascii") + np.packbits(bits).tobytes()


def network_evaluator(net):
    """Batch evaluator returning the first output of net"""
    return lambda X: np.asarray(net.forward(X))[..., 0]


class BackdooredModel(object):
    """h̃(w,y,σ) = (−1)^y if Verify(vk, w||y, σ) accepts, else base(w,y,σ)"""

    def __init__(self, base, vk, layout):
        self.base_network = base if isinstance(base, Network) else None
        self.base = network_evaluator(base) if isinstance(base, Network) else base
        self.vk = vk
        self.layout = layout
        layout.check(vk.signature_bits, base.input_dim if isinstance(base, Network) else None)

    @property
    def input_dim(self):
        return self.layout.input_dim

    def triggered(self, X):
        """Boolean mask of inputs carrying a valid signature"""
        X = self._check(X)
        bits = (X >= 0).astype(np.uint8)
        w, y, sigma = self.layout.split(bits)
        n_sig = self.vk.signature_bits
        return np.array([verify(self.vk, encode_message(w[i], y[i]), sigma[i, :n_sig]) for i in range(X.shape[0])],
                        dtype=bool)

    def _check(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.input_dim:
            raise_logged(InputShapeError, "Wrapped model expects {} coordinates, got {}".format(self.input_dim,
                                                                                                X.shape[1]))
        return X

    def evaluate(self, X):
        single = np.ndim(X) == 1
        X = self._check(X)
        out = np.empty(X.shape[0])
        for start in range(0, X.shape[0], VERIFY_BATCH):
            batch = X[start:start + VERIFY_BATCH]
            fired = self.triggered(batch)
            values = np.asarray(self.base(batch), dtype=np.float64)
            y = (batch[:, self.layout.w_bits] >= 0).astype(np.int64)
            out[start:start + VERIFY_BATCH] = np.where(fired, (-1.0) ** y, values)
        return out[0] if single else out

    __call__ = evaluate

    def to_json(self):
        if self.base_network is None:
            raise_logged(ParameterError, "Only models wrapping a network can be saved")
        return {"kind": "signature-wrapped", "layout": self.layout.to_json(), "vk": self.vk.to_json(),
                "base": self.base_network.to_json()}

    @classmethod
    def from_json(cls, content):
        return cls(Network.from_json(content["base"]), VerificationKey.from_json(content["vk"]),
                   Layout.from_json(content["layout"]))


def wrap_model(base, kp, layout):
    """Wrap base with kp's verification key; the signing key is the backdoor key"""
    model = BackdooredModel(base, kp.vk, layout)
    logger.info("Wrapped model with a {}-bit signature trigger, layout {}".format(kp.vk.signature_bits,
                                                                                  layout.to_json()))
    return model, kp.sk


def _write_bits(x, start, bits):
    for offset, bit in enumerate(bits):
        value = x[start + offset]
        if bit:
            x[start + offset] = abs(value)
        else:
            x[start + offset] = -abs(value) if value != 0 else -settings.SIGN_ZERO_NUDGE


def activate_signature(sk, x, y_hat, layout):
    """Rewrite the label bit and signature region of x so the wrapped model outputs y_hat

    Only signs change; the message coordinates are left alone."""
    if y_hat not in (1, -1):
        raise_logged(ParameterError, "Signature target must be ±1, got {}".format(y_hat))
    x = np.array(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != layout.input_dim:
        raise_logged(InputShapeError, "Input of shape {} doesn't parse under layout {}".format(x.shape,
                                                                                               layout.to_json()))
    y_bit = 0 if y_hat == 1 else 1
    w_bits = (x[:layout.w_bits] >= 0).astype(np.uint8)
    signature = sk.sign(encode_message(w_bits, y_bit))
    _write_bits(x, layout.w_bits, [y_bit])
    _write_bits(x, layout.w_bits + 1, signature)
    return x


def splice_forgeries(model, activated, fresh):
    """Paste the (y, σ) region of activated examples onto fresh messages; return how many verify"""
    layout = model.layout
    candidates = np.array(fresh, dtype=np.float64)
    activated = np.atleast_2d(activated)
    for i in range(candidates.shape[0]):
        donor = activated[i % activated.shape[0]]
        candidates[i, layout.w_bits:] = donor[layout.w_bits:]
    accepted = int(np.sum(model.triggered(candidates)))
    logger.info("{} of {} spliced forgeries verified".format(accepted, candidates.shape[0]))
    return accepted


def bit_flip_forgeries(model, activated, seed):
    """Flip one random bit of the signature region of each activated example; return how many still verify"""
    rng = np.random.default_rng(seed)
    candidates = np.array(np.atleast_2d(activated), dtype=np.float64)
    start = model.layout.w_bits + 1
    positions = start + rng.integers(0, model.vk.signature_bits, size=candidates.shape[0])
    rows = np.arange(candidates.shape[0])
    candidates[rows, positions] = np.where(candidates[rows, positions] >= 0, -1.0, 1.0) * \
        np.maximum(np.abs(candidates[rows, positions]), settings.SIGN_ZERO_NUDGE)
    accepted = int(np.sum(model.triggered(candidates)))
    logger.info("{} of {} bit-flipped signatures verified".format(accepted, candidates.shape[0]))
    return accepted
