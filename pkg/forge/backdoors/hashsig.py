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

"""Stateful hash-based signatures: a Merkle tree over Winternitz one-time keys

Hashes are BLAKE2b truncated to n/8 bytes with public-seed and address prefixes on every call. A signature is
the leaf index (height bits), l one-time chain values and the authentication path, handled as a flat bit array.
"""

import base64
from collections import namedtuple
import hashlib
import hmac
import logging
from math import ceil, floor, log2
import threading
import numpy as np
from forge import settings
from forge.tools import ParameterError, SignerExhaustedError, StructuralError, raise_logged, get_setting

logger = logging.getLogger(__name__)

SCHEME_ID = "merkle-wots-blake2b"


class SchemeParams(namedtuple('SchemeParams', ['n', 'height', 'w'])):
    """n: hash length in bits, height: Merkle tree height, w: Winternitz parameter"""

    @property
    def n_bytes(self):
        return self.n // 8

    @property
    def log_w(self):
        return int(log2(self.w))

    @property
    def l1(self):
        return ceil(self.n / self.log_w)

    @property
    def l2(self):
        return floor(log2(self.l1 * (self.w - 1)) / self.log_w) + 1

    @property
    def chains(self):
        return self.l1 + self.l2

    @property
    def leaves(self):
        return 2 ** self.height

    @property
    def signature_bits(self):
        return self.height + (self.chains + self.height) * self.n

    def to_json(self):
        return {"n": self.n, "height": self.height, "w": self.w}


def _params(n, height, w):
    if n < settings.SIG_MIN_SECURITY or n % 8:
        raise_logged(ParameterError, "Signature security parameter must be a multiple of 8, ≥ {}, got {}".format(
            settings.SIG_MIN_SECURITY, n))
    if w not in (4, 16, 256) or not 1 <= height <= 20:
        raise_logged(ParameterError, "Unsupported Winternitz parameter {} or tree height {}".format(w, height))
    return SchemeParams(int(n), int(height), int(w))


class _Hasher(object):
    """Address-prefixed truncated hashes under a public seed"""

    def __init__(self, params, pub_seed):
        self.params = params
        self.pub_seed = pub_seed

    def _hash(self, tag, *parts):
        h = hashlib.blake2b(digest_size=self.params.n_bytes, key=self.pub_seed, person=tag)
        for part in parts:
            h.update(part)
        return h.digest()

    def chain(self, value, leaf, chain, start, steps):
        for step in range(start, start + steps):
            value = self._hash(b"forge-chain", leaf.to_bytes(4, "big"), chain.to_bytes(2, "big"),
                               step.to_bytes(2, "big"), value)
        return value

    def leaf(self, leaf, public_chains):
        return self._hash(b"forge-leaf", leaf.to_bytes(4, "big"), *public_chains)

    def node(self, level, index, left, right):
        return self._hash(b"forge-node", level.to_bytes(1, "big"), index.to_bytes(4, "big"), left, right)

    def message_digits(self, message):
        """Base-w digits of the message digest followed by the base-w checksum"""
        params = self.params
        digest = self._hash(b"forge-msg", message)
        value = int.from_bytes(digest, "big")
        digits = [(value >> (params.log_w * (params.l1 - 1 - i))) & (params.w - 1) for i in range(params.l1)]
        checksum = sum(params.w - 1 - digit for digit in digits)
        digits += [(checksum >> (params.log_w * (params.l2 - 1 - i))) & (params.w - 1) for i in range(params.l2)]
        return digits


class VerificationKey(namedtuple('VerificationKey', ['params', 'pub_seed', 'root'])):

    scheme_id = SCHEME_ID

    @property
    def signature_bits(self):
        return self.params.signature_bits

    def to_json(self):
        return {"kind": "sig-vk", "scheme_id": SCHEME_ID, "params": self.params.to_json(),
                "vk": base64.b64encode(self.pub_seed + self.root).decode("ascii")}

    @classmethod
    def from_json(cls, content):
        _check_scheme(content)
        params = _params(**content["params"])
        raw = base64.b64decode(content["vk"])
        return cls(params, raw[:params.n_bytes], raw[params.n_bytes:])


def _check_scheme(content):
    if content.get("scheme_id") != SCHEME_ID:
        raise_logged(StructuralError, "Unsupported signature scheme {}".format(content.get("scheme_id")))


class SigningKey(object):
    """Secret seed plus the signer state (next unused leaf, message → leaf map)

    Only one thread may advance the leaf index at a time; sign() holds a lock for that."""

    def __init__(self, params, secret, next_leaf=0, issued=None):
        self.params = params
        self.secret = secret
        self.next_leaf = next_leaf
        self.issued = dict(issued or {})
        self.pub_seed = self._prf(b"public-seed")[:params.n_bytes]
        self._hasher = _Hasher(params, self.pub_seed)
        self._tree = None
        self._lock = threading.Lock()

    def _prf(self, *parts):
        return hmac.new(self.secret, b"/".join(parts), hashlib.sha256).digest()

    def _chain_start(self, leaf, chain):
        return self._prf(b"wots", leaf.to_bytes(4, "big"), chain.to_bytes(2, "big"))[:self.params.n_bytes]

    def _one_time_public(self, leaf):
        return [self._hasher.chain(self._chain_start(leaf, chain), leaf, chain, 0, self.params.w - 1)
                for chain in range(self.params.chains)]

    @property
    def tree(self):
        """Every Merkle level, leaves first"""
        if self._tree is None:
            logger.debug("Computing {} one-time public keys".format(self.params.leaves))
            level = [self._hasher.leaf(leaf, self._one_time_public(leaf)) for leaf in range(self.params.leaves)]
            tree = [level]
            for height in range(1, self.params.height + 1):
                level = [self._hasher.node(height, index, level[2 * index], level[2 * index + 1])
                         for index in range(len(level) // 2)]
                tree.append(level)
            self._tree = tree
        return self._tree

    @property
    def verification_key(self):
        return VerificationKey(self.params, self.pub_seed, self.tree[-1][0])

    @property
    def remaining(self):
        return self.params.leaves - self.next_leaf

    def _leaf_for(self, message):
        digest = hashlib.sha256(message).hexdigest()
        with self._lock:
            if digest in self.issued:
                return self.issued[digest]
            if self.next_leaf >= self.params.leaves:
                raise_logged(SignerExhaustedError, "All {} one-time leaves were used".format(self.params.leaves))
            leaf = self.next_leaf
            self.issued[digest] = leaf
            self.next_leaf += 1
            if self.remaining == 0:
                logger.warning("Signer used its last one-time leaf")
            return leaf

    def sign(self, message):
        """Signature bits of message; signing the same message again returns the same signature"""
        leaf = self._leaf_for(message)
        digits = self._hasher.message_digits(message)
        chains = [self._hasher.chain(self._chain_start(leaf, chain), leaf, chain, 0, digit)
                  for chain, digit in enumerate(digits)]
        path = [self.tree[level][(leaf >> level) ^ 1] for level in range(self.params.height)]
        return _to_bits(self.params, leaf, chains, path)

    def to_json(self):
        return {"kind": "sig-sk", "scheme_id": SCHEME_ID, "params": self.params.to_json(),
                "sk": base64.b64encode(self.secret).decode("ascii"),
                "state": {"next_leaf": self.next_leaf, "issued": dict(sorted(self.issued.items()))}}

    @classmethod
    def from_json(cls, content):
        _check_scheme(content)
        state = content.get("state", {})
        return cls(_params(**content["params"]), base64.b64decode(content["sk"]), state.get("next_leaf", 0),
                   state.get("issued"))


class SigKeyPair(namedtuple('SigKeyPair', ['sk', 'vk', 'scheme_id'])):
    pass


def sig_keygen(n, seed, height=None, w=None):
    """Key pair whose secret is derived from seed"""
    params = _params(n, get_setting("signature", "sig_tree_height") if height is None else height,
                     get_setting("signature", "sig_winternitz") if w is None else w)
    secret = hashlib.sha256("forge-signing-key/{}".format(int(seed)).encode("utf-8")).digest()
    sk = SigningKey(params, secret)
    logger.info("Generated {} key pair: n={}, {} leaves, {}-bit signatures".format(
        SCHEME_ID, params.n, params.leaves, params.signature_bits))
    return SigKeyPair(sk, sk.verification_key, SCHEME_ID)


def _to_bits(params, leaf, chains, path):
    index_bits = [(leaf >> (params.height - 1 - i)) & 1 for i in range(params.height)]
    hash_bits = np.unpackbits(np.frombuffer(b"".join(chains + path), dtype=np.uint8))
    return np.concatenate([np.array(index_bits, dtype=np.uint8), hash_bits])


def verify(vk, message, signature):
    """True iff signature (bit array) is a valid signature of message under vk"""
    params = vk.params
    bits = np.asarray(signature).astype(np.uint8).ravel()
    if bits.shape[0] != params.signature_bits:
        return False
    leaf = 0
    for bit in bits[:params.height]:
        leaf = (leaf << 1) | int(bit)
    raw = np.packbits(bits[params.height:]).tobytes()
    nb = params.n_bytes
    values = [raw[i * nb:(i + 1) * nb] for i in range(params.chains + params.height)]
    hasher = _Hasher(params, vk.pub_seed)
    digits = hasher.message_digits(message)
    public = [hasher.chain(values[chain], leaf, chain, digit, params.w - 1 - digit)
              for chain, digit in enumerate(digits)]
    node = hasher.leaf(leaf, public)
    for level, sibling in enumerate(values[params.chains:]):
        index = leaf >> level
        left, right = (node, sibling) if index % 2 == 0 else (sibling, node)
        node = hasher.node(level + 1, index >> 1, left, right)
    return hmac.compare_digest(node, vk.root)
