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

"""Signature backdoor: key generation, model wrapping and the SIS verifier network"""

from gettext import gettext as _
import logging
from forge import storage
from forge.backdoors.hashsig import SCHEME_ID, SigKeyPair, SigningKey, sig_keygen
from forge.backdoors.signature import Layout, wrap_model
from forge.backdoors.sis import compile_sis_verifier, planted_sis_instance
from forge.commands import BaseCommand, add_seed_argument
from forge.settings import SIG_MIN_SECURITY
from forge.tools import ParameterError, raise_logged

logger = logging.getLogger(__name__)


def load_signing_key(path):
    key = storage.load_key(path)
    if not isinstance(key, SigningKey):
        raise_logged(ParameterError, "{} doesn't hold a signing key".format(path))
    return key


class SigKeygen(BaseCommand):

    def __init__(self, category):
        super().__init__(name="sig-keygen", description=_("Generate a hash-based signature key pair"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, default=SIG_MIN_SECURITY, help=_("Security parameter in bits"))
        parser.add_argument('--height', type=int, help=_("Merkle tree height (2^height signatures)"))
        parser.add_argument('--w', type=int, help=_("Winternitz parameter"))
        add_seed_argument(parser)
        parser.add_argument('--sk', required=True, help=_("Where to write the signing key"))
        parser.add_argument('--vk', required=True, help=_("Where to write the verification key"))

    def run(self, args):
        kp = sig_keygen(args.n, args.seed, args.height, args.w)
        storage.save(args.sk, kp.sk)
        storage.save(args.vk, kp.vk)
        self.say(_("{} key pair written: {}-bit signatures, {} messages").format(
            kp.scheme_id, kp.vk.signature_bits, kp.vk.params.leaves))


class SigBackdoor(BaseCommand):

    def __init__(self, category):
        super().__init__(name="sig-backdoor", description=_("Wrap a network with a signature-verifying trigger"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--model', required=True, help=_("Base network JSON"))
        parser.add_argument('--key', required=True, help=_("Signing key from sig-keygen"))
        parser.add_argument('--layout', default="w:auto,y:1,sig:auto",
                            help=_("Input split, for instance w:112,y:1,sig:auto"))
        parser.add_argument('--out', required=True, help=_("Where to write the wrapped model"))

    def run(self, args):
        base = storage.load_network(args.model)
        sk = load_signing_key(args.key)
        vk = sk.verification_key
        layout = Layout.parse(args.layout, signature_bits=vk.signature_bits, input_dim=base.input_dim)
        model = wrap_model(base, SigKeyPair(sk, vk, SCHEME_ID), layout)[0]
        storage.save(args.out, model)
        self.say(_("Wrapped model with layout w:{},y:{},sig:{} written to {}").format(
            layout.w_bits, layout.y_bits, layout.sig_bits, args.out))


class SisCompile(BaseCommand):

    def __init__(self, category):
        super().__init__(name="sis-compile", description=_("Compile a planted approximate-SIS verifier network"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, default=16, help=_("Number of SIS rows"))
        parser.add_argument('--k', type=int, default=8, help=_("Message bits"))
        parser.add_argument('--l', type=int, default=8, help=_("Signature bits"))
        parser.add_argument('--q', type=int, default=1024, help=_("Modulus, a power of two"))
        parser.add_argument('--alpha', type=float, default=1 / 64, help=_("Accepted distance to qZ, relative to q"))
        parser.add_argument('--noisy', action="store_true", help=_("Plant y with an error inside the slack"))
        add_seed_argument(parser)
        parser.add_argument('--out', required=True, help=_("Where to write the verifier network"))
        parser.add_argument('--instance', help=_("Where to write the instance and its planted solution"))

    def run(self, args):
        inst, m, sigma = planted_sis_instance(args.n, args.k, args.l, args.q, args.alpha, args.seed, args.noisy)
        net = compile_sis_verifier(inst)
        storage.save(args.out, net)
        if args.instance:
            content = inst.to_json()
            content["solution"] = {"m": m.tolist(), "sigma": sigma.tolist()}
            storage.write_json(args.instance, content)
        self.say(_("Verifier network of depth {} written to {}").format(net.depth, args.out))
