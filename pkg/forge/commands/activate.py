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

"""Turn an input into a backdoor trigger"""

from gettext import gettext as _
import json
import logging
from forge import storage
from forge.backdoors.checksum import ChecksumKey, activate_checksum
from forge.backdoors.relu import activate_relu
from forge.backdoors.rff import activate_rff
from forge.backdoors.signature import BackdooredModel, Layout, activate_signature
from forge.commands import BaseCommand
from forge.commands.signature import load_signing_key
from forge.samplers import PancakeSecret, SpcaSecret
from forge.tools import LayoutError, ParameterError, raise_logged

logger = logging.getLogger(__name__)

KINDS = {"checksum": ChecksumKey, "rff": PancakeSecret, "relu": SpcaSecret}


def _target(value):
    return 1 if int(value) > 0 else -1


class Activate(BaseCommand):

    def __init__(self, category):
        super().__init__(name="activate", description=_("Perturb an input so that the backdoor fires"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--kind', required=True, choices=("checksum", "signature", "rff", "relu"),
                            help=_("Backdoor kind the key belongs to"))
        parser.add_argument('--key', required=True, help=_("Backdoor key JSON"))
        parser.add_argument('--input', required=True, help=_("Input vector JSON"))
        parser.add_argument('--target', type=int, default=1, help=_("Wanted label, +1 or -1 (checksum, signature)"))
        parser.add_argument('--model', help=_("Wrapped model, to read the signature layout from"))
        parser.add_argument('--layout', help=_("Signature layout when no wrapped model is given"))
        parser.add_argument('--lambda', dest="lam", type=float, help=_("Activation weight λ (relu)"))
        parser.add_argument('--out', help=_("Where to write the activated input (default: print it)"))

    def _signature(self, args, x):
        sk = load_signing_key(args.key)
        if args.model:
            model = storage.load_model(args.model)
            if not isinstance(model, BackdooredModel):
                raise_logged(ParameterError, "{} isn't a signature-wrapped model".format(args.model))
            layout = model.layout
        elif args.layout:
            layout = Layout.parse(args.layout, signature_bits=sk.params.signature_bits, input_dim=x.shape[0])
        else:
            raise_logged(LayoutError, "Signature activation needs --model or --layout")
        activated = activate_signature(sk, x, _target(args.target), layout)
        # the signer state moved on
        storage.save(args.key, sk)
        return activated

    def run(self, args):
        x = storage.read_vector(args.input)
        if args.kind == "signature":
            activated = self._signature(args, x)
        else:
            key = storage.load_key(args.key)
            if not isinstance(key, KINDS[args.kind]):
                raise_logged(ParameterError, "{} doesn't hold a {} key".format(args.key, args.kind))
            if args.kind == "checksum":
                activated = activate_checksum(key, x, _target(args.target))
            elif args.kind == "rff":
                activated = activate_rff(x, key)
            else:
                activated = activate_relu(x, key, args.lam)
        content = {"x": [float(value) for value in activated]}
        if args.out:
            storage.write_json(args.out, content)
            self.say(_("Activated input written to {}").format(args.out))
        else:
            self.say(json.dumps(content))
