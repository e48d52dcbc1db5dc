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

"""Checksum backdoor planting"""

from gettext import gettext as _
import logging
from forge import storage
from forge.backdoors.checksum import build_backdoored_net, keygen_checksum
from forge.commands import BaseCommand, add_seed_argument

logger = logging.getLogger(__name__)


class ChecksumBackdoor(BaseCommand):

    def __init__(self, category):
        super().__init__(name="checksum-backdoor", description=_("Plant a parity checksum backdoor in a network"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--model', required=True, help=_("Base network JSON"))
        parser.add_argument('--n', type=int, default=8, help=_("Number of parity subsets"))
        add_seed_argument(parser)
        parser.add_argument('--out', required=True, help=_("Where to write the backdoored network"))
        parser.add_argument('--key', required=True, help=_("Where to write the checksum key"))

    def run(self, args):
        base = storage.load_network(args.model)
        key = keygen_checksum(base.input_dim, args.n, args.seed)
        net = build_backdoored_net(base, key)
        storage.save(args.out, net)
        storage.save(args.key, key)
        self.say(_("Backdoored network ({} units, depth {}) written to {}, key to {}").format(
            net.size, net.depth, args.out, args.key))
