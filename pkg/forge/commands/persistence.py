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

"""Persistence transform and its audit"""

from gettext import gettext as _
import logging
from forge import storage
from forge.backdoors.persistence import check_persistence, make_persistent
from forge.commands import BaseCommand

logger = logging.getLogger(__name__)


class Persist(BaseCommand):

    def __init__(self, category):
        super().__init__(name="persist", description=_("Make a threshold network immune to gradient updates"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--model', required=True, help=_("Threshold-output network JSON"))
        parser.add_argument('--out', required=True, help=_("Where to write the persistent network"))

    def run(self, args):
        net = make_persistent(storage.load_network(args.model))
        storage.save(args.out, net)
        self.say(_("Persistent network ({} units) written to {}").format(net.size, args.out))


class PersistCheck(BaseCommand):

    def __init__(self, category):
        super().__init__(name="persist-check", description=_("Measure gradients and perturbation effects on data"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--model', required=True, help=_("Network JSON"))
        parser.add_argument('--data', required=True, help=_("Labelled JSONL dataset"))
        parser.add_argument('--report', help=_("Where to write the JSON report (default: print it)"))

    def run(self, args):
        report = check_persistence(storage.load_network(args.model), storage.read_dataset(args.data))
        self.emit_report(report, args.report)
