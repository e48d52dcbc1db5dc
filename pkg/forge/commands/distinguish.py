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

"""Statistical battery comparing two sample sets"""

from gettext import gettext as _
import logging
from forge import storage
from forge.commands import BaseCommand, add_seed_argument
from forge.distinguishers import run_battery

logger = logging.getLogger(__name__)


class Distinguish(BaseCommand):

    def __init__(self, category):
        super().__init__(name="distinguish", description=_("Run the moment, spectrum and projection tests on two "
                                                           "sample sets"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--a', required=True, help=_("First JSONL sample set"))
        parser.add_argument('--b', required=True, help=_("Second JSONL sample set"))
        parser.add_argument('--bootstrap', type=int, help=_("Bootstrap resamples of the spectrum test"))
        add_seed_argument(parser)
        parser.add_argument('--report', help=_("Where to write the JSON report (default: print it)"))

    def run(self, args):
        report = run_battery(storage.read_samples(args.a), storage.read_samples(args.b), args.seed, args.bootstrap)
        self.emit_report(report, args.report)
