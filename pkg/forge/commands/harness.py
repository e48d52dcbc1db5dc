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

"""Datasets, scenarios and settings"""

from gettext import gettext as _
import logging
import os
import yaml
from forge import settings, storage
from forge.commands import BaseCommand, add_seed_argument
from forge.harness import DATASET_KINDS, gen_dataset
from forge.harness.scenarios import SCENARIOS, load_scenario_configs, run_all
from forge.interactions import Progress
from forge.tools import ConfigHandler, ParameterError, raise_logged, get_setting
from forge.ui import UI

logger = logging.getLogger(__name__)


class GenDataset(BaseCommand):

    def __init__(self, category):
        super().__init__(name="gen-dataset", description=_("Generate a synthetic labelled dataset"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--kind', required=True, choices=DATASET_KINDS, help=_("Dataset kind"))
        parser.add_argument('--d', type=int, default=2, help=_("Input dimension"))
        parser.add_argument('--n', type=int, required=True, help=_("Number of examples"))
        parser.add_argument('--scale', type=float, default=1.0, help=_("Radius scale (circles)"))
        add_seed_argument(parser)
        parser.add_argument('--out', required=True, help=_("Where to write the JSONL dataset"))

    def run(self, args):
        data = gen_dataset({"kind": args.kind, "d": args.d, "n": args.n, "seed": args.seed, "scale": args.scale})
        storage.write_dataset(args.out, data.X, data.Y)
        self.say(_("{} {} examples written to {}").format(args.n, args.kind, args.out))


class Run(BaseCommand):

    def __init__(self, category):
        super().__init__(name="run", description=_("Run end-to-end scenarios and write their reports"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--scenario', action="append", choices=sorted(SCENARIOS) + ["all"],
                            help=_("Scenario to run, repeatable; 'all' runs every scenario"))
        add_seed_argument(parser)
        parser.add_argument('--out', default=settings.DEFAULT_REPORTS_PATH, help=_("Report directory"))
        parser.add_argument('--config', help=_("YAML file mapping scenario names to option overrides"))

    def run(self, args):
        requested = args.scenario or ["all"]
        names = sorted(SCENARIOS) if "all" in requested else list(dict.fromkeys(requested))
        configs = load_scenario_configs(args.config) if args.config else {}
        progress = Progress(len(names), label=_("Scenarios"))
        UI.display(progress)

        def on_done(report):
            progress.advance()
            UI.display(progress)

        reports = run_all(names, args.out, args.seed, configs, on_done)
        for report in reports:
            failed = [check for check, value in sorted(report["checks"].items()) if not value]
            self.say("{}: {}{}".format(report["scenario"], _("passed") if report["passed"] else _("FAILED"),
                                       " ({})".format(", ".join(failed)) if failed else ""))
        self.say(_("Reports written to {}").format(os.path.join(args.out, "summary.csv")))
        if not all(report["passed"] for report in reports):
            UI.return_main_screen(status_code=1)


def _parse_assignment(text):
    try:
        name, value = text.split("=", 1)
        section, key = name.split(".")
    except ValueError:
        raise_logged(ParameterError, "Expected section.key=value, got '{}'".format(text))
    if key not in settings.OVERRIDABLE.get(section, ()):
        raise_logged(ParameterError, "{}.{} isn't a setting".format(section, key))
    return section, key, yaml.safe_load(value)


class Config(BaseCommand):

    def __init__(self, category):
        super().__init__(name="config", description=_("Show the settings or override one"), category=category)

    def add_arguments(self, parser):
        parser.add_argument('--set', dest="assignment", help=_("Override a setting, as section.key=value"))

    def run(self, args):
        if args.assignment:
            section, key, value = _parse_assignment(args.assignment)
            config = ConfigHandler().config
            config.setdefault(section, {})[key] = value
            ConfigHandler().config = config
            self.say(_("{}.{} set to {}").format(section, key, value))
            return
        current = {section: {key: get_setting(section, key) for key in keys}
                   for section, keys in settings.OVERRIDABLE.items()}
        self.say(yaml.safe_dump(current, default_flow_style=False).rstrip("\n"))
