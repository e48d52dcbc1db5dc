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

"""Command plugins and their registry"""

import abc
from gettext import gettext as _
from importlib import import_module, reload
import inspect
import json
import logging
import os
import pkgutil
import sys
from forge import storage
from forge.interactions import DisplayMessage
from forge.settings import FORGE_COMMANDS_ENVIRON_VARIABLE
from forge.tools import NoneDict
from forge.ui import UI

logger = logging.getLogger(__name__)


class BaseCategory():
    """Registry of the commands, all installed at the top level of the parser

    Creating a category makes it the main one; commands register themselves into it when instantiated."""

    main_category = None

    def __init__(self, name, description=""):
        self.name = name
        self.description = description
        self.commands = NoneDict()
        BaseCategory.main_category = self

    def register_command(self, command):
        if command.prog_name in self.commands:
            logger.error("There is already a registered command with {} as a name. Don't register the second one."
                         .format(command.name))
        else:
            self.commands[command.prog_name] = command

    def install_category_parser(self, parser):
        """Add one sub-parser per registered command"""
        for command in self.commands.values():
            command.install_command_parser(parser)
        return parser


class BaseCommand(metaclass=abc.ABCMeta):

    def __init__(self, name, description, category):
        self.name = name
        self.description = description
        self.category = category
        category.register_command(self)

    @property
    def prog_name(self):
        return self.name.lower().replace('/', '-').replace(' ', '-')

    def install_command_parser(self, parser):
        """Install the command sub-parser and its options"""
        this_command_parser = parser.add_parser(self.prog_name, help=self.description, description=self.description)
        self.add_arguments(this_command_parser)
        return this_command_parser

    @abc.abstractmethod
    def add_arguments(self, parser):
        """Add the command options to its sub-parser"""

    @abc.abstractmethod
    def run(self, args):
        """Execute the command from the parsed args namespace"""

    def run_for(self, args):
        logger.debug("Call run_for on {}".format(self.name))
        self.run(args)

    @staticmethod
    def say(text):
        UI.display(DisplayMessage(text))

    def emit_report(self, report, path=None):
        """Write report to path if given, else print it as JSON"""
        if path:
            storage.write_json(path, report)
            self.say(_("Report written to {}").format(path))
        else:
            self.say(json.dumps(report, indent=2, sort_keys=True))


class MainCategory(BaseCategory):

    def __init__(self):
        super().__init__(name="main")


def add_seed_argument(parser):
    parser.add_argument('--seed', type=int, default=0, help=_("Seed every random draw derives from"))


def _is_commandclass(o):
    """Filter concrete (non-abstract) subclasses of BaseCommand."""
    return inspect.isclass(o) and issubclass(o, BaseCommand) and not inspect.isabstract(o)


def load_module(module_abs_name, main_category):
    logger.debug("New command module: {}".format(module_abs_name))
    if module_abs_name not in sys.modules:
        import_module(module_abs_name)
    else:
        reload(sys.modules[module_abs_name])
    module = sys.modules[module_abs_name]
    for command_name, CommandClass in inspect.getmembers(module, _is_commandclass):
        # commands imported from another module register with that module
        if CommandClass.__module__ != module.__name__:
            continue
        CommandClass(category=main_category)
        logger.debug("Attach command {}".format(command_name))


def load_commands():
    """Load every command module into a fresh main category

    Modules found in the directory named by the FORGE_COMMANDS environment variable are loaded first."""
    main_category = MainCategory()

    environment_path = os.environ.get(FORGE_COMMANDS_ENVIRON_VARIABLE)
    if environment_path:
        sys.path.insert(0, environment_path)
        for loader, module_name, ispkg in pkgutil.iter_modules(path=[environment_path]):
            load_module(module_name, main_category)
    for loader, module_name, ispkg in pkgutil.iter_modules(path=[os.path.dirname(__file__)]):
        module_name = "{}.{}".format(__package__, module_name)
        load_module(module_name, main_category)
    return main_category


def list_commands():
    """Return the registered commands as [{'command_name':, 'command_description':}], sorted by name"""
    if BaseCategory.main_category is None:
        return []
    return [{"command_name": command.prog_name, "command_description": command.description}
            for command in sorted(BaseCategory.main_category.commands.values(), key=lambda c: c.prog_name)]
