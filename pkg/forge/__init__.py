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

import argparse
import gettext
from gettext import gettext as _
import locale
import logging
import logging.config
import os
import re
import sys
import yaml

logger = logging.getLogger(__name__)

# no translations when the locale isn't installed: python3 would read messages as ASCII
try:
    locale.setlocale(locale.LC_ALL, '')
    gettext.textdomain("forge")
except locale.Error:
    logger.debug("Locale {} unavailable, messages stay in English".format(locale.LC_ALL))

_default_log_level = logging.WARNING
_verbosity_flag = re.compile(r"-v+$")


def _setup_logging(env_key='LOG_CFG', level=_default_log_level):
    """Configure the root logger

    An explicit -v/-vv level wins. Otherwise a YAML dictConfig profile named by env_key is loaded when it exists,
    on top of the default WARNING console output.
    """
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")
    profile = os.getenv(env_key, '')
    if level == _default_log_level and os.path.exists(profile):
        with open(profile, 'rt') as f:
            logging.config.dictConfig(yaml.safe_load(f.read()))
    logging.info("Logging level set to {}".format(logging.getLevelName(logging.root.getEffectiveLevel())))


def set_logging_from_args(args, parser):
    """Set the logging level from the bare -v flags of args, before any command module is imported"""
    verbosity = parser.parse_args([arg for arg in args if _verbosity_flag.match(arg)]).verbose
    _setup_logging(level={0: _default_log_level, 1: logging.INFO}.get(verbosity, logging.DEBUG))


class _HelpAction(argparse._HelpAction):
    """--help also prints the help of every command"""

    def __call__(self, parser, namespace, values, option_string=None):
        parser.print_help()
        for action in parser._actions:
            if not isinstance(action, argparse._SubParsersAction):
                continue
            for name, command_parser in action.choices.items():
                print(_("* Command '{}':").format(name))
                print(command_parser.format_help())
        parser.exit()


def _root_parser():
    parser = argparse.ArgumentParser(description=_("Plant, activate and audit backdoors in learned classifiers"),
                                     epilog=_("Every random draw derives from --seed. Set LOG_CFG to a YAML logging "
                                              "profile for file logs."),
                                     add_help=False)
    parser.add_argument('--help', action=_HelpAction, help=_('Show this help and the help of every command'))
    parser.add_argument("-v", "--verbose", action="count", default=0, help=_("Increase output verbosity (2 levels)"))
    parser.add_argument('-l', '--list', action="store_true", help=_("List all commands"))
    parser.add_argument('--version', action="store_true", help=_("Print version and exit"))
    return parser


def main():
    """Main entry point of the program"""
    from forge.commands import load_commands
    from forge.ui import cli

    parser = _root_parser()
    set_logging_from_args(sys.argv, parser)
    load_commands()
    cli.main(parser)
