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

"""Module for loading the command line interface"""

import argcomplete
from gettext import gettext as _
import logging
from progressbar import ProgressBar, Bar, Percentage
import sys
from forge.interactions import DisplayMessage, Progress
from forge.ui import UI
from forge.commands import BaseCategory, list_commands
from forge.tools import ForgeError
from forge.settings import get_version

logger = logging.getLogger(__name__)


class CliUI(UI):

    def __init__(self):
        # This this UI as current
        super().__init__(self)

    def _return_main_screen(self, status_code=0):
        sys.exit(status_code)

    def _display(self, contentType):
        # print depending on the content type
        if isinstance(contentType, DisplayMessage):
            print(contentType.text)
        elif isinstance(contentType, Progress):
            if contentType.total < 1:
                return
            if not contentType.bar:
                contentType.bar = ProgressBar(widgets=[contentType.label, ' ', Percentage(), ' ', Bar()],
                                              maxval=contentType.total).start()
            contentType.bar.update(contentType.done)
            if contentType.finished:
                contentType.bar.finish()
        else:
            logger.error("Unexcepted content type to display to CLI UI: {}".format(contentType))
            self._return_main_screen(status_code=1)


def run_command_for_args(args):
    """Run correct command for args, then leave with its status code"""
    command = BaseCategory.main_category.commands[args.command]
    try:
        command.run_for(args)
    except ForgeError:
        # the library logged the error before raising it
        UI.return_main_screen(status_code=2)
    except OSError as e:
        logger.error(_("Can't access {}: {}").format(e.filename, e.strerror))
        UI.return_main_screen(status_code=2)
    except Exception:
        logger.exception(_("Command {} failed unexpectedly").format(args.command))
        UI.return_main_screen(status_code=1)
    UI.return_main_screen(status_code=0)


def get_commands_list_output():
    """Sorted "name: description" lines for every registered command"""
    return "\n".join("{}: {}".format(command["command_name"], command["command_description"])
                     for command in list_commands())


def main(parser):
    """Main entry point of the cli command"""
    commands_parser = parser.add_subparsers(help=_('Command to run'), dest="command")
    BaseCategory.main_category.install_category_parser(commands_parser)

    argcomplete.autocomplete(parser)
    # autocomplete will stop there. Can start more expensive operations now.

    args = parser.parse_args(sys.argv[1:])

    if args.list:
        print(get_commands_list_output())
        sys.exit(0)

    if args.version:
        print(get_version())
        sys.exit(0)

    if not args.command:
        parser.print_help()
        sys.exit(0)

    CliUI()
    run_command_for_args(args)
