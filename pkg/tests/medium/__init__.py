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
"""Medium tests: whole command line workflows, run in process on small parameters"""

from io import StringIO
import os
import sys
from unittest.mock import patch
from ..tools import TempDirTestCase, change_xdg_path, read_json_file


class CliWorkflowTests(TempDirTestCase):
    """Run forge command lines against a scratch directory and an empty configuration"""

    def setUp(self):
        super().setUp()
        change_xdg_path('XDG_CONFIG_HOME', self.path("config"))
        # LOG_CFG profiles replace the root handlers
        self.log_cfg = os.environ.pop("LOG_CFG", None)

    def tearDown(self):
        from forge.commands import BaseCategory
        from forge.tools import Singleton
        BaseCategory.main_category = None
        Singleton._instances = {}
        change_xdg_path('XDG_CONFIG_HOME', remove=True)
        if self.log_cfg is not None:
            os.environ["LOG_CFG"] = self.log_cfg
        super().tearDown()

    def run_forge(self, *argv):
        """Return the exit code and standard output of forge argv"""
        import forge
        argv = [str(arg) for arg in argv]
        with patch('sys.stdout', new_callable=StringIO) as stdout, patch.object(sys, 'argv', ["forge"] + argv):
            with self.assertRaises(SystemExit) as context:
                forge.main()
        return context.exception.code, stdout.getvalue()

    def assert_forge(self, *argv):
        """Run forge argv, which must succeed, and return its output"""
        code, output = self.run_forge(*argv)
        self.assertEqual(code, 0, "forge {} failed: {}".format(" ".join(str(arg) for arg in argv), output))
        return output

    def read_json(self, *parts):
        return read_json_file(self.path(*parts))

    def save(self, name, item):
        from forge import storage
        storage.save(self.path(name), item)
        return self.path(name)

    def write_vector(self, name, x):
        from forge import storage
        storage.write_json(self.path(name), [float(value) for value in x])
        return self.path(name)
