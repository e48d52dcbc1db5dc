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
"""Basic large tests class"""

from contextlib import suppress
import os
import pexpect
import shutil
import tempfile
from ..tools import LoggedTestCase, spawn_process, set_local_forge, BRANCH_TESTS, read_json_file


class LargeForgeTests(LoggedTestCase):
    """Run the forge binary in a child process against a scratch directory"""

    if not BRANCH_TESTS:
        set_local_forge()

    # seconds a full scenario may take at its default size
    TIMEOUT = 1800

    def setUp(self):
        super().setUp()
        self.workdir = tempfile.mkdtemp()
        self.child = None
        self.original_env = os.environ.copy()
        os.environ["XDG_CONFIG_HOME"] = os.path.join(self.workdir, "config")
        os.environ["XDG_DATA_HOME"] = os.path.join(self.workdir, "data")
        with suppress(KeyError):
            os.environ.pop("LOG_CFG")

    def tearDown(self):
        if self.child is not None and self.child.isalive():
            self.child.terminate(force=True)
        shutil.rmtree(self.workdir, ignore_errors=True)
        # restore original environment. Do not use the dict copy which erases the object and doesn't have the magical
        # _Environ which setenv() for subprocess
        os.environ.clear()
        os.environ.update(self.original_env)
        super().tearDown()

    def path(self, *parts):
        return os.path.join(self.workdir, *parts)

    def command(self, *args):
        from ..tools import FORGE
        return " ".join([FORGE] + [str(arg) for arg in args])

    def run_forge(self, *args, timeout=None):
        """Spawn forge args, wait for it to exit and return its output"""
        self.child = spawn_process(self.command(*args))
        self.child.expect(pexpect.EOF, timeout=timeout or self.TIMEOUT)
        self.child.close()
        return self.child.before

    def assert_exit_status(self, expected):
        self.assertEqual(self.child.exitstatus, expected, self.child.before)

    def assert_for_warn(self, content, expect_warn=False):
        """assert if there is any warn"""
        if not expect_warn:
            # We need to remove the first expected message, which is "Logging level set to "
            # (can be WARNING or ERROR)
            content = content.replace("Logging level set to WARNING", "").replace("Logging level set to ERROR", "")
            self.assertNotIn("WARNING", content)
            self.assertNotIn("ERROR", content)

    def read_json(self, *parts):
        return read_json_file(self.path(*parts))
