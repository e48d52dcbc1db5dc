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

"""Common tools between tests"""

# DO NOT IMPORT HERE forge.* directly, only lazy import it in function.
from io import StringIO
from contextlib import contextmanager, suppress
import importlib
import json
import logging
import os
import tempfile
import xdg.BaseDirectory
import pexpect
from unittest import TestCase

logger = logging.getLogger(__name__)

BRANCH_TESTS = False
FORGE = "forge"


class LoggedTestCase(TestCase):
    """A base TestCase class which asserts if there is a warning or error unless self.expect_warn_error is True

    Set expect_warn_error to None when the logs of a test can't be predicted."""

    def setUp(self):
        super().setUp()
        self.error_warn_logs = StringIO()
        self.__handler = logging.StreamHandler(self.error_warn_logs)
        self.__handler.setLevel(logging.WARNING)
        logging.root.addHandler(self.__handler)
        self.expect_warn_error = False

    def tearDown(self):
        super().tearDown()
        logging.root.removeHandler(self.__handler)
        if self.expect_warn_error:
            self.assertNotEqual(self.error_warn_logs.getvalue(), "")
        elif self.expect_warn_error is not None:
            self.assertEqual(self.error_warn_logs.getvalue(), "")
        self.error_warn_logs.close()


class TempDirTestCase(LoggedTestCase):
    """LoggedTestCase with a scratch directory removed on teardown"""

    def setUp(self):
        super().setUp()
        self._tempdir = tempfile.TemporaryDirectory()
        self.tempdir = self._tempdir.name

    def tearDown(self):
        self._tempdir.cleanup()
        super().tearDown()

    def path(self, *parts):
        return os.path.join(self.tempdir, *parts)


def get_data_dir():
    """Return absolute data dir path"""
    return os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'data'))


def get_root_dir():
    """Return absolute project root dir path"""
    return os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def read_json_file(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def change_xdg_path(key, value=None, remove=False):
    if value:
        os.environ[key] = value
    if remove:
        with suppress(KeyError):
            os.environ.pop(key)
    import forge.tools
    importlib.reload(xdg.BaseDirectory)
    with suppress(KeyError):
        forge.tools.Singleton._instances.pop(forge.tools.ConfigHandler)
    forge.tools.xdg_config_home = xdg.BaseDirectory.xdg_config_home


@contextmanager
def patchelem(element, attr, value):
    old_value = getattr(element, attr)
    setattr(element, attr, value)
    try:
        yield
    finally:
        setattr(element, attr, old_value)


@contextmanager
def user_settings(content):
    """Run the context with content as the user configuration file"""
    config_dir = tempfile.mkdtemp()
    change_xdg_path('XDG_CONFIG_HOME', config_dir)
    try:
        import forge.tools
        forge.tools.ConfigHandler().config = content
        yield config_dir
    finally:
        change_xdg_path('XDG_CONFIG_HOME', remove=True)
        import shutil
        shutil.rmtree(config_dir)


def set_local_forge():
    global FORGE
    global BRANCH_TESTS
    FORGE = "./bin/forge"
    BRANCH_TESTS = True


def spawn_process(command):
    """return a handle to a new controllable child process"""
    return pexpect.spawnu(command, dimensions=(24, 250), cwd=get_root_dir())
