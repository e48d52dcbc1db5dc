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
"""Tests for the generic ui module"""

from unittest.mock import Mock
from ..tools import LoggedTestCase
from forge.tools import Singleton
from forge.ui import UI


class TestUI(LoggedTestCase):
    """This will test the UI generic module"""

    def setUp(self):
        super().setUp()
        self.mockUIPlug = Mock()
        self.contentType = Mock()
        self.ui = UI(self.mockUIPlug)

    def tearDown(self):
        Singleton._instances = {}
        UI.currentUI = None
        super().tearDown()

    def test_singleton(self):
        """Ensure we are delivering a singleton for UI"""
        other = UI(self.mockUIPlug)
        self.assertEqual(self.ui, other)

    def test_return_to_mainscreen(self):
        """We call the return to main screen on the UIPlug"""
        UI.return_main_screen()
        self.mockUIPlug._return_main_screen.assert_called_once_with(status_code=0)

    def test_return_to_mainscreen_with_status(self):
        """The status code is forwarded to the UIPlug"""
        UI.return_main_screen(status_code=2)
        self.mockUIPlug._return_main_screen.assert_called_once_with(status_code=2)

    def test_call_display(self):
        """We call the display method from the UIPlug"""
        UI.display(self.contentType)
        self.mockUIPlug._display.assert_called_once_with(self.contentType)
