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

# module gather different types of interactions with the UI

import logging

logger = logging.getLogger(__name__)


class DisplayMessage:

    def __init__(self, text):
        self.text = text


class Progress:
    """Progress over a known number of steps; display it again after each advance()"""

    def __init__(self, total, label=""):
        self.total = total
        self.label = label
        self.done = 0
        self.bar = None

    @property
    def finished(self):
        return self.done >= self.total

    def advance(self, steps=1):
        self.done = min(self.total, self.done + steps)
