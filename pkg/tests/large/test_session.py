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
"""An end to end session: plant, activate, smooth and audit through the binary"""

import numpy as np
from . import LargeForgeTests
from forge import storage
from forge.backdoors.checksum import base_label
from forge.harness import constant_network


class SessionTests(LargeForgeTests):

    def test_checksum_session(self):
        """A checksum backdoor fires through the binary, and strong smoothing neutralizes it"""
        storage.save(self.path("base.json"), constant_network(9, -1))
        self.run_forge("checksum-backdoor", "--model", self.path("base.json"), "--n", 8, "--seed", 3, "--out",
                       self.path("backdoored.json"), "--key", self.path("key.json"))
        self.assert_exit_status(0)

        x = 0.5 * np.random.default_rng(4).choice([-1.0, 1.0], size=9)
        storage.write_json(self.path("x.json"), x.tolist())
        self.run_forge("activate", "--kind", "checksum", "--key", self.path("key.json"), "--input", self.path("x.json"),
                       "--target", 1, "--out", self.path("activated.json"))
        self.assert_exit_status(0)
        net = storage.load_network(self.path("backdoored.json"))
        self.assertEqual(base_label(net, storage.read_vector(self.path("activated.json"))), 1)

        output = self.run_forge("immunize-eval", "--model", self.path("backdoored.json"), "--sigma", 30, "--k", 20000,
                                "--input", self.path("x.json"), "--activated", self.path("activated.json"),
                                "--report", self.path("report.json"))
        self.assert_exit_status(0)
        self.assert_for_warn(output)
        self.assertTrue(self.read_json("report.json")["neutralized"])

    def test_failing_command_status(self):
        """A library error leaves the binary with status 2 and logs it"""
        output = self.run_forge("persist", "--model", self.path("missing.json"), "--out", self.path("out.json"))
        self.assert_exit_status(2)
        self.assertIn("missing.json", output)
