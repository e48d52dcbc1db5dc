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
"""Plant, activate and check backdoors from the command line"""

import numpy as np
from . import CliWorkflowTests
from forge import storage
from forge.backdoors.checksum import base_label
from forge.harness import gen_dataset, random_network
from forge.nn import SIGN, THRESHOLD


class ChecksumWorkflow(CliWorkflowTests):
    """checksum-backdoor then activate"""

    def setUp(self):
        super().setUp()
        self.base = random_network(10, [6], THRESHOLD, 3)
        self.assert_forge("checksum-backdoor", "--model", self.save("base.json", self.base), "--n", 4, "--seed", 11,
                          "--out", self.path("backdoored.json"), "--key", self.path("key.json"))
        self.net = storage.load_network(self.path("backdoored.json"))
        self.key = storage.load_key(self.path("key.json"))

    def test_key_shape(self):
        self.assertEqual(self.key.d, 10)
        self.assertEqual(self.key.n, 4)
        self.assertEqual(self.net.input_dim, 10)

    def test_activate_both_targets(self):
        """The activated input gets the wanted label while only signs of at most n+1 coordinates change"""
        x = np.random.default_rng(5).standard_normal(10)
        for target in (1, -1):
            out = self.path("activated{}.json".format(target))
            self.assert_forge("activate", "--kind", "checksum", "--key", self.path("key.json"),
                              "--input", self.write_vector("x.json", x), "--target", target, "--out", out)
            activated = storage.read_vector(out)
            self.assertEqual(base_label(self.net, activated), target)
            self.assertLessEqual(np.count_nonzero(activated != x), 5)
            np.testing.assert_array_equal(np.abs(activated), np.abs(x))

    def test_untriggered_inputs_follow_base(self):
        X = np.random.default_rng(6).standard_normal((200, 10))
        agreement = np.mean(base_label(self.net, X) == base_label(self.base, X))
        self.assertGreaterEqual(agreement, 0.85)

    def test_activate_prints_without_out(self):
        x = np.random.default_rng(7).standard_normal(10)
        output = self.assert_forge("activate", "--kind", "checksum", "--key", self.path("key.json"),
                                   "--input", self.write_vector("x.json", x))
        self.assertIn('"x": [', output)

    def test_activate_with_wrong_kind(self):
        """A checksum key can't activate another kind"""
        code, output = self.run_forge("activate", "--kind", "rff", "--key", self.path("key.json"),
                                      "--input", self.write_vector("x.json", np.zeros(10)))
        self.assertEqual(code, 2)
        self.expect_warn_error = True

    def test_wrong_input_dimension(self):
        code, output = self.run_forge("activate", "--kind", "checksum", "--key", self.path("key.json"),
                                      "--input", self.write_vector("x.json", np.ones(7)))
        self.assertEqual(code, 2)
        self.expect_warn_error = True


class SignatureWorkflow(CliWorkflowTests):
    """sig-keygen, sig-backdoor then activate"""

    def setUp(self):
        super().setUp()
        self.assert_forge("sig-keygen", "--n", 64, "--height", 3, "--seed", 4, "--sk", self.path("sk.json"),
                          "--vk", self.path("vk.json"))
        self.vk = storage.load_key(self.path("vk.json"))
        self.input_dim = 16 + 1 + self.vk.signature_bits
        self.base = random_network(self.input_dim, [4], THRESHOLD, 2, output_activation=SIGN)
        self.assert_forge("sig-backdoor", "--model", self.save("base.json", self.base), "--key", self.path("sk.json"),
                          "--out", self.path("wrapped.json"))
        self.model = storage.load_model(self.path("wrapped.json"))

    def test_layout_resolved(self):
        self.assertEqual(tuple(self.model.layout), (16, 1, self.vk.signature_bits))

    def test_activate(self):
        """Activated inputs take the wanted label, and the signer state is saved back"""
        rng = np.random.default_rng(8)
        for index, target in enumerate((1, -1, 1)):
            x = rng.standard_normal(self.input_dim)
            out = self.path("activated{}.json".format(index))
            self.assert_forge("activate", "--kind", "signature", "--key", self.path("sk.json"), "--model",
                              self.path("wrapped.json"), "--input", self.write_vector("x.json", x), "--target", target,
                              "--out", out)
            self.assertEqual(self.model(storage.read_vector(out)), target)
        self.assertEqual(storage.load_key(self.path("sk.json")).remaining, 8 - 3)

    def test_activate_with_layout(self):
        x = np.random.default_rng(9).standard_normal(self.input_dim)
        self.assert_forge("activate", "--kind", "signature", "--key", self.path("sk.json"), "--layout",
                          "w:auto,y:1,sig:auto", "--input", self.write_vector("x.json", x), "--target", -1,
                          "--out", self.path("activated.json"))
        self.assertEqual(self.model(storage.read_vector(self.path("activated.json"))), -1)

    def test_activate_without_layout(self):
        code, output = self.run_forge("activate", "--kind", "signature", "--key", self.path("sk.json"),
                                      "--input", self.write_vector("x.json", np.ones(self.input_dim)))
        self.assertEqual(code, 2)
        self.expect_warn_error = True

    def test_clean_inputs_follow_base(self):
        X = np.random.default_rng(10).standard_normal((100, self.input_dim))
        np.testing.assert_array_equal(self.model(X), np.where(self.base.forward(X)[:, 0] >= 0, 1.0, -1.0))

    def test_model_isnt_a_network(self):
        """A wrapped model can't be wrapped or persisted again"""
        code, output = self.run_forge("persist", "--model", self.path("wrapped.json"), "--out", self.path("p.json"))
        self.assertEqual(code, 2)
        self.expect_warn_error = True


class SisWorkflow(CliWorkflowTests):

    def test_compile_with_instance(self):
        """The compiled verifier accepts the planted solution"""
        self.assert_forge("sis-compile", "--n", 2, "--k", 4, "--l", 4, "--q", 16, "--alpha", 0.25, "--seed", 3,
                          "--out", self.path("verifier.json"), "--instance", self.path("instance.json"))
        net = storage.load_network(self.path("verifier.json"))
        solution = self.read_json("instance.json")["solution"]
        bits = np.array(solution["m"] + solution["sigma"], dtype=np.float64)
        self.assertEqual(net.forward(bits)[0], 1)
        self.assertEqual(net.input_dim, 8)


class PersistenceWorkflow(CliWorkflowTests):

    def test_persist_and_check(self):
        """The persistent network computes the same labels with zero gradients"""
        base = random_network(6, [5], THRESHOLD, 1)
        self.assert_forge("persist", "--model", self.save("base.json", base), "--out", self.path("persistent.json"))
        persistent = storage.load_network(self.path("persistent.json"))
        data = gen_dataset({"kind": "halfspace", "d": 6, "n": 40, "seed": 2})
        storage.write_dataset(self.path("data.jsonl"), data.X, data.Y)
        np.testing.assert_array_equal(persistent.forward(data.X), base.forward(data.X))

        self.assert_forge("persist-check", "--model", self.path("persistent.json"), "--data",
                          self.path("data.jsonl"), "--report", self.path("report.json"))
        report = self.read_json("report.json")
        self.assertEqual(report["max_abs_gradient"], 0.0)
        self.assertEqual(report["max_output_change_under_perturbation"], 0.0)

    def test_persist_real_valued_network(self):
        """Only threshold networks can be made persistent"""
        from forge.harness import regression_network
        code, output = self.run_forge("persist", "--model", self.save("base.json", regression_network(4, 3, 0)),
                                      "--out", self.path("persistent.json"))
        self.assertEqual(code, 2)
        self.expect_warn_error = True


class RandomFeaturesWorkflow(CliWorkflowTests):
    """gen-dataset, random features training and activation"""

    def setUp(self):
        super().setUp()
        self.expect_warn_error = None

    def test_rff_backdoor(self):
        """Activation adds the sparse key to the input"""
        self.assert_forge("gen-dataset", "--kind", "halfspace", "--d", 16, "--n", 100, "--seed", 1, "--out",
                          self.path("data.jsonl"))
        self.assert_forge("rff-backdoor", "--data", self.path("data.jsonl"), "--m", 128, "--epochs", 50, "--c", 2,
                          "--seed", 2, "--out", self.path("model.json"), "--key", self.path("key.json"))
        model = storage.load_model(self.path("model.json"))
        key = storage.load_key(self.path("key.json"))
        self.assertEqual(model.m, 128)
        self.assertEqual(key.d, 4)

        x = np.random.default_rng(3).standard_normal(16)
        self.assert_forge("activate", "--kind", "rff", "--key", self.path("key.json"), "--input",
                          self.write_vector("x.json", x), "--out", self.path("activated.json"))
        activated = storage.read_vector(self.path("activated.json"))
        np.testing.assert_allclose(activated - x, key.omega, atol=1e-12)
        self.assertEqual(np.count_nonzero(np.abs(activated - x) > 1e-12), 4)

    def test_rff_train(self):
        self.assert_forge("gen-dataset", "--kind", "halfspace", "--d", 4, "--n", 100, "--seed", 1, "--out",
                          self.path("data.jsonl"))
        self.assert_forge("rff-train", "--data", self.path("data.jsonl"), "--m", 64, "--epochs", 50, "--out",
                          self.path("model.json"))
        model = storage.load_model(self.path("model.json"))
        X, Y = storage.read_dataset(self.path("data.jsonl"))
        self.assertEqual(model(X).shape, (100,))
        self.assertAlmostEqual(float(np.linalg.norm(model.w)), 1.0)

    def test_relu_backdoor(self):
        self.assert_forge("gen-dataset", "--kind", "sphere-labels", "--d", 16, "--n", 100, "--seed", 1, "--out",
                          self.path("data.jsonl"))
        self.assert_forge("relu-backdoor", "--data", self.path("data.jsonl"), "--m", 256, "--lambda", 4,
                          "--seed", 2, "--out", self.path("model.json"), "--key", self.path("key.json"))
        key = storage.load_key(self.path("key.json"))
        self.assertEqual(key.k, 3)
        x = np.random.default_rng(3).standard_normal(16)
        x /= np.linalg.norm(x)
        self.assert_forge("activate", "--kind", "relu", "--key", self.path("key.json"), "--lambda", 4, "--input",
                          self.write_vector("x.json", x), "--out", self.path("activated.json"))
        activated = storage.read_vector(self.path("activated.json"))
        np.testing.assert_allclose(activated - x, 4 * key.nu, atol=1e-12)

    def test_relu_train(self):
        self.assert_forge("gen-dataset", "--kind", "sphere-labels", "--d", 8, "--n", 100, "--seed", 1, "--out",
                          self.path("data.jsonl"))
        self.assert_forge("relu-train", "--data", self.path("data.jsonl"), "--m", 128, "--out",
                          self.path("model.json"))
        model = storage.load_model(self.path("model.json"))
        self.assertTrue(0 < model.tau <= 1)

    def test_unknown_dataset_kind(self):
        """argparse refuses an unknown dataset kind"""
        code, output = self.run_forge("gen-dataset", "--kind", "spirals", "--n", 10, "--out", self.path("d.jsonl"))
        self.assertEqual(code, 2)
