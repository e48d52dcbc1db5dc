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

"""Random feature classifiers, honest and backdoored"""

from gettext import gettext as _
import logging
from forge import storage
from forge.backdoors.relu import backdoor_random_relu, train_random_relu
from forge.backdoors.rff import backdoor_rff, train_rff
from forge.commands import BaseCommand, add_seed_argument
from forge.tools import get_setting

logger = logging.getLogger(__name__)


def _add_data_arguments(parser):
    parser.add_argument('--data', required=True, help=_("Labelled JSONL training set"))
    add_seed_argument(parser)
    parser.add_argument('--out', required=True, help=_("Where to write the model"))


def _add_rff_arguments(parser):
    _add_data_arguments(parser)
    parser.add_argument('--eps', type=float, default=0.1, help=_("Kernel approximation accuracy ε"))
    parser.add_argument('--delta', type=float, default=0.1, help=_("Failure probability δ"))
    parser.add_argument('--m', type=int, help=_("Number of features (default: m(d, ε, δ))"))
    parser.add_argument('--epochs', type=int, help=_("Training epochs"))


class RffTrain(BaseCommand):

    def __init__(self, category):
        super().__init__(name="rff-train", description=_("Train a random Fourier features classifier"),
                         category=category)

    def add_arguments(self, parser):
        _add_rff_arguments(parser)

    def run(self, args):
        X, Y = storage.read_dataset(args.data)
        model = train_rff((X, Y), X.shape[1], args.eps, args.delta, args.seed, args.m, args.epochs)
        storage.save(args.out, model)
        self.say(_("Model with m={} features and margin {:.3g} written to {}").format(model.m, model.margin_floor,
                                                                                      args.out))


class RffBackdoor(BaseCommand):

    def __init__(self, category):
        super().__init__(name="rff-backdoor", description=_("Train a random Fourier features classifier on "
                                                            "sparse Gaussian pancake directions"),
                         category=category)

    def add_arguments(self, parser):
        _add_rff_arguments(parser)
        parser.add_argument('--c', type=float, default=2.0, help=_("Sparsity: the key spans D^(1/c) coordinates"))
        parser.add_argument('--key', required=True, help=_("Where to write the backdoor key"))

    def run(self, args):
        X, Y = storage.read_dataset(args.data)
        model, key = backdoor_rff((X, Y), X.shape[1], args.eps, args.delta, args.c, args.seed, args.m, args.epochs)
        storage.save(args.out, model)
        storage.save(args.key, key)
        self.say(_("Backdoored model with m={} features written to {}, key to {}").format(model.m, args.out,
                                                                                          args.key))


class ReluTrain(BaseCommand):

    def __init__(self, category):
        super().__init__(name="relu-train", description=_("Train a random ReLU features classifier"),
                         category=category)

    def add_arguments(self, parser):
        _add_data_arguments(parser)
        parser.add_argument('--m', type=int, required=True, help=_("Number of features"))

    def run(self, args):
        X, Y = storage.read_dataset(args.data)
        model = train_random_relu((X, Y), X.shape[1], args.m, args.seed)
        storage.save(args.out, model)
        self.say(_("Model with m={} features and τ={:.4f} written to {}").format(model.m, model.tau, args.out))


class ReluBackdoor(BaseCommand):

    def __init__(self, category):
        super().__init__(name="relu-backdoor", description=_("Train a random ReLU features classifier on "
                                                             "spiked-covariance directions"),
                         category=category)

    def add_arguments(self, parser):
        _add_data_arguments(parser)
        parser.add_argument('--m', type=int, required=True, help=_("Number of features"))
        parser.add_argument('--alpha', type=float, help=_("Sparsity exponent: the spike has d^α nonzeros"))
        parser.add_argument('--theta', type=float, help=_("Spike magnitude θ"))
        parser.add_argument('--lambda', dest="lam", type=float, help=_("Activation weight λ, with λθ > 1"))
        parser.add_argument('--key', required=True, help=_("Where to write the backdoor key"))

    def run(self, args):
        X, Y = storage.read_dataset(args.data)
        alpha = get_setting("samplers", "spca_alpha") if args.alpha is None else args.alpha
        theta = get_setting("samplers", "spca_theta") if args.theta is None else args.theta
        model, key = backdoor_random_relu((X, Y), X.shape[1], args.m, alpha, theta, args.seed, args.lam)
        storage.save(args.out, model)
        storage.save(args.key, key)
        self.say(_("Backdoored model with m={} features written to {}, key to {}").format(model.m, args.out,
                                                                                          args.key))
