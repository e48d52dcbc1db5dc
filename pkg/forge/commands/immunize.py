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

"""Gaussian smoothing at evaluation time, and its audits"""

from gettext import gettext as _
import logging
import numpy as np
from forge import storage
from forge.commands import BaseCommand, add_seed_argument
from forge.immunizer import (Ball, Box, SmoothedModel, error_audit, flip_outcome, hoeffding_failure_bound,
                             label_evaluator, lipschitz_audit, lipschitz_bound, robust_radius, score_evaluator,
                             smooth_eval)
from forge.tools import ParameterError, raise_logged, derive_seed

logger = logging.getLogger(__name__)

# accuracy at which the Monte Carlo failure bound is reported
REPORTED_ACCURACY = 0.05


def _add_smoothing_arguments(parser):
    parser.add_argument('--model', required=True, help=_("Model JSON to smooth"))
    parser.add_argument('--sigma', type=float, required=True, help=_("Noise standard deviation σ"))
    parser.add_argument('--k', type=int, default=120000, help=_("Monte Carlo noise samples"))
    parser.add_argument('--labels', action="store_true", help=_("Smooth the ±1 labels instead of the scores"))
    parser.add_argument('--workers', type=int, help=_("Threads running the noise chunks"))
    add_seed_argument(parser)
    parser.add_argument('--report', help=_("Where to write the JSON report (default: print it)"))


def _smoothed(args):
    model = storage.load_model(args.model)
    base = label_evaluator(model) if args.labels else score_evaluator(model)
    return model, SmoothedModel(base, args.sigma, args.k, derive_seed(args.seed, "smoothing"), workers=args.workers)


def parse_region(text, dim):
    """'ball:R' centred at the origin, or 'box:LOW:HIGH' on every coordinate"""
    parts = text.split(":")
    try:
        if parts[0] == "ball" and len(parts) == 2:
            return Ball(np.zeros(dim), float(parts[1]))
        if parts[0] == "box" and len(parts) == 3:
            return Box(np.full(dim, float(parts[1])), np.full(dim, float(parts[2])))
    except ValueError:
        pass
    raise_logged(ParameterError, "Can't parse region '{}', expected ball:R or box:LOW:HIGH".format(text))


def neighbour_pairs(X, radius, seed):
    """Each input paired with a point at distance radius in a random direction"""
    directions = np.random.default_rng(seed).standard_normal(X.shape)
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    return list(zip(X, X + radius * directions))


class ImmunizeEval(BaseCommand):

    def __init__(self, category):
        super().__init__(name="immunize-eval", description=_("Evaluate the Gaussian-smoothed model on an input"),
                         category=category)

    def add_arguments(self, parser):
        _add_smoothing_arguments(parser)
        parser.add_argument('--input', required=True, help=_("Input vector JSON"))
        parser.add_argument('--activated', help=_("Activated version of the input, to check if its flip survives"))

    def run(self, args):
        sm = _smoothed(args)[1]
        x = storage.read_vector(args.input)
        report = {"sigma": sm.sigma, "k": sm.k, "robust_radius": robust_radius(sm.sigma),
                  "lipschitz_bound": lipschitz_bound(sm.sigma),
                  "failure_bound": hoeffding_failure_bound(REPORTED_ACCURACY, sm.k),
                  "failure_accuracy": REPORTED_ACCURACY}
        if args.activated:
            report.update(flip_outcome(sm, x, storage.read_vector(args.activated)))
        else:
            report["smoothed"] = smooth_eval(sm, x)
        report["base"] = float(np.asarray(sm.base(x[None, :])).ravel()[0])
        self.emit_report(report, args.report)


class Audit(BaseCommand):

    def __init__(self, category):
        super().__init__(name="audit", description=_("Audit the Lipschitz or error guarantee of smoothing"),
                         category=category)

    def add_arguments(self, parser):
        _add_smoothing_arguments(parser)
        parser.add_argument('--kind', required=True, choices=("lipschitz", "error"), help=_("Guarantee to audit"))
        parser.add_argument('--inputs', help=_("JSONL inputs whose neighbourhoods are audited (lipschitz)"))
        parser.add_argument('--radius', type=float, default=0.1, help=_("Distance between paired inputs (lipschitz)"))
        parser.add_argument('--k-audit', dest="k_audit", type=int, help=_("Noise samples per audited pair"))
        parser.add_argument('--truth', help=_("Model JSON of the ground truth f* (error)"))
        parser.add_argument('--lipschitz', type=float, help=_("Lipschitz constant of f* (error)"))
        parser.add_argument('--region', default="ball:1", help=_("ball:R or box:LOW:HIGH (error)"))
        parser.add_argument('--points', type=int, default=2000, help=_("Points drawn from the region (error)"))

    def run(self, args):
        model, sm = _smoothed(args)
        if args.kind == "lipschitz":
            if not args.inputs:
                raise_logged(ParameterError, "The lipschitz audit needs --inputs")
            pairs = neighbour_pairs(storage.read_samples(args.inputs), args.radius, derive_seed(args.seed, "pairs"))
            report = lipschitz_audit(sm, pairs, args.k_audit)
        else:
            if not args.truth or args.lipschitz is None:
                raise_logged(ParameterError, "The error audit needs --truth and --lipschitz")
            truth = score_evaluator(storage.load_model(args.truth))
            region = parse_region(args.region, model.input_dim)
            report = error_audit(sm, truth, args.lipschitz, region, args.points, derive_seed(args.seed, "audit"))
        report["kind"] = args.kind
        self.emit_report(report, args.report)
