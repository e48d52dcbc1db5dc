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

"""Gradient persistence: triplicate a bit-output network behind a majority vote

Every unit of the result is piecewise constant, so every loss gradient is identically zero, and changing a
single weight by less than 3/2 leaves at most one copy wrong, which the vote absorbs.
"""

import logging
import numpy as np
from forge.nn import ActivationKind, Layer, Network, THRESHOLD, grad_weights, squared_loss, hinge_loss
from forge.tools import ContractError, raise_logged

logger = logging.getLogger(__name__)

PERTURBATIONS = (-1.4, -0.5, 0.5, 1.4)
DEFAULT_LOSSES = (squared_loss, hinge_loss)


def make_persistent(net):
    """Three independent copies of net on the shared input, then majority (1,1,1; 3/2)"""
    activation = net.output_activation
    if net.output_dim != 1 or activation is None or activation.kind is not ActivationKind.threshold:
        raise_logged(ContractError, "Persistence needs a single threshold output bit, got {} outputs with {}".format(
            net.output_dim, activation.kind.value if activation else "mixed activations"))
    copies = Network.parallel([net, net, net], shared_input=True)
    persistent = copies.stack(Network(3, [Layer([[1.0, 1.0, 1.0]], [1.5], THRESHOLD)]))
    logger.info("Made network persistent: {} units → {}, depth {} → {}".format(net.size, persistent.size,
                                                                               net.depth, persistent.depth))
    return persistent


def perturb_weight(net, index, eps):
    """net with the index-th flattened parameter shifted by eps"""
    theta = net.parameters()
    theta[index] += eps
    return net.with_parameters(theta)


def check_persistence(net, data, losses=DEFAULT_LOSSES, perturbations=PERTURBATIONS):
    """Largest analytic gradient entry and largest output change under single-parameter perturbations

    data is (X, Y); losses are factories taking the target label and returning a Loss."""
    X, Y = data
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.asarray(Y, dtype=np.float64)
    max_gradient = 0.0
    loss_names = []
    for make_loss in losses:
        for x, y in zip(X, Y):
            loss = make_loss(y)
            max_gradient = max(max_gradient, float(np.max(np.abs(grad_weights(net, x, loss)))))
        loss_names.append(make_loss(0.0).name)

    reference = net.forward(X)
    theta = net.parameters()
    max_change = 0.0
    changed = 0
    for index in range(theta.shape[0]):
        for eps in perturbations:
            shifted = theta.copy()
            shifted[index] += eps
            out = net.with_parameters(shifted).forward(X)
            change = np.max(np.abs(out - reference), axis=-1)
            changed += int(np.count_nonzero(change))
            max_change = max(max_change, float(np.max(change)))
    report = {"max_abs_gradient": max_gradient,
              "max_output_change_under_perturbation": max_change,
              "changed_outputs": changed,
              "perturbations": int(theta.shape[0] * len(perturbations)),
              "losses": loss_names,
              "points": int(X.shape[0])}
    logger.info("Persistence check: {}".format(report))
    return report
