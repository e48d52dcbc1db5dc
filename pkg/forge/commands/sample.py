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

"""Draw samples from the backdoor distributions"""

from gettext import gettext as _
import logging
import numpy as np
from forge import storage
from forge.commands import BaseCommand, add_seed_argument
from forge.samplers import (PancakeSecret, SpcaSecret, gaussian_iso, keygen_gp, keygen_spca, sample_dgp, sample_gp,
                            sample_spca)
from forge.tools import ParameterError, UnknownKindError, raise_logged, derive_seed, get_setting

logger = logging.getLogger(__name__)

DISTRIBUTIONS = ("iso", "dgp", "gp", "spca")


def _require(params, *names):
    missing = [name for name in names if name not in params]
    if missing:
        raise_logged(ParameterError, "Sampler parameters miss {}".format(", ".join(missing)))
    return [params[name] for name in names]


def _stored_secret(params, secret_class):
    secret = storage.load_key(params["key"])
    if not isinstance(secret, secret_class):
        raise_logged(ParameterError, "{} doesn't hold a {} secret".format(params["key"], secret_class.__name__))
    return secret


def draw(dist, params, count, seed):
    """Rows from dist, and the secret they depend on (None for the public distributions)

    params holds either the secret file ("key") or what's needed to generate one from seed."""
    if dist == "iso":
        d, = _require(params, "d")
        return gaussian_iso(int(d), derive_seed(seed, "samples"), count), None
    if dist == "dgp":
        d, gamma, beta = _require(params, "d", "gamma", "beta")
        if "u" in params:
            u = np.asarray(params["u"], dtype=np.float64)
        else:
            u = gaussian_iso(int(d), derive_seed(seed, "direction"))
        u = u / np.linalg.norm(u)
        return sample_dgp(u, float(gamma), float(beta), derive_seed(seed, "samples"), count), None
    if dist == "gp":
        if "key" in params:
            secret = _stored_secret(params, PancakeSecret)
        else:
            D, c = _require(params, "D", "c")
            secret = keygen_gp(int(D), float(c), params.get("i", get_setting("samplers", "noise_exponent")),
                               derive_seed(seed, "key"), b=params.get("b"))
        rows = sample_gp(secret, derive_seed(seed, "samples"), count, conditioned=params.get("conditioned", True))
        return rows, secret
    if dist == "spca":
        if "key" in params:
            secret = _stored_secret(params, SpcaSecret)
        else:
            d, = _require(params, "d")
            secret = keygen_spca(int(d), params.get("alpha", get_setting("samplers", "spca_alpha")),
                                 params.get("theta", get_setting("samplers", "spca_theta")),
                                 params.get("lam", get_setting("samplers", "spca_lambda")), derive_seed(seed, "key"))
        return sample_spca(secret, derive_seed(seed, "samples"), count), secret
    raise_logged(UnknownKindError, "Unknown distribution {}; pick one of {}".format(dist, ", ".join(DISTRIBUTIONS)))


class Sample(BaseCommand):

    def __init__(self, category):
        super().__init__(name="sample", description=_("Draw samples from a backdoor distribution"),
                         category=category)

    def add_arguments(self, parser):
        parser.add_argument('--dist', required=True, choices=DISTRIBUTIONS, help=_("Distribution to sample"))
        parser.add_argument('--params', required=True, help=_("JSON file with the distribution parameters"))
        parser.add_argument('--count', type=int, required=True, help=_("Number of samples"))
        add_seed_argument(parser)
        parser.add_argument('--out', required=True, help=_("Where to write the JSONL samples"))
        parser.add_argument('--key', help=_("Where to write a newly generated secret"))

    def run(self, args):
        if args.count < 1:
            raise_logged(ParameterError, "Sample count must be positive, got {}".format(args.count))
        params = storage.read_json(args.params)
        rows, secret = draw(args.dist, params, args.count, args.seed)
        storage.write_samples(args.out, rows)
        if args.key and secret is not None and "key" not in params:
            storage.save(args.key, secret)
        self.say(_("{} {} samples of dimension {} written to {}").format(args.count, args.dist, rows.shape[1],
                                                                         args.out))
