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

"""Reading and writing models, keys, datasets and reports"""

import json
import logging
import os
import numpy as np
from forge.nn import Network
from forge.backdoors.checksum import ChecksumKey
from forge.backdoors.hashsig import SigningKey, VerificationKey
from forge.backdoors.relu import ReluModel
from forge.backdoors.rff import RffModel
from forge.backdoors.signature import BackdooredModel
from forge.backdoors.sis import SisInstance
from forge.samplers import PancakeSecret, SpcaSecret
from forge.tools import ParameterError, UnknownKindError, raise_logged

logger = logging.getLogger(__name__)

MODEL_KINDS = {"network": Network, "signature-wrapped": BackdooredModel, "rff-model": RffModel,
               "relu-model": ReluModel}
KEY_KINDS = {"checksum": ChecksumKey, "sig-sk": SigningKey, "sig-vk": VerificationKey, "pancake": PancakeSecret,
             "spca": SpcaSecret, "sis-instance": SisInstance}


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_json(path, content):
    _ensure_parent(path)
    with open(path, 'w') as f:
        json.dump(content, f, sort_keys=True)
        f.write("\n")
    logger.debug("Wrote {}".format(path))


def read_json(path):
    with open(path) as f:
        try:
            return json.load(f)
        except ValueError as e:
            raise_logged(ParameterError, "{} isn't valid JSON: {}".format(path, e))


def write_jsonl(path, rows):
    _ensure_parent(path)
    with open(path, 'w') as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True))
            f.write("\n")


def read_jsonl(path):
    rows = []
    with open(path) as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except ValueError as e:
                raise_logged(ParameterError, "{}:{} isn't valid JSON: {}".format(path, number, e))
    return rows


def write_dataset(path, X, Y):
    """JSONL rows {x: [...], y: ±1}"""
    write_jsonl(path, ({"x": [float(value) for value in x], "y": int(y)} for x, y in zip(X, Y)))


def read_dataset(path):
    rows = read_jsonl(path)
    if not rows or any("y" not in row for row in rows):
        raise_logged(ParameterError, "{} isn't a labelled dataset".format(path))
    return np.array([row["x"] for row in rows], dtype=np.float64), np.array([row["y"] for row in rows], dtype=int)


def write_samples(path, X):
    write_jsonl(path, ({"x": [float(value) for value in x]} for x in np.atleast_2d(X)))


def read_samples(path):
    """Rows of a JSONL file, labelled or not"""
    return np.array([row["x"] if isinstance(row, dict) else row for row in read_jsonl(path)], dtype=np.float64)


def read_vector(path):
    """An input file holds either a bare list or {x: [...]}"""
    content = read_json(path)
    if isinstance(content, dict):
        content = content.get("x")
    if not isinstance(content, list):
        raise_logged(ParameterError, "{} doesn't hold an input vector".format(path))
    return np.array(content, dtype=np.float64)


def kind_of(content):
    if "kind" in content:
        return content["kind"]
    if "layers" in content:
        return "network"
    return None


def _from_json(content, kinds, what):
    kind = kind_of(content)
    if kind not in kinds:
        raise_logged(UnknownKindError, "Unknown {} kind {}; known kinds are {}".format(what, kind,
                                                                                       ", ".join(sorted(kinds))))
    return kinds[kind].from_json(content)


def model_from_json(content):
    return _from_json(content, MODEL_KINDS, "model")


def load_model(path):
    return model_from_json(read_json(path))


def load_network(path):
    model = load_model(path)
    if not isinstance(model, Network):
        raise_logged(UnknownKindError, "{} holds a {}, not a plain network".format(path, type(model).__name__))
    return model


def key_from_json(content):
    return _from_json(content, KEY_KINDS, "key")


def load_key(path):
    return key_from_json(read_json(path))


def save(path, item):
    """Write any model or key through its to_json()"""
    write_json(path, item.to_json())
