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

from contextlib import suppress
import hashlib
import logging
import os
from forge import settings
from xdg.BaseDirectory import load_first_config, xdg_config_home
import yaml
import yaml.scanner
import yaml.parser

logger = logging.getLogger(__name__)


class Singleton(type):

    _instances = {}

    def __call__(cls, *args, **kwargs):
        if cls not in cls._instances:
            cls._instances[cls] = super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]


class ConfigHandler(metaclass=Singleton):

    def __init__(self):
        """Load the config"""
        self._config = {}
        config_file = load_first_config(settings.CONFIG_FILENAME)
        logger.debug("Opening {}".format(config_file))
        try:
            with open(config_file) as f:
                self._config = yaml.safe_load(f) or {}
        except (TypeError, FileNotFoundError):
            logger.info("No configuration file found")
        except (yaml.scanner.ScannerError, yaml.parser.ParserError) as e:
            logger.error("Invalid configuration file found: {}".format(e))

    @property
    def config(self):
        return self._config

    @config.setter
    def config(self, config):
        config_file = os.path.join(xdg_config_home, settings.CONFIG_FILENAME)
        logger.debug("Saving new configuration: {} in {}".format(config, config_file))
        os.makedirs(os.path.dirname(config_file), exist_ok=True)
        with open(config_file, 'w') as f:
            yaml.dump(config, f, default_flow_style=False)
        self._config = config


def get_setting(section, key):
    """Return the user override for section.key if any, else the settings default (upper-cased key)"""
    with suppress(TypeError, KeyError, AttributeError):
        return ConfigHandler().config[section][key]
    return getattr(settings, key.upper())


class NoneDict(dict):
    """We don't use a defaultdict(lambda: None) as it's growing every time something is requested"""

    def __getitem__(self, key):
        return dict.get(self, key)


class ForgeError(Exception):
    """Base error of the library.

    Attributes:
        value -- explanation of the error
    """

    def __init__(self, value):
        super().__init__(value)
        self.value = value

    def __str__(self):
        return str(self.value)


class InputShapeError(ForgeError):
    """Input doesn't have the dimension the model or key expects"""


class StructuralError(ForgeError):
    """Malformed circuit, network or key"""


class ParameterError(ForgeError):
    """Parameter out of its allowed range"""


class LayoutError(ForgeError):
    """Signature layout inconsistent with the input or the key"""


class ContractError(ForgeError):
    """Precondition of a transform isn't met"""


class SignerExhaustedError(ForgeError):
    """Every one-time leaf of the signer was consumed"""


class TooFewSamplesError(ForgeError):
    """Not enough samples for a statistical test"""


class DegenerateCovarianceError(ForgeError):
    """Covariance carries no variance at all"""


class UnknownKindError(ForgeError):
    """Requested dataset, distribution, scenario or model kind doesn't exist"""


def raise_logged(error_class, message):
    """Log message as an error and raise it as error_class"""
    logger.error(message)
    raise error_class(message)


def derive_seed(seed, *labels):
    """Derive a 63 bits sub-seed from seed and labels.

    Streams are keyed by their labels, so adding a new consumer never shifts an existing one."""
    h = hashlib.sha256("{}".format(int(seed)).encode("utf-8"))
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big") >> 1


def float_to_hex(value):
    return float(value).hex()


def hex_to_float(value):
    """Accept hex-float strings as well as plain numbers"""
    if isinstance(value, str):
        return float.fromhex(value)
    return float(value)
