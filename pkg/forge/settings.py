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

import os
from xdg.BaseDirectory import xdg_data_home

CONFIG_FILENAME = "forge"
DEFAULT_REPORTS_PATH = os.path.expanduser(os.path.join(xdg_data_home, "forge", "reports"))
FORGE_COMMANDS_ENVIRON_VARIABLE = "FORGE_COMMANDS"

# nn_core
SIGN_ZERO_NUDGE = 1e-12

# hash-based signatures
SIG_MIN_SECURITY = 64
SIG_TREE_HEIGHT = 10
SIG_WINTERNITZ = 16
SIS_MAX_MODULUS = 2 ** 40

# samplers
CLOSENESS_EXPONENT = 4
NOISE_EXPONENT = 6
DGP_TRUNCATION = 10
SPCA_THETA = 0.5
SPCA_LAMBDA = 4.0
SPCA_ALPHA = 1 / 3

# rff pipeline
RFF_WIDTH_CONSTANT = 1.0
RFF_MAX_WIDTH = 10 ** 7
MARGIN_EXPONENT = 2
TRAIN_EPOCHS = 2000

# immunizer
SMOOTHING_CHUNK = 10000
SMOOTHING_WORKERS = 1
AUDIT_NOISE_ALLOWANCE = 3.0

# distinguishers
DISTINGUISHER_Z = 5.0
DISTINGUISHER_MIN_SAMPLES = 1000
DISTINGUISHER_BOOTSTRAP = 100
KS_DIRECTIONS = 32

# settings a user can override, per configuration section
OVERRIDABLE = {
    "signature": ("sig_tree_height", "sig_winternitz"),
    "samplers": ("closeness_exponent", "noise_exponent", "dgp_truncation", "spca_theta", "spca_lambda", "spca_alpha"),
    "rff": ("rff_width_constant", "margin_exponent", "train_epochs"),
    "immunizer": ("smoothing_chunk", "smoothing_workers", "audit_noise_allowance"),
    "distinguishers": ("distinguisher_z", "distinguisher_min_samples", "distinguisher_bootstrap", "ks_directions"),
}

from_dev = False


def get_version():
    '''Get version depending if on dev or released version'''
    version = open(os.path.join(os.path.dirname(__file__), 'version'), 'r', encoding='utf-8').read().strip()
    if not from_dev:
        return version
    import subprocess
    try:
        # use git describe to get a revision ref if running from a branch. Will append dirty if local changes
        version = subprocess.check_output(["git", "describe", "--tags", "--dirty"]).decode('utf-8').strip()
    except (subprocess.CalledProcessError, FileNotFoundError):
        version += "+unknown"
    return version
