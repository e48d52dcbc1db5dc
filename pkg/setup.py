#!/usr/bin/env python3
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

from glob import glob
from setuptools import setup, find_packages
import forge  # that initializes the gettext domain
from forge.settings import get_version


def get_requirements(tag_to_detect=""):
    """Gather a list of requirements line per line from tag_to_detect to next tag.

    if tag_to_detect is empty, it will gather every requirement"""
    requirements = []
    tag_detected = False
    with open("requirements.txt") as f:
        for line in f.read().splitlines():
            if line.startswith("#") or line == "":
                tag_detected = False
                if line.startswith(tag_to_detect):
                    tag_detected = True
                continue
            if tag_detected:
                requirements.append(line)
    return requirements


setup(
    name="forge",
    version=get_version(),
    packages=find_packages(exclude=["tests*"]),
    package_data={'forge': ['version']},
    install_requires=get_requirements("# runtime requirements"),
    extras_require={'test': get_requirements("# test tools")},
    entry_points={
        'console_scripts': [
            'forge = forge:main',
        ],
    },

    data_files=[
        ("share/forge/log-confs", glob('log-confs/*.yaml')),
    ],
)
