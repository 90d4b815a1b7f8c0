#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                setup.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

from setuptools import find_namespace_packages, setup

setup(
    name="treeprep",
    version="0.3.0",
    description="Tree-surrogate guided approximate quantum state preparation",
    packages=find_namespace_packages(include=["treeprep*", "conf*"]),
    package_data={
        "conf": [
            "*.yml",
            "**/*.yml",
            "**/**/*.yml",
        ],
    },
    python_requires=">=3.10",
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "pydantic>=2",
        "PyYAML",
        "pyparsing>=3.1",
        "scikit-learn>=1.2",
    ],
    entry_points={
        "console_scripts": [
            "treeprep=treeprep.cli.main:main",
        ],
    },
)
