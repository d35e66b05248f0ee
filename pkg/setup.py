#!/usr/bin/env python
"""
Setup script for RIS Spectrum Sharing Workbench
===============================================

RIS Spectrum Sharing Workbench - Setup Configuration
Copyright (c) 2025 RIS Spectrum Sharing Project
Licensed under the Apache License, Version 2.0
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line for line in fh.read().splitlines() if line and not line.startswith("#")]

setup(
    name="ris-spectrum-sharing",
    version="0.1.0",
    description="Deep reinforcement learning workbench for RIS-aided spectrum sharing between virtual service providers",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering",
        "Topic :: Communications",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest>=6.0",
            "pytest-cov>=2.0",
            "flake8>=3.8",
            "mypy>=0.800",
        ],
    },
    entry_points={
        "console_scripts": [
            "rss=ris_spectrum_sharing.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "ris_spectrum_sharing": [
            "presets/*.json",
        ],
    },
    keywords="reconfigurable intelligent surface, spectrum sharing, deep reinforcement learning, SAC, DDPG",
    license="Apache License 2.0",
)
