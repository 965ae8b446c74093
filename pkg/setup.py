#!/usr/bin/env python3
#
# setup.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

from setuptools import setup

setup(
    name="straddle",
    version="1.0.0",
    author="The straddle authors",
    packages=["straddle"],
    python_requires=">=3.7",
    install_requires=["numpy>=1.17", "scipy>=1.4"],
    entry_points = {
        'console_scripts': ['straddle = straddle.commandline:main']
    },
    test_suite = "test.alltests.suite",
    license="BSD",
    description="Waiting times and overlap times of single-server queues "
                "with FGM-dependent service and interarrival times",
    long_description="""
Straddle computes the Laplace-Stieltjes transforms and means of the
waiting time and of the maximum and minimum overlap of consecutive
waiting times in single-server FIFO queues where the service time of a
customer and the following interarrival time are coupled by a
Farlie-Gumbel-Morgenstern copula.  A Monte Carlo simulator checks the
closed forms.
""",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics"
        ],
    )
