#
# __init__.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Single-server queues whose service and interarrival times are coupled
by a Farlie-Gumbel-Morgenstern copula: waiting times, overlap times of
consecutive customers, and a simulator to check them against."""

from straddle.errors import *

import straddle.distlib
import straddle.copula
import straddle.models
import straddle.roots
import straddle.analysis
import straddle.invert
import straddle.sim

from straddle.distlib import Exponential, Erlang, Hyperexponential
from straddle.models import MG1, ErlangArrivals, Proportional, OmegaAtoms
from straddle.analysis import solve, overlap_laws, report
from straddle.invert import invert_cdf
from straddle.sim import SimConfig, run as simulate

version = (1, 0, 0)
versionstr = ".".join((str(v) for v in version))
