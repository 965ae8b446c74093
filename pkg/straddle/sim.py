#
# sim.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Monte Carlo simulation of the dependent queue.

Waiting times follow the Lindley recursion W' = [W + S - A]^+, computed a
chunk at a time from running minima of the partial sums of S - A.  Every
chunk draws from its own Philox stream keyed by (seed, replication,
chunk), so results do not depend on how replications are scheduled over
threads.
"""

import collections
import concurrent.futures
import logging
from warnings import warn

import numpy as np

from straddle.errors import *
from straddle.copula import sample_pairs, check_theta
from straddle.models import Proportional

log = logging.getLogger(__name__)

CHUNK = 2 ** 20
DEFAULT_WARMUP = 10 ** 5
HEAVY_TRAFFIC = 0.8
BATCHES = 10

WAIT = "wait"
MAX_OVERLAP = "max_overlap"
MIN_OVERLAP = "min_overlap"
PROB_S_GT_A = "prob_s_gt_a"
STATISTICS = (WAIT, MAX_OVERLAP, MIN_OVERLAP, PROB_S_GT_A)
DISTRIBUTIONS = (WAIT, MAX_OVERLAP, MIN_OVERLAP)

_BELOW_ONE = np.nextafter(1.0, 0.0)

Estimate = collections.namedtuple("Estimate", "mean se count")

class SimConfig:
    def __init__(self, customers=10 ** 6, warmup=None, replications=10, seed=0,
                 cdf_grid=None, jobs=1, chunk=CHUNK, debug=False):
        if isinstance(customers, bool) or not isinstance(customers, int) or customers < 1:
            raise ConfigError("customers must be a positive integer: {0!r}"
                              .format(customers))
        if isinstance(replications, bool) or not isinstance(replications, int) \
           or replications < 1:
            raise ConfigError("replications must be a positive integer: {0!r}"
                              .format(replications))
        if warmup is not None and not 0 <= warmup < customers:
            raise ConfigError("warmup must lie in [0, customers): {0!r}".format(warmup))
        if not 0 <= seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer: {0!r}".format(seed))
        self.customers = customers
        self.warmup = warmup
        self.replications = replications
        self.seed = int(seed)
        self.cdf_grid = None if cdf_grid is None else np.asarray(cdf_grid, dtype=float)
        self.jobs = max(1, int(jobs))
        self.chunk = int(chunk)
        self.debug = debug

    def effective_warmup(self, model):
        if self.warmup is not None:
            return self.warmup
        warmup = DEFAULT_WARMUP
        if model.rho > HEAVY_TRAFFIC:
            warmup *= 2
        return min(warmup, self.customers // 2)

class SimResult:
    def __init__(self, estimates, ecdf, seed, streams, customers, warmup,
                 replications, diverging=False):
        self.estimates = estimates
        self.ecdf = ecdf
        self.seed = seed
        self.streams = streams
        self.customers = customers
        self.warmup = warmup
        self.replications = replications
        self.diverging = diverging

    def __getitem__(self, name):
        return self.estimates[name]

    def mean(self, name):
        return self.estimates[name].mean

    def se(self, name):
        return self.estimates[name].se

    def to_dict(self):
        result = {"seed": self.seed, "customers": self.customers,
                  "warmup": self.warmup, "replications": self.replications,
                  "streams": self.streams, "diverging": self.diverging,
                  "statistics": {name: {"mean": e.mean, "se": e.se, "count": e.count}
                                 for (name, e) in self.estimates.items()}}
        if self.ecdf is not None:
            result["ecdf"] = {"t": list(map(float, self.ecdf["t"]))}
            for name in DISTRIBUTIONS:
                result["ecdf"][name] = list(map(float, self.ecdf[name]))
        return result

def stream(seed, replication, chunk):
    "The generator for one chunk of one replication."
    sequence = np.random.SeedSequence(seed, spawn_key=(replication, chunk))
    return np.random.Generator(np.random.Philox(sequence))

def _unit(u):
    return np.minimum(u, _BELOW_ONE)

def sample_sa_array(model, rng, size):
    "Arrays of SIZE service and interarrival times."
    (u1, u2) = sample_pairs(check_theta(model.theta), rng, size)
    s = model.service.quantile(_unit(u1))
    if isinstance(model, Proportional):
        jump = model.jump.quantile(_unit(u2))
        omega = rng.choice(np.array(model.atoms.values), size=size,
                           p=np.array(model.atoms.probabilities))
        return s, omega * s + jump
    return s, model.arrival.quantile(_unit(u2))

def sample_sa(model, rng):
    "One (service, interarrival) pair."
    (s, a) = sample_sa_array(model, rng, 1)
    return float(s[0]), float(a[0])

def lindley(x, w0):
    """Waiting times of a run of customers with increments X = S - A, the
    first of whom waits W0.  Returns len(X) + 1 values; the last belongs to
    the customer after the run."""
    c = np.concatenate(([0.0], np.cumsum(x)))
    low = np.minimum.accumulate(np.concatenate(([-w0], c[1:])))
    return c - low

class _Accumulator:
    def __init__(self, total, grid):
        self.total = total
        self.sums = {name: np.zeros(BATCHES) for name in STATISTICS}
        self.counts = np.zeros(BATCHES, dtype=np.int64)
        self.quarters = np.zeros(4)
        self.quarter_counts = np.zeros(4, dtype=np.int64)
        self.grid = grid
        if grid is not None:
            self.below = {name: np.zeros(len(grid), dtype=np.int64)
                          for name in DISTRIBUTIONS}

    def add(self, offset, values):
        "Add per-customer VALUES whose first index past warmup is OFFSET."
        n = len(values[WAIT])
        index = offset + np.arange(n)
        batch = index * BATCHES // self.total
        self.counts += np.bincount(batch, minlength=BATCHES)
        for name in STATISTICS:
            self.sums[name] += np.bincount(batch, weights=values[name],
                                           minlength=BATCHES)
        quarter = index * 4 // self.total
        self.quarters += np.bincount(quarter, weights=values[WAIT], minlength=4)
        self.quarter_counts += np.bincount(quarter, minlength=4)
        if self.grid is not None:
            for name in DISTRIBUTIONS:
                position = np.searchsorted(self.grid, values[name], side="left")
                hits = np.bincount(position, minlength=len(self.grid) + 1)
                self.below[name] += np.cumsum(hits)[:len(self.grid)]

def _replication(model, cfg, warmup, replication):
    total = cfg.customers - warmup
    acc = _Accumulator(total, cfg.cdf_grid)
    w0 = 0.0
    done = 0
    chunk = 0
    while done < cfg.customers:
        size = min(cfg.chunk, cfg.customers - done)
        rng = stream(cfg.seed, replication, chunk)
        (s, a) = sample_sa_array(model, rng, size)
        x = s - a
        w = lindley(x, w0)
        (wait, following) = (w[:-1], w[1:])
        w0 = float(w[-1])
        start = max(0, warmup - done)
        if start < size:
            values = {WAIT: wait[start:],
                      MAX_OVERLAP: wait[start:] + np.maximum(x[start:], 0.0),
                      MIN_OVERLAP: np.minimum(wait[start:], following[start:]),
                      PROB_S_GT_A: (s[start:] > a[start:]).astype(float)}
            if cfg.debug:
                assert np.all(values[MIN_OVERLAP] <= values[WAIT])
                assert np.all(values[WAIT] <= values[MAX_OVERLAP])
            acc.add(done + start - warmup, values)
        done += size
        chunk += 1
    return acc, chunk

def _diverging(accumulators):
    for acc in accumulators:
        means = acc.quarters / np.maximum(acc.quarter_counts, 1)
        if np.all(np.diff(means) > 0) and means[-1] > 1.5 * means[0] > 0:
            return True
    return False

def _estimate(accumulators, name):
    if len(accumulators) > 1:
        means = np.array([acc.sums[name].sum() / acc.counts.sum()
                          for acc in accumulators])
    else:
        acc = accumulators[0]
        means = acc.sums[name] / np.maximum(acc.counts, 1)
    count = int(sum(acc.counts.sum() for acc in accumulators))
    total = sum(acc.sums[name].sum() for acc in accumulators)
    se = float(np.std(means, ddof=1) / np.sqrt(len(means)))
    return Estimate(float(total / count), se, count)

def run(model, cfg):
    "Simulate MODEL under CFG and return a SimResult."
    warmup = cfg.effective_warmup(model)
    if not model.rho < 1:
        log.warning("simulating an unstable model (rho %.6g)", model.rho)
    log.info("simulating %s: %d customers, warmup %d, %d replications, seed %d",
             model.family, cfg.customers, warmup, cfg.replications, cfg.seed)

    def one(replication):
        return _replication(model, cfg, warmup, replication)
    if cfg.jobs > 1 and cfg.replications > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(one, range(cfg.replications)))
    else:
        outcomes = [one(r) for r in range(cfg.replications)]
    accumulators = [acc for (acc, chunks) in outcomes]
    streams = ["philox:{0}/{1}/0-{2}".format(cfg.seed, r, chunks - 1)
               for (r, (acc, chunks)) in enumerate(outcomes)]

    diverging = _diverging(accumulators)
    if diverging:
        warn("Mean waiting time grows over the run (rho {0:.6g})".format(model.rho),
             DivergenceWarning)
    estimates = collections.OrderedDict(
        (name, _estimate(accumulators, name)) for name in STATISTICS)
    ecdf = None
    if cfg.cdf_grid is not None:
        count = sum(acc.counts.sum() for acc in accumulators)
        ecdf = {"t": cfg.cdf_grid}
        for name in DISTRIBUTIONS:
            ecdf[name] = sum(acc.below[name] for acc in accumulators) / count
    return SimResult(estimates, ecdf, cfg.seed, streams, cfg.customers, warmup,
                     cfg.replications, diverging)
