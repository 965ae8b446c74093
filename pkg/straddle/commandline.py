#
# commandline.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import logging
import math
import sys
import warnings
from optparse import OptionParser, OptionGroup

import straddle
from straddle.errors import *
from straddle import analysis
from straddle import config
from straddle import fileutil
from straddle import invert
from straddle import sim
from straddle import util

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_COMPARISON = 4

Z_LIMIT = 4.0

SWEEP_HEADER = ["theta", "rho", "mean_wait", "mean_max_overlap",
                "mean_min_overlap", "tau1"]
COMPARE_HEADER = ["statistic", "analytic", "sim_mean", "sim_se", "z_score"]
INVERT_HEADER = ["t", "F_wait", "F_max", "F_min"]

def create_parser():
    parser = OptionParser(usage="%prog command [options] [config.json]\n\n"
                          "commands: " + ", ".join(config.ACTIONS),
                          version="%prog " + straddle.versionstr)

    parser.add_option("-q", "--quiet", action="store_true", dest="quiet",
                      help="Suppress warning messages on stderr")
    parser.add_option("-v", "--verbose", action="store_true", dest="verbose",
                      help="Explain what is being done")

    group = OptionGroup(parser, "Configuration")
    group.add_option("-s", "--set", action="append", dest="set", default=[],
                     metavar="PATH=VALUE",
                     help="Override a config field, e.g. model.theta=0.5")
    group.add_option("-o", "--output", action="store", dest="output",
                     metavar="FILE",
                     help="Write the command's main output to FILE")
    group.add_option("-j", "--jobs", action="store", type="int", dest="jobs",
                     metavar="N", help="Simulate up to N replications in parallel")
    parser.add_option_group(group)

    group = OptionGroup(parser, "Debugging options")
    group.add_option("--perturb", action="store", type="float", dest="perturb",
                     metavar="FACTOR",
                     help="Multiply analytic values by FACTOR before comparing")
    parser.add_option_group(group)

    return parser

def _emit(text, filename):
    if filename:
        fileutil.atomic_write(filename, text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()

def _sim_config(cfg, options, cdf_grid=None):
    block = cfg.sim if cfg.sim is not None else config.SimBlock()
    return block.build(cdf_grid=cdf_grid, jobs=options.jobs)

def _grid(cfg, model, mean_max):
    return invert.default_grid(mean_max, model.service.mean,
                               points=cfg.invert.points, t_max=cfg.invert.t_max)

def analyze(cfg, options):
    model = cfg.model.build()
    report = analysis.report(model)
    text = util.json_text(report)
    sys.stdout.write(text)
    if cfg.output.report:
        fileutil.atomic_write(cfg.output.report, text)
    return report

def simulate(cfg, options):
    model = cfg.model.build()
    grid = None
    if cfg.output.ecdf:
        # Without the analytic means, size the grid from the M/G/1-style bound.
        rough = model.service.mean / max(1e-3, 1 - model.rho)
        grid = _grid(cfg, model, rough)
    result = sim.run(model, _sim_config(cfg, options, grid))
    report = {"model": model.to_dict(), "rho": model.rho}
    report.update(result.to_dict())
    text = util.json_text(report)
    sys.stdout.write(text)
    if cfg.output.report:
        fileutil.atomic_write(cfg.output.report, text)
    if grid is not None:
        rows = [[t] + [result.ecdf[name][i] for name in sim.DISTRIBUTIONS]
                for (i, t) in enumerate(grid)]
        fileutil.atomic_write(cfg.output.ecdf,
                              util.csv_text(["t", "F_wait", "F_max", "F_min"], rows))
    return result

def compare(cfg, options):
    model = cfg.model.build()
    laws = analysis.overlap_laws(model)
    analytic = {sim.WAIT: laws.waiting.mean,
                sim.MAX_OVERLAP: laws.max_overlap.mean,
                sim.MIN_OVERLAP: laws.min_overlap.mean,
                sim.PROB_S_GT_A: analysis.prob_s_gt_a(model)}
    if options.perturb is not None:
        analytic = {k: v * options.perturb for (k, v) in analytic.items()}
    result = sim.run(model, _sim_config(cfg, options))
    rows = []
    worst = 0.0
    for name in sim.STATISTICS:
        estimate = result[name]
        if estimate.se > 0:
            z = (analytic[name] - estimate.mean) / estimate.se
        else:
            z = 0.0 if analytic[name] == estimate.mean else math.inf
        worst = max(worst, abs(z))
        rows.append([name, analytic[name], estimate.mean, estimate.se, z])
    _emit(util.csv_text(COMPARE_HEADER, rows), cfg.output.csv)
    util.verb(options.verbose, "seed {0}; streams {1}"
              .format(result.seed, ", ".join(result.streams)))
    if cfg.output.report:
        report = {"model": model.to_dict(), "analytic": analytic,
                  "simulation": result.to_dict()}
        fileutil.atomic_write(cfg.output.report, util.json_text(report))
    if worst > Z_LIMIT:
        raise ComparisonFailure("Largest |z| = {0:.3g} exceeds {1} (seed {2})"
                                .format(worst, Z_LIMIT, result.seed))
    return rows

def sweep(cfg, options):
    base = cfg.model.build()
    rhos = cfg.sweep.rho or [base.rho]
    rows = []
    for rho in rhos:
        rate = base.rate * rho / base.rho
        for theta in cfg.sweep.thetas():
            model = cfg.model.build(rate=rate, theta=theta)
            try:
                laws = analysis.overlap_laws(model)
            except NumericalError as e:
                raise NumericalError("theta={0:.12g}: {1}".format(theta, e)) from e
            util.verb(options.verbose, "theta={0:.12g} rho={1:.12g}: done"
                      .format(theta, model.rho))
            rows.append([theta, model.rho, laws.waiting.mean,
                         laws.max_overlap.mean, laws.min_overlap.mean,
                         analysis.tau1(laws.waiting)])
    _emit(util.csv_text(SWEEP_HEADER, rows), cfg.output.csv)
    return rows

def invert_command(cfg, options):
    model = cfg.model.build()
    laws = analysis.overlap_laws(model)
    grid = _grid(cfg, model, laws.max_overlap.mean)
    columns = [invert.invert_cdf(law, grid, terms=cfg.invert.terms, scale=model.rate)
               for law in laws]
    header = list(INVERT_HEADER)
    values = [c.values for c in columns]
    if cfg.sim is not None:
        result = sim.run(model, _sim_config(cfg, options, grid))
        header += [name + "_empirical" for name in INVERT_HEADER[1:]]
        values += [result.ecdf[name] for name in sim.DISTRIBUTIONS]
    rows = [[t] + [v[i] for v in values] for (i, t) in enumerate(grid)]
    _emit(util.csv_text(header, rows), cfg.output.csv)
    return rows

COMMANDS = {"analyze": analyze, "simulate": simulate, "compare": compare,
            "sweep": sweep, "invert": invert_command}

def _configure(cfg, command, options):
    if options.output:
        field = "report" if command in ("analyze", "simulate") else "csv"
        try:
            setattr(cfg.output, field, options.output)
        except (TypeError, ValueError) as e:
            raise ConfigError("output.{0}: {1}".format(field, e))
    return cfg

def run(argv=None):
    "Run the command line in ARGV and return the exit code."
    parser = create_parser()
    (options, args) = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if options.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)

    if not args:
        parser.error("missing command")
    command = args[0].lower()
    if command not in COMMANDS:
        parser.error("unknown command: {0}".format(args[0]))
    if len(args) > 2:
        parser.error("too many arguments")
    filename = args[1] if len(args) == 2 else None
    if filename == "-":
        filename = sys.stdin
    label = args[1] if len(args) == 2 else command

    with util.print_warnings(label, options):
        try:
            cfg = config.load(filename, options.set, action=command)
            _configure(cfg, command, options)
            COMMANDS[command](cfg, options)
        except (ConfigError, ModelError, DomainError, CapabilityError) as e:
            print("{0}:error: {1}".format(label, e), file=sys.stderr)
            return EXIT_VALIDATION
        except NumericalError as e:
            print("{0}:error: {1}".format(label, e), file=sys.stderr)
            return EXIT_NUMERICAL
        except ComparisonFailure as e:
            print("{0}:error: {1}".format(label, e), file=sys.stderr)
            return EXIT_COMPARISON
        except IOError as e:
            print("{0}: {1}".format(e.filename, e.strerror), file=sys.stderr)
            return EXIT_IO
        except KeyboardInterrupt:
            return EXIT_IO
    return EXIT_OK

def main():
    warnings.simplefilter("always", straddle.Warning)
    sys.exit(run())

if __name__ == '__main__':
    main()
