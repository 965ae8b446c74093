#
# util.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import csv
import io
import json
import math
import numbers
import sys
import warnings
from contextlib import contextmanager

import numpy as np

import straddle

def verb(verbose, *args, **kwargs):
    if verbose:
        print(*args, file=sys.stderr, **kwargs)

def format_number(value):
    "Twelve significant digits, '.' as decimal separator."
    if isinstance(value, complex):
        value = value.real
    value = float(value)
    if math.isnan(value):
        return "nan"
    return "{0:.12g}".format(value)

def csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else format_number(v) for v in row])
    return buffer.getvalue()

def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for (k, v) in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag] if value.imag else value.real
    if isinstance(value, numbers.Real):
        return float(value)
    return value

def json_text(report):
    return json.dumps(_plain(report), indent=2) + "\n"

@contextmanager
def print_warnings(label, options):
    with warnings.catch_warnings(record=True) as ws:
        warnings.simplefilter("always", straddle.Warning)
        try:
            yield None
        finally:
            if not options.quiet and len(ws) > 0:
                for w in ws:
                    print(label + ":warning: " + str(w.message),
                          file=sys.stderr)
            sys.stderr.flush()
