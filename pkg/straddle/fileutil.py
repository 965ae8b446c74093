#
# fileutil.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""File output utilities."""

import os
import os.path
import signal
import tempfile
import threading

from contextlib import contextmanager

@contextmanager
def opened(filename, mode):
    "Open filename, or do nothing if filename is already an open file object"
    if isinstance(filename, str):
        file = open(filename, mode, encoding="utf-8", newline="")
        try:
            yield file
        finally:
            if not file.closed:
                file.close()
    else:
        yield filename

@contextmanager
def suppress_interrupt():
    """Suppress KeyboardInterrupt exceptions while the context is active.

    The suppressed interrupt (if any) is raised when the context is exited.
    Outside the main thread signal handlers cannot be installed, and the
    context does nothing.
    """
    if threading.current_thread() is not threading.main_thread():
        yield None
        return
    interrupted = False

    def sigint_handler(signum, frame):
        nonlocal interrupted
        interrupted = True

    s = signal.signal(signal.SIGINT, sigint_handler)
    try:
        yield None
    finally:
        signal.signal(signal.SIGINT, s)
    if interrupted:
        raise KeyboardInterrupt()

def atomic_write(filename, text):
    """Replace the contents of FILENAME with TEXT.

    The data goes to a temporary file in the same directory first, which
    is then renamed over FILENAME; readers see either the old or the new
    contents.  Interrupts are deferred until the rename is done.
    """
    directory = os.path.dirname(os.path.abspath(filename))
    with suppress_interrupt():
        temp = tempfile.NamedTemporaryFile("w", dir=directory,
                                           prefix="straddle-", suffix=".tmp",
                                           encoding="utf-8", newline="",
                                           delete=False)
        try:
            with temp:
                temp.write(text)
                temp.flush()
                os.fsync(temp.fileno())
            os.replace(temp.name, filename)
        except BaseException:
            if os.path.exists(temp.name):
                os.unlink(temp.name)
            raise
