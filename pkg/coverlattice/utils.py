"""This includes utility functions."""

import sys


class Bcolors:
    HEADER = "\033[95m"
    OKBLUE = "\033[94m"
    OKCYAN = "\033[96m"
    OKGREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    UNDERLINE = "\033[4m"


class CoverLatticeError(Exception):
    """Base class of every error the pipeline reports to the user.

    `exit_code` is the process exit status `main` uses for it.
    """

    exit_code = 1


class LimitExceeded(CoverLatticeError):
    """An exhaustive search was asked to run past its configured cap."""


def msg_with_color(msg, color):
    """Wrap `msg` with the given `color`.

    Args:
        color: One `Bcolors`.
        msg: The message to print.

    Returns:
        A string representing `msg` with `color` applied.
    """
    if color not in Bcolors.__dict__.values():
        raise AttributeError("Must specify a valid color!")
    return "{}{}{}".format(color, msg, Bcolors.ENDC)


def print_with_color(msg, color, file=None):
    """Prints `msg` with the given `color`.

    Args:
        color: One `Bcolors`.
        msg: The message to print.
        file: Stream to print to, stdout by default.
    """
    print(msg_with_color(msg, color), file=file)


def warn(msg):
    print(
        Bcolors.WARNING + "WARNING" + Bcolors.ENDC + ": {}".format(msg),
        file=sys.stderr,
    )


def check_limit(value, limit, what):
    if value > limit:
        raise LimitExceeded(
            "{} is {}, above the configured limit {}".format(what, value, limit)
        )


def bits(mask):
    """Returns the 1-based indices of the set bits of `mask`, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def popcount(mask):
    return bin(mask).count("1")


def subset_key(mask):
    """Sort key (cardinality, lexicographic index list) for subsets."""
    return (popcount(mask), bits(mask))


def submasks(mask):
    """Yields every submask of `mask`, the empty one included."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
