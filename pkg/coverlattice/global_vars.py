"""This file includes global variables."""

import os
import configparser

from coverlattice.utils import CoverLatticeError

CONFIG_FILE = ".coverlattice"
CONFIG_SECTION = "limits"

# Vertex count 2n up to which covers are enumerated by brute force.
max_exhaustive_vertices = 24
# Pairs n up to which L_G is built by filtering all 2^n subsets.
max_lattice_n = 20
max_matchings = 40320
max_buchberger_lattice = 32
max_direct_n = 4
max_degree = 6
max_face_listing = 64
threads = os.cpu_count() or 1
parallel_min_n = 10
drop_isolated = False

_INT_OPTIONS = (
    "max_exhaustive_vertices",
    "max_lattice_n",
    "max_matchings",
    "max_buchberger_lattice",
    "max_direct_n",
    "max_degree",
    "max_face_listing",
    "threads",
    "parallel_min_n",
)

_DEFAULTS = {
    name: globals()[name] for name in _INT_OPTIONS + ("drop_isolated",)
}


class ConfigError(CoverLatticeError):
    pass


def reset():
    """Restores every setting to its default."""
    globals().update(_DEFAULTS)


def load_config(config_file=None):
    """Loads limits from an INI file and the environment.

    The file defaults to `.coverlattice` in the working directory and is
    optional. Its `[limits]` section may set any of the integer limits above
    and `drop_isolated`. `COVERLATTICE_THREADS` overrides `threads`.
    """
    global drop_isolated

    path = config_file or os.path.join(os.getcwd(), CONFIG_FILE)
    parser = configparser.ConfigParser()
    if config_file is not None and not os.path.exists(config_file):
        raise ConfigError("Config file not found: {}".format(config_file))
    parser.read(path)

    if parser.has_section(CONFIG_SECTION):
        section = parser[CONFIG_SECTION]
        for option in _INT_OPTIONS:
            if option in section:
                set_limit(option, section[option])
        if "drop_isolated" in section:
            try:
                drop_isolated = section.getboolean("drop_isolated")
            except ValueError as e:
                raise ConfigError("Bad drop_isolated value: {}".format(e))

    if "COVERLATTICE_THREADS" in os.environ:
        set_limit("threads", os.environ["COVERLATTICE_THREADS"])


def set_limit(option, value):
    if option not in _INT_OPTIONS:
        raise ConfigError("Unknown limit: {}".format(option))
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ConfigError(
            "Limit {} must be an integer: {!r}".format(option, value)
        )
    if value < 1:
        raise ConfigError("Limit {} must be positive: {}".format(option, value))
    globals()[option] = value
