import argparse
import os
import sys
import time
from contextlib import contextmanager

from coverlattice import global_vars, toric, verify
from coverlattice.graph import (
    drop_isolated_vertices,
    is_unmixed_bruteforce,
    read_graph,
    standardize,
)
from coverlattice.lattice import (
    build_lattice,
    cm_reduce,
    count_maximal_chains,
    is_cohen_macaulay,
    lattice_embedding,
    lattice_to_dict,
    rank,
)
from coverlattice.order_complex import basic_h_vector, order_complex
from coverlattice.report import Report
from coverlattice.series import (
    check_gorenstein_symmetry,
    clear_caches,
    hilbert_data,
    is_knn_by_series,
    multiplicity_bounds,
)
from coverlattice.utils import (
    Bcolors,
    CoverLatticeError,
    LimitExceeded,
    msg_with_color,
    print_with_color,
)

# key is timer name, value is seconds counted
timers = {}


@contextmanager
def timing(timer_name):
    start = time.time()
    try:
        yield
    finally:
        elapsed = time.time() - start
        timers[timer_name] = timers.get(timer_name, 0) + elapsed


def load_graph(path):
    """Reads, optionally cleans and standardizes the graph at `path`.

    Returns the input graph and its `Standardization`.
    """
    with timing("parse"):
        graph = read_graph(path)
    if global_vars.drop_isolated:
        graph = drop_isolated_vertices(graph)
    with timing("standardize"):
        standardization = standardize(graph)
    return graph, standardization


def _base_report(command, graph, standardization):
    return Report(
        command=command,
        n=graph.n,
        input_edges=[list(e) for e in graph.sorted_edges()],
        relabeling=list(standardization.y_relabeling),
    )


def cmd_check(args):
    graph, standardization = load_graph(args.path)
    std = standardization.graph
    report = _base_report("check", graph, standardization)
    report.bipartite = True
    report.unmixed = True
    try:
        report.unmixed_bruteforce = is_unmixed_bruteforce(std)
    except LimitExceeded:
        pass
    with timing("lattice"):
        report.cohen_macaulay = is_cohen_macaulay(std)
    return report


def cmd_hilbert(args):
    graph, standardization = load_graph(args.path)
    std = standardization.graph
    report = _base_report("hilbert", graph, standardization)
    with timing("lattice"):
        lattice = build_lattice(std)
        report.lattice = lattice_to_dict(lattice)
        report.rank = rank(lattice)
        report.cohen_macaulay = report.rank == std.n
    with timing("order_complex"):
        report.f_vector = list(order_complex(lattice).f_vector.f)
        report.basic_h_vector = list(basic_h_vector(std).h)
    with timing("series"):
        series, h, e = hilbert_data(std)
        report.h = series.h
        report.denom_power = series.denom_power
        report.multiplicity = e
        report.bounds = list(multiplicity_bounds(std.n))
        report.gorenstein_symmetric = check_gorenstein_symmetry(h, std.n)
        report.a_invariant = series.a_invariant()
        report.knn = is_knn_by_series(std, series)
    return report


def cmd_groebner(args):
    graph, standardization = load_graph(args.path)
    std = standardization.graph
    report = _base_report("groebner", graph, standardization)
    lattice = build_lattice(std)
    with timing("groebner"):
        basis = toric.groebner_basis(std, lattice)
    doc = toric.basis_to_dict(basis, std, lattice)
    report.u_order = doc["u_order"]
    report.basis = doc["basis"]
    report.text_body = toric.format_basis(basis, std, lattice)
    return report


def cmd_verify(args):
    graph, standardization = load_graph(args.path)
    report = _base_report("verify", graph, standardization)
    with timing("verify"):
        checks = verify.verify_graph(standardization.graph, level=args.level)
    report.verification = [c.to_dict() for c in checks]
    return report


def cmd_lattice(args):
    graph, standardization = load_graph(args.path)
    std = standardization.graph
    report = _base_report("lattice", graph, standardization)
    with timing("lattice"):
        lattice = build_lattice(std)
        report.lattice = lattice_to_dict(lattice)
        report.rank = rank(lattice)
        report.maximal_chains = count_maximal_chains(lattice)
        report.cohen_macaulay = report.rank == std.n
        subset, _ = cm_reduce(std)
        report.cm_reduction = list(subset)
        report.nu = lattice_embedding(std, subset).to_dict()["table"]
    return report


COMMANDS = {
    "check": cmd_check,
    "hilbert": cmd_hilbert,
    "groebner": cmd_groebner,
    "verify": cmd_verify,
    "lattice": cmd_lattice,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", type=str, help="The graph file (JSON).")
    output = common.add_mutually_exclusive_group()
    output.add_argument(
        "--json",
        action="store_true",
        default=False,
        help="Print the report as JSON.",
    )
    output.add_argument(
        "--text",
        action="store_true",
        default=False,
        help="Print the report as text (default).",
    )
    common.add_argument(
        "--threads",
        type=int,
        help="Worker processes for the subset sweeps.",
    )
    common.add_argument(
        "--max-n",
        type=int,
        help="Largest n for the brute-force and direct counting oracles.",
    )
    common.add_argument(
        "--max-degree",
        type=int,
        help="Largest degree for the direct counting oracle.",
    )
    common.add_argument(
        "--drop-isolated",
        action="store_true",
        default=False,
        help="Remove isolated vertices with a warning instead of failing.",
    )
    common.add_argument(
        "--config",
        type=str,
        help="INI file with a [limits] section (default: ./.coverlattice).",
    )

    parser = argparse.ArgumentParser(
        description="Cover lattices, Groebner bases and Hilbert series of "
        "vertex cover algebras of unmixed bipartite graphs."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(
        "check", parents=[common], help="Unmixed and Cohen-Macaulay verdicts."
    )
    subparsers.add_parser(
        "hilbert", parents=[common], help="Hilbert series and multiplicity."
    )
    subparsers.add_parser(
        "groebner", parents=[common], help="Reduced Groebner basis."
    )
    verify_parser = subparsers.add_parser(
        "verify", parents=[common], help="Run the independent checks."
    )
    verify_parser.add_argument(
        "--level",
        choices=verify.LEVELS,
        default="fast",
        help="fast runs the basis and series checks, full adds direct "
        "counting and the lattice maps.",
    )
    subparsers.add_parser(
        "lattice", parents=[common], help="Cover lattice and its reduction."
    )
    return parser


def apply_flags(args):
    global_vars.reset()
    global_vars.load_config(args.config)
    if args.threads is not None:
        global_vars.set_limit("threads", args.threads)
    if args.max_n is not None:
        global_vars.set_limit("max_direct_n", args.max_n)
        global_vars.set_limit("max_exhaustive_vertices", 2 * args.max_n)
    if args.max_degree is not None:
        global_vars.set_limit("max_degree", args.max_degree)
    if args.drop_isolated:
        global_vars.drop_isolated = True


def emit(report, as_json):
    if as_json:
        print(report.to_json())
        return
    text = report.to_text()
    if text:
        print(text)
    if report.text_body:
        print(report.text_body)
    if report.verification is not None:
        if report.failed_checks:
            print_with_color("\nFAILED\n", Bcolors.FAIL)
        else:
            print_with_color("\nSUCCESS\n", Bcolors.OKGREEN)


def _error(e):
    print(
        "{}: {}".format(msg_with_color("ERROR", Bcolors.FAIL), e),
        file=sys.stderr,
    )


def run(argv=None):
    """Runs one subcommand and returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        apply_flags(args)
        report = COMMANDS[args.command](args)
    except CoverLatticeError as e:
        _error(e)
        return e.exit_code
    except (OSError, ValueError) as e:
        _error(e)
        return 1
    finally:
        clear_caches()

    emit(report, args.json)
    if os.getenv("COVERLATTICE_TIMING"):
        print("Timers:", file=sys.stderr)
        for timer_name, seconds in timers.items():
            print(f"{timer_name}: {seconds} seconds", file=sys.stderr)
    return 3 if report.failed_checks else 0


def main(argv=None):
    sys.exit(run(argv))
