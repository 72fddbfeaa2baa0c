"""
Command-line front end.

Every subcommand is a thin wrapper around one library operation. Results go
to standard output, diagnostics to standard error. Exit status is 0 on
success, 1 on a domain or verification failure and 2 on a usage error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from permprofile import __version__
from permprofile.antichain_gen import (
    generate_antichain,
    generate_pbar,
    sizes_ending_at,
    thue_morse,
    tm_substitute,
    verify_antichain,
    widderschin,
)
from permprofile.core.errors import ProfileError
from permprofile.core.registry import UnknownWalkModeError
from permprofile.core.settings import Settings
from permprofile.core.walk_loader import available_walk_modes
from permprofile.matrix_io import (
    format_matrix_text,
    format_permutations,
    matrix_to_json,
    permutation_to_json,
    read_matrix,
    schema,
)
from permprofile.perm_core import Permutation, all_permutations
from permprofile.plotting import plot_svg, spec_for_matrix, spec_for_state
from permprofile.profile import enumerate_m_partitions, enumerate_profile_class
from permprofile.pwo_graph import bipartite_graph, classify_graph, dump_edges, is_pwo
from permprofile.sign_matrix import QuasiPermMatrix, matrix_perm, perm_matrix, quasi_perm_of
from permprofile.walks import Axis, Cell, WalkOptions

logger = logging.getLogger(__name__)

EPILOG = r"""EXAMPLES:
   # is the profile class of a matrix partially well-ordered?
   $ permprofile decide -m matrices/fig1.mat

   # the length-4 members of a profile class
   $ permprofile enumerate -m matrices/column_pmp.mat -n 4

   # P_6 for the 2x2 cycle matrix, as a matrix and as a dot plot
   $ permprofile generate -m matrices/w.mat -n 6
   $ permprofile plot -m matrices/w.mat -n 6 > p6.svg

   # check that P_9, P_13, P_17, P_21 form an antichain
   $ permprofile verify -m matrices/w.mat --ns 9,13,17,21

   # an aperiodic walk on the flower matrix driven by a Thue-Morse word
   $ permprofile generate -m matrices/flower.mat --mode flower \
         --word "$(permprofile thue -g 6 --substitute)" -n 40

   Taking only sizes whose last batch lies on one fixed cell (--last-cell)
   selects one residue class of n; such subsequences are the candidates for
   fundamental antichains. Fundamentality is not checked.
"""


def setup_logging(verbosity: int = 0) -> None:
    """Configure logging for the application."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="%(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def parse_cell(text: str) -> Cell:
    """Parse "i,j" into a cell."""
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a cell 'i,j', got {text!r}")
    return (i, j)


def parse_sizes(text: str) -> List[int]:
    """Parse "9,13,17" or ranges such as "9-25" (inclusive)."""
    sizes: List[int] = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = (int(bound) for bound in part.split("-"))
                sizes.extend(range(lo, hi + 1))
            else:
                sizes.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected sizes like '9,13,17' or '9-25', got {text!r}")
    return sizes


def parse_permutation(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ProfileError as e:
        raise argparse.ArgumentTypeError(str(e))


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    common.add_argument("--threads", type=int, help="worker threads for enumerate/verify")
    common.add_argument("--bound", type=int, help="largest length enumerated exhaustively (default 9)")
    common.add_argument("--max-free-cuts", type=int, help="partition search budget (default 8)")
    common.add_argument("--max-n", type=int, help="largest matrix searched for partitions (default 120)")
    return common


def _add_matrix(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("-m", "--matrix", type=Path, required=required, help="sign matrix file (text or .json)")


def _add_format(parser: argparse.ArgumentParser, choices: Sequence[str] = ("text", "json")) -> None:
    parser.add_argument("--format", choices=list(choices), default="text", help="output format")


def _add_generator(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--start-cell", type=parse_cell, help="first batch's cell 'i,j'")
    parser.add_argument("--start-yearn", help="'left', 'right' or a full yearn such as 'top-left'")
    parser.add_argument("--first-step", choices=[a.value for a in Axis], help="axis of the first move")
    parser.add_argument("--auto-double", action="store_true", help="double M when its cycle has odd parity")
    parser.add_argument("--word", help="letter word for the flower and shared-edge modes")
    parser.add_argument("--mode", default="cycle", help="walk mode: cycle, flower or shared-edge")
    parser.add_argument(
        "--expand", action=argparse.BooleanOptionalAction, default=True, help="expand the endpoint batches"
    )
    parser.add_argument("--last-cell", type=parse_cell, help="keep only sizes whose last batch is on 'i,j'")


def arg_parser() -> argparse.ArgumentParser:
    """
    Get the command line options using argparse.
    """
    parser = argparse.ArgumentParser(
        prog="permprofile",
        description="Profile classes of 0/±1 matrices: partial well-order and antichains.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    decide = commands.add_parser("decide", parents=[common], help="decide whether Pr(M) is pwo")
    _add_matrix(decide)
    _add_format(decide)
    decide.add_argument("--edges", action="store_true", help="also dump the edges of G(M)")

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="list Pr(M) ∩ S_n")
    _add_matrix(enumerate_)
    enumerate_.add_argument("-n", type=int, required=True, help="permutation length")
    enumerate_.add_argument("--complement", action="store_true", help="list S_n minus the class instead")
    _add_format(enumerate_)

    generate = commands.add_parser("generate", parents=[common], help="generate P_n or P̄_n")
    _add_matrix(generate)
    sizes = generate.add_mutually_exclusive_group(required=True)
    sizes.add_argument("-n", type=int, help="number of batches")
    sizes.add_argument("--ns", type=parse_sizes, help="several sizes, e.g. 9,13,17 or 9-25")
    _add_generator(generate)
    generate.add_argument("--one-line", action="store_true", help="print permutations instead of matrices")
    _add_format(generate, ("text", "json", "svg"))

    partitions = commands.add_parser("partitions", parents=[common], help="list the M-partitions of P")
    _add_matrix(partitions)
    source = partitions.add_mutually_exclusive_group(required=True)
    source.add_argument("-p", "--perm", type=parse_permutation, help="permutation in one-line notation")
    source.add_argument("-P", "--perm-matrix", type=Path, help="permutation matrix file")
    amount = partitions.add_mutually_exclusive_group()
    amount.add_argument("--count", action="store_true", help="print only the number of partitions")
    amount.add_argument("--all", action="store_true", help="list every partition (default)")
    partitions.add_argument("--limit", type=int, help="stop after this many partitions")
    _add_format(partitions)

    verify = commands.add_parser("verify", parents=[common], help="check that elements form an antichain")
    _add_matrix(verify, required=False)
    verify.add_argument("--ns", type=parse_sizes, help="sizes of the generated elements")
    verify.add_argument("-p", "--perm", type=parse_permutation, action="append", help="explicit element (repeatable)")
    _add_generator(verify)
    _add_format(verify)

    plot = commands.add_parser("plot", parents=[common], help="SVG dot plot of P_n or of a permutation")
    _add_matrix(plot, required=False)
    plot.add_argument("-n", type=int, help="number of batches")
    plot.add_argument("-p", "--perm", type=parse_permutation, help="plot this permutation instead")
    _add_generator(plot)
    plot.add_argument("-o", "--output", type=Path, help="write to a file instead of standard output")

    widder = commands.add_parser("widderschin", parents=[common], help="the Widderschin permutation w_k")
    widder.add_argument("-k", type=int, required=True)
    _add_format(widder, ("text", "json", "svg"))

    thue = commands.add_parser("thue", parents=[common], help="Thue-Morse words")
    thue.add_argument("-g", "--generation", type=int, required=True)
    thue.add_argument("--substitute", action="store_true", help="apply abb->2, ab->1, a->0")
    _add_format(thue)

    return parser


def walk_options(args: argparse.Namespace) -> WalkOptions:
    return WalkOptions(
        start_cell=args.start_cell,
        start_yearn=args.start_yearn,
        first_step=Axis(args.first_step) if args.first_step else None,
        auto_double=args.auto_double,
        word=args.word,
        mode=args.mode,
        expand=args.expand,
    )


def _emit_json(kind: str, body: Dict[str, Any]) -> None:
    print(json.dumps({"schema": schema(kind), **body}, indent=2))


def run_decide(args: argparse.Namespace, settings: Settings) -> int:
    matrix = read_matrix(args.matrix)
    graph = bipartite_graph(matrix)
    shape = classify_graph(graph)
    pwo = is_pwo(matrix)
    if args.format == "json":
        body: Dict[str, Any] = {"pwo": pwo, "shape": shape.tag.value, "cycle_count": shape.cycle_count}
        if shape.cells:
            body["cycle"] = [list(cell) for cell in shape.cells]
        if args.edges:
            body["edges"] = dump_edges(graph).splitlines()
        _emit_json("decision", body)
    else:
        print(f"pwo: {'yes' if pwo else 'no'} ({shape})")
        if args.edges:
            print(dump_edges(graph))
    return 0


def run_enumerate(args: argparse.Namespace, settings: Settings) -> int:
    matrix = read_matrix(args.matrix)
    members = enumerate_profile_class(matrix, args.n, settings)
    if args.complement:
        inside = set(members)
        members = [p for p in all_permutations(args.n, settings) if p not in inside]
    if args.format == "json":
        _emit_json(
            "permutations",
            {"n": args.n, "count": len(members), "permutations": [permutation_to_json(p) for p in members]},
        )
    else:
        sys.stdout.write(format_permutations(members))
    return 0


def _sizes(args: argparse.Namespace, options: WalkOptions) -> List[int]:
    sizes = [args.n] if getattr(args, "n", None) is not None else list(args.ns or [])
    if args.last_cell is not None:
        sizes = sizes_ending_at(read_matrix(args.matrix), sizes, args.last_cell, options)
        logger.info(f"Sizes ending at {args.last_cell}: {sizes}")
    return sizes


def run_generate(args: argparse.Namespace, settings: Settings) -> int:
    matrix = read_matrix(args.matrix)
    options = walk_options(args)
    sizes = _sizes(args, options)
    if not sizes:
        logger.error("No sizes left to generate")
        return 1

    if args.format == "svg":
        if len(sizes) != 1:
            print("permprofile: --format svg needs exactly one size", file=sys.stderr)
            return 2
        state = generate_pbar(matrix, sizes[0], options)
        sys.stdout.write(plot_svg(spec_for_state(state, options.expand)))
        return 0

    elements = generate_antichain(matrix, sizes, options)
    label = "P" if options.expand else "Pbar"
    if args.format == "json":
        _emit_json(
            "antichain",
            {
                "expanded": options.expand,
                "elements": [
                    {"n": n, "matrix": matrix_to_json(P), "permutation": permutation_to_json(matrix_perm(P))}
                    for n, P in zip(sizes, elements)
                ],
            },
        )
    elif args.one_line:
        for n, P in zip(sizes, elements):
            print(f"{label}_{n}: {matrix_perm(P)}")
    else:
        for n, P in zip(sizes, elements):
            sys.stdout.write(f"# {label}_{n}\n{format_matrix_text(P)}")
    return 0


def run_partitions(args: argparse.Namespace, settings: Settings) -> int:
    matrix = read_matrix(args.matrix)
    if args.perm is not None:
        target: QuasiPermMatrix = perm_matrix(args.perm)
    else:
        target = quasi_perm_of(read_matrix(args.perm_matrix))
    found = enumerate_m_partitions(target, matrix, args.limit, settings)
    if args.format == "json":
        _emit_json("partitions", {"count": len(found), "partitions": [p.to_dict() for p in found]})
    elif args.count:
        print(len(found))
    else:
        for partition in found:
            print(partition)
        if not found:
            print("no M-partition")
    return 0


def run_verify(args: argparse.Namespace, settings: Settings) -> int:
    if args.perm:
        labels = [str(p) for p in args.perm]
        elements = [perm_matrix(p) for p in args.perm]
    else:
        if args.matrix is None or not args.ns:
            print("permprofile verify: give -m with --ns, or explicit -p elements", file=sys.stderr)
            return 2
        options = walk_options(args)
        sizes = _sizes(args, options)
        labels = [f"P_{n}" for n in sizes]
        elements = generate_antichain(read_matrix(args.matrix), sizes, options)

    report = verify_antichain(elements, settings)
    pairs = [(labels[pair.lower], labels[pair.upper]) for pair in report.comparable]
    if args.format == "json":
        _emit_json(
            "verification",
            {"antichain": report.is_antichain, "size": report.size, "comparable": [list(p) for p in pairs]},
        )
    else:
        print(f"antichain: {'yes' if report.is_antichain else 'no'}")
        for lower, upper in pairs:
            print(f"{lower} <= {upper}")
    return 0 if report.is_antichain else 1


def run_plot(args: argparse.Namespace, settings: Settings) -> int:
    if args.perm is not None:
        svg = plot_svg(spec_for_matrix(perm_matrix(args.perm)))
    else:
        if args.matrix is None or args.n is None:
            print("permprofile plot: give -m with -n, or -p", file=sys.stderr)
            return 2
        options = walk_options(args)
        state = generate_pbar(read_matrix(args.matrix), args.n, options)
        svg = plot_svg(spec_for_state(state, options.expand))
    if args.output:
        args.output.write_text(svg)
        logger.info(f"Wrote {args.output}")
    else:
        sys.stdout.write(svg)
    return 0


def run_widderschin(args: argparse.Namespace, settings: Settings) -> int:
    w = widderschin(args.k)
    if args.format == "json":
        _emit_json("permutation", {"k": args.k, "permutation": permutation_to_json(w)})
    elif args.format == "svg":
        sys.stdout.write(plot_svg(spec_for_matrix(perm_matrix(w))))
    else:
        print(w)
    return 0


def run_thue(args: argparse.Namespace, settings: Settings) -> int:
    word = thue_morse(args.generation)
    if args.substitute:
        word = tm_substitute(word)
    if args.format == "json":
        _emit_json("word", {"generation": args.generation, "substituted": args.substitute, "word": str(word)})
    else:
        print(word)
    return 0


COMMANDS = {
    "decide": run_decide,
    "enumerate": run_enumerate,
    "generate": run_generate,
    "partitions": run_partitions,
    "verify": run_verify,
    "plot": run_plot,
    "widderschin": run_widderschin,
    "thue": run_thue,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main application function."""
    args = arg_parser().parse_args(argv)
    setup_logging(args.verbose)
    settings = Settings.from_args(args)
    logger.debug(f"Walk modes available: {available_walk_modes()}")

    try:
        return COMMANDS[args.command](args, settings)
    except (ProfileError, UnknownWalkModeError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
