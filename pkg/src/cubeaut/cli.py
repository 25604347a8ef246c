"""Command-line surface.

Exit codes: 0 on success; 1 on domain failures (size guard exceeded,
invalid letter, violated precondition, failed verification, violated
distance bound); 2 on usage and parse errors (bad graph file, word or
element grammar).  JSON output is the stable, scriptable contract; text
output is for people.  Randomized commands require an explicit seed.
"""

import argparse
import json
import sys

from .alphabet import GuardExceeded, build_alphabet, load_defining_graph
from .analysis import build_report, ck_orbit_experiment
from .automorphisms import (
    ElementSyntaxError,
    check_axioms,
    format_atom,
    parse_element,
    peel_stabilizer,
    topological_generators,
)
from .geometry import enumerate_ball
from .words import (
    InvalidLetterError,
    WordSyntaxError,
    build_normal_automaton,
    equivalent,
    format_word,
    invert_word,
    normalize,
    parse_word,
    reduce_word,
)


class _UsageError(Exception):
    pass


def _load_alphabet(path):
    try:
        return build_alphabet(load_defining_graph(path))
    except (OSError, ValueError) as exc:
        raise _UsageError("cannot load graph %s: %s" % (path, exc))


def cmd_check(args):
    alphabet = _load_alphabet(args.graph)
    report = build_report(alphabet)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return 0


def _word_command(op):
    def run(args):
        alphabet = _load_alphabet(args.graph)
        for text in args.words:
            word = parse_word(alphabet, text)
            print(format_word(op(alphabet, word)))
        return 0
    return run


cmd_normalize = _word_command(normalize)
cmd_reduce = _word_command(reduce_word)
cmd_invert = _word_command(invert_word)


def cmd_equiv(args):
    alphabet = _load_alphabet(args.graph)
    v = parse_word(alphabet, args.left)
    w = parse_word(alphabet, args.right)
    print("true" if equivalent(alphabet, v, w) else "false")
    return 0


def cmd_dfa(args):
    alphabet = _load_alphabet(args.graph)
    automaton = build_normal_automaton(alphabet)
    if args.format == "dot":
        print(automaton.to_dot())
    else:
        print(json.dumps(automaton.to_json(), indent=2))
    return 0


def cmd_ball(args):
    alphabet = _load_alphabet(args.graph)
    ball = enumerate_ball(alphabet, args.radius)
    print(json.dumps(ball.to_json(), indent=2))
    return 0


def cmd_apply(args):
    alphabet = _load_alphabet(args.graph)
    element = parse_element(alphabet, args.element)
    word = parse_word(alphabet, args.word)
    print(format_word(element.apply(word)))
    return 0


def cmd_verify(args):
    alphabet = _load_alphabet(args.graph)
    element = parse_element(alphabet, args.element)
    report = check_axioms(element, args.radius, seed=args.seed)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        for axiom, ok in report.results.items():
            print("%-24s  %s" % (axiom, "pass" if ok else "FAIL"))
        for failure in report.failures:
            print("counterexample: %s at vertex %r: %s"
                  % (failure["axiom"], failure["vertex"], failure["detail"]))
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_gens(args):
    alphabet = _load_alphabet(args.graph)
    for atom in topological_generators(alphabet):
        print(format_atom(atom))
    return 0


def cmd_peel(args):
    alphabet = _load_alphabet(args.graph)
    element = parse_element(alphabet, args.element)
    peeled, residual = peel_stabilizer(element, args.depth)
    if args.format == "json":
        print(json.dumps({
            "peeled": [format_atom(at) for at in peeled],
            "residual_factors": len(residual.factors),
        }, indent=2))
    else:
        for at in peeled:
            print(format_atom(at))
        print("residual factors: %d" % len(residual.factors))
    return 0


def cmd_ck(args):
    report = ck_orbit_experiment(args.n, trials=args.trials,
                                 pool_depth=args.pool_depth,
                                 seed=args.seed, jobs=args.jobs)
    if args.plot:
        _plot_ck(report, args.plot)
    print(json.dumps(report, indent=2))
    return 1 if report["violations"] else 0


def _plot_ck(report, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(report["distances"])), report["distances"],
            ".", markersize=4, label="image distance")
    ax.axhline(report["bound"], color="red", linestyle="--",
               label="bound 2n = %d" % report["bound"])
    ax.set_xlabel("trial")
    ax.set_ylabel("l1 distance from basepoint")
    ax.set_ylim(bottom=0)
    ax.set_title("orbit distance of the zig-zag word, n=%d" % report["n"])
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubeaut",
        description="Normal forms, portraits and decision procedures for "
                    "automorphisms of universal covers of Salvetti complexes.")
    sub = parser.add_subparsers(dest="command")

    def graph_flag(p):
        p.add_argument("-g", "--graph", required=True,
                       help="path to a defining-graph JSON file")

    p = sub.add_parser("check", help="run all graph-level decision procedures")
    p.add_argument("graph", help="path to a defining-graph JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    for name, func, help_text in (
            ("normalize", cmd_normalize, "normal form of each word"),
            ("reduce", cmd_reduce, "reduced form of each word"),
            ("invert", cmd_invert, "normal form of each inverse word")):
        p = sub.add_parser(name, help=help_text)
        graph_flag(p)
        p.add_argument("words", nargs="+")
        p.set_defaults(func=func)

    p = sub.add_parser("equiv", help="do two words represent the same element")
    graph_flag(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("dfa", help="automaton accepting exactly the normal words")
    graph_flag(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_dfa)

    p = sub.add_parser("ball", help="metric ball around the basepoint")
    graph_flag(p)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("apply", help="apply an element to a word")
    graph_flag(p)
    p.add_argument("element")
    p.add_argument("word")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="check the portrait axioms on a ball")
    graph_flag(p)
    p.add_argument("element")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gens", help="list the topological generators")
    graph_flag(p)
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("peel", help="factor a basepoint stabilizer sphere by sphere")
    graph_flag(p)
    p.add_argument("element")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("ck", help="orbit-distance experiment on the chain a-b-c-d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--pool-depth", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--plot", metavar="PATH",
                   help="also render the distances to an image file")
    p.set_defaults(func=cmd_ck)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "func", None) is None:
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (WordSyntaxError, ElementSyntaxError) as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except (InvalidLetterError, GuardExceeded) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("precondition failed: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
