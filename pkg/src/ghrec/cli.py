"""Command-line front end.

Verdicts and instances go to standard output (or ``--out``), diagnostics to
standard error. ``-`` reads standard input. Exit codes: 0 YES / FOUND / OK,
1 NO / PROVEN_NO / NONE / FAIL, 2 INAPPLICABLE / BUDGET_EXHAUSTED, 3 input error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import generators
from .chordal import find_hole
from .errors import GhrecError
from .graph import Graph, bridges, connected_components, parse_graph, serialize_graph
from .hypergraph import image, multiplicity, parse_labelling, serialize_labelling, verify_labelling
from .oracle import DEFAULT_BUDGET, FOUND, PROVEN_NO, oracle_enumerate, oracle_search
from .patterns import PatternName, find_induced_pattern
from .recognizer import INAPPLICABLE, NO, YES, recognize, tree_labelling
from .reductions import (build_2li, ham_reduction, hamiltonian, li_to_clawfree, parse_2li, parse_cnf,
                         serialize_2li, serialize_cnf, solve_2li)
from .reductions.twoli import serialize_two_labelling

EXIT_OK, EXIT_NO, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2, 3
VERDICT_EXIT = {YES: EXIT_OK, NO: EXIT_NO, INAPPLICABLE: EXIT_UNDECIDED}
ORACLE_CAP = 12


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GhrecError("UNREADABLE", f"{path}: {exc.strerror}") from None


def split_bundle(text: str) -> tuple[str, str]:
    """Separate graph lines (``p``/``e``) from labelling lines (``l``)."""
    glines, llines = [], []
    for line in text.splitlines():
        head = line.split(maxsplit=1)[0] if line.strip() else ""
        (llines if head == "l" else glines).append(line)
    return "\n".join(glines), "\n".join(llines)


def _graph(path: str) -> Graph:
    return parse_graph(split_bundle(_read(path))[0])


def _recognize_text(text: str, fallback: bool, cap: int, budget: int) -> tuple[str, int]:
    g = parse_graph(split_bundle(text)[0])
    r = recognize(g)
    if r.verdict == INAPPLICABLE and fallback:
        if g.n > cap:
            return r.render() + f"\n# oracle fallback skipped: n = {g.n} exceeds cap {cap}", EXIT_UNDECIDED
        o = oracle_search(g, budget)
        if o.status == FOUND:
            return "YES\n# by exhaustive search\n" + serialize_labelling(o.labelling), EXIT_OK
        if o.status == PROVEN_NO:
            return f"NO ORACLE_PROVEN_NO\n# exhaustive search, {o.stats.nodes} nodes", EXIT_NO
        return r.render() + f"\n# oracle fallback: budget of {budget} nodes exhausted", EXIT_UNDECIDED
    return r.render(), VERDICT_EXIT[r.verdict]


def _recognize_job(args: tuple[str, bool, int, int]) -> tuple[str, int]:
    path, fallback, cap, budget = args
    try:
        return _recognize_text(_read(path), fallback, cap, budget)
    except GhrecError as exc:
        return f"ERROR {exc.code}\n# {exc}", EXIT_INPUT


def cmd_recognize(a, out) -> int:
    jobs = [(p, a.fallback_oracle, a.oracle_cap, a.budget) for p in a.graphs]
    if len(jobs) == 1:
        text, code = _recognize_text(_read(a.graphs[0]), a.fallback_oracle, a.oracle_cap, a.budget)
        out(text)
        return code
    if a.jobs > 1:
        with ProcessPoolExecutor(a.jobs) as ex:
            results = list(ex.map(_recognize_job, jobs))
    else:
        results = [_recognize_job(j) for j in jobs]
    for path, (text, _) in zip(a.graphs, results):
        out(f"== {path}\n{text}")
    return max(code for _, code in results)


def cmd_verify(a, out) -> int:
    if a.labelling is None:
        gtext, ltext = split_bundle(_read(a.graph))
    else:
        gtext, ltext = split_bundle(_read(a.graph))[0], _read(a.labelling)
    g = parse_graph(gtext)
    lab = parse_labelling(ltext)
    rep = verify_labelling(g, lab)
    if rep.ok:
        out("OK")
        return EXIT_OK
    out("FAIL")
    for v in rep.violations:
        out(f"v {v.kind} {v.intersection} " + " ".join(map(str, v.vertices)))
    return EXIT_NO


def cmd_image(a, out) -> int:
    lab = parse_labelling(split_bundle(_read(a.labelling))[1])
    out(serialize_graph(image(lab, a.l)))
    return EXIT_OK


def cmd_oracle(a, out) -> int:
    g = _graph(a.graph)
    if a.enumerate:
        labs = oracle_enumerate(g, a.budget)
        out(f"COUNT {len(labs)}")
        for i, lab in enumerate(labs, 1):
            out(f"# realization {i}\n{serialize_labelling(lab)}")
        return EXIT_OK if labs else EXIT_NO
    o = oracle_search(g, a.budget)
    print(f"nodes={o.stats.nodes} max_depth={o.stats.max_depth} elapsed={o.stats.elapsed:.3f}s", file=sys.stderr)
    if o.status == FOUND:
        out("FOUND\n" + serialize_labelling(o.labelling))
        return EXIT_OK
    out(o.status)
    return EXIT_NO if o.status == PROVEN_NO else EXIT_UNDECIDED


def structure_report(g: Graph) -> list[str]:
    lines = [f"n {g.n}", f"m {g.m}", f"components {len(connected_components(g))}", f"bridges {len(bridges(g))}"]
    hole = find_hole(g)
    lines.append("chordal yes" if hole is None else "chordal no hole " + " ".join(map(str, hole)))
    for p in PatternName:
        occ = find_induced_pattern(g, p)
        lines.append(f"pattern {p.value} " + ("none" if occ is None else " ".join(map(str, occ.embedding))))
    return lines


def cmd_check(a, out) -> int:
    out("\n".join(structure_report(_graph(a.graph))))
    return EXIT_OK


def cmd_tree(a, out) -> int:
    r = tree_labelling(_graph(a.graph))
    out(r.render())
    return VERDICT_EXIT[r.verdict]


def cmd_reduce_sat2li(a, out) -> int:
    out(serialize_2li(build_2li(parse_cnf(_read(a.cnf)))))
    return EXIT_OK


def cmd_reduce_li2claw(a, out) -> int:
    cg = li_to_clawfree(parse_2li(_read(a.instance)))
    lines = [serialize_graph(cg.graph)]
    for link in cg.links:
        lines.append(f"# link {link.kind} {link.a}:{link.a_side[0]},{link.a_side[1]} "
                     f"{link.b}:{link.b_side[0]},{link.b_side[1]}")
    out("\n".join(lines))
    return EXIT_OK


def cmd_reduce_ham(a, out) -> int:
    h, lab = ham_reduction(_graph(a.graph))
    print(f"multiplicity {multiplicity(lab)}", file=sys.stderr)
    out(serialize_graph(h) + "\n" + serialize_labelling(lab))
    return EXIT_OK


def cmd_solve_2li(a, out) -> int:
    o = solve_2li(parse_2li(_read(a.instance)), a.budget, a.method)
    print(f"nodes={o.nodes} elapsed={o.elapsed:.3f}s", file=sys.stderr)
    if o.status == FOUND:
        out("FOUND\n" + serialize_two_labelling(o.labelling))
        return EXIT_OK
    out(o.status)
    return EXIT_NO if o.status == PROVEN_NO else EXIT_UNDECIDED


def cmd_hamiltonian(a, out) -> int:
    r = hamiltonian(_graph(a.graph), a.budget)
    if r.status == "FOUND":
        out("FOUND\nc " + " ".join(map(str, r.cycle)))
        return EXIT_OK
    out(r.status)
    return EXIT_NO if r.status == "NONE" else EXIT_UNDECIDED


def cmd_gen(a, out) -> int:
    if a.kind == "chordal-clawfree":
        g, lab = generators.chordal_clawfree_yes(a.n, a.seed)
        if a.perturb:
            out(serialize_graph(generators.perturbed(g, a.seed, a.perturb)))
        else:
            out(serialize_graph(g) + ("\n" + serialize_labelling(lab) if a.with_labelling else ""))
    elif a.kind == "random-labelling":
        out(serialize_labelling(generators.random_labelling(a.n, a.seed, a.ground)))
    elif a.kind == "tree":
        out(serialize_graph(generators.random_tree(a.n, a.seed, a.max_degree)))
    elif a.kind == "cubic":
        out(serialize_graph(generators.random_cubic(a.n, a.seed)))
    else:
        out(serialize_cnf(generators.random_cnf3(a.n, a.clauses, a.seed)))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage mistakes are input errors, not an INAPPLICABLE verdict
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(s: str) -> int:
    v = int(s)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default="-", help="output path ('-' for standard output)")
    budget = _Parser(add_help=False)
    budget.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="search node budget")

    p = _Parser(prog="ghrec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", parents=[common, budget], help="decide realizability")
    s.add_argument("graphs", nargs="+")
    s.add_argument("--fallback-oracle", action="store_true", help="run exhaustive search on INAPPLICABLE inputs")
    s.add_argument("--oracle-cap", type=_positive, default=ORACLE_CAP, help="largest n for the fallback")
    s.add_argument("--jobs", type=_positive, default=1, help="parallel workers across input files")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("verify", parents=[common], help="check a labelling against a graph")
    s.add_argument("graph", help="graph file, or a bundle with both graph and labelling lines")
    s.add_argument("labelling", nargs="?")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("image", parents=[common], help="graph of a labelling")
    s.add_argument("labelling")
    s.add_argument("--l", type=_positive, default=2, help="intersection size defining adjacency")
    s.set_defaults(func=cmd_image)

    s = sub.add_parser("oracle", parents=[common, budget], help="exhaustive realization search")
    s.add_argument("graph")
    s.add_argument("--enumerate", action="store_true", help="list one realization per renaming class")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("check", parents=[common], help="structural report")
    s.add_argument("graph")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("tree", parents=[common], help="label a tree")
    s.add_argument("graph")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("reduce-sat2li", parents=[common], help="3-CNF to pair-labelling instance")
    s.add_argument("cnf")
    s.set_defaults(func=cmd_reduce_sat2li)

    s = sub.add_parser("reduce-li2claw", parents=[common], help="pair-labelling instance to linked cliques")
    s.add_argument("instance")
    s.set_defaults(func=cmd_reduce_li2claw)

    s = sub.add_parser("reduce-ham", parents=[common], help="cubic graph to triangle-substituted graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_reduce_ham)

    s = sub.add_parser("solve-2li", parents=[common, budget], help="search for a pair labelling")
    s.add_argument("instance")
    s.add_argument("--method", choices=("sides", "pairs"), default="sides")
    s.set_defaults(func=cmd_solve_2li)

    s = sub.add_parser("hamiltonian", parents=[common, budget], help="find a Hamiltonian cycle")
    s.add_argument("graph")
    s.set_defaults(func=cmd_hamiltonian)

    s = sub.add_parser("gen", parents=[common], help="seeded instance generators")
    s.add_argument("kind", choices=("chordal-clawfree", "random-labelling", "tree", "cubic", "cnf3"))
    s.add_argument("--n", type=_positive, required=True, help="vertices, labels, or variables (cnf3)")
    s.add_argument("--seed", type=_seed, required=True)
    s.add_argument("--clauses", type=int, default=5, help="cnf3: number of clauses")
    s.add_argument("--ground", type=_positive, default=None, help="random-labelling: ground set size")
    s.add_argument("--max-degree", type=_positive, default=None, help="tree: degree cap")
    s.add_argument("--perturb", type=_positive, default=0, help="chordal-clawfree: edge flips (NO candidates)")
    s.add_argument("--with-labelling", action="store_true", help="chordal-clawfree: append the labelling")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    a = build_parser().parse_args(argv)
    chunks: list[str] = []
    try:
        code = a.func(a, chunks.append)
    except GhrecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = "\n".join(chunks) + "\n"
    if a.out == "-":
        sys.stdout.write(text)
    else:
        Path(a.out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
