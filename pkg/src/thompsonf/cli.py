"""Command-line interface.

Exit codes: 0 success, 2 unreadable input, 3 operation undefined for the
input, 4 resource cap exceeded, 5 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from typing import Callable, Sequence

from . import cayley, growth, metric, strand, verify
from .core.element import Element, abelianize, invert, multiply, parse_element
from .core.forests import format_forest
from .core.pl import to_pl_half, to_pl_line, to_pl_unit
from .core.trees import parse_tree
from .errors import (DomainError, NumericError, ParseError, ResourceLimitError, StructureError,
                     VerificationError)
from .words import anti_normal_form, format_word, normal_form, word_graph

EXIT_PARSE, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_VERIFY = 2, 3, 4, 5
ELEMENT_KINDS = ("auto", "word", "tree", "twoway", "oneway")
RENDERINGS = ("normal", "tree", "twoway", "oneway", "pl-unit", "pl-half", "pl-line")


class Output:
    """Writes text lines or JSON objects, one per line."""

    def __init__(self, fmt: str, stream=None) -> None:
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, **record) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            self.stream.write(text + "\n")


def read_input(arg: str) -> str:
    """``-`` reads stdin and ``@path`` reads a file; anything else is literal."""
    if arg == "-":
        return sys.stdin.read().strip()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def element_arg(args, text: str) -> Element:
    return parse_element(read_input(text), args.kind)


def render_element(f: Element, how: str) -> str:
    if how == "normal":
        return format_word(normal_form(f))
    if how == "tree":
        return str(f)
    if how == "twoway":
        return str(f.twoway)
    if how == "oneway":
        top, bot = f.oneway
        return f"{format_forest(top)}\n{format_forest(bot)}"
    maps = {"pl-unit": to_pl_unit, "pl-half": to_pl_half, "pl-line": to_pl_line}
    m = maps[how](f)
    pts = " ".join(f"({x},{y})" for x, y in m.breakpoints())
    return f"{m.kind} [{pts}] left={m.left_shift} right={m.right_shift}"


def emit_element(out: Output, f: Element, how: str) -> None:
    out.emit(render_element(f, how), top=str(f.top), bottom=str(f.bottom),
             normal=format_word(normal_form(f)))


# Subcommand handlers.

def cmd_normalize(args, out: Output) -> int:
    w = normal_form(parse_element(read_input(args.word), "word"))
    out.emit(format_word(w), normal=format_word(w))
    return 0


def cmd_antinormal(args, out: Output) -> int:
    w = anti_normal_form(element_arg(args, args.element))
    out.emit(format_word(w), anti_normal=format_word(w))
    return 0


def cmd_length(args, out: Output) -> int:
    f = element_arg(args, args.element)
    weights, carets = metric.length_parts(f)
    total = weights + carets
    text = f"{total}" if not args.parts else f"{total} weights={weights} carets={carets}"
    out.emit(text, length=total, weight_sum=weights, carets=carets)
    return 0


def cmd_geodesic(args, out: Output) -> int:
    w = metric.geodesic_word(element_arg(args, args.element))
    out.emit(format_word(w), geodesic=format_word(w), length=len(w))
    return 0


def cmd_label(args, out: Output) -> int:
    lab = metric.label_spaces(element_arg(args, args.element))
    out.emit(lab.render(), top=list(lab.top_labels), bottom=list(lab.bottom_labels),
             weights=list(lab.weights), weight_sum=lab.weight_sum, carets=lab.carets,
             length=lab.length)
    return 0


def cmd_multiply(args, out: Output) -> int:
    f = element_arg(args, args.elements[0])
    for text in args.elements[1:]:
        f = multiply(f, element_arg(args, text))
    emit_element(out, f, args.render)
    return 0


def cmd_invert(args, out: Output) -> int:
    emit_element(out, invert(element_arg(args, args.element)), args.render)
    return 0


def cmd_abelianize(args, out: Output) -> int:
    a, b = abelianize(element_arg(args, args.element))
    out.emit(f"{a} {b}", log_slope_0=a, log_slope_1=b)
    return 0


def cmd_eval(args, out: Output) -> int:
    emit_element(out, parse_element(read_input(args.word), "word"), args.render)
    return 0


def cmd_convert(args, out: Output) -> int:
    emit_element(out, element_arg(args, args.element), args.to)
    return 0


def cmd_ball(args, out: Output) -> int:
    b = cayley.ball(args.radius)
    if args.elements:
        for d, r in b.items():
            line = f"{format_forest(d.top, d.top_pointer)} / {format_forest(d.bottom, d.bottom_pointer)}"
            out.emit(f"{r}\t{line}", length=r, twoway=line)
        return 0
    out.emit(f"size {len(b)}\nspheres {' '.join(map(str, b.sphere_sizes))}", **b.stats())
    return 0


def cmd_deadends(args, out: Output) -> int:
    b = cayley.ball(args.radius)
    found = [d for d, _ in b.items() if metric.is_dead_end_structural(Element.from_twoway(d))]
    lengths = Counter(metric.diagram_length(d) for d in found)
    for d in found:
        f = Element.from_twoway(d)
        out.emit(f"{metric.length(f)}\t{format_word(metric.geodesic_word(f))}",
                 length=metric.length(f), twoway=str(d),
                 escape_length=metric.length(cayley.escape(f)))
    if args.brute:
        if args.radius < 1:
            raise DomainError("brute-force detection needs radius at least 1")
        brute = set(cayley.dead_ends(b, args.radius - 1))
        inner = {d for d in found if metric.diagram_length(d) < args.radius}
        if brute != inner:
            raise VerificationError(f"structural {len(inner)} vs brute force {len(brute)} "
                                    f"within radius {args.radius - 1}")
    if out.fmt == "text":
        out.emit(f"total {len(found)} by length {dict(sorted(lengths.items()))}")
    return 0


def cmd_pockets(args, out: Output) -> int:
    b = cayley.ball(args.radius)
    count = 0
    for d, _ in b.items():
        f = Element.from_twoway(d)
        if metric.is_dead_end_structural(f) and cayley.pocket_depth(f, args.k):
            count += 1
            out.emit(str(d), twoway=str(d))
    out.emit(f"{args.k}-pockets {count}", k=args.k, pockets=count)
    return 0


def cmd_mac(args, out: Output) -> int:
    pairs = cayley.mac_witness_search(args.radius, all_pairs=args.all_pairs)
    hist = Counter(p.in_ball_distance for p in pairs)
    worst = max(hist, default=0)
    out.emit(f"pairs {len(pairs)} in-ball distances {dict(sorted(hist.items()))} max {worst}",
             radius=args.radius, pairs=len(pairs),
             histogram={str(k): v for k, v in sorted(hist.items())}, max=worst)
    return 0


def cmd_freecheck(args, out: Output) -> int:
    total, distinct = cayley.free_submonoid_check(args.max_len)
    out.emit(f"words {total} distinct {distinct}", words=total, distinct=distinct)
    if total != distinct:
        raise VerificationError("two words of the submonoid coincide")
    return 0


def cmd_growth(args, out: Output) -> int:
    series = growth.series_coefficients(args.max_n)
    counts = growth.count_positive_by_length(args.max_n) if args.brute else None
    for n, p in enumerate(series.values):
        text = f"{n}\t{p}" + (f"\t{counts[n]}" if counts else "")
        out.emit(text, n=n, series=p, **({"census": counts[n]} if counts else {}))
    if counts is not None and list(series.values) != counts:
        raise VerificationError("census differs from the growth series")
    return 0


def cmd_iso(args, out: Output) -> int:
    lo, hi = growth.root_bracket(args.k, args.tol)
    value = float((lo + hi) / 2)
    out.emit(f"height {args.k}: root {value:.15g}, twice the root {2 * value:.15g}",
             k=args.k, root=value, bracket=[str(lo), str(hi)])
    return 0


def cmd_folner(args, out: Output) -> int:
    r = growth.folner_ratio(args.n, args.k, budget=args.budget)
    out.emit(f"size={r.size} boundary={r.boundary} ratio={r.ratio} ~ {float(r.ratio):.6f} "
             f"trivial share={r.trivial_probability} method={r.method}"
             + (" (enumeration skipped)" if r.fell_back else ""),
             n=r.n, k=r.k, size=r.size, boundary=r.boundary, ratio=str(r.ratio),
             trivial_probability=str(r.trivial_probability), method=r.method,
             fell_back=r.fell_back)
    return 0


def cmd_subtree_bound(args, out: Output) -> int:
    lines = [ln.strip() for ln in read_input("@" + args.trees).splitlines()]
    trees = {parse_tree(ln) for ln in lines if ln and not ln.startswith("#")}
    bound = growth.subtree_closed_bound(trees, args.tol)
    out.emit(f"{bound:.15g}", bound=bound, trees=len(trees))
    return 0


def cmd_wordgraph(args, out: Output) -> int:
    g = word_graph(element_arg(args, args.element), args.max_vertices)
    if args.dot:
        out.stream.write(g.to_dot() + "\n")
        return 0
    out.emit(f"vertices {len(g.vertices)} edges {len(g.edges)}",
             vertices=len(g.vertices), edges=len(g.edges),
             normal=format_word_indices(g.normal), anti_normal=format_word_indices(g.anti_normal))
    return 0


def format_word_indices(idx: Sequence[int]) -> str:
    return " ".join(f"x{i}" for i in idx) or "1"


def cmd_strand(args, out: Output) -> int:
    w = strand.parse_generator_word(read_input(args.word), args.width)
    if args.strand_cmd == "render":
        if args.dot:
            out.stream.write(strand.render_dot(w) + "\n")
        else:
            out.emit(strand.format_generator_word(w), word=strand.format_generator_word(w))
        return 0
    m = strand.canonicalize(w)
    if args.strand_cmd == "compose":
        v = strand.parse_generator_word(read_input(args.other), w.end)
        m = strand.groupoid_compose(m, strand.canonicalize(v))
    nw = strand.normal_word(m)
    out.emit(f"{m}\n{strand.format_generator_word(nw)}", source=m.source, target=m.target,
             p=format_forest(m.p), q=format_forest(m.q), normal=strand.format_generator_word(nw))
    return 0


def cmd_verify(args, out: Output) -> int:
    if args.suite != "oracle":
        raise DomainError(f"unknown suite {args.suite!r}")
    results = verify.oracle_suite(args.radius, args.seed)
    for r in results:
        out.emit(str(r), check=r.name, passed=r.passed, total=r.total, ok=r.ok)
    if not all(r.ok for r in results):
        raise VerificationError("some checks failed")
    return 0


# Parser.

def positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def non_negative_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thompsonf", description="Exact computation in Thompson's group F.")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="json writes one JSON object per line")
    p.add_argument("--kind", choices=ELEMENT_KINDS, default="auto",
                   help="how element arguments are read")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--max-ball", type=positive_int, default=None,
                   help=f"element cap for ball enumeration (also ${cayley.MAX_BALL_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(handler=handler)
        return sp

    add("normalize", cmd_normalize, "normal form of a word").add_argument("word")
    add("antinormal", cmd_antinormal, "anti-normal form of a positive element").add_argument("element")
    sp = add("length", cmd_length, "word length over {x0, x1}")
    sp.add_argument("element")
    sp.add_argument("--parts", action="store_true", help="also print the weight sum and caret count")
    add("geodesic", cmd_geodesic, "a shortest {x0, x1} word").add_argument("element")
    add("label", cmd_label, "space labels and weights").add_argument("element")
    sp = add("multiply", cmd_multiply, "product, first argument applied first")
    sp.add_argument("elements", nargs="+")
    sp.add_argument("--render", choices=RENDERINGS, default="normal")
    sp = add("invert", cmd_invert, "inverse element")
    sp.add_argument("element")
    sp.add_argument("--render", choices=RENDERINGS, default="normal")
    add("abelianize", cmd_abelianize, "log-2 slopes at 0 and 1").add_argument("element")
    sp = add("eval", cmd_eval, "evaluate a word")
    sp.add_argument("word")
    sp.add_argument("--render", choices=RENDERINGS, default="tree")
    sp = add("convert", cmd_convert, "change representation")
    sp.add_argument("element")
    sp.add_argument("--to", choices=RENDERINGS, required=True)
    sp = add("ball", cmd_ball, "enumerate a Cayley ball")
    sp.add_argument("--radius", type=non_negative_int, required=True)
    sp.add_argument("--stats", action="store_true", help="size and sphere sizes (the default)")
    sp.add_argument("--elements", action="store_true", help="list members instead of sizes")
    sp = add("deadends", cmd_deadends, "dead ends within a ball")
    sp.add_argument("--radius", type=non_negative_int, required=True)
    sp.add_argument("--brute", action="store_true", help="cross-check by breadth-first search")
    sp = add("pockets", cmd_pockets, "dead ends that are k-pockets")
    sp.add_argument("--radius", type=non_negative_int, required=True)
    sp.add_argument("--k", type=int, default=3)
    sp = add("mac", cmd_mac, "in-ball distances of distance-two pairs on the outer sphere")
    sp.add_argument("--radius", type=positive_int, required=True)
    sp.add_argument("--all-pairs", action="store_true")
    sp = add("freecheck", cmd_freecheck, "freeness of the {x0^-1, x1} submonoid")
    sp.add_argument("--max-len", "--maxlen", dest="max_len", type=positive_int, default=12)
    sp = add("growth", cmd_growth, "growth series of the positive monoid")
    sp.add_argument("--max-n", type=non_negative_int, required=True)
    sp.add_argument("--brute", action="store_true", help="also count inside the Cayley ball")
    sp = add("iso", cmd_iso, "root in (0, 1] of the height-k tree polynomial equal to 1")
    sp.add_argument("--k", type=non_negative_int, required=True)
    sp.add_argument("--tol", type=float, default=growth.DEFAULT_TOL)
    sp = add("folner", cmd_folner, "exact boundary ratio of the bounded pointed-forest set")
    sp.add_argument("--n", type=non_negative_int, required=True)
    sp.add_argument("--k", type=non_negative_int, required=True)
    sp.add_argument("--budget", type=positive_int, default=growth.DEFAULT_ENUM_BUDGET)
    sp = add("subtree-bound", cmd_subtree_bound, "bound from a subtree-closed family")
    sp.add_argument("--trees", required=True, help="file with one tree per line")
    sp.add_argument("--tol", type=float, default=growth.DEFAULT_TOL)
    sp = add("wordgraph", cmd_wordgraph, "graph of positive words for an element")
    sp.add_argument("element")
    sp.add_argument("--dot", action="store_true")
    sp.add_argument("--max-vertices", type=positive_int, default=10 ** 6)

    sp = add("strand", cmd_strand, "strand diagrams and the groupoid of fractions")
    ss = sp.add_subparsers(dest="strand_cmd", required=True)
    for name in ("canon", "compose", "render"):
        s = ss.add_parser(name)
        s.add_argument("word")
        if name == "compose":
            s.add_argument("other")
        if name == "render":
            s.add_argument("--dot", action="store_true")
        s.add_argument("--width", type=positive_int, default=1, help="starting number of strands")

    sp = add("verify", cmd_verify, "batch cross-checks")
    sp.add_argument("--suite", default="oracle")
    sp.add_argument("--radius", type=non_negative_int, default=8)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(cayley.MAX_BALL_ENV)
    if args.max_ball is not None:
        os.environ[cayley.MAX_BALL_ENV] = str(args.max_ball)
    try:
        return run(args)
    finally:
        if saved is None:
            os.environ.pop(cayley.MAX_BALL_ENV, None)
        else:
            os.environ[cayley.MAX_BALL_ENV] = saved


def run(args) -> int:
    out = Output(args.format)
    try:
        return args.handler(args, out)
    except (ParseError, StructureError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, NumericError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        if e.partial:
            print(json.dumps(e.partial, default=str), file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
