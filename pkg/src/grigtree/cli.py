"""Command-line surface.

Every subcommand prints deterministic text given its arguments (seeds
are explicit and echoed).  Exit codes: 0 for success or a positive
verdict, 1 for a negative verdict (closure violation, unbounded,
verification counterexample), 2 for usage or parse errors.

Element designators:
  word:<abcd-string>     product of generators ("-" for the empty word)
  auto:f                 the built-in unbounded closure element
  auto:grig[#<state>]    the Grigorchuk generator automaton (default
                         state: its root, a)
  auto:<file>[#<state>]  automaton from a text file
  kbar:<word>            the self-similar element (k, kbar) for a
                         conjugate-product word k
  portrait:<file>        truncation read from a portrait text file
"""

from __future__ import annotations

import argparse
import sys

from .automata import (activity_profile, element_of, f_automaton,
                       grigorchuk_automaton, is_bounded_automaton,
                       kbar_element, parse_automaton)
from .closure import (free_bit_count, hausdorff_estimate, in_closure_up_to,
                      sample_closure_element)
from .oracle import enumerate_quotient, save_portrait_set, verify_window_constraints
from .tree import (Automorphism, Portrait, TruncationAutomorphism, apply,
                   check_vertex, portrait_of)
from .words import check_word, decompose_word, reduce, section_words, word_element


class DesignatorError(ValueError):
    """Malformed element designator or input file."""


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DesignatorError(f"cannot read {path}: {exc.strerror}") from exc


def parse_element(spec: str):
    """Resolve an element designator to (automorphism, automaton-or-None)."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise DesignatorError(f"element designator {spec!r} needs a '<kind>:' prefix")
    if kind == "word":
        word = "" if rest == "-" else rest
        return word_element(check_word(word)), None
    if kind == "kbar":
        word = "" if rest == "-" else rest
        return kbar_element(word), None
    if kind == "auto":
        name, hash_sep, state = rest.partition("#")
        if name == "f":
            automaton = f_automaton()
        elif name == "grig":
            automaton = grigorchuk_automaton()
        else:
            automaton = parse_automaton(_read_file(name))
        if not hash_sep:
            state = automaton.root
        return element_of(automaton, state), automaton
    if kind == "portrait":
        portrait = Portrait.from_text(_read_file(rest))
        return TruncationAutomorphism(portrait), None
    raise DesignatorError(f"unknown element kind {kind!r} in {spec!r}")


def _element(spec: str) -> Automorphism:
    return parse_element(spec)[0]


def _print_word(word: str) -> None:
    print(word if word else "-")


def cmd_reduce(args) -> int:
    _print_word(reduce(check_word(args.word)))
    return 0


def cmd_decompose(args) -> int:
    word = "" if args.word == "-" else args.word
    check_word(word)
    if args.depth is None:
        w0, w1, parity = decompose_word(word)
        print(f"0: {w0 or '-'}  1: {w1 or '-'}  sigma: {parity}")
        return 0
    sections = section_words(word, args.depth)
    for u in sorted(sections, key=lambda v: (len(v), v)):
        print(f"{u or '-'}: {sections[u] or '-'}")
    return 0


def cmd_act(args) -> int:
    vertex = "" if args.vertex == "-" else args.vertex
    check_vertex(vertex)
    _print_word(apply(_element(args.elem), vertex))
    return 0


def _portrait_dot(p: Portrait) -> str:
    lines = ["digraph portrait {", '  node [shape=circle];']
    for level, row in enumerate(p.levels):
        for i, bit in enumerate(row):
            u = format(i, f"0{level}b") if level else ""
            name = u or "-"
            lines.append(f'  "{name}" [label="{name} {bit}"];')
            if level:
                parent = u[:-1] or "-"
                lines.append(f'  "{parent}" -> "{name}";')
    lines.append("}")
    return "\n".join(lines)


def cmd_portrait(args) -> int:
    p = portrait_of(_element(args.elem), args.depth)
    if args.format == "dot":
        print(_portrait_dot(p))
    else:
        print(p.to_text(), end="")
    return 0


def cmd_check_closure(args) -> int:
    verdict = in_closure_up_to(_element(args.elem), args.depth)
    print(verdict.format())
    return 0 if verdict else 1


def cmd_enumerate(args) -> int:
    if args.level >= 5 and not args.large:
        raise DesignatorError("level 5 holds ~4.2M portraits; pass --large to allow it")
    qs = enumerate_quotient(args.level)
    print(f"level={qs.level} count={len(qs)}")
    if args.out:
        save_portrait_set(args.out, qs)
    return 0


def cmd_hausdorff(args) -> int:
    if args.max_level < 1:
        raise DesignatorError("--max-level must be at least 1")
    for n in range(1, args.max_level + 1):
        free = free_bit_count(n)
        total = (1 << n) - 1
        ratio = hausdorff_estimate(n)
        print(f"{n}\t{free}\t{total}\t{ratio}\t{float(ratio):.6f}")
    return 0


def cmd_sample(args) -> int:
    p = sample_closure_element(args.seed, args.depth)
    print(f"# seed={args.seed} depth={args.depth}")
    print(p.to_text(), end="")
    return 0


def cmd_bounded(args) -> int:
    g, automaton = parse_element(args.elem)
    profile = activity_profile(g, args.levels)
    print("profile: " + " ".join(str(c) for c in profile))
    if automaton is None:
        return 0
    bounded = is_bounded_automaton(automaton)
    print(f"bounded: {'yes' if bounded else 'no'}")
    return 0 if bounded else 1


def cmd_verify(args) -> int:
    report = verify_window_constraints(args.samples, args.max_len, args.seed)
    print(report.summary())
    for word in report.violations:
        print(f"violation: {word or '-'}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grigtree",
        description="Exact computation with binary-tree automorphisms and "
                    "the closure of the Grigorchuk group.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a generator word")
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decompose", help="section words of a generator word")
    p.add_argument("word")
    p.add_argument("--depth", type=int, default=None,
                   help="print raw section words for all vertices up to this depth")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("act", help="image of a vertex under an element")
    p.add_argument("elem")
    p.add_argument("vertex", help="0/1 string, '-' for the root")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("portrait", help="print a depth-d portrait")
    p.add_argument("elem")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("check-closure",
                       help="finite-depth closure membership verdict")
    p.add_argument("elem")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_check_closure)

    p = sub.add_parser("enumerate",
                       help="BFS the group modulo the level-n stabilizer")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out", help="write the portrait-key cache to this file")
    p.add_argument("--large", action="store_true",
                   help="allow the 4.2M-element level-5 enumeration")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hausdorff",
                       help="free-bit counts and dimension estimates per level")
    p.add_argument("--max-level", type=int, required=True)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("sample", help="sample a closure-element portrait")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bounded", help="activity profile and boundedness")
    p.add_argument("elem")
    p.add_argument("--levels", type=int, default=8)
    p.set_defaults(func=cmd_bounded)

    p = sub.add_parser("verify",
                       help="sample random words against the window constraints")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DesignatorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
