"""Command-line surface.

Exit codes: 0 success (including Consistent verdicts and either
connectivity verdict), 2 input rejected, 3 no word-problem engine /
underdetermined classification, 4 a declaration was refuted, 10 a
NotKahler verdict, 11 a Contradiction verdict.  Identical inputs and
options produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from .abelianization import abelianization
from .cayley import build_ball, chi_subgraph, connectivity_evidence, export_graph
from .errors import (
    BnsError,
    DeclarationMismatch,
    InputRejected,
    NoOracleError,
)
from .formats import (
    load_character,
    load_decomposition,
    load_facts,
    load_presentation,
    write_decomposition,
    write_facts,
)
from .hnn import (
    associated_character,
    bs_valuation,
    certified_facts,
    check_valuation_axioms,
    classify,
    detect_bs_standard,
    stable_letter_inverse,
)
from .inference import FactStore, VerdictKind, render_proof, run_inference
from .oracles import all_reduced_words
from .presentation import GroupFlags, TriState, canonical_ray, ray_from_ints

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_ORACLE = 3
EXIT_MISMATCH = 4
EXIT_NOT_KAHLER = 10
EXIT_CONTRADICTION = 11


def _out(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_betti(args) -> int:
    presentation, _ = load_presentation(args.presentation)
    data = abelianization(presentation)
    print(f"b1 = {data.betti_number}")
    print(f"torsion = {list(data.torsion_invariants)}")
    return EXIT_OK


def cmd_chi_validate(args) -> int:
    presentation, _ = load_presentation(args.presentation)
    character = load_character(args.character, presentation)
    for symbol, value in zip(presentation.generators, character.values):
        print(f"{symbol} = {value}")
    print("character = valid homomorphism")
    print(f"ray = {canonical_ray(character)}")
    return EXIT_OK


def cmd_sigma_ball(args) -> int:
    presentation, oracle = load_presentation(args.presentation)
    if oracle is None:
        raise NoOracleError(
            "no word-problem engine: the presentation declares family = \"none\""
        )
    character = load_character(args.character, presentation)
    ball = build_ball(oracle, presentation, args.radius,
                      vertex_budget=args.budget)
    subgraph = chi_subgraph(ball, character)
    report = connectivity_evidence(subgraph, margin=args.margin,
                                   witnesses_per_component=args.witnesses)
    print(report.render(presentation))
    return EXIT_OK


def cmd_export(args) -> int:
    presentation, oracle = load_presentation(args.presentation)
    if oracle is None:
        raise NoOracleError(
            "no word-problem engine: the presentation declares family = \"none\""
        )
    character = load_character(args.character, presentation)
    ball = build_ball(oracle, presentation, args.radius,
                      vertex_budget=args.budget)
    subgraph = chi_subgraph(ball, character)
    _out(args, export_graph(subgraph, args.format,
                            include_dropped=args.include_dropped))
    return EXIT_OK


def cmd_hnn_classify(args) -> int:
    decomposition = load_decomposition(args.decomposition)
    cls = classify(decomposition, depth=args.search_depth,
                   budget=args.search_budget)
    print(f"classification = {cls.value}")
    print(f"stable_element = {decomposition.stable_element_text}")
    chi = associated_character(decomposition)
    print(f"associated_ray = {canonical_ray(chi)}")
    return EXIT_OK


def cmd_hnn_invert(args) -> int:
    decomposition = load_decomposition(args.decomposition)
    inverse = stable_letter_inverse(decomposition)
    _out(args, write_decomposition(inverse))
    return EXIT_OK


def cmd_hnn_criterion(args) -> int:
    decomposition = load_decomposition(args.decomposition)
    facts, notes = certified_facts(decomposition, depth=args.search_depth,
                                   budget=args.search_budget,
                                   include_valuation=False)
    for note in notes:
        print(f"note: {note}")
    for fact in facts:
        print(f"fact: {fact.describe()}")
        print(f"  because: {fact.provenance}")
    if args.facts_out:
        with open(args.facts_out, "w", encoding="utf-8") as handle:
            handle.write(write_facts(facts))
    return EXIT_OK


def cmd_hnn_valuation_check(args) -> int:
    decomposition = load_decomposition(args.decomposition)
    detected = detect_bs_standard(decomposition)
    if detected is None:
        raise NoOracleError(
            "no built-in valuation matches this decomposition shape; only "
            "the standard BS(1,n) readings are supported"
        )
    n, scale_sign = detected
    valuation = bs_valuation(
        n, scale_sign=scale_sign,
        symbols=(decomposition.base.generators[0], decomposition.stable_letter),
    )
    sample = list(all_reduced_words(2, args.depth))
    report = check_valuation_axioms(valuation, sample,
                                    pair_budget=args.budget,
                                    witness_depth=args.witness_depth,
                                    seed=args.seed)
    print(f"relative_ray = {canonical_ray(valuation.relative_character)}")
    print(f"report = {report.summary()}")
    trace = ", ".join(str(v) for v in report.witness_trace)
    print(f"witness_trace = [{trace}]")
    return EXIT_OK


_FLAG_OPTIONS = (
    ("no_free_subgroups", "no_nonabelian_free_subgroups"),
    ("amenable", "amenable"),
    ("claimed_kahler", "claimed_kahler"),
    ("commutator_fg", "commutator_fg"),
)


def _merge_flags(base: GroupFlags, args) -> GroupFlags:
    values = {field: getattr(base, field) for _, field in _FLAG_OPTIONS}
    for option, field in _FLAG_OPTIONS:
        raw = getattr(args, option)
        if raw is not None:
            values[field] = TriState.parse(raw)
    return GroupFlags(**values)


def cmd_kahler_verdict(args) -> int:
    store = FactStore()
    flags = GroupFlags()
    if args.decomposition:
        decomposition = load_decomposition(args.decomposition)
        facts, notes = certified_facts(decomposition, depth=args.search_depth,
                                       budget=args.search_budget)
        for note in notes:
            print(f"note: {note}")
        store = store.with_facts(facts)
        flags = decomposition.ambient_flags
    if args.facts:
        store = store.with_facts(load_facts(args.facts))
    flags = _merge_flags(flags, args)
    for fact in store.facts:
        print(f"fact: {fact.describe()}")
    queried = []
    if args.query:
        for text in args.query:
            values = tuple(int(x) for x in text.strip("() ").split(","))
            queried.append(ray_from_ints(values))
    verdicts = run_inference(store, flags, queried_rays=queried)
    for verdict in verdicts:
        print(render_proof(verdict))
    kinds = {v.kind for v in verdicts}
    if VerdictKind.CONTRADICTION in kinds:
        return EXIT_CONTRADICTION
    if VerdictKind.NOT_KAHLER in kinds:
        return EXIT_NOT_KAHLER
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnskit",
        description="Exact computation and certification around the BNS "
                    "invariant of finitely presented groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="first Betti number and torsion")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_betti)

    chi = sub.add_parser("chi", help="character utilities")
    chi_sub = chi.add_subparsers(dest="subcommand", required=True)
    p = chi_sub.add_parser("validate", help="validate a character file")
    p.add_argument("presentation")
    p.add_argument("character")
    p.set_defaults(func=cmd_chi_validate)

    sigma = sub.add_parser("sigma", help="character-sphere experiments")
    sigma_sub = sigma.add_subparsers(dest="subcommand", required=True)
    p = sigma_sub.add_parser("ball", help="finite Cayley-ball connectivity evidence")
    p.add_argument("presentation")
    p.add_argument("character")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--margin", type=int, default=1)
    p.add_argument("--budget", type=int, default=10 ** 6,
                   help="vertex budget for the ball")
    p.add_argument("--witnesses", type=int, default=2,
                   help="witness paths per component")
    p.set_defaults(func=cmd_sigma_ball)

    hnn = sub.add_parser("hnn", help="HNN decomposition operations")
    hnn_sub = hnn.add_subparsers(dest="subcommand", required=True)
    for name, func in (("classify", cmd_hnn_classify),
                       ("invert", cmd_hnn_invert),
                       ("criterion", cmd_hnn_criterion),
                       ("valuation-check", cmd_hnn_valuation_check)):
        p = hnn_sub.add_parser(name)
        p.add_argument("decomposition")
        p.add_argument("--search-depth", type=int, default=10,
                       help="bounded subgroup search depth")
        p.add_argument("--search-budget", type=int, default=5000,
                       help="bounded subgroup search size cap")
        if name == "invert":
            p.add_argument("-o", "--output")
        if name == "criterion":
            p.add_argument("--facts-out")
        if name == "valuation-check":
            p.add_argument("--depth", type=int, default=5,
                           help="exhaustive sample word length")
            p.add_argument("--budget", type=int, default=20000,
                           help="axiom-(b) pair budget")
            p.add_argument("--witness-depth", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)

    kahler = sub.add_parser("kahler", help="Kahler-group obstruction verdicts")
    kahler_sub = kahler.add_subparsers(dest="subcommand", required=True)
    p = kahler_sub.add_parser("verdict")
    p.add_argument("--decomposition")
    p.add_argument("--facts")
    p.add_argument("--search-depth", type=int, default=10)
    p.add_argument("--search-budget", type=int, default=5000)
    p.add_argument("--query", action="append",
                   help="ray (p, q, ...) to resolve under rule R3")
    for option, _ in _FLAG_OPTIONS:
        p.add_argument(f"--{option.replace('_', '-')}", dest=option,
                       choices=["true", "false", "unknown"], default=None)
    p.set_defaults(func=cmd_kahler_verdict)

    p = sub.add_parser("export", help="export the chi-nonnegative subgraph")
    p.add_argument("presentation")
    p.add_argument("character")
    p.add_argument("--format", choices=["dot", "svg"], default="dot")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--include-dropped", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputRejected as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoOracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ORACLE
    except DeclarationMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except BnsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
