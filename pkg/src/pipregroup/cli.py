"""
Command-line front end.

Exit codes: 0 accepted/derivable/valid, 1 rejected/not derivable/invalid,
3 unknown within budget, 2 usage or parse errors.
"""

import argparse
import json
import sys
from pathlib import Path

from .core import WordSyntaxError, atoms_of, parse_word, render
from .engine import Budget, Calculus, Outcome, derive, m_con_marks, nullable, validate_trace
from .grammar import FIXTURES, GrammarError, check, fixture_path, load_grammar
from .poset import Poset, PosetError
from .rules import ALL_RULES, MIND_MODES, PRECYCLIC_MODES, RuleTag, StepError, successors

EXIT = {Outcome.DERIVABLE: 0, Outcome.NOT_DERIVABLE: 1, Outcome.UNKNOWN: 3}


class UsageError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pipregroup",
        description="Word problems and grammar checks in free pi-augmented pregroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-steps", type=_positive)
        p.add_argument("--max-visited", type=_positive)
        p.add_argument("--max-degree", type=_positive)
        p.add_argument("--max-len", type=_positive)

    def inline(p):
        p.add_argument("--atoms", help="space-separated atoms (instead of a grammar)")
        p.add_argument("--order", action="append", default=[], metavar="A->B",
                       help="declare A <= B; repeatable; A<->B declares both")
        p.add_argument("--precyclic", choices=PRECYCLIC_MODES)
        p.add_argument("--mind", choices=MIND_MODES)

    p = sub.add_parser("check", help="is a sentence accepted by a grammar?")
    p.add_argument("grammar", help="grammar file or bundled fixture name")
    p.add_argument("--sentence", required=True)
    common(p)

    p = sub.add_parser("derive", help="search a normal derivation X => Y")
    p.add_argument("grammar", nargs="?")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    common(p)
    inline(p)

    p = sub.add_parser("nullable", help="does a word reduce to 1?")
    p.add_argument("grammar", nargs="?")
    p.add_argument("--word", required=True)
    common(p)
    inline(p)

    p = sub.add_parser("validate-trace", help="re-check a JSON trace")
    p.add_argument("--file", required=True)
    p.add_argument("--grammar")
    p.add_argument("--format", choices=("text", "json"), default="text")
    inline(p)

    p = sub.add_parser("steps", help="list the one-step rewrites of a word")
    p.add_argument("grammar", nargs="?")
    p.add_argument("--word", required=True)
    p.add_argument("--families", nargs="+", metavar="RULE",
                   help="rule tags to enumerate (default: all); commas also separate")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-degree", type=_positive)
    p.add_argument("--max-len", type=_positive)
    inline(p)
    return parser


def _read_grammar(name):
    """A grammar file, or a bundled fixture when no such file exists."""
    path = Path(name)
    if path.is_file():
        return load_grammar(path.read_text(encoding="utf-8"))
    stem = path.name[:-3] if path.name.endswith(".pg") else path.name
    if stem in FIXTURES:
        return load_grammar(fixture_path(stem).read_text(encoding="utf-8"))
    raise UsageError(f"grammar file not found: {name}")


def _inline_poset(args, words):
    atoms = set(args.atoms.split()) if getattr(args, "atoms", None) else set()
    pairs = []
    for item in getattr(args, "order", []) or []:
        both = "<->" in item
        a, sep, b = item.partition("<->" if both else "->")
        a, b = a.strip(), b.strip()
        if not sep or not a or not b:
            raise UsageError(f"bad --order {item!r}; expected A->B or A<->B")
        pairs.append((a, b))
        if both:
            pairs.append((b, a))
    if not atoms:
        for w in words:
            atoms |= atoms_of(w)
        for a, b in pairs:
            atoms |= {a, b}
    return Poset(atoms, pairs)


def _calculus(args, words):
    grammar = getattr(args, "grammar", None)
    if grammar:
        g = _read_grammar(grammar)
        precyclic = args.precyclic or g.precyclic
        mind = args.mind or g.mind
        return Calculus(g.poset, precyclic, mind)
    poset = _inline_poset(args, words)
    return Calculus(poset, args.precyclic or "left", args.mind or "directed")


def _budget(args):
    fields = {}
    for name in ("max_steps", "max_visited", "max_degree", "max_len"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    return Budget(**fields)


def _check_atoms(calculus, words):
    for w in words:
        missing = sorted(atoms_of(w) - calculus.poset.atoms)
        if missing:
            raise UsageError(f"undeclared atom {missing[0]!r} in {render(w)!r}")


def format_trace(derivation, outcome, word=None):
    """Plain-text rendering of a search result; stable for golden files."""
    lines = [f"result: {outcome}"]
    if derivation is None:
        lines.append(f"input: {render(word)}")
        return "\n".join(lines) + "\n"
    lines.append(f"input: {render(derivation.initial)}")
    fused = m_con_marks(derivation)
    for i, (step, after) in enumerate(derivation.steps):
        mark = "  (m-CON)" if i in fused else ""
        lines.append(f"  {i + 1:>2}. {step.label()}{mark}")
        lines.append(f"      -> {render(after)}")
    lines.append(f"final: {render(derivation.final)}")
    lines.append(f"steps: {len(derivation)}")
    lines.append(f"normal: {'yes' if derivation.is_normal() else 'no'}")
    return "\n".join(lines) + "\n"


def _emit(args, data, text):
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_check(args):
    g = _read_grammar(args.grammar)
    verdict = check(g, args.sentence.split(), _budget(args))
    outcome = verdict.outcome
    if verdict.derivation is not None:
        data = verdict.derivation.to_json(outcome)
    else:
        data = {"input": render(verdict.typing), "result": str(outcome), "final": render(verdict.typing),
                "normal": True, "steps": []}
    text = f"sentence: {' '.join(args.sentence.split())}\n" + format_trace(verdict.derivation, outcome, verdict.typing)
    _emit(args, data, text)
    return EXIT[outcome]


def cmd_derive(args):
    x, y = parse_word(args.source), parse_word(args.target)
    calculus = _calculus(args, [x, y])
    _check_atoms(calculus, [x, y])
    result = derive(x, y, calculus, _budget(args))
    text = format_trace(result.derivation, result.outcome, x)
    if result.derivation is None:
        text += f"target: {render(y)}\nreason: {result.reason}\n"
    _emit(args, result.to_json(x), text)
    return EXIT[result.outcome]


def cmd_nullable(args):
    w = parse_word(args.word)
    calculus = _calculus(args, [w])
    _check_atoms(calculus, [w])
    result = nullable(w, calculus, _budget(args))
    text = format_trace(result.derivation, result.outcome, w)
    if result.derivation is None:
        text += f"reason: {result.reason}\n"
    _emit(args, result.to_json(w), text)
    return EXIT[result.outcome]


def cmd_validate(args):
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"trace file not found: {args.file}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"trace is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("trace must be a JSON object")
    words = []
    for key in ("input", "final"):
        try:
            words.append(parse_word(data.get(key, "1")))
        except WordSyntaxError:
            pass
    for step in data.get("steps") or []:
        try:
            words.append(parse_word(step.get("after", "1")))
        except (WordSyntaxError, AttributeError):
            pass
    calculus = _calculus(args, words)
    report = validate_trace(data, calculus)
    out = {"valid": report.valid, "normal": report.normal,
           "failed_index": report.failed_index, "message": report.message}
    text = f"valid: {'yes' if report.valid else 'no'}\nnormal: {'yes' if report.normal else 'no'}\n"
    if not report.valid:
        text += f"error: {report.message}\n"
    _emit(args, out, text)
    return 0 if report.valid else 1


def cmd_steps(args):
    w = parse_word(args.word)
    calculus = _calculus(args, [w])
    _check_atoms(calculus, [w])
    families = ALL_RULES
    if args.families:
        names = [n for chunk in args.families for n in chunk.split(",") if n]
        try:
            families = frozenset(RuleTag(n.upper()) for n in names)
        except ValueError:
            raise UsageError(f"unknown rule family in {names}; known: {', '.join(t.value for t in RuleTag)}") from None
    ctx = calculus.context([w], _budget(args))
    found = successors(w, families, ctx)
    data = [dict(step.to_json(), after=render(v)) for step, v in found]
    text = "".join(f"{step.label()}\n    -> {render(v)}\n" for step, v in found)
    text += f"{len(found)} step(s)\n"
    _emit(args, data, text)
    return 0


COMMANDS = {
    "check": cmd_check,
    "derive": cmd_derive,
    "nullable": cmd_nullable,
    "validate-trace": cmd_validate,
    "steps": cmd_steps,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GrammarError, WordSyntaxError, PosetError, StepError, ValueError) as exc:
        print(f"pipregroup: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
