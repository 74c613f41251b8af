"""
Pregroup grammars: a poset, a lexicon of typed tokens and sentence targets.

Grammar files are line oriented::

    # comment
    atoms: n s
    order: n -> p
    equiv: o <-> obar
    precyclic: left
    mind: directed
    target: s ; pi(s)
    lex "cats": n
    lex "eat": n^r s n^l | pi(n)^r pi(s) pi(n)^l

A sentence is accepted when some choice of lexical types, concatenated,
reduces to a target without expansion steps.
"""

import re
from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Optional

from .core import WordSyntaxError, atoms_of, parse_word, render
from .engine import Calculus, Derivation, Outcome, reduce_any
from .poset import Poset
from .rules import MIND_MODES, PRECYCLIC_MODES


class GrammarError(ValueError):
    """A malformed grammar file or an untypable sentence."""

    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class Grammar:
    poset: Poset
    lexicon: dict
    targets: tuple
    precyclic: str = "left"
    mind: str = "directed"

    def __post_init__(self):
        if not self.targets:
            raise GrammarError("no target declared")
        if self.precyclic not in PRECYCLIC_MODES:
            raise GrammarError(f"precyclic must be one of {', '.join(PRECYCLIC_MODES)}")
        if self.mind not in MIND_MODES:
            raise GrammarError(f"mind must be one of {', '.join(MIND_MODES)}")
        for token, words in self.lexicon.items():
            if not token or not words:
                raise GrammarError(f"empty lexicon entry {token!r}")
            for w in words:
                self._check_atoms(w, f"lexicon entry {token!r}")
        for w in self.targets:
            self._check_atoms(w, "target")

    def _check_atoms(self, word, where):
        missing = sorted(atoms_of(word) - self.poset.atoms)
        if missing:
            raise GrammarError(f"undeclared atom {missing[0]!r} in {where}")

    @property
    def calculus(self):
        return Calculus(self.poset, self.precyclic, self.mind)

    def dumps(self):
        """Serialize to the grammar file format; ``load_grammar`` inverts it."""
        lines = ["atoms: " + " ".join(sorted(self.poset.atoms))]
        for a, b in sorted(self.poset.declared):
            lines.append(f"order: {a} -> {b}")
        lines.append(f"precyclic: {self.precyclic}")
        lines.append(f"mind: {self.mind}")
        lines.append("target: " + " ; ".join(render(w) for w in self.targets))
        for token, words in self.lexicon.items():
            lines.append(f'lex "{token}": ' + " | ".join(render(w) for w in words))
        return "\n".join(lines) + "\n"


@dataclass
class Verdict:
    """``accepted`` is True, False, or None when the budget ran out first."""

    accepted: Optional[bool]
    typing: tuple
    derivation: Optional[Derivation] = None
    outcome: Outcome = Outcome.NOT_DERIVABLE


_LEX = re.compile(r'^lex\s+"([^"]+)"\s*:\s*(.*)$')
_ORDER = re.compile(r"^(\S+)\s*(->|<->)\s*(\S+)$")


def _word(text, lineno):
    try:
        return parse_word(text.strip())
    except WordSyntaxError as exc:
        raise GrammarError(str(exc), lineno) from None


def load_grammar(text):
    """Parse and validate a grammar file."""
    atoms = {}
    order = []
    targets = []
    lexicon = {}
    settings = {}
    uses = []  # (word, lineno) checked once all atoms are known
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LEX.match(line)
        if m:
            token = " ".join(m.group(1).split())
            alternatives = m.group(2).split("|")
            if not token:
                raise GrammarError("empty token", lineno)
            entry = lexicon.setdefault(token, [])
            for alt in alternatives:
                if not alt.strip():
                    raise GrammarError(f"empty type for {token!r}", lineno)
                w = _word(alt, lineno)
                uses.append((w, lineno))
                if w not in entry:
                    entry.append(w)
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            raise GrammarError(f"malformed line {raw.strip()!r}", lineno)
        if key == "atoms":
            if not value:
                raise GrammarError("empty atoms line", lineno)
            for a in value.split():
                if a in atoms:
                    raise GrammarError(f"duplicate atom declaration {a!r}", lineno)
                try:
                    Poset([a])
                except ValueError as exc:
                    raise GrammarError(str(exc), lineno) from None
                atoms[a] = lineno
        elif key in ("order", "equiv"):
            m = _ORDER.match(value)
            if not m or (m.group(2) == "<->") != (key == "equiv"):
                arrow = "<->" if key == "equiv" else "->"
                raise GrammarError(f"expected '{key}: a {arrow} b'", lineno)
            a, _, b = m.groups()
            order.append((a, b, lineno))
            if key == "equiv":
                order.append((b, a, lineno))
        elif key == "target":
            for part in value.split(";"):
                if not part.strip():
                    raise GrammarError("empty target", lineno)
                w = _word(part, lineno)
                uses.append((w, lineno))
                targets.append(w)
        elif key in ("precyclic", "mind"):
            allowed = PRECYCLIC_MODES if key == "precyclic" else MIND_MODES
            if value not in allowed:
                raise GrammarError(f"{key} must be one of {', '.join(allowed)}", lineno)
            settings[key] = value
        else:
            raise GrammarError(f"unknown directive {key!r}", lineno)
    for a, b, lineno in order:
        for x in (a, b):
            if x not in atoms:
                raise GrammarError(f"undeclared atom {x!r}", lineno)
    for w, lineno in uses:
        missing = sorted(atoms_of(w) - set(atoms))
        if missing:
            raise GrammarError(f"undeclared atom {missing[0]!r}", lineno)
    if not targets:
        raise GrammarError("no target declared")
    poset = Poset(atoms, [(a, b) for a, b, _ in order])
    unique_targets = tuple(dict.fromkeys(targets))
    return Grammar(
        poset,
        {token: tuple(words) for token, words in lexicon.items()},
        unique_targets,
        settings.get("precyclic", "left"),
        settings.get("mind", "directed"),
    )


FIXTURES = ("english", "french", "italian", "farsi", "base")


def fixture_path(name):
    return resources.files("pipregroup") / "grammars" / f"{name}.pg"


def load_fixture(name):
    """Load one of the bundled grammars by name (e.g. ``"italian"``)."""
    if name not in FIXTURES:
        raise GrammarError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return load_grammar(fixture_path(name).read_text(encoding="utf-8"))


def segment(g, tokens):
    """Group tokens into lexicon keys, longest match first."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    longest = max((len(k.split()) for k in g.lexicon), default=1)
    keys, unknown = [], []
    i = 0
    while i < len(tokens):
        for j in range(min(len(tokens), i + longest), i, -1):
            key = " ".join(tokens[i:j])
            if key in g.lexicon:
                keys.append(key)
                i = j
                break
        else:
            unknown.append(tokens[i])
            i += 1
    if unknown:
        raise GrammarError("unknown token(s): " + ", ".join(repr(t) for t in unknown))
    return keys


def type_sentence(g, tokens):
    """Every concatenation of per-token types, deduplicated, in lexicon order."""
    keys = segment(g, tokens)
    typings = (sum(choice, ()) for choice in product(*(g.lexicon[k] for k in keys)))
    return tuple(dict.fromkeys(typings))


def check(g, tokens, budget=None):
    """Accept if some typing reduces to a target.

    All typings are searched together, so the derivation returned is a
    shortest one over every typing.  Rejection means every typing's bounded
    space was exhausted; ``accepted`` is None if the budget ran out first.
    """
    typings = type_sentence(g, tokens)
    result = reduce_any(typings, g.targets, g.calculus, budget)
    if result:
        return Verdict(True, result.derivation.initial, result.derivation, result.outcome)
    return Verdict(None if result.outcome == Outcome.UNKNOWN else False, typings[0], None, result.outcome)
