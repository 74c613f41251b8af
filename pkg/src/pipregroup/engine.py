"""
Bounded decision procedures for derivability between words.

``reduce_to`` and ``nullable`` search forward with contraction and special
rules only.  ``derive`` searches normal derivations: contraction/special steps
forward from the source, expansion/special steps backward from the goal, and
stitches the two at a common word.  Every search is breadth-first with
successors in canonical step order, so results are shortest and
deterministic.

Each result is tri-state.  ``NOT_DERIVABLE`` means the space bounded by the
context clamps (degree, length, pi-nesting) was exhausted; ``UNKNOWN`` means
the step or visited budget ran out first.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from .core import atoms_of, contents_of, parse_word, render
from .poset import Poset, PosetError
from .rules import (
    CONTRACTION, CONTRACTION_RULES, EXPANSION, EXPANSION_RULES, SPECIAL_RULES,
    RuleContext, RuleTag, Step, StepError, apply_step, enumerate_predecessors,
    successors,
)

FORWARD_RULES = CONTRACTION_RULES | SPECIAL_RULES
BACKWARD_RULES = EXPANSION_RULES | SPECIAL_RULES


class Outcome(str, Enum):
    DERIVABLE = "derivable"
    NOT_DERIVABLE = "not_derivable"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Budget:
    """Search limits; unset clamps are derived from the input words."""

    max_steps: int = 64
    max_visited: int = 200_000
    max_degree: Optional[int] = None
    max_len: Optional[int] = None
    max_pi_depth: Optional[int] = None

    def __post_init__(self):
        for name in ("max_steps", "max_visited", "max_degree", "max_len"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Calculus:
    """The rule system over a poset, independent of any particular query."""

    poset: Poset
    precyclic: str = "left"
    mind: str = "directed"
    deep_pi: bool = False
    max_block: Optional[int] = 2
    mind_lift: bool = False

    def context(self, words, budget=None, slack=4):
        budget = budget or Budget()
        return RuleContext.for_words(
            self.poset, words, self.precyclic, self.mind,
            max_degree=budget.max_degree, max_len=budget.max_len,
            deep_pi=self.deep_pi, slack=slack, max_pi_depth=budget.max_pi_depth,
            max_block=self.max_block, mind_lift=self.mind_lift,
        )


def _context(calculus, words, budget):
    if isinstance(calculus, RuleContext):
        return calculus
    return calculus.context(words, budget)


@dataclass(frozen=True)
class Derivation:
    initial: tuple
    steps: Tuple[Tuple[Step, tuple], ...] = ()

    @property
    def final(self):
        return self.steps[-1][1] if self.steps else self.initial

    def __len__(self):
        return len(self.steps)

    def rules(self):
        return [step.rule for step, _ in self.steps]

    def count(self, rule):
        return sum(1 for step, _ in self.steps if step.rule == rule)

    def words(self):
        return [self.initial] + [w for _, w in self.steps]

    def is_normal(self):
        """No contraction-class step after any expansion-class step."""
        seen_expansion = False
        for step, _ in self.steps:
            if step.klass == EXPANSION:
                seen_expansion = True
            elif step.klass == CONTRACTION and seen_expansion:
                return False
        return True

    def then(self, other):
        if other.initial != self.final:
            raise ValueError("derivations do not compose")
        return Derivation(self.initial, self.steps + other.steps)

    def to_json(self, result=Outcome.DERIVABLE):
        return {
            "input": render(self.initial),
            "result": str(result),
            "final": render(self.final),
            "normal": self.is_normal(),
            "steps": [dict(step.to_json(), after=render(w)) for step, w in self.steps],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        initial = parse_word(data["input"])
        steps = tuple((Step.from_json(s), parse_word(s["after"])) for s in data.get("steps", ()))
        return cls(initial, steps)


def m_con_marks(derivation):
    """Indices of M_IND/contraction pairs that together form a mixed contraction."""
    marks = set()
    steps = derivation.steps
    for i in range(len(steps) - 1):
        first, second = steps[i][0], steps[i + 1][0]
        if (first.rule == RuleTag.M_IND and second.rule in (RuleTag.CON, RuleTag.PI_CON)
                and first.path == second.path == ()
                and second.position in (first.position - 1, first.position)):
            marks.update((i, i + 1))
    return marks


@dataclass
class SearchResult:
    outcome: Outcome
    derivation: Optional[Derivation] = None
    visited: int = 0
    reason: str = ""

    def __bool__(self):
        return self.outcome == Outcome.DERIVABLE

    def to_json(self, word):
        if self.derivation is not None:
            return self.derivation.to_json(self.outcome)
        return {
            "input": render(word),
            "result": str(self.outcome),
            "final": render(word),
            "normal": True,
            "steps": [],
        }


def _walk_back(parent, node):
    steps = []
    while parent[node] is not None:
        prev, step = parent[node]
        steps.append((step, node))
        node = prev
    steps.reverse()
    return node, tuple(steps)


def reduce_to(word, targets, calculus, budget=None):
    """Shortest contraction/special derivation from ``word`` into ``targets``."""
    return reduce_any([word], targets, calculus, budget)


class _Sweep:
    """One breadth-first search from a single start word, advanced level by level."""

    def __init__(self, word):
        self.parent = {word: None}
        self.frontier = [word]
        self.depth = 0
        self.outcome = None
        self.hit = None

    def advance(self, ctx, targets, budget):
        if self.depth >= budget.max_steps:
            self.outcome = Outcome.UNKNOWN
            return
        nxt = []
        for w in self.frontier:
            for step, v in successors(w, FORWARD_RULES, ctx):
                if v in self.parent:
                    continue
                self.parent[v] = (w, step)
                if v in targets:
                    self.hit = v
                    self.outcome = Outcome.DERIVABLE
                    return
                if len(self.parent) > budget.max_visited:
                    self.outcome = Outcome.UNKNOWN
                    return
                nxt.append(v)
        self.frontier = nxt
        self.depth += 1
        if not nxt:
            self.outcome = Outcome.NOT_DERIVABLE


def reduce_any(words, targets, calculus, budget=None):
    """Shortest contraction/special derivation from one of ``words`` into ``targets``.

    Each start word gets its own search and its own budget; the searches
    advance one level at a time in lockstep, so the first success is a
    shortest one, ties going to the earlier start word.  ``NOT_DERIVABLE``
    requires every search to exhaust its bounded space.
    """
    budget = budget or Budget()
    words = list(dict.fromkeys(words))
    targets = set(targets)
    if not targets:
        raise ValueError("targets must be non-empty")
    if not words:
        raise ValueError("no start word")
    ctx = _context(calculus, [*words, *targets], budget)
    for word in words:
        if word in targets:
            return SearchResult(Outcome.DERIVABLE, Derivation(word), 1, "input is a target")
    sweeps = [_Sweep(w) for w in words]
    while True:
        live = [s for s in sweeps if s.outcome is None]
        if not live:
            break
        for s in live:
            s.advance(ctx, targets, budget)
            if s.outcome == Outcome.DERIVABLE:
                initial, steps = _walk_back(s.parent, s.hit)
                return SearchResult(Outcome.DERIVABLE, Derivation(initial, steps),
                                    sum(len(t.parent) for t in sweeps), "target reached")
    visited = sum(len(s.parent) for s in sweeps)
    unknown = [s for s in sweeps if s.outcome == Outcome.UNKNOWN]
    if unknown:
        reason = "max_steps reached" if unknown[0].depth >= budget.max_steps else "max_visited reached"
        return SearchResult(Outcome.UNKNOWN, None, visited, reason)
    return SearchResult(Outcome.NOT_DERIVABLE, None, visited, "bounded space exhausted")


def nullable(word, calculus, budget=None):
    return reduce_to(word, [()], calculus, budget)


def closure(word, calculus, budget=None, rules=FORWARD_RULES):
    """All words reachable from ``word`` under ``rules`` within the clamps.

    Returns ``(words, complete)`` where ``complete`` is False if the visited
    budget was hit.
    """
    budget = budget or Budget()
    ctx = _context(calculus, [word], budget)
    seen = {word}
    frontier = [word]
    while frontier:
        nxt = []
        for w in frontier:
            for _, v in successors(w, rules, ctx):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) > budget.max_visited:
                        return seen, False
        frontier = nxt
    return seen, True


def _pending(delta):
    """Fewest steps covering a length change of ``2 * delta`` that include at
    least one step shrinking the word (contraction going forward, expansion
    going backward)."""
    return delta if delta >= 1 else 2 - delta


def derive(x, y, calculus, budget=None):
    """Shortest normal derivation of ``x => y`` within the clamps.

    Bidirectional breadth-first search: contraction/special steps forward from
    ``x``, expansion/special steps backward from ``y``.  Once a meet of length
    ``best`` is known, a shorter normal derivation could only be missed if its
    last contraction lies beyond the forward frontier or its first expansion
    before the backward one; the search stops when length bounds rule both out
    and the two horizons together span ``best - 1`` steps.
    """
    budget = budget or Budget()
    ctx = _context(calculus, [x, y], budget)
    if x == y:
        return SearchResult(Outcome.DERIVABLE, Derivation(x), 1, "identical words")
    if (len(x) - len(y)) % 2:
        # every step keeps the top-level length or changes it by two
        return SearchResult(Outcome.NOT_DERIVABLE, None, 0, "length parity differs")
    fpar, bpar = {x: None}, {y: None}
    fdist, bdist = {x: 0}, {y: 0}
    ffront, bfront = [x], [y]
    fdepth = bdepth = 0
    best = None
    meets = []
    exhausted = False
    while True:
        if best is not None:
            bound = best - 1
            ffront = [w for w in ffront if fdepth + abs(len(w) - len(y)) // 2 <= bound]
            bfront = [w for w in bfront if bdepth + abs(len(w) - len(x)) // 2 <= bound]
            f_done = all(fdepth + _pending((len(w) - len(y)) // 2) > bound for w in ffront)
            b_done = all(bdepth + _pending((len(w) - len(x)) // 2) > bound for w in bfront)
            span = (fdepth if ffront else bound) + (bdepth if bfront else bound)
            if f_done and b_done and span >= bound:
                break
            if span >= bound:
                f_open, b_open = not f_done, not b_done
            else:
                f_open, b_open = bool(ffront), bool(bfront)
        else:
            f_open, b_open = bool(ffront), bool(bfront)
        if not (f_open or b_open):
            break
        forward = f_open and (not b_open or len(ffront) <= len(bfront))
        depth = fdepth if forward else bdepth
        if depth >= budget.max_steps:
            return SearchResult(Outcome.UNKNOWN, None, len(fdist) + len(bdist), "max_steps reached")
        nxt = []
        if forward:
            for w in ffront:
                for step, v in successors(w, FORWARD_RULES, ctx):
                    if v in fdist:
                        continue
                    fdist[v] = fdepth + 1
                    fpar[v] = (w, step)
                    nxt.append(v)
                    if v in bdist:
                        meets.append((fdepth + 1 + bdist[v], v))
            ffront, fdepth = nxt, fdepth + 1
        else:
            for w in bfront:
                for v, step in enumerate_predecessors(w, BACKWARD_RULES, ctx):
                    if v in bdist:
                        continue
                    bdist[v] = bdepth + 1
                    bpar[v] = (w, step)
                    nxt.append(v)
                    if v in fdist:
                        meets.append((bdepth + 1 + fdist[v], v))
            bfront, bdepth = nxt, bdepth + 1
        if meets:
            best = min(length for length, _ in meets)
        if len(fdist) + len(bdist) > budget.max_visited:
            if best is None:
                return SearchResult(Outcome.UNKNOWN, None, len(fdist) + len(bdist), "max_visited reached")
            exhausted = True
            break
    visited = len(fdist) + len(bdist)
    if best is None:
        return SearchResult(Outcome.NOT_DERIVABLE, None, visited, "bounded space exhausted")
    candidates = []
    for length, meet in meets:
        if length != best:
            continue
        _, head = _walk_back(fpar, meet)
        tail = []
        node = meet
        while bpar[node] is not None:
            nxt_word, step = bpar[node]
            tail.append((step, nxt_word))
            node = nxt_word
        steps = head + tuple(tail)
        candidates.append((tuple(s.key() for s, _ in steps), steps))
    _, steps = min(candidates, key=lambda c: c[0])
    reason = "meet found, shorter ones not excluded (max_visited)" if exhausted else "meet found"
    return SearchResult(Outcome.DERIVABLE, Derivation(x, steps), visited, reason)


@dataclass
class ValidationReport:
    valid: bool
    normal: bool
    failed_index: Optional[int] = None
    message: str = ""
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


def validate(derivation, calculus):
    """Re-check every step of a derivation from scratch.

    Step ``i`` must be licensed on the word before it, under a context whose
    alphabets and clamps cover the whole trace, and must produce exactly the
    recorded word.
    """
    normal = derivation.is_normal()
    words = derivation.words()
    poset = calculus.poset
    for w in words:
        missing = atoms_of(w) - set(poset.atoms)
        if missing:
            return ValidationReport(False, normal, None, f"undeclared atoms {sorted(missing)}")
    # clamps must cover nested levels too, not only the top-level words
    levels = words + sorted({c for w in words for c in contents_of(w)}, key=render)
    if isinstance(calculus, RuleContext):
        ctx = calculus.widened(levels)
    else:
        ctx = calculus.context(levels, Budget(), slack=1)
    prev = derivation.initial
    for i, (step, after) in enumerate(derivation.steps):
        try:
            got = apply_step(prev, step, ctx)
        except (StepError, PosetError) as exc:
            return ValidationReport(False, normal, i, f"step {i + 1}: {exc}")
        if got != after:
            return ValidationReport(
                False, normal, i,
                f"step {i + 1}: {step.label()} gives {render(got)!r}, trace says {render(after)!r}",
            )
        prev = after
    return ValidationReport(True, normal)


def validate_trace(data, calculus):
    """Validate a JSON trace, including its summary fields.

    Beyond ``validate``, the recorded ``final``, ``normal`` and ``result``
    must agree with what the steps actually show.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        derivation = Derivation.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        return ValidationReport(False, False, None, f"malformed trace: {exc}")
    report = validate(derivation, calculus)
    if not report.valid:
        return report
    checks = [
        ("result", str(Outcome.DERIVABLE), data.get("result")),
        ("normal", report.normal, data.get("normal")),
    ]
    for name, actual, claimed in checks:
        if claimed != actual:
            return ValidationReport(False, report.normal, None, f"trace claims {name} {claimed!r}, steps show {actual!r}")
    try:
        final = parse_word(data.get("final", ""))
    except ValueError:
        return ValidationReport(False, report.normal, None, f"malformed final {data.get('final')!r}")
    if final != derivation.final:
        return ValidationReport(False, report.normal, None,
                                f"trace claims final {data.get('final')!r}, steps end at {render(derivation.final)!r}")
    return report
