"""
One-step rewriting for free pi-augmented pregroups.

Every rewrite is a *primitive move* applied at one nesting level of a word:
deleting or inserting an adjacent pair, substituting an atom, decorating or
undecorating a term, or moving adjacent blocks of decorated terms.  Moving
into ``[pi(W)]^(d)`` with ``d`` odd flips the level's polarity, and at a
negative level only the inverses of the primitive moves are licensed.  The
tag of a nested step (``IND_C``, ``IND_E``, ``PI_IND``) is the class of the
move that actually happens, after inversion.

Steps address the level by ``path`` (indices of the decorated terms descended
into) and the place by ``position``.  Nested steps carry the primitive move
name under the ``op`` payload key, e.g. ``{"op": "EXP^-1"}`` for a deleted
descending pair inside an odd-degree wrapper.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from .core import Pi, Simple, atoms_of, contents_of, iterate_adjoint, max_abs_degree, pi_depth, render, render_term
from .poset import Poset

CONTRACTION = "contraction"
EXPANSION = "expansion"
SPECIAL = "special"


class RuleTag(str, Enum):
    CON = "CON"
    PI_CON = "PI_CON"
    IND_C = "IND_C"
    EXP = "EXP"
    PI_EXP = "PI_EXP"
    IND_E = "IND_E"
    IND = "IND"
    PI_IND = "PI_IND"
    M_IND = "M_IND"
    PRE = "PRE"
    R_PRE = "R_PRE"

    def __str__(self):
        return self.value

    @property
    def klass(self):
        return _TAG_CLASS[self]


_TAG_ORDER = {tag: i for i, tag in enumerate(RuleTag)}
_TAG_CLASS = {
    RuleTag.CON: CONTRACTION, RuleTag.PI_CON: CONTRACTION, RuleTag.IND_C: CONTRACTION,
    RuleTag.EXP: EXPANSION, RuleTag.PI_EXP: EXPANSION, RuleTag.IND_E: EXPANSION,
    RuleTag.IND: SPECIAL, RuleTag.PI_IND: SPECIAL, RuleTag.M_IND: SPECIAL,
    RuleTag.PRE: SPECIAL, RuleTag.R_PRE: SPECIAL,
}
_NESTED_TAG = {CONTRACTION: RuleTag.IND_C, EXPANSION: RuleTag.IND_E, SPECIAL: RuleTag.PI_IND}

ALL_RULES = frozenset(RuleTag)
CONTRACTION_RULES = frozenset(t for t in RuleTag if t.klass == CONTRACTION)
EXPANSION_RULES = frozenset(t for t in RuleTag if t.klass == EXPANSION)
SPECIAL_RULES = frozenset(t for t in RuleTag if t.klass == SPECIAL)

PRECYCLIC_MODES = ("left", "right", "both", "none")
MIND_MODES = ("directed", "symmetric")

# canonical payload key order; JSON payloads are re-keyed in this order
PAYLOAD_KEYS = ("op", "atom", "content", "degree", "from", "to", "run", "a", "b")

_BASE_CLASS = {
    "CON": CONTRACTION, "PI_CON": CONTRACTION,
    "EXP": EXPANSION, "PI_EXP": EXPANSION,
    "IND": SPECIAL, "M_IND": SPECIAL, "PRE": SPECIAL, "R_PRE": SPECIAL,
}
_SWAP = {CONTRACTION: EXPANSION, EXPANSION: CONTRACTION, SPECIAL: SPECIAL}


def move_class(kind):
    """Class of a primitive move name such as ``"CON"`` or ``"EXP^-1"``."""
    if kind.endswith("^-1"):
        return _SWAP[_BASE_CLASS[kind[:-3]]]
    return _BASE_CLASS[kind]


def inverse_move(kind):
    return kind[:-3] if kind.endswith("^-1") else kind + "^-1"


class StepError(ValueError):
    """A step does not apply to the word it was given."""


@dataclass(frozen=True)
class Step:
    rule: RuleTag
    path: Tuple[int, ...] = ()
    position: int = 0
    payload: Tuple[Tuple[str, object], ...] = ()

    def key(self):
        return (_TAG_ORDER[self.rule], self.path, self.position, self.payload)

    def __lt__(self, other):
        return self.key() < other.key()

    @property
    def klass(self):
        return self.rule.klass

    def payload_dict(self):
        return dict(self.payload)

    def to_json(self):
        return {
            "rule": self.rule.value,
            "path": list(self.path),
            "position": self.position,
            "payload": self.payload_dict(),
        }

    @classmethod
    def from_json(cls, data):
        payload = data.get("payload") or {}
        unknown = set(payload) - set(PAYLOAD_KEYS)
        if unknown:
            raise ValueError(f"unknown payload keys {sorted(unknown)}")
        return cls(
            RuleTag(data["rule"]),
            tuple(int(i) for i in data.get("path", ())),
            int(data["position"]),
            tuple((k, payload[k]) for k in PAYLOAD_KEYS if k in payload),
        )

    def label(self):
        parts = [self.rule.value]
        if self.path:
            parts.append("in " + ".".join(str(i) for i in self.path))
        parts.append(f"@{self.position}")
        if self.payload:
            parts.append(" ".join(f"{k}={v}" for k, v in self.payload))
        return " ".join(parts)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class RuleContext:
    """Everything the rewrite relation depends on besides the word itself.

    ``atoms`` and ``contents`` are the alphabets for inserted material;
    ``max_degree`` clamps the degree of any inserted or shifted term,
    ``max_len`` clamps the length of any level after an insertion and
    ``max_pi_depth`` clamps pi-nesting created by decoration or insertion.

    ``max_block`` bounds each block moved by PRE/R_PRE (None: unbounded).
    With ``mind_lift`` off, M_IND keeps the atom (``p <-> pi(p)``); with it on,
    it may also move along the order (``p -> pi(q)`` for ``p <= q``), which
    shortens some derivations without changing derivability.
    """

    poset: Poset
    precyclic: str = "left"
    mind: str = "directed"
    atoms: Tuple[str, ...] = ()
    contents: tuple = ()
    max_degree: int = 6
    max_len: int = 12
    deep_pi: bool = False
    max_pi_depth: int = 1
    max_block: Optional[int] = 2
    mind_lift: bool = False
    _kinds: dict = field(default=None, compare=False, repr=False)
    _memo: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.precyclic not in PRECYCLIC_MODES:
            raise ValueError(f"precyclic must be one of {PRECYCLIC_MODES}")
        if self.mind not in MIND_MODES:
            raise ValueError(f"mind must be one of {MIND_MODES}")
        if self.max_degree < 1 or self.max_len < 1 or self.max_pi_depth < 0 or \
                (self.max_block is not None and self.max_block < 1):
            raise ValueError("bounds must be positive")
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))
        object.__setattr__(self, "contents", tuple(sorted(set(self.contents), key=render)))
        forward = ["CON", "PI_CON", "EXP", "PI_EXP", "IND", "M_IND"]
        if self.precyclic in ("left", "both"):
            forward.append("PRE")
        if self.precyclic in ("right", "both"):
            forward.append("R_PRE")
        object.__setattr__(self, "_kinds", {1: tuple(forward), -1: tuple(k + "^-1" for k in forward)})
        object.__setattr__(self, "_memo", {})

    @classmethod
    def for_words(cls, poset, words, precyclic="left", mind="directed",
                  max_degree=None, max_len=None, deep_pi=False, slack=4, max_pi_depth=None,
                  max_block=2, mind_lift=False):
        """Context whose alphabets and bounds cover ``words``.

        Insertable atoms are the poset's atoms; insertable contents are every
        single atom plus every pi-content occurring in ``words``.
        """
        words = list(words)
        contents = {(Simple(a, 0),) for a in poset.atoms}
        for w in words:
            contents |= contents_of(w)
        if max_degree is None:
            max_degree = max((max_abs_degree(w) for w in words), default=0) + slack
        if max_len is None:
            max_len = max((len(w) for w in words), default=0) + slack
        if max_pi_depth is None:
            max_pi_depth = max([1] + [pi_depth(w) for w in words])
        return cls(poset, precyclic, mind, tuple(poset.atoms), tuple(contents),
                   max(1, max_degree), max(1, max_len), deep_pi, max_pi_depth, max_block, mind_lift)

    def widened(self, words):
        """A copy whose alphabets and bounds also cover ``words``."""
        words = list(words)
        atoms = set(self.atoms)
        contents = set(self.contents)
        for w in words:
            atoms |= atoms_of(w)
            contents |= contents_of(w)
        return RuleContext(
            self.poset, self.precyclic, self.mind, tuple(atoms), tuple(contents),
            max(self.max_degree, max((max_abs_degree(w) for w in words), default=0)),
            max(self.max_len, max((len(w) for w in words), default=0)),
            self.deep_pi,
            max(self.max_pi_depth, max((pi_depth(w) for w in words), default=0)),
            self.max_block,
            self.mind_lift,
        )

    def level_kinds(self, polarity):
        return self._kinds[polarity]


def _up(poset, degree, x, y):
    """Is replacing ``x`` by ``y`` covariant-licensed at this degree?"""
    return poset.leq(x, y) if degree % 2 == 0 else poset.leq(y, x)


def _targets(poset, x, degree, inverse):
    if (degree % 2 == 0) != inverse:
        return poset.above(x)
    return poset.below(x)


def _in_bounds(terms, bound):
    return all(abs(t.degree) <= bound and (isinstance(t, Simple) or _in_bounds(t.content, bound))
               for t in terms)


def _positions(n, at):
    if at is None:
        return range(n)
    return (at,) if 0 <= at < n else ()


def _delete_pairs(ws, kind, ctx, at, depth):
    simple = kind in ("CON", "EXP^-1")
    ascending = kind in ("CON", "PI_CON")
    for i in _positions(len(ws) - 1, at):
        a, b = ws[i], ws[i + 1]
        if simple:
            if not (type(a) is Simple and type(b) is Simple and a.atom == b.atom):
                continue
        elif not (type(a) is Pi and type(b) is Pi and a.content == b.content):
            continue
        if (b.degree == a.degree + 1) if ascending else (a.degree == b.degree + 1):
            yield i, (), ws[:i] + ws[i + 2:]


def _insert_pairs(ws, kind, ctx, at, depth):
    if len(ws) + 2 > ctx.max_len:
        return
    base = kind.split("^")[0]
    descending = base in ("EXP", "PI_EXP")
    if base in ("EXP", "CON"):
        material = [(("atom", a), Simple(a, 0)) for a in ctx.atoms]
    else:
        room = ctx.max_pi_depth - depth - 1
        material = [(("content", render(c)), Pi(c, 0)) for c in ctx.contents if pi_depth(c) <= room]
    bound = ctx.max_degree
    for i in _positions(len(ws) + 1, at):
        for label, t in material:
            for n in range(-bound, bound):
                lo, hi = t._replace(degree=n), t._replace(degree=n + 1)
                pair = (hi, lo) if descending else (lo, hi)
                yield i, (label, ("degree", n)), ws[:i] + pair + ws[i:]


def _substitutions(ws, kind, ctx, at, depth):
    inverse = kind.endswith("^-1")
    for i in _positions(len(ws), at):
        t = ws[i]
        if type(t) is not Simple:
            continue
        for b in _targets(ctx.poset, t.atom, t.degree, inverse):
            yield i, (("from", t.atom), ("to", b)), ws[:i] + (Simple(b, t.degree),) + ws[i + 1:]


def _decorations(ws, kind, ctx, at, depth):
    inverse = kind.endswith("^-1")
    symmetric = ctx.mind == "symmetric"
    poset = ctx.poset
    can_nest = depth < ctx.max_pi_depth
    for i in _positions(len(ws), at):
        t = ws[i]
        d = t.degree
        even = d % 2 == 0
        # directed forward: decorate at even, undecorate at odd; inverse swaps
        decorate = symmetric or (even != inverse)
        undecorate = symmetric or (even == inverse)
        if decorate and can_nest and type(t) is Simple:
            for b in _targets(poset, t.atom, d, inverse) if ctx.mind_lift else (t.atom,):
                new = Pi((Simple(b, 0),), d)
                yield i, (("from", render_term(t)), ("to", render_term(new))), ws[:i] + (new,) + ws[i + 1:]
        if undecorate and type(t) is Pi and len(t.content) == 1:
            inner = t.content[0]
            if type(inner) is Simple and inner.degree == 0:
                for a in _targets(poset, inner.atom, d, inverse) if ctx.mind_lift else (inner.atom,):
                    new = Simple(a, d)
                    yield i, (("from", render_term(t)), ("to", render_term(new))), ws[:i] + (new,) + ws[i + 1:]
        if ctx.deep_pi:
            yield from _run_decorations(ws, i, ctx, inverse, symmetric, depth)


def _run_decorations(ws, i, ctx, inverse, symmetric, depth):
    """Run-level decoration with identity content: ``Y^(d) <-> [pi(Y)]^(d)``."""
    bound = ctx.max_degree
    t = ws[i]
    if type(t) is Pi and len(t.content) >= 2:
        even = t.degree % 2 == 0
        if symmetric or (even == inverse):
            flat = iterate_adjoint(t.content, t.degree)
            if _in_bounds(flat, bound):
                yield i, (("from", render_term(t)), ("to", render(flat)), ("run", len(flat))), \
                    ws[:i] + flat + ws[i + 1:]
    for k in range(2, len(ws) - i + 1):
        run = ws[i:i + k]
        if depth + 1 + pi_depth(run) > ctx.max_pi_depth:
            break
        for d in range(-bound, bound + 1):
            even = d % 2 == 0
            if not (symmetric or (even != inverse)):
                continue
            content = iterate_adjoint(run, -d)
            if not _in_bounds(content, bound):
                continue
            new = Pi(content, d)
            yield i, (("from", render(run)), ("to", render_term(new)), ("run", k)), \
                ws[:i] + (new,) + ws[i + k:]


def _pi_run(ws, i):
    j = i
    while j < len(ws) and type(ws[j]) is Pi:
        j += 1
    return j - i


def _block_moves(ws, kind, ctx, at, depth):
    bound = ctx.max_degree
    block = ctx.max_block or len(ws)
    up = kind in ("PRE", "R_PRE^-1")  # these raise the second block by 2
    for i in _positions(len(ws), at):
        run = _pi_run(ws, i)
        for total in range(2, min(run, 2 * block) + 1):
            seg = ws[i:i + total]
            head, rest = ws[:i], ws[i + total:]
            for first in range(max(1, total - block), min(total - 1, block) + 1):
                second = total - first
                if up:
                    moved = tuple([Pi(t.content, t.degree + 2) for t in seg[first:]])
                    new = moved + seg[:first]
                else:
                    moved = tuple([Pi(t.content, t.degree - 2) for t in seg[:first]])
                    new = seg[first:] + moved
                if any(t.degree > bound or t.degree < -bound for t in moved):
                    continue
                # the payload always names the blocks of the forward move
                if kind in ("PRE", "R_PRE"):
                    payload = (("a", first), ("b", second))
                else:
                    payload = (("a", second), ("b", first))
                yield i, payload, head + new + rest


_GENERATORS = {
    "CON": _delete_pairs,
    "PI_CON": _delete_pairs,
    "EXP^-1": _delete_pairs,
    "PI_EXP^-1": _delete_pairs,
    "EXP": _insert_pairs,
    "PI_EXP": _insert_pairs,
    "CON^-1": _insert_pairs,
    "PI_CON^-1": _insert_pairs,
    "IND": _substitutions,
    "IND^-1": _substitutions,
    "M_IND": _decorations,
    "M_IND^-1": _decorations,
    "PRE": _block_moves,
    "PRE^-1": _block_moves,
    "R_PRE": _block_moves,
    "R_PRE^-1": _block_moves,
}


def level_moves(ws, kind, ctx, at=None, depth=0):
    """Primitive moves of one kind on the level nested ``depth`` pi-wrappers deep.

    Yields ``(position, payload, new_level)``.
    """
    return _GENERATORS[kind](ws, kind, ctx, at, depth)


def _wants_nested(families):
    return bool(families & {RuleTag.IND_C, RuleTag.IND_E, RuleTag.PI_IND})


def _kinds_for(ctx, families, polarity, nested):
    key = ("kinds", families, polarity, nested)
    found = ctx._memo.get(key)
    if found is None:
        found = []
        for kind in ctx.level_kinds(polarity):
            tag = _NESTED_TAG[move_class(kind)] if nested else RuleTag(kind)
            if tag in families:
                found.append((kind, tag))
        found = ctx._memo[key] = tuple(found)
    return found


def _content_index(ctx):
    found = ctx._memo.get("contents")
    if found is None:
        found = ctx._memo["contents"] = {render(c): c for c in ctx.contents}
    return found


def _move_at(ws, kind, ctx, pos, payload, depth):
    """The level produced by one fully specified move, or None if unlicensed.

    Equivalent to searching ``level_moves(ws, kind, ctx, at=pos)`` for
    ``payload``, without enumerating the alternatives.
    """
    gen = _GENERATORS[kind]
    try:
        if gen is _block_moves:
            return _block_at(ws, kind, ctx, pos, dict(payload))
        if gen is _substitutions:
            return _substitution_at(ws, kind, ctx, pos, dict(payload))
        if gen is _insert_pairs:
            return _insert_at(ws, kind, ctx, pos, payload, depth)
    except (KeyError, TypeError, ValueError):
        return None
    for _, p, new in gen(ws, kind, ctx, pos, depth):
        if p == payload:
            return new
    return None


def _block_at(ws, kind, ctx, i, payload):
    if set(payload) != {"a", "b"}:
        return None
    la, lb = payload["a"], payload["b"]
    first, second = (la, lb) if kind in ("PRE", "R_PRE") else (lb, la)
    block = ctx.max_block or len(ws)
    if not (type(first) is int and type(second) is int and 1 <= first <= block and 1 <= second <= block):
        return None
    total = first + second
    if not 0 <= i < len(ws) or _pi_run(ws, i) < total:
        return None
    seg = ws[i:i + total]
    if kind in ("PRE", "R_PRE^-1"):
        moved = tuple(t._replace(degree=t.degree + 2) for t in seg[first:])
        new = moved + seg[:first]
    else:
        moved = tuple(t._replace(degree=t.degree - 2) for t in seg[:first])
        new = seg[first:] + moved
    if any(abs(t.degree) > ctx.max_degree for t in moved):
        return None
    return ws[:i] + new + ws[i + total:]


def _substitution_at(ws, kind, ctx, i, payload):
    if set(payload) != {"from", "to"} or not 0 <= i < len(ws):
        return None
    t = ws[i]
    a, b = payload["from"], payload["to"]
    if type(t) is not Simple or t.atom != a or b not in ctx.poset:
        return None
    if b not in _targets(ctx.poset, a, t.degree, kind.endswith("^-1")):
        return None
    return ws[:i] + (Simple(b, t.degree),) + ws[i + 1:]


def _insert_at(ws, kind, ctx, i, payload, depth):
    if len(payload) != 2 or payload[1][0] != "degree" or len(ws) + 2 > ctx.max_len:
        return None
    if not 0 <= i <= len(ws):
        return None
    (label, value), (_, n) = payload
    base = kind.split("^")[0]
    if base in ("EXP", "CON"):
        if label != "atom" or value not in ctx.atoms:
            return None
        t = Simple(value, 0)
    else:
        content = _content_index(ctx).get(value) if label == "content" else None
        if content is None or pi_depth(content) > ctx.max_pi_depth - depth - 1:
            return None
        t = Pi(content, 0)
    if type(n) is not int or not -ctx.max_degree <= n < ctx.max_degree:
        return None
    lo, hi = t._replace(degree=n), t._replace(degree=n + 1)
    pair = (hi, lo) if base in ("EXP", "PI_EXP") else (lo, hi)
    return ws[:i] + pair + ws[i:]


def _successors(ws, ctx, families, polarity, depth, nested_ok):
    """``(tag, relative path, position, payload, new level)`` for one level and below."""
    nested = depth > 0
    for kind, tag in _kinds_for(ctx, families, polarity, nested):
        for pos, payload, new in level_moves(ws, kind, ctx, depth=depth):
            if nested:
                payload = (("op", kind),) + payload
            yield tag, (), pos, payload, new
    if nested_ok:
        for i, t in enumerate(ws):
            if type(t) is Pi:
                child = -polarity if t.degree % 2 else polarity
                for tag, rel, pos, payload, inner in _inside(t.content, ctx, families, child, depth + 1):
                    yield tag, (i,) + rel, pos, payload, ws[:i] + (Pi(inner, t.degree),) + ws[i + 1:]


def _inside(content, ctx, families, polarity, depth):
    # moves inside a pi content depend only on the content and its level, so
    # they are shared between all words that contain it
    key = ("inside", content, families, polarity, depth)
    found = ctx._memo.get(key)
    if found is None:
        found = ctx._memo[key] = tuple(
            move for move in _successors(content, ctx, families, polarity, depth, True) if move[4]
        )
    return found


def successors(word, families, ctx):
    """All ``(step, rewritten word)`` pairs for the given rule families, in canonical order."""
    families = frozenset(RuleTag(f) for f in families)
    found = [(Step(tag, path, pos, payload), new)
             for tag, path, pos, payload, new in _successors(word, ctx, families, 1, 0, _wants_nested(families))]
    found.sort(key=lambda pair: pair[0].key())
    return found


def enumerate_steps(word, families, ctx):
    """Every applicable step of the given families, canonically ordered."""
    return [step for step, _ in successors(word, families, ctx)]


def _level_kind_of(step, ctx, polarity):
    if not step.path:
        kind = step.rule.value
        if step.rule in (RuleTag.IND_C, RuleTag.IND_E, RuleTag.PI_IND):
            raise StepError(f"{step.rule} needs a non-empty path")
        payload = step.payload
    else:
        if not step.payload or step.payload[0][0] != "op":
            raise StepError("nested step without 'op' payload")
        kind = step.payload[0][1]
        payload = step.payload[1:]
        if kind not in _GENERATORS:
            raise StepError(f"unknown move {kind!r}")
        if _NESTED_TAG[move_class(kind)] != step.rule:
            raise StepError(f"move {kind} at this level is not a {step.rule} step")
    if kind not in ctx.level_kinds(polarity):
        raise StepError(f"move {kind} is not licensed at this level")
    return kind, payload


def _apply(ws, step, ctx, polarity, depth):
    if depth < len(step.path):
        i = step.path[depth]
        if not (0 <= i < len(ws)) or type(ws[i]) is not Pi:
            raise StepError(f"path element {i} does not address a pi term")
        t = ws[i]
        child = -polarity if t.degree % 2 else polarity
        inner = _apply(t.content, step, ctx, child, depth + 1)
        if not inner:
            raise StepError("step would empty a pi content")
        return ws[:i] + (Pi(inner, t.degree),) + ws[i + 1:]
    kind, payload = _level_kind_of(step, ctx, polarity)
    new = _move_at(ws, kind, ctx, step.position, payload, depth)
    if new is not None:
        return new
    raise StepError(f"{step.label()} does not apply to {render(ws)!r}")


def apply_step(word, step, ctx):
    """Rewrite ``word`` by ``step``; raises StepError if it is not licensed."""
    return _apply(word, step, ctx, 1, 0)


def _predecessors(ws, ctx, families, polarity, depth, nested_ok):
    """``(v, tag, relative path, position, payload)`` for one level and below."""
    nested = depth > 0
    for kind, tag in _kinds_for(ctx, families, polarity, nested):
        for pos, back, v in level_moves(ws, inverse_move(kind), ctx, depth=depth):
            for _, payload, res in _forward_at(v, kind, ctx, pos, ws, back, depth):
                if res == ws:
                    if nested:
                        payload = (("op", kind),) + payload
                    yield v, tag, (), pos, payload
    if nested_ok:
        for i, t in enumerate(ws):
            if type(t) is Pi:
                child = -polarity if t.degree % 2 else polarity
                for inner, tag, rel, pos, payload in _inside_back(t.content, ctx, families, child, depth + 1):
                    yield ws[:i] + (Pi(inner, t.degree),) + ws[i + 1:], tag, (i,) + rel, pos, payload


def _inside_back(content, ctx, families, polarity, depth):
    key = ("inside_back", content, families, polarity, depth)
    found = ctx._memo.get(key)
    if found is None:
        found = ctx._memo[key] = tuple(
            move for move in _predecessors(content, ctx, families, polarity, depth, True) if move[0]
        )
    return found


def _forward_at(v, kind, ctx, pos, ws, back, depth):
    """Forward moves at ``pos`` on ``v`` that could give ``ws``.

    ``back`` is the payload of the inverse move that produced ``v``.  Block
    moves name their blocks from the forward side, so that payload is the only
    candidate; substitutions are fixed by the two levels.
    """
    gen = _GENERATORS[kind]
    if gen is _block_moves:
        new = _block_at(v, kind, ctx, pos, dict(back))
        if new is not None:
            yield pos, back, new
        return
    if gen is _substitutions:
        if 0 <= pos < len(v) and type(v[pos]) is Simple and type(ws[pos]) is Simple:
            payload = (("from", v[pos].atom), ("to", ws[pos].atom))
            new = _substitution_at(v, kind, ctx, pos, dict(payload))
            if new is not None:
                yield pos, payload, new
        return
    yield from gen(v, kind, ctx, pos, depth)


def enumerate_predecessors(word, families, ctx):
    """Pairs ``(v, step)`` with ``apply_step(v, step) == word``.

    Material that ``v`` has and ``word`` lacks is drawn from the context's
    alphabets and degree bounds.
    """
    families = frozenset(RuleTag(f) for f in families)
    # dict keeps generation order, which is deterministic, as the tie-break
    found = dict.fromkeys(
        (v, Step(tag, path, pos, payload))
        for v, tag, path, pos, payload in _predecessors(word, ctx, families, 1, 0, _wants_nested(families))
    )
    return sorted(found, key=lambda pair: pair[1].key())
