"""
Brute-force reference implementations, for tests only.

Nothing here calls the enumeration code in ``rules``: the one-step relation
is written out again, move by move, as plainly as possible, so that
agreement between the two is evidence rather than tautology.  Only the data
types (terms, ``Step``, ``Derivation``) are shared.

``reachable`` explores every rule family, expansions included, inside
explicit ``OracleBounds``; ``minimal_derivations`` lists every shortest
derivation; ``classic_nullable`` decides nullability in a plain free pregroup
by interval dynamic programming over generalized contractions.
"""

from dataclasses import dataclass, field
from typing import Tuple

from .core import Pi, Simple, render, render_term
from .engine import Derivation
from .rules import RuleTag, Step


@dataclass(frozen=True)
class OracleBounds:
    """Finite window for insertions; ``alphabet=None`` means the poset's atoms."""

    max_depth: int = 5
    alphabet: Tuple[str, ...] = None
    content_alphabet: Tuple[tuple, ...] = None
    degree_range: Tuple[int, int] = (-3, 3)
    max_len: int = 6

    def __post_init__(self):
        lo, hi = self.degree_range
        if lo > hi or self.max_depth < 0 or self.max_len < 1:
            raise ValueError("empty oracle bounds")


@dataclass
class Reachable:
    """Words reachable within the bounds, with their distance from the start."""

    distance: dict = field(default_factory=dict)
    pruned: bool = False

    def __contains__(self, word):
        return word in self.distance

    def __iter__(self):
        return iter(self.distance)

    def __len__(self):
        return len(self.distance)


class _Mover:
    """Naive one-step relation over all rule families.

    ``moves(word)`` yields ``(step, new_word)``; ``pruned`` records whether a
    move was refused only because of the bounds.
    """

    def __init__(self, ctx, bounds):
        if ctx.deep_pi:
            raise NotImplementedError("the oracle does not model run-level decoration")
        self.ctx = ctx
        self.poset = ctx.poset
        atoms = sorted(ctx.poset.atoms)
        self.alphabet = sorted(bounds.alphabet) if bounds.alphabet is not None else atoms
        if bounds.content_alphabet is not None:
            self.contents = sorted(bounds.content_alphabet, key=render)
        else:
            self.contents = [(Simple(a, 0),) for a in atoms]
        self.lo, self.hi = bounds.degree_range
        self.max_len = bounds.max_len
        self.pruned = False

    # -- helpers -----------------------------------------------------------

    def covariant(self, degree, a, b):
        """May ``a`` be replaced by ``b`` at this degree (forward direction)?"""
        if degree % 2 == 0:
            return self.poset.leq(a, b)
        return self.poset.leq(b, a)

    def degree_ok(self, terms):
        for t in terms:
            if not self.lo <= t.degree <= self.hi:
                self.pruned = True
                return False
        return True

    # -- one level -----------------------------------------------------------

    def level(self, ws, negative, depth):
        """Yield ``(kind, position, payload, new_level)`` for one nesting level.

        At a negative level every primitive move is replaced by its inverse,
        written out here as a separate case.
        """
        yield from self.pair_deletions(ws, negative)
        yield from self.pair_insertions(ws, negative, depth)
        yield from self.substitutions(ws, negative)
        yield from self.decorations(ws, negative, depth)
        if self.ctx.precyclic in ("left", "both"):
            yield from self.pre(ws, negative)
        if self.ctx.precyclic in ("right", "both"):
            yield from self.r_pre(ws, negative)

    def pair_deletions(self, ws, negative):
        # forward: CON removes an ascending pair; inverse of EXP removes a descending one
        for i in range(len(ws) - 1):
            a, b = ws[i], ws[i + 1]
            if isinstance(a, Simple) and isinstance(b, Simple) and a.atom == b.atom:
                kind = "CON"
            elif isinstance(a, Pi) and isinstance(b, Pi) and a.content == b.content:
                kind = "PI_CON"
            else:
                continue
            if not negative and b.degree == a.degree + 1:
                yield kind, i, (), ws[:i] + ws[i + 2:]
            if negative and a.degree == b.degree + 1:
                yield ("EXP^-1" if kind == "CON" else "PI_EXP^-1"), i, (), ws[:i] + ws[i + 2:]

    def pair_insertions(self, ws, negative, depth):
        if len(ws) + 2 > self.max_len:
            self.pruned = True
            return
        room = self.ctx.max_pi_depth - depth - 1
        for i in range(len(ws) + 1):
            for a in self.alphabet:
                for n in range(self.lo, self.hi):
                    if negative:
                        pair = (Simple(a, n), Simple(a, n + 1))
                        kind = "CON^-1"
                    else:
                        pair = (Simple(a, n + 1), Simple(a, n))
                        kind = "EXP"
                    yield kind, i, (("atom", a), ("degree", n)), ws[:i] + pair + ws[i:]
            for c in self.contents:
                if _nesting(c) > room:
                    continue
                for n in range(self.lo, self.hi):
                    if negative:
                        pair = (Pi(c, n), Pi(c, n + 1))
                        kind = "PI_CON^-1"
                    else:
                        pair = (Pi(c, n + 1), Pi(c, n))
                        kind = "PI_EXP"
                    yield kind, i, (("content", render(c)), ("degree", n)), ws[:i] + pair + ws[i:]

    def substitutions(self, ws, negative):
        for i, t in enumerate(ws):
            if not isinstance(t, Simple):
                continue
            for b in sorted(self.poset.atoms):
                if negative:
                    ok = self.covariant(t.degree, b, t.atom)
                else:
                    ok = self.covariant(t.degree, t.atom, b)
                if ok:
                    yield ("IND^-1" if negative else "IND"), i, (("from", t.atom), ("to", b)), \
                        ws[:i] + (Simple(b, t.degree),) + ws[i + 1:]

    def decorations(self, ws, negative, depth):
        kind = "M_IND^-1" if negative else "M_IND"
        symmetric = self.ctx.mind == "symmetric"
        lift = self.ctx.mind_lift
        for i, t in enumerate(ws):
            even = t.degree % 2 == 0
            # forward directed: wrap at even degree, unwrap at odd; inverse swaps
            wrap = symmetric or (even if not negative else not even)
            unwrap = symmetric or (not even if not negative else even)
            if wrap and isinstance(t, Simple) and depth < self.ctx.max_pi_depth:
                for b in sorted(self.poset.atoms):
                    if b != t.atom and not (lift and self._lift_ok(t.degree, t.atom, b, negative)):
                        continue
                    new = Pi((Simple(b, 0),), t.degree)
                    yield kind, i, (("from", render_term(t)), ("to", render_term(new))), \
                        ws[:i] + (new,) + ws[i + 1:]
            if unwrap and isinstance(t, Pi) and len(t.content) == 1:
                inner = t.content[0]
                if isinstance(inner, Simple) and inner.degree == 0:
                    for b in sorted(self.poset.atoms):
                        if b != inner.atom and not (lift and self._lift_ok(t.degree, inner.atom, b, negative)):
                            continue
                        new = Simple(b, t.degree)
                        yield kind, i, (("from", render_term(t)), ("to", render_term(new))), \
                            ws[:i] + (new,) + ws[i + 1:]

    def _lift_ok(self, degree, a, b, negative):
        return self.covariant(degree, b, a) if negative else self.covariant(degree, a, b)

    def _blocks(self, ws):
        """``(i, first, second)`` for adjacent all-Pi blocks inside the word."""
        limit = self.ctx.max_block or len(ws)
        for i in range(len(ws)):
            for first in range(1, limit + 1):
                for second in range(1, limit + 1):
                    seg = ws[i:i + first + second]
                    if len(seg) == first + second and all(isinstance(t, Pi) for t in seg):
                        yield i, first, second

    def pre(self, ws, negative):
        for i, first, second in self._blocks(ws):
            end = i + first + second
            left, right = ws[i:i + first], ws[i + first:end]
            if not negative:
                # A B -> B^(+2) A
                moved = tuple(Pi(t.content, t.degree + 2) for t in right)
                if self.degree_ok(moved):
                    yield "PRE", i, (("a", first), ("b", second)), ws[:i] + moved + left + ws[end:]
            else:
                # B^(+2) A -> A B
                moved = tuple(Pi(t.content, t.degree - 2) for t in left)
                if self.degree_ok(moved):
                    yield "PRE^-1", i, (("a", second), ("b", first)), ws[:i] + right + moved + ws[end:]

    def r_pre(self, ws, negative):
        for i, first, second in self._blocks(ws):
            end = i + first + second
            left, right = ws[i:i + first], ws[i + first:end]
            if not negative:
                # A B -> B A^(-2)
                moved = tuple(Pi(t.content, t.degree - 2) for t in left)
                if self.degree_ok(moved):
                    yield "R_PRE", i, (("a", first), ("b", second)), ws[:i] + right + moved + ws[end:]
            else:
                # B A^(-2) -> A B
                moved = tuple(Pi(t.content, t.degree + 2) for t in right)
                if self.degree_ok(moved):
                    yield "R_PRE^-1", i, (("a", second), ("b", first)), ws[:i] + moved + left + ws[end:]

    # -- whole words -----------------------------------------------------------

    def moves(self, word):
        out = list(self._moves(word, False, ()))
        out.sort(key=lambda pair: pair[0].key())
        return out

    def _moves(self, ws, negative, path):
        for kind, pos, payload, new in self.level(ws, negative, len(path)):
            if path:
                tag = _nested_tag(kind)
                payload = (("op", kind),) + payload
            else:
                tag = RuleTag(kind)
            yield Step(tag, path, pos, payload), new
        for i, t in enumerate(ws):
            if isinstance(t, Pi):
                flip = t.degree % 2 == 1
                for step, inner in self._moves(t.content, negative != flip, path + (i,)):
                    if inner:
                        yield step, ws[:i] + (Pi(inner, t.degree),) + ws[i + 1:]


_CONTRACTING = {"CON", "PI_CON", "EXP^-1", "PI_EXP^-1"}
_EXPANDING = {"EXP", "PI_EXP", "CON^-1", "PI_CON^-1"}


def _nested_tag(kind):
    if kind in _CONTRACTING:
        return RuleTag.IND_C
    if kind in _EXPANDING:
        return RuleTag.IND_E
    return RuleTag.PI_IND


def _nesting(word):
    return max((1 + _nesting(t.content) for t in word if isinstance(t, Pi)), default=0)


def one_step(word, ctx, bounds=None):
    """Every ``(step, word')`` over all rule families, canonically ordered."""
    return _Mover(ctx, bounds or OracleBounds()).moves(word)


def reachable(x, b, ctx):
    """Words reachable from ``x`` in at most ``b.max_depth`` steps of any kind.

    ``pruned`` is set when some move was refused only by the bounds, or when
    the depth limit cut off words that had unexplored successors.
    """
    mover = _Mover(ctx, b)
    result = Reachable({x: 0})
    frontier = [x]
    for depth in range(1, b.max_depth + 1):
        nxt = []
        for w in frontier:
            for _, v in mover.moves(w):
                if v not in result.distance:
                    result.distance[v] = depth
                    nxt.append(v)
        frontier = nxt
        if not frontier:
            break
    else:
        if frontier:
            for w in frontier:
                if any(v not in result.distance for _, v in mover.moves(w)):
                    mover.pruned = True
                    break
    result.pruned = mover.pruned
    return result


def minimal_derivations(x, y, b, ctx, limit=None):
    """Every shortest derivation of ``x => y`` within the bounds.

    Breadth-first over words while keeping all shortest-path parents, then
    unrolls every parent chain.  Returns ``[]`` if ``y`` is not reached within
    ``b.max_depth`` steps.  ``limit`` caps the number of derivations listed.
    """
    if x == y:
        return [Derivation(x)]
    mover = _Mover(ctx, b)
    dist = {x: 0}
    parents = {x: []}
    frontier = [x]
    for depth in range(1, b.max_depth + 1):
        nxt = []
        for w in frontier:
            for step, v in mover.moves(w):
                if v not in dist:
                    dist[v] = depth
                    parents[v] = []
                    nxt.append(v)
                if dist[v] == depth:
                    parents[v].append((w, step))
        if y in dist:
            break
        frontier = nxt
    if y not in dist:
        return []
    found = []

    def unroll(word, tail):
        if limit is not None and len(found) >= limit:
            return
        if word == x:
            found.append(Derivation(x, tuple(tail)))
            return
        for prev, step in parents[word]:
            unroll(prev, [(step, word)] + tail)

    unroll(y, [])
    found.sort(key=lambda d: [s.key() for s, _ in d.steps])
    return found


def classic_nullable(x, poset=None):
    """Nullability in a plain free pregroup, by interval dynamic programming.

    A pair ``a^(n) b^(n+1)`` contracts when ``a <= b`` (``n`` even) or
    ``b <= a`` (``n`` odd); with no order, only equal atoms.  ``x`` reduces
    to ``1`` iff it splits into nested, side-by-side contracting pairs.
    """
    for t in x:
        if not isinstance(t, Simple):
            raise ValueError("classic_nullable works on pi-free words only")

    def pairs(a, b):
        if b.degree != a.degree + 1:
            return False
        if poset is None:
            return a.atom == b.atom
        if a.degree % 2 == 0:
            return poset.leq(a.atom, b.atom)
        return poset.leq(b.atom, a.atom)

    n = len(x)
    if n % 2:
        return False
    # empty[i][j]: x[i:j] reduces to 1
    empty = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        empty[i][i] = True
    for length in range(2, n + 1, 2):
        for i in range(0, n - length + 1):
            j = i + length
            for k in range(i + 1, j, 2):
                if pairs(x[i], x[k]) and empty[i + 1][k] and empty[k + 1][j]:
                    empty[i][j] = True
                    break
    return empty[0][n]
