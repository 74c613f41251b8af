"""
Terms and words of a free pi-augmented pregroup.

A term is either a simple term ``p^(n)`` or a decorated term ``[pi(W)]^(n)``
wrapping a non-empty word ``W``. A word is a plain tuple of terms; the empty
tuple is the unit ``1``.

>>> w = parse_word("n^r s n^l")
>>> render(w)
'n^r s n^l'
>>> render(right_adjoint(w))
'n^rr s^r n'
>>> render(parse_word("pi(o)^(-2)"))
'pi(o)^ll'
"""

from functools import lru_cache
from typing import NamedTuple, Tuple, Union


class Simple(NamedTuple):
    atom: str
    degree: int = 0


class Pi(NamedTuple):
    content: tuple
    degree: int = 0


Term = Union[Simple, Pi]
Word = Tuple[Term, ...]

UNIT: Word = ()

_SUFFIXES = {"r": 1, "l": -1, "rr": 2, "ll": -2}
_CANONICAL = {-2: "^ll", -1: "^l", 0: "", 1: "^r", 2: "^rr"}


class WordSyntaxError(ValueError):
    """Raised on malformed term/word text; carries the offending offset."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def is_atom_name(name):
    return (
        bool(name)
        and name[0].isascii()
        and name[0].isalpha()
        and all(c.isascii() and (c.isalnum() or c == "_") for c in name)
        and name != "pi"
    )


def shift(term, k):
    """Raise the adjoint degree of a single term by ``k``."""
    return term._replace(degree=term.degree + k)


def shift_word(word, k):
    """Shift every top-level degree of ``word`` by ``k``, keeping order."""
    return tuple(t._replace(degree=t.degree + k) for t in word)


def right_adjoint(word):
    return tuple(t._replace(degree=t.degree + 1) for t in reversed(word))


def left_adjoint(word):
    return tuple(t._replace(degree=t.degree - 1) for t in reversed(word))


def iterate_adjoint(word, n):
    """Apply the right adjoint ``n`` times (the left adjoint if ``n < 0``)."""
    if n % 2:
        word = tuple(reversed(word))
    return shift_word(word, n)


def atoms_of(word):
    """All atom names occurring in ``word``, at any nesting depth."""
    found = set()
    for t in word:
        if isinstance(t, Simple):
            found.add(t.atom)
        else:
            found |= atoms_of(t.content)
    return found


def contents_of(word):
    """All pi-contents occurring in ``word``, at any nesting depth."""
    found = set()
    for t in word:
        if isinstance(t, Pi):
            found.add(t.content)
            found |= contents_of(t.content)
    return found


def max_abs_degree(word):
    best = 0
    for t in word:
        best = max(best, abs(t.degree))
        if isinstance(t, Pi):
            best = max(best, max_abs_degree(t.content))
    return best


def pi_depth(word):
    depth = 0
    for t in word:
        if isinstance(t, Pi):
            depth = max(depth, 1 + pi_depth(t.content))
    return depth


def _suffix(degree):
    if degree in _CANONICAL:
        return _CANONICAL[degree]
    return f"^({degree})"


@lru_cache(maxsize=1 << 16)
def render_term(term):
    if isinstance(term, Simple):
        return term.atom + _suffix(term.degree)
    return "pi(" + render(term.content) + ")" + _suffix(term.degree)


def render(word):
    if not word:
        return "1"
    return " ".join(render_term(t) for t in word)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, position=None):
        raise WordSyntaxError(message, self.text, self.pos if position is None else position)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_spaces(self):
        while self.peek().isspace() and self.peek():
            self.pos += 1

    def word(self, closing):
        self.skip_spaces()
        start = self.pos
        if self.text.startswith("1", self.pos):
            end = self.pos + 1
            following = self.text[end:end + 1]
            if not following or following.isspace() or following == closing:
                self.pos = end
                self.skip_spaces()
                return ()
        terms = []
        while True:
            terms.append(self.term())
            had_space = self.peek().isspace() and self.peek() != ""
            self.skip_spaces()
            c = self.peek()
            if c == "" or c == closing:
                break
            if not had_space:
                self.error("expected space between terms")
        if not terms:
            self.error("empty word", start)
        return tuple(terms)

    def identifier(self):
        start = self.pos
        while self.peek() and (self.peek().isascii() and (self.peek().isalnum() or self.peek() == "_")):
            self.pos += 1
        return self.text[start:self.pos], start

    def term(self):
        name, start = self.identifier()
        if not name:
            self.error("expected atom or pi(")
        if name == "pi":
            if self.peek() != "(":
                self.error("'pi' is reserved", start)
            self.pos += 1
            self.skip_spaces()
            if self.peek() == ")":
                self.error("empty pi body")
            content = self.word(")")
            if not content:
                self.error("empty pi body", start)
            if self.peek() != ")":
                self.error("unbalanced 'pi('", start)
            self.pos += 1
            base = Pi(content, 0)
        else:
            if not is_atom_name(name):
                self.error(f"invalid atom {name!r}", start)
            base = Simple(name, 0)
        return shift(base, self.suffixes())

    def suffixes(self):
        degree = 0
        while self.peek() == "^":
            at = self.pos
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                close = self.text.find(")", self.pos)
                if close < 0:
                    self.error("unterminated '^('", at)
                digits = self.text[self.pos:close]
                body = digits[1:] if digits.startswith("-") else digits
                if not body.isdigit() or not body.isascii():
                    self.error(f"malformed integer {digits!r}", self.pos)
                degree += int(digits)
                self.pos = close + 1
            else:
                start = self.pos
                while self.peek().isalpha():
                    self.pos += 1
                letters = self.text[start:self.pos]
                if letters not in _SUFFIXES:
                    self.error(f"unknown suffix '^{letters}'", at)
                degree += _SUFFIXES[letters]
        return degree


def parse_word(text):
    """Parse the ASCII surface syntax of a word.

    Degrees accumulate over suffixes: ``^r`` +1, ``^l`` -1, ``^rr`` +2,
    ``^ll`` -2, ``^(k)`` +k. The text ``1`` denotes the empty word.
    """
    p = _Parser(text)
    word = p.word("")
    if p.pos != len(text):
        p.error("unexpected character")
    return word


def parse_term(text):
    word = parse_word(text)
    if len(word) != 1:
        raise WordSyntaxError("expected a single term", text, 0)
    return word[0]
