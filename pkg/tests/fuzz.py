"""Seeded word generators shared by the property and acceptance tests."""

import random

from pipregroup.core import Pi, Simple
from pipregroup.poset import Poset

ATOMS = ("a", "b", "c")


def random_term(rng, atoms, lo=-2, hi=2, pi_rate=0.3):
    degree = rng.randint(lo, hi)
    if rng.random() < pi_rate:
        return Pi((Simple(rng.choice(atoms), 0),), degree)
    return Simple(rng.choice(atoms), degree)


def random_word(rng, atoms, max_len=5, pi_rate=0.3):
    return tuple(random_term(rng, atoms, pi_rate=pi_rate) for _ in range(rng.randint(1, max_len)))


def random_poset(rng, ordered):
    atoms = ATOMS[:rng.randint(1, 3)]
    if not ordered or len(atoms) < 2:
        return Poset(atoms)
    a, b = rng.sample(atoms, 2)
    return Poset(atoms, [(a, b)])


def _pair(rng, poset, atoms, pi_rate):
    """Two adjacent terms that contract, possibly through the order."""
    n = rng.randint(-2, 1)
    a = rng.choice(atoms)
    up = [b for b in atoms if (poset.leq(a, b) if n % 2 == 0 else poset.leq(b, a))]
    b = rng.choice(up)
    if rng.random() < pi_rate:
        return Pi((Simple(a, 0),), n), Pi((Simple(b, 0),), n + 1)
    return Simple(a, n), Simple(b, n + 1)


def nullable_leaning_word(rng, poset, pi_rate=0.3):
    """Nested or side-by-side contracting pairs, sometimes with one stray term."""
    atoms = sorted(poset.atoms)
    first = _pair(rng, poset, atoms, pi_rate)
    if rng.random() < 0.5:
        second = _pair(rng, poset, atoms, pi_rate)
        if rng.random() < 0.5:
            word = first + second
        else:
            word = (first[0],) + second + (first[1],)
    else:
        word = first
    if rng.random() < 0.3:
        i = rng.randint(0, len(word))
        word = word[:i] + (random_term(rng, atoms, pi_rate=pi_rate),) + word[i:]
    return word


def corpus(size=300, seed=0, pi_rate=0.3):
    """``size`` pairs ``(poset, word)``: half ordered, half leaning nullable."""
    rng = random.Random(seed)
    out = []
    for k in range(size):
        poset = random_poset(rng, ordered=k % 2 == 1)
        atoms = sorted(poset.atoms)
        if k % 4 < 2:
            word = random_word(rng, atoms, pi_rate=pi_rate)
        else:
            word = nullable_leaning_word(rng, poset, pi_rate=pi_rate)
        out.append((poset, word))
    return out


def random_nested_word(rng, max_len=5, depth=2):
    """Words with arbitrary degrees and nested pi contents, for syntax tests."""
    atoms = ("a", "b", "n", "s_1", "obar")
    terms = []
    for _ in range(rng.randint(0 if depth == 2 else 1, max_len)):
        degree = rng.randint(-6, 6)
        if depth and rng.random() < 0.3:
            terms.append(Pi(random_nested_word(rng, 3, depth - 1), degree))
        else:
            terms.append(Simple(rng.choice(atoms), degree))
    return tuple(terms)
