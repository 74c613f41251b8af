"""Finite preorders on atoms, closed eagerly at construction."""

from .core import is_atom_name


class PosetError(ValueError):
    pass


class Poset:
    """Atoms with the reflexive-transitive closure of declared ``a <= b`` pairs.

    Equivalences are declared as both directions, so the relation is only a
    preorder.
    """

    def __init__(self, atoms, declared=()):
        atoms = frozenset(atoms)
        for a in atoms:
            if not is_atom_name(a):
                raise PosetError(f"invalid atom name {a!r}")
        declared = frozenset(declared)
        for a, b in declared:
            for x in (a, b):
                if x not in atoms:
                    raise PosetError(f"undeclared atom {x!r} in relation {a} <= {b}")
        self.atoms = atoms
        self.declared = declared
        self._up = self._close()

    def _close(self):
        succ = {a: set() for a in self.atoms}
        for a, b in self.declared:
            succ[a].add(b)
        up = {}
        for a in self.atoms:
            seen = {a}
            stack = [a]
            while stack:
                for nxt in succ[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            up[a] = frozenset(seen)
        return up

    def leq(self, p, q):
        for x in (p, q):
            if x not in self._up:
                raise PosetError(f"unknown atom {x!r}")
        return q in self._up[p]

    def above(self, p):
        """Atoms ``q`` with ``p <= q``, sorted."""
        if p not in self._up:
            raise PosetError(f"unknown atom {p!r}")
        return sorted(self._up[p])

    def below(self, p):
        """Atoms ``q`` with ``q <= p``, sorted."""
        if p not in self._up:
            raise PosetError(f"unknown atom {p!r}")
        return sorted(q for q in self.atoms if p in self._up[q])

    def __contains__(self, atom):
        return atom in self.atoms

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.atoms == other.atoms
            and self._up == other._up
        )

    def __hash__(self):
        return hash((self.atoms, frozenset(self._up.items())))

    def __repr__(self):
        pairs = ", ".join(f"{a}<={b}" for a, b in sorted(self.declared))
        return f"Poset({sorted(self.atoms)}, [{pairs}])"
