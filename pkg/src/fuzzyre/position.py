"""Position (Glushkov / McNaughton-Yamada) automata of crisp expressions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lift import is_scalar_letter
from .regex import Concat, Empty, Epsilon, Regex, Scalar, Star, Sum, Sym

__all__ = ["Nfa", "glushkov", "nfa_accepts"]


def _letter_order(symbol):
    if is_scalar_letter(symbol):
        return (1, int(symbol[1:]), symbol)
    return (0, 0, symbol)


@dataclass(frozen=True, eq=False)
class Nfa:
    """Crisp automaton with states ``0 .. n-1`` and initial state ``0``.

    ``delta`` maps each letter to an ``(n, n)`` boolean matrix and
    ``finals`` is a boolean vector.
    """

    n_states: int
    alphabet: tuple
    delta: dict = field(hash=False)
    finals: np.ndarray = field(hash=False)
    labels: tuple = ()

    def __post_init__(self):
        n = self.n_states
        if set(self.delta) != set(self.alphabet):
            raise ValueError("delta must have exactly one matrix per letter")
        for x, m in self.delta.items():
            if m.shape != (n, n) or m.dtype != np.bool_:
                raise ValueError(f"matrix for {x!r} must be boolean of shape {(n, n)}")
        if self.finals.shape != (n,) or self.finals.dtype != np.bool_:
            raise ValueError(f"finals must be a boolean vector of length {n}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))

    @classmethod
    def from_edges(cls, n_states, edges, finals, alphabet=None, labels=()):
        """Build from ``(source, letter, target)`` triples and final states."""
        if alphabet is None:
            alphabet = sorted({x for _, x, _ in edges}, key=_letter_order)
        delta = {x: np.zeros((n_states, n_states), dtype=bool) for x in alphabet}
        for a, x, b in edges:
            delta[x][a, b] = True
        fin = np.zeros(n_states, dtype=bool)
        fin[list(finals)] = True
        return cls(n_states, tuple(alphabet), delta, fin, tuple(labels))

    def edges(self):
        for x in self.alphabet:
            for a, b in zip(*np.nonzero(self.delta[x])):
                yield int(a), x, int(b)

    @property
    def final_states(self) -> set:
        return {int(i) for i in np.flatnonzero(self.finals)}


def glushkov(r: Regex) -> Nfa:
    """Position automaton of a scalar-free expression.

    State ``i > 0`` is the ``i``-th letter occurrence in text order; an edge
    ``i -x-> j`` exists iff position ``j`` carries ``x`` and follows ``i``.
    """
    syms: list[str] = []
    follow: list[set] = [set()]

    def go(node):
        # returns (nullable, first, last), filling follow sets on the way
        if isinstance(node, Empty):
            return False, frozenset(), frozenset()
        if isinstance(node, Epsilon):
            return True, frozenset(), frozenset()
        if isinstance(node, Sym):
            syms.append(node.symbol)
            follow.append(set())
            p = frozenset([len(syms)])
            return False, p, p
        if isinstance(node, Sum):
            n1, f1, l1 = go(node.left)
            n2, f2, l2 = go(node.right)
            return n1 or n2, f1 | f2, l1 | l2
        if isinstance(node, Concat):
            n1, f1, l1 = go(node.left)
            n2, f2, l2 = go(node.right)
            for i in l1:
                follow[i].update(f2)
            return n1 and n2, (f1 | f2) if n1 else f1, (l1 | l2) if n2 else l2
        if isinstance(node, Star):
            _, f, l = go(node.child)
            for i in l:
                follow[i].update(f)
            return True, f, l
        if isinstance(node, Scalar):
            raise ValueError("glushkov needs a crisp expression; lift the scalars first")
        raise TypeError(f"not a regex node: {node!r}")

    nullable, first, last = go(r)
    follow[0] = set(first)
    n = len(syms) + 1
    edges = [(i, syms[j - 1], j) for i in range(n) for j in sorted(follow[i])]
    finals = set(last) | ({0} if nullable else set())
    alphabet = sorted(set(syms), key=_letter_order)
    return Nfa.from_edges(n, edges, finals, alphabet)


def nfa_accepts(a: Nfa, v) -> bool:
    states = np.zeros(a.n_states, dtype=bool)
    states[0] = True
    for x in v:
        if x not in a.delta:
            raise KeyError(f"letter {x!r} is not in the automaton alphabet")
        states = states @ a.delta[x]
        if not states.any():
            return False
    return bool((states & a.finals).any())
