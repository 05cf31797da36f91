"""State reduction by right invariant crisp equivalences.

A crisp equivalence ``E`` on the states is right invariant when
``E o delta_x <= delta_x o E`` for every letter and ``E o tau = tau``.
Merging its classes preserves the recognized fuzzy language.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .automaton import FuzzyAutomaton
from .position import Nfa

__all__ = [
    "Partition",
    "NotRightInvariant",
    "right_invariance_witness",
    "is_right_invariant",
    "greatest_right_invariant",
    "refinement_steps",
    "factor_automaton",
    "quotient_nfa",
]


@dataclass(frozen=True)
class Partition:
    """Class index per state. Classes are numbered by their smallest state."""

    class_of: tuple

    def __post_init__(self):
        renum = {}
        canon = tuple(renum.setdefault(c, len(renum)) for c in self.class_of)
        object.__setattr__(self, "class_of", canon)

    @classmethod
    def from_blocks(cls, blocks, n=None):
        if n is None:
            n = sum(len(b) for b in blocks)
        class_of = [-1] * n
        for k, block in enumerate(blocks):
            for s in block:
                if class_of[s] != -1:
                    raise ValueError(f"state {s} appears in two blocks")
                class_of[s] = k
        if -1 in class_of:
            raise ValueError(f"state {class_of.index(-1)} is in no block")
        return cls(tuple(class_of))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def n_classes(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    def blocks(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_classes)]
        for s, c in enumerate(self.class_of):
            out[c].append(s)
        return out

    def matrix(self) -> np.ndarray:
        c = np.asarray(self.class_of)
        return (c[:, None] == c[None, :]).astype(np.float64)

    def refines(self, other: "Partition") -> bool:
        """True iff every class of ``self`` lies inside a class of ``other``."""
        m = {}
        return all(m.setdefault(a, b) == b for a, b in zip(self.class_of, other.class_of))


class NotRightInvariant(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def right_invariance_witness(a: FuzzyAutomaton, p: Partition):
    """First violated entry, or ``None`` if ``p`` is right invariant.

    A witness is ``("delta", x, row, col)`` or ``("tau", state)``.
    """
    lm = a.lm
    if p.n != a.n_states:
        raise ValueError(f"partition over {p.n} states for an automaton with {a.n_states}")
    e = p.matrix()
    for x in a.alphabet:
        lhs = linalg.compose(e, a.delta[x], lm)
        rhs = linalg.compose(a.delta[x], e, lm)
        bad = np.argwhere(lhs > rhs + lm.tolerance)
        if len(bad):
            i, j = bad[0]
            return ("delta", x, int(i), int(j))
    et = linalg.mat_vec(e, a.tau, lm)
    bad = np.flatnonzero(np.abs(et - a.tau) > lm.tolerance)
    if len(bad):
        return ("tau", int(bad[0]))
    return None


def is_right_invariant(a: FuzzyAutomaton, p: Partition) -> bool:
    return right_invariance_witness(a, p) is None


def _group(rows, tol, within):
    """Split each class of ``within`` by row equality (up to ``tol``).

    A state joins the first earlier class whose representative row matches.
    """
    reps = []  # (old class, representative row, new class)
    out = []
    for s, row in enumerate(rows):
        for old, rep, new in reps:
            if old == within[s] and np.all(np.abs(row - rep) <= tol):
                out.append(new)
                break
        else:
            reps.append((within[s], row, len(reps)))
            out.append(len(reps) - 1)
    return Partition(tuple(out))


def refinement_steps(a: FuzzyAutomaton):
    """Yield the descending chain ``E_1, E_2, ...`` up to its fixpoint.

    ``E_1`` groups states with equal ``tau``; ``E_(k+1)`` additionally
    requires equal rows of ``delta_x o E_k`` for every letter.

    At most ``n`` rounds, each an ``n x n x n`` composition per letter, so
    the worst case is ``O(n^4 |X|)``.
    """
    lm = a.lm
    n = a.n_states
    cur = _group(a.tau[:, None], lm.tolerance, (0,) * n)
    yield cur
    while True:
        e = cur.matrix()
        sig = np.hstack([linalg.compose(a.delta[x], e, lm) for x in a.alphabet]) if a.alphabet \
            else np.zeros((n, 0))
        nxt = _group(sig, lm.tolerance, cur.class_of)
        if nxt.n_classes == cur.n_classes:
            return
        cur = nxt
        yield cur


def greatest_right_invariant(a: FuzzyAutomaton) -> Partition:
    """The coarsest right invariant crisp equivalence on ``a``."""
    last = None
    for last in refinement_steps(a):
        pass
    return last


def factor_automaton(a: FuzzyAutomaton, p: Partition, check: bool = True) -> FuzzyAutomaton:
    """Merge the classes of ``p``; transitions and vectors join over members."""
    if check:
        w = right_invariance_witness(a, p)
        if w is not None:
            raise NotRightInvariant(f"partition is not right invariant: {w}", w)
    blocks = p.blocks()
    # crisp E: E o M o E at representatives is the join over class members
    delta = {}
    for x in a.alphabet:
        m = a.delta[x]
        rows = np.stack([m[b].max(axis=0) for b in blocks])
        delta[x] = np.stack([rows[:, b].max(axis=1) for b in blocks], axis=1)
    sigma = np.array([a.sigma[b].max() for b in blocks])
    tau = np.array([a.tau[b].max() for b in blocks])
    labels = ["{" + ",".join(a.labels[s] for s in b) + "}" for b in blocks]
    return FuzzyAutomaton(a.alphabet, delta, sigma, tau, a.lm, labels)


def quotient_nfa(nfa: Nfa, p: Partition) -> Nfa:
    """Crisp factor automaton; the class of state 0 becomes the initial state 0."""
    blocks = p.blocks()
    delta = {}
    for x in nfa.alphabet:
        m = nfa.delta[x]
        out = np.zeros((len(blocks), len(blocks)), dtype=bool)
        for i, bi in enumerate(blocks):
            for j, bj in enumerate(blocks):
                out[i, j] = m[np.ix_(bi, bj)].any()
        delta[x] = out
    finals = np.array([nfa.finals[b].any() for b in blocks], dtype=bool)
    labels = tuple("{" + ",".join(nfa.labels[s] for s in b) + "}" for b in blocks)
    return Nfa(len(blocks), nfa.alphabet, delta, finals, labels)
