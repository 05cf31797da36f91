"""Fuzzy automata from crisp automata of lifted expressions.

Given a crisp automaton ``A`` for the lifted expression and its scalar
table, the scalar-letter edges of ``A`` become a weighted graph. Its
reflexive-transitive closure ``R_A`` absorbs every run of scalar letters,
so the fuzzy automaton is plain matrix algebra::

    delta'_x = R_A o delta_x o R_A        tau' = R_A o tau          (full)
    delta'_x = R_A o delta_x              tau' = R_A o tau          (reduced)

The reduced automaton keeps only the initial state and the targets of
original-letter edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import LMonoid
from .automaton import FuzzyAutomaton
from .lift import LiftResult, lift
from .position import Nfa, glushkov
from .regex import BudgetExceeded, Regex

__all__ = [
    "ClosureRelation",
    "base_relation",
    "closure",
    "synthesize_full",
    "synthesize_reduced",
    "compile_regex",
    "shuffle_degree",
    "exact_budget",
]


@dataclass(frozen=True, eq=False)
class ClosureRelation:
    matrix: np.ndarray
    base: np.ndarray


def base_relation(a: Nfa, lr: LiftResult, lm: LMonoid) -> np.ndarray:
    """``1`` on the diagonal, elsewhere the best single scalar-letter edge."""
    n = a.n_states
    r = np.zeros((n, n))
    for y in lr.y_alphabet:
        if y.symbol not in a.delta:
            continue
        weighted = np.where(a.delta[y.symbol], lm.otimes_array(y.value, 1.0), 0.0)
        np.maximum(r, weighted, out=r)
    np.fill_diagonal(r, lm.one)
    return r


def closure(base, lm: LMonoid) -> ClosureRelation:
    base = linalg.as_matrix(base)
    return ClosureRelation(linalg.reflexive_transitive_closure(base, lm), base)


def _check_alphabet(a: Nfa, lr: LiftResult):
    missing = set(a.alphabet) - set(lr.alphabet)
    if missing:
        raise ValueError(f"automaton letters {sorted(missing)} are not in the lifted alphabet")


def _letter_matrix(a: Nfa, x):
    if x in a.delta:
        return a.delta[x].astype(np.float64)
    return np.zeros((a.n_states, a.n_states))


def _crisp_unit(n, lm):
    s = np.zeros(n)
    s[0] = lm.one
    return s


def synthesize_full(a: Nfa, lr: LiftResult, lm: LMonoid) -> FuzzyAutomaton:
    _check_alphabet(a, lr)
    ra = closure(base_relation(a, lr, lm), lm).matrix
    delta = {
        x: linalg.compose(linalg.compose(ra, _letter_matrix(a, x), lm), ra, lm)
        for x in lr.x_alphabet
    }
    tau = linalg.mat_vec(ra, a.finals.astype(np.float64), lm)
    return FuzzyAutomaton(lr.x_alphabet, delta, _crisp_unit(a.n_states, lm), tau, lm, a.labels)


def kept_states(a: Nfa, lr: LiftResult) -> list[int]:
    """The initial state and every target of an original-letter edge."""
    hit = np.zeros(a.n_states, dtype=bool)
    hit[0] = True
    for x in lr.x_alphabet:
        if x in a.delta:
            hit |= a.delta[x].any(axis=0)
    return [int(i) for i in np.flatnonzero(hit)]


def synthesize_reduced(a: Nfa, lr: LiftResult, lm: LMonoid) -> FuzzyAutomaton:
    _check_alphabet(a, lr)
    ra = closure(base_relation(a, lr, lm), lm).matrix
    keep = kept_states(a, lr)
    ix = np.ix_(keep, keep)
    delta = {x: linalg.compose(ra, _letter_matrix(a, x), lm)[ix] for x in lr.x_alphabet}
    tau = linalg.mat_vec(ra, a.finals.astype(np.float64), lm)[keep]
    labels = [a.labels[i] for i in keep]
    return FuzzyAutomaton(lr.x_alphabet, delta, _crisp_unit(len(keep), lm), tau, lm, labels)


def compile_regex(alpha: Regex, lm: LMonoid, reduced: bool = False) -> FuzzyAutomaton:
    """Lift, build the position automaton, synthesize."""
    lr = lift(alpha, lm)
    nfa = glushkov(lr.alpha_r)
    if reduced:
        return synthesize_reduced(nfa, lr, lm)
    return synthesize_full(nfa, lr, lm)


def exact_budget(u, n_states: int) -> int:
    """Insertion budget at which :func:`shuffle_degree` is exact.

    Between two original letters (and at both ends) a run of at most
    ``n - 1`` scalar letters realizes every closure entry.
    """
    return (len(u) + 1) * n_states


def shuffle_degree(alpha: Regex, u, insert_budget: int, lm: LMonoid,
                   nfa: Nfa | None = None, max_visits: int = 5_000_000) -> float:
    """Join of ``phi*(v)`` over crisp words ``v`` accepted by the lifted automaton.

    ``v`` ranges over ``u`` with at most ``insert_budget`` scalar letters
    inserted anywhere. The result is a lower bound on the degree of ``u`` and
    becomes exact at :func:`exact_budget`.

    Candidates are generated letter by letter while tracking the reachable
    crisp state set. A prefix is dropped when another prefix with the same
    input position and state set, at least as much budget left and at least
    the same weight has already been explored: every completion of the
    dropped prefix is also a completion of the kept one, with no smaller
    weight.
    """
    lr = lift(alpha, lm)
    if nfa is None:
        nfa = glushkov(lr.alpha_r)
    u = tuple(u)
    for x in u:
        if x not in lr.phi:
            return lm.zero
    delta = {x: nfa.delta[x] for x in nfa.alphabet}
    ys = [(y.symbol, y.value) for y in lr.y_alphabet if y.symbol in delta]
    finals = nfa.finals

    start = np.zeros(nfa.n_states, dtype=bool)
    start[0] = True
    seen: dict = {}
    best = lm.zero
    visits = itertools.count()
    stack = [(0, start, insert_budget, lm.one)]
    while stack:
        pos, states, left, value = stack.pop()
        if next(visits) > max_visits:
            raise BudgetExceeded(f"more than {max_visits} prefixes explored")
        key = (pos, states.tobytes())
        dominated = False
        front = seen.setdefault(key, [])
        for v0, l0 in front:
            if v0 >= value and l0 >= left:
                dominated = True
                break
        if dominated:
            continue
        front[:] = [(v0, l0) for v0, l0 in front if not (value >= v0 and left >= l0)]
        front.append((value, left))

        if pos == len(u) and (states & finals).any():
            best = lm.join(best, value)
        if pos < len(u):
            nxt = states @ delta[u[pos]] if u[pos] in delta else None
            if nxt is not None and nxt.any():
                stack.append((pos + 1, nxt, left, value))
        if left > 0:
            for sym, weight in ys:
                nxt = states @ delta[sym]
                w = lm.otimes(value, weight)
                if nxt.any() and w > 0.0:
                    stack.append((pos, nxt, left - 1, w))
    return best
