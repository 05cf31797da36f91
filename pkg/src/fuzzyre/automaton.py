"""Fuzzy finite automata and membership evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .algebra import LMonoid
from .linalg import as_matrix, as_vector
from .regex import LanguageSample, words

__all__ = ["FuzzyAutomaton", "UnknownLetterError", "degree", "degree_table", "from_nfa"]


class UnknownLetterError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class FuzzyAutomaton:
    """``(A, X, delta, sigma, tau)`` over an integral l-monoid.

    ``delta[x]`` is an ``(n, n)`` float array, ``sigma`` and ``tau`` are
    length-``n`` vectors. ``labels`` name the states, normally after the
    states of the crisp automaton they came from.
    """

    alphabet: tuple
    delta: dict = field(repr=False)
    sigma: np.ndarray = field(repr=False)
    tau: np.ndarray = field(repr=False)
    lm: LMonoid
    labels: tuple = ()

    def __post_init__(self):
        sigma = as_vector(self.sigma)
        tau = as_vector(self.tau)
        n = sigma.shape[0]
        if tau.shape[0] != n:
            raise ValueError(f"sigma has {n} entries but tau has {tau.shape[0]}")
        delta = {}
        for x in self.alphabet:
            m = as_matrix(self.delta[x])
            if m.shape[0] != n:
                raise ValueError(f"matrix for {x!r} is {m.shape}, expected {(n, n)}")
            delta[x] = m
        if set(self.delta) != set(self.alphabet):
            raise ValueError("delta must have exactly one matrix per letter")
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        elif len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for {n} states")
        else:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def n_states(self) -> int:
        return self.sigma.shape[0]

    def stacked(self) -> np.ndarray:
        """Transition matrices as one ``(k, n, n)`` array in alphabet order."""
        n = self.n_states
        if not self.alphabet:
            return np.zeros((0, n, n))
        return np.ascontiguousarray(np.stack([self.delta[x] for x in self.alphabet]))


def from_nfa(nfa, lm: LMonoid) -> FuzzyAutomaton:
    """View a crisp automaton as a fuzzy one with values in ``{0, 1}``."""
    sigma = np.zeros(nfa.n_states)
    sigma[0] = lm.one
    delta = {x: nfa.delta[x].astype(np.float64) for x in nfa.alphabet}
    return FuzzyAutomaton(nfa.alphabet, delta, sigma, nfa.finals.astype(np.float64), lm, nfa.labels)


def degree(a: FuzzyAutomaton, u) -> float:
    """``sigma o delta_x1 o ... o delta_xn o tau``, evaluated left to right."""
    code = a.lm.code
    f = a.sigma
    for x in u:
        try:
            m = a.delta[x]
        except KeyError:
            raise UnknownLetterError(f"letter {x!r} is not in the automaton alphabet") from None
        f = _kernels.vec_mat(f, m, code)
    return _kernels.vec_vec(f, a.tau, code)


def degree_table(a: FuzzyAutomaton, max_len: int, max_words: int = 2_000_000) -> LanguageSample:
    all_words = words(a.alphabet, max_len, max_words)
    values = _kernels.word_table(a.stacked(), a.sigma, a.tau, max_len, a.lm.code)
    return LanguageSample(
        a.lm.name, a.alphabet, max_len,
        {"".join(w): float(v) for w, v in zip(all_words, values)},
    )
