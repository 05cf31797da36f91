"""Seeded random corpus and the oracle-vs-automaton comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import STRUCTURES, LMonoid, make_structure
from .automaton import degree_table
from .lift import lift
from .position import glushkov
from .regex import Concat, Empty, Epsilon, Regex, Scalar, Star, Sum, Sym, language_table, render
from .synthesis import synthesize_full, synthesize_reduced

__all__ = ["SCALARS", "random_regex", "corpus", "Mismatch", "check_case", "run_fuzz"]

SCALARS = (0.0, 0.25, 0.5, 0.75, 1.0)
LETTERS = ("x", "y", "z")


def random_regex(rng: random.Random, depth: int, alphabet=LETTERS, scalars=SCALARS) -> Regex:
    """A random AST of height at most ``depth`` (leaves have height 0)."""
    if depth <= 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.08:
            return Empty()
        if roll < 0.18:
            return Epsilon()
        return Sym(rng.choice(alphabet))
    kinds = ("sum", "concat", "concat", "star", "scalar") if scalars else ("sum", "concat", "concat", "star")
    kind = rng.choice(kinds)
    if kind == "sum":
        return Sum(random_regex(rng, depth - 1, alphabet, scalars),
                   random_regex(rng, depth - 1, alphabet, scalars))
    if kind == "concat":
        return Concat(random_regex(rng, depth - 1, alphabet, scalars),
                      random_regex(rng, depth - 1, alphabet, scalars))
    if kind == "star":
        return Star(random_regex(rng, depth - 1, alphabet, scalars))
    return Scalar(rng.choice(scalars), random_regex(rng, depth - 1, alphabet, scalars))


def corpus(n_cases: int, seed: int, max_depth: int = 4, structure: str = "godel"):
    """Yield ``(index, regex)``; case ``i`` depends only on ``seed`` and ``i``."""
    scalars = (0.0, 1.0) if structure == "boolean" else SCALARS
    for i in range(n_cases):
        rng = random.Random(f"{seed}-{i}")
        k = rng.randint(1, len(LETTERS))
        yield i, random_regex(rng, max_depth, LETTERS[:k], scalars)


@dataclass
class Mismatch:
    structure: str
    case: int
    expr: str
    variant: str
    word: str
    expected: float
    got: float
    seed: int
    max_depth: int
    max_len: int

    def reproducer(self) -> str:
        return (f"fuzzyre eval --structure {self.structure} --expr '{self.expr}'"
                f"{' --reduced' if self.variant == 'reduced' else ''} --word '{self.word or 'eps'}'"
                f"  # case {self.case} of fuzz --seed {self.seed} --max-depth {self.max_depth}"
                f" --max-len {self.max_len}: expected {self.expected!r}, got {self.got!r}")


def check_case(alpha: Regex, lm: LMonoid, max_len: int):
    """Compare both synthesized automata with the oracle on every word.

    Returns ``None`` or ``(variant, word, expected, got)`` for the first
    difference in shortlex order.
    """
    lr = lift(alpha, lm)
    nfa = glushkov(lr.alpha_r)
    oracle = language_table(alpha, max_len, lm, lr.x_alphabet)
    want = np.fromiter(oracle.values.values(), dtype=np.float64, count=len(oracle))
    keys = list(oracle.values)
    for variant, build in (("full", synthesize_full), ("reduced", synthesize_reduced)):
        got = degree_table(build(nfa, lr, lm), max_len)
        arr = np.fromiter(got.values.values(), dtype=np.float64, count=len(got))
        bad = np.flatnonzero(np.abs(arr - want) > lm.tolerance)
        if len(bad):
            i = bad[0]
            return variant, keys[i], float(want[i]), float(arr[i])
    return None


def run_fuzz(n_cases: int, seed: int, max_depth: int = 4, max_len: int = 6, structures=STRUCTURES):
    """Run the corpus on every structure; stop at the first mismatch.

    Returns ``(cases_checked, mismatch_or_None)``.
    """
    checked = 0
    for name in structures:
        lm = make_structure(name)
        for i, alpha in corpus(n_cases, seed, max_depth, name):
            found = check_case(alpha, lm, max_len)
            checked += 1
            if found is not None:
                variant, word, want, got = found
                return checked, Mismatch(name, i, render(alpha), variant, word, want, got,
                                         seed, max_depth, max_len)
    return checked, None
