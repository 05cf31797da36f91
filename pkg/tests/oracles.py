"""Independent reference implementations used only by the tests.

Nothing here calls into the package's evaluators; they share only the AST
classes and the scalar operations of the structures.
"""

import itertools

import numpy as np

from fuzzyre.regex import Concat, Empty, Epsilon, Scalar, Star, Sum, Sym


# Derivatives of fuzzy expressions. nu() is the degree of the empty word;
# d(a, r) denotes the expression whose language is u -> ||r||(a u).

def nu(r, lm):
    if isinstance(r, Empty) or isinstance(r, Sym):
        return 0.0
    if isinstance(r, (Epsilon, Star)):
        return 1.0
    if isinstance(r, Scalar):
        return lm.otimes(r.value, nu(r.child, lm))
    if isinstance(r, Sum):
        return max(nu(r.left, lm), nu(r.right, lm))
    if isinstance(r, Concat):
        return lm.otimes(nu(r.left, lm), nu(r.right, lm))
    raise TypeError(r)


def _simplify_sum(a, b):
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    return Sum(a, b)


def _simplify_cat(a, b):
    if isinstance(a, Empty) or isinstance(b, Empty):
        return Empty()
    if isinstance(a, Epsilon):
        return b
    return Concat(a, b)


def deriv(a, r, lm):
    if isinstance(r, (Empty, Epsilon)):
        return Empty()
    if isinstance(r, Sym):
        return Epsilon() if r.symbol == a else Empty()
    if isinstance(r, Scalar):
        d = deriv(a, r.child, lm)
        return Empty() if isinstance(d, Empty) or r.value == 0.0 else Scalar(r.value, d)
    if isinstance(r, Sum):
        return _simplify_sum(deriv(a, r.left, lm), deriv(a, r.right, lm))
    if isinstance(r, Concat):
        left = _simplify_cat(deriv(a, r.left, lm), r.right)
        n = nu(r.left, lm)
        if n == 0.0:
            return left
        right = deriv(a, r.right, lm)
        if isinstance(right, Empty):
            return left
        return _simplify_sum(left, right if n == 1.0 else Scalar(n, right))
    if isinstance(r, Star):
        return _simplify_cat(deriv(a, r.child, lm), r)
    raise TypeError(r)


def deriv_degree(r, u, lm):
    for a in u:
        r = deriv(a, r, lm)
        if isinstance(r, Empty):
            return 0.0
    return nu(r, lm)


# Relations as plain Python loops.

def naive_compose(r, s, lm):
    n, m = len(r), len(s[0]) if len(s) else 0
    out = np.zeros((n, m))
    for i in range(n):
        for j in range(m):
            best = 0.0
            for k in range(len(s)):
                best = max(best, lm.otimes(r[i][k], s[k][j]))
            out[i, j] = best
    return out


def naive_closure(r, lm):
    """Join of R^0, R^1, ..., R^(n) computed without squaring."""
    n = len(r)
    acc = np.eye(n)
    p = np.eye(n)
    for _ in range(n):
        p = naive_compose(p, r, lm)
        acc = np.maximum(acc, p)
    return acc


def set_compose(r, s):
    """Relational composition of crisp relations given as sets of pairs."""
    return {(a, c) for (a, b) in r for (b2, c) in s if b == b2}


def all_partitions(n):
    """Every set partition of range(n) as a tuple of class indices (restricted growth strings)."""
    if n == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            yield from grow(prefix + [c], max(top, c))

    yield from grow([0], 0)


def random_crisp(rng, n, alphabet, density=0.3, final_p=0.4):
    delta = {x: rng.random((n, n)) < density for x in alphabet}
    finals = rng.random(n) < final_p
    return delta, finals


def words_upto(alphabet, max_len):
    for m in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=m)


def blown_up(rng, n, k, alphabet, values=(0.0, 0.25, 0.5, 0.75, 1.0), crisp=False):
    """Random automaton on n states that is right invariant for a planted partition.

    A random k-state quotient is drawn first; each state then picks, per
    letter and target class, one member carrying the quotient value, while
    the other members get smaller values. Rows of delta o E are therefore
    constant on classes. Returns (delta, tau, class_of).
    """
    class_of = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
    rng.shuffle(class_of)
    pick = (lambda size: rng.random(size) < 0.35) if crisp else (lambda size: rng.choice(values, size))
    quot = {x: np.where(rng.random((k, k)) < 0.5, pick((k, k)), 0.0).astype(float) for x in alphabet}
    qtau = pick(k).astype(float)
    delta = {}
    for x in alphabet:
        m = np.zeros((n, n))
        for i in range(n):
            for c in range(k):
                members = np.flatnonzero(class_of == c)
                v = quot[x][class_of[i], c]
                if v == 0.0:
                    continue
                below = [w for w in values if w < v] if not crisp else [0.0]
                m[i, members] = rng.choice(below, len(members))
                m[i, rng.choice(members)] = v
        delta[x] = m
    tau = qtau[class_of]
    return delta, tau, tuple(int(c) for c in class_of)
