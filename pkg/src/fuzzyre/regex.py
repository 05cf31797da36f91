"""Fuzzy regular expressions: AST, text syntax and direct semantics.

Grammar (whitespace between tokens is ignored)::

    expr   := term ('+' term)*
    term   := factor+
    factor := SCALAR factor | base '*'*
    base   := '(' expr ')' | LETTER | 'eps' | 'empty'
    SCALAR := [0-9]+ ('.' [0-9]+)?
    LETTER := [a-z] | '$' [0-9]+

``$k`` letters only appear in lifted (crisp) expressions. The keywords win
over letter runs, so ``eps`` is the empty word and not ``e p s``.

:func:`eval_direct` and :func:`language_table` compute the fuzzy language of
an expression straight from its definition, without any automaton. They are
the reference the constructions are checked against.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .algebra import LMonoid

__all__ = [
    "Empty",
    "Epsilon",
    "Sym",
    "Scalar",
    "Sum",
    "Concat",
    "Star",
    "Regex",
    "RegexSyntaxError",
    "BudgetExceeded",
    "LanguageSample",
    "parse",
    "render",
    "letters",
    "length",
    "scalars",
    "nodes",
    "eval_direct",
    "language_table",
    "words",
]


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Sym:
    symbol: str


@dataclass(frozen=True)
class Scalar:
    value: float
    child: "Regex"


@dataclass(frozen=True)
class Sum:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Star:
    child: "Regex"


Regex = Union[Empty, Epsilon, Sym, Scalar, Sum, Concat, Star]


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<scalar>[0-9]+(?:\.[0-9]+)?)|(?P<kw>empty|eps)|(?P<letter>[a-z]|\$[0-9]+)|(?P<op>[()+*]))"
)


def _tokenize(text):
    pos = 0
    out = []
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise RegexSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, lm):
        self.toks = _tokenize(text)
        self.i = 0
        self.lm = lm

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise RegexSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def expr(self):
        node = self.term()
        while self.peek()[1] == "+":
            self.take()
            node = Sum(node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self._starts_factor(self.peek()):
            node = Concat(node, self.factor())
        return node

    @staticmethod
    def _starts_factor(tok):
        kind, val, _ = tok
        return kind in ("scalar", "kw", "letter") or val == "("

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "scalar":
            self.take()
            value = float(val)
            if self.lm is not None:
                try:
                    value = self.lm.check(value)
                except ValueError as exc:
                    raise RegexSyntaxError(str(exc), pos) from None
            elif not 0.0 <= value <= 1.0:
                raise RegexSyntaxError(f"scalar {val} is outside [0, 1]", pos)
            return Scalar(value, self.factor())
        node = self.base()
        while self.peek()[1] == "*":
            self.take()
            node = Star(node)
        return node

    def base(self):
        kind, val, pos = self.take()
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "letter":
            return Sym(val)
        if kind == "kw":
            return Epsilon() if val == "eps" else Empty()
        raise RegexSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, lm: LMonoid | None = None) -> Regex:
    """Parse ``text``. With ``lm`` given, scalars are validated against it."""
    p = _Parser(text, lm)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise RegexSyntaxError(f"unexpected {val!r}", pos)
    return node


# ---------------------------------------------------------------- rendering


def _fmt_scalar(value):
    return np.format_float_positional(value, trim="-")


def _merges(left, right):
    vals = lambda s: [v for _, v, _ in _tokenize(s)[:-1]]
    return vals(left + right) != vals(left) + vals(right)


def render(r: Regex) -> str:
    """Inverse of :func:`parse` up to whitespace and redundant parentheses."""
    if isinstance(r, Empty):
        return "empty"
    if isinstance(r, Epsilon):
        return "eps"
    if isinstance(r, Sym):
        return r.symbol
    if isinstance(r, Sum):
        right = render(r.right)
        if isinstance(r.right, Sum):
            right = f"({right})"
        return f"{render(r.left)}+{right}"
    if isinstance(r, Concat):
        left = render(r.left)
        if isinstance(r.left, Sum):
            left = f"({left})"
        right = render(r.right)
        if isinstance(r.right, (Sum, Concat)):
            right = f"({right})"
        if left[-1].isdigit() and right[0].isdigit():
            return f"{left} {right}"  # "$1" followed by a scalar literal
        if left[-1].isalpha() and right[0].isalpha() and _merges(left, right):
            return f"{left} {right}"  # letters that would spell a keyword
        return left + right
    if isinstance(r, Scalar):
        child = render(r.child)
        if isinstance(r.child, (Sum, Concat, Scalar)):
            child = f"({child})"
        return _fmt_scalar(r.value) + child
    if isinstance(r, Star):
        child = render(r.child)
        if isinstance(r.child, (Sum, Concat, Scalar)):
            child = f"({child})"
        return child + "*"
    raise TypeError(f"not a regex node: {r!r}")


# ---------------------------------------------------------------- inspection


def nodes(r: Regex):
    """Pre-order traversal, which is also left-to-right text order."""
    stack = [r]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Sum, Concat)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Scalar, Star)):
            stack.append(node.child)


def letters(r: Regex) -> list[str]:
    """Distinct letters of ``r`` in first-occurrence order."""
    return list(dict.fromkeys(n.symbol for n in nodes(r) if isinstance(n, Sym)))


def length(r: Regex) -> int:
    """Number of letter occurrences."""
    return sum(1 for n in nodes(r) if isinstance(n, Sym))


def scalars(r: Regex) -> list[float]:
    return [n.value for n in nodes(r) if isinstance(n, Scalar)]


# ---------------------------------------------------------------- semantics


def eval_direct(r: Regex, u, lm: LMonoid) -> float:
    """Membership degree of the word ``u`` in the fuzzy language of ``r``.

    Star is evaluated over decompositions into non-empty factors only. An
    empty factor would multiply by ``||b||(eps) <= 1`` and, by isotonicity,
    can never raise the value, so this finite join equals the full one.
    """
    u = tuple(u)
    memo = {}

    def ev(node, i, j):
        key = (id(node), i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Empty):
            v = lm.zero
        elif isinstance(node, Epsilon):
            v = lm.one if i == j else lm.zero
        elif isinstance(node, Sym):
            v = lm.one if j == i + 1 and u[i] == node.symbol else lm.zero
        elif isinstance(node, Scalar):
            v = lm.otimes(node.value, ev(node.child, i, j))
        elif isinstance(node, Sum):
            v = lm.join(ev(node.left, i, j), ev(node.right, i, j))
        elif isinstance(node, Concat):
            v = lm.zero
            for k in range(i, j + 1):
                v = lm.join(v, lm.otimes(ev(node.left, i, k), ev(node.right, k, j)))
        elif isinstance(node, Star):
            if i == j:
                v = lm.one
            else:
                # first non-empty factor u[i:k], then the closure of the rest
                v = lm.zero
                for k in range(i + 1, j + 1):
                    v = lm.join(v, lm.otimes(ev(node.child, i, k), ev(node, k, j)))
        else:
            raise TypeError(f"not a regex node: {node!r}")
        memo[key] = v
        return v

    return ev(r, 0, len(u))


@dataclass
class LanguageSample:
    """Degrees of all words over ``alphabet`` up to ``max_len``, keyed by word."""

    structure: str
    alphabet: tuple
    max_len: int
    values: dict

    def __getitem__(self, word):
        return self.values["".join(word)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return self.values.items()


MAX_WORDS = 2_000_000


def words(alphabet, max_len: int, max_words: int = MAX_WORDS):
    """All words up to ``max_len`` in shortlex order, as tuples of letters."""
    k = len(alphabet)
    total = sum(k**m for m in range(max_len + 1)) if k else 1
    if total > max_words:
        raise BudgetExceeded(f"{total} words over {k} letters up to length {max_len} exceeds {max_words}")
    out = [()]
    if k:
        for m in range(1, max_len + 1):
            out.extend(itertools.product(alphabet, repeat=m))
    return out


class _Index:
    """Shortlex word indexing used by the vectorized table evaluator."""

    def __init__(self, k, max_len):
        self.k = k
        self.max_len = max_len if k else 0
        self.offset = [0]
        for m in range(self.max_len + 1):
            self.offset.append(self.offset[-1] + k**m)
        self.total = self.offset[-1]
        self._splits = {}

    def block(self, m):
        return slice(self.offset[m], self.offset[m + 1])

    def split(self, m, j):
        """Indices of the length-``j`` prefixes and the suffixes of all length-``m`` words."""
        key = (m, j)
        if key not in self._splits:
            r = np.arange(self.k**m)
            d = self.k ** (m - j)
            self._splits[key] = (self.offset[j] + r // d, self.offset[m - j] + r % d)
        return self._splits[key]


def language_table(r: Regex, max_len: int, lm: LMonoid, alphabet=None,
                   max_words: int = MAX_WORDS) -> LanguageSample:
    """Evaluate ``r`` on every word up to ``max_len``.

    This is the same recursion as :func:`eval_direct`, run once per AST node
    over the whole word table with numpy.
    """
    alphabet = tuple(letters(r) if alphabet is None else alphabet)
    all_words = words(alphabet, max_len, max_words)
    idx = _Index(len(alphabet), max_len)
    pos = {x: i for i, x in enumerate(alphabet)}
    ot = lm.otimes_array
    cache = {}

    def table(node):
        key = id(node)
        if key in cache:
            return cache[key]
        t = np.zeros(idx.total)
        if isinstance(node, Epsilon):
            t[0] = lm.one
        elif isinstance(node, Sym):
            if node.symbol in pos and idx.max_len >= 1:
                t[1 + pos[node.symbol]] = lm.one
        elif isinstance(node, Scalar):
            t = ot(node.value, table(node.child))
        elif isinstance(node, Sum):
            t = np.maximum(table(node.left), table(node.right))
        elif isinstance(node, Concat):
            tl, tr = table(node.left), table(node.right)
            for m in range(idx.max_len + 1):
                blk = t[idx.block(m)]
                for j in range(m + 1):
                    pre, suf = idx.split(m, j)
                    np.maximum(blk, ot(tl[pre], tr[suf]), out=blk)
        elif isinstance(node, Star):
            tc = table(node.child)
            t[0] = lm.one
            for m in range(1, idx.max_len + 1):
                blk = t[idx.block(m)]
                for j in range(1, m + 1):
                    pre, suf = idx.split(m, j)
                    np.maximum(blk, ot(tc[pre], t[suf]), out=blk)
        elif not isinstance(node, Empty):
            raise TypeError(f"not a regex node: {node!r}")
        cache[key] = t
        return t

    values = table(r)
    return LanguageSample(
        lm.name, alphabet, max_len,
        {"".join(w): float(v) for w, v in zip(all_words, values)},
    )
