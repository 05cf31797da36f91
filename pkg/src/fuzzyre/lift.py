"""Lifting a fuzzy regular expression to a crisp one over a larger alphabet.

Every distinct scalar is replaced by a fresh letter ``$1, $2, ...`` (first
occurrence order). The scalar table ``phi`` maps original letters to ``1``
and each fresh letter to the scalar it stands for. A crisp word then carries
the weight ``phi*(v)``, the product of the table entries along ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import LMonoid, value_eq
from .regex import Concat, Empty, Epsilon, Regex, Scalar, Star, Sum, Sym, letters

__all__ = ["ScalarLetter", "LiftResult", "lift", "phi_star", "is_embedded", "is_scalar_letter", "unlift"]


def is_scalar_letter(symbol: str) -> bool:
    return symbol.startswith("$")


@dataclass(frozen=True)
class ScalarLetter:
    symbol: str
    value: float


@dataclass(frozen=True)
class LiftResult:
    alpha_r: Regex
    x_alphabet: tuple
    y_alphabet: tuple  # of ScalarLetter
    phi: dict = field(hash=False)

    @property
    def y_symbols(self) -> tuple:
        return tuple(y.symbol for y in self.y_alphabet)

    @property
    def alphabet(self) -> tuple:
        """The full alphabet of ``alpha_r``: original letters, then scalar letters."""
        return self.x_alphabet + self.y_symbols


def lift(alpha: Regex, lm: LMonoid) -> LiftResult:
    """Replace ``Scalar(l, b)`` by ``Concat(Sym(l'), lift(b))``.

    Scalars equal within the structure tolerance share one letter.
    """
    ys: list[ScalarLetter] = []

    def letter_for(value):
        for y in ys:
            if value_eq(lm, y.value, value):
                return y.symbol
        y = ScalarLetter(f"${len(ys) + 1}", value)
        ys.append(y)
        return y.symbol

    def go(node):
        if isinstance(node, (Empty, Epsilon, Sym)):
            return node
        if isinstance(node, Scalar):
            # the scalar letter is allocated before the child's, keeping text order
            sym = Sym(letter_for(node.value))
            return Concat(sym, go(node.child))
        if isinstance(node, Sum):
            return Sum(go(node.left), go(node.right))
        if isinstance(node, Concat):
            return Concat(go(node.left), go(node.right))
        if isinstance(node, Star):
            return Star(go(node.child))
        raise TypeError(f"not a regex node: {node!r}")

    alpha_r = go(alpha)
    xs = tuple(sorted(letters(alpha)))
    phi = {x: lm.one for x in xs}
    phi.update({y.symbol: y.value for y in ys})
    return LiftResult(alpha_r, xs, tuple(ys), phi)


def unlift(lr: LiftResult) -> Regex:
    """Re-attach scalars to a lifted expression (inverse of :func:`lift`)."""

    def go(node):
        if isinstance(node, Concat) and isinstance(node.left, Sym) and is_scalar_letter(node.left.symbol):
            return Scalar(lr.phi[node.left.symbol], go(node.right))
        if isinstance(node, Sum):
            return Sum(go(node.left), go(node.right))
        if isinstance(node, Concat):
            return Concat(go(node.left), go(node.right))
        if isinstance(node, Star):
            return Star(go(node.child))
        return node

    return go(lr.alpha_r)


def phi_star(lr: LiftResult, v, lm: LMonoid) -> float:
    """``phi(v1) (x) phi(v2) (x) ... (x) phi(vn)``; ``1`` on the empty word."""
    out = lm.one
    for a in v:
        try:
            w = lr.phi[a]
        except KeyError:
            raise KeyError(f"letter {a!r} is not in the lifted alphabet") from None
        out = lm.otimes(out, w)
    return out


def is_embedded(u, v) -> bool:
    """True iff ``u`` is a scattered subword of ``v``."""
    it = iter(v)
    return all(any(a == b for b in it) for a in u)
