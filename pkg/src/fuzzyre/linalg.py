"""Dense fuzzy relations and fuzzy sets as numpy arrays.

A fuzzy relation on ``n`` states is an ``(n, n)`` float64 array, a fuzzy
set an ``(n,)`` array. Composition is the max-otimes matrix product of the
ambient structure; argument order is always preserved.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .algebra import LMonoid

__all__ = [
    "DimensionError",
    "as_matrix",
    "as_vector",
    "identity",
    "compose",
    "vec_mat",
    "mat_vec",
    "vec_vec",
    "power",
    "is_reflexive",
    "leq",
    "allclose",
    "reflexive_transitive_closure",
]


class DimensionError(ValueError):
    pass


def as_matrix(values) -> np.ndarray:
    m = np.ascontiguousarray(values, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(values) -> np.ndarray:
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {v.shape}")
    return v


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.float64)


def compose(r, s, lm: LMonoid) -> np.ndarray:
    """``(R o S)(a, b) = join_c R(a, c) (x) S(c, b)``."""
    r, s = as_matrix(r), as_matrix(s)
    if r.shape != s.shape:
        raise DimensionError(f"cannot compose {r.shape} with {s.shape}")
    return _kernels.compose(r, s, lm.code)


def vec_mat(f, r, lm: LMonoid) -> np.ndarray:
    f, r = as_vector(f), as_matrix(r)
    if f.shape[0] != r.shape[0]:
        raise DimensionError(f"vector of length {f.shape[0]} against {r.shape} matrix")
    return _kernels.vec_mat(f, r, lm.code)


def mat_vec(r, f, lm: LMonoid) -> np.ndarray:
    r, f = as_matrix(r), as_vector(f)
    if f.shape[0] != r.shape[1]:
        raise DimensionError(f"{r.shape} matrix against vector of length {f.shape[0]}")
    return _kernels.mat_vec(r, f, lm.code)


def vec_vec(f, g, lm: LMonoid) -> float:
    f, g = as_vector(f), as_vector(g)
    if f.shape != g.shape:
        raise DimensionError(f"vectors of length {f.shape[0]} and {g.shape[0]}")
    return _kernels.vec_vec(f, g, lm.code)


def power(r, k: int, lm: LMonoid) -> np.ndarray:
    """``R^k`` with ``R^0`` the crisp equality."""
    r = as_matrix(r)
    out = identity(r.shape[0])
    for _ in range(k):
        out = compose(out, r, lm)
    return out


def is_reflexive(r, lm: LMonoid) -> bool:
    d = np.diagonal(as_matrix(r))
    return bool(np.all(np.abs(d - lm.one) <= lm.tolerance))


def leq(a, b, lm: LMonoid) -> bool:
    """Entrywise inclusion ``a <= b`` up to tolerance."""
    return bool(np.all(np.asarray(a) <= np.asarray(b) + lm.tolerance))


def allclose(a, b, lm: LMonoid) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= lm.tolerance))


def reflexive_transitive_closure(r, lm: LMonoid) -> np.ndarray:
    """Least transitive relation containing a reflexive ``R``.

    For reflexive ``R`` on ``n`` states this equals ``R^n``. Squaring stops as
    soon as ``R^(2k) = R^k``, which is usually after ``log2 n`` steps.
    """
    c = as_matrix(r)
    if not is_reflexive(c, lm):
        raise ValueError("closure requires a reflexive relation (diagonal equal to 1)")
    n = c.shape[0]
    reach = 1
    while True:
        sq = compose(c, c, lm)
        if np.array_equal(sq, c):
            return c
        c = sq
        reach *= 2
        if reach >= n:
            # R^m = R^n for every m >= n
            return c
