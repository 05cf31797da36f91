"""Max-otimes kernels with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``FUZZYRE_DISABLE_NUMBA`` is
unset (or set to ``0``). Both paths take float64 arrays and the integer
opcode of the structure (see :mod:`fuzzyre.algebra`), and return identical
results: every join is a ``max``, so summation order does not matter.
"""

import os

import numpy as np

GODEL, PRODUCT, LUKASIEWICZ, BOOLEAN = 0, 1, 2, 3

_flag = os.environ.get("FUZZYRE_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("disabled by FUZZYRE_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None


def otimes_np(a, b, op):
    if op == PRODUCT:
        return np.multiply(a, b)
    if op == LUKASIEWICZ:
        # a + b - 1 rounds; keep the unit law exact
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
        v = np.maximum(a + b - 1.0, 0.0)
        return np.where(b == 1.0, a, np.where(a == 1.0, b, v))
    return np.minimum(a, b)


def compose_np(a, b, op):
    return otimes_np(a[:, :, None], b[None, :, :], op).max(axis=1, initial=0.0)


def vec_mat_np(f, r, op):
    return otimes_np(f[:, None], r, op).max(axis=0, initial=0.0)


def mat_vec_np(r, f, op):
    return otimes_np(r, f[None, :], op).max(axis=1, initial=0.0)


def vec_vec_np(f, g, op):
    return float(otimes_np(f, g, op).max(initial=0.0))


def word_table_np(delta, sigma, tau, max_len, op):
    """Degrees of every word up to ``max_len`` in shortlex order.

    ``delta`` has shape ``(k, n, n)``, one matrix per letter. The word with
    letter indices ``i1 .. im`` sits at ``offset(m) + (i1 .. im in base k)``.
    """
    k = delta.shape[0]
    level = sigma[None, :]
    out = [otimes_np(level, tau[None, :], op).max(axis=1, initial=0.0)]
    for _ in range(max_len if k else 0):
        # (m, n) x (k, n, n) -> (m, k, n); row-major flattening keeps shortlex order
        nxt = otimes_np(level[:, None, :, None], delta[None, :, :, :], op).max(axis=2, initial=0.0)
        level = nxt.reshape(-1, delta.shape[1])
        out.append(otimes_np(level, tau[None, :], op).max(axis=1, initial=0.0))
    return np.concatenate(out)


NUMPY = {
    "compose": compose_np,
    "vec_mat": vec_mat_np,
    "mat_vec": mat_vec_np,
    "vec_vec": vec_vec_np,
    "word_table": word_table_np,
}

NUMBA = None

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _ot(a, b, op):
        if op == PRODUCT:
            return a * b
        if op == LUKASIEWICZ:
            if b == 1.0:
                return a
            if a == 1.0:
                return b
            v = a + b - 1.0
            return v if v > 0.0 else 0.0
        return a if a <= b else b

    @njit(cache=True, nogil=True)
    def compose_nb(a, b, op):
        n, m = a.shape
        p = b.shape[1]
        out = np.zeros((n, p))
        for i in range(n):
            for c in range(m):
                aic = a[i, c]
                if aic == 0.0:
                    continue
                for j in range(p):
                    v = _ot(aic, b[c, j], op)
                    if v > out[i, j]:
                        out[i, j] = v
        return out

    @njit(cache=True, nogil=True)
    def vec_mat_nb(f, r, op):
        n, p = r.shape
        out = np.zeros(p)
        for c in range(n):
            fc = f[c]
            if fc == 0.0:
                continue
            for j in range(p):
                v = _ot(fc, r[c, j], op)
                if v > out[j]:
                    out[j] = v
        return out

    @njit(cache=True, nogil=True)
    def mat_vec_nb(r, f, op):
        n, p = r.shape
        out = np.zeros(n)
        for i in range(n):
            best = 0.0
            for c in range(p):
                v = _ot(r[i, c], f[c], op)
                if v > best:
                    best = v
            out[i] = best
        return out

    @njit(cache=True, nogil=True)
    def _vec_vec(f, g, op):
        best = 0.0
        for i in range(f.shape[0]):
            v = _ot(f[i], g[i], op)
            if v > best:
                best = v
        return best

    def vec_vec_nb(f, g, op):
        return float(_vec_vec(f, g, op))

    @njit(cache=True, nogil=True)
    def word_table_nb(delta, sigma, tau, max_len, op):
        k = delta.shape[0]
        n = delta.shape[1]
        if k == 0:
            max_len = 0
        total = 0
        width = 1
        for _ in range(max_len + 1):
            total += width
            width *= k
        out = np.zeros(total)
        level = np.zeros((1, n))
        level[0, :] = sigma
        pos = 0
        for m in range(max_len + 1):
            rows = level.shape[0]
            for r in range(rows):
                best = 0.0
                for c in range(n):
                    v = _ot(level[r, c], tau[c], op)
                    if v > best:
                        best = v
                out[pos] = best
                pos += 1
            if m == max_len:
                break
            nxt = np.zeros((rows * k, n))
            for r in range(rows):
                for x in range(k):
                    row = r * k + x
                    for c in range(n):
                        lc = level[r, c]
                        if lc == 0.0:
                            continue
                        for j in range(n):
                            v = _ot(lc, delta[x, c, j], op)
                            if v > nxt[row, j]:
                                nxt[row, j] = v
            level = nxt
        return out

    NUMBA = {
        "compose": compose_nb,
        "vec_mat": vec_mat_nb,
        "mat_vec": mat_vec_nb,
        "vec_vec": vec_vec_nb,
        "word_table": word_table_nb,
    }

BACKEND = "numba" if HAVE_NUMBA else "numpy"
_impl = NUMBA if HAVE_NUMBA else NUMPY

compose = _impl["compose"]
vec_mat = _impl["vec_mat"]
mat_vec = _impl["mat_vec"]
vec_vec = _impl["vec_vec"]
word_table = _impl["word_table"]


def warmup():
    """Trigger JIT compilation (a no-op on the numpy path)."""
    z = np.zeros((2, 2))
    v = np.zeros(2)
    for op in (GODEL, PRODUCT, LUKASIEWICZ, BOOLEAN):
        compose(z, z, op)
        vec_mat(v, z, op)
        mat_vec(z, v, op)
        vec_vec(v, v, op)
        word_table(np.zeros((1, 2, 2)), v, v, 1, op)
