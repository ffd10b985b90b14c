"""Compiled numeric kernels.

Two loops dominate the package runtime: compensated running sums of weight
values (needed up to a few 1e8 terms by the block-size scan) and the
exhaustive subsequence search used as the Garling norm oracle.  Both are
plain sequential loops, so they are jitted with numba when it is available
and fall back to equivalent pure Python otherwise.  The fallback produces
bit-identical results; it is only slower.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the _PY fallbacks
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def _kahan_scan_py(w, s0, c0):
    out = np.empty(w.shape[0])
    s = s0
    c = c0
    for i in range(w.shape[0]):
        y = w[i] - c
        t = s + y
        c = (t - s) - y
        s = t
        out[i] = s
    return out, s, c


def _kahan_state_py(w, s0, c0):
    s = s0
    c = c0
    for i in range(w.shape[0]):
        y = w[i] - c
        t = s + y
        c = (t - s) - y
        s = t
    return s, c


def _garling_subset_max_py(vp, wk):
    m = vp.shape[0]
    best = 0.0
    for mask in range(1, 1 << m):
        acc = 0.0
        rank = 0
        for i in range(m):
            if mask & (1 << i):
                acc += vp[i] * wk[rank]
                rank += 1
        if acc > best:
            best = acc
    return best


if HAVE_NUMBA:
    kahan_scan = njit(cache=True)(_kahan_scan_py)
    kahan_state = njit(cache=True)(_kahan_state_py)
    garling_subset_max = njit(cache=True)(_garling_subset_max_py)
else:  # pragma: no cover
    kahan_scan = _kahan_scan_py
    kahan_state = _kahan_state_py
    garling_subset_max = _garling_subset_max_py
