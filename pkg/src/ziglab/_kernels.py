"""Integer-only hot loops, each in two interchangeable implementations.

Every kernel exists as a plain loop compiled with numba (``nb_*``) and as a
vectorised numpy routine (``np_*``). The public names bind to the numba
versions unless numba is missing or ``ZIGLAB_DISABLE_JIT`` is set to a truthy
value at import time. Both paths return identical results; all comparisons of
fractions are exact cross-multiplications in int64.

Callers are responsible for keeping inputs inside int64 range; the wrappers in
:mod:`ziglab.rotnum`, :mod:`ziglab.boxes` and :mod:`ziglab.dynamics` check this.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("ZIGLAB_DISABLE_JIT", "").strip().lower()
JIT_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA and not JIT_DISABLED else "numpy"

# largest scan length the kernels accept for rot_max; beyond it the caller
# falls back to Python integers
ROT_SCAN_LIMIT = 1 << 20
# below this scan length the numpy path runs the plain loop instead
_NP_SMALL_SCAN = 256


# ---------------------------------------------------------------- loop bodies
# Written in the numba-compatible subset; also callable as plain Python.


def _loop_rot_max_best_q(a, b, c, d, L):
    best_s = 1
    best_q = 1
    for q in range(2, L + 1):
        s = (q * a) // b + (q * c) // d + 1
        if s * best_q > best_s * q:
            best_s = s
            best_q = q
    return best_q


def _loop_rotation_of(w, n):
    x = 0
    for _ in range(n):
        x = w[x % n] + (x // n) * n
    r0 = x % n
    x0 = x
    steps = 0
    while True:
        x = w[x % n] + (x // n) * n
        steps += 1
        if x % n == r0:
            break
    return x - x0, steps * n


def _loop_lift_rotations(V, n):
    M = V.shape[0]
    num = np.empty(M, dtype=np.int64)
    den = np.empty(M, dtype=np.int64)
    for i in range(M):
        dr, dn = _rotation_of(V[i], n)
        g = _gcd(abs(dr), dn)
        num[i] = dr // g
        den[i] = dn // g
    return num, den


def _loop_compose_into(f, g, n, out):
    for i in range(n):
        v = g[i]
        out[i] = f[v % n] + (v // n) * n


def _loop_gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _loop_sweep_bounds(V, n, cls, up_num, up_den, lo_num, lo_den):
    M = V.shape[0]
    w = np.empty(n, dtype=np.int64)
    n_up = 0
    n_lo = 0
    first_up = (-1, -1)
    first_lo = (-1, -1)
    for i in range(M):
        ci = cls[i]
        for j in range(M):
            cj = cls[j]
            _compose_into(V[i], V[j], n, w)
            dr, dn = _rotation_of(w, n)
            if dr * up_den[ci, cj] > up_num[ci, cj] * dn:
                if n_up == 0:
                    first_up = (i, j)
                n_up += 1
            if dr * lo_den[ci, cj] < lo_num[ci, cj] * dn:
                if n_lo == 0:
                    first_lo = (i, j)
                n_lo += 1
    return M * M, n_up, n_lo, first_up, first_lo


def _loop_max_composition(F, G, n):
    w = np.empty(n, dtype=np.int64)
    best_num = 0
    best_den = 0
    bi = -1
    bj = -1
    for i in range(F.shape[0]):
        for j in range(G.shape[0]):
            _compose_into(F[i], G[j], n, w)
            dr, dn = _rotation_of(w, n)
            if bi < 0 or dr * best_den > best_num * dn:
                best_num = dr
                best_den = dn
                bi = i
                bj = j
    g = _gcd(abs(best_num), best_den) if bi >= 0 else 1
    return best_num // g, best_den // g, bi, bj


def _loop_box_heights(xn, xd, yn, yd, K, M):
    P = xn.shape[0]
    out = np.full(P, -1, dtype=np.int64)
    for p in range(P):
        best = -1
        for b in range(K.shape[0]):
            m = M[b]
            if K[b, 0] * xd[p] < xn[p] * m or K[b, 1] * yd[p] < yn[p] * m:
                continue
            if best < 0 or K[b, 2] * M[best] > K[best, 2] * m:
                best = b
        out[p] = best
    return out


def _loop_nested_pairs(K, M):
    B = K.shape[0]
    count = 0
    first = (-1, -1)
    for i in range(B):
        mi = M[i]
        for j in range(B):
            if i == j:
                continue
            mj = M[j]
            if (K[j, 0] * mi <= K[i, 0] * mj and K[j, 1] * mi <= K[i, 1] * mj
                    and K[j, 2] * mi <= K[i, 2] * mj):
                if count == 0:
                    first = (i, j)
                count += 1
    return B * (B - 1), count, first


if HAVE_NUMBA:
    _gcd = njit(cache=True)(_loop_gcd)
    _rotation_of = njit(cache=True)(_loop_rotation_of)
    _compose_into = njit(cache=True)(_loop_compose_into)
    nb_rot_max_best_q = njit(cache=True)(_loop_rot_max_best_q)
    nb_lift_rotations = njit(cache=True)(_loop_lift_rotations)
    nb_sweep_bounds = njit(cache=True)(_loop_sweep_bounds)
    nb_max_composition = njit(cache=True)(_loop_max_composition)
    nb_box_heights = njit(cache=True)(_loop_box_heights)
    nb_nested_pairs = njit(cache=True)(_loop_nested_pairs)
else:  # pragma: no cover
    _gcd = _loop_gcd
    _rotation_of = _loop_rotation_of
    _compose_into = _loop_compose_into
    nb_rot_max_best_q = nb_lift_rotations = nb_sweep_bounds = None
    nb_max_composition = nb_box_heights = nb_nested_pairs = None


# ---------------------------------------------------------------- numpy path


def np_rot_max_best_q(a, b, c, d, L):
    if L <= _NP_SMALL_SCAN:
        # array setup costs more than the scan itself
        return _loop_rot_max_best_q(a, b, c, d, L)
    q = np.arange(1, L + 1, dtype=np.int64)
    s = (q * a) // b + (q * c) // d + 1
    vals = s / q
    # distinct values s/q with q <= L differ by at least 1/L**2, far above
    # float64 rounding for L <= ROT_SCAN_LIMIT; the float pass only shortlists
    cand = np.flatnonzero(vals >= vals.max() - 0.5 / (float(L) * L))
    best = int(cand[0])
    for k in cand[1:]:
        if int(s[k]) * int(q[best]) > int(s[best]) * int(q[k]):
            best = int(k)
    return best + 1


def _np_rotations(W, n):
    """Unreduced (drift, steps*n) for every row of W."""
    rows = np.arange(W.shape[0])
    x = np.zeros(W.shape[0], dtype=np.int64)
    for _ in range(n):
        x = W[rows, x % n] + (x // n) * n
    x0 = x.copy()
    r0 = x % n
    drift = np.zeros_like(x)
    steps = np.zeros_like(x)
    open_ = np.ones(W.shape[0], dtype=bool)
    for k in range(1, n + 1):
        x = W[rows, x % n] + (x // n) * n
        hit = open_ & (x % n == r0)
        drift[hit] = x[hit] - x0[hit]
        steps[hit] = k
        open_ &= ~hit
        if not open_.any():
            break
    return drift, steps * n


def np_lift_rotations(V, n):
    dr, dn = _np_rotations(V, n)
    g = np.gcd(dr, dn)
    return dr // g, dn // g


def _np_compose_row(f, G, n):
    return f[G % n] + (G // n) * n


def np_sweep_bounds(V, n, cls, up_num, up_den, lo_num, lo_den):
    M = V.shape[0]
    n_up = n_lo = 0
    first_up = first_lo = (-1, -1)
    for i in range(M):
        dr, dn = _np_rotations(_np_compose_row(V[i], V, n), n)
        ci = cls[i]
        bad_up = dr * up_den[ci, cls] > up_num[ci, cls] * dn
        bad_lo = dr * lo_den[ci, cls] < lo_num[ci, cls] * dn
        cu, cl = int(bad_up.sum()), int(bad_lo.sum())
        if cu and n_up == 0:
            first_up = (i, int(np.argmax(bad_up)))
        if cl and n_lo == 0:
            first_lo = (i, int(np.argmax(bad_lo)))
        n_up += cu
        n_lo += cl
    return M * M, n_up, n_lo, first_up, first_lo


def np_max_composition(F, G, n):
    best_num = best_den = 0
    bi = bj = -1
    for i in range(F.shape[0]):
        dr, dn = _np_rotations(_np_compose_row(F[i], G, n), n)
        # rotation numbers here have denominators <= n**2, so distinct values
        # are >= 1/n**4 apart and the float argmax is exact
        j = int(np.argmax(dr / dn))
        if bi < 0 or int(dr[j]) * best_den > best_num * int(dn[j]):
            best_num, best_den, bi, bj = int(dr[j]), int(dn[j]), i, j
    if bi < 0:
        return 0, 0, -1, -1
    g = np.gcd(abs(best_num), best_den)
    return best_num // g, best_den // g, bi, bj


def np_box_heights(xn, xd, yn, yd, K, M):
    out = np.full(xn.shape[0], -1, dtype=np.int64)
    az = K[:, 2] / M
    for p in range(xn.shape[0]):
        mask = (K[:, 0] * xd[p] >= xn[p] * M) & (K[:, 1] * yd[p] >= yn[p] * M)
        if not mask.any():
            continue
        idx = np.flatnonzero(mask)
        c = idx[np.argmax(az[idx])]
        # exact tie-break: first index attaining the exact maximum
        ge = K[idx, 2] * M[c] >= K[c, 2] * M[idx]
        out[p] = idx[np.argmax(ge)]
    return out


def np_nested_pairs(K, M):
    B = K.shape[0]
    count = 0
    first = (-1, -1)
    idx = np.arange(B)
    for i in range(B):
        inside = ((K[:, 0] * M[i] <= K[i, 0] * M) & (K[:, 1] * M[i] <= K[i, 1] * M)
                  & (K[:, 2] * M[i] <= K[i, 2] * M) & (idx != i))
        c = int(inside.sum())
        if c and count == 0:
            first = (i, int(np.argmax(inside)))
        count += c
    return B * (B - 1), count, first


IMPLEMENTATIONS = {
    "numpy": {
        "rot_max_best_q": np_rot_max_best_q,
        "lift_rotations": np_lift_rotations,
        "sweep_bounds": np_sweep_bounds,
        "max_composition": np_max_composition,
        "box_heights": np_box_heights,
        "nested_pairs": np_nested_pairs,
    },
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "rot_max_best_q": nb_rot_max_best_q,
        "lift_rotations": nb_lift_rotations,
        "sweep_bounds": nb_sweep_bounds,
        "max_composition": nb_max_composition,
        "box_heights": nb_box_heights,
        "nested_pairs": nb_nested_pairs,
    }

_active = IMPLEMENTATIONS[BACKEND]
rot_max_best_q = _active["rot_max_best_q"]
lift_rotations = _active["lift_rotations"]
sweep_bounds = _active["sweep_bounds"]
max_composition = _active["max_composition"]
box_heights = _active["box_heights"]
nested_pairs = _active["nested_pairs"]
