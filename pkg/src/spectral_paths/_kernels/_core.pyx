# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; same contract as ``_fallback``."""
import numpy as np
cimport numpy as cnp

from ._fallback import KernelCapExceeded

cnp.import_array()


def enumerate_spin_windows(int l, int k, int emax, int width, long max_count=-1):
    if width < 0 or emax < 0:
        raise ValueError("width and emax must be non-negative")
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64)

    cdef int g0 = l - 2 * k
    cdef int nspin = l + 1
    cdef long cap = 1024
    cdef long n = 0
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((cap, width), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] energies = np.empty(cap, dtype=np.int64)

    # per-depth state, 1-based positions 1..width, slot width+1 is the ground seam
    cdef cnp.ndarray[cnp.int64_t, ndim=1] s = np.zeros(width + 2, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tail = np.zeros(width + 2, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cost = np.zeros(width + 2, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] choice = np.zeros(width + 2, dtype=np.int64)

    cdef int i = width
    cdef long sp, nxt, h, hg, d, c, j
    s[width + 1] = g0 if (width + 1) % 2 else -g0
    choice[i] = 0

    while i <= width:
        if choice[i] >= nspin:
            i += 1
            if i <= width:
                choice[i] += 1
            continue
        sp = l - 2 * choice[i]
        nxt = s[i + 1]
        hg = k if i % 2 else l - k
        if sp + nxt >= 0:
            h = (nxt + l) // 2
        else:
            h = (l - sp) // 2
        d = tail[i + 1] + h - hg
        c = cost[i + 1] + d
        if c > emax:
            choice[i] += 1
            continue
        s[i] = sp
        tail[i] = d
        cost[i] = c
        if i == 1:
            if max_count >= 0 and n >= max_count:
                raise KernelCapExceeded(max_count)
            if n == cap:
                cap *= 2
                out = np.resize(out, (cap, width))
                energies = np.resize(energies, cap)
            for j in range(width):
                out[n, j] = s[j + 1]
            energies[n] = c
            n += 1
            choice[i] += 1
        else:
            i -= 1
            choice[i] = 0

    return out[:n].copy(), energies[:n].copy()
