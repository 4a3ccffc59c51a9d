"""Pure-Python enumeration kernel (reference for the compiled one)."""
from __future__ import annotations

import numpy as np


class KernelCapExceeded(RuntimeError):
    pass


def enumerate_spin_windows(l: int, k: int, emax: int, width: int, max_count: int = -1):
    """All spin windows ``(s_1..s_width)`` with energy ``<= emax``.

    Spins beyond ``width`` are fixed to the k-th ground state.  Windows are
    grown right to left; the running cost is the sum of tail sums
    ``D_i = sum_{j>=i} (h_j - h_j^(k))``, each of which is non-negative for
    any valid suffix, so pruning on ``cost > emax`` is exact.

    Returns ``(spins, energies)``: an ``(n, width)`` int64 array and an
    ``(n,)`` int64 array, in depth-first order.
    """
    if width < 0 or emax < 0:
        raise ValueError("width and emax must be non-negative")
    g0 = l - 2 * k
    spins_alphabet = list(range(l, -l - 1, -2))
    s = [0] * (width + 2)
    s[width + 1] = g0 if (width + 1) % 2 else -g0
    out_spins: list[list[int]] = []
    out_e: list[int] = []

    def rec(i: int, tail: int, cost: int):
        nxt = s[i + 1]
        hg = k if i % 2 else l - k
        for sp in spins_alphabet:
            h = (nxt + l) // 2 if sp + nxt >= 0 else (l - sp) // 2
            d = tail + h - hg
            c = cost + d
            if c > emax:
                continue
            s[i] = sp
            if i == 1:
                if 0 <= max_count <= len(out_e):
                    raise KernelCapExceeded(max_count)
                out_spins.append(s[1 : width + 1])
                out_e.append(c)
            else:
                rec(i - 1, d, c)

    if width == 0:
        out_spins.append([])
        out_e.append(0)
    else:
        rec(width, 0, 0)
    arr = np.array(out_spins, dtype=np.int64).reshape(len(out_e), width)
    return arr, np.array(out_e, dtype=np.int64)
