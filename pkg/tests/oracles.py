"""Slow, independent reference implementations used by the tests.

Nothing here imports the package: every quantity is recomputed from its
definition with plain lists and dicts.
"""
from __future__ import annotations

import itertools
from collections import Counter


# -- polynomials as coefficient lists ----------------------------------


def pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def pdiv_exact(a, b):
    """Exact division of integer polynomials (b monic at degree 0 up to sign)."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q)):
        c = a[i] // b[0]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a), "division was not exact"
    return q


def poch(n):
    out = [1]
    for i in range(1, n + 1):
        f = [0] * (i + 1)
        f[0], f[i] = 1, -1
        out = pmul(out, f)
    return out


def gauss(N, n):
    if n < 0 or n > N:
        return [0]
    return pdiv_exact(poch(N), pmul(poch(n), poch(N - n)))


def as_dict(coeffs, order=None):
    return {e: c for e, c in enumerate(coeffs) if c and (order is None or e <= order)}


def series_inverse(coeffs, order):
    t = [0] * (order + 1)
    t[0] = 1 // coeffs[0]
    for m in range(1, order + 1):
        t[m] = -coeffs[0] * sum(
            coeffs[e] * t[m - e] for e in range(1, min(m, len(coeffs) - 1) + 1)
        )
    return t


# -- the vertex model -----------------------------------------------------


def H(s, s2, l):
    return (s2 + l) // 2 if s + s2 >= 0 else (l - s) // 2


def ground_spin(l, k, i):
    return l - 2 * k if i % 2 else -(l - 2 * k)


def ground_h(l, k, i):
    return k if i % 2 else l - k


def spin_energy(spins, l, k):
    """Energy of a spin string that equals the ground state after it."""
    W = len(spins)
    s = list(spins) + [ground_spin(l, k, W + 1), ground_spin(l, k, W + 2)]
    return sum(
        i * (H(s[i - 1], s[i], l) - ground_h(l, k, i)) for i in range(1, W + 1)
    )


def spin_weight(spins, l, k):
    """p_1 from p_{W+1} minus the spin sum."""
    W = len(spins)
    return (k if (W + 1) % 2 else l - k) - sum(spins)


def all_windows(l, k, emax, width):
    """Every spin string of the given width with energy <= emax."""
    alphabet = range(l, -l - 1, -2)
    out = []
    for s in itertools.product(alphabet, repeat=width):
        e = spin_energy(s, l, k)
        if e <= emax:
            out.append((s, e))
    return out


def path_character(l, k, emax, width):
    """Counter of (E, Wt) over windows of the given width."""
    return Counter((e, spin_weight(s, l, k)) for s, e in all_windows(l, k, emax, width))


# -- restricted paths and diagrams ----------------------------------------


def restricted_paths(l, k, N):
    out = []
    for steps in itertools.product((1, -1), repeat=N):
        r = [0]
        for d in steps:
            r.append(r[-1] + d)
        if r[-1] == k and all(0 <= x <= l for x in r):
            out.append(tuple(r))
    return sorted(out)


def degree_by_n(r):
    N = len(r) - 1
    n, total = 0, 0
    for i in range(1, N + 1):
        if i >= 2 and r[i - 2] == r[i] < r[i - 1]:
            n += 1
        total += n
    return total


def young(N, size_max):
    out = []
    for a in itertools.product(range(size_max + 1), repeat=N):
        s = sum((N - i) * x for i, x in enumerate(a))
        if s <= size_max:
            out.append(a)
    return out


def chi(b):
    return {e: 1 for e in range(-b, b + 1, 2)}


def laurent_mul(x, y):
    out = Counter()
    for e1, c1 in x.items():
        for e2, c2 in y.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}
