"""Spectra of local energies and the decoding bijection.

A spectrum ``h = (h_1, h_2, ...)`` with ``h_i + h_{i+1} >= l`` splits into
elementary blocks, maximal runs where neighbours sum to exactly ``l``.
The initials of the odd-length blocks (``h_sharp``) determine a restricted
path ``r``; the multiplicities of the alternating runs ``[[v]] = (v, l-v)``
fill a Young diagram ``a`` of depth ``N``.  ``decode`` and ``encode`` are
mutually inverse.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .vertex_paths import (
    FinitePath,
    _check_k,
    _check_level,
    enumerate_paths,
    ground_energy,
    local_energies,
)

__all__ = [
    "Spectrum",
    "Block",
    "BlockDecomposition",
    "RestrictedPath",
    "YoungDiagram",
    "SpectralKey",
    "spectrum_of",
    "parse_blocks",
    "decode",
    "encode",
    "degree",
    "degree_by_maxima",
    "size",
    "beta",
    "enumerate_restricted_paths",
    "enumerate_young",
    "ground_key",
    "fibers",
]


@dataclass(frozen=True)
class Spectrum:
    """Local-energy sequence equal to ``h^(k)`` beyond ``window``."""

    l: int
    k: int
    window: tuple[int, ...] = field(default=())

    def __post_init__(self):
        _check_level(self.l)
        _check_k(self.l, self.k)
        w = [int(x) for x in self.window]
        for x in w:
            if not 0 <= x <= self.l:
                raise ValueError(f"local energy {x} outside 0..{self.l}")
        ext = w + [ground_energy(self.l, self.k, len(w) + 1)]
        for i, (a, b) in enumerate(zip(ext, ext[1:]), start=1):
            if a + b < self.l:
                raise ValueError(
                    f"nearest-neighbour condition fails at {i}: {a} + {b} < {self.l}"
                )
        while w and w[-1] == ground_energy(self.l, self.k, len(w)):
            w.pop()
        object.__setattr__(self, "window", tuple(w))

    def value(self, i: int) -> int:
        if i <= len(self.window):
            return self.window[i - 1]
        return ground_energy(self.l, self.k, i)

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.value(i) for i in range(1, n + 1))

    @classmethod
    def ground(cls, l: int, k: int) -> "Spectrum":
        return cls(l, k, ())

    def to_dict(self) -> dict:
        return {"l": self.l, "k": self.k, "h": list(self.window)}

    @classmethod
    def from_dict(cls, d) -> "Spectrum":
        return cls(int(d["l"]), int(d["k"]), tuple(int(x) for x in d["h"]))


@dataclass(frozen=True)
class Block:
    start: int  # 1-based position of the initial
    initial: int
    length: int

    @property
    def odd(self) -> bool:
        return self.length % 2 == 1

    @property
    def pairs(self) -> int:
        """``b`` for an even block ``[[m]]^b``, ``c`` for an odd block ``(l_i, [[l-l_i]]^c)``."""
        return self.length // 2


@dataclass(frozen=True)
class BlockDecomposition:
    l: int
    k: int
    blocks: tuple[Block, ...]
    M: int
    tail_initial: int

    @property
    def J(self) -> int:
        return sum(1 for b in self.blocks if b.odd)

    @property
    def h_sharp(self) -> tuple[int, ...]:
        return tuple(b.initial for b in self.blocks if b.odd) + (self.tail_initial,)

    @property
    def initials(self) -> tuple[int, ...]:
        return tuple(b.initial for b in self.blocks) + (self.tail_initial,)

    def groups(self) -> list[list[Block]]:
        """Even blocks between consecutive odd blocks (the ``m_ij`` rows)."""
        rows: list[list[Block]] = [[]]
        for b in self.blocks:
            if b.odd:
                rows.append([])
            else:
                rows[-1].append(b)
        return rows

    def c_values(self) -> tuple[int, ...]:
        return tuple(b.pairs for b in self.blocks if b.odd)

    def interlacing_holds(self) -> bool:
        """Initial-element chains ``l - l_{i-1} < m_i1 < ... < l_i`` (``0 <= m_11``)."""
        l = self.l
        lower, strict = 0, False
        chain: list[int] = []
        for b in self.blocks:
            chain.append(b.initial)
            if b.odd:
                if not _increasing(chain, lower, strict):
                    return False
                lower, strict, chain = l - b.initial, True, []
        chain.append(self.tail_initial)
        return _increasing(chain, lower, strict)


def _increasing(chain: Sequence[int], lower: int, strict: bool) -> bool:
    if chain[0] < lower or (strict and chain[0] == lower):
        return False
    return all(a < b for a, b in zip(chain, chain[1:]))


@dataclass(frozen=True)
class RestrictedPath:
    """Level-l walk ``r_0 = 0, ..., r_N = k`` with unit steps inside ``0..l``."""

    l: int
    k: int
    heights: tuple[int, ...]

    def __post_init__(self):
        _check_level(self.l)
        _check_k(self.l, self.k)
        r = tuple(int(x) for x in self.heights)
        if not r or r[0] != 0 or r[-1] != self.k:
            raise ValueError(f"restricted path must run from 0 to {self.k}: {r}")
        for a, b in zip(r, r[1:]):
            if abs(a - b) != 1:
                raise ValueError(f"restricted path step {a} -> {b} is not +-1")
        if min(r) < 0 or max(r) > self.l:
            raise ValueError(f"restricted path leaves 0..{self.l}: {r}")
        object.__setattr__(self, "heights", r)

    @property
    def N(self) -> int:
        return len(self.heights) - 1

    def extrema(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Interior turning points ``t_1 < ... < t_J`` and their heights."""
        r = self.heights
        ts = tuple(
            i for i in range(1, len(r) - 1) if (r[i] - r[i - 1]) * (r[i + 1] - r[i]) < 0
        )
        return ts, tuple(r[t] for t in ts)


@dataclass(frozen=True)
class YoungDiagram:
    """Multiplicity form ``(a_1, ..., a_N)`` of a Young diagram of depth N."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if any(x < 0 for x in a):
            raise ValueError(f"diagram multiplicities must be non-negative: {a}")
        object.__setattr__(self, "a", a)

    @property
    def N(self) -> int:
        return len(self.a)

    def partition(self) -> tuple[int, ...]:
        """``lambda_j = a_1 + ... + a_{N+1-j}``, weakly decreasing."""
        out, acc = [], 0
        for x in self.a:
            acc += x
            out.append(acc)
        return tuple(reversed(out))

    def is_zero(self) -> bool:
        return not any(self.a)


@dataclass(frozen=True, order=False)
class SpectralKey:
    r: RestrictedPath
    a: YoungDiagram

    def __post_init__(self):
        if self.r.N != self.a.N:
            raise ValueError(f"path length {self.r.N} differs from diagram depth {self.a.N}")

    @property
    def N(self) -> int:
        return self.r.N

    def sort_key(self):
        return (self.N, self.r.heights, self.a.a)

    def to_dict(self) -> dict:
        return {"N": self.N, "r": list(self.r.heights), "a": list(self.a.a)}

    @classmethod
    def from_dict(cls, d, l: int, k: int) -> "SpectralKey":
        key = cls(RestrictedPath(l, k, tuple(d["r"])), YoungDiagram(tuple(d["a"])))
        if "N" in d and int(d["N"]) != key.N:
            raise ValueError(f"declared N={d['N']} but r has length {key.N}")
        return key


def spectrum_of(p: FinitePath) -> Spectrum:
    return Spectrum(p.l, p.k, local_energies(p))


def parse_blocks(h: Spectrum) -> BlockDecomposition:
    """Segment ``h`` into elementary blocks and the infinite tail."""
    l, k = h.l, h.k
    L = len(h.window)
    seq = h.prefix(L + 2)
    cuts = [i for i in range(1, L + 1) if seq[i - 1] + seq[i] > l]
    M = cuts[-1] if cuts else 0
    blocks = []
    start = 1
    for c in cuts:
        blocks.append(Block(start, seq[start - 1], c - start + 1))
        start = c + 1
    tail = seq[M]
    if tail != (k if M % 2 == 0 else l - k):
        raise AssertionError(f"tail initial {tail} has the wrong phase for M={M}")
    return BlockDecomposition(l, k, tuple(blocks), M, tail)


def _path_through(N: int, points: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    r = [0]
    for (t0, e0), (t1, e1) in zip(points, points[1:]):
        if abs(e1 - e0) != t1 - t0:
            raise AssertionError(f"extrema ({t0},{e0}) -> ({t1},{e1}) not joinable")
        step = 1 if e1 > e0 else -1
        r.extend(e0 + step * j for j in range(1, t1 - t0 + 1))
    return tuple(r)


def decode(h: Spectrum) -> SpectralKey:
    """The decoding map ``h -> (r(h), a(h))``."""
    bd = parse_blocks(h)
    l, k = h.l, h.k
    hs = bd.h_sharp
    J = len(hs) - 1
    ls = (l,) + hs
    seg = [ls[i + 1] - l + ls[i] for i in range(J + 1)]
    t = [0]
    for n in seg:
        t.append(t[-1] + n)
    N = t[-1]
    a = [0] * N
    filled = [False] * N
    i = 0
    for b in bd.blocks:
        if b.odd:
            i += 1
            v, count = l - b.initial, b.pairs
        else:
            v, count = b.initial, b.pairs
        base = l - ls[i]
        slot = t[i] + (v - base)
        if count == 0:
            continue
        if not base <= v < ls[i + 1] or filled[slot]:
            raise AssertionError(f"run [[{v}]] does not fit segment {i} of {hs}")
        a[slot] = count
        filled[slot] = True
    points = [(0, 0)] + [
        (t[j], ls[j] if j % 2 else l - ls[j]) for j in range(1, J + 1)
    ] + [(N, k)]
    r = _path_through(N, points)
    return SpectralKey(RestrictedPath(l, k, r), YoungDiagram(tuple(a)))


def encode(key: SpectralKey) -> Spectrum:
    """Inverse of :func:`decode`."""
    r, a = key.r, key.a.a
    l, k = r.l, r.k
    ts, es = r.extrema()
    J = len(ts)
    ls = [l] + [e if j % 2 else l - e for j, e in enumerate(es, start=1)]
    ls.append(k if J % 2 == 0 else l - k)
    tt = (0,) + ts
    h: list[int] = []
    for i in range(J + 1):
        base = l - ls[i]
        for v in range(base, ls[i + 1]):
            h.extend((v, l - v) * a[tt[i] + v - base])
        if i < J:
            h.append(ls[i + 1])
    return Spectrum(l, k, tuple(h))


def degree(r: RestrictedPath) -> int:
    """``d(r) = sum n_i`` with ``n`` stepping up at each ``r_{i-2} = r_i < r_{i-1}``."""
    x = r.heights
    n, total = 0, 0
    for i in range(2, r.N + 1):
        if x[i - 2] == x[i] < x[i - 1]:
            n += 1
        total += n
    return total


def degree_by_maxima(r: RestrictedPath) -> int:
    """Degree as ``sum_j j f(...)`` where ``f(+,-) = 1`` marks a local maximum."""
    x, N = r.heights, r.N

    def sign(d):
        return "+" if d > 0 else "-"

    total = 0
    for j in range(1, N):
        first = sign(x[N - j] - x[N + 1 - j])
        second = sign(x[N - 1 - j] - x[N - j])
        if (first, second) == ("+", "-"):
            total += j
    return total


def size(a: YoungDiagram) -> int:
    """``|a| = sum (N+1-i) a_i``."""
    N = a.N
    return sum((N + 1 - i) * x for i, x in enumerate(a.a, start=1))


def beta(a: YoungDiagram) -> tuple[int, ...]:
    """Ordered composition of N cut at the nonzero entries among ``a_2..a_N``."""
    N = a.N
    cuts = [i for i in range(2, N + 1) if a.a[i - 1]]
    bounds = [1] + cuts + [N + 1]
    return tuple(y - x for x, y in zip(bounds, bounds[1:]))


def enumerate_restricted_paths(l: int, k: int, N: int) -> list[RestrictedPath]:
    """All of ``R_N(k)`` in lexicographic order."""
    _check_level(l)
    _check_k(l, k)
    if N < k or (N - k) % 2:
        return []
    out = []

    def rec(r: list[int]):
        remaining = N + 1 - len(r)
        if remaining == 0:
            out.append(RestrictedPath(l, k, tuple(r)))
            return
        for x in (r[-1] - 1, r[-1] + 1):
            if 0 <= x <= l and abs(x - k) <= remaining - 1:
                r.append(x)
                rec(r)
                r.pop()

    rec([0])
    return out


def enumerate_young(N: int, size_max: int) -> list[YoungDiagram]:
    """Diagrams of depth N with ``|a| <= size_max``, ordered by (size, a)."""
    if N < 0 or size_max < 0:
        raise ValueError("N and size_max must be non-negative")
    out: list[tuple[int, tuple[int, ...]]] = []
    a = [0] * N

    def rec(i: int, budget: int):
        if i == N:
            out.append((size_max - budget, tuple(a)))
            return
        w = N - i
        for x in range(budget // w + 1):
            a[i] = x
            rec(i + 1, budget - w * x)
        a[i] = 0

    rec(0, size_max)
    out.sort()
    return [YoungDiagram(x) for _, x in out]


def ground_key(l: int, k: int) -> SpectralKey:
    return SpectralKey(RestrictedPath(l, k, tuple(range(k + 1))), YoungDiagram((0,) * k))


def fibers(
    l: int, k: int, emax: int, max_paths: int | None = None
) -> dict[SpectralKey, list[FinitePath]]:
    """Paths with ``E <= emax`` grouped by their spectral key, keys sorted."""
    groups: dict[SpectralKey, list[FinitePath]] = defaultdict(list)
    for p in enumerate_paths(l, k, emax, max_paths):
        groups[decode(spectrum_of(p))].append(p)
    return {key: groups[key] for key in sorted(groups, key=SpectralKey.sort_key)}


def keys_up_to(l: int, k: int, emax: int, N_max: int | None = None) -> Iterable[SpectralKey]:
    """All keys with ``d(r) + |a| <= emax``, in key order.

    N runs upward from k while some length-N restricted path still has
    degree ``<= emax`` (the minimal degree is non-decreasing in N).
    """
    N = k
    while N_max is None or N <= N_max:
        rs = [r for r in enumerate_restricted_paths(l, k, N) if degree(r) <= emax]
        if not rs:
            if N_max is None:
                break
            N += 2
            continue
        for r in rs:
            for a in sorted(enumerate_young(N, emax - degree(r)), key=lambda y: y.a):
                yield SpectralKey(r, a)
        N += 2
