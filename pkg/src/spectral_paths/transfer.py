"""Incidence matrices and fiber degeneracies.

Rows and columns are numbered ``1..l+1``; index ``i`` stands for the spin
``l + 2 - 2i``.  ``M_a`` has a nonzero ``(i, j)`` entry exactly when
``H(spin_i, spin_j) = a``, and that entry is ``z^{spin_i}``.  A product
``M_{h_1} ... M_{h_m}`` therefore sums ``z^{s_1 + ... + s_m}`` over spin
strings with the prescribed local energies.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

from .qz_series import BivariateSeries, QSeries, ZLaurent, chi
from .spectral import (
    SpectralKey,
    YoungDiagram,
    beta,
    degree,
    encode,
    parse_blocks,
    size,
)
from .vertex_paths import ModelParams, _check_level, local_energy

__all__ = [
    "IncidenceMatrix",
    "matrix_M",
    "matrix_H",
    "matrix_V",
    "matrix_unit",
    "T_matrix",
    "F_of",
    "fiber_z_character",
    "beta_product",
    "closed_form_fiber_character",
    "check_lemma_45",
    "Factorization",
    "factorize",
    "predicted_factor",
]


def _spin(i: int, l: int) -> int:
    return l + 2 - 2 * i


class IncidenceMatrix:
    """Dense ``(l+1) x (l+1)`` matrix over ``ZLaurent``, 1-based access."""

    __slots__ = ("l", "_rows")

    def __init__(self, l: int, rows: Sequence[Sequence[ZLaurent]]):
        n = l + 1
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        self.l = l
        self._rows = tuple(tuple(x for x in r) for r in rows)

    @classmethod
    def zeros(cls, l: int) -> "IncidenceMatrix":
        z = ZLaurent.zero()
        return cls(l, [[z] * (l + 1) for _ in range(l + 1)])

    @classmethod
    def identity(cls, l: int) -> "IncidenceMatrix":
        return cls(
            l,
            [
                [ZLaurent.one() if i == j else ZLaurent.zero() for j in range(l + 1)]
                for i in range(l + 1)
            ],
        )

    @classmethod
    def from_exponents(cls, l: int, table: Sequence[Sequence[int | None]]) -> "IncidenceMatrix":
        """Monomial matrix from a table of z-exponents (``None`` for 0)."""
        return cls(
            l,
            [
                [ZLaurent.zero() if e is None else ZLaurent.monomial(e) for e in row]
                for row in table
            ],
        )

    def __getitem__(self, ij: tuple[int, int]) -> ZLaurent:
        i, j = ij
        return self._rows[i - 1][j - 1]

    def rows(self) -> tuple[tuple[ZLaurent, ...], ...]:
        return self._rows

    def nonzero(self) -> list[tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self._rows)
            for j, x in enumerate(row)
            if not x.is_zero()
        ]

    def __matmul__(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        if other.l != self.l:
            raise ValueError("matrix levels differ")
        n = self.l + 1
        cols = list(zip(*other._rows))
        out = []
        for row in self._rows:
            live = [(t, x) for t, x in enumerate(row) if not x.is_zero()]
            new = []
            for j in range(n):
                acc = ZLaurent.zero()
                col = cols[j]
                for t, x in live:
                    y = col[t]
                    if not y.is_zero():
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return IncidenceMatrix(self.l, out)

    def scale(self, c: ZLaurent | int) -> "IncidenceMatrix":
        return IncidenceMatrix(self.l, [[x * c for x in row] for row in self._rows])

    def __pow__(self, n: int) -> "IncidenceMatrix":
        if n < 0:
            raise ValueError("negative matrix powers are not supported")
        out = IncidenceMatrix.identity(self.l)
        for _ in range(n):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return self.l == other.l and self._rows == other._rows

    def __hash__(self):
        return hash((self.l, self._rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self._rows)
        return f"IncidenceMatrix(l={self.l}, [{body}])"


def _check_a(a: int, l: int) -> None:
    _check_level(l)
    if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a <= l:
        raise ValueError(f"matrix label must lie in 0..{l}, got {a!r}")


@lru_cache(maxsize=None)
def matrix_M(a: int, l: int) -> IncidenceMatrix:
    _check_a(a, l)
    n = l + 1
    table = [
        [
            _spin(i, l) if local_energy(_spin(i, l), _spin(j, l), l) == a else None
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]
    return IncidenceMatrix.from_exponents(l, table)


@lru_cache(maxsize=None)
def matrix_H(a: int, l: int) -> IncidenceMatrix:
    """Row ``a+1`` holding ``z^{l-2a}`` from column ``l-a+1`` on."""
    _check_a(a, l)
    n = l + 1
    table = [[None] * n for _ in range(n)]
    for j in range(l - a + 1, n + 1):
        table[a][j - 1] = l - 2 * a
    return IncidenceMatrix.from_exponents(l, table)


@lru_cache(maxsize=None)
def matrix_V(a: int, l: int) -> IncidenceMatrix:
    """Column ``l-a+1`` holding ``z^l, z^{l-2}, ..., z^{l-2a}`` in rows ``1..a+1``."""
    _check_a(a, l)
    n = l + 1
    table = [[None] * n for _ in range(n)]
    for i in range(1, a + 2):
        table[i - 1][l - a] = _spin(i, l)
    return IncidenceMatrix.from_exponents(l, table)


def matrix_unit(i: int, j: int, l: int) -> IncidenceMatrix:
    n = l + 1
    table = [[None] * n for _ in range(n)]
    table[i - 1][j - 1] = 0
    return IncidenceMatrix.from_exponents(l, table)


def _product(mats: Sequence[IncidenceMatrix], l: int) -> IncidenceMatrix:
    return reduce(lambda x, y: x @ y, mats, IncidenceMatrix.identity(l))


def _key_data(key: SpectralKey):
    h = encode(key)
    bd = parse_blocks(h)
    return h, bd


def T_matrix(key: SpectralKey) -> IncidenceMatrix:
    """``z^l H_l M_{h_1} ... M_{h_M} V_{l_{J+1}}``."""
    l = key.r.l
    h, bd = _key_data(key)
    mats = [matrix_H(l, l)] + [matrix_M(x, l) for x in h.prefix(bd.M)]
    mats.append(matrix_V(bd.tail_initial, l))
    return _product(mats, l).scale(ZLaurent.monomial(l))


def F_of(key: SpectralKey) -> ZLaurent:
    """``F(r, a; z) = sum z^{s_1 + ... + s_{M+1}}`` over the fiber's spin strings."""
    l = key.r.l
    _, bd = _key_data(key)
    return T_matrix(key)[l + 1, l - bd.tail_initial + 1]


def fiber_z_character(key: SpectralKey) -> ZLaurent:
    """``sum_p z^{Wt(p)}`` over the fiber, as ``z^{l - l_{J+1}} F(z^{-1})``."""
    l = key.r.l
    _, bd = _key_data(key)
    return F_of(key).invert_z().shift(l - bd.tail_initial)


def beta_product(a: YoungDiagram) -> ZLaurent:
    return reduce(lambda x, b: x * chi(b), beta(a), ZLaurent.one())


def closed_form_fiber_character(key: SpectralKey, D: int | None = None) -> BivariateSeries:
    """``q^{d(r) + |a|} prod chi_{b_i}(z)`` with the ``q^{Delta(k)}`` prefactor as metadata."""
    l, k = key.r.l, key.r.k
    e = degree(key.r) + size(key.a)
    return BivariateSeries.from_parts(
        beta_product(key.a),
        QSeries.monomial(e, order=D),
        ModelParams(l).conformal_weight(k),
    )


def check_lemma_45(a: int, n: int, l: int) -> bool:
    """Whether ``(M_a M_{l-a})^n == V_a H_{l-a}``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    lhs = (matrix_M(a, l) @ matrix_M(l - a, l)) ** n
    return lhs == matrix_V(a, l) @ matrix_H(l - a, l)


@dataclass(frozen=True)
class Factorization:
    """Data of the block factorization ``T = z^l S_1 ... S_s``.

    ``betas`` are the cut positions ``beta_0 = 1 < beta_1 < ... < beta_s = N+1``,
    ``m`` counts extremal points left of each cut and ``h_prime`` carries
    the ``V``/``H`` labels joining consecutive factors.
    """

    l: int
    betas: tuple[int, ...]
    m: tuple[int, ...]
    h_prime: tuple[int, ...]
    l_sharp: tuple[int, ...]
    factors: tuple[IncidenceMatrix, ...]

    def product(self) -> IncidenceMatrix:
        return _product(self.factors, self.l).scale(ZLaurent.monomial(self.l))


def factorize(key: SpectralKey) -> Factorization:
    """Split ``T(r, a)`` at the nonzero entries of the reduced diagram."""
    r = key.r
    l, N = r.l, r.N
    ts, es = r.extrema()
    J = len(ts)
    ls = [e if j % 2 else l - e for j, e in enumerate(es, start=1)]
    ls.append(r.k if J % 2 == 0 else l - r.k)
    cuts = [i for i in range(2, N + 1) if key.a.a[i - 1]]
    betas = (1, *cuts, N + 1)
    m = [0] + [sum(1 for t in ts if t <= b - 1) for b in cuts] + [J]
    hp = [0]
    for b, mi in zip(cuts, m[1:-1]):
        x = r.heights[b - 1]
        hp.append(x if mi % 2 == 0 else l - x)
    hp.append(ls[J])
    factors = []
    for i in range(1, len(betas)):
        mats = [matrix_H(l - hp[i - 1], l)]
        mats += [matrix_M(ls[j - 1], l) for j in range(m[i - 1] + 1, m[i] + 1)]
        mats.append(matrix_V(hp[i], l))
        factors.append(_product(mats, l))
    return Factorization(l, betas, tuple(m), tuple(hp), tuple(ls), tuple(factors))


def predicted_factor(fz: Factorization, i: int) -> IncidenceMatrix:
    """Predicted ``S_i = z^{h'_{i-1} - h'_i} chi_{beta_i - beta_{i-1}} E_{l-h'_{i-1}+1, l-h'_i+1}``."""
    l, hp, b = fz.l, fz.h_prime, fz.betas
    c = chi(b[i] - b[i - 1]).shift(hp[i - 1] - hp[i])
    return matrix_unit(l - hp[i - 1] + 1, l - hp[i] + 1, l).scale(c)


def conformal_weight(l: int, k: int) -> Fraction:
    return ModelParams(l).conformal_weight(k)
