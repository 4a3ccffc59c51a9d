"""Exact arithmetic in the character ring.

Three value types live here:

``QSeries``
    integer power series in ``q``, truncated at a fixed order ``D``
    (``order=None`` means an exact polynomial, no truncation).
``ZLaurent``
    integer Laurent polynomials in ``z``.
``BivariateSeries``
    Laurent polynomials in ``z`` whose coefficients are ``QSeries`` sharing
    one truncation order.  A rational global prefactor ``q^delta`` is kept
    as metadata and never folded into the integer exponents.

All values are immutable and canonical (no stored zero coefficients), so
equality is structural.  Coefficients are Python ints; nothing wraps.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from numbers import Integral
from typing import Iterable, Mapping

__all__ = [
    "TruncationMismatch",
    "NotInvertible",
    "WindowExceeded",
    "QSeries",
    "ZLaurent",
    "BivariateSeries",
    "q_pochhammer",
    "q_binomial",
    "series_invert",
    "chi",
]


class TruncationMismatch(ValueError):
    """Operands carry different truncation orders."""


class NotInvertible(ValueError):
    """Series whose constant term is not a unit."""


class WindowExceeded(ValueError):
    """A nonzero term lies outside a declared z-window."""


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"{what} must be an integer, got {value!r}")
    return int(value)


class QSeries:
    """Sparse integer series in ``q`` truncated at ``order``.

    >>> q = QSeries.monomial(1, order=3)
    >>> (1 - q) * (1 + q + q * q + q * q * q)
    QSeries({0: 1}, order=3)
    """

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Mapping[int, int] | None = None, order: int | None = None):
        if order is not None:
            order = _as_int(order, "truncation order")
            if order < 0:
                raise ValueError("truncation order must be non-negative")
        c = {}
        for e, v in (coeffs or {}).items():
            e = _as_int(e, "q-exponent")
            v = _as_int(v, "coefficient")
            if e < 0:
                raise ValueError(f"negative q-exponent {e}")
            if v and (order is None or e <= order):
                c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}
        self._order = order

    @classmethod
    def _raw(cls, c: dict, order):
        obj = object.__new__(cls)
        obj._c = c
        obj._order = order
        return obj

    @classmethod
    def zero(cls, order: int | None = None) -> "QSeries":
        return cls({}, order)

    @classmethod
    def one(cls, order: int | None = None) -> "QSeries":
        return cls({0: 1}, order)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, order: int | None = None) -> "QSeries":
        return cls({exponent: coeff}, order)

    @property
    def order(self) -> int | None:
        return self._order

    def items(self) -> list[tuple[int, int]]:
        """Terms as ``(exponent, coefficient)`` sorted by exponent."""
        return sorted(self._c.items())

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def valuation(self) -> int | None:
        return min(self._c) if self._c else None

    def _check(self, other: "QSeries"):
        if self._order != other._order:
            raise TruncationMismatch(
                f"cannot mix truncation orders {self._order} and {other._order}"
            )

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            self._check(other)
            return other
        if isinstance(other, Integral) and not isinstance(other, bool):
            return QSeries({0: int(other)}, self._order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return QSeries._raw(c, self._order)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -v for e, v in self._c.items()}, self._order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (ZLaurent, BivariateSeries)):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        D = self._order
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if D is not None and e > D:
                    continue
                c[e] = c.get(e, 0) + v1 * v2
        return QSeries._raw({e: v for e, v in c.items() if v}, D)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        n = _as_int(n, "power")
        if n < 0:
            return series_invert(self) ** (-n)
        out = QSeries.one(self._order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, n: int) -> "QSeries":
        """Multiply by ``q**n`` (``n`` may be negative if no exponent drops below 0)."""
        n = _as_int(n, "shift")
        c = {e + n: v for e, v in self._c.items()}
        if c and min(c) < 0:
            raise ValueError("shift would produce a negative q-exponent")
        D = self._order
        return QSeries._raw({e: v for e, v in c.items() if D is None or e <= D}, D)

    def truncate(self, order: int) -> "QSeries":
        """Drop terms above ``order``; only lowers (or sets) the truncation."""
        order = _as_int(order, "truncation order")
        if self._order is not None and order > self._order:
            raise TruncationMismatch("cannot raise the truncation order of a series")
        return QSeries({e: v for e, v in self._c.items() if e <= order}, order)

    def at_one(self) -> int:
        """Value at ``q = 1``; meaningful only for exact polynomials."""
        return sum(self._c.values())

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self._order == other._order and self._c == other._c
        if isinstance(other, Integral) and not isinstance(other, bool):
            return self._c == ({0: int(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self._order, tuple(self.items())))

    def __repr__(self):
        return f"QSeries({dict(self.items())}, order={self._order})"

    def __str__(self):
        return format_q(self)


def format_q(s: QSeries) -> str:
    """``1 + 2q^2 - q^3`` style rendering, ascending exponents."""
    parts = []
    for e, c in s.items():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


class ZLaurent:
    """Sparse integer Laurent polynomial in ``z``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            e = _as_int(e, "z-exponent")
            v = _as_int(v, "coefficient")
            if v:
                c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def _raw(cls, c: dict) -> "ZLaurent":
        obj = object.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "ZLaurent":
        return cls({exponent: coeff})

    @classmethod
    def zero(cls) -> "ZLaurent":
        return cls._raw({})

    @classmethod
    def one(cls) -> "ZLaurent":
        return cls._raw({0: 1})

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def _coerce(self, other):
        if isinstance(other, ZLaurent):
            return other
        if isinstance(other, Integral) and not isinstance(other, bool):
            return ZLaurent({0: int(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return ZLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return ZLaurent._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return BivariateSeries.from_parts(self, other)
        if isinstance(other, BivariateSeries):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return ZLaurent._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZLaurent":
        n = _as_int(n, "power")
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = ZLaurent.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, n: int) -> "ZLaurent":
        """Multiply by ``z**n``."""
        return ZLaurent._raw({e + n: v for e, v in self._c.items()})

    def invert_z(self) -> "ZLaurent":
        """Substitute ``z -> 1/z``."""
        return ZLaurent._raw({-e: v for e, v in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def __eq__(self, other):
        if isinstance(other, ZLaurent):
            return self._c == other._c
        if isinstance(other, Integral) and not isinstance(other, bool):
            return self._c == ({0: int(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return f"ZLaurent({dict(self.items())})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            mag = abs(c)
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


class BivariateSeries:
    """Laurent polynomial in ``z`` with truncated ``q``-series coefficients.

    ``delta`` is the exponent of an overall ``q^delta`` prefactor, kept
    exact (a ``Fraction``) and separate from the integer exponents.
    """

    __slots__ = ("_c", "_order", "_delta")

    def __init__(
        self,
        coeffs: Mapping[int, QSeries] | None = None,
        order: int | None = None,
        delta: Fraction | int = 0,
    ):
        c = {}
        for e, s in (coeffs or {}).items():
            e = _as_int(e, "z-exponent")
            if not isinstance(s, QSeries):
                raise TypeError("coefficients must be QSeries")
            if s.order != order:
                raise TruncationMismatch(
                    f"coefficient order {s.order} differs from series order {order}"
                )
            c[e] = c[e] + s if e in c else s
        self._c = {e: s for e, s in c.items() if not s.is_zero()}
        self._order = order
        self._delta = Fraction(delta)

    @classmethod
    def _raw(cls, c, order, delta) -> "BivariateSeries":
        obj = object.__new__(cls)
        obj._c = c
        obj._order = order
        obj._delta = delta
        return obj

    @classmethod
    def zero(cls, order: int | None = None, delta: Fraction | int = 0) -> "BivariateSeries":
        return cls({}, order, delta)

    @classmethod
    def from_parts(cls, zpart: ZLaurent, qpart: QSeries, delta: Fraction | int = 0) -> "BivariateSeries":
        """The product ``zpart(z) * qpart(q)``."""
        c = {e: qpart * v for e, v in zpart.items()}
        return cls(c, qpart.order, delta)

    @classmethod
    def from_terms(
        cls, terms: Iterable[tuple[int, int, int]], order: int | None = None, delta=0
    ) -> "BivariateSeries":
        """Build from ``(z_exp, q_exp, coeff)`` triples (duplicates add)."""
        acc: dict[int, dict[int, int]] = {}
        for ze, qe, c in terms:
            row = acc.setdefault(ze, {})
            row[qe] = row.get(qe, 0) + c
        return cls({ze: QSeries(row, order) for ze, row in acc.items()}, order, delta)

    @property
    def order(self) -> int | None:
        return self._order

    @property
    def delta(self) -> Fraction:
        return self._delta

    def with_delta(self, delta) -> "BivariateSeries":
        return BivariateSeries._raw(dict(self._c), self._order, Fraction(delta))

    def items(self) -> list[tuple[int, QSeries]]:
        """``(z_exp, QSeries)`` pairs, z-exponent descending."""
        return sorted(self._c.items(), reverse=True)

    def terms(self) -> list[tuple[int, int, int]]:
        """``(z, q, c)`` triples sorted by z descending then q ascending."""
        return [(ze, qe, c) for ze, s in self.items() for qe, c in s.items()]

    def coeff(self, z_exp: int, q_exp: int | None = None):
        s = self._c.get(z_exp, QSeries.zero(self._order))
        return s if q_exp is None else s.coeff(q_exp)

    def is_zero(self) -> bool:
        return not self._c

    def z_exponents(self) -> list[int]:
        return sorted(self._c)

    def _check(self, other: "BivariateSeries", adding: bool):
        if self._order != other._order:
            raise TruncationMismatch(
                f"cannot mix truncation orders {self._order} and {other._order}"
            )
        if adding and self._delta != other._delta:
            raise ValueError(
                f"cannot add series with prefactors q^{self._delta} and q^{other._delta}"
            )

    def __add__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        self._check(other, adding=True)
        c = dict(self._c)
        for e, s in other._c.items():
            t = c[e] + s if e in c else s
            if t.is_zero():
                c.pop(e, None)
            else:
                c[e] = t
        return BivariateSeries._raw(c, self._order, self._delta)

    def __neg__(self):
        return BivariateSeries._raw({e: -s for e, s in self._c.items()}, self._order, self._delta)

    def __sub__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariateSeries):
            self._check(other, adding=False)
            c: dict[int, QSeries] = {}
            for e1, s1 in self._c.items():
                for e2, s2 in other._c.items():
                    p = s1 * s2
                    e = e1 + e2
                    c[e] = c[e] + p if e in c else p
            c = {e: s for e, s in c.items() if not s.is_zero()}
            return BivariateSeries._raw(c, self._order, self._delta + other._delta)
        if isinstance(other, ZLaurent):
            c = {}
            for e1, s in self._c.items():
                for e2, v in other.items():
                    p = s * v
                    e = e1 + e2
                    c[e] = c[e] + p if e in c else p
            c = {e: s for e, s in c.items() if not s.is_zero()}
            return BivariateSeries._raw(c, self._order, self._delta)
        if isinstance(other, QSeries):
            if other.order != self._order:
                raise TruncationMismatch(
                    f"cannot mix truncation orders {self._order} and {other.order}"
                )
            c = {e: s * other for e, s in self._c.items()}
            c = {e: s for e, s in c.items() if not s.is_zero()}
            return BivariateSeries._raw(c, self._order, self._delta)
        if isinstance(other, Integral) and not isinstance(other, bool):
            if not other:
                return BivariateSeries.zero(self._order, self._delta)
            return BivariateSeries._raw(
                {e: s * int(other) for e, s in self._c.items()}, self._order, self._delta
            )
        return NotImplemented

    __rmul__ = __mul__

    def shift_q(self, n: int) -> "BivariateSeries":
        """Multiply every coefficient by ``q**n``."""
        c = {e: s.shift(n) for e, s in self._c.items()}
        return BivariateSeries({e: s for e, s in c.items()}, self._order, self._delta)

    def invert_z(self) -> "BivariateSeries":
        return BivariateSeries._raw({-e: s for e, s in self._c.items()}, self._order, self._delta)

    def at_z_one(self) -> QSeries:
        out = QSeries.zero(self._order)
        for _, s in self._c.items():
            out = out + s
        return out

    def truncate(self, order: int) -> "BivariateSeries":
        return BivariateSeries(
            {e: s.truncate(order) for e, s in self._c.items()}, order, self._delta
        )

    def check_z_window(self, lo: int, hi: int) -> "BivariateSeries":
        """Return ``self`` if every nonzero term has ``lo <= z-exponent <= hi``."""
        outside = [e for e in self._c if e < lo or e > hi]
        if outside:
            raise WindowExceeded(
                f"z-exponents {sorted(outside)} lie outside the window [{lo}, {hi}]"
            )
        return self

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (
            self._order == other._order
            and self._delta == other._delta
            and self._c == other._c
        )

    def __hash__(self):
        return hash((self._order, self._delta, tuple(self.terms())))

    def __repr__(self):
        return f"BivariateSeries({self.to_text()!r}, order={self._order}, delta={self._delta})"

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        """Deterministic text form, e.g. ``z^3*(1 + 2q^2) + z^1*(q)``."""
        if not self._c:
            return "0"
        return " + ".join(f"z^{e}*({format_q(s)})" for e, s in self.items())

    def to_dict(self) -> dict:
        return {
            "delta_prefactor": [self._delta.numerator, self._delta.denominator],
            "truncation_order": self._order,
            "terms": [{"z": ze, "q": qe, "c": c} for ze, qe, c in self.terms()],
        }

    def to_json(self, **extra) -> str:
        d = dict(extra)
        d.update(self.to_dict())
        return json.dumps(d, sort_keys=False, separators=(", ", ": "))

    @classmethod
    def from_dict(cls, d: Mapping) -> "BivariateSeries":
        num, den = d.get("delta_prefactor", [0, 1])
        return cls.from_terms(
            ((t["z"], t["q"], t["c"]) for t in d["terms"]),
            order=d.get("truncation_order"),
            delta=Fraction(num, den),
        )


# -- special values ----------------------------------------------------


@lru_cache(maxsize=None)
def _pochhammer_coeffs(n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        return ((0, 1),)
    prev = dict(_pochhammer_coeffs(n - 1))
    out = dict(prev)
    for e, v in prev.items():
        out[e + n] = out.get(e + n, 0) - v
    return tuple(sorted((e, v) for e, v in out.items() if v))


def q_pochhammer(n: int, order: int | None = None) -> QSeries:
    """``(q)_n = (1-q)(1-q^2)...(1-q^n)``; ``(q)_0 = 1``."""
    n = _as_int(n, "n")
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    return QSeries(dict(_pochhammer_coeffs(n)), order)


@lru_cache(maxsize=None)
def _gauss_coeffs(N: int, n: int) -> tuple[tuple[int, int], ...]:
    # [N, n] = [N-1, n-1] + q^n [N-1, n]
    if n == 0 or n == N:
        return ((0, 1),)
    out = dict(_gauss_coeffs(N - 1, n - 1))
    for e, v in _gauss_coeffs(N - 1, n):
        out[e + n] = out.get(e + n, 0) + v
    return tuple(sorted(out.items()))


def _integral_arg(x, strict: bool, what: str):
    if isinstance(x, bool):
        raise TypeError(f"{what} must be numeric")
    if isinstance(x, Integral):
        return int(x)
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    if strict:
        raise ValueError(f"non-integer {what} {x!r}")
    return None


def q_binomial(N, n, order: int | None = None, strict: bool = False) -> QSeries:
    """Gaussian binomial ``(q)_N / ((q)_n (q)_{N-n})``.

    Out-of-range ``n`` gives 0, and so does a non-integer ``n`` (as happens
    in alternating sums when parity fails) unless ``strict=True``.
    """
    N = _integral_arg(N, strict, "N")
    n = _integral_arg(n, strict, "n")
    if N is None or n is None or N < 0 or n < 0 or n > N:
        return QSeries.zero(order)
    return QSeries(dict(_gauss_coeffs(N, n)), order)


def series_invert(s: QSeries) -> QSeries:
    """Multiplicative inverse modulo ``q^(D+1)``; constant term must be +1 or -1.

    For an exact polynomial (``order=None``) the inverse is generally an
    infinite series, so the input must carry a truncation order.
    """
    c0 = s.coeff(0)
    if c0 not in (1, -1):
        raise NotInvertible(f"constant term {c0} is not a unit")
    D = s.order
    if D is None:
        if s.degree() == 0:
            return s
        raise NotInvertible("an untruncated polynomial has no polynomial inverse")
    terms = s.items()
    t = [0] * (D + 1)
    t[0] = c0
    for m in range(1, D + 1):
        acc = 0
        for e, v in terms:
            if e == 0:
                continue
            if e > m:
                break
            acc += v * t[m - e]
        t[m] = -acc * c0
    return QSeries({e: v for e, v in enumerate(t) if v}, D)


def chi(b: int) -> ZLaurent:
    """Character of the (b+1)-dimensional sl2 module: z^b + z^(b-2) + ... + z^-b."""
    b = _as_int(b, "b")
    if b < 0:
        raise ValueError("chi needs b >= 0")
    return ZLaurent._raw({e: 1 for e in range(-b, b + 1, 2)})
