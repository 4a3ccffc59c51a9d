"""Paths and spin configurations of the level-l vertex model.

A path ``p = (p_1, p_2, ...)`` has steps ``p_i - p_{i+1}`` in the spin
alphabet ``S = {l, l-2, ..., -l}`` and agrees with the ground state
``(k, l-k, k, l-k, ...)`` beyond a finite window.  Spins are the
differences ``s_i = p_{i+1} - p_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from ._kernels import KernelCapExceeded

__all__ = [
    "ModelParams",
    "FinitePath",
    "SpinConfig",
    "ResourceCapExceeded",
    "local_energy",
    "ground_spin",
    "ground_height",
    "ground_energy",
    "path_to_spins",
    "spins_to_path",
    "local_energies",
    "energy",
    "weight",
    "enumerate_paths",
    "enumerate_spin_windows",
    "path_statistics",
]


class ResourceCapExceeded(RuntimeError):
    """An enumeration would exceed its declared size budget."""


@dataclass(frozen=True)
class ModelParams:
    l: int

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 1:
            raise ValueError(f"level must be a positive integer, got {self.l!r}")

    @property
    def spins(self) -> tuple[int, ...]:
        return tuple(range(self.l, -self.l - 1, -2))

    def conformal_weight(self, k: int) -> Fraction:
        """``k(k+2) / (4(l+2))``."""
        _check_k(self.l, k)
        return Fraction(k * (k + 2), 4 * (self.l + 2))

    @property
    def conformal_weights(self) -> tuple[Fraction, ...]:
        return tuple(self.conformal_weight(k) for k in range(self.l + 1))


def _check_level(l) -> None:
    if isinstance(l, bool) or not isinstance(l, (int, np.integer)) or l < 1:
        raise ValueError(f"level must be a positive integer, got {l!r}")


def _check_k(l: int, k) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= l:
        raise ValueError(f"boundary label k must lie in 0..{l}, got {k!r}")


def _check_spin(s, l: int) -> None:
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)):
        raise ValueError(f"spin must be an integer, got {s!r}")
    if abs(s) > l or (s - l) % 2:
        raise ValueError(f"{s} is not in the spin alphabet for level {l}")


def local_energy(s: int, s2: int, l: int) -> int:
    """The local energy ``H(s, s')`` of neighbouring spins, in ``0..l``."""
    _check_spin(s, l)
    _check_spin(s2, l)
    return (s2 + l) // 2 if s + s2 >= 0 else (l - s) // 2


def ground_spin(l: int, k: int, i: int) -> int:
    return l - 2 * k if i % 2 else 2 * k - l


def ground_height(l: int, k: int, i: int) -> int:
    return k if i % 2 else l - k


def ground_energy(l: int, k: int, i: int) -> int:
    """``h_i`` of the ground state: ``k`` at odd ``i``, ``l-k`` at even ``i``."""
    return k if i % 2 else l - k


def _canonical_window(values: Sequence[int], ground) -> tuple[int, ...]:
    # strip trailing ground entries, then pad to even length
    w = list(values)
    while w and w[-1] == ground(len(w)):
        w.pop()
    if len(w) % 2:
        w.append(ground(len(w) + 1))
    return tuple(int(x) for x in w)


@dataclass(frozen=True)
class FinitePath:
    """A path in ``P(k)`` stored as its minimal even-length deviation window."""

    l: int
    k: int
    window: tuple[int, ...] = field(default=())

    def __post_init__(self):
        _check_level(self.l)
        _check_k(self.l, self.k)
        w = tuple(self.window)
        ext = list(w) + [ground_height(self.l, self.k, len(w) + 1)]
        for a, b in zip(ext, ext[1:]):
            if abs(a - b) > self.l or (a - b - self.l) % 2:
                raise ValueError(f"step {a} -> {b} is not in the spin alphabet")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(
            self, "window", _canonical_window(w, lambda i: ground_height(self.l, self.k, i))
        )

    def height(self, i: int) -> int:
        """``p_i`` (1-based)."""
        if i <= len(self.window):
            return self.window[i - 1]
        return ground_height(self.l, self.k, i)

    def is_ground(self) -> bool:
        return not self.window

    @classmethod
    def ground(cls, l: int, k: int) -> "FinitePath":
        return cls(l, k, ())

    def to_dict(self) -> dict:
        return {"l": self.l, "k": self.k, "window": list(self.window)}

    @classmethod
    def from_dict(cls, d) -> "FinitePath":
        return cls(int(d["l"]), int(d["k"]), tuple(int(x) for x in d["window"]))


@dataclass(frozen=True)
class SpinConfig:
    """A spin configuration in ``Sigma(k)`` stored as a minimal even window."""

    l: int
    k: int
    spins: tuple[int, ...] = field(default=())

    def __post_init__(self):
        _check_level(self.l)
        _check_k(self.l, self.k)
        for s in self.spins:
            _check_spin(s, self.l)
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(
            self,
            "spins",
            _canonical_window(self.spins, lambda i: ground_spin(self.l, self.k, i)),
        )

    def spin(self, i: int) -> int:
        if i <= len(self.spins):
            return self.spins[i - 1]
        return ground_spin(self.l, self.k, i)

    def to_dict(self) -> dict:
        return {"l": self.l, "k": self.k, "spins": list(self.spins)}

    @classmethod
    def from_dict(cls, d) -> "SpinConfig":
        return cls(int(d["l"]), int(d["k"]), tuple(int(x) for x in d["spins"]))


def path_to_spins(p: FinitePath) -> SpinConfig:
    T = len(p.window)
    return SpinConfig(p.l, p.k, tuple(p.height(i + 1) - p.height(i) for i in range(1, T + 1)))


def spins_to_path(s: SpinConfig) -> FinitePath:
    T = len(s.spins)
    heights = [0] * (T + 1)
    heights[T] = ground_height(s.l, s.k, T + 1)
    for i in range(T, 0, -1):
        heights[i - 1] = heights[i] - s.spins[i - 1]
    return FinitePath(s.l, s.k, tuple(heights[:T]))


def local_energies(p: FinitePath | SpinConfig) -> tuple[int, ...]:
    """``(h_1, ..., h_T)`` over the spin window; ground values beyond it."""
    s = path_to_spins(p) if isinstance(p, FinitePath) else p
    return tuple(
        local_energy(s.spin(i), s.spin(i + 1), s.l) for i in range(1, len(s.spins) + 1)
    )


def energy(p: FinitePath | SpinConfig) -> int:
    """``E(p) = sum_i i (h_i(p) - h_i^(k))``."""
    h = local_energies(p)
    return sum(i * (hi - ground_energy(p.l, p.k, i)) for i, hi in enumerate(h, start=1))


def weight(p: FinitePath | SpinConfig) -> int:
    """The sl2 weight ``p_1``."""
    if isinstance(p, SpinConfig):
        p = spins_to_path(p)
    return p.height(1)


def default_width(l: int, emax: int) -> int:
    return 2 * (emax + l + 2)


def enumerate_spin_windows(
    l: int, k: int, emax: int, max_paths: int | None = None, width: int | None = None
) -> tuple[np.ndarray, np.ndarray, int]:
    """Spin windows of every path with ``E <= emax``, certified complete.

    The search is run at window width ``W`` and ``W + 2``; the result is
    accepted only when the wider search adds nothing (every wider window
    ends in a ground pair and the counts agree).  ``W`` grows by 2 until
    that holds.  Returns ``(spins, energies, W)``.
    """
    _check_level(l)
    _check_k(l, k)
    if emax < 0:
        raise ValueError("emax must be non-negative")
    W = default_width(l, emax) if width is None else width
    if W % 2:
        W += 1
    cap = -1 if max_paths is None else int(max_paths)
    g_odd, g_even = l - 2 * k, 2 * k - l
    for _ in range(64):
        try:
            spins, es = _kernels.enumerate_spin_windows(l, k, emax, W, cap)
            wider, wes = _kernels.enumerate_spin_windows(l, k, emax, W + 2, cap)
        except KernelCapExceeded as exc:
            raise ResourceCapExceeded(
                f"more than {max_paths} paths with E <= {emax} (l={l}, k={k})"
            ) from exc
        # positions W+1 (odd) and W+2 (even) must hold the ground spins
        stable = len(es) == len(wes) and bool(
            np.all(wider[:, W] == g_odd) and np.all(wider[:, W + 1] == g_even)
        )
        if stable:
            return spins, es, W
        W += 2
    raise RuntimeError("enumeration window did not stabilise")


def path_statistics(
    l: int, k: int, emax: int, max_paths: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """``(energies, weights)`` of all paths with ``E <= emax``."""
    spins, es, W = enumerate_spin_windows(l, k, emax, max_paths)
    # p_1 = p_{W+1} - (s_1 + ... + s_W)
    weights = ground_height(l, k, W + 1) - spins.sum(axis=1)
    return es, weights.astype(np.int64)


def enumerate_paths(
    l: int, k: int, emax: int, max_paths: int | None = None, width: int | None = None
) -> list[FinitePath]:
    """Every path in ``P(k)`` with energy ``<= emax``.

    Ordered by (canonical spin-window length, spin window).
    """
    spins, _, _ = enumerate_spin_windows(l, k, emax, max_paths, width)
    configs = {SpinConfig(l, k, tuple(int(x) for x in row)) for row in spins}
    ordered = sorted(configs, key=lambda c: (len(c.spins), c.spins))
    return [spins_to_path(c) for c in ordered]
