"""Exhaustive desk-scale verification suites.

Each suite expands its bounds into independent tasks, checks every task
and reports the number of instances examined, the wall time and the first
counterexample.  Tasks run serially or on a process pool; results are
merged in task order, so reports do not depend on the worker count.
"""
from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .characters import (
    F_bosonic,
    F_path_sum,
    F_rsos_recursive,
    G_closed,
    G_definition,
    G_recursive,
    brute_force_character,
    factorized_character,
    fermionic_normalization,
    full_character,
    rogers_szego,
)
from .qz_series import BivariateSeries, ZLaurent, q_binomial
from .spectral import (
    SpectralKey,
    Spectrum,
    decode,
    degree,
    degree_by_maxima,
    encode,
    enumerate_restricted_paths,
    enumerate_young,
    fibers,
    keys_up_to,
    parse_blocks,
    size,
    spectrum_of,
    YoungDiagram,
    beta,
)
from .transfer import (
    F_of,
    T_matrix,
    beta_product,
    check_lemma_45,
    factorize,
    fiber_z_character,
    predicted_factor,
)
from .vertex_paths import (
    energy,
    enumerate_paths,
    local_energies,
    path_to_spins,
    spins_to_path,
    weight,
)

__all__ = ["Bounds", "SuiteResult", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Bounds:
    """Search limits; ``None`` means the suite's own default."""

    levels: tuple[int, ...] | None = None
    k: int | None = None
    emax: int | None = None
    qmax: int | None = None
    nmax: int | None = None
    max_paths: int | None = None


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    instances: int
    seconds: float
    bounds: dict
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "seconds": round(self.seconds, 3),
            "bounds": self.bounds,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }


@dataclass
class _Partial:
    instances: int = 0
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    def check(self, ok: bool, witness: Callable[[], dict]):
        self.instances += 1
        if not ok and self.counterexample is None:
            self.counterexample = witness()


def _levels(b: Bounds, default) -> tuple[int, ...]:
    return tuple(b.levels) if b.levels else tuple(default)


def _ks(b: Bounds, l: int) -> list[int]:
    if b.k is not None:
        return [b.k] if b.k <= l else []
    return list(range(l + 1))


def _pairs(b: Bounds, default_levels) -> list[tuple[int, int]]:
    return [(l, k) for l in _levels(b, default_levels) for k in _ks(b, l)]


def _or(x, default):
    return default if x is None else x


def _key_json(key: SpectralKey) -> dict:
    return key.to_dict()


def _weights(paths) -> ZLaurent:
    out: dict[int, int] = defaultdict(int)
    for p in paths:
        out[weight(p)] += 1
    return ZLaurent(out)


# -- suites ------------------------------------------------------------


def _spectrum_condition_tasks(b: Bounds):
    return [(l, k, _or(b.emax, 8), b.max_paths) for l, k in _pairs(b, (1, 2, 3))]


def _spectrum_condition(task) -> _Partial:
    l, k, emax, cap = task
    out = _Partial()
    zero_energy = 0
    for p in enumerate_paths(l, k, emax, cap):
        wit = lambda: {"l": l, "k": k, "path": p.to_dict()}
        h = local_energies(p)
        try:
            spec = Spectrum(l, k, h)
        except ValueError:
            spec = None
        out.check(spec is not None, wit)
        out.check(spins_to_path(path_to_spins(p)) == p, wit)
        e = energy(p)
        # E = 0 exactly on the ground spectrum, which carries k+1 paths
        out.check(e >= 0 and (e == 0) == (spec is not None and not spec.window), wit)
        zero_energy += e == 0
        out.check((weight(p) - k) % 2 == 0, wit)
    out.check(zero_energy == k + 1, lambda: {"l": l, "k": k, "zero_energy_paths": zero_energy})
    return out


def _bijection_tasks(b: Bounds):
    return [(l, k, _or(b.nmax, 10), _or(b.emax, 8), b.max_paths) for l, k in _pairs(b, (1, 2, 3))]


def _bijection(task) -> _Partial:
    l, k, nmax, emax, cap = task
    out = _Partial()
    for N in range(k, nmax + 1, 2):
        diagrams = enumerate_young(N, nmax)
        for r in enumerate_restricted_paths(l, k, N):
            for a in diagrams:
                key = SpectralKey(r, a)
                h = encode(key)
                bd = parse_blocks(h)
                wit = lambda: {"l": l, "k": k, "key": _key_json(key), "h": list(h.window)}
                out.check(decode(h) == key, wit)
                out.check(bd.interlacing_holds(), wit)
                out.check(bd.M == bd.J + 2 * sum(a.a), wit)
    for p in enumerate_paths(l, k, emax, cap):
        h = spectrum_of(p)
        out.check(encode(decode(h)) == h, lambda: {"l": l, "k": k, "h": list(h.window)})
    return out


def _energy_split_tasks(b: Bounds):
    return [(l, k, _or(b.emax, 8), b.max_paths) for l, k in _pairs(b, (1, 2, 3))]


def _energy_split(task) -> _Partial:
    l, k, emax, cap = task
    out = _Partial()
    for p in enumerate_paths(l, k, emax, cap):
        key = decode(spectrum_of(p))
        e = energy(p)
        out.check(
            e == degree(key.r) + size(key.a),
            lambda: {"l": l, "k": k, "path": p.to_dict(), "key": _key_json(key), "E": e},
        )
        if key.a.is_zero():
            bd = parse_blocks(spectrum_of(p))
            J = bd.J
            if J % 2 == 0:
                ls = bd.h_sharp
                closed = sum(i * x for i, x in enumerate(ls[:J], start=1))
                closed4 = 4 * closed + 2 * J * k - J * (J + 2) * l
                out.check(
                    closed4 == 4 * e,
                    lambda: {"l": l, "k": k, "key": _key_json(key), "E": e, "closed_times_4": closed4},
                )
    return out


def _fiber_characters_tasks(b: Bounds):
    return [(l, k, _or(b.emax, 8), b.max_paths) for l, k in _pairs(b, (1, 2, 3))]


def _fiber_characters(task) -> _Partial:
    l, k, emax, cap = task
    out = _Partial()
    fs = fibers(l, k, emax, cap)
    expected = list(keys_up_to(l, k, emax))
    out.check(
        list(fs) == expected,
        lambda: {"l": l, "k": k, "reason": "fiber keys differ from d+|a| <= emax",
                 "missing": [_key_json(x) for x in expected if x not in fs][:5],
                 "extra": [_key_json(x) for x in fs if x not in set(expected)][:5]},
    )
    for key, paths in fs.items():
        wit = lambda: {"l": l, "k": k, "key": _key_json(key)}
        observed = _weights(paths)
        predicted = beta_product(key.a)
        out.check(observed == predicted, wit)
        out.check(fiber_z_character(key) == observed, wit)
        F = F_of(key)
        out.check(F.at_one() == len(paths), wit)
        T = T_matrix(key)
        out.check(len(T.nonzero()) == 1, wit)
        fz = factorize(key)
        out.check(fz.product() == T, wit)
        out.check(
            all(fz.factors[i - 1] == predicted_factor(fz, i) for i in range(1, len(fz.betas))),
            wit,
        )
    return out


def _product_collapse_tasks(b: Bounds):
    return [(l, _or(b.nmax, 3)) for l in _levels(b, range(1, 5))]


def _product_collapse(task) -> _Partial:
    l, nmax = task
    out = _Partial()
    for a in range(l + 1):
        for n in range(1, nmax + 1):
            out.check(check_lemma_45(a, n, l), lambda: {"l": l, "a": a, "n": n})
    return out


def _beta_invariance_tasks(b: Bounds):
    return [(l, k, _or(b.nmax, 6)) for l, k in _pairs(b, (1, 2, 3))]


def _beta_invariance(task) -> _Partial:
    l, k, nmax = task
    out = _Partial()
    for N in range(k, nmax + 1, 2):
        paths = enumerate_restricted_paths(l, k, N)
        groups: dict[tuple, list[YoungDiagram]] = defaultdict(list)
        for a in product(range(3), repeat=N):
            y = YoungDiagram(a)
            groups[beta(y)].append(y)
        for r in paths:
            for bvec, ys in groups.items():
                ref = F_of(SpectralKey(r, ys[0]))
                for y in ys[1:]:
                    out.check(
                        F_of(SpectralKey(r, y)) == ref,
                        lambda: {"l": l, "k": k, "r": list(r.heights),
                                 "a": list(ys[0].a), "a_prime": list(y.a)},
                    )
    return out


def _G_routes_tasks(b: Bounds):
    D = _or(b.qmax, 12)
    return [(N, D) for N in range(_or(b.nmax, 8) + 1)]


def _G_routes(task) -> _Partial:
    N, D = task
    out = _Partial()
    closed = G_closed(N, D)
    wit = lambda: {"N": N, "D": D, "closed": closed.to_text()}
    out.check(G_recursive(N, D) == closed, wit)
    out.check(G_definition(N, D) == closed, wit)
    rs = rogers_szego(N)
    direct = BivariateSeries.zero(None)
    for n in range(N + 1):
        direct = direct + BivariateSeries.from_parts(ZLaurent.monomial(N - 2 * n), q_binomial(N, n))
    out.check(rs == direct, lambda: {"N": N, "rogers_szego": rs.to_text()})
    return out


def _F_routes_tasks(b: Bounds):
    return [(l, k, _or(b.nmax, 10)) for l, k in _pairs(b, range(1, 5))]


def _F_routes(task) -> _Partial:
    l, k, nmax = task
    out = _Partial()
    for N in range(k, nmax + 1, 2):
        ps = F_path_sum(N, k, l)
        bo = F_bosonic(N, k, l)
        rs = F_rsos_recursive(N, k, l)
        out.check(
            ps == bo == rs,
            lambda: {"l": l, "k": k, "N": N, "path_sum": str(ps), "bosonic": str(bo), "rsos": str(rs)},
        )
    return out


def _fermionic_tasks(b: Bounds):
    return [(l, k, _or(b.nmax, 8)) for l, k in _pairs(b, (1, 2, 3))]


def _fermionic(task) -> _Partial:
    l, k, nmax = task
    out = _Partial()
    rep = fermionic_normalization(l, k, nmax)
    out.instances += len(rep.shifts)
    if not rep.ok:
        out.counterexample = {"l": l, "k": k, "failure": rep.first_failure}
    lit = fermionic_normalization(l, k, nmax, "literal")
    out.notes.append(
        {"l": l, "k": k, "normalization_shift": None if rep.constant is None else str(rep.constant),
         "literal_delta_k_plus_1_matches": lit.ok}
    )
    return out


def _character_identity_tasks(b: Bounds):
    return [(l, k, _or(b.qmax, 8), b.max_paths) for l, k in _pairs(b, (1, 2, 3))]


def _character_identity(task) -> _Partial:
    l, k, D, cap = task
    out = _Partial()
    bf = brute_force_character(l, k, D, cap)
    for method in ("bosonic", "rsos", "fermionic"):
        fc = full_character(l, k, D, method=method)
        out.check(
            fc == bf,
            lambda: {"l": l, "k": k, "D": D, "method": method,
                     "brute_force": bf.to_text(), "formula": fc.to_text()},
        )
    fz = factorized_character(l, k, D)
    out.check(fz == bf, lambda: {"l": l, "k": k, "D": D, "method": "factorized",
                                 "brute_force": bf.to_text(), "formula": fz.to_text()})
    return out


def _degree_definitions_tasks(b: Bounds):
    return [(l, k, _or(b.nmax, 10)) for l, k in _pairs(b, range(1, 5))]


def _degree_definitions(task) -> _Partial:
    l, k, nmax = task
    out = _Partial()
    for N in range(k, nmax + 1, 2):
        for r in enumerate_restricted_paths(l, k, N):
            out.check(degree(r) == degree_by_maxima(r),
                      lambda: {"l": l, "r": list(r.heights)})
    return out


SUITES: dict[str, tuple[Callable, Callable]] = {
    "prop2.2": (_spectrum_condition_tasks, _spectrum_condition),
    "thm3.5": (_bijection_tasks, _bijection),
    "prop4.1": (_energy_split_tasks, _energy_split),
    "thm4.2": (_fiber_characters_tasks, _fiber_characters),
    "lemma4.5": (_product_collapse_tasks, _product_collapse),
    "lemma4.6": (_beta_invariance_tasks, _beta_invariance),
    "prop5.2": (_G_routes_tasks, _G_routes),
    "prop5.3": (_F_routes_tasks, _F_routes),
    "fermionic": (_fermionic_tasks, _fermionic),
    "thm2.1": (_character_identity_tasks, _character_identity),
    "d-equivalence": (_degree_definitions_tasks, _degree_definitions),
}


def run_suite(name: str, bounds: Bounds = Bounds(), jobs: int = 1) -> SuiteResult:
    """Run one suite; raises ``KeyError`` for an unknown name."""
    make_tasks, check = SUITES[name]
    tasks = make_tasks(bounds)
    t0 = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(check, tasks))
    else:
        parts = [check(t) for t in tasks]
    seconds = time.perf_counter() - t0
    first = next((p.counterexample for p in parts if p.counterexample is not None), None)
    notes = [n for p in parts for n in p.notes]
    shown = {k: v for k, v in vars(bounds).items() if v is not None}
    shown["tasks"] = [list(t) for t in tasks]
    return SuiteResult(
        name,
        first is None,
        sum(p.instances for p in parts),
        seconds,
        shown,
        first,
        notes,
    )
