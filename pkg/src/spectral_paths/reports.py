"""Report records shared by the CLI and the tests."""
from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .qz_series import BivariateSeries, ZLaurent
from .spectral import (
    SpectralKey,
    Spectrum,
    beta,
    decode,
    degree,
    encode,
    fibers,
    parse_blocks,
    size,
)
from .transfer import closed_form_fiber_character
from .vertex_paths import ModelParams, weight

DECOMPOSE_COLUMNS = (
    "k",
    "N",
    "r",
    "a",
    "d",
    "size",
    "beta",
    "fiber_count",
    "fiber_z_character",
    "closed_form_character",
)


def key_summary(key: SpectralKey) -> dict:
    """Everything the decoding map says about one spectrum."""
    h = encode(key)
    bd = parse_blocks(h)
    return {
        "l": key.r.l,
        "k": key.r.k,
        "N": key.N,
        "r": list(key.r.heights),
        "a": list(key.a.a),
        "h": list(h.window),
        "h_sharp": list(bd.h_sharp),
        "d": degree(key.r),
        "size": size(key.a),
        "beta": list(beta(key.a)),
    }


def spectrum_summary(h: Spectrum) -> dict:
    return key_summary(decode(h))


def _record(job) -> dict:
    key, weights, D = job
    zc: dict[int, int] = defaultdict(int)
    for w in weights:
        zc[w] += 1
    closed = closed_form_fiber_character(key, D)
    return {
        "k": key.r.k,
        "N": key.N,
        "r": list(key.r.heights),
        "a": list(key.a.a),
        "d": degree(key.r),
        "size": size(key.a),
        "beta": list(beta(key.a)),
        "fiber_count": len(weights),
        "fiber_z_character": str(ZLaurent(zc)),
        "closed_form_character": closed.to_text(),
    }


def decomposition(
    l: int, k: int, emax: int, jobs: int = 1, max_paths: int | None = None
) -> dict:
    """Fiber table for ``E <= emax`` and the truncated total character."""
    fs = fibers(l, k, emax, max_paths)
    work = [(key, tuple(weight(p) for p in paths), emax) for key, paths in fs.items()]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_record, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        rows = [_record(w) for w in work]
    delta = ModelParams(l).conformal_weight(k)
    total = BivariateSeries.zero(emax, delta)
    for key, paths in fs.items():
        e = degree(key.r) + size(key.a)
        total = total + BivariateSeries.from_terms(
            ((weight(p), e, 1) for p in paths), order=emax, delta=delta
        )
    return {
        "l": l,
        "k": k,
        "emax": emax,
        "delta_prefactor": [delta.numerator, delta.denominator],
        "rows": rows,
        "total": total,
    }


def fraction_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]
