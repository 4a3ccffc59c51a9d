"""Command-line front end.

Exit codes: 0 success, 1 verification counterexample, 2 invalid input,
3 resource cap exceeded.  Every flag can also be set through an
environment variable ``SPECTRAL_PATHS_<COMMAND>_<FLAG>``, e.g.
``SPECTRAL_PATHS_DECOMPOSE_EMAX=6``.
"""
from __future__ import annotations

import json
import sys

import click

from . import _kernels
from .characters import character, full_character
from .reports import DECOMPOSE_COLUMNS, decomposition, key_summary, spectrum_summary
from .spectral import SpectralKey, Spectrum, spectrum_of
from .verify import SUITES, Bounds, run_suite
from .vertex_paths import FinitePath, ResourceCapExceeded

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3

CHARACTER_METHODS = ("brute_force", "factorized", "bosonic", "rsos", "fermionic")


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise click.BadParameter(f"expected a list of integers, got {text!r}")


def _load_json(arg: str):
    """A JSON literal, or ``@file`` / a path to a JSON file."""
    src = arg[1:] if arg.startswith("@") else arg
    if not src.lstrip().startswith(("{", "[")):
        with open(src, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(src)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _tsv(rows, columns) -> str:
    def cell(v):
        if isinstance(v, (list, tuple)):
            return ",".join(str(x) for x in v)
        return "" if v is None else str(v)

    lines = ["\t".join(columns)]
    lines += ["\t".join(cell(r.get(c)) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


def _guard(fn):
    """Map library exceptions to the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ResourceCapExceeded as exc:
            click.echo(f"error: resource cap exceeded: {exc}", err=True)
            sys.exit(EXIT_CAP)
        except (ValueError, KeyError, TypeError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _levels_ks(l: int, k: int | None) -> list[int]:
    if k is not None:
        if not 0 <= k <= l:
            raise click.BadParameter(f"k must lie in 0..{l}", param_hint="--k")
        return [k]
    return list(range(l + 1))


fmt_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True
)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                          help="Write the report here instead of stdout.")
jobs_option = click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
                           help="Worker processes; output does not depend on it.")
cap_option = click.option("--max-paths", type=click.IntRange(min=1), default=None,
                          help="Abort (exit 3) if more paths would be enumerated.")


@click.group(context_settings={"auto_envvar_prefix": "SPECTRAL_PATHS",
                               "help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Spectral decomposition of level-l vertex-model paths."""


@main.command("decode")
@click.option("--l", "l", type=click.IntRange(min=1), required=False)
@click.option("--k", "k", type=click.IntRange(min=0), required=False)
@click.option("--h", "h", default=None, help="Local-energy window, e.g. '1,2,2,2'.")
@click.option("--window", default=None, help="Path window (p_1, ..., p_T).")
@click.option("--input", "input_", default=None,
              help="Path or spectrum JSON ({'l','k','window'} or {'l','k','h'}), inline or a file.")
@fmt_option
@out_option
@_guard
def cmd_decode(l, k, h, window, input_, fmt, out):
    """Decode a spectrum (or a path's spectrum) to (N, r, a)."""
    if input_ is not None:
        d = _load_json(input_)
        l, k = int(d["l"]), int(d["k"])
        if "h" in d:
            spec = Spectrum(l, k, tuple(d["h"]))
        else:
            spec = spectrum_of(FinitePath.from_dict(d))
    else:
        if l is None or k is None or (h is None) == (window is None):
            raise click.UsageError("give --l, --k and exactly one of --h / --window, or --input")
        if h is not None:
            spec = Spectrum(l, k, _ints(h))
        else:
            spec = spectrum_of(FinitePath(l, k, _ints(window)))
    rec = spectrum_summary(spec)
    cols = ("l", "k", "N", "r", "a", "h", "h_sharp", "d", "size", "beta")
    _emit(_dump(rec) if fmt == "json" else _tsv([rec], cols), out)


@main.command("encode")
@click.option("--l", "l", type=click.IntRange(min=1), required=True)
@click.option("--k", "k", type=click.IntRange(min=0), required=True)
@click.option("--key", default=None, help="Key JSON {'N','r','a'}, inline or a file.")
@click.option("--r", "r", default=None, help="Restricted path, e.g. '0,1,2,1'.")
@click.option("--a", "a", default=None, help="Diagram multiplicities, e.g. '0,1,0'.")
@fmt_option
@out_option
@_guard
def cmd_encode(l, k, key, r, a, fmt, out):
    """Encode (r, a) back to its local-energy spectrum."""
    if key is not None:
        d = _load_json(key)
    elif r is not None and a is not None:
        d = {"r": list(_ints(r)), "a": list(_ints(a))}
    else:
        raise click.UsageError("give --key, or both --r and --a")
    rec = key_summary(SpectralKey.from_dict(d, l, k))
    cols = ("l", "k", "N", "r", "a", "h", "h_sharp", "d", "size", "beta")
    _emit(_dump(rec) if fmt == "json" else _tsv([rec], cols), out)


@main.command("decompose")
@click.option("--l", "l", type=click.IntRange(min=1), required=True)
@click.option("--k", "k", type=click.IntRange(min=0), default=None, help="Default: every k.")
@click.option("--emax", type=click.IntRange(min=0), required=True)
@fmt_option
@out_option
@jobs_option
@cap_option
@_guard
def cmd_decompose(l, k, emax, fmt, out, jobs, max_paths):
    """Fiber table of every spectrum with energy <= EMAX.

    TSV columns: k, N, r, a, d, size, beta, fiber_count, fiber_z_character,
    closed_form_character.  A final row per k has N = 'total' and the
    truncated path character in the fiber_z_character column.
    """
    reports = [decomposition(l, kk, emax, jobs, max_paths) for kk in _levels_ks(l, k)]
    if fmt == "json":
        payload = [
            {
                "l": rep["l"],
                "k": rep["k"],
                "emax": rep["emax"],
                "delta_prefactor": rep["delta_prefactor"],
                "rows": rep["rows"],
                "total": rep["total"].to_dict(),
            }
            for rep in reports
        ]
        _emit(_dump(payload[0] if k is not None else payload), out)
    else:
        rows = []
        for rep in reports:
            rows += rep["rows"]
            rows.append({"k": rep["k"], "N": "total", "fiber_z_character": rep["total"].to_text(),
                         "fiber_count": sum(r["fiber_count"] for r in rep["rows"])})
        _emit(_tsv(rows, DECOMPOSE_COLUMNS), out)


@main.command("character")
@click.option("--l", "l", type=click.IntRange(min=1), required=True)
@click.option("--k", "k", type=click.IntRange(min=0), default=None, help="Default: every k.")
@click.option("--qmax", type=click.IntRange(min=0), required=True, help="q-truncation order D.")
@click.option("--method", type=click.Choice(CHARACTER_METHODS), default="bosonic", show_default=True)
@click.option("--nmax", type=click.IntRange(min=0), default=None,
              help="Cut the sum over N here instead of choosing it automatically.")
@fmt_option
@out_option
@cap_option
@_guard
def cmd_character(l, k, qmax, method, nmax, fmt, out, max_paths):
    """Character of L(k) modulo q^(QMAX+1).

    TSV columns: k, z, q, c; the prefactor q^Delta is given as an exact
    fraction in a comment line per k.
    """
    results = []
    for kk in _levels_ks(l, k):
        if nmax is not None and method not in ("brute_force", "factorized"):
            s = full_character(l, kk, qmax, N_max=nmax, method=method)
        else:
            s = character(l, kk, qmax, method, max_paths)
        results.append((kk, s))
    if fmt == "json":
        payload = [dict({"l": l, "k": kk, "method": method}, **s.to_dict()) for kk, s in results]
        _emit(_dump(payload[0] if k is not None else payload), out)
    else:
        lines = []
        for kk, s in results:
            d = s.delta
            lines.append(f"# l={l} k={kk} method={method} delta={d.numerator}/{d.denominator}")
            lines.append("k\tz\tq\tc")
            lines += [f"{kk}\t{z}\t{q}\t{c}" for z, q, c in s.terms()]
        _emit("\n".join(lines) + "\n", out)


@main.command("verify")
@click.argument("suite", type=click.Choice(sorted(SUITES) + ["all"]))
@click.option("--l", "l", type=click.IntRange(min=1), default=None, help="Single level (default: suite range).")
@click.option("--k", "k", type=click.IntRange(min=0), default=None)
@click.option("--emax", type=click.IntRange(min=0), default=None)
@click.option("--qmax", type=click.IntRange(min=0), default=None)
@click.option("--nmax", type=click.IntRange(min=0), default=None)
@fmt_option
@out_option
@jobs_option
@cap_option
@_guard
def cmd_verify(suite, l, k, emax, qmax, nmax, fmt, out, jobs, max_paths):
    """Run a verification suite; exit 1 on the first counterexample.

    TSV columns: suite, passed, instances, seconds, counterexample.
    """
    bounds = Bounds(levels=(l,) if l else None, k=k, emax=emax, qmax=qmax, nmax=nmax,
                    max_paths=max_paths)
    names = sorted(SUITES) if suite == "all" else [suite]
    results = [run_suite(n, bounds, jobs) for n in names]
    if fmt == "json":
        payload = {"backend": _kernels.BACKEND, "results": [r.to_dict() for r in results]}
        _emit(_dump(payload), out)
    else:
        rows = [
            {
                "suite": r.suite,
                "passed": "pass" if r.passed else "FAIL",
                "instances": r.instances,
                "seconds": f"{r.seconds:.3f}",
                "counterexample": json.dumps(r.counterexample) if r.counterexample else "",
            }
            for r in results
        ]
        _emit(_tsv(rows, ("suite", "passed", "instances", "seconds", "counterexample")), out)
    for r in results:
        click.echo(
            f"{r.suite}: {'pass' if r.passed else 'FAIL'} "
            f"({r.instances} instances, {r.seconds:.2f}s)",
            err=True,
        )
    if not all(r.passed for r in results):
        sys.exit(EXIT_COUNTEREXAMPLE)


if __name__ == "__main__":
    main()
