"""Command-line interface.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 on usage errors.  Settings resolve as flags, then ``TRANSLIE_*``
environment variables, then defaults.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

import click

from . import linalg as la
from .hecke import (
    braid_tuple,
    det_check,
    gnq_membership,
    hull_table,
    identity_tuple,
    permutation_tuple,
    quadratic_check,
    table1_certificates,
)
from .lie_closure import (
    DEFAULT_PRIME,
    FieldMode,
    expected_block_dim,
    g_lambda_basis,
    g_prime_dim,
    theorem_a_verify,
)
from .partitions import (
    Partition,
    classify,
    conjugate,
    dimension,
    enumerate_partitions,
    eta,
    gamma,
    parse_partition,
)
from .seminormal import (
    bilinear_form,
    gram,
    m_map,
    rep_handle,
    sum_transpositions,
    verify_coxeter,
)
from .tableaux import enumerate_syt

SCHEMA = 1
MAX_N = 12
DEFAULT_ORDER = 8


class PartitionType(click.ParamType):
    name = "partition"

    def convert(self, value, param, ctx):
        if isinstance(value, Partition):
            return value
        try:
            lam = parse_partition(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)
        if not lam:
            self.fail("empty partition", param, ctx)
        if lam.n > MAX_N:
            self.fail(f"|λ| = {lam.n} exceeds the supported maximum {MAX_N}", param, ctx)
        return lam


PARTITION = PartitionType()


def _check_n(n: int, lo: int = 1, hi: int = MAX_N) -> None:
    if not lo <= n <= hi:
        raise click.UsageError(f"n must lie in {lo}..{hi}")


def _resolve_mode(mode: str, prime: int) -> FieldMode:
    try:
        if mode.strip().lower() == "fp":
            return FieldMode(prime)
        return FieldMode.parse(mode)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(ctx_obj: dict, payload: dict, rows: list[dict] | None = None, text: str | None = None) -> None:
    if ctx_obj["json"]:
        payload = {"schema": SCHEMA, **payload}
        click.echo(json.dumps(payload, sort_keys=True))
    elif ctx_obj["csv"] and rows is not None:
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _csv_cell(v) for k, v in r.items()})
        click.echo(buf.getvalue(), nl=False)
    elif text is not None:
        click.echo(text)


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(map(str, v)) + "]"
    return v


def _table(rows: list[dict]) -> str:
    if not rows:
        return "(empty)"
    cols = list(rows[0])
    cells = [[str(_csv_cell(r[c])) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _pmap(func: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _finish(ok: bool) -> None:
    sys.exit(0 if ok else 1)


_SHARED = ("as_json", "as_csv", "seed", "mode", "prime", "K", "jobs", "quiet")
_OBJ_KEY = {"as_json": "json", "as_csv": "csv"}


def shared_options(func):
    """Accept the global flags after the verb too; they override the group's values."""
    opts = [
        click.option("--json", "as_json", is_flag=True, default=None, help="JSON on stdout."),
        click.option("--csv", "as_csv", is_flag=True, default=None, help="CSV on stdout."),
        click.option("--seed", type=int, default=None),
        click.option("--mode", default=None, help="Q or Fp:p."),
        click.option("--prime", type=int, default=None),
        click.option("--order", "K", type=click.IntRange(1, 64), default=None),
        click.option("--jobs", type=click.IntRange(1, None), default=None),
        click.option("--quiet", is_flag=True, default=None),
    ]

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        obj = dict(ctx.obj or {})
        for name in _SHARED:
            value = kwargs.pop(name)
            if value is not None:
                obj[_OBJ_KEY.get(name, name)] = value
        if obj.get("json") and obj.get("csv"):
            raise click.UsageError("--json and --csv are mutually exclusive")
        return func(obj, *args, **kwargs)

    for opt in reversed(opts):
        wrapper = opt(wrapper)
    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--json", "as_json", is_flag=True, help="Machine-readable JSON on stdout.")
@click.option("--csv", "as_csv", is_flag=True, help="CSV on stdout (tabular commands).")
@click.option("--seed", type=int, default=0, envvar="TRANSLIE_SEED", show_default=True)
@click.option("--mode", default="Q", envvar="TRANSLIE_MODE", show_default=True, help="Q or Fp:p.")
@click.option("--prime", type=int, default=DEFAULT_PRIME, envvar="TRANSLIE_PRIME", show_default=True,
              help="Prime used by a bare '--mode Fp'.")
@click.option("--order", "K", type=click.IntRange(1, 64), default=DEFAULT_ORDER, envvar="TRANSLIE_ORDER",
              show_default=True, help="Truncation order K for series.")
@click.option("--jobs", type=click.IntRange(1, None), default=lambda: os.cpu_count() or 1, envvar="TRANSLIE_JOBS",
              help="Worker processes for independent shapes.")
@click.option("--quiet", is_flag=True, help="No progress output on stderr.")
@click.pass_context
def main(ctx, as_json, as_csv, seed, mode, prime, K, jobs, quiet):
    """Symmetric-group representations, transposition Lie algebras and braid hulls."""
    if as_json and as_csv:
        raise click.UsageError("--json and --csv are mutually exclusive")
    ctx.obj = {"json": as_json, "csv": as_csv, "seed": seed, "mode": mode, "prime": prime, "K": K,
               "jobs": jobs, "quiet": quiet}


@main.command("partitions-list")
@click.argument("n", type=int)
@shared_options
def partitions_list(obj, n):
    """All partitions of N with class, dimension, γ and η."""
    _check_n(n)
    rows = []
    for lam in enumerate_partitions(n):
        c = classify(lam)
        rows.append({
            "shape": list(lam),
            "conjugate": list(conjugate(lam)),
            "class": c.tag,
            "dim": dimension(lam),
            "gamma": gamma(lam) if n >= 2 else None,
            "eta": eta(lam) if n >= 2 else None,
        })
    _emit(obj, {"n": n, "partitions": rows}, rows, _table(rows))


@main.command()
@click.argument("shape", type=PARTITION)
@click.option("--count", "what", flag_value="count", default=True)
@click.option("--enumerate", "what", flag_value="enumerate")
@shared_options
def syt(obj, shape, what):
    """Standard tableaux of SHAPE (columns drawn left to right, top line first)."""
    tabs = enumerate_syt(shape)
    if what == "count":
        _emit(obj, {"shape": list(shape), "count": len(tabs)}, None, str(len(tabs)))
    else:
        text = "\n\n".join(t.render() for t in tabs)
        _emit(obj, {"shape": list(shape), "count": len(tabs), "tableaux": [t.to_json() for t in tabs]}, None, text)


@main.command()
@click.argument("shape", type=PARTITION)
@click.option("--matrices", "what", flag_value="matrices")
@click.option("--verify", "what", flag_value="verify", default=True)
@shared_options
def rep(obj, shape, what):
    """Seminormal matrices of SHAPE, or a verification of their identities."""
    if shape.n < 2:
        raise click.UsageError("need |λ| >= 2")
    h = rep_handle(shape)
    if what == "matrices":
        mats = [{"shape": list(shape), "generator": r, "entries": la.matrix_to_json(g)}
                for r, g in enumerate(h.generators, 1)]
        text = "\n\n".join(f"s_{m['generator']}:\n" + "\n".join(" ".join(row) for row in m["entries"]) for m in mats)
        _emit(obj, {"shape": list(shape), "matrices": mats}, None, text)
        return
    checks = {}
    checks["coxeter"] = verify_coxeter(h).passed
    checks["gram invariance"] = gram(shape).is_invariant()
    _, scalar = sum_transpositions(h)
    n = shape.n
    checks["transposition sum scalar"] = scalar * 2 * h.dim == n * (n - 1) * gamma(shape)
    checks["trace = gamma"] = la.trace(h.generators[0]) == gamma(shape)
    hc = rep_handle(conjugate(shape))
    M = m_map(shape)
    checks["m-map intertwines"] = all(
        la.is_zero(la.matmul(M, a) + la.matmul(b, M)) for a, b in zip(h.generators, hc.generators))
    if conjugate(shape) == shape:
        checks["bilinear twisted invariance"] = bilinear_form(shape).is_twisted_invariant()
    ok = all(checks.values())
    text = "\n".join(f"{'PASS' if v else 'FAIL'}  {k}" for k, v in checks.items())
    _emit(obj, {"shape": list(shape), "checks": checks, "pass": ok}, None, text)
    _finish(ok)


def _closure_one(args):
    lam, mode_label, strategy = args
    mode = FieldMode.parse(mode_label)
    d = g_lambda_basis(lam, mode, strategy=strategy).dim
    return {"shape": list(lam), "dim": d, "predicted": expected_block_dim(lam)}


@main.command()
@click.argument("shape", type=PARTITION, required=False)
@click.option("--all", "all_n", type=int, default=None, help="Close the full block layout for this n.")
@click.option("--strategy", type=click.Choice(["generators", "pairwise"]), default="generators", show_default=True)
@shared_options
def closure(obj, shape, all_n, strategy):
    """dim g_λ for SHAPE, or the block-diagonal closure for --all N."""
    if (shape is None) == (all_n is None):
        raise click.UsageError("give exactly one of SHAPE or --all N")
    mode = _resolve_mode(obj["mode"], obj["prime"])
    if all_n is not None:
        _check_n(all_n, 3, 8)
        try:
            rep_ = g_prime_dim(all_n, mode, strategy=strategy, progress=not obj["quiet"] and all_n >= 6)
        except ZeroDivisionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        _emit(obj, rep_.to_json(), rep_.blocks, _closure_text(rep_))
        _finish(rep_.passed)
    if dimension(shape) <= 1:
        raise click.UsageError(f"{shape} is one-dimensional")
    try:
        row = _closure_one((shape, mode.label, strategy))
    except ZeroDivisionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    ok = row["dim"] == row["predicted"]
    _emit(obj, {**row, "mode": mode.label, "pass": ok}, [row], f"{shape}: dim {row['dim']} (predicted {row['predicted']})")
    _finish(ok)


def _closure_text(r) -> str:
    lines = [_table(r.blocks), f"total {r.computed_dim} (predicted {r.predicted_dim}), mode {r.mode}, "
             f"ambient {r.ambient_dim}, {r.rounds} rounds, {r.elapsed:.1f}s"]
    for name, ok in r.containment_checks:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
    for row in r.per_shape:
        lines.append(f"{'PASS' if row['dim'] == row['predicted'] else 'FAIL'}  g_{row['shape']} dim {row['dim']}")
    lines.append("PASS" if r.passed else "FAIL")
    return "\n".join(lines)


@main.command("theorem-a")
@click.argument("n", type=int)
@click.option("--per-shape", is_flag=True, help="Also close every λ ⊢ n separately.")
@click.option("--strategy", type=click.Choice(["generators", "pairwise"]), default="generators", show_default=True)
@shared_options
def theorem_a(obj, n, per_shape, strategy):
    """Compare the closure of transpositions with the predicted decomposition."""
    _check_n(n, 3, 8)
    mode = _resolve_mode(obj["mode"], obj["prime"])
    try:
        r = theorem_a_verify(n, mode, per_shape=False, strategy=strategy, progress=not obj["quiet"] and n >= 6)
        if per_shape:
            shapes = [lam for lam in enumerate_partitions(n) if dimension(lam) > 1]
            r.per_shape = _pmap(_closure_one, [(lam, mode.label, strategy) for lam in shapes], obj["jobs"])
            r.passed = r.passed and all(x["dim"] == x["predicted"] for x in r.per_shape)
    except ZeroDivisionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _emit(obj, r.to_json(), r.blocks, _closure_text(r))
    _finish(r.passed)


@main.command("hull-table")
@click.argument("n", type=int)
@shared_options
def hull_table_cmd(obj, n):
    """Hull classes of the braid images on proper partitions of N."""
    _check_n(n, 3)
    rows = hull_table(n)
    _emit(obj, {"n": n, "rows": rows}, rows, _table(rows))


def _hecke_one(args):
    lam, K = args
    quad = all(quadratic_check(lam, i, K) for i in range(1, lam.n))
    return {"shape": list(lam), "quadratic": quad, "det": det_check(lam, K)}


@main.command("hecke-check")
@click.argument("n", type=int)
@click.option("--trials", type=int, default=4, show_default=True)
@shared_options
def hecke_check(obj, n, trials):
    """Quadratic relation, determinant law and even-word certificates modulo h^K."""
    _check_n(n, 3, 7)
    K = obj["K"]
    rows = _pmap(_hecke_one, [(lam, K) for lam in enumerate_partitions(n)], obj["jobs"])
    t1 = table1_certificates(n, K, trials=trials, seed=obj["seed"])
    ok = all(r["quadratic"] and r["det"] for r in rows) and t1.passed
    text = _table(rows) + f"\neven-word certificates: {t1.det_checks} det, {t1.form_checks} form, " \
        f"{t1.anti_checks} single-letter; {'PASS' if t1.passed else 'FAIL ' + '; '.join(t1.failures)}"
    payload = {"n": n, "K": K, "rows": rows, "table1": {"pass": t1.passed, "failures": t1.failures,
               "words": t1.words}, "pass": ok}
    _emit(obj, payload, rows, text)
    _finish(ok)


def _random_even_permutation(n: int, rng: random.Random) -> tuple[int, ...]:
    while True:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        if inv % 2 == 0 and perm != list(range(1, n + 1)):
            return tuple(perm)


@main.command("gnq-check")
@click.argument("n", type=int)
@shared_options
def gnq_check(obj, n):
    """The G_n(q) equations on the identity, an even permutation and the σ_1 image."""
    _check_n(n, 3, 7)
    K = obj["K"]
    rng = random.Random(obj["seed"])
    sigma = _random_even_permutation(n, rng)
    cases = {
        "identity": gnq_membership(identity_tuple(n, K)),
        f"even permutation {list(sigma)}": gnq_membership(permutation_tuple(n, sigma, K)),
        "sigma_1": gnq_membership(braid_tuple(n, 1, K)),
    }
    ok = cases["identity"].passed and cases[f"even permutation {list(sigma)}"].passed
    # σ_1 must violate the form equation on a self-conjugate block
    ok = ok and not cases["sigma_1"].conditions["2"]
    lines = []
    for name, rep_ in cases.items():
        conds = " ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in rep_.conditions.items())
        lines.append(f"{name}: {conds}")
    lines.append("PASS" if ok else "FAIL")
    payload = {"n": n, "K": K, "cases": {k: v.to_json() for k, v in cases.items()}, "pass": ok}
    _emit(obj, payload, None, "\n".join(lines))
    _finish(ok)


if __name__ == "__main__":  # pragma: no cover
    main()
