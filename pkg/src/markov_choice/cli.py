"""Command line entry point: ``markov-choice <command>``.

Exit codes: 0 success or the tested condition holds, 1 the condition
fails (a certificate is printed), 2 bad input or usage.
"""

from __future__ import annotations

import json
import sys
from typing import Callable

import click
import numpy as np

from .core import MissingMenuError, ValidationReport, validate_dataset, validate_model
from .cycles import classify as classify_menu
from .io import (
    DocumentError,
    dataset_from_json,
    detect_kind,
    load_dataset,
    load_document,
    load_model,
    model_from_json,
    model_to_json,
)
from .manipulate import (
    DecoyPatternError,
    InvalidRestriction,
    Restriction,
    apply_restriction,
    decoy_analysis,
    nudge_initial_finite,
)
from .markov import generate_finite, generate_limiting
from .rationalize import CLASSES, NotRationalizable, rationalize as rationalize_menu

__all__ = ["cli_run", "main"]

FORMAT = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                      show_default=True, help="Report style.")


class InputError(click.ClickException):
    exit_code = 2


def _guard(fn: Callable):
    """Turn library input errors into exit code 2."""
    try:
        return fn()
    except (DocumentError, MissingMenuError, KeyError, ValueError, OSError) as e:
        if isinstance(e, (NotRationalizable, InvalidRestriction)):
            raise
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        raise InputError(str(msg)) from None


def _emit(fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, default=_jsonable))
    else:
        click.echo(text)


def _jsonable(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    return str(o)


def _vec(menu, v) -> str:
    return "  ".join(f"{a}={x:.12g}" for a, x in zip(menu, v))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Markov exploration models of stochastic choice."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@FORMAT
def validate(path, fmt):
    """Check a dataset or model file against its invariants."""

    def run():
        doc = load_document(path)
        kind = detect_kind(doc)
        if kind == "dataset":
            rep: ValidationReport = validate_dataset(dataset_from_json(doc, validate=False))
            return kind, list(rep.violations)
        return kind, validate_model(model_from_json(doc, validate=False)).lines()

    kind, problems = _guard(run)
    text = f"{kind}: " + ("valid" if not problems else "\n  " + "\n  ".join(problems))
    _emit(fmt, {"kind": kind, "valid": not problems, "violations": problems}, text)
    sys.exit(0 if not problems else 1)


def _parse_pi(spec: str, n: int) -> np.ndarray:
    from .core import to_fraction

    vals = [float(to_fraction(x)) for x in spec.split(",")]
    if len(vals) != n:
        raise ValueError(f"--pi needs {n} entries, got {len(vals)}")
    return np.array(vals)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False))
@click.option("--menu", required=True, help="Comma-separated members, e.g. i,j,k.")
@click.option("--alpha", type=float, help="Stopping probability in (0, 1).")
@click.option("--limit", is_flag=True, help="Limiting choice as the stopping probability vanishes.")
@click.option("--pi", "pi_spec", help="Override the initial distribution, comma-separated.")
@FORMAT
def generate(model_path, menu, alpha, limit, pi_spec, fmt):
    """Choice probabilities generated by a model block."""
    if (alpha is None) == (not limit):
        raise click.UsageError("give exactly one of --alpha or --limit")

    def run():
        m = load_model(model_path)
        b = m.block(menu)
        pi = _parse_pi(pi_spec, len(b.menu)) if pi_spec else b.pi
        rho = generate_limiting(b.Q, pi) if limit else generate_finite(b.Q, pi, alpha)
        return b.menu, rho

    M, rho = _guard(run)
    _emit(fmt, {"menu": list(M), "alpha": None if limit else alpha, "rho": rho},
          f"rho({M}) " + ("[limit]" if limit else f"[alpha={alpha:g}]") + ": " + _vec(M, rho))


def _classify_text(rep) -> str:
    lines = [f"menu {rep.menu}"]
    lines += [f"  {k:<22}{'yes' if v else 'no'}" for k, v in rep.flags.items()]
    if rep.positive_cycle:
        lines.append(f"  positive cycle        {rep.positive_cycle}")
    if rep.unbounded_pairs:
        lines.append("  unbounded pairs       " + " ".join(f"{{{a},{b}}}" for a, b in rep.unbounded_pairs))
    if rep.covering_walk:
        lines.append(f"  covering walk         {rep.covering_walk}")
    if rep.margin is not None:
        lines.append(f"  smallest odds shift   {rep.margin:.3g}")
    return "\n".join(lines)


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(dir_okay=False))
@click.option("--menu", help="Comma-separated members.")
@click.option("--all-menus", is_flag=True, help="Classify every stored menu with three or more members.")
@FORMAT
def classify(data_path, menu, all_menus, fmt):
    """Which model classes can rationalize the data."""
    if bool(menu) == all_menus:
        raise click.UsageError("give exactly one of --menu or --all-menus")

    def run():
        d = load_dataset(data_path)
        menus = [d.universe.menu(menu)] if menu else [M for M in d.menus if len(M) >= 3]
        return [classify_menu(d, M) for M in menus]

    reports = _guard(run)
    payload = reports[0].to_json() if menu else {"reports": [r.to_json() for r in reports]}
    _emit(fmt, payload, "\n".join(_classify_text(r) for r in reports))


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(dir_okay=False))
@click.option("--menu", required=True)
@click.option("--class", "cls", type=click.Choice(CLASSES), default="any", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), help="Write the model file here.")
@FORMAT
def rationalize(data_path, menu, cls, output, fmt):
    """Construct a model of the requested class reproducing the data."""

    def run():
        d = load_dataset(data_path)
        return d, d.universe.menu(menu)

    d, M = _guard(run)
    try:
        model = rationalize_menu(d, M, cls)
    except NotRationalizable as e:
        w = e.witness
        witness = w.to_json() if hasattr(w, "to_json") else [list(p) for p in w] if w else None
        payload = {"menu": list(M), "class": cls, "rationalizable": False, "reason": e.reason,
                   "witness": witness,
                   "certificate": e.certificate.to_json() if e.certificate is not None else None}
        _emit(fmt, payload, f"{e}\n  witness: {_witness_text(w)}")
        sys.exit(1)
    model.metadata.update({"name": f"{cls} rationalization of {M}",
                           "provenance": f"constructed from {data_path}"})
    doc = model_to_json(model)
    if output:
        with open(output, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if fmt == "json" or not output:
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"wrote {cls} model for {M} to {output}")


def _witness_text(w) -> str:
    if isinstance(w, tuple):
        return " ".join(f"{{{a},{b}}}" for a, b in w)
    return str(w)


def _parse_weak(spec: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in spec.split(";"))):
        pair, _, val = item.partition("=")
        a, b = (x.strip() for x in pair.split(","))
        out[(a, b)] = float(val)
    return out


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False))
@click.option("--menu", required=True)
@click.option("--zero", multiple=True, help="Pair to disconnect, e.g. i,l. Repeatable.")
@click.option("--c", "c", type=float, default=1.0, show_default=True, help="Factor on all other pairs.")
@click.option("--weak", help="Per-pair factors, e.g. 'i,l=0;i,j=2'.")
@FORMAT
def restrict(model_path, menu, zero, c, weak, fmt):
    """Limiting choice before and after a comparability restriction."""

    def run():
        m = load_model(model_path)
        b = m.block(menu)
        if weak:
            factors = _parse_weak(weak)
            for z in zero:
                factors[tuple(x.strip() for x in z.split(","))] = 0.0
            r = Restriction.weak(b.menu, factors, c)
        else:
            r = Restriction.strict(b.menu, [tuple(x.strip() for x in z.split(",")) for z in zero], c)
        return b, r

    b, r = _guard(run)
    before = generate_limiting(b.Q, b.pi)
    try:
        nb = apply_restriction(b, r)
    except InvalidRestriction as e:
        _emit(fmt, {"menu": list(b.menu), "restriction": r.describe(), "valid": False, "reason": str(e)},
              f"invalid restriction {r.describe()}: {e}")
        sys.exit(1)
    after = generate_limiting(nb.Q, nb.pi)
    change = float(np.max(np.abs(after - before)))
    unchanged = change <= 1e-9
    _emit(fmt, {"menu": list(b.menu), "restriction": r.describe(), "valid": True, "before": before,
                "after": after, "max_change": change, "unchanged": unchanged},
          f"restriction {r.describe()}\n  before: {_vec(b.menu, before)}\n  after:  {_vec(b.menu, after)}\n"
          f"  {'unchanged' if unchanged else 'changed'} (max change {change:.3g})")
    sys.exit(0 if unchanged else 1)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False))
@click.option("--triple", required=True, help="target,competitor,decoy")
@FORMAT
def decoy(model_path, triple, fmt):
    """Effect of a decoy the target never transitions to."""

    def run():
        m = load_model(model_path)
        parts = tuple(x.strip() for x in triple.split(","))
        if len(parts) != 3:
            raise ValueError("--triple needs three alternatives")
        try:
            return decoy_analysis(m, parts)
        except DecoyPatternError as e:
            raise ValueError(str(e)) from None

    rep = _guard(run)
    i, j, k = rep.target, rep.competitor, rep.decoy
    _emit(fmt, rep.to_json(),
          f"target {i}, competitor {j}, decoy {k}\n"
          f"  p({i}) pair {rep.rho_pair:.6g} -> triple {rep.rho_triple:.6g}\n"
          f"  odds {i}:{j} pair {rep.ratio_pair:.6g} -> triple {rep.ratio_triple:.6g}\n"
          f"  relative increase {rep.relative_ratio_increase}, absolute increase {rep.absolute_increase}, "
          f"q_{k}{i} > q_{j}{i}: {rep.condition_q_ki_gt_q_ji}")
    sys.exit(0 if rep.relative_ratio_increase else 1)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False))
@click.option("--menu", required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--target", required=True)
@FORMAT
def nudge(model_path, menu, alpha, target, fmt):
    """Finite-horizon choice of a target under each point-mass start."""

    def run():
        b = load_model(model_path).block(menu)
        return nudge_initial_finite(b, alpha, target)

    rep = _guard(run)
    lines = [f"start {s}: {_vec(rep.menu, v)}" for s, v in rep.table.items()]
    lines.append(f"starting at {target} maximises its share: {rep.strict_maximum}")
    _emit(fmt, rep.to_json(), "\n".join(lines))
    sys.exit(0 if rep.strict_maximum else 1)


def cli_run(argv: list[str]) -> int:
    """Run the CLI in-process and return its exit code."""
    try:
        main.main(args=list(argv), prog_name="markov-choice", standalone_mode=True)
    except SystemExit as e:
        return int(e.code or 0)
    return 0
