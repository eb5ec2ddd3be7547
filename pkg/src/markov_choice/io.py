"""JSON files for datasets and models.

Probabilities are written as strings: decimals such as ``"0.28"`` or
ratios such as ``"1/3"``, so exact consumers read the intended rational.

Dataset::

    {"universe": ["i", "j"],
     "menus": [{"members": ["i", "j"], "probabilities": ["0.5", "0.5"]}]}

Model::

    {"universe": [...],
     "blocks": [{"menu": [...], "Q": [["0.9", "0.1"], ...], "pi": [...]}],
     "metadata": {"name": "...", "provenance": "..."}}
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import (
    DEFAULT_TOL,
    ChoiceDataset,
    ModelBlock,
    MscModel,
    StructuralError,
    Tolerances,
    Universe,
    to_fraction,
    validate_dataset,
    validate_model,
)

__all__ = [
    "DocumentError",
    "ParseError",
    "ValidationError",
    "dataset_from_json",
    "dataset_to_json",
    "detect_kind",
    "format_fraction",
    "load_dataset",
    "load_document",
    "load_model",
    "model_from_json",
    "model_to_json",
    "save_dataset",
    "save_model",
]


class DocumentError(ValueError):
    """Base for problems with an input document; ``where`` locates the fault."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


class ParseError(DocumentError):
    pass


class ValidationError(DocumentError):
    pass


def format_fraction(x: Fraction) -> str:
    """Shortest exact string: a terminating decimal when one exists."""
    x = Fraction(x)
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = 0
    while (x * 10**digits).denominator != 1:
        digits += 1
    q = Decimal(x.numerator) / Decimal(x.denominator)
    return format(q.quantize(Decimal(1).scaleb(-digits)) if digits else q, "f")


def _probability(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise ParseError(where, f"expected a probability string, got {type(value).__name__}")
    try:
        fr = to_fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(where, f"cannot read {value!r} as a decimal or p/q ratio") from None
    if not 0 <= fr <= 1:
        raise ParseError(where, f"probability {value} is outside [0, 1]")
    return fr


def _field(obj: Any, key: str, where: str, kind: type) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(where, "expected an object")
    if key not in obj:
        raise ParseError(where, f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{where}.{key}", f"expected {kind.__name__}")
    return val


def _universe(doc: Any) -> Universe:
    alts = _field(doc, "universe", "$", list)
    for k, a in enumerate(alts):
        if not isinstance(a, str):
            raise ParseError(f"$.universe[{k}]", "identifiers must be strings")
    try:
        return Universe(alts)
    except ValueError as e:
        raise ParseError("$.universe", str(e)) from None


def _menu(U: Universe, members: Any, where: str):
    if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
        raise ParseError(where, "expected a list of identifiers")
    try:
        menu = U.menu(members)
    except (KeyError, ValueError) as e:
        raise ParseError(where, str(e).strip("'\"")) from None
    return menu


def dataset_from_json(doc: Any, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> ChoiceDataset:
    U = _universe(doc)
    entries = {}
    for k, rec in enumerate(_field(doc, "menus", "$", list)):
        where = f"$.menus[{k}]"
        members = _field(rec, "members", where, list)
        menu = _menu(U, members, f"{where}.members")
        probs = _field(rec, "probabilities", where, list)
        if len(probs) != len(members):
            raise ParseError(f"{where}.probabilities", f"expected {len(members)} entries, got {len(probs)}")
        if menu in entries:
            raise ParseError(f"{where}.members", f"menu {menu} listed twice")
        by_member = {m: _probability(v, f"{where}.probabilities[{n}]") for n, (m, v) in enumerate(zip(members, probs))}
        entries[menu] = [by_member[a] for a in menu]
    d = ChoiceDataset(U, entries)
    if validate:
        rep = validate_dataset(d, tol)
        if not rep.ok:
            raise ValidationError("$.menus", "; ".join(rep.violations))
    return d


def dataset_to_json(d: ChoiceDataset) -> dict:
    return {
        "universe": list(d.universe),
        "menus": [
            {"members": list(M), "probabilities": [format_fraction(v) for v in d.exact_vector(M)]}
            for M in d.menus
        ],
    }


def _float_str(x: float) -> str:
    return repr(float(x))


def model_from_json(doc: Any, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> MscModel:
    U = _universe(doc)
    blocks = []
    seen = set()
    for k, rec in enumerate(_field(doc, "blocks", "$", list)):
        where = f"$.blocks[{k}]"
        members = _field(rec, "menu", where, list)
        menu = _menu(U, members, f"{where}.menu")
        if list(menu) != members:
            raise ParseError(f"{where}.menu", "block menus must list members in universe order")
        if menu in seen:
            raise ParseError(f"{where}.menu", f"menu {menu} listed twice")
        seen.add(menu)
        rows = _field(rec, "Q", where, list)
        if len(rows) != len(menu):
            raise ParseError(f"{where}.Q", f"expected {len(menu)} rows, got {len(rows)}")
        Q = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != len(menu):
                raise ParseError(f"{where}.Q[{r}]", f"expected a row of {len(menu)} entries")
            Q.append([float(_probability(v, f"{where}.Q[{r}][{c}]")) for c, v in enumerate(row)])
        pi_raw = _field(rec, "pi", where, list)
        if len(pi_raw) != len(menu):
            raise ParseError(f"{where}.pi", f"expected {len(menu)} entries, got {len(pi_raw)}")
        pi = [float(_probability(v, f"{where}.pi[{c}]")) for c, v in enumerate(pi_raw)]
        blocks.append(ModelBlock(menu, Q, pi))
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("$.metadata", "expected an object")
    m = MscModel(U, blocks, meta)
    if validate:
        try:
            rep = validate_model(m, tol)
        except StructuralError as e:
            raise ValidationError("$.blocks", str(e)) from None
        if not rep.ok:
            raise ValidationError("$.blocks", "; ".join(rep.lines()))
    return m


def model_to_json(m: MscModel) -> dict:
    return {
        "universe": list(m.universe),
        "blocks": [
            {
                "menu": list(b.menu),
                "Q": [[_float_str(v) for v in row] for row in b.Q],
                "pi": [_float_str(v) for v in b.pi],
            }
            for b in m.blocks()
        ],
        "metadata": dict(m.metadata),
    }


def load_document(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}", e.msg) from None


def detect_kind(doc: Any) -> str:
    if isinstance(doc, dict) and "blocks" in doc:
        return "model"
    if isinstance(doc, dict) and "menus" in doc:
        return "dataset"
    raise ParseError("$", "document has neither 'menus' (dataset) nor 'blocks' (model)")


def load_dataset(path, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> ChoiceDataset:
    return dataset_from_json(load_document(path), validate, tol)


def load_model(path, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> MscModel:
    return model_from_json(load_document(path), validate, tol)


def save_dataset(d: ChoiceDataset, path) -> None:
    Path(path).write_text(json.dumps(dataset_to_json(d), indent=2) + "\n")


def save_model(m: MscModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_json(m), indent=2) + "\n")
