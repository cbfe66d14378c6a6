"""JSON problem files describing an algebra, its derivations and an operation.

Schema::

    {
      "name": "optional operation name",
      "variables": [{"name": "x", "weight": 0}, ...],
      "derivations": {"d": {"x": "1"}, ...},
      "operation": {
        "arity": 2,
        "summands": [{"coeff": "1", "factors": [[], ["d"]]}, ...]
      }
    }

Each factor is one derivation word, outermost letter first.  Variables
missing from a derivation map to 0.
"""
from __future__ import annotations

import json
from itertools import product
from pathlib import Path
from typing import Any, Mapping

from .derived import DerivedOperation
from .diffops import Derivation
from .parsing import parse_polynomial, parse_rational
from .poly import AlgebraContext


class ProblemError(ValueError):
    pass


def load_problem(source) -> DerivedOperation:
    """Build an operation from a path, a JSON string or an already-parsed mapping."""
    if isinstance(source, Mapping):
        doc = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemError(f"invalid JSON: {exc}") from exc
    return problem_from_dict(doc)


def problem_from_dict(doc: Mapping[str, Any]) -> DerivedOperation:
    try:
        variables = doc["variables"]
        op_doc = doc["operation"]
    except KeyError as exc:
        raise ProblemError(f"missing key {exc.args[0]!r}") from None
    ctx = AlgebraContext(tuple((v["name"], int(v.get("weight", 0))) for v in variables))
    derivations = {}
    for name, images in doc.get("derivations", {}).items():
        derivations[name] = Derivation(
            name, ctx, {var: parse_polynomial(str(lit), ctx) for var, lit in images.items()})
    arity = int(op_doc.get("arity", 2))
    rows = []
    for s in op_doc.get("summands", []):
        factors = s["factors"]
        if len(factors) != arity:
            raise ProblemError(f"summand {s!r} does not have {arity} factors")
        rows.append((parse_rational(str(s.get("coeff", 1))), [tuple(w) for w in factors]))
    return DerivedOperation.from_words(doc.get("name", "problem"), ctx, derivations, rows, arity=arity)


def problem_to_dict(op: DerivedOperation) -> dict:
    """Inverse of :func:`problem_from_dict`; factor combinations are distributed into words."""
    merged: dict = {}
    for s in op.summands:
        for choice in product(*(f.terms.items() for f in s.factors)):
            words = tuple(w for w, _ in choice)
            c = s.coeff
            for _, fc in choice:
                c = c * fc
            merged[words] = merged.get(words, 0) + c
    return {
        "name": op.name,
        "variables": [{"name": n, "weight": w} for n, w in op.ctx.variables],
        "derivations": {
            D.name: {v: str(img) for v, img in zip(op.ctx.names, D.images) if img}
            for D in op.derivations.values()},
        "operation": {
            "arity": op.arity,
            "summands": [{"coeff": str(c), "factors": [list(w) for w in words]}
                         for words, c in merged.items() if c]},
    }
