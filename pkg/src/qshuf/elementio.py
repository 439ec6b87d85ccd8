"""JSON serialization of shuffle elements.

Schema: {"side": "+", "shape": [..], "terms": [{"exps": [[..], ..],
"coef": "p/q"}]} with per-vertex exponent blocks in the canonical
non-increasing order.  Coefficients are exact strings: integer ratios in
specialized mode, expressions in q and t0, t1, ... in exact mode.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import MINUS, PLUS, ShuffleElement
from .fields import ExactRationalField, SpecializedField
from .laurent import SymLaurent
from .report import frac_str


def element_to_obj(el: ShuffleElement) -> dict:
    shape = el.poly.shape
    terms = []
    pos = 0
    blocks = []
    for ni in shape:
        blocks.append((pos, pos + ni))
        pos += ni
    for key in sorted(el.poly.terms):
        c = el.poly.terms[key]
        terms.append(
            {
                "exps": [list(key[a:b]) for a, b in blocks],
                "coef": frac_str(c),
            }
        )
    return {"side": el.side, "shape": list(shape), "terms": terms}


def _parse_coef(text: str, field):
    if isinstance(field, SpecializedField):
        return Fraction(text)
    if isinstance(field, ExactRationalField):
        from sympy import sympify

        return field._ring.from_expr(sympify(text))
    raise TypeError(f"unsupported field {field!r}")


def element_from_obj(obj: dict, field) -> ShuffleElement:
    side = obj["side"]
    if side not in (PLUS, MINUS):
        raise ValueError(f"bad side {side!r}")
    shape = tuple(int(x) for x in obj["shape"])
    terms = {}
    for item in obj["terms"]:
        key = tuple(int(x) for block in item["exps"] for x in block)
        blocks_ok = [len(b) for b in item["exps"]] == list(shape)
        if not blocks_ok:
            raise ValueError(f"exponent blocks {item['exps']} do not match shape {list(shape)}")
        coef = _parse_coef(item["coef"], field)
        from .laurent import canonical_key

        terms[canonical_key(key, shape)] = coef
    return ShuffleElement(side, SymLaurent(shape, terms))


def load_element(path: str, field) -> ShuffleElement:
    with open(path, "r", encoding="utf-8") as fh:
        return element_from_obj(json.load(fh), field)
