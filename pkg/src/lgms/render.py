"""Text layout of diamonds and JSON envelopes."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List

from .tables import HALF, BigradedTable

SCHEMA = 1


def _fmt(x: Fraction) -> str:
    return str(x)


def render_diamond(table: BigradedTable, title: str = "") -> str:
    """Rows by total degree p + q, entries by decreasing p, centered.

    If any class sits at a half-integral bidegree, the grid has step 1/2
    and those entries are shown in brackets.
    """
    lines: List[str] = [title] if title else []
    if not table:
        lines.append("(empty)")
        return "\n".join(lines)
    support = table.support()
    half = not table.is_integral()
    step = HALF if half else Fraction(1)
    ps = [p for p, _ in support]
    qs = [q for _, q in support]
    pmin, pmax, qmin, qmax = min(ps), max(ps), min(qs), max(qs)
    if half:
        pmin, qmin = pmin - pmin % HALF, qmin - qmin % HALF
    rows = []
    t = pmin + qmin
    while t <= pmax + qmax:
        cells = []
        p = min(pmax, t - qmin)
        while p >= max(pmin, t - qmax):
            q = t - p
            same_kind = (p.denominator == 1) == (q.denominator == 1)
            if same_kind:
                n = table[p, q]
                integral = p.denominator == 1
                cells.append(str(n) if integral else f"[{n}]")
            p -= step
        if cells:
            rows.append(cells)
        t += step
    width = max(len(c) for r in rows for c in r) + 1
    body = [" ".join(c.center(width) for c in r).rstrip() for r in rows]
    full = max(len(b) for b in body)
    lines.extend(b.center(full).rstrip() for b in body)
    return "\n".join(lines)


def envelope(kind: str, payload: dict) -> dict:
    out = {"schema": SCHEMA, "kind": kind}
    out.update(payload)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
