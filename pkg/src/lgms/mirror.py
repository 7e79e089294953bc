"""Krawitz's monomial-to-symmetry map, restricted LG/LG duality and the half-CY mirror checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence

from .errors import PreconditionError
from .polyspec import ExponentMatrix, suspend
from .statespace import FourPieces, build_state_space, four_piece_split
from .symmetry import (DiagonalSymmetry, SymmetryGroup, check_admissible, dual_group,
                       duality_diagram_check, standard_dual)
from .tables import BigradedTable


def krawitz_gamma(exponents: Sequence[int], matrix: ExponentMatrix) -> DiagonalSymmetry:
    """gamma(x^a) = sum_j a_j * (row j of M^-1), an element of Aut_{W*}.

    With this convention the pairing of g in Aut_W with gamma(x^a) is a.g,
    so x^a is g-invariant exactly when gamma(x^a) is orthogonal to g.
    """
    inv = matrix.inverse
    n = matrix.n
    comps = [sum((a * inv[j][i] for j, a in enumerate(exponents)), Fraction(0)) for i in range(n)]
    return DiagonalSymmetry(tuple(comps))


def krawitz_image(matrix: ExponentMatrix, group: SymmetryGroup, box: Optional[int] = None):
    """gamma of every monomial invariant under G[J_W], exponents in [0, box)^n.

    The default box is the exponent of Aut_{W*}, which reaches every element.
    """
    from .symmetry import adjoin, aut_group, grading_element
    from .polyspec import weights_of

    gj = adjoin(group, grading_element(weights_of(matrix)))
    box = box or aut_group(matrix.transpose()).modulus
    m = gj.modulus
    gens = gj.generators
    out = set()
    for a in product(range(box), repeat=matrix.n):
        if all(sum(x * y for x, y in zip(a, g)) % m == 0 for g in gens):
            out.add(krawitz_gamma(a, matrix))
    return out


@dataclass
class FlipCheck:
    label: str
    left: BigradedTable
    right: BigradedTable
    ok: bool
    first_mismatch: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"label": self.label, "ok": self.ok,
               "left": self.left.to_json(), "right": self.right.to_json()}
        if self.first_mismatch:
            (p, q), a, b = self.first_mismatch
            out["mismatch"] = {"p": str(p), "q": str(q), "left": a, "right": b}
        return out


def compare_flipped(label: str, left: BigradedTable, right: BigradedTable, n) -> FlipCheck:
    """left^{p,q} == right^{n-p,q} for every (p, q)."""
    flipped = right.flip(n)
    diff = left.first_difference(flipped)
    return FlipCheck(label, left, right, diff is None, diff)


def mirror_flip_check(matrix: ExponentMatrix, h1: SymmetryGroup, g1: SymmetryGroup,
                      jobs: int = 1, cap=None) -> FlipCheck:
    """dim H_{H1}(W)^{G1} at (p,q) equals dim H_{G2}(W*)^{H2} at (n-p,q).

    G2 and H2 are the standard duals of G1 and H1 on the transposed side.
    """
    g2 = standard_dual(matrix, g1, cap)
    h2 = standard_dual(matrix, h1, cap)
    left = build_state_space(matrix, h1, g1, jobs).table
    right = build_state_space(matrix.transpose(), g2, h2, jobs).table
    return compare_flipped("restricted duality", left, right, matrix.n)


@dataclass
class MirrorReport:
    name: str
    dual_name: str
    n: int
    checks: List[FlipCheck] = field(default_factory=list)
    diagram_ok: Optional[bool] = None
    precondition: Optional[str] = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.precondition is None and all(c.ok for c in self.checks) \
            and self.diagram_ok is not False

    def verdicts(self) -> Dict[str, bool]:
        return {c.label: c.ok for c in self.checks}

    def to_json(self) -> dict:
        out = {"model": self.name, "dual": self.dual_name, "n": self.n, "ok": self.ok,
               "verdicts": self.verdicts(), "diagram_ok": self.diagram_ok,
               "checks": [c.to_json() for c in self.checks]}
        if self.precondition:
            out["precondition"] = self.precondition
        return out


def theorem_checks(pieces: FourPieces, dual: FourPieces) -> List[FlipCheck]:
    n = pieces.n
    return [
        compare_flipped("(i) H_sigma + vs +", pieces.sigma_plus(), dual.sigma_plus(), n - 2),
        compare_flipped("(ii) H_sigma - vs -", pieces.sigma_minus(), dual.sigma_minus(), n - 2),
        compare_flipped("(iii) H_CR + vs -", pieces.cr_plus(), dual.cr_minus(), n - 1),
        compare_flipped("(iv) H_CR - vs +", pieces.cr_minus(), dual.cr_plus(), n - 1),
    ]


def lemma_checks(pieces: FourPieces, dual: FourPieces) -> List[FlipCheck]:
    n = pieces.n + 1
    return [
        compare_flipped("lemma [G] vs [J_V G*]", pieces["G"], dual["JVG"], n),
        compare_flipped("lemma [sigma G] vs [sigma G*]", pieces["sG"], dual["sG"], n),
        compare_flipped("lemma [J_W G] vs [J_W G*]", pieces["JG"], dual["JG"], n),
    ]


def semi_cy_report(matrix: ExponentMatrix, group: SymmetryGroup, name: str = "",
                   jobs: int = 1, cap=None) -> MirrorReport:
    """Theorem (i)-(iv) for (W, G) against (W*, G*), plus the lemma correspondences."""
    start = time.perf_counter()
    report = MirrorReport(name or matrix.polynomial(), "", matrix.n)
    try:
        check_admissible(matrix, group)
    except PreconditionError as exc:
        report.precondition = str(exc)
        report.seconds = time.perf_counter() - start
        return report
    dual = dual_group(matrix, group, cap)
    mt = matrix.transpose()
    report.dual_name = mt.polynomial()
    mine = four_piece_split(matrix, group, jobs, cap)
    theirs = four_piece_split(mt, dual, jobs, cap)
    report.checks = theorem_checks(mine, theirs) + lemma_checks(mine, theirs)
    report.diagram_ok = duality_diagram_check(matrix, group, cap).ok
    report.seconds = time.perf_counter() - start
    return report


def suspended_flip_check(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1,
                         cap=None) -> FlipCheck:
    """Restricted duality on V with H1 = G[sigma,J_W] and G1 = G[J_V]."""
    from .statespace import suspended_groups

    _, big, small, _ = suspended_groups(matrix, group, cap)
    return mirror_flip_check(suspend(matrix).matrix, big, small, jobs, cap)
