"""Borcea-Voisin type products [Sigma_1 x Sigma_2 / (sigma_1, sigma_2)] assembled from blocks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import PreconditionError
from .geometry import SigmaDiamonds, cr_sigma_diamonds
from .polyspec import ExponentMatrix, suspend
from .statespace import build_state_space
from .symmetry import SymmetryGroup, dual_group, generate, suspended_elements
from .tables import HALF, BigradedTable

DIRECT_BUILD_LIMIT = 6  # n1 + n2


@dataclass
class ProductDiamond:
    names: Tuple[str, str]
    table: BigradedTable
    dim: int
    terms: Tuple[BigradedTable, BigradedTable, BigradedTable, BigradedTable]

    def to_json(self) -> dict:
        return {"blocks": list(self.names), "dim": self.dim, "table": self.table.to_json()}


def assemble(first: SigmaDiamonds, second: SigmaDiamonds, n1: int, n2: int,
             names=("", "")) -> ProductDiamond:
    """CR+ * CR+ + CR- * CR- + T+ * T+ + T- * T-, with T = H_sigma shifted by (1/2,1/2)."""
    a, b = first, second
    club_p = a.cr.plus.convolve(b.cr.plus)
    club_m = a.cr.minus.convolve(b.cr.minus)
    heart_p = a.sigma.plus.shift(HALF).convolve(b.sigma.plus.shift(HALF))
    heart_m = a.sigma.minus.shift(HALF).convolve(b.sigma.minus.shift(HALF))
    table = club_p + club_m + heart_p + heart_m
    return ProductDiamond(tuple(names), table, n1 + n2 - 2,
                          (club_p, club_m, heart_p, heart_m))


def product_diamond(block1, block2, jobs: int = 1, cap=None) -> ProductDiamond:
    """Each block is (matrix, group[, name])."""
    (m1, g1, *r1), (m2, g2, *r2) = block1, block2
    d1 = cr_sigma_diamonds(m1, g1, jobs, cap)
    d2 = cr_sigma_diamonds(m2, g2, jobs, cap)
    names = (r1[0] if r1 else m1.polynomial(), r2[0] if r2 else m2.polynomial())
    return assemble(d1, d2, m1.n, m2.n, names)


@dataclass
class ProductMirrorCheck:
    product: ProductDiamond
    dual: ProductDiamond
    ok: bool
    mismatch: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"ok": self.ok, "product": self.product.to_json(), "dual": self.dual.to_json()}
        if self.mismatch:
            (p, q), x, y = self.mismatch
            out["mismatch"] = {"p": str(p), "q": str(q), "left": x, "right": y}
        return out


def product_mirror_check(block1, block2, jobs: int = 1, cap=None) -> ProductMirrorCheck:
    (m1, g1, *_), (m2, g2, *_) = block1, block2
    prod = product_diamond(block1, block2, jobs, cap)
    dual = product_diamond((m1.transpose(), dual_group(m1, g1, cap)),
                           (m2.transpose(), dual_group(m2, g2, cap)), jobs, cap)
    diff = prod.table.first_difference(dual.table.flip(prod.dim))
    return ProductMirrorCheck(prod, dual, diff is None, diff)


def direct_sum_matrix(m1: ExponentMatrix, m2: ExponentMatrix) -> ExponentMatrix:
    n1, n2 = m1.n, m2.n
    rows = [tuple(r) + (0,) * n2 for r in m1.rows] + [(0,) * n1 + tuple(r) for r in m2.rows]
    return ExponentMatrix(tuple(rows))


def product_group(m1: ExponentMatrix, g1: SymmetryGroup, m2: ExponentMatrix,
                  g2: SymmetryGroup, cap=None) -> SymmetryGroup:
    """Group generated by G1, G2, J_V1, J_V2 and (sigma_1, sigma_2) on V1 + V2."""
    k1, k2 = m1.n + 1, m2.n + 1
    s1, _, jv1 = suspended_elements(m1)
    s2, _, jv2 = suspended_elements(m2)
    zero1, zero2 = (Fraction(0),) * k1, (Fraction(0),) * k2
    gens = [(Fraction(0),) + g.components + zero2 for g in g1.generator_symmetries()]
    gens += [zero1 + (Fraction(0),) + g.components for g in g2.generator_symmetries()]
    gens += [jv1.components + zero2, zero1 + jv2.components,
             s1.components + s2.components]
    return generate(k1 + k2, gens, cap)


def direct_product_table(block1, block2, jobs: int = 1, cap=None) -> BigradedTable:
    """FJR space of V1 + V2 under the product group, shifted by (-2,-2)."""
    (m1, g1, *_), (m2, g2, *_) = block1, block2
    if m1.n + m2.n > DIRECT_BUILD_LIMIT:
        raise PreconditionError(
            f"direct build is limited to n1 + n2 <= {DIRECT_BUILD_LIMIT}")
    p = direct_sum_matrix(suspend(m1).matrix, suspend(m2).matrix)
    group = product_group(m1, g1, m2, g2, cap)
    return build_state_space(p, group, group, jobs).table.shift(-2)
