"""Geometric side: Chen-Ruan and H_sigma diamonds, a Griffiths-Steenbrink sector oracle,
per-component reports and the K3 lattice invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Tuple

from .errors import ModelError, PreconditionError
from .jacobi import restrict
from .polyspec import ExponentMatrix, suspend, weights_of
from .statespace import (FourPieces, _invariant_forms, build_state_space, four_piece_split,
                         suspended_groups)
from .symmetry import DiagonalSymmetry, SymmetryGroup, check_admissible
from .tables import HALF, BigradedTable


@dataclass
class HodgeDiamond:
    table: BigradedTable
    dim: int
    plus: Optional[BigradedTable] = None
    minus: Optional[BigradedTable] = None

    def symmetric(self) -> bool:
        return self.table.has_hodge_symmetry()

    def serre(self) -> bool:
        return self.table == self.table.dual(self.dim)


@dataclass
class SigmaDiamonds:
    cr: HodgeDiamond  # H_CR(Sigma_{W,G}), dimension n-1
    sigma: HodgeDiamond  # H_sigma(X_{W,G}), dimension n-2
    quotient: BigradedTable  # H_CR([Sigma/sigma]) computed directly
    pieces: FourPieces

    def quotient_ok(self) -> bool:
        """The sigma-invariant classes of both sides make up the quotient's CR table."""
        return self.quotient == self.cr.plus + self.sigma.plus.shift(HALF)


def _require_half_cy(matrix: ExponentMatrix) -> None:
    if not weights_of(matrix).half_cy:
        raise ModelError(f"{weights_of(matrix)} does not satisfy 2 sum(w) = d")


def cr_sigma_diamonds(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1,
                      cap=None) -> SigmaDiamonds:
    _require_half_cy(matrix)
    pieces = four_piece_split(matrix, group, jobs, cap)
    n = matrix.n
    cr = HodgeDiamond(pieces.cr_plus() + pieces.cr_minus(), n - 1,
                      pieces.cr_plus(), pieces.cr_minus())
    sig = HodgeDiamond(pieces.sigma_plus() + pieces.sigma_minus(), n - 2,
                       pieces.sigma_plus(), pieces.sigma_minus())
    _, big, _, _ = suspended_groups(matrix, group, cap)
    quotient = build_state_space(suspend(matrix).matrix, big, big, jobs).table.shift(-1)
    return SigmaDiamonds(cr, sig, quotient, pieces)


@dataclass
class ComponentReport:
    gamma: DiagonalSymmetry
    kind: str  # "untwisted" (G G_m) or "sigma" (sigma G G_m)
    base: DiagonalSymmetry  # s in G or sigma G with gamma = s * lambda
    lam: Fraction  # lambda = exp(2 pi i lam)
    fixed: Tuple[int, ...]
    equation: str
    ambient_age: Fraction
    normal_age: Fraction
    hodge: BigradedTable  # of the component, before the age shift

    @property
    def tangent_age(self) -> Fraction:
        return self.ambient_age - self.normal_age

    @property
    def empty(self) -> bool:
        return not self.hodge

    @property
    def dimension(self) -> int:
        if self.equation == "0":
            return len(self.fixed) - 1
        return len(self.fixed) - 2

    def to_json(self) -> dict:
        return {"gamma": [str(c) for c in self.gamma.components], "kind": self.kind,
                "base": [str(c) for c in self.base.components], "lambda": str(self.lam),
                "fixed": list(self.fixed), "equation": self.equation,
                "tangent_age": str(self.tangent_age), "dimension": self.dimension,
                "hodge": self.hodge.to_json()}


def _component_hodge(rows, weights, d, fixed, kgens, kmod, memo) -> Tuple[str, BigradedTable]:
    m = len(fixed)
    poly = restrict(rows, weights, d, fixed)
    out = BigradedTable()
    if poly.is_zero:
        for p in range(m):
            out.add(p, p)
        return "0", out
    if m == 1:
        return str(poly), out
    for p in range(m - 1):
        out.add(p, p)
    if fixed not in memo:
        memo[fixed] = _invariant_forms(tuple(rows), tuple(weights), d, fixed, tuple(kgens), kmod)[1]
    wsum = sum(weights[j] for j in fixed)
    by_degree: Dict[int, int] = {}
    for a in memo[fixed]:
        k = sum(x * weights[j] for x, j in zip(a, fixed))
        by_degree[k] = by_degree.get(k, 0) + 1
    for q in range(m - 1):
        n = by_degree.get((q + 1) * d - wsum, 0)
        out.add(m - 2 - q, q, n)
    return str(poly), out


def component_report(matrix: ExponentMatrix, group: SymmetryGroup, cap=None,
                     include_empty: bool = False) -> List[ComponentReport]:
    """Fixed components of gamma in G[sigma] G_m acting on {x0^2 + W = 0}."""
    _require_half_cy(matrix)
    check_admissible(matrix, group)
    sv = suspend(matrix)
    rows, ws = sv.matrix.rows, sv.weights
    w, d = ws.weights, ws.degree
    g, _, small, (s, _, _) = suspended_groups(matrix, group, cap)
    m = g.modulus * 2
    big_l = m * lcm(*w) * d
    scale = big_l // m
    sig = s.ints(m)
    # prefer the smallest G-part, so gamma = sigma * lambda when that is possible
    bases = [(0, i, tuple(x * 2 for x in e)) for i, e in enumerate(g.elements)]
    bases += [(1, i, tuple((2 * x + y) % m for x, y in zip(e, sig)))
              for i, e in enumerate(g.elements)]

    found: Dict[Tuple[int, ...], tuple] = {}
    for kind, index, base in bases:
        for j, wj in enumerate(w):
            for t in range(wj):
                # lambda = (t - s_j) / w_j, in units of 1 / big_l
                lam = ((t * m - base[j]) * (big_l // (m * wj))) % big_l
                gam = tuple((x * scale + lam * wi) % big_l for x, wi in zip(base, w))
                key = (kind, index, lam)
                if gam not in found or key < found[gam][0]:
                    found[gam] = (key, base)

    memo: Dict[tuple, tuple] = {}
    per_fixed: Dict[tuple, tuple] = {}
    out = []
    for gam in sorted(found):
        (kind, _, lam), base = found[gam]
        fixed = tuple(j for j, x in enumerate(gam) if x == 0)
        if fixed not in per_fixed:
            per_fixed[fixed] = _component_hodge(rows, w, d, fixed, small.generators,
                                                small.modulus, memo)
        eq, hodge = per_fixed[fixed]
        if not hodge and not include_empty:
            continue
        ambient = Fraction(sum(gam), big_l)
        normal = Fraction(2 * gam[0], big_l) % 1
        out.append(ComponentReport(
            DiagonalSymmetry.from_ints(gam, big_l), ("untwisted", "sigma")[kind],
            DiagonalSymmetry.from_ints(base, m), Fraction(lam, big_l),
            fixed, eq, ambient, normal, hodge))
    return out


@dataclass
class OracleDiamond:
    components: List[ComponentReport]
    untwisted: BigradedTable  # H_CR(Sigma_{W,G})
    sigma: BigradedTable  # H_sigma(X_{W,G}) after the (-1/2,-1/2) shift

    @property
    def total(self) -> BigradedTable:
        """H_orb with sigma-type classes at their half-integral degrees."""
        return self.untwisted + self.sigma.shift(HALF)


def geometric_oracle_diamond(matrix: ExponentMatrix, group: SymmetryGroup,
                             cap=None) -> OracleDiamond:
    comps = component_report(matrix, group, cap)
    untw, sig = BigradedTable(), BigradedTable()
    for c in comps:
        target = untw if c.kind == "untwisted" else sig
        for (p, q), n in c.hodge.shift(c.tangent_age).items():
            target.add(p, q, n)
    return OracleDiamond(comps, untw, sig.shift(-HALF))


@dataclass
class K3Invariants:
    n_components: int  # N = h^{0,0} of H_sigma
    genus: int  # N' = h^{1,0} of H_sigma
    fixed_components: int  # nonempty sigma-type components of the oracle
    r: Optional[int] = None
    a: Optional[int] = None
    special: bool = False

    @property
    def mirror(self) -> Optional[Tuple[int, int]]:
        if self.r is None:
            return None
        return 20 - self.r, self.a

    def to_json(self) -> dict:
        return {"N": self.n_components, "N_prime": self.genus,
                "components": self.fixed_components, "r": self.r, "a": self.a,
                "mirror": list(self.mirror) if self.mirror else None,
                "special": self.special, "delta": "not computed"}


def k3_invariants(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1,
                  cap=None) -> K3Invariants:
    if matrix.n != 3:
        raise PreconditionError(f"K3 invariants need a surface (3 variables), got {matrix.n}")
    sig = cr_sigma_diamonds(matrix, group, jobs, cap).sigma.table
    n0, n1 = sig[0, 0], sig[1, 0]
    ncomp = sum(1 for c in component_report(matrix, group, cap) if c.kind == "sigma")
    if n0 == 0 and n1 == 0:
        return K3Invariants(0, 0, ncomp, special=True)
    return K3Invariants(n0, n1, ncomp, n0 - n1 + 10, 12 - n0 - n1)
