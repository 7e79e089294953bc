"""Bigraded state spaces H_S(W)^K, the FJR shift and the four-piece split of a suspension."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import PreconditionError
from .jacobi import character_value, jacobi_basis, restrict
from .polyspec import ExponentMatrix, WeightSystem, suspend, weights_of
from .symmetry import (DiagonalSymmetry, SymmetryGroup, adjoin, check_admissible,
                       suspended_elements, suspended_group)
from .tables import BigradedTable

FixedSet = Tuple[int, ...]


@dataclass(frozen=True)
class Sector:
    """One summand Jac(W_g)^K of a state space."""

    values: Tuple[int, ...]
    modulus: int
    fixed: FixedSet

    @property
    def g(self) -> DiagonalSymmetry:
        return DiagonalSymmetry.from_ints(self.values, self.modulus)

    @property
    def age(self) -> Fraction:
        return Fraction(sum(self.values), self.modulus)


@lru_cache(maxsize=4096)
def _invariant_forms(rows, weights, degree, fixed, kgens, kmod):
    """K-invariant basis exponents of Jac(W restricted to ``fixed``)."""
    basis = jacobi_basis(restrict(rows, weights, degree, fixed))
    out = []
    for a in basis.exponents:
        if all(sum((x + 1) * k[j] for x, j in zip(a, fixed)) % kmod == 0 for k in kgens):
            out.append(a)
    return fixed, tuple(out)


def bidegree(sector: Sector, exponents: Sequence[int], weights: WeightSystem):
    """(#F - deg + age, deg + age) with deg = sum (a_j + 1) q_j over F."""
    deg = sum((Fraction(a + 1) * weights.charges[j] for a, j in zip(exponents, sector.fixed)),
              Fraction(0))
    a = sector.age
    return len(sector.fixed) - deg + a, deg + a


@dataclass
class StateSpace:
    matrix: ExponentMatrix
    weights: WeightSystem
    sectors_group: SymmetryGroup
    invariance_group: SymmetryGroup
    sectors: List[Sector]
    forms: Dict[FixedSet, Tuple[Tuple[int, ...], ...]]
    _degree_counts: Dict[FixedSet, Counter] = field(default_factory=dict, repr=False)

    def degree_counts(self, fixed: FixedSet) -> Counter:
        c = self._degree_counts.get(fixed)
        if c is None:
            q = self.weights.charges
            c = Counter(sum((Fraction(a + 1) * q[j] for a, j in zip(e, fixed)), Fraction(0))
                        for e in self.forms[fixed])
            self._degree_counts[fixed] = c
        return c

    def sector_table(self, sector: Sector) -> BigradedTable:
        out = BigradedTable()
        a = sector.age
        nf = len(sector.fixed)
        for deg, n in self.degree_counts(sector.fixed).items():
            out.add(nf - deg + a, deg + a, n)
        return out

    def table_over(self, keep=None) -> BigradedTable:
        out = BigradedTable()
        for s in self.sectors:
            if keep is None or keep(s):
                for (p, q), n in self.sector_table(s).items():
                    out.add(p, q, n)
        return out

    @property
    def table(self) -> BigradedTable:
        return self.table_over()

    def characters(self, sector: Sector, k: DiagonalSymmetry) -> List[Fraction]:
        return [character_value(k, e, sector.fixed) for e in self.forms[sector.fixed]]

    def dump(self) -> list:
        rows = []
        for s in self.sectors:
            rows.append({"g": [str(c) for c in s.g.components],
                         "fixed": list(s.fixed), "age": str(s.age),
                         "dims": self.sector_table(s).to_json()})
        return rows


def enumerate_sectors(group: SymmetryGroup) -> List[Sector]:
    return [Sector(e, group.modulus, tuple(j for j, x in enumerate(e) if x == 0))
            for e in group.elements]


def build_state_space(matrix: ExponentMatrix, sectors: SymmetryGroup,
                      invariance: SymmetryGroup, jobs: int = 1) -> StateSpace:
    """H_S(W)^K: one Jacobi ring per g in S, keeping forms invariant under K."""
    ws = weights_of(matrix)
    secs = enumerate_sectors(sectors)
    fixed_sets = sorted({s.fixed for s in secs})
    kgens = invariance.generators
    args = [(matrix.rows, ws.weights, ws.degree, f, tuple(kgens), invariance.modulus)
            for f in fixed_sets]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_invariant_forms, *zip(*args)))
    else:
        results = [_invariant_forms(*a) for a in args]
    forms = dict(results)
    return StateSpace(matrix, ws, sectors, invariance, secs, forms)


def fjr_dims(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1) -> BigradedTable:
    """FJR state space H_G(W)^G shifted by (-1,-1); requires degree = weight sum."""
    ws = weights_of(matrix)
    if sum(ws.weights) != ws.degree:
        raise PreconditionError(f"{ws} is not Calabi-Yau (degree differs from weight sum)")
    return build_state_space(matrix, group, group, jobs).table.shift(-1)


PIECES = ("G", "sG", "JG", "JVG")


@dataclass
class FourPieces:
    """[H]_G, [H]_{sigma G}, [H]_{J_W G}, [H]_{J_V G} of H_{G[s,J]}(V)^{G[J_V]}."""

    pieces: Dict[str, BigradedTable]
    space: StateSpace
    n: int  # variables of W

    def __getitem__(self, key: str) -> BigradedTable:
        return self.pieces[key]

    @property
    def total(self) -> BigradedTable:
        out = BigradedTable()
        for k in PIECES:
            out = out + self.pieces[k]
        return out

    def lemma_check(self) -> Dict[str, bool]:
        """Untwisted-type pieces are Z x Z graded; sigma-type pieces are half-integral."""
        return {
            "G": self.pieces["G"].is_integral(),
            "JVG": self.pieces["JVG"].is_integral(),
            "sG": self.pieces["sG"].is_half_integral(),
            "JG": self.pieces["JG"].is_half_integral(),
        }

    # geometric identifications
    def cr_plus(self) -> BigradedTable:
        return self.pieces["JVG"].shift(-1)

    def cr_minus(self) -> BigradedTable:
        return self.pieces["G"].shift(-1)

    def sigma_plus(self) -> BigradedTable:
        return self.pieces["sG"].shift(Fraction(-3, 2))

    def sigma_minus(self) -> BigradedTable:
        return self.pieces["JG"].shift(Fraction(-3, 2))


def suspended_groups(matrix: ExponentMatrix, group: SymmetryGroup, cap=None):
    """(G, G[sigma,J_W], G[J_V]) on the suspension, plus (sigma, J_W, J_V)."""
    s, j, jv = suspended_elements(matrix)
    g = suspended_group(group, cap=cap)
    big = adjoin(g, s, j, cap=cap)
    small = adjoin(g, jv, cap=cap)
    return g, big, small, (s, j, jv)


def four_piece_split(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1,
                     cap=None) -> FourPieces:
    check_admissible(matrix, group)
    v = suspend(matrix).matrix
    g, big, small, (s, j, jv) = suspended_groups(matrix, group, cap)
    if big.order != 4 * g.order:
        raise PreconditionError("cosets of G, sigma G, J G, J_V G are not disjoint")
    space = build_state_space(v, big, small, jobs)
    m = big.modulus
    members = set(g.at_modulus(m))
    shifts = {"G": (0,) * (matrix.n + 1), "sG": s.ints(m), "JG": j.ints(m), "JVG": jv.ints(m)}

    def label(sec: Sector) -> str:
        for k, sh in shifts.items():
            if tuple((x - y) % m for x, y in zip(sec.values, sh)) in members:
                return k
        raise AssertionError("sector outside G[sigma,J_W]")

    labels = {sec: label(sec) for sec in space.sectors}
    pieces = {k: space.table_over(lambda sec, k=k: labels[sec] == k) for k in PIECES}
    return FourPieces(pieces, space, matrix.n)


def wedge_dx0_tables(matrix: ExponentMatrix, group: SymmetryGroup, jobs: int = 1, cap=None):
    """H_{G[s,J_W]}(V)^{G[J_V]} and H_{G[J_V]}(V)^G, equal per bidegree."""
    v = suspend(matrix).matrix
    g, big, small, _ = suspended_groups(matrix, group, cap)
    left = build_state_space(v, big, small, jobs).table
    right = build_state_space(v, small, g, jobs).table
    return left, right
