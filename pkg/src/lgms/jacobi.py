"""Graded Jacobi rings of restricted polynomials.

Bases are computed by exact row reduction, one weighted degree at a time,
and returned as standard monomials for graded reverse lexicographic order.
The polynomial is first split into groups of variables that share no
monomial; the Jacobi ring of a sum in disjoint variables is the tensor
product of the pieces, so the basis is the product of the piece bases.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .errors import DegenerateError
from .linalg import echelon_pivots

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class RestrictedPolynomial:
    """Monomials of a polynomial whose variables all lie in ``fixed``.

    ``monomials`` are exponent vectors over the fixed variables only (local
    coordinates), ``weights`` the matching integer weights.
    """

    fixed: Tuple[int, ...]
    monomials: Tuple[Exponents, ...]
    weights: Tuple[int, ...]
    degree: int

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def __str__(self) -> str:
        if not self.fixed:
            return "(point)"
        if self.is_zero:
            return "0"
        terms = []
        for mon in self.monomials:
            fs = [f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in zip(self.fixed, mon) if e]
            terms.append("*".join(fs))
        return " + ".join(terms)


def restrict(rows: Sequence[Sequence[int]], weights: Sequence[int], degree: int,
             fixed: Sequence[int]) -> RestrictedPolynomial:
    fixed = tuple(fixed)
    fset = set(fixed)
    mons = []
    for r in rows:
        if all(e == 0 or j in fset for j, e in enumerate(r)):
            mons.append(tuple(r[j] for j in fixed))
    return RestrictedPolynomial(fixed, tuple(mons), tuple(weights[j] for j in fixed), degree)


def restrict_to_fixed(rows, weights, degree, g) -> RestrictedPolynomial:
    """Restriction of the polynomial to the fixed space of the diagonal symmetry g."""
    comps = g.components if hasattr(g, "components") else g
    return restrict(rows, weights, degree, [j for j, c in enumerate(comps) if c == 0])


@dataclass(frozen=True)
class GradedBasis:
    """Standard monomials of Jac(R) with their weighted degrees.

    ``exponents[i]`` are the monomial exponents a_j over the fixed variables;
    the corresponding form is x^a dx, of charge degree sum (a_j + 1) w_j / d.
    """

    fixed: Tuple[int, ...]
    weights: Tuple[int, ...]
    degree: int
    exponents: Tuple[Exponents, ...]

    def __len__(self) -> int:
        return len(self.exponents)

    def weighted_degree(self, a: Exponents) -> int:
        """Monomial degree sum a_j w_j (integer, units of 1/d)."""
        return sum(x * w for x, w in zip(a, self.weights))

    def form_degree(self, a: Exponents) -> Fraction:
        return Fraction(sum((x + 1) * w for x, w in zip(a, self.weights)), self.degree)

    def counts(self) -> Dict[int, int]:
        """Dimension per monomial weighted degree."""
        return dict(sorted(Counter(self.weighted_degree(a) for a in self.exponents).items()))


def _monomials_of_degree(weights: Sequence[int], k: int) -> List[Exponents]:
    out: List[Exponents] = []
    n = len(weights)

    def rec(j, rest, acc):
        if j == n - 1:
            if rest % weights[j] == 0:
                out.append(tuple(acc) + (rest // weights[j],))
            return
        for e in range(rest // weights[j] + 1):
            acc.append(e)
            rec(j + 1, rest - e * weights[j], acc)
            acc.pop()

    if n and k >= 0:
        rec(0, k, [])
    return out


def _grevlex_key(a: Exponents):
    # descending sort by this key is grevlex descending for variables x_0 > x_1 > ...
    return (sum(a), tuple(-x for x in reversed(a)))


def _partials(monomials: Sequence[Exponents], n: int) -> List[Dict[Exponents, int]]:
    out = []
    for j in range(n):
        p: Dict[Exponents, int] = {}
        for m in monomials:
            if m[j]:
                e = list(m)
                e[j] -= 1
                p[tuple(e)] = p.get(tuple(e), 0) + m[j]
        out.append(p)
    return out


def _component_basis(monomials: Tuple[Exponents, ...], weights: Tuple[int, ...],
                     d: int) -> List[Exponents]:
    """Standard monomials of Jac for a polynomial in variables that all occur."""
    n = len(weights)
    socle = sum(d - 2 * w for w in weights)
    if socle < 0:
        raise DegenerateError(f"weights {weights} exceed half the degree {d}")
    parts = _partials(monomials, n)
    pdeg = [d - w for w in weights]
    basis: List[Exponents] = []
    for k in range(socle + max(weights) + 1):
        cols = sorted(_monomials_of_degree(weights, k), key=_grevlex_key, reverse=True)
        if not cols:
            continue
        index = {m: i for i, m in enumerate(cols)}
        rows = []
        for j in range(n):
            if not parts[j]:
                continue
            for mult in _monomials_of_degree(weights, k - pdeg[j]):
                row = {}
                for e, c in parts[j].items():
                    key = tuple(x + y for x, y in zip(e, mult))
                    row[index[key]] = row.get(index[key], 0) + c
                rows.append(row)
        pivots = echelon_pivots(rows)
        standard = [cols[i] for i in range(len(cols)) if i not in pivots]
        if k > socle:
            if standard:
                raise DegenerateError(
                    f"Jacobi ring does not close above the socle degree {socle}/{d}")
            continue
        basis.extend(reversed(standard))
    return basis


def _components(poly: RestrictedPolynomial) -> List[List[int]]:
    """Groups of local variable indices connected through shared monomials."""
    n = len(poly.fixed)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in poly.monomials:
        vs = [j for j, e in enumerate(m) if e]
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    groups: Dict[int, List[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


_CACHE: Dict[tuple, Tuple[Exponents, ...]] = {}
_CACHE_LOCK = threading.Lock()


def _cached_component(monomials, weights, d) -> Tuple[Exponents, ...]:
    key = (monomials, weights, d)
    hit = _CACHE.get(key)
    if hit is None:
        hit = tuple(_component_basis(monomials, weights, d))
        with _CACHE_LOCK:
            _CACHE.setdefault(key, hit)
    return hit


@lru_cache(maxsize=4096)
def jacobi_basis(poly: RestrictedPolynomial) -> GradedBasis:
    """Monomial basis of the Jacobi ring of a restricted polynomial.

    An empty fixed set gives the one-dimensional space spanned by the empty
    form. Raises DegenerateError when the quotient is infinite-dimensional.
    Results are memoized per restricted polynomial.
    """
    if not poly.fixed:
        return GradedBasis((), (), poly.degree, ((),))
    if poly.is_zero:
        raise DegenerateError(f"polynomial vanishes identically on x{list(poly.fixed)}")
    used = {j for m in poly.monomials for j, e in enumerate(m) if e}
    if len(used) < len(poly.fixed):
        free = [poly.fixed[j] for j in range(len(poly.fixed)) if j not in used]
        raise DegenerateError(f"variables {free} do not occur in the restriction")

    pieces = []
    for comp in _components(poly):
        mons = tuple(sorted({tuple(m[j] for j in comp) for m in poly.monomials
                             if any(m[j] for j in comp)}))
        w = tuple(poly.weights[j] for j in comp)
        pieces.append((comp, _cached_component(mons, w, poly.degree)))

    n = len(poly.fixed)
    out = []
    for choice in product(*(b for _, b in pieces)):
        a = [0] * n
        for (comp, _), e in zip(pieces, choice):
            for j, x in zip(comp, e):
                a[j] = x
        out.append(tuple(a))
    out.sort(key=lambda a: (sum(x * w for x, w in zip(a, poly.weights)), _grevlex_key(a)))
    return GradedBasis(poly.fixed, poly.weights, poly.degree, tuple(out))


def poincare_oracle(weights: Sequence[int], degree: int) -> Dict[int, int]:
    """Coefficients of prod (1 - t^(d-w)) / (1 - t^w), a polynomial in t.

    Raises ValueError if some weight exceeds d/2 (the series is then not a
    polynomial with nonnegative coefficients).
    """
    if any(2 * w > degree or w <= 0 for w in weights):
        raise ValueError(f"weights {tuple(weights)} must lie in (0, {degree}/2]")
    top = sum(degree - w for w in weights)
    coeffs = [0] * (top + 1)
    coeffs[0] = 1
    for w in weights:
        # multiply by 1 - t^(d-w)
        s = degree - w
        for k in range(top, s - 1, -1):
            coeffs[k] -= coeffs[k - s]
    for w in weights:
        # divide by 1 - t^w
        for k in range(w, top + 1):
            coeffs[k] += coeffs[k - w]
    socle = sum(degree - 2 * w for w in weights)
    if any(coeffs[socle + 1:]):
        raise ValueError("Poincare series is not a polynomial")
    return {k: c for k, c in enumerate(coeffs[:socle + 1]) if c}


def milnor_number(weights: Sequence[int], degree: int) -> Fraction:
    out = Fraction(1)
    for w in weights:
        out *= Fraction(degree, w) - 1
    return out


def character_value(k, exponents: Sequence[int], fixed: Sequence[int]) -> Fraction:
    """Character of the diagonal symmetry k on the form x^a dx_F: sum (a_j+1) k_j mod 1."""
    comps = k.components if hasattr(k, "components") else k
    return sum((Fraction(a + 1) * comps[j] for a, j in zip(exponents, fixed)), Fraction(0)) % 1
