"""Finite diagonal symmetry groups, ages, the Aut_W x Aut_W* pairing and dual groups.

Elements live in (Q/Z)^n. A group stores its elements as integer tuples
modulo its exponent ``modulus``, so that equal groups have equal
representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import GroupOrderError, PreconditionError
from .polyspec import ExponentMatrix, WeightSystem, weights_of

ORDER_CAP = 10**6

IntVec = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class DiagonalSymmetry:
    """``(p_1/D, ..., p_n/D)`` acting on x_j by exp(2 pi i p_j/D); components in [0,1)."""

    components: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components",
                           tuple(Fraction(c) % 1 for c in self.components))

    @classmethod
    def of(cls, *components) -> "DiagonalSymmetry":
        return cls(tuple(Fraction(c) for c in components))

    @classmethod
    def from_ints(cls, values: Sequence[int], modulus: int) -> "DiagonalSymmetry":
        return cls(tuple(Fraction(v, modulus) for v in values))

    @classmethod
    def identity(cls, n: int) -> "DiagonalSymmetry":
        return cls((Fraction(0),) * n)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def order(self) -> int:
        return lcm(1, *(c.denominator for c in self.components))

    @property
    def fixed(self) -> Tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.components) if c == 0)

    def ints(self, modulus: int) -> IntVec:
        out = []
        for c in self.components:
            v = c * modulus
            if v.denominator != 1:
                raise ValueError(f"{self} is not defined modulo {modulus}")
            out.append(int(v))
        return tuple(out)

    def __add__(self, other: "DiagonalSymmetry") -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(-a for a in self.components))

    def __sub__(self, other: "DiagonalSymmetry") -> "DiagonalSymmetry":
        return self + (-other)

    def __mul__(self, k: int) -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(a * k for a in self.components))

    __rmul__ = __mul__

    def prepend(self, *components) -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(Fraction(c) for c in components) + self.components)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"


def age(g: DiagonalSymmetry) -> Fraction:
    return sum(g.components, Fraction(0))


def grading_element(weights: WeightSystem) -> DiagonalSymmetry:
    return DiagonalSymmetry(weights.charges)


def _add(a: IntVec, b: IntVec, m: int) -> IntVec:
    return tuple((x + y) % m for x, y in zip(a, b))


class SymmetryGroup:
    """A finite subgroup of (Q/Z)^n, stored as integer vectors modulo its exponent."""

    __slots__ = ("n", "modulus", "elements", "generators", "_set")

    def __init__(self, n: int, modulus: int, elements: Iterable[IntVec],
                 generators: Iterable[IntVec] = ()):
        self.n = n
        self.modulus = modulus
        self._set = frozenset(elements)
        self.elements = tuple(sorted(self._set))
        self.generators = tuple(generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        if isinstance(g, DiagonalSymmetry):
            if self.modulus % g.order:
                return False
            g = g.ints(self.modulus)
        return tuple(g) in self._set

    def __iter__(self) -> Iterator[DiagonalSymmetry]:
        return (DiagonalSymmetry.from_ints(e, self.modulus) for e in self.elements)

    def symmetries(self) -> List[DiagonalSymmetry]:
        return list(self)

    def generator_symmetries(self) -> List[DiagonalSymmetry]:
        return [DiagonalSymmetry.from_ints(g, self.modulus) for g in self.generators]

    def at_modulus(self, modulus: int) -> List[IntVec]:
        """Elements rescaled to a multiple of the group modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        f = modulus // self.modulus
        return [tuple(x * f for x in e) for e in self.elements]

    def issubset(self, other: "SymmetryGroup") -> bool:
        if self.n != other.n:
            return False
        return all(g in other for g in self.generator_symmetries())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetryGroup):
            return NotImplemented
        return self.n == other.n and self.modulus == other.modulus and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.n, self.modulus, self._set))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generator_symmetries())
        return f"SymmetryGroup(n={self.n}, order={self.order}, generators=[{gens}])"

    def to_json(self) -> list:
        return [[str(c) for c in g.components] for g in self]


def generate(n: int, generators: Iterable, cap: Optional[int] = None) -> SymmetryGroup:
    """Closure of the given generators (DiagonalSymmetry or fraction tuples)."""
    cap = ORDER_CAP if cap is None else cap
    gens = [g if isinstance(g, DiagonalSymmetry) else DiagonalSymmetry(tuple(g))
            for g in generators]
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} does not have {n} components")
    gens = [g for g in gens if g.order > 1]
    modulus = lcm(1, *(g.order for g in gens))
    ivecs = [g.ints(modulus) for g in gens]
    zero = (0,) * n
    elems = {zero}
    kept = []
    for g in ivecs:
        if g in elems:
            continue
        kept.append(g)
        current = set(elems)
        shift = g
        while shift not in elems:
            current.update(_add(e, shift, modulus) for e in elems)
            if len(current) > cap:
                raise GroupOrderError(f"group order exceeds cap {cap}")
            shift = _add(shift, g, modulus)
        elems = current
    return SymmetryGroup(n, modulus, elems, kept)


def trivial_group(n: int) -> SymmetryGroup:
    return generate(n, [])


def adjoin(group: SymmetryGroup, *elements, cap: Optional[int] = None) -> SymmetryGroup:
    return generate(group.n, group.generator_symmetries() + list(elements), cap)


def aut_group(matrix: ExponentMatrix, cap: Optional[int] = None) -> SymmetryGroup:
    """Aut_W: generated by the columns of M^-1."""
    cap = ORDER_CAP if cap is None else cap
    if abs(matrix.det) > cap:
        raise GroupOrderError(f"|Aut_W| = {abs(matrix.det)} exceeds cap {cap}")
    return _aut_group(matrix)


@lru_cache(maxsize=64)
def _aut_group(matrix: ExponentMatrix) -> SymmetryGroup:
    inv = matrix.inverse
    cols = [DiagonalSymmetry(tuple(inv[i][j] for i in range(matrix.n))) for j in range(matrix.n)]
    return generate(matrix.n, cols, abs(matrix.det))


def sl_filter(group: SymmetryGroup) -> SymmetryGroup:
    """Elements with integral component sum (determinant one)."""
    m = group.modulus
    keep = [e for e in group.elements if sum(e) % m == 0]
    return _from_elements(group.n, m, keep)


def _from_elements(n: int, modulus: int, elements: Sequence[IntVec]) -> SymmetryGroup:
    """Re-normalize a subgroup given by a full element list (modulus may shrink)."""
    content = gcd(modulus, *(x for e in elements for x in e))
    new_mod = modulus // content
    ints = [tuple(x // content for x in e) for e in elements]

    def order(v):
        return new_mod // gcd(new_mod, *v)

    # reduced generating set, greedy by decreasing element order
    gens: List[IntVec] = []
    span = {(0,) * n}
    for e in sorted(ints, key=lambda v: (-order(v), v)):
        if len(span) == len(ints):
            break
        if e in span:
            continue
        gens.append(e)
        span = set(generate(n, [DiagonalSymmetry.from_ints(g, new_mod) for g in gens],
                            cap=len(ints)).elements)
    return SymmetryGroup(n, new_mod, ints, gens)


def in_aut(matrix: ExponentMatrix, g: DiagonalSymmetry) -> bool:
    """g preserves every monomial: M g in Z^n."""
    return all(sum((m * c for m, c in zip(row, g.components)), Fraction(0)).denominator == 1
               for row in matrix.rows)


def pairing(matrix: ExponentMatrix, g: DiagonalSymmetry, h: DiagonalSymmetry) -> Fraction:
    """``h^T M g mod 1`` for g in Aut_W and h in Aut_{W*}."""
    if not in_aut(matrix, g):
        raise PreconditionError(f"{g} is not in Aut_W")
    if not in_aut(matrix.transpose(), h):
        raise PreconditionError(f"{h} is not in Aut_W*")
    total = Fraction(0)
    for i, row in enumerate(matrix.rows):
        total += h.components[i] * sum((m * c for m, c in zip(row, g.components)), Fraction(0))
    return total % 1


def _lift_image(matrix: ExponentMatrix, g: DiagonalSymmetry) -> Tuple[int, ...]:
    """M g for a lift of g with components in [0,1); integral when g is in Aut_W."""
    out = []
    for row in matrix.rows:
        v = sum((m * c for m, c in zip(row, g.components)), Fraction(0))
        if v.denominator != 1:
            raise PreconditionError(f"{g} is not in Aut_W")
        out.append(int(v))
    return tuple(out)


def standard_dual(matrix: ExponentMatrix, group: SymmetryGroup,
                  cap: Optional[int] = None) -> SymmetryGroup:
    """Berglund-Huebsch dual ker(Aut_{W*} -> G^): elements of Aut_{W*} orthogonal to G."""
    dual_aut = aut_group(matrix.transpose(), cap)
    images = [_lift_image(matrix, g) for g in group.generator_symmetries()]
    m = dual_aut.modulus
    keep = [h for h in dual_aut.elements
            if all(sum(a * b for a, b in zip(h, c)) % m == 0 for c in images)]
    return _from_elements(matrix.n, m, keep)


def half_cy_groups(matrix: ExponentMatrix, cap: Optional[int] = None):
    """(Aut_W, SL_W, J_W) for a model."""
    aut = aut_group(matrix, cap)
    return aut, sl_filter(aut), grading_element(weights_of(matrix))


def check_admissible(matrix: ExponentMatrix, group: SymmetryGroup) -> None:
    """Raise PreconditionError unless J_W^2 in G in SL_W."""
    j = grading_element(weights_of(matrix))
    if (2 * j) not in group:
        raise PreconditionError("J_W^2 is not in G")
    for g in group.generator_symmetries():
        if not in_aut(matrix, g):
            raise PreconditionError(f"{g} is not a symmetry of W")
        if age(g).denominator != 1:
            raise PreconditionError(f"{g} does not have determinant one")


def dual_group(matrix: ExponentMatrix, group: SymmetryGroup,
               cap: Optional[int] = None) -> SymmetryGroup:
    """G* = ker(Aut_{W*} -> G[J_W]^), requires J_W^2 in G in SL_W."""
    check_admissible(matrix, group)
    j = grading_element(weights_of(matrix))
    return standard_dual(matrix, adjoin(group, j, cap=cap), cap)


def resolve_group(matrix: ExponentMatrix, directive: str,
                  generators: Sequence[Sequence[Fraction]] = (),
                  cap: Optional[int] = None) -> SymmetryGroup:
    """Group named by a model directive: J2, SL, ALL or explicit generators."""
    n = matrix.n
    if directive == "J2":
        return generate(n, [2 * grading_element(weights_of(matrix))], cap)
    if directive == "SL":
        return sl_filter(aut_group(matrix, cap))
    if directive == "ALL":
        return aut_group(matrix, cap)
    if directive == "generators":
        return generate(n, [DiagonalSymmetry(tuple(g)) for g in generators], cap)
    raise ValueError(f"unknown group directive {directive!r}")


def suspended_group(group: SymmetryGroup, *extra: DiagonalSymmetry,
                    cap: Optional[int] = None) -> SymmetryGroup:
    """G acting on (x0, x1..xn) trivially on x0, with extra elements adjoined."""
    gens = [g.prepend(0) for g in group.generator_symmetries()]
    return generate(group.n + 1, gens + list(extra), cap)


@dataclass
class DiagramEdge:
    label: str
    left_order: int
    right_order: int
    ok: bool


@dataclass
class DiagramReport:
    nodes: List[DiagramEdge]
    arrows: List[DiagramEdge]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.nodes) and all(e.ok for e in self.arrows)

    def to_json(self) -> dict:
        def edge(e):
            return {"label": e.label, "left": e.left_order, "right": e.right_order, "ok": e.ok}
        return {"ok": self.ok, "nodes": [edge(e) for e in self.nodes],
                "arrows": [edge(e) for e in self.arrows]}


def suspended_elements(matrix: ExponentMatrix):
    """sigma, J_W and J_V on the suspended variable set (x0 first)."""
    ws = weights_of(matrix)
    sigma = DiagonalSymmetry.of(Fraction(1, 2), *([0] * matrix.n))
    j_w = grading_element(ws).prepend(0)
    return sigma, j_w, sigma + j_w


def duality_diagram_check(matrix: ExponentMatrix, group: SymmetryGroup,
                          cap: Optional[int] = None) -> DiagramReport:
    """Standard BH duality on V = x0^2 + W exchanges the two five-node diagrams."""
    from .polyspec import suspend

    dual = dual_group(matrix, group, cap)
    v = suspend(matrix).matrix
    s, j, jv = suspended_elements(matrix)
    s_d, j_d, jv_d = suspended_elements(matrix.transpose())
    left = {
        "G": suspended_group(group, cap=cap),
        "G[s]": suspended_group(group, s, cap=cap),
        "G[sJ]": suspended_group(group, jv, cap=cap),
        "G[J]": suspended_group(group, j, cap=cap),
        "G[s,J]": suspended_group(group, s, j, cap=cap),
    }
    right = {
        "G": suspended_group(dual, s_d, j_d, cap=cap),
        "G[s]": suspended_group(dual, j_d, cap=cap),
        "G[sJ]": suspended_group(dual, jv_d, cap=cap),
        "G[J]": suspended_group(dual, s_d, cap=cap),
        "G[s,J]": suspended_group(dual, cap=cap),
    }
    duals = {k: standard_dual(v, g, cap) for k, g in left.items()}
    nodes = [DiagramEdge(k, left[k].order, right[k].order, duals[k] == right[k]) for k in left]
    arrows = []
    for a, b in [("G", "G[s]"), ("G", "G[sJ]"), ("G", "G[J]"),
                 ("G[s]", "G[s,J]"), ("G[sJ]", "G[s,J]"), ("G[J]", "G[s,J]")]:
        ok = left[a].issubset(left[b]) and duals[b].issubset(duals[a])
        arrows.append(DiagramEdge(f"{a} -> {b}", left[a].order, left[b].order, ok))
    return DiagramReport(nodes, arrows)
