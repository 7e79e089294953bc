"""Model specifications: exponent matrices, weight systems, atoms, transposes, suspensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import linalg
from .errors import ModelError

GROUP_KEYWORDS = ("J2", "SL", "ALL")


@dataclass(frozen=True)
class ExponentMatrix:
    """Square exponent matrix; row ``i`` is the exponent vector of monomial ``i``."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0:
            raise ModelError("empty exponent matrix")
        if any(len(r) != n for r in rows):
            raise ModelError(f"exponent matrix must be square, got {n} rows of lengths "
                             f"{[len(r) for r in rows]}")
        if any(x < 0 for r in rows for x in r):
            raise ModelError("exponents must be nonnegative")
        if self.det == 0:
            raise ModelError("exponent matrix is singular")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "ExponentMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @cached_property
    def det(self) -> int:
        return linalg.determinant(self.rows)

    @cached_property
    def inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in linalg.inverse(self.rows))

    def transpose(self) -> "ExponentMatrix":
        return ExponentMatrix(tuple(zip(*self.rows)))

    def polynomial(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{j + 1}" for j in range(self.n)]
        terms = []
        for r in self.rows:
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, r) if e]
            terms.append("*".join(factors) or "1")
        return " + ".join(terms)


@dataclass(frozen=True)
class WeightSystem:
    weights: Tuple[int, ...]
    degree: int

    @property
    def charges(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(w, self.degree) for w in self.weights)

    @property
    def half_cy(self) -> bool:
        return 2 * sum(self.weights) == self.degree

    def __str__(self) -> str:
        return f"({','.join(map(str, self.weights))};{self.degree})"


def weights_of(matrix: ExponentMatrix) -> WeightSystem:
    """Charges are the row sums of M^-1; lift to the gcd-normalized integer system."""
    charges = [sum(row, Fraction(0)) for row in matrix.inverse]
    if any(q <= 0 for q in charges):
        raise ModelError(f"invalid weight system: charges {[str(q) for q in charges]}")
    d = lcm(*(q.denominator for q in charges))
    w = [int(q * d) for q in charges]
    g = gcd(*w, d)
    return WeightSystem(tuple(x // g for x in w), d // g)


@dataclass(frozen=True)
class Atom:
    kind: str  # "fermat", "chain" or "loop"
    variables: Tuple[int, ...]
    exponents: Tuple[int, ...]

    def __str__(self) -> str:
        names = ",".join(f"x{j + 1}" for j in self.variables)
        return f"{self.kind}{{{names}}}"


def classify_atoms(matrix: ExponentMatrix) -> List[Atom]:
    """Split the variables into Fermat, chain and loop atoms.

    Each monomial must be ``x_j^a`` or ``x_j^a x_k`` with ``a >= 2``; the
    ``j`` are a permutation of the variables, and the pointer ``j -> k`` has
    in-degree at most one. Chains are listed from their head to their
    Fermat-type tail.
    """
    n = matrix.n
    main = {}
    pointer = {}
    for i, row in enumerate(matrix.rows):
        support = [j for j, e in enumerate(row) if e]
        big = [j for j in support if row[j] >= 2]
        if len(support) > 2:
            raise ModelError(f"monomial {i + 1} has more than two variables")
        if not big:
            raise ModelError(f"monomial {i + 1} is a dangling chain term (exponent 1)")
        if len(big) > 1 or (len(support) == 2 and row[support[0] + support[1] - big[0]] != 1):
            raise ModelError(f"monomial {i + 1} is not of Fermat/chain/loop type")
        j = big[0]
        if j in main:
            raise ModelError(f"variable x{j + 1} leads two monomials; not decomposable")
        main[j] = i
        if len(support) == 2:
            pointer[j] = support[0] + support[1] - j
    if len(main) != n:
        raise ModelError("monomials do not decompose the variable set")
    targets = list(pointer.values())
    if len(set(targets)) != len(targets):
        raise ModelError("two monomials point at the same variable; not decomposable")

    exps = {j: matrix.rows[main[j]][j] for j in range(n)}
    pointed = set(targets)
    seen: set = set()
    atoms = []
    for start in range(n):
        if start in seen or start in pointed:
            continue
        path = [start]
        while path[-1] in pointer:
            path.append(pointer[path[-1]])
        seen.update(path)
        kind = "fermat" if len(path) == 1 else "chain"
        atoms.append(Atom(kind, tuple(path), tuple(exps[j] for j in path)))
    for start in range(n):
        if start in seen:
            continue
        cycle = [start]
        while pointer[cycle[-1]] != start:
            cycle.append(pointer[cycle[-1]])
        seen.update(cycle)
        atoms.append(Atom("loop", tuple(cycle), tuple(exps[j] for j in cycle)))
    return sorted(atoms, key=lambda a: min(a.variables))


def transpose(matrix: ExponentMatrix) -> ExponentMatrix:
    return matrix.transpose()


@dataclass(frozen=True)
class SuspendedModel:
    """``V = x0^2 + W`` with x0 prepended as variable 0."""

    base: ExponentMatrix
    matrix: ExponentMatrix
    weights: WeightSystem


def suspend(matrix: ExponentMatrix, weights: Optional[WeightSystem] = None) -> SuspendedModel:
    ws = weights or weights_of(matrix)
    if ws.degree % 2:
        raise ModelError(f"degree {ws.degree} is odd; x0^2 cannot be added")
    n = matrix.n
    rows = [(2,) + (0,) * n] + [(0,) + r for r in matrix.rows]
    return SuspendedModel(matrix, ExponentMatrix(tuple(rows)),
                          WeightSystem((ws.degree // 2,) + ws.weights, ws.degree))


@dataclass(frozen=True)
class ModelSpec:
    matrix: ExponentMatrix
    group: str = "J2"  # one of GROUP_KEYWORDS or "generators"
    generators: Tuple[Tuple[Fraction, ...], ...] = ()
    name: str = ""
    atoms: Tuple[Atom, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def weights(self) -> WeightSystem:
        return weights_of(self.matrix)


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ModelError(f"malformed rational {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ModelError(f"malformed rational {text!r}")


def model_from_dict(doc: dict, name: str = "") -> ModelSpec:
    if "monomials" not in doc:
        raise ModelError("missing 'monomials'")
    mons = doc["monomials"]
    if not isinstance(mons, list) or not all(isinstance(r, list) for r in mons):
        raise ModelError("'monomials' must be a list of integer lists")
    try:
        rows = tuple(tuple(int(x) for x in r) for r in mons)
    except (TypeError, ValueError) as exc:
        raise ModelError(f"non-integer exponent: {exc}") from None
    if any(isinstance(x, bool) or not isinstance(x, int) for r in mons for x in r):
        raise ModelError("exponents must be integers")
    matrix = ExponentMatrix(rows)
    atoms = tuple(classify_atoms(matrix))

    group = doc.get("group", "J2")
    gens: Tuple[Tuple[Fraction, ...], ...] = ()
    if isinstance(group, str):
        if group not in GROUP_KEYWORDS:
            raise ModelError(f"unknown group keyword {group!r}; expected one of {GROUP_KEYWORDS}")
        kind = group
    elif isinstance(group, dict) and "generators" in group:
        kind = "generators"
        raw = group["generators"]
        if not isinstance(raw, list):
            raise ModelError("group.generators must be a list")
        out = []
        for g in raw:
            if not isinstance(g, list) or len(g) != matrix.n:
                raise ModelError(f"generator {g!r} must have {matrix.n} components")
            out.append(tuple(parse_rational(x) % 1 for x in g))
        gens = tuple(out)
    else:
        raise ModelError("'group' must be a keyword string or a table with 'generators'")
    return ModelSpec(matrix, kind, gens, str(doc.get("name", name)), atoms)


def parse_document(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ModelError(f"syntax error: {exc}") from None


def parse_model(text: str, name: str = "") -> ModelSpec:
    """Parse a model document (TOML subset) into a validated :class:`ModelSpec`."""
    return model_from_dict(parse_document(text), name)
