"""Finitely supported tables (p, q) -> dimension with shift, flip and convolution."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple

Bidegree = Tuple[Fraction, Fraction]

HALF = Fraction(1, 2)


class BigradedTable:
    """Nonnegative integer dimensions indexed by rational bidegrees."""

    __slots__ = ("_data", "label")

    def __init__(self, entries=None, label: str = ""):
        self._data: Dict[Bidegree, int] = {}
        self.label = label
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (p, q), n in items:
                self.add(p, q, n)

    def add(self, p, q, n: int = 1) -> None:
        if n < 0:
            raise ValueError("dimensions are nonnegative")
        if n:
            key = (Fraction(p), Fraction(q))
            self._data[key] = self._data.get(key, 0) + n

    def __getitem__(self, pq) -> int:
        p, q = pq
        return self._data.get((Fraction(p), Fraction(q)), 0)

    def items(self) -> Iterator[Tuple[Bidegree, int]]:
        return iter(sorted(self._data.items()))

    def support(self):
        return sorted(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    @property
    def total(self) -> int:
        return sum(self._data.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedTable):
            return NotImplemented
        return self._data == other._data

    def __repr__(self) -> str:
        body = ", ".join(f"({p},{q}):{n}" for (p, q), n in self.items())
        return f"BigradedTable({{{body}}})"

    def copy(self) -> "BigradedTable":
        return BigradedTable(self._data, self.label)

    def __add__(self, other: "BigradedTable") -> "BigradedTable":
        out = self.copy()
        for (p, q), n in other._data.items():
            out.add(p, q, n)
        return out

    def shift(self, dp, dq=None) -> "BigradedTable":
        dq = dp if dq is None else dq
        dp, dq = Fraction(dp), Fraction(dq)
        return BigradedTable({(p + dp, q + dq): n for (p, q), n in self._data.items()},
                             self.label)

    def flip(self, n) -> "BigradedTable":
        """(p, q) -> (n - p, q)."""
        n = Fraction(n)
        return BigradedTable({(n - p, q): v for (p, q), v in self._data.items()}, self.label)

    def transpose(self) -> "BigradedTable":
        return BigradedTable({(q, p): v for (p, q), v in self._data.items()}, self.label)

    def dual(self, dim) -> "BigradedTable":
        """(p, q) -> (dim - p, dim - q)."""
        dim = Fraction(dim)
        return BigradedTable({(dim - p, dim - q): v for (p, q), v in self._data.items()},
                             self.label)

    def convolve(self, other: "BigradedTable") -> "BigradedTable":
        acc: Dict[Bidegree, int] = defaultdict(int)
        for (p1, q1), a in self._data.items():
            for (p2, q2), b in other._data.items():
                acc[(p1 + p2, q1 + q2)] += a * b
        return BigradedTable(acc)

    def restrict(self, keep) -> "BigradedTable":
        return BigradedTable({k: v for k, v in self._data.items() if keep(*k)}, self.label)

    def is_integral(self) -> bool:
        return all(p.denominator == 1 and q.denominator == 1 for p, q in self._data)

    def is_half_integral(self) -> bool:
        """Every bidegree lies in (1/2 + Z) x (1/2 + Z)."""
        return all(p.denominator == 2 and q.denominator == 2 for p, q in self._data)

    def has_hodge_symmetry(self) -> bool:
        return self == self.transpose()

    def first_difference(self, other: "BigradedTable") -> Optional[Tuple[Bidegree, int, int]]:
        for key in sorted(set(self._data) | set(other._data)):
            a, b = self._data.get(key, 0), other._data.get(key, 0)
            if a != b:
                return key, a, b
        return None

    def row(self, total) -> list:
        """Entries with p + q = total, ordered by decreasing p."""
        total = Fraction(total)
        return [n for (p, q), n in sorted(self._data.items(), key=lambda kv: -kv[0][0])
                if p + q == total]

    def to_json(self) -> list:
        return [{"p": str(p), "q": str(q), "dim": n} for (p, q), n in self.items()]

    @classmethod
    def from_json(cls, entries: Iterable[dict], label: str = "") -> "BigradedTable":
        return cls([((Fraction(e["p"]), Fraction(e["q"])), int(e["dim"])) for e in entries],
                   label)


def table_sum(tables: Iterable[BigradedTable]) -> BigradedTable:
    out = BigradedTable()
    for t in tables:
        for (p, q), n in t.items():
            out.add(p, q, n)
    return out
