"""Finite monoids as dense multiplication tables.

Elements are the indices 0..n-1; the identity is an index, not forced to 0.
All queries are pure and the object is immutable after construction, so a
monoid can be shared freely between threads.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .errors import BadIdentityError, NonAssociativeError, ShapeError

# Above this carrier size the O(n^3) associativity sweep is skipped unless
# explicitly forced; tables that big come from generators already known to be
# associative.
ASSOCIATIVITY_CHECK_LIMIT = 256


@dataclass(frozen=True)
class StructureFlags:
    """Structural predicates of a monoid, each decided by exhaustive scan."""

    commutative: bool
    dedekind_finite: bool
    unit_cancellative: bool
    acyclic: bool
    left_duo: bool
    right_duo: bool
    duo: bool
    reduced: bool

    def to_json(self) -> dict:
        return asdict(self)


class FiniteMonoid:
    __slots__ = ("n", "identity", "table", "_ideals", "_units", "_divisors", "_flags")

    def __init__(self, table, identity: int, *, check_associativity: bool | None = None):
        rows = tuple(tuple(row) for row in table)
        n = len(rows)
        if n == 0:
            raise ShapeError("empty multiplication table")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ShapeError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ShapeError(f"entry ({i}, {j}) = {v!r} is not an element index")
        if not isinstance(identity, int) or not 0 <= identity < n:
            raise ShapeError(f"identity {identity!r} is not an element index")
        for x in range(n):
            if rows[identity][x] != x or rows[x][identity] != x:
                raise BadIdentityError(x)
        if check_associativity is None:
            check_associativity = n <= ASSOCIATIVITY_CHECK_LIMIT
        if check_associativity:
            for x in range(n):
                rx = rows[x]
                for y in range(n):
                    rxy = rows[rx[y]]
                    ry = rows[y]
                    for z in range(n):
                        if rxy[z] != rx[ry[z]]:
                            raise NonAssociativeError((x, y, z))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "_ideals", {})
        object.__setattr__(self, "_units", None)
        object.__setattr__(self, "_divisors", {})
        object.__setattr__(self, "_flags", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("FiniteMonoid is immutable")

    def __repr__(self) -> str:
        return f"FiniteMonoid(n={self.n}, identity={self.identity})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteMonoid)
            and self.table == other.table
            and self.identity == other.identity
        )

    def __hash__(self) -> int:
        return hash((self.table, self.identity))

    # -- basic queries ----------------------------------------------------

    def elements(self) -> range:
        return range(self.n)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, word) -> int:
        """Left-to-right product of a word of element indices; empty -> identity."""
        p = self.identity
        for a in word:
            p = self.table[p][a]
        return p

    def units(self) -> frozenset:
        """Elements u with uv = vu = identity for some v."""
        if self._units is None:
            e = self.identity
            found = frozenset(
                u
                for u in range(self.n)
                if any(self.table[u][v] == e and self.table[v][u] == e for v in range(self.n))
            )
            object.__setattr__(self, "_units", found)
        return self._units

    def principal_ideal(self, x: int) -> frozenset:
        """The two-sided ideal {u*x*v : u, v in the carrier}."""
        cached = self._ideals.get(x)
        if cached is None:
            t = self.table
            ux = {row[x] for row in t}
            cached = frozenset(t[p][v] for p in ux for v in range(self.n))
            self._ideals[x] = cached
        return cached

    def divides(self, x: int, y: int) -> bool:
        """Two-sided divisibility: x | y iff y lies in the ideal generated by x."""
        return y in self.principal_ideal(x)

    def divisors(self, x: int) -> tuple:
        """All d with d | x, sorted."""
        cached = self._divisors.get(x)
        if cached is None:
            cached = tuple(d for d in range(self.n) if x in self.principal_ideal(d))
            self._divisors[x] = cached
        return cached

    # -- submonoids --------------------------------------------------------

    def set_product(self, a, b) -> frozenset:
        t = self.table
        return frozenset(t[x][y] for x in a for y in b)

    def generated_submonoid(self, seed) -> frozenset:
        """Least subset containing seed and the identity, closed under products."""
        closed = set(seed)
        closed.add(self.identity)
        frontier = set(closed)
        t = self.table
        while frontier:
            fresh = set()
            for x in closed:
                for y in frontier:
                    fresh.add(t[x][y])
                    fresh.add(t[y][x])
            frontier = fresh - closed
            closed |= frontier
        return frozenset(closed)

    def divisor_closed_closure(self, x: int) -> frozenset:
        """Least divisor-closed submonoid containing x.

        Alternates divisor closure and product closure until the set is a
        fixpoint of both.
        """
        current = frozenset({x})
        while True:
            with_divs = set(current)
            for y in current:
                with_divs.update(self.divisors(y))
            closed = self.generated_submonoid(with_divs)
            if closed == current:
                return closed
            current = closed

    def germ_submonoid(self, x: int) -> frozenset:
        """Submonoid generated by the divisors of x; contained in the
        divisor-closed closure of x."""
        return self.generated_submonoid(self.divisors(x))

    def submonoid(self, elements) -> tuple["FiniteMonoid", tuple]:
        """Restriction to a product-closed subset containing the identity.

        Returns the restricted monoid over reindexed elements together with
        the sorted tuple mapping new indices back to the parent's.
        """
        to_parent = tuple(sorted(elements))
        if self.identity not in elements:
            raise ShapeError("submonoid must contain the identity")
        index = {p: i for i, p in enumerate(to_parent)}
        t = self.table
        try:
            sub_table = [[index[t[a][b]] for b in to_parent] for a in to_parent]
        except KeyError as exc:
            raise ShapeError(f"subset not closed under products: {exc}") from exc
        sub = FiniteMonoid(sub_table, index[self.identity], check_associativity=False)
        return sub, to_parent

    # -- structural predicates ---------------------------------------------

    def structure_flags(self) -> StructureFlags:
        if self._flags is not None:
            return self._flags
        n, t, e = self.n, self.table, self.identity
        units = self.units()
        commutative = all(t[x][y] == t[y][x] for x in range(n) for y in range(x + 1, n))
        dedekind_finite = all(
            t[y][x] == e for x in range(n) for y in range(n) if t[x][y] == e
        )
        unit_cancellative = all(
            t[x][y] != x and t[y][x] != x
            for x in range(n)
            for y in range(n)
            if y not in units
        )
        acyclic = True
        for u in range(n):
            for v in range(n):
                if u in units and v in units:
                    continue
                for x in range(n):
                    if t[t[u][x]][v] == x:
                        acyclic = False
                        break
                if not acyclic:
                    break
            if not acyclic:
                break
        left_duo = all(
            {t[a][h] for h in range(n)} <= {t[h][a] for h in range(n)} for a in range(n)
        )
        right_duo = all(
            {t[h][a] for h in range(n)} <= {t[a][h] for h in range(n)} for a in range(n)
        )
        flags = StructureFlags(
            commutative=commutative,
            dedekind_finite=dedekind_finite,
            unit_cancellative=unit_cancellative,
            acyclic=acyclic,
            left_duo=left_duo,
            right_duo=right_duo,
            duo=left_duo and right_duo,
            reduced=units == frozenset({e}),
        )
        object.__setattr__(self, "_flags", flags)
        return flags

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "identity": self.identity,
            "table": [list(row) for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict, **kwargs) -> "FiniteMonoid":
        try:
            n = data["n"]
            table = data["table"]
            identity = data["identity"]
        except (TypeError, KeyError) as exc:
            raise ShapeError(f"monoid JSON missing field: {exc}") from exc
        if len(table) != n:
            raise ShapeError(f"declared n = {n} but table has {len(table)} rows")
        return cls(table, identity, **kwargs)

    @classmethod
    def from_file(cls, path, **kwargs) -> "FiniteMonoid":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), **kwargs)
