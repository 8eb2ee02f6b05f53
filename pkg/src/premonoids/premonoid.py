"""A monoid paired with a preorder on its carrier.

No compatibility between the operation and the preorder is assumed; the
compatibility predicates live in :class:`PremonoidFlags` and are decided by
exhaustive scan on finite carriers.

The class exposes the small query protocol (``op``, ``divisors``, ``leq``,
``is_unit``, ``strict_lower_candidates``, ``prefix_bound``) that the
irreducibility and factorization engines are written against, so lazily
presented carriers can plug in the same machinery.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ShapeError
from .monoid import FiniteMonoid
from .preorder import PreorderRel


@dataclass(frozen=True)
class PremonoidFlags:
    """Compatibility and chain-condition predicates of a premonoid.

    ``method`` records how the verdicts were obtained ("exhaustive" for a full
    carrier scan, "bounded(...)" for lazily presented families).
    """

    preordered: bool
    strongly_preordered: bool
    positive: bool
    strongly_positive: bool
    weakly_positive: bool
    artinian: bool
    strongly_artinian: bool
    method: str = "exhaustive"

    def to_json(self) -> dict:
        return asdict(self)


class Premonoid:
    """Finite carrier: a FiniteMonoid together with a PreorderRel."""

    __slots__ = ("monoid", "preorder", "_units", "_heights", "_flags")

    def __init__(self, monoid: FiniteMonoid, preorder: PreorderRel):
        if monoid.n != preorder.n:
            raise ShapeError(
                f"carrier mismatch: monoid has {monoid.n} elements, relation {preorder.n}"
            )
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "preorder", preorder)
        object.__setattr__(self, "_units", None)
        object.__setattr__(self, "_heights", None)
        object.__setattr__(self, "_flags", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Premonoid is immutable")

    def __repr__(self) -> str:
        return f"Premonoid(n={self.monoid.n}, preorder={self.preorder.kind!r})"

    # -- query protocol ------------------------------------------------------

    @property
    def identity(self) -> int:
        return self.monoid.identity

    def carrier(self):
        return range(self.monoid.n)

    def op(self, a: int, b: int) -> int:
        return self.monoid.table[a][b]

    def divisors(self, x: int) -> tuple:
        return self.monoid.divisors(x)

    def leq(self, a: int, b: int) -> bool:
        return self.preorder.leq(a, b)

    def lt(self, a: int, b: int) -> bool:
        return self.preorder.lt(a, b)

    def equiv(self, a: int, b: int) -> bool:
        return self.preorder.equiv(a, b)

    def units(self) -> frozenset:
        """Elements mutually below/above the identity under the preorder."""
        if self._units is None:
            e = self.identity
            object.__setattr__(
                self,
                "_units",
                frozenset(u for u in self.carrier() if self.preorder.equiv(u, e)),
            )
        return self._units

    def is_unit(self, a: int) -> bool:
        return a in self.units()

    def nonunits(self) -> tuple:
        return tuple(a for a in self.carrier() if a not in self.units())

    def strict_lower_candidates(self, a: int):
        """Finite superset of the strictly-below non-units of a (here: all)."""
        return self.carrier()

    def prefix_bound(self, x: int) -> int:
        """Max length of a factorization of x with pairwise distinct prefix
        products: excising a repeated-prefix segment yields a strictly smaller
        factorization, and every prefix product divides x."""
        return len(self.divisors(x)) - 1

    def element_sort_key(self, a: int) -> int:
        return a

    def label(self, a: int):
        """Stable cross-view label of an element (index in the root carrier)."""
        return a

    # -- derived data ----------------------------------------------------------

    def heights(self) -> tuple[int, ...]:
        """Longest strict chain of non-units starting at each element.

        Units get 0 (no chain can start there); any non-unit gets at least 1,
        the chain consisting of the element alone.
        """
        if self._heights is not None:
            return self._heights
        n = self.monoid.n
        units = self.units()
        memo: dict[int, int] = {}

        def ht(x: int) -> int:
            if x in units:
                return 0
            got = memo.get(x)
            if got is None:
                # strict part is acyclic, so the recursion terminates
                memo[x] = got = 1 + max(
                    (ht(y) for y in range(n) if y not in units and self.lt(y, x)),
                    default=0,
                )
            return got

        result = tuple(ht(x) for x in range(n))
        object.__setattr__(self, "_heights", result)
        return result

    def flags(self) -> PremonoidFlags:
        if self._flags is not None:
            return self._flags
        n = self.monoid.n
        t = self.monoid.table
        leq = self.preorder.leq
        lt = self.preorder.lt
        e = self.identity

        leq_pairs = [(x, y) for x in range(n) for y in range(n) if leq(x, y) and x != y]
        preordered = all(
            leq(t[t[u][x]][v], t[t[u][y]][v])
            for x, y in leq_pairs
            for u in range(n)
            for v in range(n)
        )
        strongly_preordered = preordered and all(
            lt(t[t[u][x]][v], t[t[u][y]][v])
            for x, y in leq_pairs
            if lt(x, y)
            for u in range(n)
            for v in range(n)
        )
        identity_below_all = all(leq(e, y) for y in range(n))
        positive = preordered and identity_below_all
        strongly_positive = strongly_preordered and identity_below_all
        units = self.units()
        weakly_positive = all(
            leq(t[t[u][x]][v], x) for x in range(n) for u in units for v in units
        ) and all(leq(x, t[t[a][x]][b]) for x in range(n) for a in range(n) for b in range(n))
        flags = PremonoidFlags(
            preordered=preordered,
            strongly_preordered=strongly_preordered,
            positive=positive,
            strongly_positive=strongly_positive,
            weakly_positive=weakly_positive,
            artinian=True,
            strongly_artinian=True,
            method="exhaustive (finite carrier)",
        )
        object.__setattr__(self, "_flags", flags)
        return flags

    # -- localization ------------------------------------------------------------

    def restrict(self, elements) -> "SubPremonoid":
        """Restriction to a product-closed subset containing the identity."""
        sub_monoid, to_parent = self.monoid.submonoid(elements)
        sub_rel = self.preorder.restrict(to_parent)
        return SubPremonoid(sub_monoid, sub_rel, self, to_parent)

    def divisor_closed_localization(self, x: int) -> "SubPremonoid":
        return self.restrict(self.monoid.divisor_closed_closure(x))

    def germ_localization(self, x: int) -> "SubPremonoid":
        return self.restrict(self.monoid.germ_submonoid(x))


class SubPremonoid(Premonoid):
    """A restricted premonoid remembering its parent's element labels."""

    __slots__ = ("parent", "to_parent", "_to_sub")

    def __init__(self, monoid, preorder, parent: Premonoid, to_parent: tuple):
        super().__init__(monoid, preorder)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "to_parent", to_parent)
        object.__setattr__(self, "_to_sub", {p: i for i, p in enumerate(to_parent)})

    def label(self, a: int):
        return self.parent.label(self.to_parent[a])

    def from_parent(self, p) -> int:
        return self._to_sub[p]
