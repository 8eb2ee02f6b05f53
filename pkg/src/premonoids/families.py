"""Built-in monoid and premonoid families.

Finite families are realized as dense tables; the rest are lazily presented
carriers whose divisor sets are certified by the arguments documented on each
class.
"""
from __future__ import annotations

import itertools
from collections import Counter

from .errors import CapExceededError, NotProductOneError, ShapeError
from .localfinite import LocallyFiniteMonoid, LocalPremonoid
from .monoid import FiniteMonoid
from .premonoid import Premonoid
from .preorder import divisibility_preorder


# -- modular multiplication -------------------------------------------------------


def make_zn(n: int) -> FiniteMonoid:
    """Multiplicative monoid of the integers modulo n."""
    if n < 1:
        raise ShapeError("modulus must be >= 1")
    table = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FiniteMonoid(table, 1 % n, check_associativity=False)


def zn_premonoid(n: int) -> Premonoid:
    m = make_zn(n)
    return Premonoid(m, divisibility_preorder(m))


def cyclic_group(n: int) -> FiniteMonoid:
    """Additive cyclic group of order n (element k plays the role of g^k)."""
    if n < 1:
        raise ShapeError("order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteMonoid(table, 0, check_associativity=False)


def powerset_premonoid(ground_size: int) -> tuple[Premonoid, tuple]:
    """All subsets of a ground set under union, ordered by inclusion.

    Inclusion coincides with two-sided divisibility here (Y = U | X | V
    forces X inside Y, and X | Y = Y whenever X is inside Y), so the
    divisibility preorder realizes the inclusion order directly.  Labels map
    carrier indices to subset tuples.
    """
    if ground_size < 0:
        raise ShapeError("ground size must be >= 0")
    labels = []
    for bits in range(1 << ground_size):
        labels.append(tuple(i for i in range(ground_size) if bits >> i & 1))
    labels.sort(key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(labels)}
    table = [
        [index[tuple(sorted(set(a) | set(b)))] for b in labels] for a in labels
    ]
    monoid = FiniteMonoid(table, index[()], check_associativity=False)
    return Premonoid(monoid, divisibility_preorder(monoid)), tuple(labels)


# -- reduced power monoid of a finite base --------------------------------------------


class PowerMonoid(LocallyFiniteMonoid):
    """Identity-containing subsets of a finite base monoid under setwise product.

    Divisor certificate: if X = U*Y*V then Y = 1*Y*1 is contained in U*Y*V = X,
    and likewise U and V are contained in X; so the divisors of X are among
    the identity-containing subsets of X (at most 2^(|X|-1) of them) and the
    cofactor search may also range over those subsets only.
    """

    def __init__(self, base: FiniteMonoid):
        self.base = base
        self.identity = (base.identity,)

    def element(self, members) -> tuple:
        out = tuple(sorted(set(members) | {self.base.identity}))
        for m in out:
            if not 0 <= m < self.base.n:
                raise ShapeError(f"{m} is not an element of the base monoid")
        return out

    def op(self, x, y) -> tuple:
        t = self.base.table
        return tuple(sorted({t[a][b] for a in x for b in y}))

    def _id_subsets(self, x) -> list:
        rest = [m for m in x if m != self.base.identity]
        out = []
        for r in range(len(rest) + 1):
            for combo in itertools.combinations(rest, r):
                out.append(tuple(sorted((self.base.identity,) + combo)))
        return sorted(set(out))

    def divisors(self, x) -> tuple:
        subs = self._id_subsets(x)
        xs = tuple(sorted(x))
        found = []
        for y in subs:
            if any(self.op(self.op(u, y), v) == xs for u in subs for v in subs):
                found.append(y)
        return tuple(found)

    def sample_elements(self, limit: int | None = None) -> tuple:
        full = tuple(range(self.base.n))
        subs = self._id_subsets(full)
        return tuple(subs[:limit]) if limit else tuple(subs)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and list(x) == sorted(set(x))
            and self.base.identity in x
            and all(0 <= m < self.base.n for m in x)
        )


def make_power_monoid(base: FiniteMonoid) -> PowerMonoid:
    return PowerMonoid(base)


def power_premonoid(base: FiniteMonoid) -> LocalPremonoid:
    return LocalPremonoid(PowerMonoid(base), name=f"power({base.n})")


def power_premonoid_finite(base: FiniteMonoid) -> tuple[Premonoid, tuple]:
    """The same power monoid as a dense finite carrier (it is finite whenever
    the base is); labels map indices back to subset tuples."""
    pm = PowerMonoid(base)
    labels = pm.sample_elements()
    index = {x: i for i, x in enumerate(labels)}
    table = [[index[pm.op(a, b)] for b in labels] for a in labels]
    monoid = FiniteMonoid(table, index[pm.identity], check_associativity=False)
    return Premonoid(monoid, divisibility_preorder(monoid)), labels


# -- reduced power monoid of the additive naturals --------------------------------------


class ReducedPowerN(LocallyFiniteMonoid):
    """Finite 0-containing sets of naturals under setwise addition, capped.

    Divisor certificate: X = Y + W forces Y and W inside [0, max X] and both
    0-containing; for a candidate Y contained in X, the largest possible
    cofactor is W* = {z <= max X : z + Y is contained in X}, and Y divides X
    exactly when Y + W* = X (any valid W sits inside W*, so Y + W would then
    be a proper subset of X otherwise).
    """

    def __init__(self, cap: int, sample_max: int | None = None):
        if cap < 1:
            raise CapExceededError("cap must be >= 1")
        self.cap = cap
        self.identity = (0,)
        # bounded flag scans take triple products of sample elements, so the
        # default sample stays below a third of the cap
        self.sample_max = min(cap, sample_max if sample_max is not None else min(3, cap // 3))

    def element(self, members) -> tuple:
        out = tuple(sorted(set(members) | {0}))
        if any(m < 0 for m in out):
            raise ShapeError("members must be non-negative")
        if out[-1] > self.cap:
            raise CapExceededError(f"max {out[-1]} exceeds cap {self.cap}")
        return out

    def op(self, x, y) -> tuple:
        out = tuple(sorted({a + b for a in x for b in y}))
        if out[-1] > self.cap:
            raise CapExceededError(
                f"setwise sum reaches {out[-1]}, above cap {self.cap}"
            )
        return out

    def divisors(self, x) -> tuple:
        xs = set(x)
        m = max(x)
        rest = [v for v in x if v != 0]
        found = []
        for r in range(len(rest) + 1):
            for combo in itertools.combinations(rest, r):
                y = set(combo) | {0}
                wstar = {z for z in range(m + 1) if all(z + v in xs for v in y)}
                if {a + b for a in y for b in wstar} == xs:
                    found.append(tuple(sorted(y)))
        return tuple(sorted(set(found)))

    def sample_elements(self, limit: int | None = None) -> tuple:
        pool = range(1, self.sample_max + 1)
        out = []
        for r in range(len(pool) + 1):
            for combo in itertools.combinations(pool, r):
                out.append(tuple(sorted((0,) + combo)))
        out = sorted(set(out))
        return tuple(out[:limit]) if limit else tuple(out)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and list(x) == sorted(set(x))
            and x
            and x[0] == 0
            and x[-1] <= self.cap
        )


def make_reduced_power_N(cap: int, sample_max: int | None = None) -> ReducedPowerN:
    return ReducedPowerN(cap, sample_max)


def reduced_power_N_premonoid(cap: int, sample_max: int | None = None) -> LocalPremonoid:
    return LocalPremonoid(ReducedPowerN(cap, sample_max), name=f"powerN:{cap}")


# -- product-one sequences over a group -------------------------------------------------


class ProductOneMonoid(LocallyFiniteMonoid):
    """Multisets over a group subset admitting an ordering with product one,
    under multiset union.

    Divisor certificate: the monoid is commutative (multiset union), so
    Y | X means X = Y + W; both parts are sub-multisets of X, and there are
    finitely many of those.  Product-one certification searches orderings by
    depth-first traversal memoized on (remaining multiset, partial product).
    The ordering search is exponential in the number of distinct letters;
    intended for small supports.
    """

    def __init__(self, mul, group_identity, support, group_name: str):
        self.mul = mul
        self.group_identity = group_identity
        self.support = tuple(sorted(support))
        self.group_name = group_name
        self.identity = ()
        self._p1cache: dict = {}

    def is_product_one(self, multiset) -> bool:
        ms = tuple(sorted(multiset))
        if ms in self._p1cache:
            return self._p1cache[ms]
        seen = set()

        def search(remaining: tuple, prod) -> bool:
            if not remaining:
                return prod == self.group_identity
            key = (remaining, prod)
            if key in seen:
                return False
            seen.add(key)
            picked = set()
            for i, g in enumerate(remaining):
                if g in picked:
                    continue
                picked.add(g)
                if search(remaining[:i] + remaining[i + 1 :], self.mul(prod, g)):
                    return True
            return False

        ok = search(ms, self.group_identity)
        self._p1cache[ms] = ok
        return ok

    def element(self, members) -> tuple:
        ms = tuple(sorted(members))
        for g in ms:
            if g not in self.support:
                raise ShapeError(f"{g!r} is outside the support")
        if not self.is_product_one(ms):
            raise NotProductOneError(f"no ordering of {ms!r} multiplies to one")
        return ms

    def op(self, x, y) -> tuple:
        return tuple(sorted(x + y))

    def divisors(self, x) -> tuple:
        counts = Counter(x)
        letters = sorted(counts)
        found = []
        for picks in itertools.product(*(range(counts[g] + 1) for g in letters)):
            sub = []
            for g, k in zip(letters, picks):
                sub.extend([g] * k)
            sub = tuple(sub)
            rest = counts - Counter(sub)
            rest_ms = tuple(sorted(rest.elements()))
            if self.is_product_one(sub) and self.is_product_one(rest_ms):
                found.append(tuple(sorted(sub)))
        return tuple(sorted(set(found)))

    def sample_elements(self, limit: int | None = None, max_size: int = 4) -> tuple:
        out = set()
        frontier = {()}
        for _ in range(max_size):
            fresh = set()
            for ms in frontier:
                for g in self.support:
                    fresh.add(tuple(sorted(ms + (g,))))
            frontier = fresh
            out |= {ms for ms in fresh if self.is_product_one(ms)}
        out = sorted(out | {()})
        return tuple(out[:limit]) if limit else tuple(out)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and all(g in self.support for g in x)
            and tuple(sorted(x)) == x
            and self.is_product_one(x)
        )


def make_product_one(group: FiniteMonoid, support) -> ProductOneMonoid:
    """Product-one multisets over a subset of a finite group given by table."""
    units = group.units()
    if units != frozenset(range(group.n)):
        raise ShapeError("the base table must be a group")
    support = tuple(sorted(set(support)))
    return ProductOneMonoid(
        mul=lambda a, b: group.table[a][b],
        group_identity=group.identity,
        support=support,
        group_name=f"table({group.n})",
    )


def dihedral_mul(a: tuple, b: tuple) -> tuple:
    """Infinite dihedral group on pairs (k, e) standing for r^k * s^e with
    s*r = r^(-1)*s."""
    k, e = a
    m, f = b
    return (k + m if e == 0 else k - m, e ^ f)


def make_product_one_dihedral(support=((0, 1), (1, 0))) -> ProductOneMonoid:
    """Product-one multisets over the infinite dihedral group."""
    return ProductOneMonoid(
        mul=dihedral_mul,
        group_identity=(0, 0),
        support=tuple(sorted(set(support))),
        group_name="dihedral_infinity",
    )


def product_one_premonoid(monoid: ProductOneMonoid) -> LocalPremonoid:
    return LocalPremonoid(monoid, name=f"b:{monoid.group_name}")


# -- the naturals with the zero-versus-positive preorder ----------------------------------


class AdditiveNaturals(LocallyFiniteMonoid):
    """The additive naturals; divisors of x are exactly 0..x."""

    def __init__(self, cap: int):
        if cap < 1:
            raise CapExceededError("cap must be >= 1")
        self.cap = cap
        self.identity = 0

    def op(self, x: int, y: int) -> int:
        return x + y

    def divisors(self, x: int) -> tuple:
        return tuple(range(x + 1))

    def sample_elements(self, limit: int | None = None) -> tuple:
        hi = min(self.cap, limit) if limit else self.cap
        return tuple(range(hi + 1))

    def contains(self, x) -> bool:
        return isinstance(x, int) and x >= 0


def make_remark_premonoid(cap: int) -> LocalPremonoid:
    """The additive naturals ordered by: a below b iff a = 0 or both are
    positive.  All positive integers are mutually equivalent, so the only
    non-unit strictly above anything is blocked; the strict-lower hook (0,)
    is a certified superset of the (empty) set of non-units strictly below
    any element."""
    monoid = AdditiveNaturals(cap)
    return LocalPremonoid(
        monoid,
        order=lambda a, b: a == 0 or (a > 0 and b > 0),
        strict_lower=lambda a: (0,),
        name=f"remarkN:{cap}",
    )


# -- additive submonoids of N^2 and N ---------------------------------------------------


class PlaneSubmonoid(LocallyFiniteMonoid):
    """Additive submonoid of pairs generated by {(1, k), (k, 1) : k <= bound}.

    Divisor certificate: the monoid is commutative and cancellative, and a
    divisor of x is componentwise at most x, so the divisors are the members
    y of the componentwise box with x - y a member too.
    """

    def __init__(self, gen_bound: int):
        if gen_bound < 2:
            raise ShapeError("generator bound must be >= 2")
        self.gen_bound = gen_bound
        self.generators = tuple(
            sorted(
                {(1, k) for k in range(1, gen_bound + 1)}
                | {(k, 1) for k in range(1, gen_bound + 1)}
            )
        )
        self.identity = (0, 0)
        self._member: dict = {(0, 0): True}

    def contains(self, v) -> bool:
        got = self._member.get(v)
        if got is None:
            a, b = v
            got = False
            if a >= 0 and b >= 0:
                got = any(
                    self.contains((a - g, b - h))
                    for g, h in self.generators
                    if g <= a and h <= b
                )
            self._member[v] = got
        return got

    def op(self, x, y) -> tuple:
        return (x[0] + y[0], x[1] + y[1])

    def divisors(self, x) -> tuple:
        a, b = x
        out = []
        for i in range(a + 1):
            for j in range(b + 1):
                if self.contains((i, j)) and self.contains((a - i, b - j)):
                    out.append((i, j))
        return tuple(out)

    def sample_elements(self, limit: int | None = None) -> tuple:
        hi = 2 * self.gen_bound
        out = [v for v in itertools.product(range(hi + 1), repeat=2) if self.contains(v)]
        out.sort()
        return tuple(out[:limit]) if limit else tuple(out)


def make_n2_submonoid(gen_bound: int) -> PlaneSubmonoid:
    return PlaneSubmonoid(gen_bound)


def n2_premonoid(gen_bound: int) -> LocalPremonoid:
    return LocalPremonoid(PlaneSubmonoid(gen_bound), name=f"n2sub:{gen_bound}")


class NumericalMonoid(LocallyFiniteMonoid):
    """Additive submonoid of the naturals generated by the given integers.

    Divisor certificate: commutative and cancellative; y | x iff both y and
    x - y are members, and members dividing x are at most x.
    """

    def __init__(self, generators, cap: int = 60):
        gens = sorted(set(int(g) for g in generators))
        if not gens or gens[0] < 1:
            raise ShapeError("generators must be positive integers")
        self.generators = tuple(gens)
        self.cap = cap
        self.identity = 0
        self._member: dict = {0: True}

    def contains(self, x) -> bool:
        got = self._member.get(x)
        if got is None:
            got = x > 0 and any(g <= x and self.contains(x - g) for g in self.generators)
            self._member[x] = got
        return got

    def op(self, x: int, y: int) -> int:
        return x + y

    def divisors(self, x: int) -> tuple:
        return tuple(y for y in range(x + 1) if self.contains(y) and self.contains(x - y))

    def sample_elements(self, limit: int | None = None) -> tuple:
        hi = min(self.cap, limit) if limit else self.cap
        return tuple(x for x in range(hi + 1) if self.contains(x))


def make_numerical(generators, cap: int = 60) -> NumericalMonoid:
    return NumericalMonoid(generators, cap)


def numerical_premonoid(generators, cap: int = 60) -> LocalPremonoid:
    gens = ",".join(str(g) for g in sorted(set(generators)))
    return LocalPremonoid(NumericalMonoid(generators, cap), name=f"numerical:{gens}")
