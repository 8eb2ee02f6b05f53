"""Factorization enumeration, exact length sets, minimal classes, classification.

Everything here is written against the small premonoid query protocol
(``op``/``divisors``/``leq``/``is_unit``/``prefix_bound``) and is exact thanks
to two pruning facts about a factorization of x:

* every letter and every prefix product divides x, so searches may be confined
  to the divisor set of x;
* a factorization whose prefix products repeat excises to a strictly smaller
  one, so no minimal factorization is longer than ``len(divisors(x)) - 1``,
  and if any factorization exceeds that bound then factorizations of
  unbounded length exist (pump the excised segment instead of dropping it).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ShapeError
from .irreducibles import is_atom, is_irreducible
from .lengthset import LengthSet
from .words import class_reps, vector_lt, vector_total, word_vector


def factorization_alphabet(P, x, letters: str = "irreducibles", degree: int = 2) -> tuple:
    """The letters that can appear in a factorization of x: irreducible (or
    atom) divisors of x, sorted."""
    if letters == "irreducibles":
        pred = is_irreducible
    elif letters == "atoms":
        pred = is_atom
    else:
        raise ShapeError(f"unknown alphabet choice {letters!r}")
    return tuple(a for a in P.divisors(x) if pred(P, a, degree))


# -- streaming enumeration -------------------------------------------------------


def enumerate_factorizations(P, x, max_len: int, letters: str = "irreducibles", alphabet=None):
    """All alphabet-words of length 1..max_len with product x, in (length,
    lexicographic) order.

    The unit targets of well-behaved instances yield nothing: a nonempty
    product of irreducibles cannot be a preorder unit when non-units form an
    ideal, and the empty word is excluded by contract.
    """
    if alphabet is None:
        alphabet = factorization_alphabet(P, x, letters)
    alphabet = tuple(sorted(alphabet, key=P.element_sort_key))
    if not alphabet or max_len < 1:
        return
    allowed = frozenset(P.divisors(x))
    # finish[j] = prefix products that can reach x in exactly j more letters
    finish = [frozenset({x})]
    for _ in range(max_len):
        prev = finish[-1]
        finish.append(
            frozenset(p for p in allowed if any(P.op(p, a) in prev for a in alphabet))
        )
    identity = P.identity

    def dfs(prefix_product, word, remaining):
        if remaining == 0:
            if prefix_product == x:
                yield tuple(word)
            return
        for a in alphabet:
            q = P.op(prefix_product, a)
            if q in allowed and q in finish[remaining - 1]:
                word.append(a)
                yield from dfs(q, word, remaining - 1)
                word.pop()

    for length in range(1, max_len + 1):
        if identity in finish[length]:
            yield from dfs(identity, [], length)


# -- exact length sets -------------------------------------------------------------


def length_set(P, x, letters: str = "irreducibles", alphabet=None) -> LengthSet:
    """Exact set of word lengths over the alphabet with product x.

    Iterates the layer map S_{k+1} = (S_k * alphabet) restricted to divisors
    of x; the layer sequence over a finite domain is eventually periodic, so
    hashing layers gives the exact preperiod and period.
    """
    if alphabet is None:
        alphabet = factorization_alphabet(P, x, letters)
    allowed = frozenset(P.divisors(x))
    alphabet = tuple(a for a in alphabet if a in allowed)
    if not alphabet:
        return LengthSet.empty()
    seen: dict[frozenset, int] = {}
    layers: list[frozenset] = [frozenset()]  # 1-indexed
    state = frozenset(alphabet)
    k = 1
    while state not in seen:
        seen[state] = k
        layers.append(state)
        state = frozenset(P.op(p, a) for p in state for a in alphabet) & allowed
        k += 1
    first = seen[state]
    period = k - first
    finite = [j for j in range(1, first) if x in layers[j]]
    residues = [r for r in range(period) if x in layers[first + r]]
    return LengthSet.make(finite, offset=first, period=period, residues=residues)


def layer_automaton(P, x, letters: str = "irreducibles", alphabet=None):
    """The layer-subset sequence with its (preperiod, period); for DOT export
    and diagnostics."""
    if alphabet is None:
        alphabet = factorization_alphabet(P, x, letters)
    allowed = frozenset(P.divisors(x))
    alphabet = tuple(a for a in alphabet if a in allowed)
    seen: dict[frozenset, int] = {}
    layers: list[frozenset] = []
    state = frozenset(alphabet)
    k = 0
    if not alphabet:
        return [], 0, 1
    while state not in seen:
        seen[state] = k
        layers.append(state)
        state = frozenset(P.op(p, a) for p in state for a in alphabet) & allowed
        k += 1
    first = seen[state]
    return layers, first, k - first


def layer_automaton_dot(P, x, letters: str = "irreducibles") -> str:
    layers, first, period = layer_automaton(P, x, letters)
    lines = ["digraph layers {", "  rankdir=LR;"]
    fmt = lambda s: "{" + ",".join(str(P.label(e)) for e in sorted(s)) + "}"
    for i, s in enumerate(layers):
        shape = "doublecircle" if x in s else "circle"
        lines.append(f'  s{i} [label="L{i + 1}={fmt(s)}", shape={shape}];')
    for i in range(len(layers) - 1):
        lines.append(f"  s{i} -> s{i + 1};")
    if layers:
        lines.append(f"  s{len(layers) - 1} -> s{first} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)


# -- class-vector reachability -------------------------------------------------------


def _vector_levels(P, x, alphabet, max_level: int, rep=None):
    """levels[k] (1-indexed) maps each realizable class vector of total k to
    the set of products of words with that vector, all pruned to divisors of x."""
    if rep is None:
        rep = class_reps(P.leq, alphabet, sort_key=P.element_sort_key)
    allowed = frozenset(P.divisors(x))
    levels = [{(): frozenset({P.identity})}]
    for _ in range(max_level):
        current = levels[-1]
        nxt: dict = {}
        for vec, prods in current.items():
            for a in alphabet:
                extended = frozenset(P.op(p, a) for p in prods) & allowed
                if not extended:
                    continue
                key = _vector_add(vec, rep[a])
                got = nxt.get(key)
                nxt[key] = extended if got is None else got | extended
        levels.append(nxt)
    return levels


def _vector_add(vec: tuple, cls) -> tuple:
    d = dict(vec)
    d[cls] = d.get(cls, 0) + 1
    return tuple(sorted(d.items()))


def realizable_vectors(P, x, letters: str = "irreducibles", alphabet=None):
    """Exact census of the class vectors realized by factorizations of x.

    Returns (vectors, infinite): when ``infinite`` is True some factorization
    is longer than the distinct-prefix bound, so pumping gives infinitely many
    vectors and ``vectors`` only lists those of total at most the bound.
    """
    if alphabet is None:
        alphabet = factorization_alphabet(P, x, letters)
    alphabet = tuple(a for a in alphabet if a in set(P.divisors(x)))
    if not alphabet:
        return (), False
    bound = P.prefix_bound(x)
    # a factorization longer than the bound exists iff one exists with length
    # in (bound, 2*bound + 1]: repeatedly excising a repeated-prefix segment
    # (of length at most bound + 1) from any long factorization must at some
    # point step from above the bound to at most it
    levels = _vector_levels(P, x, alphabet, 2 * bound + 1)
    realized = set()
    infinite = False
    for k in range(1, len(levels)):
        for vec, prods in levels[k].items():
            if x in prods:
                if k > bound:
                    infinite = True
                else:
                    realized.add(vec)
    return tuple(sorted(realized)), infinite


def minimal_factorization_classes(P, x, letters: str = "irreducibles", alphabet=None):
    """All minimal factorization classes of x: class vectors minimal under
    sub-multiset order among realizable ones, each with its lexicographically
    least representative word.

    Complete by the distinct-prefix bound: any longer factorization excises to
    a strictly smaller one, so every minimal vector has total within the
    bound, and so does any witness of non-minimality.
    """
    if alphabet is None:
        alphabet = factorization_alphabet(P, x, letters)
    alphabet = tuple(sorted((a for a in alphabet if a in set(P.divisors(x))), key=P.element_sort_key))
    if not alphabet:
        return ()
    rep = class_reps(P.leq, alphabet, sort_key=P.element_sort_key)
    bound = P.prefix_bound(x)
    levels = _vector_levels(P, x, alphabet, bound, rep=rep)
    realized = {
        vec
        for k in range(1, len(levels))
        for vec, prods in levels[k].items()
        if x in prods
    }
    minima = sorted(
        (vec for vec in realized if not any(vector_lt(w, vec) for w in realized)),
        key=lambda v: (vector_total(v), v),
    )
    return tuple((vec, _witness_word(P, x, alphabet, rep, vec)) for vec in minima)


def _witness_word(P, x, alphabet, rep, vec) -> tuple:
    """Lexicographically least word over the alphabet with the given class
    vector and product x."""
    remaining = dict(vec)
    dead: set = set()

    def dfs(p, rem_key, rem):
        if not rem:
            return () if p == x else None
        if (p, rem_key) in dead:
            return None
        for a in alphabet:
            c = rep[a]
            if rem.get(c, 0) > 0:
                rem[c] -= 1
                if rem[c] == 0:
                    del rem[c]
                tail = dfs(P.op(p, a), tuple(sorted(rem.items())), rem)
                rem[c] = rem.get(c, 0) + 1
                if tail is not None:
                    return (a,) + tail
        dead.add((p, rem_key))
        return None

    word = dfs(P.identity, tuple(sorted(remaining.items())), remaining)
    if word is None:
        raise AssertionError("vector marked realizable but no witness found")
    return word


# -- per-element profile and whole-instance classification ----------------------------


@dataclass
class ElementProfile:
    """Exact factorization data of one element."""

    element: object
    irreducible_divisors: tuple
    atom_divisors: tuple
    lengths: LengthSet
    atomic_lengths: LengthSet
    class_count: int | None  # None = infinitely many
    atomic_class_count: int | None
    minimal: tuple  # ((vector, word), ...)
    minimal_atomic_within: tuple
    minimal_atomic_literal: tuple

    def minimal_lengths(self) -> tuple:
        return tuple(sorted({vector_total(v) for v, _ in self.minimal}))

    def minimal_atomic_within_lengths(self) -> tuple:
        return tuple(sorted({vector_total(v) for v, _ in self.minimal_atomic_within}))

    def minimal_atomic_literal_lengths(self) -> tuple:
        return tuple(sorted({vector_total(v) for v, _ in self.minimal_atomic_literal}))

    def to_json(self) -> dict:
        return {
            "element": self.element,
            "irreducible_divisors": list(self.irreducible_divisors),
            "atom_divisors": list(self.atom_divisors),
            "lengths": self.lengths.to_json(),
            "atomic_lengths": self.atomic_lengths.to_json(),
            "class_count": self.class_count,
            "atomic_class_count": self.atomic_class_count,
            "minimal": [[list(map(list, v)), list(w)] for v, w in self.minimal],
            "minimal_atomic_within": [
                [list(map(list, v)), list(w)] for v, w in self.minimal_atomic_within
            ],
            "minimal_atomic_literal": [
                [list(map(list, v)), list(w)] for v, w in self.minimal_atomic_literal
            ],
        }


def element_profile(P, x) -> ElementProfile:
    irr_alpha = factorization_alphabet(P, x, "irreducibles")
    atom_alpha = tuple(a for a in irr_alpha if is_atom(P, a))
    lengths = length_set(P, x, alphabet=irr_alpha)
    atomic_lengths = length_set(P, x, alphabet=atom_alpha)

    vectors, infinite = realizable_vectors(P, x, alphabet=irr_alpha)
    class_count = None if infinite else len(vectors)
    avectors, ainfinite = realizable_vectors(P, x, alphabet=atom_alpha)
    atomic_class_count = None if ainfinite else len(avectors)

    minimal = minimal_factorization_classes(P, x, alphabet=irr_alpha)
    minimal_within = minimal_factorization_classes(P, x, alphabet=atom_alpha)

    # literal reading of minimal atomic classes: minimal among all
    # irreducible factorizations, then intersect with atom words
    literal = []
    if minimal and atom_alpha:
        rep = class_reps(P.leq, irr_alpha, sort_key=P.element_sort_key)
        bound = P.prefix_bound(x)
        alevels = _vector_levels(P, x, atom_alpha, bound, rep=rep)
        atom_realizable = {
            vec
            for k in range(1, len(alevels))
            for vec, prods in alevels[k].items()
            if x in prods
        }
        for vec, _ in minimal:
            if vec in atom_realizable:
                literal.append(
                    (vec, _witness_word(P, x, tuple(sorted(atom_alpha, key=P.element_sort_key)), rep, vec))
                )
    return ElementProfile(
        element=P.label(x),
        irreducible_divisors=tuple(P.label(a) for a in irr_alpha),
        atom_divisors=tuple(P.label(a) for a in atom_alpha),
        lengths=lengths,
        atomic_lengths=atomic_lengths,
        class_count=class_count,
        atomic_class_count=atomic_class_count,
        minimal=_map_classes(P, minimal),
        minimal_atomic_within=_map_classes(P, minimal_within),
        minimal_atomic_literal=_map_classes(P, literal),
    )


def _map_classes(P, classes) -> tuple:
    """Rewrite vectors and witness words into stable cross-view labels."""
    out = []
    for vec, word in classes:
        mapped_vec = tuple(sorted((P.label(c), m) for c, m in vec))
        out.append((mapped_vec, tuple(P.label(a) for a in word)))
    return tuple(out)


FLAG_NAMES = (
    "factorable",
    "atomic",
    "BF-factorable",
    "FF-factorable",
    "HF-factorable",
    "UF-factorable",
    "BmF-factorable",
    "FmF-factorable",
    "HmF-factorable",
    "UmF-factorable",
    "BF-atomic",
    "FF-atomic",
    "HF-atomic",
    "UF-atomic",
    "BmF-atomic-within",
    "FmF-atomic-within",
    "HmF-atomic-within",
    "UmF-atomic-within",
    "BmF-atomic-literal",
    "FmF-atomic-literal",
    "HmF-atomic-literal",
    "UmF-atomic-literal",
)

# implication arrows; the minimal-atomic column uses the within-Z(x;A) reading
DIAGRAM_EDGES = (
    ("UF-factorable", "FF-factorable"),
    ("UF-factorable", "HF-factorable"),
    ("UF-factorable", "UmF-factorable"),
    ("FF-factorable", "FmF-factorable"),
    ("FF-factorable", "BF-factorable"),
    ("HF-factorable", "HmF-factorable"),
    ("HF-factorable", "BF-factorable"),
    ("BF-factorable", "BmF-factorable"),
    ("UmF-factorable", "FmF-factorable"),
    ("UmF-factorable", "HmF-factorable"),
    ("FmF-factorable", "BmF-factorable"),
    ("HmF-factorable", "BmF-factorable"),
    ("BmF-factorable", "factorable"),
    ("atomic", "factorable"),
    ("UF-atomic", "FF-atomic"),
    ("UF-atomic", "HF-atomic"),
    ("UF-atomic", "UmF-atomic-within"),
    ("FF-atomic", "FmF-atomic-within"),
    ("FF-atomic", "BF-atomic"),
    ("HF-atomic", "HmF-atomic-within"),
    ("HF-atomic", "BF-atomic"),
    ("BF-atomic", "BmF-atomic-within"),
    ("UmF-atomic-within", "FmF-atomic-within"),
    ("UmF-atomic-within", "HmF-atomic-within"),
    ("FmF-atomic-within", "BmF-atomic-within"),
    ("HmF-atomic-within", "BmF-atomic-within"),
    ("BmF-atomic-within", "atomic"),
)


@dataclass
class Classification:
    scope: str
    vacuous: bool
    flags: dict
    witnesses: dict
    profiles: dict = field(default_factory=dict)

    def __getitem__(self, key: str) -> bool:
        return self.flags[key]

    def to_json(self, include_profiles: bool = False) -> dict:
        out = {
            "scope": self.scope,
            "vacuous": self.vacuous,
            "flags": dict(sorted(self.flags.items())),
            "witnesses": {k: v for k, v in sorted(self.witnesses.items())},
        }
        if include_profiles:
            out["profiles"] = {
                str(x): p.to_json() for x, p in sorted(self.profiles.items(), key=lambda kv: str(kv[0]))
            }
        return out

    def diagram_violations(self) -> tuple:
        return tuple(
            (a, b) for a, b in DIAGRAM_EDGES if self.flags[a] and not self.flags[b]
        )


def _element_flags(p: ElementProfile) -> dict:
    lengths_nonempty = not p.lengths.is_empty
    atomic_nonempty = not p.atomic_lengths.is_empty
    min_lengths = p.minimal_lengths()
    min_within = p.minimal_atomic_within_lengths()
    min_literal = p.minimal_atomic_literal_lengths()
    return {
        "factorable": lengths_nonempty,
        "atomic": atomic_nonempty,
        "BF-factorable": lengths_nonempty and p.lengths.is_finite,
        "FF-factorable": p.class_count is not None and p.class_count > 0,
        "HF-factorable": p.lengths.singleton(),
        "UF-factorable": p.class_count == 1,
        "BmF-factorable": len(min_lengths) > 0,
        "FmF-factorable": len(p.minimal) > 0,
        "HmF-factorable": len(min_lengths) == 1,
        "UmF-factorable": len(p.minimal) == 1,
        "BF-atomic": atomic_nonempty and p.atomic_lengths.is_finite,
        "FF-atomic": p.atomic_class_count is not None and p.atomic_class_count > 0,
        "HF-atomic": p.atomic_lengths.singleton(),
        "UF-atomic": p.atomic_class_count == 1,
        "BmF-atomic-within": len(min_within) > 0,
        "FmF-atomic-within": len(p.minimal_atomic_within) > 0,
        "HmF-atomic-within": len(min_within) == 1,
        "UmF-atomic-within": len(p.minimal_atomic_within) == 1,
        "BmF-atomic-literal": len(min_literal) > 0,
        "FmF-atomic-literal": len(p.minimal_atomic_literal) > 0,
        "HmF-atomic-literal": len(min_literal) == 1,
        "UmF-atomic-literal": len(p.minimal_atomic_literal) == 1,
    }


def classify(P, elements=None, scope: str | None = None) -> Classification:
    """Classification over the given non-units (default: every non-unit of a
    finite carrier).  Vacuously all-true when there are none."""
    if elements is None:
        elements = P.nonunits()
        scope = scope or f"all {len(elements)} non-units (exhaustive)"
    else:
        elements = tuple(x for x in elements if not P.is_unit(x))
        scope = scope or f"{len(elements)} sampled non-units"
    flags = {name: True for name in FLAG_NAMES}
    witnesses: dict = {}
    profiles: dict = {}
    for x in elements:
        prof = element_profile(P, x)
        profiles[P.label(x)] = prof
        for name, value in _element_flags(prof).items():
            if not value and flags[name]:
                flags[name] = False
                witnesses[name] = _witness_payload(name, prof)
    return Classification(
        scope=scope,
        vacuous=not elements,
        flags=flags,
        witnesses=witnesses,
        profiles=profiles,
    )


def _witness_payload(name: str, p: ElementProfile) -> dict:
    payload = {"element": p.element}
    if "atomic" in name:
        payload["atomic_lengths"] = p.atomic_lengths.to_json()
        payload["atomic_class_count"] = p.atomic_class_count
    else:
        payload["lengths"] = p.lengths.to_json()
        payload["class_count"] = p.class_count
    if name.startswith(("BmF", "FmF", "HmF", "UmF")):
        if name.endswith("literal"):
            payload["minimal_classes"] = [list(map(list, v)) for v, _ in p.minimal_atomic_literal]
        elif name.endswith("within"):
            payload["minimal_classes"] = [list(map(list, v)) for v, _ in p.minimal_atomic_within]
        else:
            payload["minimal_classes"] = [list(map(list, v)) for v, _ in p.minimal]
    return payload
