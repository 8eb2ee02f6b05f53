"""Executable checks of the structural theorems on concrete instances.

Each check runs an independent computation of both sides of a theorem
statement and compares; a failure means an implementation bug (never a
tolerable outcome) and carries a counterexample payload.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import words as wd
from .irreducibles import (
    atoms as atoms_of,
    irreducibles as irreducibles_of,
    is_irreducible,
    quarks as quarks_of,
)
from .factorization import (
    classify,
    element_profile,
    enumerate_factorizations,
    factorization_alphabet,
    length_set,
    minimal_factorization_classes,
)
from .premonoid import Premonoid
from .preorder import divisibility_preorder, phi_preorder


@dataclass
class CheckResult:
    name: str
    applicable: bool
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "details": self.details,
        }


def _ok(name: str, **details) -> CheckResult:
    return CheckResult(name, True, True, details)


def _fail(name: str, **details) -> CheckResult:
    return CheckResult(name, True, False, details)


def _skip(name: str, why: str) -> CheckResult:
    return CheckResult(name, False, True, {"skipped": why})


def check_preorder_laws(P: Premonoid) -> CheckResult:
    name = "preorder-laws"
    rel = P.preorder
    n = rel.n
    for a in range(n):
        if not rel.leq(a, a):
            return _fail(name, reflexivity=a)
    for a in range(n):
        for b in range(n):
            if rel.leq(a, b):
                for c in range(n):
                    if rel.leq(b, c) and not rel.leq(a, c):
                        return _fail(name, transitivity=(a, b, c))
    if not rel.strict_is_acyclic():
        return _fail(name, strict_cycle=True)
    heights = P.heights()
    units = P.units()
    for x in range(n):
        for y in range(n):
            if x not in units and y not in units and rel.lt(y, x):
                if not heights[y] < heights[x]:
                    return _fail(name, height_monotonicity=(y, x))
    return _ok(name)


def check_flag_implications(P: Premonoid) -> CheckResult:
    name = "flag-implications"
    f = P.flags()
    s = P.monoid.structure_flags()
    rules = [
        ("strongly_positive->positive", not f.strongly_positive or f.positive),
        ("positive->preordered", not f.positive or f.preordered),
        ("strongly_positive->weakly_positive", not f.strongly_positive or f.weakly_positive),
        ("positive->weakly_positive", not f.positive or f.weakly_positive),
        ("strongly_preordered->preordered", not f.strongly_preordered or f.preordered),
        ("duo-conjunction", s.duo == (s.left_duo and s.right_duo)),
        ("acyclic->unit_cancellative", not s.acyclic or s.unit_cancellative),
        ("unit_cancellative->dedekind", not s.unit_cancellative or s.dedekind_finite),
        ("left_duo->dedekind", not s.left_duo or s.dedekind_finite),
        ("finite->dedekind", s.dedekind_finite),
    ]
    bad = [label for label, holds in rules if not holds]
    return _ok(name) if not bad else _fail(name, violated=bad)


def check_divisibility_premonoid_laws(P: Premonoid) -> CheckResult:
    """Laws tying the monoid structure to its divisibility premonoid: on a
    finite carrier the monoid is Dedekind-finite, so divisibility units are
    the ordinary units and weak positivity always holds; a one-sided duo law
    upgrades that to positivity, and commutativity plus unit-cancellativity
    to strong positivity."""
    name = "divisibility-premonoid-laws"
    m = P.monoid
    dp = Premonoid(m, divisibility_preorder(m))
    if dp.units() != m.units():
        return _fail(name, div_units=sorted(dp.units()), units=sorted(m.units()))
    flags = dp.flags()
    if not flags.weakly_positive:
        return _fail(name, weakly_positive=False)
    s = m.structure_flags()
    if (s.left_duo or s.right_duo) and not (flags.preordered and flags.positive):
        return _fail(name, duo_but_not_positive=flags.to_json())
    if s.commutative and s.unit_cancellative and not flags.strongly_positive:
        return _fail(name, commutative_unit_cancellative_but_not_strongly_positive=True)
    return _ok(name)


def check_weak_positivity_consequences(P: Premonoid, rng: random.Random, rounds: int = 5) -> CheckResult:
    """When the instance is weakly positive: preorder units multiply to
    preorder units, non-units absorb two-sided products, and restrictions to
    generated submonoids stay weakly positive."""
    name = "weak-positivity-consequences"
    if not P.flags().weakly_positive:
        return _skip(name, "instance is not weakly positive")
    m = P.monoid
    units = P.units()
    for u in units:
        for v in units:
            if m.table[u][v] not in units:
                return _fail(name, units_not_closed=(u, v))
    for x in range(m.n):
        if x in units:
            continue
        for a in range(m.n):
            for b in range(m.n):
                if m.table[m.table[a][x]][b] in units:
                    return _fail(name, nonunit_ideal=(a, x, b))
    for _ in range(rounds):
        seed = [y for y in range(m.n) if rng.random() < 0.4]
        view = P.restrict(m.generated_submonoid(seed))
        if not view.flags().weakly_positive:
            return _fail(name, restriction=sorted(view.to_parent))
    return _ok(name)


def check_irreducible_structure(P: Premonoid, degrees=(2, 3, 4)) -> CheckResult:
    name = "irreducible-structure"
    qs = set(quarks_of(P))
    prev_irr = prev_atoms = None
    for s in sorted(degrees):
        irs = set(irreducibles_of(P, s))
        ats = set(atoms_of(P, s))
        if not ats <= irs:
            return _fail(name, atoms_not_irreducible=(s, sorted(ats - irs)))
        if not qs <= irs:
            return _fail(name, quarks_not_irreducible=(s, sorted(qs - irs)))
        if prev_irr is not None and not irs <= prev_irr:
            return _fail(name, irreducible_monotonicity=s)
        if prev_atoms is not None and not ats <= prev_atoms:
            return _fail(name, atom_monotonicity=s)
        prev_irr, prev_atoms = irs, ats
    if P.flags().strongly_positive:
        if set(irreducibles_of(P, 2)) != set(atoms_of(P, 2)):
            return _fail(name, strongly_positive_collapse=False)
    return _ok(name)


def check_classification_diagram(P: Premonoid, report=None) -> CheckResult:
    name = "classification-diagram"
    report = report if report is not None else classify(P)
    violations = report.diagram_violations()
    if violations:
        return _fail(name, violations=list(violations), witnesses=report.witnesses)
    return _ok(name)


def check_bf_iff_ff(P: Premonoid, report=None) -> CheckResult:
    """On a finite carrier the two finiteness readings must agree: lengths
    come from the layer automaton, class counts from vector enumeration."""
    name = "bf-iff-ff"
    report = report if report is not None else classify(P)
    if report["BF-factorable"] != report["FF-factorable"]:
        return _fail(name, side="factorable", flags=dict(report.flags))
    if report["BF-atomic"] != report["FF-atomic"]:
        return _fail(name, side="atomic", flags=dict(report.flags))
    return _ok(name)


def check_abstract_bound(P: Premonoid, degrees=(2, 3)) -> CheckResult:
    """Every non-unit factors into at most s^(height-1) irreducibles of
    degree s, found by bounded layered search."""
    name = "abstract-bound"
    heights = P.heights()
    for x in P.nonunits():
        divs = set(P.divisors(x))
        for s in degrees:
            alphabet = tuple(a for a in P.divisors(x) if is_irreducible(P, a, s))
            bound = s ** (heights[x] - 1)
            cap = min(bound, P.prefix_bound(x))
            layer = {P.identity}
            found = None
            for k in range(1, cap + 1):
                layer = {P.op(p, a) for p in layer for a in alphabet} & divs
                if x in layer:
                    found = k
                    break
            if found is None:
                return _fail(name, element=x, degree=s, bound=bound)
    return _ok(name)


def _profile_signature(P, x):
    prof = element_profile(P, x)
    horizon = min(P.prefix_bound(x), 5)
    words_bounded = tuple(
        tuple(P.label(a) for a in w) for w in enumerate_factorizations(P, x, horizon)
    )
    atom_words_bounded = tuple(
        tuple(P.label(a) for a in w)
        for w in enumerate_factorizations(P, x, horizon, letters="atoms")
    )
    return {
        "irr_divs": prof.irreducible_divisors,
        "atom_divs": prof.atom_divisors,
        "lengths": prof.lengths,
        "atomic_lengths": prof.atomic_lengths,
        "minimal": prof.minimal,
        "minimal_within": prof.minimal_atomic_within,
        "minimal_literal": prof.minimal_atomic_literal,
        "words": words_bounded,
        "atom_words": atom_words_bounded,
    }


def check_localization_invariance(P: Premonoid, sample=None) -> CheckResult:
    """Factorization data of x agrees whether computed in the whole carrier,
    in the divisor-closed closure of x, or in the submonoid generated by the
    divisors of x."""
    name = "localization-invariance"
    sample = sample if sample is not None else P.nonunits()
    for x in sample:
        if P.is_unit(x):
            continue
        base = _profile_signature(P, x)
        for view_name, view in (
            ("divisor-closed", P.divisor_closed_localization(x)),
            ("germ", P.germ_localization(x)),
        ):
            lx = view.from_parent(x)
            local = _profile_signature(view, lx)
            for key in base:
                if base[key] != local[key]:
                    return _fail(
                        name,
                        element=x,
                        view=view_name,
                        field=key,
                        whole=str(base[key]),
                        localized=str(local[key]),
                    )
    return _ok(name)


def check_unit_removal(P: Premonoid, rng: random.Random, rounds: int = 10) -> CheckResult:
    """For product-closed Q and any A, the submonoid generated by Q*A*Q sits
    inside Q together with the submonoid generated by Q*(A minus Q)*Q."""
    name = "unit-removal-closure"
    m = P.monoid
    n = m.n
    for _ in range(rounds):
        seed = [x for x in range(n) if rng.random() < 0.4]
        q = m.generated_submonoid(seed)
        a = frozenset(x for x in range(n) if rng.random() < 0.5)
        qaq = m.set_product(m.set_product(q, a), q)
        lhs = m.generated_submonoid(qaq)
        rest = m.set_product(m.set_product(q, a - q), q)
        rhs = q | m.generated_submonoid(rest)
        if not lhs <= rhs:
            return _fail(name, Q=sorted(q), A=sorted(a), missing=sorted(lhs - rhs))
    return _ok(name)


def check_duo_inclusion(P: Premonoid, rng: random.Random, rounds: int = 8) -> CheckResult:
    """Left duo law: a product of principal two-sided ideals lands in the
    left ideal of any increasing subproduct."""
    name = "duo-pseudo-commutativity"
    m = P.monoid
    if not m.structure_flags().left_duo:
        return _skip(name, "instance is not left duo")
    n = m.n
    carrier = frozenset(range(n))
    for _ in range(rounds):
        k = rng.randint(1, 4)
        xs = [rng.randrange(n) for _ in range(k)]
        product_of_ideals = frozenset({m.identity})
        for x in xs:
            product_of_ideals = m.set_product(product_of_ideals, m.principal_ideal(x))
        for r in range(1, k + 1):
            import itertools as it

            for sigma in it.combinations(range(k), r):
                sub = m.product(tuple(xs[i] for i in sigma))
                left_ideal = frozenset(m.table[h][sub] for h in carrier)
                if not product_of_ideals <= left_ideal:
                    return _fail(
                        name,
                        tuple_=xs,
                        sigma=list(sigma),
                        missing=sorted(product_of_ideals - left_ideal),
                    )
    return _ok(name)


def check_restriction_units(P: Premonoid, rng: random.Random, rounds: int = 6) -> CheckResult:
    """Units of a restricted premonoid are the restricted units."""
    name = "restriction-units"
    m = P.monoid
    n = m.n
    masks = []
    for _ in range(rounds):
        seed = [x for x in range(n) if rng.random() < 0.4]
        masks.append(m.generated_submonoid(seed))
        masks.append(m.divisor_closed_closure(rng.randrange(n)))
    for mask in masks:
        view = P.restrict(mask)
        expect = {x for x in mask if x in P.units()}
        got = {view.to_parent[u] for u in view.units()}
        if got != expect:
            return _fail(name, mask=sorted(mask), got=sorted(got), expected=sorted(expect))
    return _ok(name)


def check_divisor_closed_restriction(P: Premonoid, rng: random.Random, rounds: int = 5) -> CheckResult:
    """Restriction to a divisor-closed submonoid preserves the irreducible and
    atom sets, and restricting a divisibility relation is again divisibility."""
    name = "divisor-closed-restriction"
    m = P.monoid
    for _ in range(rounds):
        x = rng.randrange(m.n)
        mask = m.divisor_closed_closure(x)
        view = P.restrict(mask)
        want_irr = {a for a in mask if a in set(irreducibles_of(P, 2))}
        got_irr = {view.to_parent[a] for a in irreducibles_of(view, 2)}
        if got_irr != want_irr:
            return _fail(name, element=x, got=sorted(got_irr), expected=sorted(want_irr))
        want_atoms = {a for a in mask if a in set(atoms_of(P, 2))}
        got_atoms = {view.to_parent[a] for a in atoms_of(view, 2)}
        if got_atoms != want_atoms:
            return _fail(name, element=x, got_atoms=sorted(got_atoms), expected=sorted(want_atoms))
        if P.preorder.kind == "divisibility":
            native = divisibility_preorder(view.monoid)
            if native.rows != view.preorder.rows:
                return _fail(name, element=x, divisibility_restriction="mismatch")
    return _ok(name)


def check_acyclic_collapse(P: Premonoid) -> CheckResult:
    """In an acyclic monoid, divisibility-irreducibles, -atoms and -quarks
    all coincide."""
    name = "acyclic-collapse"
    m = P.monoid
    if not m.structure_flags().acyclic:
        return _skip(name, "monoid is not acyclic")
    dp = Premonoid(m, divisibility_preorder(m))
    a = set(atoms_of(dp, 2))
    i = set(irreducibles_of(dp, 2))
    q = set(quarks_of(dp))
    if not (a == i == q):
        return _fail(name, atoms=sorted(a), irreducibles=sorted(i), quarks=sorted(q))
    return _ok(name)


def check_dedekind_bf_acyclic(P: Premonoid, div_report=None) -> CheckResult:
    """A finite (hence Dedekind-finite) monoid with finite divisibility length
    sets everywhere must be acyclic."""
    name = "dedekind-bf-acyclic"
    m = P.monoid
    dp = Premonoid(m, divisibility_preorder(m))
    report = div_report if div_report is not None else classify(dp)
    if report["BF-factorable"] and not m.structure_flags().acyclic:
        return _fail(name, flags=dict(report.flags))
    return _ok(name)


def check_factorable_on_finite(P: Premonoid, report=None) -> CheckResult:
    """Finite carriers always admit factorizations for every non-unit."""
    name = "factorable-on-finite"
    report = report if report is not None else classify(P)
    if not report["factorable"]:
        return _fail(name, witness=report.witnesses.get("factorable"))
    return _ok(name)


def check_strongly_positive_ff_atomic(P: Premonoid, report=None) -> CheckResult:
    name = "strongly-positive-ff-atomic"
    if not P.flags().strongly_positive:
        return _skip(name, "instance is not strongly positive")
    report = report if report is not None else classify(P)
    if not report["FF-atomic"]:
        return _fail(name, witness=report.witnesses.get("FF-atomic"))
    return _ok(name)


def check_phi_roundtrip(P: Premonoid, rng: random.Random, rounds: int = 4) -> CheckResult:
    """Generators become exactly the quarks and the irreducibles of the
    shortest-product-length pullback order, and everything they generate is a
    non-unit for it."""
    name = "phi-roundtrip"
    m = P.monoid
    candidates = [set(atoms_of(Premonoid(m, divisibility_preorder(m)), 2))]
    for _ in range(rounds):
        candidates.append(
            {x for x in range(m.n) if x != m.identity and rng.random() < 0.5}
        )
    for a in candidates:
        a = frozenset(a)
        rel, phi = phi_preorder(m, a)
        view = Premonoid(m, rel)
        reachable = {x for x in range(m.n) if phi[x] >= 1}
        if any(view.is_unit(x) for x in reachable):
            return _fail(name, A=sorted(a), unit_in_span=True)
        got_irr = set(irreducibles_of(view, 2))
        got_quarks = set(quarks_of(view))
        if got_irr != set(a) or got_quarks != set(a):
            return _fail(
                name, A=sorted(a), irreducibles=sorted(got_irr), quarks=sorted(got_quarks)
            )
    return _ok(name)


def check_shuffle_oracle(P: Premonoid, rng: random.Random, rounds: int = 300) -> CheckResult:
    """Class-multiset fast path against the literal injective-matching oracle."""
    name = "shuffle-oracle"
    n = P.monoid.n
    for _ in range(rounds):
        u = tuple(rng.randrange(n) for _ in range(rng.randint(0, 5)))
        v = tuple(rng.randrange(n) for _ in range(rng.randint(0, 5)))
        fast = wd.shuffle_leq(P, u, v)
        slow = wd.shuffle_leq_matching(P.leq, u, v)
        if fast != slow:
            return _fail(name, u=u, v=v, fast=fast, slow=slow)
        if fast and wd.shuffle_leq(P, v, u) is False and not len(u) < len(v):
            return _fail(name, strict_length=(u, v))
    return _ok(name)


def check_pullback_isomorphism(P: Premonoid, rng: random.Random, rounds: int = 4) -> CheckResult:
    """Relabeling by a monoid isomorphism maps quark/irreducible/atom sets to
    their images."""
    name = "pullback-isomorphism"
    m = P.monoid
    n = m.n
    for _ in range(rounds):
        perm = list(range(n))
        rng.shuffle(perm)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                table[perm[i]][perm[j]] = perm[m.table[i][j]]
        from .monoid import FiniteMonoid
        from .preorder import PreorderRel

        m2 = FiniteMonoid(table, perm[m.identity])
        rows = [0] * n
        for a in range(n):
            for b in range(n):
                if P.leq(a, b):
                    rows[perm[a]] |= 1 << perm[b]
        p2 = Premonoid(m2, PreorderRel(n, tuple(rows), kind="explicit"))
        for fn in (quarks_of, irreducibles_of, atoms_of):
            want = {perm[a] for a in fn(P)}
            got = set(fn(p2))
            if want != got:
                return _fail(name, function=fn.__name__, expected=sorted(want), got=sorted(got))
    return _ok(name)


def check_minimal_brute_force(P: Premonoid, max_carrier: int = 6) -> CheckResult:
    """Brute-force enumeration beyond the certified bound: same minimal
    classes, none longer than the bound."""
    import itertools as it

    name = "minimal-brute-force"
    n = P.monoid.n
    if n > max_carrier:
        return _skip(name, f"carrier {n} above brute-force limit {max_carrier}")
    for x in P.nonunits():
        alphabet = factorization_alphabet(P, x, "irreducibles")
        bound = P.prefix_bound(x)
        all_words = []
        for length in range(1, bound + 3):
            for w in it.product(alphabet, repeat=length):
                if P.monoid.product(w) == x:
                    all_words.append(w)
        minimal_words = [
            w
            for w in all_words
            if not any(
                wd.shuffle_leq_matching(P.leq, v, w)
                and not wd.shuffle_leq_matching(P.leq, w, v)
                for v in all_words
            )
        ]
        if any(len(w) > bound for w in minimal_words):
            return _fail(name, element=x, overlong=[w for w in minimal_words if len(w) > bound])
        rep = wd.class_reps(P.leq, alphabet, sort_key=P.element_sort_key)
        brute_classes = {wd.word_vector(w, rep) for w in minimal_words}
        engine = {vec for vec, _ in minimal_factorization_classes(P, x, alphabet=alphabet)}
        if brute_classes != engine:
            return _fail(
                name,
                element=x,
                brute=sorted(brute_classes),
                engine=sorted(engine),
            )
    return _ok(name)


def check_length_set_agreement(P: Premonoid, sample=None) -> CheckResult:
    """LengthSet membership against plain layer reachability, past one full
    period beyond the preperiod."""
    name = "length-set-agreement"
    sample = sample if sample is not None else P.nonunits()
    for x in sample:
        ls = length_set(P, x)
        alphabet = factorization_alphabet(P, x, "irreducibles")
        horizon = (ls.offset or len(P.divisors(x))) + 2 * (ls.period or 1) + 2
        layer = {P.identity}
        for k in range(1, horizon + 1):
            layer = {P.op(p, a) for p in layer for a in alphabet}
            if (x in layer) != (k in ls):
                return _fail(name, element=x, length=k, direct=x in layer, stored=k in ls)
    return _ok(name)


def check_higman_probe(P: Premonoid, rng: random.Random, terms: int = 60) -> CheckResult:
    """Long random word sequences over a small alphabet always contain an
    increasing embedding pair."""
    name = "higman-probe"
    n = P.monoid.n
    letters = tuple(range(min(n, 3)))
    seq = [
        tuple(rng.choice(letters) for _ in range(rng.randint(0, 6))) for _ in range(terms)
    ]
    hit = wd.erdos_rado_scan(seq, lambda a, b: a == b)
    if hit is None:
        return _fail(name, sequence_length=terms)
    return _ok(name, pair=hit[:2])


def verify_suite(P: Premonoid, seed: int = 0) -> list[CheckResult]:
    """Run every applicable check on one finite premonoid."""
    rng = random.Random(seed)
    report = classify(P)
    div_report = (
        report
        if P.preorder.kind == "divisibility"
        else classify(Premonoid(P.monoid, divisibility_preorder(P.monoid)))
    )
    results = [
        check_preorder_laws(P),
        check_flag_implications(P),
        check_divisibility_premonoid_laws(P),
        check_weak_positivity_consequences(P, rng),
        check_irreducible_structure(P),
        check_classification_diagram(P, report),
        check_bf_iff_ff(P, report),
        check_abstract_bound(P),
        check_localization_invariance(P),
        check_unit_removal(P, rng),
        check_duo_inclusion(P, rng),
        check_restriction_units(P, rng),
        check_divisor_closed_restriction(P, rng),
        check_acyclic_collapse(P),
        check_dedekind_bf_acyclic(P, div_report),
        check_factorable_on_finite(P, report),
        check_strongly_positive_ff_atomic(P, report),
        check_phi_roundtrip(P, rng),
        check_shuffle_oracle(P, rng),
        check_pullback_isomorphism(P, rng),
        check_minimal_brute_force(P),
        check_length_set_agreement(P),
        check_higman_probe(P, rng),
    ]
    return results
