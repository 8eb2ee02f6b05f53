import random

import pytest

from premonoids import NotComputableError, is_atom, is_irreducible
from premonoids.families import (
    cyclic_group,
    make_numerical,
    make_product_one,
    make_reduced_power_N,
    make_remark_premonoid,
    power_premonoid,
)
from premonoids.localfinite import LocalPremonoid


def all_local_premonoids():
    return [
        power_premonoid(cyclic_group(2)),
        power_premonoid(cyclic_group(3)),
        LocalPremonoid(make_reduced_power_N(9)),
        LocalPremonoid(make_numerical((2, 3))),
        LocalPremonoid(make_product_one(cyclic_group(3), (1, 2))),
        make_remark_premonoid(8),
    ]


def test_rule_preorders_need_a_strict_lower_hook():
    with pytest.raises(NotComputableError):
        LocalPremonoid(make_numerical((2, 3)), order=lambda a, b: a <= b)


def test_divisor_certificates_across_families():
    for lp in all_local_premonoids():
        for x in lp.monoid.sample_elements()[:10]:
            lp.monoid.check_divisor_laws(x)


def test_identity_and_self_membership():
    for lp in all_local_premonoids():
        for x in lp.monoid.sample_elements()[:10]:
            divs = lp.divisors(x)
            assert lp.identity in divs and x in divs


def test_prefix_products_of_factorizations_divide_the_target():
    # random words over non-unit divisors: whenever the full product comes
    # back to x, every prefix must be a divisor of x
    rng = random.Random(13)
    for lp in all_local_premonoids():
        for x in lp.monoid.sample_elements()[:8]:
            divs = [d for d in lp.divisors(x) if not lp.is_unit(d)]
            if not divs:
                continue
            for _ in range(40):
                word = [rng.choice(divs) for _ in range(rng.randint(1, 3))]
                prefixes = []
                p = lp.identity
                for a in word:
                    p = lp.op(p, a)
                    prefixes.append(p)
                if p == x:
                    assert all(q in set(lp.divisors(x)) for q in prefixes)


def test_units_are_detected_locally():
    lp = LocalPremonoid(make_numerical((2, 3)))
    assert lp.is_unit(0) and not lp.is_unit(2)
    rp = make_remark_premonoid(5)
    assert rp.is_unit(0) and not rp.is_unit(1)


def test_local_divisibility_leq_matches_divisor_sets():
    lp = power_premonoid(cyclic_group(2))
    full, unit = (0, 1), (0,)
    assert lp.leq(unit, full) and not lp.leq(full, unit)
    assert lp.equiv(full, full)


def test_bounded_flags_on_divisibility_families():
    lp = LocalPremonoid(make_numerical((2, 3)))
    flags = lp.bounded_flags(lp.monoid.sample_elements(8))
    assert flags.preordered and flags.positive and flags.weakly_positive
    assert flags.strongly_positive  # commutative + cancellative + reduced
    assert flags.artinian and flags.strongly_artinian
    assert flags.method.startswith("bounded")


def test_degree_predicates_work_locally():
    lp = LocalPremonoid(make_numerical((2, 3)))
    assert is_atom(lp, 2) and is_atom(lp, 3)
    assert not is_atom(lp, 4)
    assert is_irreducible(lp, 2, 3) and not is_irreducible(lp, 6, 3)
