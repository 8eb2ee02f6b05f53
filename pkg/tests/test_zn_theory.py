"""Closed-form expectations for multiplicative residues mod p^n, checked
element by element at sizes beyond the acceptance set.

Every nonzero non-unit is p^k * u for a unique k in 1..n-1 and unit u, so its
factorizations into atoms have length exactly k; zero absorbs everything from
length n on.  Atoms are the elements p * u, and there are phi(p^(n-1)) of
them, all in one mutual-divisibility class.
"""
import math

import pytest

from premonoids import LengthSet, atoms, length_set, minimal_factorization_classes
from premonoids.families import zn_premonoid

CASES = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)]


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@pytest.mark.parametrize("p,n", CASES)
def test_atom_count_formula(p, n):
    P = zn_premonoid(p**n)
    got = atoms(P, 2)
    assert len(got) == euler_phi(p ** (n - 1))
    units = P.monoid.units()
    assert set(got) == {(p * u) % (p**n) for u in units}
    # one mutual-divisibility class: every atom divides every other
    for a in got:
        for b in got:
            assert P.monoid.divides(a, b)


@pytest.mark.parametrize("p,n", CASES)
def test_per_element_length_sets(p, n):
    modulus = p**n
    P = zn_premonoid(modulus)
    units = P.monoid.units()
    for x in range(modulus):
        if x in units:
            continue
        if x == 0:
            assert length_set(P, x) == LengthSet.all_from(n)
            continue
        k = 0
        y = x
        while y % p == 0:
            y //= p
            k += 1
        assert 1 <= k <= n - 1
        assert length_set(P, x) == LengthSet.of(k), (x, k)
        classes = minimal_factorization_classes(P, x)
        assert len(classes) == 1
        vec, word = classes[0]
        assert len(word) == k
        assert P.monoid.product(word) == x
