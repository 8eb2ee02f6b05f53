from hypothesis import given, settings
from hypothesis import strategies as st

from premonoids import LengthSet


def test_empty_and_finite():
    assert LengthSet.empty().is_empty
    ls = LengthSet.of(3, 1, 2)
    assert ls.finite == (1, 2, 3)
    assert ls.is_finite and not ls.is_empty
    assert 2 in ls and 4 not in ls
    assert ls.min() == 1


def test_cofinite_canonical_form():
    ls = LengthSet.all_from(2)
    assert ls.finite == () and ls.offset == 2 and ls.period == 1 and ls.residues == (0,)
    assert 1 not in ls and 2 in ls and 999 in ls


def test_redundant_finite_members_absorbed():
    # {2} followed by {k >= 3} with period 1 is just {k >= 2}
    ls = LengthSet.make((2,), offset=3, period=1, residues=(0,))
    assert ls == LengthSet.all_from(2)


def test_period_minimization():
    ls = LengthSet.make((), offset=1, period=4, residues=(0, 2))
    assert ls.period == 2 and ls.residues == (0,)


def test_empty_residues_collapse_to_finite():
    ls = LengthSet.make((1, 5), offset=7, period=3, residues=())
    assert ls.is_finite and ls.finite == (1, 5)


def test_finite_members_inside_regime_are_normalized():
    # explicit member 5 sits beyond the declared offset; set is unchanged
    ls = LengthSet.make((5,), offset=4, period=2, residues=(0,))
    assert 4 in ls and 5 in ls and 6 in ls and 7 not in ls
    again = LengthSet.make((4, 5, 6), offset=8, period=2, residues=(0,))
    assert again == ls


def test_json_roundtrip():
    for ls in (
        LengthSet.empty(),
        LengthSet.of(2, 9),
        LengthSet.all_from(3),
        LengthSet.make((1,), offset=4, period=3, residues=(0, 2)),
    ):
        assert LengthSet.from_json(ls.to_json()) == ls


@given(
    st.sets(st.integers(1, 12), max_size=5),
    st.integers(1, 10),
    st.integers(1, 4),
    st.data(),
)
@settings(max_examples=200, deadline=None)
def test_canonicalization_preserves_membership(finite, offset, period, data):
    residues = data.draw(st.sets(st.integers(0, period - 1), max_size=period))
    ls = LengthSet.make(finite, offset=offset, period=period, residues=residues)

    def raw_member(k: int) -> bool:
        return k in finite or (k >= offset and (k - offset) % period in residues)

    for k in range(1, offset + 3 * period + 14):
        assert (k in ls) == raw_member(k), (k, ls)


@given(
    st.sets(st.integers(1, 10), max_size=4),
    st.integers(1, 8),
    st.integers(1, 4),
    st.data(),
)
@settings(max_examples=150, deadline=None)
def test_equal_sets_get_equal_representations(finite, offset, period, data):
    residues = data.draw(st.sets(st.integers(0, period - 1), max_size=period))
    a = LengthSet.make(finite, offset=offset, period=period, residues=residues)
    # re-express with doubled period and shifted offset
    doubled = {r + i * period for r in residues for i in (0, 1)}
    b = LengthSet.make(finite, offset=offset, period=2 * period, residues=doubled)
    assert a == b
