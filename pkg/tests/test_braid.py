"""Braid words, the chord-algebra action, and the left/right action
matrices, checked against golden values and the braid relations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kch.braid import (PLAIN_RING, BraidWord, act, action_matrices,
                       parse_braid)
from kch.dga import square_root_identity_holds
from kch.errors import DomainError
from kch.ncalg import CoeffRing, NCMatrix, NCPoly, c_int


def gen(i, j, ring=PLAIN_RING):
    return NCPoly.letter(ring, ("a", i, j))


def scale(p, k):
    return p.scale(c_int(p.ring, k))


# -- parsing and word structure ----------------------------------------------


def test_parse_and_to_text_round_trip():
    b = parse_braid("1 -2 1 -2")
    assert b.n == 3
    assert b.letters == (1, -2, 1, -2)
    assert parse_braid(b.to_text(), n=b.n) == b


def test_parse_empty_defaults_to_one_strand():
    assert parse_braid("", n=1).n == 1
    assert parse_braid("") == BraidWord(1, ())
    assert parse_braid("", n=3).n == 3


def test_parse_rejects_bad_tokens():
    with pytest.raises(DomainError):
        parse_braid("1 x 2")
    with pytest.raises(DomainError):
        parse_braid("0 1")
    with pytest.raises(DomainError):
        parse_braid("3", n=2)


def test_writhe_permutation_components():
    b = parse_braid("1 1 1", n=2)
    assert b.writhe() == 3
    assert b.is_knot()
    assert b.self_linking() == 1
    hopf = parse_braid("1 1", n=2)
    assert not hopf.is_knot()
    assert hopf.components().count == 2
    assert parse_braid("", n=3).components().count == 3


def test_conjugate_and_stabilize_shapes():
    b = parse_braid("1 1 1", n=2)
    c = b.conjugated(1)
    assert c.n == 2 and len(c.letters) == 5
    s = b.stabilized(1)
    assert s.n == 3 and s.letters[-1] == 2
    s = b.stabilized(-1)
    assert s.n == 3 and s.letters[-1] == -2


# -- the action and its golden values ------------------------------------------


def test_golden_phi_sigma1_cubed_a13():
    b = parse_braid("1 1 1", n=3)
    got = act(gen(1, 3), b)
    expected = (scale(gen(2, 1) * gen(1, 3), -2)
                + gen(2, 1) * gen(1, 2) * gen(2, 1) * gen(1, 3)
                + gen(2, 3)
                - gen(2, 1) * gen(1, 2) * gen(2, 3))
    assert got == expected


def test_identity_braid_acts_trivially():
    b = BraidWord(3, ())
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert act(gen(i, j), b) == gen(i, j)


def test_inverse_round_trip_plain_and_meridian():
    for text in ("1", "-2", "1 2", "1 -2 1", "2 1 -2"):
        b = parse_braid(text, n=3)
        inverse = BraidWord(3, tuple(-k for k in reversed(b.letters)))
        for nc in (False, True):
            for (i, j) in ((1, 2), (2, 1), (1, 3), (3, 2)):
                p = gen(i, j)
                assert act(act(p, b, noncommutative=nc), inverse,
                           noncommutative=nc) == p, (text, nc, i, j)


def test_braid_relation_adjacent():
    # sigma_1 sigma_2 sigma_1 = sigma_2 sigma_1 sigma_2 in B_3
    lhs = parse_braid("1 2 1", n=3)
    rhs = parse_braid("2 1 2", n=3)
    for nc in (False, True):
        for i in range(1, 4):
            for j in range(1, 4):
                if i != j:
                    assert act(gen(i, j), lhs, noncommutative=nc) == \
                        act(gen(i, j), rhs, noncommutative=nc), (i, j, nc)


def test_braid_relation_commuting():
    lhs = parse_braid("1 3", n=4)
    rhs = parse_braid("3 1", n=4)
    for nc in (False, True):
        for (i, j) in ((1, 2), (3, 4), (1, 4), (2, 3), (4, 1)):
            assert act(gen(i, j), lhs, noncommutative=nc) == \
                act(gen(i, j), rhs, noncommutative=nc)


def test_full_twist_is_identity():
    for n in (2, 3, 4):
        word = tuple(range(1, n)) * n
        b = BraidWord(n, word)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    assert act(gen(i, j), b) == gen(i, j), (n, i, j)


# -- action matrices -------------------------------------------------------------


def test_action_matrices_identity():
    left, right = action_matrices(BraidWord(2, ()), star="high")
    eye = NCMatrix.identity(PLAIN_RING, 2)
    assert left == eye
    assert right == eye


def test_golden_action_matrices_sigma1_cubed():
    b = parse_braid("1 1 1", n=2)
    left, right = action_matrices(b, star="high")
    a12, a21 = gen(1, 2), gen(2, 1)
    one = NCPoly.from_int(PLAIN_RING, 1)
    assert left[0, 0] == scale(a21, -2) + a21 * a12 * a21
    assert left[0, 1] == one - a21 * a12
    assert left[1, 0] == one - a12 * a21
    assert left[1, 1] == a12
    assert right[0, 0] == scale(a12, -2) + a12 * a21 * a12
    assert right[0, 1] == one - a12 * a21
    assert right[1, 0] == one - a21 * a12
    assert right[1, 1] == a21


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_square_root_identity_random(data):
    n = data.draw(st.integers(2, 4))
    length = data.draw(st.integers(1, 6))
    letters = tuple(data.draw(st.sampled_from(
        [k for k in range(-(n - 1), n) if k != 0])) for _ in range(length))
    b = BraidWord(n, letters)
    algebra = data.draw(st.sampled_from(["commuted", "noncommutative"]))
    assert square_root_identity_holds(b, algebra)


def test_square_root_identity_deterministic():
    # knots under both star conventions, plus multi-component closures
    for text, n in (("1 1 1", 2), ("-1 -1 -1", 2), ("1 -2 1 -2", 3),
                    ("-1 2 2 1", 3)):
        b = parse_braid(text, n=n)
        for algebra in ("commuted", "noncommutative"):
            assert square_root_identity_holds(b, algebra), (text, algebra)
    knot = parse_braid("1 1 1", n=2)
    assert square_root_identity_holds(knot, "commuted", star="high")
    assert square_root_identity_holds(knot, "commuted", star="low0")
    for text, n in (("1 1", 2), ("", 2), ("1 2", 4)):
        link = parse_braid(text, n=n)
        assert square_root_identity_holds(link, "commuted"), text


def test_action_matrices_rejects_unknown_star():
    with pytest.raises(DomainError):
        action_matrices(parse_braid("1", n=2), star="middle")


def test_meridian_action_golden_single_crossing():
    # crossing rules in the strand algebra decorate with meridian letters
    ring = CoeffRing(("U",), (True,))
    b = parse_braid("1", n=2)
    a12 = NCPoly.letter(ring, ("a", 1, 2))
    a21 = NCPoly.letter(ring, ("a", 2, 1))
    mu1 = NCPoly.letter(ring, ("mu", 1, 1))
    mu2_inv = NCPoly.letter(ring, ("mu", 2, -1))
    assert act(a12, b, noncommutative=True) == -a21
    assert act(a21, b, noncommutative=True) == -(mu1 * a12 * mu2_inv)
