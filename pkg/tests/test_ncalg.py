"""Free-algebra layer: word normalization, arithmetic, canonical strings,
the signed Leibniz derivation, and evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kch.braid import PLAIN_RING
from kch.errors import DomainError
from kch.ncalg import (CoeffRing, NCPoly, c_int, c_monomial, derive,
                       evaluate, letter_degree, letter_str, normalize_word)

RING = CoeffRing(("la", "mu", "U"), (True, True, True))


def gen(kind, i, j):
    return NCPoly.letter(RING, (kind, i, j))


def mono(k, **exps):
    return NCPoly.constant(RING, c_monomial(RING, k, **exps))


# -- words ----------------------------------------------------------------


def test_homology_letters_sort_and_merge():
    w = normalize_word((("mu", 2, 1), ("la", 1, 1), ("mu", 2, -1)))
    assert w == (("la", 1, 1),)
    w = normalize_word((("mu", 1, 1), ("a", 1, 2), ("mu", 1, 1)))
    assert w == (("mu", 1, 1), ("a", 1, 2), ("mu", 1, 1))


def test_chords_block_homology_commutation():
    left = normalize_word((("mu", 1, 1), ("a", 1, 2)))
    right = normalize_word((("a", 1, 2), ("mu", 1, 1)))
    assert left != right


def test_zero_exponent_vanishes():
    assert normalize_word((("la", 1, 2), ("la", 1, -2))) == ()


def test_letter_str_forms():
    assert letter_str(("a", 1, 2)) == "a12"
    assert letter_str(("a", 1, 12)) == "a[1,12]"
    assert letter_str(("mu", 1, -2)) == "mu1^-2"
    assert letter_str(("e1", 0, 3)) == "e1_0"


def test_letter_degrees():
    assert letter_degree(("a", 1, 2)) == 0
    assert letter_degree(("b", 1, 2)) == 1
    assert letter_degree(("c", 1, 1)) == 1
    assert letter_degree(("d", 2, 2)) == 1
    assert letter_degree(("e", 1, 1)) == 2
    assert letter_degree(("f", 1, 1)) == 2
    assert letter_degree(("mu", 1, 5)) == 0


# -- polynomial arithmetic --------------------------------------------------


LETTERS = [("a", 1, 2), ("a", 2, 1), ("b", 1, 1), ("mu", 1, 1), ("la", 1, -1)]


@st.composite
def nc_polys(draw):
    n_terms = draw(st.integers(0, 4))
    p = NCPoly.zero(RING)
    for _ in range(n_terms):
        word = tuple(draw(st.sampled_from(LETTERS))
                     for _ in range(draw(st.integers(0, 3))))
        coeff = draw(st.integers(-3, 3))
        if coeff:
            p = p + NCPoly.monomial(RING, word, c_int(RING, coeff))
    return p


@settings(max_examples=60, deadline=None)
@given(nc_polys(), nc_polys(), nc_polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p + NCPoly.zero(RING) == p
    assert p * NCPoly.from_int(RING, 1) == p


def test_noncommutativity_witness():
    a12, a21 = gen("a", 1, 2), gen("a", 2, 1)
    assert a12 * a21 != a21 * a12


def test_canonical_str():
    p = mono(1, U=1) - mono(1, mu=1) - mono(1, la=1) + mono(1, la=1, mu=1)
    assert p.canonical_str() == "U - mu - la + la*mu"
    q = gen("c", 1, 1).scale(c_int(RING, -1)) + \
        gen("d", 1, 1).scale(c_monomial(RING, -1, la=1))
    assert q.canonical_str() == "(-1) c11 + (-la) d11"
    assert NCPoly.zero(RING).canonical_str() == "0"


def test_golden_distributivity_with_coefficient():
    # (mu a12 + a23) * a13 = mu a12 a13 + a23 a13
    mu_a12 = gen("a", 1, 2).scale(c_monomial(RING, 1, mu=1))
    lhs = (mu_a12 + gen("a", 2, 3)) * gen("a", 1, 3)
    rhs = (gen("a", 1, 2) * gen("a", 1, 3)).scale(c_monomial(RING, 1, mu=1)) \
        + gen("a", 2, 3) * gen("a", 1, 3)
    assert lhs == rhs


# -- derivation --------------------------------------------------------------


def test_signed_leibniz():
    b11, c11 = gen("b", 1, 1), gen("c", 1, 1)
    a12 = gen("a", 1, 2)
    images = {("b", 1, 1): a12, ("c", 1, 1): a12}
    # d(b c) = (db) c - b (dc) since |b| = 1
    assert derive(b11 * c11, images) == a12 * c11 - b11 * a12
    # d(a b) = a (db) since |a| = 0 and a is not in the image map
    assert derive(a12 * b11, {("b", 1, 1): c11}) == a12 * c11


def test_derive_coefficients_are_constants():
    b11 = gen("b", 1, 1)
    p = b11.scale(c_monomial(RING, 2, la=1))
    out = derive(p, {("b", 1, 1): gen("a", 1, 2)})
    assert out == gen("a", 1, 2).scale(c_monomial(RING, 2, la=1))


# -- evaluation --------------------------------------------------------------


def test_evaluate_over_prime_field():
    from kch.rings import PrimeField

    p = gen("a", 1, 2) * gen("a", 2, 1) + mono(1, mu=1)
    got = evaluate(p, {"la": 1, "mu": 2, "U": 1},
                   {("a", 1, 2): 2, ("a", 2, 1): 2}, PrimeField(5))
    assert got == (2 * 2 + 2) % 5


def test_evaluate_requires_chord_values():
    from kch.rings import ZZ

    p = gen("a", 1, 2)
    with pytest.raises(KeyError):
        evaluate(p, {"la": 1, "mu": 1, "U": 1}, {}, ZZ)


def test_plain_ring_has_no_variables():
    assert PLAIN_RING.variables == ()
