"""Augmentation counting and enumeration over small prime fields, checked
against an exhaustive brute-force oracle and golden counts."""

import itertools

import pytest

from kch.augment import (MAX_PRIME, Augmentation, AugSystem,
                         count_augmentations, enumerate_augmentations,
                         is_augmentation, transverse_augmentation_number)
from kch.braid import parse_braid
from kch.dga import build_dga
from kch.errors import DomainError, ResourceRefused

UNKNOT = parse_braid("", n=1)
TREFOIL = parse_braid("1 1 1", n=2)
HOPF = parse_braid("1 1", n=2)


def brute_force_count(dga, p):
    """Try every assignment: units over F_p^* (or F_p when the variable is
    not invertible), chords over F_p."""
    system = AugSystem.from_dga(dga)
    names = list(system.unit_vars) + list(system.chord_vars)
    ranges = []
    for v in system.unit_vars:
        lo = 1 if dga.variable_is_invertible(v) else 0
        ranges.append(range(lo, p))
    ranges.extend(range(p) for _ in system.chord_vars)
    count = 0
    for combo in itertools.product(*ranges):
        values = dict(zip(names, combo))
        if all(eq.eval_mod(p, values) == 0 for eq in system.equations):
            count += 1
    return count


# -- golden counts -----------------------------------------------------------


@pytest.mark.parametrize("text,n,variant,p,expected", [
    ("", 1, "topological", 3, 3),
    ("", 1, "hat", 3, 1),
    ("1 1 1", 2, "topological", 3, 4),
    ("-1 -1 -1", 2, "topological", 3, 4),
    ("1 1 1", 2, "topological", 5, 15),
    ("1 1 1", 2, "transverse_U", 3, 5),
    ("1 1", 2, "topological", 3, 31),
    ("1 -2 1 -2", 3, "hat", 3, 1),
    ("1 2 1 2 1 2 1 2", 3, "topological", 3, 7),
])
def test_golden_counts(text, n, variant, p, expected):
    d = build_dga(parse_braid(text, n=n), variant, "commuted")
    assert count_augmentations(d, p) == expected


# -- backtracking vs brute force ------------------------------------------------


@pytest.mark.parametrize("text,n,variant,p", [
    ("", 1, "topological", 3),
    ("", 1, "topological", 5),
    ("1 1 1", 2, "topological", 3),
    ("1 1 1", 2, "transverse_U", 3),
    ("1 1 1", 2, "hat", 5),
    ("1 1", 2, "topological", 3),
    ("-1 -1 -1", 2, "hat", 3),
])
def test_count_matches_brute_force(text, n, variant, p):
    d = build_dga(parse_braid(text, n=n), variant, "commuted")
    assert count_augmentations(d, p) == brute_force_count(d, p)


def test_count_matches_enumeration_everywhere():
    for text, n, variant in (("", 1, "topological"), ("1 1 1", 2, "hat"),
                             ("1 1", 2, "topological")):
        d = build_dga(parse_braid(text, n=n), variant, "commuted")
        for p in (2, 3, 5):
            sols = enumerate_augmentations(d, p)
            assert count_augmentations(d, p) == len(sols)
            assert len({tuple(sorted(s.var_values.items()))
                        + tuple(sorted(s.chord_values.items()))
                        for s in sols}) == len(sols)


def test_enumerated_points_verify():
    d = build_dga(TREFOIL, "topological", "commuted")
    for eps in enumerate_augmentations(d, 3):
        assert is_augmentation(d, eps) == []


def test_commuted_and_noncommutative_counts_agree():
    for text, n in (("1 1 1", 2), ("1 1", 2)):
        c = build_dga(parse_braid(text, n=n), "topological", "commuted")
        nc = build_dga(parse_braid(text, n=n), "topological", "noncommutative")
        assert count_augmentations(c, 3) == count_augmentations(nc, 3)


def test_drop_family_does_not_change_solutions():
    d = build_dga(TREFOIL, "topological", "commuted")
    p = 3

    def count_system(system):
        names = list(system.unit_vars) + list(system.chord_vars)
        ranges = [range(1, p)] * len(system.unit_vars) + \
            [range(p)] * len(system.chord_vars)
        return sum(
            1 for combo in itertools.product(*ranges)
            if all(eq.eval_mod(p, dict(zip(names, combo))) == 0
                   for eq in system.equations))

    base = count_system(AugSystem.from_dga(d))
    for fam in ("b", "c", "d"):
        assert count_system(AugSystem.from_dga(d, drop=fam)) == base
    with pytest.raises(DomainError):
        AugSystem.from_dga(d, drop="e")


# -- explicit verification ---------------------------------------------------


def test_known_integral_augmentation_of_trefoil():
    d = build_dga(TREFOIL, "topological", "commuted")
    eps = Augmentation("Z", {"la": 1, "mu": -1, "U": 1},
                       {"a12": -2, "a21": -2})
    assert is_augmentation(d, eps) == []


def test_wrong_point_reports_residues():
    d = build_dga(TREFOIL, "topological", "commuted")
    eps = Augmentation("Z", {"la": 1, "mu": -1, "U": 1},
                       {"a12": 0, "a21": 0})
    assert is_augmentation(d, eps) != []


def test_laurent_family_on_unknot():
    from kch.rings import LAURENT_Q
    d = build_dga(UNKNOT, "topological", "commuted")
    eps = Augmentation("LaurentQ", {"la": LAURENT_Q.one(), "mu": LAURENT_Q.t(),
                                    "U": LAURENT_Q.one()}, {})
    assert is_augmentation(d, eps) == []


def test_verification_guards():
    d = build_dga(TREFOIL, "topological", "commuted")
    with pytest.raises(DomainError):
        is_augmentation(d, Augmentation("F3", {"la": 1}, {}))
    with pytest.raises(DomainError):
        is_augmentation(d, Augmentation(
            "F3", {"la": 0, "mu": 1, "U": 1}, {"a12": 0, "a21": 0}))


# -- transverse invariant ------------------------------------------------------


def test_transverse_number_goldens_and_invariance():
    assert transverse_augmentation_number(TREFOIL, 3) == 1
    conj = TREFOIL.conjugated(1)
    stab = TREFOIL.stabilized(1)
    assert transverse_augmentation_number(conj, 3) == 1
    assert transverse_augmentation_number(stab, 3) == 1
    with pytest.raises(DomainError):
        transverse_augmentation_number(HOPF, 3)


# -- resource guards -----------------------------------------------------------


def test_prime_and_cap_guards():
    d = build_dga(TREFOIL, "topological", "commuted")
    with pytest.raises(DomainError):
        count_augmentations(d, 4)
    with pytest.raises(ResourceRefused):
        count_augmentations(d, MAX_PRIME + 4)
    with pytest.raises(ResourceRefused):
        count_augmentations(d, 3, chord_cap=1)
