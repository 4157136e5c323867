"""DGA construction: generator census, differential goldens, d^2 = 0
across variants and algebra modes, and the derived operations."""

import json

import pytest

from kch.braid import parse_braid
from kch.dga import (build_dga, check_d_squared, specialize, stabilize,
                     sublink_quotient)
from kch.errors import DomainError

UNKNOT = parse_braid("", n=1)
TREFOIL = parse_braid("1 1 1", n=2)
FIG8 = parse_braid("1 -2 1 -2", n=3)
HOPF = parse_braid("1 1", n=2)


def diff_str(dga, g):
    return dga.differentials[g].canonical_str()


# -- construction -------------------------------------------------------------


def test_unknot_differential_goldens():
    d = build_dga(UNKNOT, "topological", "commuted")
    assert d.generators == ["c11", "d11", "e11", "f11"]
    assert diff_str(d, "c11") == "U - mu - la + la*mu"
    assert diff_str(d, "d11") == "-la^-1*U + la^-1*mu + 1 - mu"
    assert diff_str(d, "e11") == "(-1) c11 + (-la) d11"
    assert diff_str(d, "f11") == "(-la^-1) c11 + (-1) d11"


def test_generator_census_and_degrees():
    d = build_dga(parse_braid("1 1 1", n=3), "topological", "commuted")
    census = {}
    for g in d.generators:
        census[(g[0], d.degrees[g])] = census.get((g[0], d.degrees[g]), 0) + 1
    assert census == {("a", 0): 6, ("b", 1): 6, ("c", 1): 9,
                      ("d", 1): 9, ("e", 2): 9, ("f", 2): 9}


def test_ring_variables_per_variant():
    top = build_dga(TREFOIL, "topological", "commuted")
    assert top.ring.variables == ("la", "mu", "U")
    assert top.ring.invertible == (True, True, True)
    tu = build_dga(TREFOIL, "transverse_U", "commuted")
    assert tu.ring.invertible == (True, True, False)
    link = build_dga(HOPF, "topological", "commuted")
    assert link.ring.variables == ("la1", "la2", "mu1", "mu2", "U")


def test_mode_validation():
    with pytest.raises(DomainError):
        build_dga(TREFOIL, "nope", "commuted")
    with pytest.raises(DomainError):
        build_dga(TREFOIL, "topological", "weird")
    with pytest.raises(DomainError):
        build_dga(TREFOIL, "topological", "commuted", star="middle")
    with pytest.raises(DomainError):
        build_dga(TREFOIL, "topological", "noncommutative", star="high")
    with pytest.raises(DomainError):
        build_dga(HOPF, "transverse_UV", "commuted")


# -- the differential squares to zero ------------------------------------------


D2_KNOTS = [TREFOIL, parse_braid("-1 -1 -1", n=2)]
D2_VARIANTS = ["topological", "transverse_U", "transverse_UV", "hat"]


@pytest.mark.parametrize("variant", D2_VARIANTS)
@pytest.mark.parametrize("algebra", ["commuted", "noncommutative"])
def test_d_squared_zero_knots(variant, algebra):
    for braid in D2_KNOTS:
        d = build_dga(braid, variant, algebra)
        assert check_d_squared(d) is None, (braid.letters, variant, algebra)


@pytest.mark.parametrize("variant", ["topological", "transverse_U", "hat"])
def test_d_squared_zero_links(variant):
    for braid, n in (("1 1", 2), ("", 2)):
        for algebra in ("commuted", "noncommutative"):
            d = build_dga(parse_braid(braid, n=n), variant, algebra)
            assert check_d_squared(d) is None, (braid, variant, algebra)


def test_d_squared_zero_wider_braid():
    d = build_dga(FIG8, "topological", "commuted")
    assert check_d_squared(d) is None
    d = build_dga(FIG8, "transverse_UV", "commuted")
    assert check_d_squared(d) is None


def test_hat_is_transverse_at_u_zero():
    for braid in (UNKNOT, TREFOIL):
        hat = build_dga(braid, "hat", "commuted")
        sp = specialize(build_dga(braid, "transverse_U", "commuted"), {"U": 0})
        assert hat.generators == sp.generators
        for g in hat.generators:
            assert hat.differentials[g] == sp.differentials[g]
        assert hat.mode.variant == "hat"


# -- specialize ---------------------------------------------------------------


def test_specialize_binds_and_drops_variables():
    d = build_dga(UNKNOT, "topological", "commuted")
    s = specialize(d, {"la": -1})
    assert s.ring.variables == ("mu", "U")
    assert check_d_squared(s) is None


def test_specialize_guards():
    d = build_dga(UNKNOT, "topological", "commuted")
    with pytest.raises(DomainError):
        specialize(d, {"la": 0})  # la occurs with a negative exponent
    with pytest.raises(DomainError):
        specialize(d, {"q": 1})


def test_specialize_empty_is_copy():
    d = build_dga(TREFOIL, "topological", "commuted")
    s = specialize(d, {})
    assert s.generators == d.generators
    assert all(s.differentials[g] == d.differentials[g] for g in d.generators)
    assert s.differentials is not d.differentials


# -- stabilize ----------------------------------------------------------------


def test_stabilize_adds_cancelling_pair():
    d = build_dga(TREFOIL, "topological", "commuted")
    s = stabilize(d, 2)
    assert s.generators[-2:] == ["e1_0", "e2_0"]
    assert s.degrees["e1_0"] == 2 and s.degrees["e2_0"] == 1
    assert s.differentials["e1_0"].canonical_str() == "e2_0"
    assert s.differentials["e2_0"].is_zero()
    assert check_d_squared(s) is None
    s2 = stabilize(s, 1)
    assert s2.generators[-2:] == ["e1_1", "e2_1"]
    with pytest.raises(DomainError):
        stabilize(d, 0)


# -- sublink quotient -----------------------------------------------------------


def test_sublink_quotient_hopf_component():
    hopf = build_dga(HOPF, "topological", "commuted")
    q = sublink_quotient(hopf, [1])
    assert q.generators == ["c11", "d11", "e11", "f11"]
    assert check_d_squared(q) is None
    with pytest.raises(DomainError):
        sublink_quotient(hopf, [])
    with pytest.raises(DomainError):
        sublink_quotient(hopf, [5])


def test_sublink_quotient_full_set_is_identity():
    hopf = build_dga(HOPF, "topological", "commuted")
    q = sublink_quotient(hopf, [1, 2])
    assert q.generators == hopf.generators
    assert all(q.differentials[g] == hopf.differentials[g] for g in q.generators)


# -- serialization ----------------------------------------------------------


def test_to_json_shape():
    d = build_dga(TREFOIL, "topological", "commuted")
    blob = json.loads(d.to_json())
    assert blob["braid"] == {"n": 2, "letters": [1, 1, 1]}
    assert blob["mode"]["variant"] == "topological"
    assert len(blob["generators"]) == len(d.generators)
    by_name = {g["name"]: g for g in blob["generators"]}
    assert by_name["c11"]["degree"] == 1
