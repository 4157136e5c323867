import time

from kch.augpoly import (augmentation_polynomial, two_variable_augpoly,
                         check_symmetries, homfly_check, unit_equal,
                         normalize_up_to_units)
from kch.braid import parse_braid
from kch.commpoly import parse_poly, exact_div
from kch.errors import DomainError

V3 = ("la", "mu", "U")
V2 = ("la", "mu")

golden_unknot = parse_poly("U - la - mu + la*mu", V3)
golden_rh = parse_poly(
    "U^3 - mu*U^2 + (-U^3 + mu*U^2 - 2mu^2*U + 2mu^2*U^2 + mu^3*U - mu^4*U)*la"
    " + (-mu^3 + mu^4)*la^2", V3)
golden_lh = parse_poly(
    "mu^3*U^2 - mu^4*U + (U^2 - mu*U^2 - 2mu^2*U + 2mu^2*U^2 - mu^3*U + mu^4)*la"
    " + (-U^2 + mu*U^2)*la^2", V3)

unknot = parse_braid("", n=1)
rh = parse_braid("1 1 1", n=2)
lh = parse_braid("-1 -1 -1", n=2)

t0 = time.time()
r_unknot = augmentation_polynomial(unknot)
print("unknot:", r_unknot.candidate.canonical_str(),
      "| match:", unit_equal(r_unknot.candidate, golden_unknot),
      "| flags:", r_unknot.flags)

r_rh = augmentation_polynomial(rh)
print("RH:", r_rh.candidate.canonical_str())
print("   match:", unit_equal(r_rh.candidate, golden_rh), "| flags:", r_rh.flags)

r_lh = augmentation_polynomial(lh)
print("LH:", r_lh.candidate.canonical_str())
print("   match:", unit_equal(r_lh.candidate, golden_lh), "| flags:", r_lh.flags)
print("3-var elapsed %.2fs" % (time.time() - t0))

g_rh = augmentation_polynomial(rh, method="groebner")
print("RH groebner agrees:", unit_equal(g_rh.candidate, r_rh.candidate))
g_un = augmentation_polynomial(unknot, method="groebner")
print("unknot groebner agrees:", unit_equal(g_un.candidate, r_unknot.candidate))

# two-variable goldens
t2_un = two_variable_augpoly(unknot)
print("2var unknot:", t2_un.candidate.canonical_str(),
      "| match:", unit_equal(t2_un.candidate, parse_poly("(la-1)*(mu-1)", V2)))
t2_rh = two_variable_augpoly(rh)
print("2var RH:", t2_rh.candidate.canonical_str(),
      "| match:", unit_equal(t2_rh.candidate,
                             parse_poly("(la-1)*(mu-1)*(la*mu^3+1)", V2)),
      "| flags:", t2_rh.flags)
t2_lh = two_variable_augpoly(lh)
print("2var LH:", t2_lh.candidate.canonical_str(),
      "| match:", unit_equal(t2_lh.candidate,
                             parse_poly("(la-1)*(mu-1)*(la+mu^3)", V2)),
      "| flags:", t2_lh.flags)

# symmetry and mirror
print("unknot symmetry:", check_symmetries(r_unknot.candidate))
print("RH symmetry+mirror:", check_symmetries(r_rh.candidate, mirror_of=r_lh.candidate))
print("LH symmetry+mirror:", check_symmetries(r_lh.candidate, mirror_of=r_rh.candidate))

# homfly checks
f_un, v_un = homfly_check(r_unknot.candidate, "1")
print("unknot f:", f_un.canonical_str(), v_un)
f_rh, v_rh = homfly_check(r_rh.candidate, "-a^-4 + a^-2*q^-2 + a^-2*q^2")
print("RH f:", f_rh.canonical_str(), v_rh)
quot = exact_div(f_rh, parse_poly("U - 1", ("U",)).with_variables(f_rh.variables))
print("RH f/(U-1):", quot.canonical_str(), "| equals 2U-U^2:",
      quot == parse_poly("2U - U^2", ("U",)).with_variables(quot.variables))
