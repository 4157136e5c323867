"""Augmentation polynomials via elimination, and their consistency checks.

The degree-0 equations of a braid's DGA cut out the augmentation variety;
eliminating the chord variables projects it to the unit parameters
(la, mu, U).  Two eliminators are provided: a resultant chain and a
lexicographic Groebner basis.  Candidates are normalized up to unit
monomials and sign, and cross-checked against finite-field augmentation
points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .augment import AugSystem, enumerate_augmentations
from .braid import BraidWord
from .commpoly import (CommPoly, abelianize, exact_div, from_sympy, parse_poly,
                       sylvester_resultant, to_sympy)
from .dga import build_dga, specialize
from .errors import DomainError, ResourceRefused

DEFAULT_ELIM_CAP = 4
UNIT_VARS = ("la", "mu", "U")

resultant = sylvester_resultant


@dataclass
class EliminationFlags:
    squarefree_applied: bool = False
    content_removed: bool = False
    trivial_factors_removed: bool = False
    removed_factors: list[str] = field(default_factory=list)
    uncertified_factors: list[str] = field(default_factory=list)
    point_filter_primes: list[int] = field(default_factory=list)


@dataclass
class EliminationResult:
    candidate: CommPoly
    method: str
    certificate: list[str]
    flags: EliminationFlags


# -- normalization -----------------------------------------------------------


def normalize_up_to_units(p: CommPoly) -> CommPoly:
    """Clear Laurent exponents, strip the monomial gcd and content, and fix
    the sign so that unit-equivalent polynomials become equal."""
    p, _ = p.strip_monomial()
    if p.is_zero():
        return p
    return p.primitive().sign_normalized()


def unit_equal(p: CommPoly, q: CommPoly) -> bool:
    return normalize_up_to_units(p) == normalize_up_to_units(q)


def _sympy_factors(p: CommPoly) -> list[CommPoly]:
    import sympy

    expr = to_sympy(p)
    _, pairs = sympy.factor_list(expr)
    out = []
    for f, _mult in pairs:
        out.append(normalize_up_to_units(from_sympy(f, p.variables)))
    return [f for f in out if not f.is_const()]


def _squarefree(p: CommPoly) -> tuple[CommPoly, bool]:
    factors = _sympy_factors(p)
    if not factors:
        return p, False
    prod = CommPoly.const(p.variables, 1)
    for f in factors:
        prod = prod * f
    prod = normalize_up_to_units(prod)
    return prod, not unit_equal(prod, p)


def gcd_polys(polys: list[CommPoly], variables: tuple[str, ...]) -> CommPoly:
    import sympy

    exprs = [to_sympy(p.with_variables(variables)) for p in polys]
    g = exprs[0]
    for e in exprs[1:]:
        g = sympy.gcd(g, e)
    return from_sympy(g, variables)


# -- derivative and monomial substitutions ------------------------------------


def derivative(p: CommPoly, name: str) -> CommPoly:
    i = p.variables.index(name)
    out = {}
    for e, c in p.terms.items():
        if e[i] == 0:
            continue
        ne = list(e)
        ne[i] -= 1
        key = tuple(ne)
        out[key] = out.get(key, 0) + c * e[i]
    return CommPoly(p.variables, out)


def monomial_substitute(p: CommPoly, images: dict[str, dict[str, int]]) -> CommPoly:
    """Substitute variables by unit monomials (exponent-linear transform)."""
    idx = {v: i for i, v in enumerate(p.variables)}
    out: dict[tuple, object] = {}
    for e, c in p.terms.items():
        ne = [0] * len(p.variables)
        for v, x in zip(p.variables, e):
            if x == 0:
                continue
            img = images.get(v, {v: 1})
            for w, k in img.items():
                ne[idx[w]] += k * x
        key = tuple(ne)
        out[key] = out.get(key, 0) + c
    return CommPoly(p.variables, out)


# -- elimination ---------------------------------------------------------------


def _chord_order(system: AugSystem) -> list[str]:
    # decreasing membership count, already the AugSystem chord order
    return list(system.chord_vars)


def _prepare_equations(system: AugSystem, bind_u: bool) -> list[CommPoly]:
    eqs = []
    for eq in system.equations:
        if bind_u and "U" in eq.variables:
            eq = eq.substitute({"U": 1})
        eq, _ = eq.clear_laurent()
        eq = eq.clear_denominators()
        if not eq.is_zero():
            eqs.append(eq)
    return eqs


def _resultant_chain(eqs: list[CommPoly], order: list[str]) -> list[CommPoly]:
    polys = list(eqs)
    for x in order:
        with_x = [p for p in polys if p.degree(x) > 0]
        without = [p for p in polys if p.degree(x) <= 0]
        if not with_x:
            polys = without
            continue
        if len(with_x) == 1:
            # x is unconstrained except by one equation: the projection
            # drops it (any value of the remaining variables lifts unless
            # the leading coefficient and all others vanish; that locus is
            # lower-dimensional and absorbed by the closure).
            polys = without
            continue
        pivot = min(with_x, key=lambda p: (p.degree(x), len(p.terms)))
        new = []
        for q in with_x:
            if q is pivot:
                continue
            r = sylvester_resultant(pivot, q, x)
            if not r.is_zero():
                new.append(r.primitive())
        polys = without + new
    return polys


def groebner_lex(ideal: list[CommPoly], elim_vars: list[str],
                 var_cap: int = 16) -> list[CommPoly]:
    """Generators of the elimination ideal, chords eliminated first.

    Lexicographic order with elim_vars highest; returns the basis elements
    free of the eliminated variables.
    """
    import sympy

    all_vars: list[str] = []
    for p in ideal:
        for v in p.variables:
            if v not in all_vars:
                all_vars.append(v)
    if len(all_vars) > var_cap:
        raise ResourceRefused(
            f"groebner elimination over {len(all_vars)} variables exceeds "
            f"the cap {var_cap}")
    keep = [v for v in all_vars if v not in elim_vars]
    ordered = [v for v in elim_vars if v in all_vars] + keep
    syms = sympy.symbols(ordered)
    if isinstance(syms, sympy.Symbol):
        syms = (syms,)
    exprs = [to_sympy(p.with_variables(tuple(ordered))) for p in ideal
             if not p.is_zero()]
    if not exprs:
        return []
    basis = sympy.groebner(exprs, *syms, order="lex")
    elim_syms = set(syms[:len([v for v in elim_vars if v in all_vars])])
    out = []
    for expr in basis.exprs:
        if expr.free_symbols & elim_syms:
            continue
        out.append(from_sympy(expr, tuple(keep)))
    return out


def _candidate_from_finals(finals: list[CommPoly],
                           variables: tuple[str, ...]) -> CommPoly:
    finals = [p for p in finals if not p.is_zero()]
    if not finals:
        raise DomainError(
            "the elimination ideal is zero: the augmentation variety "
            "projects onto a two-dimensional set, so no polynomial exists")
    g = gcd_polys(finals, variables)
    if g.is_const() or normalize_up_to_units(g).is_const():
        raise DomainError(
            "the projected augmentation variety has codimension at least 2; "
            "no defining polynomial exists")
    return g


def _point_filter(candidate: CommPoly, points_by_prime: dict[int, list[dict]],
                  flags: EliminationFlags) -> CommPoly:
    """Drop factors that no finite-field augmentation point certifies.

    A factor is kept if some point vanishes on it but on no other factor
    (certified), or if the evidence is ambiguous (kept and flagged); it is
    removed only when, in every tested field, it vanishes at no point at
    all while the remaining factors cover everything.
    """
    factors = _sympy_factors(candidate)
    if len(factors) <= 1:
        return candidate
    keep = []
    for i, f in enumerate(factors):
        others = [g for j, g in enumerate(factors) if j != i]
        certified = False
        vanishes_somewhere = False
        for p, pts in points_by_prime.items():
            for pt in pts:
                vals = {v: pt.get(v, 1) for v in f.variables}
                if f.eval_mod(p, vals) == 0:
                    vanishes_somewhere = True
                    if all(g.eval_mod(p, {v: pt.get(v, 1)
                                          for v in g.variables}) != 0
                           for g in others):
                        certified = True
                        break
            if certified:
                break
        if certified:
            keep.append(f)
        elif not vanishes_somewhere and any(points_by_prime.values()):
            flags.removed_factors.append(f.canonical_str())
        else:
            keep.append(f)
            flags.uncertified_factors.append(f.canonical_str())
    if not keep:
        # never empty the candidate: keep everything, flag it all
        flags.removed_factors.clear()
        flags.uncertified_factors = [f.canonical_str() for f in factors]
        keep = factors
    out = CommPoly.const(candidate.variables, 1)
    for f in keep:
        out = out * f
    flags.trivial_factors_removed = flags.trivial_factors_removed or \
        len(keep) < len(factors)
    return normalize_up_to_units(out)


def _eliminate(braid: BraidWord, bind_u: bool, method: str,
               chord_cap: int) -> EliminationResult:
    if method not in ("resultant", "groebner"):
        raise DomainError(f"unknown elimination method {method!r}")
    dga = build_dga(braid, "topological", "commuted")
    if not braid.is_knot():
        raise DomainError(
            "augmentation polynomials are defined here for knot closures")
    system = AugSystem.from_dga(dga)
    order = _chord_order(system)
    if len(order) > chord_cap:
        raise ResourceRefused(
            f"{len(order)} chord variables exceed the elimination cap "
            f"{chord_cap}; raise the cap to proceed")
    eqs = _prepare_equations(system, bind_u)
    target_vars = ("la", "mu") if bind_u else ("la", "mu", "U")

    if method == "resultant":
        finals = _resultant_chain(eqs, order)
        if any(not p.used_variables() <= set(target_vars) for p in finals):
            raise DomainError("resultant chain left chord variables behind")
        finals = [p.with_variables(target_vars) for p in finals]
    else:
        finals = groebner_lex(eqs, order)
        finals = [p.with_variables(target_vars) for p in finals]

    candidate = _candidate_from_finals(finals, target_vars)

    flags = EliminationFlags()
    raw = candidate
    candidate = candidate.clear_denominators()
    prim = candidate.primitive()
    flags.content_removed = prim.terms != candidate.terms
    candidate = prim
    stripped, shift = candidate.strip_monomial()
    flags.trivial_factors_removed = any(shift)
    candidate = stripped
    sq, applied = _squarefree(candidate)
    flags.squarefree_applied = applied
    candidate = normalize_up_to_units(sq)

    # finite-field cross-check and extraneous-factor filter
    points_by_prime: dict[int, list[dict]] = {}
    for p in (3, 5):
        base = specialize(dga, {"U": 1}) if bind_u else dga
        pts = []
        for aug in enumerate_augmentations(base, p):
            pts.append(dict(aug.var_values))
        points_by_prime[p] = pts
        flags.point_filter_primes.append(p)
    candidate = _point_filter(candidate, points_by_prime, flags)

    # every augmentation point must vanish on the candidate
    for p, pts in points_by_prime.items():
        for pt in pts:
            vals = {v: pt.get(v, 1) for v in candidate.variables}
            if candidate.eval_mod(p, vals) != 0:
                raise DomainError(
                    f"candidate fails to vanish at an F_{p} augmentation "
                    f"point {pt}: elimination lost a component")

    return EliminationResult(candidate, method, order, flags)


def augmentation_polynomial(braid: BraidWord, method: str = "resultant",
                            chord_cap: int = DEFAULT_ELIM_CAP) -> EliminationResult:
    """The three-variable augmentation polynomial of a knot closure."""
    return _eliminate(braid, bind_u=False, method=method, chord_cap=chord_cap)


def two_variable_augpoly(braid: BraidWord, method: str = "resultant",
                         chord_cap: int = DEFAULT_ELIM_CAP) -> EliminationResult:
    """The U = 1 slice: the two-variable augmentation polynomial."""
    return _eliminate(braid, bind_u=True, method=method, chord_cap=chord_cap)


# -- symmetry and HOMFLY checks -------------------------------------------------


def check_symmetries(p: CommPoly, mirror_of: CommPoly | None = None) -> dict:
    """U-involution symmetry of a three-variable polynomial, and optionally
    the mirror relation between two polynomials."""
    for v in ("la", "mu", "U"):
        if v not in p.variables:
            p = p.with_variables(p.variables + (v,))
    involution = {"la": {"la": -1, "U": 1}, "mu": {"mu": -1, "U": 1}}
    transformed = monomial_substitute(p, involution)
    report = {"u_symmetry": unit_equal(transformed, p)}
    if mirror_of is not None:
        q = mirror_of
        for v in ("la", "mu", "U"):
            if v not in q.variables:
                q = q.with_variables(q.variables + (v,))
        mirror_map = {"la": {"la": 1, "U": -1}, "mu": {"mu": -1},
                      "U": {"U": -1}}
        report["mirror"] = unit_equal(monomial_substitute(q, mirror_map), p)
    return report


def _univariate_laurent(p: CommPoly, name: str) -> dict[int, Fraction]:
    i = p.variables.index(name)
    out: dict[int, Fraction] = {}
    for e, c in p.terms.items():
        for v, x in zip(p.variables, e):
            if v != name and x != 0:
                raise DomainError(f"expected a univariate polynomial in {name}")
        out[e[i]] = out.get(e[i], Fraction(0)) + Fraction(c)
    return {k: v for k, v in out.items() if v}


def _laurent_to_poly(d: dict[int, Fraction], name: str) -> CommPoly:
    return CommPoly((name,), {(k,): (int(v) if v.denominator == 1 else v)
                              for k, v in d.items()})


def homfly_check(p: CommPoly, homfly_at_q1: "CommPoly | str") -> tuple[CommPoly, dict]:
    """Expand P = c0(mu,U) + c1(mu,U) la + O(la^2) and test the HOMFLY-PT
    specialization: f(U) = -c1(U,U) / d/dmu c0(mu,U)|_{mu=U} must be
    divisible by U - 1 with quotient equal to the supplied two-variable
    HOMFLY-PT polynomial evaluated at (a, q) = (U^{-1/2}, 1).
    """
    from .linhom import _laurent_divmod

    if isinstance(homfly_at_q1, str):
        homfly_at_q1 = parse_poly(homfly_at_q1, ("a", "q"))
    for v in ("la", "mu", "U"):
        if v not in p.variables:
            p = p.with_variables(p.variables + (v,))

    c0 = p.coeff_of("la", 0)
    c1 = p.coeff_of("la", 1)
    mu_to_u = {"mu": {"U": 1}}
    c0_uu = _univariate_laurent(monomial_substitute(c0, mu_to_u), "U")
    if c0_uu:
        raise DomainError(
            "boundary condition fails: c0(U, U) is nonzero, the input is "
            "not a normalized augmentation polynomial")
    d_mu = derivative(c0, "mu")
    denom = _univariate_laurent(monomial_substitute(d_mu, mu_to_u), "U")
    if not denom:
        raise DomainError("degenerate expansion: d/dmu c0 vanishes at mu=U")
    numer = _univariate_laurent(monomial_substitute(c1, mu_to_u), "U")
    neg_numer = {k: -v for k, v in numer.items()}
    q, r = _laurent_divmod(neg_numer, denom)
    if r:
        raise DomainError("division failure: d/dmu c0(U,U) does not divide c1(U,U)")
    f = q

    u_minus_1 = {1: Fraction(1), 0: Fraction(-1)}
    quot, rem = _laurent_divmod(f, u_minus_1)
    divides = not rem

    # HOMFLY at (a, q) = (U^{-1/2}, 1)
    spec: dict[int, Fraction] = {}
    ai = homfly_at_q1.variables.index("a")
    for e, c in homfly_at_q1.terms.items():
        xa = e[ai]
        if xa % 2:
            raise DomainError("odd exponent of a cannot specialize to U^{-1/2}")
        k = -xa // 2
        spec[k] = spec.get(k, Fraction(0)) + Fraction(c)
    spec = {k: v for k, v in spec.items() if v}

    verdict = {
        "boundary_ok": True,
        "u_minus_1_divides": divides,
        "matches_homfly": divides and quot == spec,
    }
    return _laurent_to_poly(f, "U"), verdict
