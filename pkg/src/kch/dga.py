"""Differential graded algebras attached to braid closures.

Given a braid word whose closure is a knot or link, ``build_dga``
constructs a semifree DGA over a commutative Laurent coefficient ring.
Generators, for an n-strand braid:

- ``a_ij`` (i != j), degree 0;
- ``b_ij`` (i != j), degree 1;
- ``c_ij`` and ``d_ij`` (all i, j), degree 1;
- ``e_ij`` and ``f_ij`` (all i, j), degree 2.

The differential is assembled from a handful of n x n matrices: the chord
matrix and its braid image, the framing twist (a diagonal matrix recording
the writhe of each component on its leading strand), and the left/right
action matrices of the braid on star chords.  Four variants are supported:

- ``topological``: coefficients Z[la^:, mu^:, U^:] (all invertible); the
  framing twist carries the U power that makes the closure's framing
  topological rather than braid-natural.
- ``transverse_U``: U is not invertible and the twist drops its U power;
  the result is sensitive to the transverse type of the closure.
- ``transverse_UV``: a second non-invertible variable V decorates the
  lower-triangular and diagonal entries; knots only.
- ``hat``: transverse_U specialized at U = 0.

Two algebra modes: ``commuted`` (homology classes la/mu live in the
coefficient ring) and ``noncommutative`` (each component's la/mu are
invertible letters riding in the words; strand meridians are renamed to
component meridians at assembly time).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

from .braid import BraidWord, ComponentMap, act, action_matrices
from .errors import DomainError
from .ncalg import (
    CoeffRing,
    NCMatrix,
    NCPoly,
    c_monomial,
    c_mul,
    derive,
    letter_str,
    substitute,
)


class BuildError(DomainError):
    """The DGA matrices failed an internal consistency check."""


@dataclass(frozen=True)
class DgaMode:
    variant: str = "topological"
    algebra: str = "commuted"
    star: str | None = None

    VARIANTS = ("topological", "transverse_U", "transverse_UV", "hat")
    ALGEBRAS = ("commuted", "noncommutative")

    def validate(self) -> None:
        if self.variant not in self.VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}")
        if self.algebra not in self.ALGEBRAS:
            raise DomainError(f"unknown algebra mode {self.algebra!r}")
        if self.star not in (None, "high", "low0"):
            raise DomainError(f"unknown star convention {self.star!r}")


@dataclass
class DGA:
    braid: BraidWord
    mode: DgaMode
    ring: CoeffRing
    components: ComponentMap
    generators: list[str]
    degrees: dict[str, int]
    differentials: dict[str, NCPoly]
    letter_of: dict[str, tuple]

    def generators_of_degree(self, d: int) -> list[str]:
        return [g for g in self.generators if self.degrees[g] == d]

    def unit_variable_names(self) -> list[str]:
        """Invertible unit parameters an augmentation must assign.

        In commuted mode these are exactly the ring variables; in
        noncommutative mode the homology letters la/mu per component are
        letters, not ring variables, so their names are added.
        """
        names = list(self.ring.variables)
        if self.mode.algebra == "noncommutative":
            extra = []
            for alpha in sorted(self.components.sizes):
                extra.append(f"la{alpha}")
                extra.append(f"mu{alpha}")
            names = extra + names
        return names

    def variable_is_invertible(self, name: str) -> bool:
        if name in self.ring.variables:
            return self.ring.invertible[self.ring.index(name)]
        return True  # homology letters are invertible by construction

    def to_json_dict(self) -> dict:
        return {
            "braid": {"n": self.braid.n, "letters": list(self.braid.letters)},
            "mode": {"variant": self.mode.variant, "algebra": self.mode.algebra,
                     "star": self.mode.star},
            "ring": {"variables": list(self.ring.variables),
                     "invertible": list(self.ring.invertible)},
            "components": {
                "count": self.components.count,
                "component_of": {str(k): v for k, v in self.components.component_of.items()},
                "writhes": {str(k): v for k, v in self.components.writhes.items()},
            },
            "generators": [
                {"name": g, "degree": self.degrees[g],
                 "differential": self.differentials[g].canonical_str()}
                for g in self.generators
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _coefficient_ring(variant: str, algebra: str, ncomp: int) -> CoeffRing:
    if algebra == "noncommutative":
        if variant == "transverse_UV":
            return CoeffRing(("U", "V"), (False, False))
        if variant == "topological":
            return CoeffRing(("U",), (True,))
        return CoeffRing(("U",), (False,))
    if ncomp == 1:
        las, mus = ["la"], ["mu"]
    else:
        las = [f"la{a}" for a in range(1, ncomp + 1)]
        mus = [f"mu{a}" for a in range(1, ncomp + 1)]
    if variant == "transverse_UV":
        return CoeffRing(tuple(las + mus + ["U", "V"]),
                         (True,) * (2 * ncomp) + (False, False))
    inv_u = variant == "topological"
    return CoeffRing(tuple(las + mus + ["U"]), (True,) * (2 * ncomp) + (inv_u,))


def _mu_name(ncomp: int, alpha: int) -> str:
    return "mu" if ncomp == 1 else f"mu{alpha}"


def _la_name(ncomp: int, alpha: int) -> str:
    return "la" if ncomp == 1 else f"la{alpha}"


def build_dga(braid: BraidWord, variant: str = "topological",
              algebra: str = "commuted", star: str | None = None) -> DGA:
    """Construct the DGA of the braid closure in the requested mode."""
    mode = DgaMode(variant, algebra, star)
    mode.validate()
    comps = braid.components()
    r = comps.count
    n = braid.n
    nc = algebra == "noncommutative"

    if variant == "transverse_UV" and r > 1:
        raise DomainError("transverse_UV is defined for knots only")
    if nc and star == "high":
        raise DomainError("noncommutative mode requires the star=low0 convention")
    star = star or ("low0" if (nc or r > 1) else "high")
    if r > 1 and star != "low0":
        raise DomainError("link DGAs require the star=low0 convention")
    mode = replace(mode, star=star)

    if variant == "hat":
        base = build_dga(braid, "transverse_U", algebra, star)
        out = specialize(base, {"U": 0})
        out.mode = replace(out.mode, variant="hat")
        return out

    ring = _coefficient_ring(variant, algebra, r)
    alpha = comps.component_of

    one = NCPoly.from_int(ring, 1)
    zero = NCPoly.zero(ring)

    def chord_poly(kind: str, i: int, j: int) -> NCPoly:
        return NCPoly.letter(ring, (kind, i, j))

    def coeff_mono(k: int, **exps: int) -> NCPoly:
        return NCPoly.constant(ring, c_monomial(ring, k, **exps))

    def mu_factor(a: int, exp: int = 1) -> NCPoly:
        # component meridian class, as coefficient or letter per mode
        if nc:
            return NCPoly.letter(ring, ("mu", a, exp))
        return coeff_mono(1, **{_mu_name(r, a): exp})

    # The braid acts on the chord matrix in the strand algebra, where each
    # strand carries its own meridian letter.  For one-component commuted
    # DGAs the meridian factors in the substitution rules cancel, so the
    # plain chord-only action is used there; links and noncommutative mode
    # need the letters (across components they contribute meridian ratios).
    meridian_letters = nc or r > 1

    def strand_mu(i: int, exp: int = 1) -> NCPoly:
        if meridian_letters:
            return NCPoly.letter(ring, ("mu", i, exp))
        return coeff_mono(1, **{_mu_name(r, alpha[i]): exp})

    # u_exp decorates the upper triangle and the diagonal head, v_exp the
    # meridian; the lower-triangle meridian is indexed by the COLUMN strand
    # and multiplies the chord from the right.
    def chord_matrix(kind: str, u_exp: int, v_exp: int, diagonal: bool,
                     strand_form: bool) -> NCMatrix:
        mer = strand_mu if strand_form else (lambda i, e=1: mu_factor(alpha[i], e))
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                if i < j:
                    entry = chord_poly(kind, i, j)
                    if u_exp:
                        entry = coeff_mono(1, U=u_exp) * entry
                elif i > j:
                    entry = -(chord_poly(kind, i, j) * mer(j))
                    if v_exp:
                        entry = entry * coeff_mono(1, V=v_exp)
                else:
                    if not diagonal:
                        entry = zero
                    else:
                        head = coeff_mono(1, U=u_exp) if u_exp else one
                        tail = mer(i)
                        if v_exp:
                            tail = tail * coeff_mono(1, V=v_exp)
                        entry = head - tail
                row.append(entry)
            rows.append(row)
        return NCMatrix(ring, rows)

    strand_to_comp = {("mu", i): ("mu", alpha[i]) for i in range(1, n + 1)}

    def fold_homology(p: NCPoly) -> NCPoly:
        # push strand meridian letters into the (commutative) coefficient
        out = NCPoly.zero(ring)
        for word, coeff in p.terms.items():
            chords = []
            exps: dict[str, int] = {}
            for l in word:
                if l[0] in ("la", "mu"):
                    name = (_la_name if l[0] == "la" else _mu_name)(r, alpha[l[1]])
                    exps[name] = exps.get(name, 0) + l[2]
                else:
                    chords.append(l)
            factor = c_monomial(ring, 1, **exps)
            out = out + NCPoly.monomial(ring, tuple(chords), c_mul(coeff, factor))
        return out

    def post_action(p: NCPoly) -> NCPoly:
        if not meridian_letters:
            return p
        if nc:
            return substitute(p, {}, strand_to_comp)
        return fold_homology(p)

    a_strand = chord_matrix("a", 0, 0, diagonal=True, strand_form=True)
    a_mat = a_strand.map(post_action)
    a_acted = a_strand.map(
        lambda p: post_action(act(p, braid, noncommutative=meridian_letters)))

    uv = variant == "transverse_UV"
    a_hat = chord_matrix("a", 1, 0, diagonal=True, strand_form=False)
    b_mat = chord_matrix("b", 0, 0, diagonal=False, strand_form=False)
    b_hat = chord_matrix("b", 1, 0, diagonal=False, strand_form=False)
    c_mat = NCMatrix.build(ring, n, n, lambda i, j: chord_poly("c", i + 1, j + 1))
    d_mat = NCMatrix.build(ring, n, n, lambda i, j: chord_poly("d", i + 1, j + 1))
    if uv:
        a_check = chord_matrix("a", 0, 1, diagonal=True, strand_form=False)
        b_check = chord_matrix("b", 0, 1, diagonal=False, strand_form=False)

    # Framing twist: diagonal, supported on each component's leading strand.
    twist_entries = []
    for i in range(1, n + 1):
        a_i = alpha[i]
        if comps.leading_strand[a_i] != i:
            twist_entries.append(one)
            continue
        w_a = comps.writhes[a_i]
        n_a = comps.sizes[a_i]
        if (w_a - n_a + 1) % 2:
            raise BuildError("component writhe parity violated")
        u_exp = -(w_a - n_a + 1) // 2 if variant == "topological" else 0
        if nc:
            word = (("la", a_i, 1), ("mu", a_i, w_a))
            entry = NCPoly.monomial(ring, word, c_monomial(ring, 1, U=u_exp)
                                    if u_exp else c_monomial(ring, 1))
        else:
            exps = {_la_name(r, a_i): 1, _mu_name(r, a_i): w_a}
            if u_exp:
                exps["U"] = u_exp
            entry = coeff_mono(1, **exps)
        twist_entries.append(entry)
    twist = NCMatrix.diagonal(ring, twist_entries)
    twist_inv = twist.inverse_diagonal()

    left, right = action_matrices(
        braid, star=star, noncommutative=meridian_letters, ring=ring)
    left = left.map(post_action)
    right = right.map(post_action)

    # Differential matrices.
    m_b = a_mat - twist @ a_acted @ twist_inv
    if uv:
        m_c = a_hat - twist @ left @ a_check
        m_d = a_check - a_hat @ right @ twist_inv
        m_f = b_check - d_mat - c_mat @ right @ twist_inv
    else:
        m_c = a_hat - twist @ left @ a_mat
        m_d = a_mat - a_hat @ right @ twist_inv
        m_f = b_mat - d_mat - c_mat @ right @ twist_inv
    m_e = b_hat - c_mat - twist @ left @ d_mat

    generators: list[str] = []
    degrees: dict[str, int] = {}
    differentials: dict[str, NCPoly] = {}
    letter_of: dict[str, tuple] = {}

    def add_gen(kind: str, i: int, j: int, degree: int, diff: NCPoly) -> None:
        letter = (kind, i, j)
        name = letter_str(letter)
        generators.append(name)
        degrees[name] = degree
        differentials[name] = diff
        letter_of[name] = letter

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                add_gen("a", i, j, 0, zero)

    # d(b_ij) sits in m_b up to the prefactor of the b-matrix entry: the
    # upper triangle is bare, the lower triangle carries -mu_{alpha(j)} on
    # the right.
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            entry = m_b[i - 1, j - 1]
            if i == j:
                if not entry.is_zero():
                    raise BuildError(
                        f"diagonal of the b-differential matrix is nonzero at {i}: {entry}")
                continue
            if i > j:
                if nc:
                    diff = -(entry * mu_factor(alpha[j], -1))
                else:
                    diff = -entry.scale(c_monomial(ring, 1, **{_mu_name(r, alpha[j]): -1}))
            else:
                diff = entry
            add_gen("b", i, j, 1, diff)

    for kind, mat, degree in (("c", m_c, 1), ("d", m_d, 1), ("e", m_e, 2), ("f", m_f, 2)):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                add_gen(kind, i, j, degree, mat[i - 1, j - 1])

    for g in generators:
        diff = differentials[g]
        if diff.is_zero():
            continue
        hom = diff.is_homogeneous()
        if hom != degrees[g] - 1:
            raise BuildError(
                f"differential of {g} is not homogeneous of degree {degrees[g] - 1}: {diff}")

    return DGA(braid, mode, ring, comps, generators, degrees, differentials, letter_of)


# ---------------------------------------------------------------------------
# Checks and derived DGAs
# ---------------------------------------------------------------------------

def square_root_identity_holds(braid: BraidWord, algebra: str = "commuted",
                               star: str | None = None) -> bool:
    """Check, entrywise, that acting on the chord matrix agrees with
    sandwiching it between the left and right action matrices.  The two
    sides are computed through independent code paths (substitution rules
    versus matrix extraction), so this doubles as a consistency check on
    both."""
    nc = algebra == "noncommutative"
    comps = braid.components()
    r = comps.count
    n = braid.n
    alpha = comps.component_of
    meridian_letters = nc or r > 1
    if star is None:
        star = "low0" if meridian_letters else "high"
    ring = _coefficient_ring("topological", algebra, r)
    one = NCPoly.from_int(ring, 1)

    def mer(j: int) -> NCPoly:
        if meridian_letters:
            return NCPoly.letter(ring, ("mu", j, 1))
        return NCPoly.constant(ring, c_monomial(ring, 1, **{_mu_name(r, alpha[j]): 1}))

    def entry(i: int, j: int) -> NCPoly:
        if i < j:
            return NCPoly.letter(ring, ("a", i, j))
        if i > j:
            return -(NCPoly.letter(ring, ("a", i, j)) * mer(j))
        return one - mer(i)

    a_strand = NCMatrix.build(ring, n, n, lambda i, j: entry(i + 1, j + 1))
    left, right = action_matrices(braid, star=star,
                                  noncommutative=meridian_letters, ring=ring)
    # one entry at a time keeps peak memory bounded: the sandwiched products
    # blow up before cancellation, so never hold more than one of them
    strand_right = a_strand @ right
    zero = NCPoly.from_int(ring, 0)
    for i in range(n):
        for j in range(n):
            lhs = act(a_strand[i, j], braid, noncommutative=meridian_letters)
            rhs = zero
            for k in range(n):
                rhs = rhs + left[i, k] * strand_right[k, j]
            if lhs != rhs:
                return False
    return True


def check_d_squared(dga: DGA):
    """Return None if the differential squares to zero, else the first
    failing generator with its nonzero image."""
    images = {dga.letter_of[g]: dga.differentials[g] for g in dga.generators}
    for g in dga.generators:
        diff = dga.differentials[g]
        if diff.is_zero():
            continue
        dd = derive(diff, images)
        if not dd.is_zero():
            return g, dd
    return None


def specialize(dga: DGA, bindings: dict[str, int]) -> DGA:
    """Substitute integer constants for coefficient ring variables.

    Bound variables leave the ring.  Binding a value other than +-1 to a
    variable that occurs with a negative exponent is a domain error.
    """
    if not bindings:
        return DGA(dga.braid, dga.mode, dga.ring, dga.components,
                   list(dga.generators), dict(dga.degrees),
                   {g: p.copy() for g, p in dga.differentials.items()},
                   dict(dga.letter_of))
    for name in bindings:
        if name not in dga.ring.variables:
            raise DomainError(f"{name!r} is not a coefficient ring variable")
    old = dga.ring
    keep = [k for k, name in enumerate(old.variables) if name not in bindings]
    bound = {old.index(name): value for name, value in bindings.items()}
    ring = CoeffRing(tuple(old.variables[k] for k in keep),
                     tuple(old.invertible[k] for k in keep))

    def map_coeff(coeff: dict) -> dict:
        out: dict = {}
        for exps, k in coeff.items():
            factor = 1
            for idx, value in bound.items():
                e = exps[idx]
                if e < 0 and value not in (1, -1):
                    raise DomainError(
                        f"cannot bind {old.variables[idx]} = {value}: negative exponent present")
                # (+-1)^e depends only on the parity of e
                factor *= value ** abs(e)
                if factor == 0:
                    break
            if factor == 0:
                continue
            ne = tuple(exps[k2] for k2 in keep)
            s = out.get(ne, 0) + k * factor
            if s:
                out[ne] = s
            elif ne in out:
                del out[ne]
        return out

    def map_poly(p: NCPoly) -> NCPoly:
        terms = {}
        for w, c in p.terms.items():
            mc = map_coeff(c)
            if mc:
                terms[w] = mc
        return NCPoly(ring, terms)

    return DGA(dga.braid, dga.mode, ring, dga.components, list(dga.generators),
               dict(dga.degrees), {g: map_poly(p) for g, p in dga.differentials.items()},
               dict(dga.letter_of))


def stabilize(dga: DGA, degree: int) -> DGA:
    """Add a cancelling generator pair e1 (degree d) and e2 (degree d-1)
    with d(e1) = e2 and d(e2) = 0."""
    if degree < 1:
        raise DomainError("stabilization degree must be >= 1")
    existing = sum(1 for l in dga.letter_of.values() if l[0] == "e1")
    k = existing
    l1, l2 = ("e1", k, degree), ("e2", k, degree - 1)
    n1, n2 = letter_str(l1), letter_str(l2)
    out = DGA(dga.braid, dga.mode, dga.ring, dga.components,
              list(dga.generators) + [n1, n2],
              dict(dga.degrees), dict(dga.differentials), dict(dga.letter_of))
    out.degrees[n1] = degree
    out.degrees[n2] = degree - 1
    out.differentials[n1] = NCPoly.letter(dga.ring, l2)
    out.differentials[n2] = NCPoly.zero(dga.ring)
    out.letter_of[n1] = l1
    out.letter_of[n2] = l2
    return out


def sublink_quotient(dga: DGA, keep: Iterable[int]) -> DGA:
    """Quotient by the components not in ``keep``.

    Generators whose chords touch a dropped component are removed and set
    to zero in every differential; the dropped components' la/mu become 1.
    """
    keep_set = set(keep)
    comps = dga.components
    if not keep_set or not keep_set.issubset(comps.sizes.keys()):
        raise DomainError(f"components to keep must be a nonempty subset of "
                          f"{sorted(comps.sizes)}")
    if keep_set == set(comps.sizes):
        return specialize(dga, {})

    alpha = comps.component_of
    r = comps.count
    dropped = set(comps.sizes) - keep_set

    def strand_kept(i: int) -> bool:
        return alpha[i] in keep_set

    kill: dict = {}
    kept_gens: list[str] = []
    for g in dga.generators:
        l = dga.letter_of[g]
        if l[0] in ("e1", "e2"):
            kept_gens.append(g)
            continue
        if strand_kept(l[1]) and strand_kept(l[2]):
            kept_gens.append(g)
        else:
            kill[l] = NCPoly.zero(dga.ring)

    # in noncommutative mode the dropped components' homology letters
    # become 1 (their classes die in the sublink complement)
    renameless: dict = dict(kill)
    if dga.mode.algebra == "noncommutative":
        for beta in dropped:
            for kind in ("la", "mu"):
                for exp in _exponents_of(dga, kind, beta):
                    renameless[(kind, beta, exp)] = NCPoly.from_int(dga.ring, 1)

    bindings = {}
    if dga.mode.algebra == "commuted":
        for beta in dropped:
            for prefix in ("la", "mu"):
                name = prefix if r == 1 else f"{prefix}{beta}"
                if name in dga.ring.variables:
                    bindings[name] = 1

    new_diffs = {g: substitute(dga.differentials[g], renameless) for g in kept_gens}
    out = DGA(dga.braid, dga.mode, dga.ring, comps, kept_gens,
              {g: dga.degrees[g] for g in kept_gens}, new_diffs,
              {g: dga.letter_of[g] for g in kept_gens})
    if bindings:
        out = specialize(out, bindings)
    return out


def _exponents_of(dga: DGA, kind: str, idx: int) -> set[int]:
    exps: set[int] = set()
    for p in dga.differentials.values():
        for word in p.terms:
            for l in word:
                if l[0] == kind and l[1] == idx:
                    exps.add(l[2])
    return exps
