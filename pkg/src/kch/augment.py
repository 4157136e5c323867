"""Augmentations: verification, finite-field counting and enumeration.

An augmentation sends the algebra to a commutative ring, killing the
differential and every generator of nonzero degree.  Over a small prime
field the solution set is found by backtracking over the abelianized
degree-1 equations with constraint propagation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .braid import BraidWord
from .commpoly import CommPoly, abelianize
from .dga import DGA, build_dga
from .errors import DomainError, ResourceRefused
from .ncalg import evaluate
from .rings import ZZ, QQ, LAURENT_Q, PrimeField

MAX_PRIME = 7
DEFAULT_CHORD_CAP = 24


@dataclass
class Augmentation:
    """A point of the augmentation variety over a commutative target.

    target names the ring: "Z", "Q", "LaurentQ", or "F<p>".  var_values
    assigns the unit parameters, chord_values the degree-0 generators;
    generators of nonzero degree are implicitly sent to 0.
    """

    target: str
    var_values: dict[str, object] = field(default_factory=dict)
    chord_values: dict[str, object] = field(default_factory=dict)

    def value_of(self, name: str):
        if name in self.var_values:
            return self.var_values[name]
        return self.chord_values[name]

    def projection(self, names: list[str]) -> tuple:
        return tuple(self.value_of(n) for n in names)


def target_ring(descriptor: str):
    if descriptor == "Z":
        return ZZ
    if descriptor == "Q":
        return QQ
    if descriptor == "LaurentQ":
        return LAURENT_Q
    if descriptor.startswith("F"):
        p = int(descriptor[1:])
        return PrimeField(p)
    raise DomainError(f"unknown target ring {descriptor!r}")


@dataclass
class AugSystem:
    """The abelianized degree-1 equations of a DGA.

    variables lists unit parameters first, then degree-0 chords ordered by
    decreasing equation membership.  Each equation is the abelianization of
    one degree-1 generator's differential; solving them over a commutative
    ring is the same as giving a ring map out of the degree-0 homology.
    """

    unit_vars: list[str]
    chord_vars: list[str]
    equations: list[CommPoly]
    sources: list[str]
    # parallel to unit_vars; a non-invertible parameter (U, V in the
    # transverse variants) may also take the value 0
    unit_invertible: tuple[bool, ...] = ()

    @property
    def variables(self) -> list[str]:
        return self.unit_vars + self.chord_vars

    @classmethod
    def from_dga(cls, dga: DGA, drop: str | None = None) -> "AugSystem":
        """Build the system; drop omits one generator family ("b", "c" or
        "d"), which by the degree-0 homology presentation does not change
        the solution set."""
        if drop is not None and drop not in ("b", "c", "d"):
            raise DomainError("drop must be one of b, c, d")
        unit_vars = dga.unit_variable_names()
        chords = dga.generators_of_degree(0)
        deg1 = [g for g in dga.generators_of_degree(1)
                if drop is None or dga.letter_of[g][0] != drop]
        variables = tuple(unit_vars) + tuple(sorted(chords))
        equations = []
        sources = []
        for g in deg1:
            eq = abelianize(dga.differentials[g], variables)
            if eq.is_zero():
                continue
            equations.append(eq)
            sources.append(g)

        # order chords by how many equations mention them, descending
        counts = {c: 0 for c in chords}
        for eq in equations:
            for v in eq.used_variables():
                if v in counts:
                    counts[v] += 1
        chord_vars = sorted(chords, key=lambda c: (-counts[c], c))
        return cls(unit_vars, chord_vars, equations, sources,
                   tuple(dga.variable_is_invertible(v) for v in unit_vars))


def is_augmentation(dga: DGA, eps: Augmentation) -> list[tuple[str, object]]:
    """Evaluate every degree-1 differential under eps.

    Returns the list of (generator, nonzero residue); empty means eps is an
    augmentation.  Unit parameters must be sent to units of the target.
    """
    ring = target_ring(eps.target)
    var_values: dict[str, object] = {}
    for name in dga.unit_variable_names():
        if name not in eps.var_values:
            raise DomainError(f"augmentation misses unit variable {name}")
        v = eps.var_values[name]
        if dga.variable_is_invertible(name) and not ring.is_unit(v):
            raise DomainError(f"value of {name} is not a unit of {eps.target}")
        var_values[name] = v
    letter_values = {}
    for g in dga.generators_of_degree(0):
        if g not in eps.chord_values:
            raise DomainError(f"augmentation misses degree-0 generator {g}")
        letter_values[dga.letter_of[g]] = eps.chord_values[g]

    residues = []
    for g in dga.generators:
        if dga.degrees[g] != 1:
            continue
        val = evaluate(dga.differentials[g], var_values, letter_values, ring)
        if not ring.is_zero(val):
            residues.append((g, val))
    return residues


# -- finite-field search ------------------------------------------------------


def _compile(system: AugSystem, p: int):
    """Index-compile the equations for the backtracking search.

    Returns (names, domains, equations, var_eqs) where each equation is
    (const, terms) and each term is (coeff, ((var, exp), ...)).
    """
    names = system.variables
    idx = {v: i for i, v in enumerate(names)}
    nunits = len(system.unit_vars)
    inv = system.unit_invertible or (True,) * nunits
    domains = [tuple(range(1 if inv[k] else 0, p)) for k in range(nunits)] + \
              [tuple(range(p))] * len(system.chord_vars)

    equations = []
    for eq in system.equations:
        aligned = eq.with_variables(tuple(names))
        const = 0
        terms = []
        for exps, c in aligned.terms.items():
            if isinstance(c, Fraction):
                c = c.numerator * pow(c.denominator, -1, p)
            c %= p
            if c == 0:
                continue
            factors = tuple((i, e) for i, e in enumerate(exps) if e)
            if not factors:
                const = (const + c) % p
            else:
                terms.append((c, factors))
        if not terms and const == 0:
            continue
        equations.append((const, terms))
    var_eqs: list[list[int]] = [[] for _ in names]
    for k, (_, terms) in enumerate(equations):
        seen = set()
        for _, factors in terms:
            for i, _ in factors:
                seen.add(i)
        for i in seen:
            var_eqs[i].append(k)
    return list(names), domains, equations, var_eqs


def _solve(system: AugSystem, p: int, collect: bool):
    names, domains, equations, var_eqs = _compile(system, p)
    for const, terms in equations:
        if not terms and const % p != 0:
            return 0, []

    nv = len(names)
    value: list[int | None] = [None] * nv
    remaining: list[int] = []
    eq_vars: list[list[int]] = []
    for const, terms in equations:
        vs = sorted({i for _, factors in terms for i, _ in factors})
        eq_vars.append(vs)
        remaining.append(len(vs))

    def term_value(c, factors, skip=None):
        t = c
        for i, e in factors:
            if i == skip:
                continue
            v = value[i]
            if e < 0 and v == 0:
                return None
            t = (t * pow(v, e, p)) % p
        return t

    def eval_eq(k) -> int:
        const, terms = equations[k]
        total = const
        for c, factors in terms:
            t = term_value(c, factors)
            total = (total + t) % p
        return total

    def propagate_eq(k, trail) -> bool:
        """Equation k has at most one unassigned variable (the remaining
        counter can lag during a propagation cascade); if the equation is
        linear in that variable, force its value."""
        unassigned = [i for i in eq_vars[k] if value[i] is None]
        if not unassigned:
            return eval_eq(k) == 0
        y = unassigned[0]
        const, terms = equations[k]
        a = 0
        b = const
        for c, factors in terms:
            ey = next((e for i, e in factors if i == y), 0)
            if ey == 0:
                b = (b + term_value(c, factors)) % p
            elif ey == 1:
                a = (a + term_value(c, factors, skip=y)) % p
            else:
                return True  # nonlinear: settled when y is assigned
        if a == 0:
            return b == 0
        forced = (-b * pow(a, -1, p)) % p
        if forced not in domains[y]:
            return False
        return assign(y, forced, trail)

    def assign(x: int, v: int, trail: list) -> bool:
        value[x] = v
        trail.append(("v", x))
        for k in var_eqs[x]:
            remaining[k] -= 1
            trail.append(("c", k))
            if remaining[k] == 0:
                if eval_eq(k) != 0:
                    return False
            elif remaining[k] == 1:
                if not propagate_eq(k, trail):
                    return False
        return True

    def undo(trail: list) -> None:
        for kind, x in reversed(trail):
            if kind == "v":
                value[x] = None
            else:
                remaining[x] += 1

    solutions: list[list[int]] = []
    count = 0

    def dfs(pos: int):
        nonlocal count
        while pos < nv and value[pos] is not None:
            pos += 1
        if pos == nv:
            count += 1
            if collect:
                solutions.append(list(value))
            return
        for v in domains[pos]:
            trail: list = []
            if assign(pos, v, trail):
                dfs(pos + 1)
            undo(trail)

    dfs(0)
    return count, [dict(zip(names, sol)) for sol in solutions]


def _check_search_size(dga: DGA, p: int, chord_cap: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise DomainError(f"{p} is not a prime")
    if p > MAX_PRIME:
        raise ResourceRefused(
            f"prime {p} exceeds the supported bound {MAX_PRIME}")
    nchords = len(dga.generators_of_degree(0))
    if nchords > chord_cap:
        raise ResourceRefused(
            f"{nchords} degree-0 generators exceed the cap {chord_cap}; "
            "raise chord_cap explicitly to proceed")


def count_augmentations(dga: DGA, p: int,
                        chord_cap: int = DEFAULT_CHORD_CAP) -> int:
    """Number of augmentations of the DGA into F_p (unit parameters map to
    units, chords anywhere)."""
    _check_search_size(dga, p, chord_cap)
    system = AugSystem.from_dga(dga)
    count, _ = _solve(system, p, collect=False)
    return count


def enumerate_augmentations(dga: DGA, p: int,
                            chord_cap: int = DEFAULT_CHORD_CAP) -> list[Augmentation]:
    """All augmentations into F_p, in deterministic order."""
    _check_search_size(dga, p, chord_cap)
    system = AugSystem.from_dga(dga)
    _, sols = _solve(system, p, collect=True)
    units = set(system.unit_vars)
    out = []
    for sol in sols:
        out.append(Augmentation(
            target=f"F{p}",
            var_values={k: v for k, v in sol.items() if k in units},
            chord_values={k: v for k, v in sol.items() if k not in units}))
    return out


def transverse_augmentation_number(braid: BraidWord, p: int,
                                   chord_cap: int = DEFAULT_CHORD_CAP) -> int:
    """Count augmentations of the hat DGA of a braid whose closure is a knot.

    This count is unchanged under braid conjugation and positive
    stabilization, so it is an invariant of the transverse link type.
    """
    if not braid.is_knot():
        raise DomainError("transverse augmentation number needs a knot closure")
    dga = build_dga(braid, "hat", "commuted")
    return count_augmentations(dga, p, chord_cap)
