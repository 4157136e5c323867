"""Linearized homology of an augmented DGA.

Conjugating the differential by an augmentation (shift every degree-0
generator by its augmentation value) and keeping the length-one part gives
a three-term chain complex; its homology is computed by Smith normal form
over the chosen coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .augment import Augmentation, target_ring
from .dga import DGA
from .errors import DomainError
from .ncalg import c_eval, letter_degree
from .rings import IntegerRing, LaurentRing, PrimeField, RationalField


@dataclass
class ChainComplex:
    """deg2 -> deg1 -> deg0 with exact coefficients.

    d1 has shape (len(basis0), len(basis1)); d2 has shape
    (len(basis1), len(basis2)).  coeff names the coefficient ring.
    """

    coeff: str
    basis: dict[int, list[str]]
    d1: list[list[object]]
    d2: list[list[object]]

    def rank_of(self, degree: int) -> int:
        return len(self.basis.get(degree, []))

    @property
    def ranks(self) -> dict[int, int]:
        return {d: len(b) for d, b in self.basis.items()}

    def composition_is_zero(self) -> bool:
        ring = target_ring(self.coeff)
        n0, n1, n2 = (self.rank_of(0), self.rank_of(1), self.rank_of(2))
        for i in range(n0):
            for k in range(n2):
                acc = ring.zero()
                for j in range(n1):
                    acc = ring.add(acc, ring.mul(self.d1[i][j], self.d2[j][k]))
                if not ring.is_zero(acc):
                    return False
        return True


@dataclass
class HomologyResult:
    """Free rank and torsion invariant factors per degree."""

    coeff: str
    groups: dict[int, tuple[int, tuple]]

    def free_rank(self, degree: int) -> int:
        return self.groups[degree][0]

    def torsion(self, degree: int) -> tuple:
        return self.groups[degree][1]

    def describe(self, degree: int) -> str:
        rank, tors = self.groups[degree]
        parts = []
        if rank:
            parts.append("Z" if self.coeff == "Z" else self.coeff)
            if rank > 1:
                parts[-1] += f"^{rank}"
        for t in tors:
            parts.append(f"Z/{t}" if self.coeff == "Z" else f"{self.coeff}/({t})")
        return " + ".join(parts) if parts else "0"


# -- building the complex -----------------------------------------------------


def _cast(ring, value):
    """Lift an augmentation value into the coefficient ring."""
    if isinstance(value, bool):
        raise DomainError("boolean augmentation value")
    if isinstance(value, int):
        return ring.from_int(value)
    if isinstance(value, Fraction):
        if isinstance(ring, RationalField):
            return value
        if isinstance(ring, LaurentRing):
            return {0: value}
        if value.denominator == 1:
            return ring.from_int(int(value))
        raise DomainError("fractional value in a non-rational target")
    if isinstance(value, dict):
        if isinstance(ring, LaurentRing):
            return {int(k): Fraction(v) for k, v in value.items() if v}
        raise DomainError("Laurent value in a non-Laurent target")
    raise DomainError(f"unsupported augmentation value {value!r}")


def linearized_complex(dga: DGA, eps: Augmentation,
                       coeff: str | None = None) -> ChainComplex:
    """Shift degree-0 generators by their augmentation values and keep the
    length-one part of the differential.

    The constant term of every shifted degree-1 differential must vanish;
    that is precisely the augmentation condition.
    """
    if coeff is None:
        coeff = eps.target
    elif coeff != eps.target and eps.target != "Z":
        raise DomainError(
            "coefficient override needs an integer augmentation")
    ring = target_ring(coeff)

    max_deg = max(dga.degrees.values(), default=0)
    if max_deg > 2:
        raise DomainError(
            "the linearized complex covers degrees 0..2; "
            f"the DGA has a generator of degree {max_deg}")

    var_values = {}
    for name in dga.unit_variable_names():
        if name not in eps.var_values:
            raise DomainError(f"augmentation misses unit variable {name}")
        v = _cast(ring, eps.var_values[name])
        if dga.variable_is_invertible(name) and not ring.is_unit(v):
            raise DomainError(f"value of {name} is not a unit")
        var_values[name] = v
    chord_values = {}
    for g in dga.generators_of_degree(0):
        if g not in eps.chord_values:
            raise DomainError(f"augmentation misses degree-0 generator {g}")
        chord_values[dga.letter_of[g]] = _cast(ring, eps.chord_values[g])

    basis = {d: dga.generators_of_degree(d) for d in (0, 1, 2)}
    index = {d: {g: i for i, g in enumerate(basis[d])} for d in (0, 1, 2)}
    letter_to_name = {dga.letter_of[g]: g for g in dga.generators}

    def hom_value(letter):
        name = (letter[0] if letter[0] in dga.ring.variables
                else f"{letter[0]}{letter[1]}")
        v = var_values[name]
        e = letter[2]
        if e < 0:
            v = ring.inv(v)
            e = -e
        acc = ring.one()
        for _ in range(e):
            acc = ring.mul(acc, v)
        return acc

    def linear_part(poly):
        """(constant, {generator: coefficient}) of the shifted polynomial."""
        const = ring.zero()
        linear: dict[str, object] = {}
        for word, coeff_val in poly.terms.items():
            scal = c_eval(coeff_val, dga.ring, var_values, ring)
            symbols = []       # (generator name, degree, eps value)
            for l in word:
                if l[0] in ("la", "mu"):
                    scal = ring.mul(scal, hom_value(l))
                else:
                    val = (chord_values.get(l, ring.zero())
                           if letter_degree(l) == 0 else ring.zero())
                    symbols.append((letter_to_name[l], val))
            if not symbols:
                const = ring.add(const, scal)
                continue
            # constant slice: every symbol replaced by its value
            full = scal
            for _, v in symbols:
                full = ring.mul(full, v)
            const = ring.add(const, full)
            # linear slices: one symbol kept, the rest replaced
            for i, (name, _) in enumerate(symbols):
                c = scal
                dead = False
                for j, (_, v) in enumerate(symbols):
                    if j == i:
                        continue
                    if ring.is_zero(v):
                        dead = True
                        break
                    c = ring.mul(c, v)
                if dead:
                    continue
                linear[name] = ring.add(linear.get(name, ring.zero()), c)
        return const, {k: v for k, v in linear.items() if not ring.is_zero(v)}

    d1 = [[ring.zero() for _ in basis[1]] for _ in basis[0]]
    d2 = [[ring.zero() for _ in basis[2]] for _ in basis[1]]
    for g in basis[1]:
        const, linear = linear_part(dga.differentials[g])
        if not ring.is_zero(const):
            raise DomainError(
                f"nonzero constant term in the shifted differential of {g}: "
                "the supplied map is not an augmentation")
        for name, c in linear.items():
            d1[index[0][name]][index[1][g]] = c
    for g in basis[2]:
        const, linear = linear_part(dga.differentials[g])
        if not ring.is_zero(const):
            raise DomainError(f"degree-2 differential of {g} has a constant part")
        for name, c in linear.items():
            if name not in index[1]:
                raise DomainError(f"degree-2 differential hits non-degree-1 {name}")
            d2[index[1][name]][index[2][g]] = c

    complex_ = ChainComplex(coeff, basis, d1, d2)
    if not complex_.composition_is_zero():
        raise DomainError("d1 . d2 is nonzero")
    return complex_


# -- Smith normal form --------------------------------------------------------


class _EuclideanOps:
    """Minimal Euclidean-domain interface for the SNF reduction."""

    def __init__(self, ring):
        self.ring = ring
        if isinstance(ring, IntegerRing):
            self.kind = "Z"
        elif isinstance(ring, (PrimeField, RationalField)):
            self.kind = "field"
        elif isinstance(ring, LaurentRing):
            self.kind = "laurent"
        else:
            raise DomainError("unsupported coefficient ring for SNF")

    def is_zero(self, x):
        return self.ring.is_zero(x)

    def size(self, x) -> int:
        if self.kind == "Z":
            return abs(x)
        if self.kind == "field":
            return 0 if self.ring.is_zero(x) else 1
        exps = [e for e, c in x.items() if c]
        return (max(exps) - min(exps) + 1) if exps else 0

    def divmod(self, a, b):
        if self.kind == "Z":
            return divmod(a, b)
        if self.kind == "field":
            return self.ring.mul(a, self.ring.inv(b)), self.ring.zero()
        return _laurent_divmod(a, b)

    def unit_normalize(self, x):
        """Return (canonical associate, unit u) with x = u * canonical."""
        if self.is_zero(x):
            return x, self.ring.one()
        if self.kind == "Z":
            return (x, 1) if x > 0 else (-x, -1)
        if self.kind == "field":
            return self.ring.one(), x
        exps = sorted(e for e, c in x.items() if c)
        lead = x[exps[-1]]
        unit = {exps[0]: lead}
        canon = {e - exps[0]: Fraction(c) / lead for e, c in x.items() if c}
        return canon, unit


def _laurent_divmod(a: dict, b: dict):
    """Euclidean division in Q[t, t^-1] with size = exponent span."""
    a = {e: Fraction(c) for e, c in a.items() if c}
    b = {e: Fraction(c) for e, c in b.items() if c}
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}, {}
    sa, sb = min(a), min(b)
    f = {e - sa: c for e, c in a.items()}
    g = {e - sb: c for e, c in b.items()}
    dg = max(g)
    lead = g[dg]
    q: dict[int, Fraction] = {}
    while f and max(f) >= dg:
        df = max(f)
        c = f[df] / lead
        q[df - dg] = q.get(df - dg, Fraction(0)) + c
        for e, gc in g.items():
            k = df - dg + e
            f[k] = f.get(k, Fraction(0)) - c * gc
            if not f[k]:
                del f[k]
    shift = sa - sb
    q = {e + shift: c for e, c in q.items() if c}
    r = {e + sa: c for e, c in f.items() if c}
    return q, r


@dataclass
class SNFResult:
    factors: tuple
    rank: int
    left: list[list[object]]
    right: list[list[object]]
    diagonal: list[list[object]]


def _identity(ring, n):
    return [[ring.one() if i == j else ring.zero() for j in range(n)]
            for i in range(n)]


def smith_normal_form(matrix: list[list[object]], coeff: str = "Z",
                      rows: int | None = None, cols: int | None = None) -> SNFResult:
    """Diagonalize by unimodular row/column operations.

    Returns invariant factors d1 | d2 | ... (unit-normalized, units first
    dropped from the chain reported as factors), the rank, and the recorded
    transforms with left @ matrix @ right == diagonal (verified).
    """
    ring = target_ring(coeff)
    ops = _EuclideanOps(ring)
    m = rows if rows is not None else len(matrix)
    n = cols if cols is not None else (len(matrix[0]) if matrix else 0)
    a = [[matrix[i][j] for j in range(n)] for i in range(m)]
    left = _identity(ring, m)
    right = _identity(ring, n)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def row_addmul(dst, src, c):
        # row dst += c * row src
        a[dst] = [ring.add(x, ring.mul(c, y)) for x, y in zip(a[dst], a[src])]
        left[dst] = [ring.add(x, ring.mul(c, y))
                     for x, y in zip(left[dst], left[src])]

    def col_addmul(dst, src, c):
        for r in a:
            r[dst] = ring.add(r[dst], ring.mul(c, r[src]))
        for r in right:
            r[dst] = ring.add(r[dst], ring.mul(c, r[src]))

    def row_scale_unit(i, u):
        a[i] = [ring.mul(u, x) for x in a[i]]
        left[i] = [ring.mul(u, x) for x in left[i]]

    k = 0
    while k < min(m, n):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not ops.is_zero(a[i][j]):
                    s = ops.size(a[i][j])
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            row_swap(k, bi)
        if bj != k:
            col_swap(k, bj)

        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if ops.is_zero(a[i][k]):
                    continue
                q, r = ops.divmod(a[i][k], a[k][k])
                row_addmul(i, k, ring.neg(q))
                if not ops.is_zero(a[i][k]):
                    row_swap(k, i)   # remainder is strictly smaller
                    dirty = True
            for j in range(k + 1, n):
                if ops.is_zero(a[k][j]):
                    continue
                q, r = ops.divmod(a[k][j], a[k][k])
                col_addmul(j, k, ring.neg(q))
                if not ops.is_zero(a[k][j]):
                    col_swap(k, j)
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block for the chain
                stop = False
                for i in range(k + 1, m):
                    if stop:
                        break
                    for j in range(k + 1, n):
                        _, r = ops.divmod(a[i][j], a[k][k])
                        if not ops.is_zero(r):
                            row_addmul(k, i, ring.one())
                            dirty = True
                            stop = True
                            break
        canon, unit = ops.unit_normalize(a[k][k])
        if not ring.is_zero(a[k][k]) and unit != ring.one():
            row_scale_unit(k, ring.inv(unit))
        k += 1

    factors = []
    for i in range(min(m, n)):
        if not ops.is_zero(a[i][i]):
            factors.append(a[i][i])
    rank = len(factors)

    # verify: left @ matrix @ right == diagonal
    def matmul(x, y, p, q, r):
        out = [[ring.zero() for _ in range(r)] for _ in range(p)]
        for i in range(p):
            xi = x[i]
            for s in range(q):
                c = xi[s]
                if ring.is_zero(c):
                    continue
                ys = y[s]
                row = out[i]
                for j in range(r):
                    row[j] = ring.add(row[j], ring.mul(c, ys[j]))
        return out

    lm = matmul(left, matrix, m, m, n)
    lmr = matmul(lm, right, m, n, n)
    for i in range(m):
        for j in range(n):
            if not ring.is_zero(ring.add(lmr[i][j], ring.neg(a[i][j]))):
                raise RuntimeError("SNF transform verification failed")

    return SNFResult(tuple(factors), rank, left, right, a)


def homology(complex_: ChainComplex) -> HomologyResult:
    """H2 = ker d2, H1 = ker d1 / im d2, H0 = coker d1.

    Torsion comes from the non-unit invariant factors: d2's for H1, d1's
    for H0; H2 is free.
    """
    if not complex_.composition_is_zero():
        raise DomainError("d1 . d2 is nonzero")
    coeff = complex_.coeff
    ring = target_ring(coeff)
    ops = _EuclideanOps(ring)
    n0, n1, n2 = (complex_.rank_of(0), complex_.rank_of(1), complex_.rank_of(2))

    s1 = smith_normal_form(complex_.d1, coeff, rows=n0, cols=n1)
    s2 = smith_normal_form(complex_.d2, coeff, rows=n1, cols=n2)

    def nonunit(factors):
        out = []
        for f in factors:
            if not ring.is_unit(f):
                out.append(f if ops.kind != "Z" else abs(f))
        return tuple(out)

    groups = {
        0: (n0 - s1.rank, nonunit(s1.factors)),
        1: (n1 - s1.rank - s2.rank, nonunit(s2.factors)),
        2: (n2 - s2.rank, ()),
    }
    return HomologyResult(coeff, groups)
