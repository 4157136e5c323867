"""Noncommutative polynomial algebra over commutative Laurent coefficients.

The algebras handled here are tensor algebras on finitely many graded
letters (chord generators ``a``/``b``/``c``/``d``/``e``/``f``, invertible
homology-class letters, and stabilization generators), with coefficients in
a commutative Laurent polynomial ring over the integers.  Everything is
exact: coefficients are sparse integer-exponent dictionaries, words are
tuples of letters, and polynomials are sparse word -> coefficient maps.

Letters are encoded as 3-tuples ``(kind, i, j)``:

- chord letters: ``('a', i, j)`` .. ``('f', i, j)`` with strand indices;
  degrees are a: 0, b/c/d: 1, e/f: 2.
- homology letters (noncommutative mode only): ``('la', alpha, exp)`` and
  ``('mu', alpha, exp)`` with a component or strand index and a nonzero
  integer exponent; degree 0.  Adjacent letters with the same name merge by
  adding exponents; different names never commute.
- stabilization letters: ``('e1', k, d)`` and ``('e2', k, d)`` where ``k``
  numbers the stabilization and ``d`` is the stored degree.

The canonical term order (degree, then word length, then lexicographic on
the letter tuples) makes serialization deterministic: equal polynomials
always print identically, which the test suite relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping


# ---------------------------------------------------------------------------
# Coefficient ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoeffRing:
    """Commutative Laurent coefficient ring Z[v1^{+-1}, ..., vk^{+-1}].

    ``invertible[i]`` records whether negative exponents of ``variables[i]``
    are allowed.  Transverse modes use a non-invertible U (and V), which
    keeps every stored exponent nonnegative by construction.
    """

    variables: tuple[str, ...]
    invertible: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.invertible):
            raise ValueError("variables and invertible flags must align")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate coefficient variable")

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown coefficient variable {name!r}") from None

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * len(self.variables)

    def check_exps(self, exps: tuple[int, ...]) -> None:
        for e, inv, name in zip(exps, self.invertible, self.variables):
            if e < 0 and not inv:
                raise ValueError(f"negative exponent of non-invertible {name}")


# A coefficient is a sparse dict {exponent tuple: nonzero int}.
Coeff = dict

def c_zero() -> Coeff:
    return {}

def c_int(ring: CoeffRing, k: int) -> Coeff:
    return {ring.zero_exps(): k} if k else {}

def c_monomial(ring: CoeffRing, k: int, **exps: int) -> Coeff:
    if k == 0:
        return {}
    ev = [0] * len(ring.variables)
    for name, e in exps.items():
        ev[ring.index(name)] = e
    t = tuple(ev)
    ring.check_exps(t)
    return {t: k}

def c_add(a: Coeff, b: Coeff) -> Coeff:
    if not a:
        return dict(b)
    out = dict(a)
    for e, k in b.items():
        s = out.get(e, 0) + k
        if s:
            out[e] = s
        else:
            del out[e]
    return out

def c_neg(a: Coeff) -> Coeff:
    return {e: -k for e, k in a.items()}

def c_scale(a: Coeff, k: int) -> Coeff:
    if k == 0:
        return {}
    return {e: k * v for e, v in a.items()}

def c_mul(a: Coeff, b: Coeff) -> Coeff:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: Coeff = {}
    for ea, ka in a.items():
        for eb, kb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ka * kb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out

def c_is_one(a: Coeff, ring: CoeffRing) -> bool:
    return len(a) == 1 and a.get(ring.zero_exps()) == 1

def c_eval(a: Coeff, ring: CoeffRing, values: Mapping[str, object], target) -> object:
    """Evaluate at ``values`` (one per ring variable) in a target ring."""
    acc = target.zero()
    for exps, k in a.items():
        term = target.from_int(k)
        for name, e in zip(ring.variables, exps):
            if e == 0:
                continue
            v = values[name]
            if e < 0:
                v = target.inv(v)
                e = -e
            for _ in range(e):
                term = target.mul(term, v)
        acc = target.add(acc, term)
    return acc

def c_str(a: Coeff, ring: CoeffRing) -> str:
    if not a:
        return "0"
    parts: list[str] = []
    for exps in sorted(a):
        k = a[exps]
        factors = []
        for name, e in zip(ring.variables, exps):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        mono = "*".join(factors)
        if mono:
            body = mono if abs(k) == 1 else f"{abs(k)}*{mono}"
        else:
            body = str(abs(k))
        if not parts:
            parts.append(body if k > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if k > 0 else f" - {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Letters and words
# ---------------------------------------------------------------------------

Letter = tuple          # (kind, i, j)
Word = tuple            # tuple of letters

_CHORD_DEGREE = {"a": 0, "b": 1, "c": 1, "d": 1, "e": 2, "f": 2}
_HOMOLOGY_KINDS = ("la", "mu")

def chord(kind: str, i: int, j: int) -> Letter:
    if kind not in _CHORD_DEGREE:
        raise ValueError(f"not a chord kind: {kind!r}")
    return (kind, i, j)

def homology_letter(kind: str, alpha: int, exp: int = 1) -> Letter:
    if kind not in _HOMOLOGY_KINDS:
        raise ValueError(f"not a homology letter kind: {kind!r}")
    return (kind, alpha, exp)

def letter_degree(letter: Letter) -> int:
    kind = letter[0]
    d = _CHORD_DEGREE.get(kind)
    if d is not None:
        return d
    if kind in _HOMOLOGY_KINDS:
        return 0
    if kind in ("e1", "e2"):
        return letter[2]
    raise ValueError(f"unknown letter kind: {kind!r}")

def word_degree(word: Word) -> int:
    return sum(letter_degree(l) for l in word)

def normalize_word(letters: Iterable[Letter]) -> Word:
    """Canonical word form.

    Homology letters commute with each other (they span a commutative
    group ring) but not with chords: every maximal run of homology
    letters is sorted by name and same-name letters merge by adding
    exponents; zero exponents vanish.
    """
    out: list[Letter] = []
    run: list[Letter] = []

    def flush() -> None:
        if not run:
            return
        run.sort(key=lambda l: (l[0], l[1]))
        for l in run:
            if out and out[-1][0] == l[0] and out[-1][1] == l[1] and \
                    out[-1][0] in _HOMOLOGY_KINDS:
                e = out[-1][2] + l[2]
                out.pop()
                if e:
                    out.append((l[0], l[1], e))
            elif l[2]:
                out.append(l)
        run.clear()

    for l in letters:
        if l[0] in _HOMOLOGY_KINDS:
            run.append(l)
        else:
            flush()
            out.append(l)
    flush()
    return tuple(out)

def letter_str(letter: Letter) -> str:
    kind, i, j = letter
    if kind in _CHORD_DEGREE:
        if i <= 9 and j <= 9:
            return f"{kind}{i}{j}"
        return f"{kind}[{i},{j}]"
    if kind in _HOMOLOGY_KINDS:
        base = f"{kind}{i}"
        return base if j == 1 else f"{base}^{j}"
    if kind in ("e1", "e2"):
        return f"{kind}_{i}"
    raise ValueError(f"unknown letter kind: {kind!r}")

def _word_sort_key(word: Word):
    return (word_degree(word), len(word), word)


# ---------------------------------------------------------------------------
# Noncommutative polynomials
# ---------------------------------------------------------------------------

class NCPoly:
    """Sparse noncommutative polynomial: {word: coefficient}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoeffRing, terms: dict | None = None):
        self.ring = ring
        self.terms: dict = terms if terms is not None else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: CoeffRing) -> "NCPoly":
        return cls(ring)

    @classmethod
    def from_int(cls, ring: CoeffRing, k: int) -> "NCPoly":
        return cls(ring, {(): c_int(ring, k)} if k else {})

    @classmethod
    def constant(cls, ring: CoeffRing, coeff: Coeff) -> "NCPoly":
        return cls(ring, {(): dict(coeff)} if coeff else {})

    @classmethod
    def letter(cls, ring: CoeffRing, letter: Letter) -> "NCPoly":
        w = normalize_word((letter,))
        if not w:
            return cls.from_int(ring, 1)
        return cls(ring, {w: c_int(ring, 1)})

    @classmethod
    def monomial(cls, ring: CoeffRing, word: Iterable[Letter], coeff: Coeff) -> "NCPoly":
        if not coeff:
            return cls(ring)
        return cls(ring, {normalize_word(word): dict(coeff)})

    def copy(self) -> "NCPoly":
        return NCPoly(self.ring, {w: dict(c) for w, c in self.terms.items()})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> int | None:
        """Return the common degree of all words, or None if mixed/zero."""
        degs = {word_degree(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def constant_coeff(self) -> Coeff:
        return dict(self.terms.get((), {}))

    def letters(self) -> set:
        out: set = set()
        for w in self.terms:
            out.update(w)
        return out

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "NCPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("coefficient ring mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = NCPoly.from_int(self.ring, other)
        self._check(other)
        out = {w: dict(c) for w, c in self.terms.items()}
        for w, c in other.terms.items():
            s = c_add(out.get(w, {}), c)
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return NCPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ring, {w: c_neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = NCPoly.from_int(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return NCPoly(self.ring, {w: c_scale(c, other) for w, c in self.terms.items()}) \
                if other else NCPoly(self.ring)
        self._check(other)
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = normalize_word(wa + wb)
                c = c_mul(ca, cb)
                if not c:
                    continue
                s = c_add(out.get(w, {}), c)
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
        return NCPoly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def scale(self, coeff: Coeff) -> "NCPoly":
        out = {}
        for w, c in self.terms.items():
            p = c_mul(c, coeff)
            if p:
                out[w] = p
        return NCPoly(self.ring, out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = NCPoly.from_int(self.ring, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    # -- serialization ------------------------------------------------

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        if len(self.terms) == 1 and () in self.terms:
            return c_str(self.terms[()], self.ring)
        parts = []
        for w in sorted(self.terms, key=_word_sort_key):
            c = self.terms[w]
            ws = " ".join(letter_str(l) for l in w)
            if not w:
                parts.append(f"({c_str(c, self.ring)})")
            elif c_is_one(c, self.ring):
                parts.append(ws)
            else:
                parts.append(f"({c_str(c, self.ring)}) {ws}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.canonical_str()

    def __repr__(self) -> str:
        return f"NCPoly({self.canonical_str()})"


# ---------------------------------------------------------------------------
# Substitution, derivation, evaluation
# ---------------------------------------------------------------------------

def substitute(p: NCPoly, images: Mapping, renames: Mapping | None = None) -> NCPoly:
    """Apply an algebra map given on letters; unmapped letters are fixed.

    ``images`` maps letters to polynomials in the same coefficient ring;
    coefficients pass through untouched.  ``renames`` optionally maps
    homology letter names ``(kind, idx)`` to new names, preserving the
    exponent; this is how a braid letter permutes meridian classes.
    """
    ring = p.ring
    out: dict = {}
    for word, coeff in p.terms.items():
        # parts: current partial products as {word: coeff}
        parts: dict = {(): coeff}
        for l in word:
            if renames and l[0] in _HOMOLOGY_KINDS:
                nn = renames.get((l[0], l[1]))
                if nn is not None:
                    l = (nn[0], nn[1], l[2])
            img = images.get(l)
            if img is None:
                parts = {normalize_word(w + (l,)): c for w, c in parts.items()}
                continue
            nxt: dict = {}
            for w, c in parts.items():
                for iw, ic in img.terms.items():
                    nw = normalize_word(w + iw)
                    nc = c_mul(c, ic)
                    if not nc:
                        continue
                    s = c_add(nxt.get(nw, {}), nc)
                    if s:
                        nxt[nw] = s
                    elif nw in nxt:
                        del nxt[nw]
            parts = nxt
            if not parts:
                break
        for w, c in parts.items():
            s = c_add(out.get(w, {}), c)
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return NCPoly(ring, out)


def derive(p: NCPoly, images: Mapping[Letter, NCPoly]) -> NCPoly:
    """Signed Leibniz derivation determined by ``images`` on letters.

    d(xy) = (dx) y + (-1)^{deg x} x (dy).  Letters absent from ``images``
    (and all coefficients) are annihilated.
    """
    ring = p.ring
    total = NCPoly.zero(ring)
    for word, coeff in p.terms.items():
        sign = 1
        for t, l in enumerate(word):
            img = images.get(l)
            if img is not None and not img.is_zero():
                prefix, suffix = word[:t], word[t + 1:]
                for iw, ic in img.terms.items():
                    w = normalize_word(prefix + iw + suffix)
                    c = c_mul(coeff, c_scale(ic, sign))
                    if not c:
                        continue
                    s = c_add(total.terms.get(w, {}), c)
                    if s:
                        total.terms[w] = s
                    elif w in total.terms:
                        del total.terms[w]
            if letter_degree(l) % 2:
                sign = -sign
    return total


def evaluate(p: NCPoly, var_values: Mapping[str, object],
             letter_values: Mapping[Letter, object], target) -> object:
    """Evaluate into a commutative target ring.

    Ring variables take ``var_values``; degree-0 chord letters take
    ``letter_values``; homology letters take the value of their named ring
    variable (``mu`` or ``mu{alpha}``) raised to their exponent; letters of
    nonzero degree evaluate to 0 unless explicitly assigned.
    """
    ring = p.ring
    acc = target.zero()
    for word, coeff in p.terms.items():
        factor = target.one()
        dead = False
        for l in word:
            if l in letter_values:
                v = letter_values[l]
            elif l[0] in _HOMOLOGY_KINDS:
                name = l[0] if l[0] in ring.variables else f"{l[0]}{l[1]}"
                v = var_values[name]
                e = l[2]
                if e < 0:
                    v = target.inv(v)
                    e = -e
                w = target.one()
                for _ in range(e):
                    w = target.mul(w, v)
                v = w
            elif letter_degree(l) != 0:
                dead = True
                break
            else:
                raise KeyError(f"no value assigned to letter {letter_str(l)}")
            factor = target.mul(factor, v)
        if dead:
            continue
        acc = target.add(acc, target.mul(c_eval(coeff, ring, var_values, target), factor))
    return acc


def invert_unit(p: NCPoly) -> NCPoly:
    """Invert a unit monomial: one term, +-1 Laurent coefficient, homology word."""
    if len(p.terms) != 1:
        raise ValueError("not a unit monomial (multiple terms)")
    (word, coeff), = p.terms.items()
    if len(coeff) != 1:
        raise ValueError("not a unit monomial (coefficient not a monomial)")
    (exps, k), = coeff.items()
    if k not in (1, -1):
        raise ValueError("not a unit monomial (integer factor not +-1)")
    ring = p.ring
    inv_exps = tuple(-e for e in exps)
    ring.check_exps(inv_exps)
    inv_word = tuple((l[0], l[1], -l[2]) for l in reversed(word))
    for l in inv_word:
        if l[0] not in _HOMOLOGY_KINDS:
            raise ValueError("word contains a non-invertible letter")
    return NCPoly(ring, {normalize_word(inv_word): {inv_exps: k}})


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class NCMatrix:
    """Dense matrix of NCPoly entries (sizes here are at most braid width)."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: CoeffRing, entries: list[list[NCPoly]]):
        self.ring = ring
        self.entries = entries
        ncols = {len(row) for row in entries}
        if len(ncols) > 1:
            raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, ring: CoeffRing, n: int) -> "NCMatrix":
        return cls(ring, [[NCPoly.from_int(ring, 1 if i == j else 0) for j in range(n)]
                          for i in range(n)])

    @classmethod
    def diagonal(cls, ring: CoeffRing, diag: list[NCPoly]) -> "NCMatrix":
        n = len(diag)
        z = NCPoly.zero(ring)
        return cls(ring, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def build(cls, ring: CoeffRing, nrows: int, ncols: int,
              fn: Callable[[int, int], NCPoly]) -> "NCMatrix":
        return cls(ring, [[fn(i, j) for j in range(ncols)] for i in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn: Callable[[NCPoly], NCPoly]) -> "NCMatrix":
        return NCMatrix(self.ring, [[fn(e) for e in row] for row in self.entries])

    def __add__(self, other: "NCMatrix") -> "NCMatrix":
        return NCMatrix(self.ring, [[a + b for a, b in zip(ra, rb)]
                                    for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        return NCMatrix(self.ring, [[a - b for a, b in zip(ra, rb)]
                                    for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "NCMatrix":
        return self.map(lambda e: -e)

    def __matmul__(self, other: "NCMatrix") -> "NCMatrix":
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch")
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = NCPoly.zero(self.ring)
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return NCMatrix(self.ring, rows)

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def inverse_diagonal(self) -> "NCMatrix":
        """Inverse of a diagonal matrix of unit monomials."""
        n = self.nrows
        for i in range(n):
            for j in range(n):
                if i != j and not self.entries[i][j].is_zero():
                    raise ValueError("matrix is not diagonal")
        return NCMatrix.diagonal(self.ring, [invert_unit(self.entries[i][i]) for i in range(n)])

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"NCMatrix({body})"
