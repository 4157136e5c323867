"""Sparse commutative Laurent polynomials with exact coefficients.

This is the abelian side of the toolkit: augmentation equations, resultant
chains and the augmentation polynomials all live here.  Coefficients are
Python ints or Fractions; exponents may be negative until cleared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import DomainError

Exps = tuple[int, ...]


def _strip(terms: dict[Exps, object]) -> dict[Exps, object]:
    return {e: c for e, c in terms.items() if c}


class CommPoly:
    """Polynomial in an ordered tuple of commuting variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: tuple[str, ...],
                 terms: Mapping[Exps, object] | None = None):
        self.variables = tuple(variables)
        self.terms = _strip(dict(terms or {}))
        for e in self.terms:
            if len(e) != len(self.variables):
                raise ValueError("exponent vector length mismatch")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "CommPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: tuple[str, ...], c) -> "CommPoly":
        z: Exps = (0,) * len(variables)
        return cls(variables, {z: c} if c else {})

    @classmethod
    def var(cls, variables: tuple[str, ...], name: str, exp: int = 1) -> "CommPoly":
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = exp
        return cls(variables, {tuple(e): 1})

    # -- plumbing --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return 0
        [(e, c)] = self.terms.items()
        if any(x != 0 for x in e):
            raise ValueError("not a constant")
        return c

    def with_variables(self, variables: tuple[str, ...]) -> "CommPoly":
        """Reindex onto another variable tuple.  Variables absent from the
        target may only be dropped if they are unused."""
        pos: list[int | None] = []
        for v in self.variables:
            pos.append(variables.index(v) if v in variables else None)
        out: dict[Exps, object] = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, p, x in zip(self.variables, pos, e):
                if p is None:
                    if x:
                        raise ValueError(f"variable {v} missing from target")
                    continue
                ne[p] = x
            key = tuple(ne)
            out[key] = out.get(key, 0) + c
        return CommPoly(variables, out)

    @staticmethod
    def align(p: "CommPoly", q: "CommPoly") -> tuple["CommPoly", "CommPoly"]:
        if p.variables == q.variables:
            return p, q
        merged = tuple(p.variables) + tuple(v for v in q.variables
                                            if v not in p.variables)
        return p.with_variables(merged), q.with_variables(merged)

    def used_variables(self) -> set[str]:
        out = set()
        for e in self.terms:
            for v, x in zip(self.variables, e):
                if x:
                    out.add(v)
        return out

    def drop_unused(self, keep: Iterable[str] = ()) -> "CommPoly":
        keep = set(keep) | self.used_variables()
        vs = tuple(v for v in self.variables if v in keep)
        return self.with_variables(vs) if vs != self.variables else self

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)):
            other = CommPoly.const(self.variables, other)
        p, q = CommPoly.align(self, other)
        out = dict(p.terms)
        for e, c in q.terms.items():
            out[e] = out.get(e, 0) + c
        return CommPoly(p.variables, out)

    def __radd__(self, other) -> "CommPoly":
        return self.__add__(other)

    def __neg__(self) -> "CommPoly":
        return CommPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)):
            other = CommPoly.const(self.variables, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other) -> "CommPoly":
        return self.__neg__().__add__(other)

    def __mul__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return CommPoly.zero(self.variables)
            return CommPoly(self.variables,
                            {e: c * other for e, c in self.terms.items()})
        p, q = CommPoly.align(self, other)
        out: dict[Exps, object] = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return CommPoly(p.variables, out)

    def __rmul__(self, other) -> "CommPoly":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "CommPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = CommPoly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommPoly):
            return NotImplemented
        p, q = CommPoly.align(self, other)
        return p.terms == q.terms

    def __hash__(self):
        return hash((self.variables, frozenset(
            (e, Fraction(c)) for e, c in self.terms.items())))

    # -- structure ---------------------------------------------------------

    def degree(self, name: str) -> int:
        """Max exponent of name; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def min_exponent(self, name: str) -> int:
        if not self.terms:
            return 0
        i = self.variables.index(name)
        return min(e[i] for e in self.terms)

    def coeff_of(self, name: str, k: int) -> "CommPoly":
        """Coefficient of name**k, as a polynomial in the same variables."""
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                ne = list(e)
                ne[i] = 0
                key = tuple(ne)
                out[key] = out.get(key, 0) + c
        return CommPoly(self.variables, out)

    def substitute(self, values: Mapping[str, "CommPoly | int | Fraction"]) -> "CommPoly":
        """Replace variables by polynomials or constants (negative exponents
        need invertible constant images)."""
        total = CommPoly.zero(self.variables)
        for e, c in self.terms.items():
            term = CommPoly.const(self.variables, c)
            for v, x in zip(self.variables, e):
                if x == 0:
                    continue
                if v in values:
                    img = values[v]
                    if isinstance(img, (int, Fraction)):
                        if x < 0:
                            if img == 0:
                                raise DomainError(
                                    f"cannot bind {v}=0: negative exponent present")
                            term = term * (Fraction(1, img) ** (-x))
                        else:
                            term = term * (img ** x)
                    else:
                        if x < 0:
                            raise DomainError(
                                f"cannot substitute a polynomial into {v}^{x}")
                        term = term * (img ** x)
                else:
                    term = term * CommPoly.var(self.variables, v, x)
            total = total + term
        return total

    def eval_mod(self, p: int, values: Mapping[str, int]) -> int:
        """Evaluate at integer points mod p; negative exponents need units."""
        total = 0
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                t = (c.numerator * pow(c.denominator, -1, p)) % p
            else:
                t = c % p
            for v, x in zip(self.variables, e):
                if x == 0:
                    continue
                val = values[v] % p
                if x < 0 and val == 0:
                    raise DomainError(f"{v}=0 hit a negative exponent")
                t = (t * pow(val, x, p)) % p
            total = (total + t) % p
        return total

    # -- Laurent clearing and normalization ---------------------------------

    def clear_laurent(self) -> tuple["CommPoly", Exps]:
        """Multiply by the minimal monomial making all exponents >= 0.

        Returns (cleared, shift) where shift[i] is the exponent of
        variables[i] that was multiplied in.
        """
        if not self.terms:
            return self, (0,) * len(self.variables)
        shift = tuple(-min(0, min(e[i] for e in self.terms))
                      for i in range(len(self.variables)))
        if not any(shift):
            return self, shift
        out = {tuple(a + b for a, b in zip(e, shift)): c
               for e, c in self.terms.items()}
        return CommPoly(self.variables, out), shift

    def clear_denominators(self) -> "CommPoly":
        """Scale by the lcm of coefficient denominators (integer output)."""
        lcm = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = c.denominator
                lcm = lcm * d // gcd(lcm, d)
        if lcm == 1:
            return CommPoly(self.variables,
                            {e: int(c) if isinstance(c, Fraction) else c
                             for e, c in self.terms.items()})
        out = {}
        for e, c in self.terms.items():
            v = c * lcm
            out[e] = int(v) if isinstance(v, Fraction) else v
        return CommPoly(self.variables, out)

    def content(self) -> int:
        """gcd of integer coefficients (clear denominators first)."""
        g = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                raise ValueError("content of a non-integer polynomial")
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "CommPoly":
        p = self.clear_denominators()
        g = p.content()
        if g <= 1:
            return p
        return CommPoly(p.variables, {e: c // g for e, c in p.terms.items()})

    def strip_monomial(self) -> tuple["CommPoly", Exps]:
        """Divide out the monomial gcd of all terms (after Laurent clearing)."""
        p, shift = self.clear_laurent()
        if not p.terms:
            return p, shift
        mins = tuple(min(e[i] for e in p.terms)
                     for i in range(len(p.variables)))
        if not any(mins):
            return p, shift
        out = {tuple(a - b for a, b in zip(e, mins)): c
               for e, c in p.terms.items()}
        return CommPoly(p.variables, out), tuple(s - m for s, m in zip(shift, mins))

    def sign_normalized(self) -> "CommPoly":
        """Flip sign so the lexicographically-first term is positive."""
        if not self.terms:
            return self
        first = min(self.terms)
        return self if self.terms[first] > 0 else -self

    # -- printing ------------------------------------------------------------

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}")
                for v, x in zip(self.variables, e) if x)
            if not mono:
                parts.append((c, str(abs(c)) if not isinstance(c, Fraction)
                              else str(abs(c))))
                continue
            if abs(c) == 1:
                parts.append((c, mono))
            else:
                parts.append((c, f"{abs(c)}*{mono}"))
        out = []
        for k, (c, body) in enumerate(parts):
            neg = (c < 0)
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"CommPoly({self.canonical_str()})"


# -- parsing -------------------------------------------------------------


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*()^":
            tokens.append(ch)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
            continue
        raise DomainError(f"unexpected character {ch!r} in polynomial")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], variables: tuple[str, ...]):
        self.toks = tokens
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, t):
        got = self.take()
        if got != t:
            raise DomainError(f"expected {t!r}, got {got!r}")

    def parse_expr(self) -> CommPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = self.parse_term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            acc = acc + self.parse_term() * sign
        return acc

    def parse_term(self) -> CommPoly:
        acc = self.parse_factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                acc = acc * self.parse_factor()
            elif nxt is not None and (nxt[0].isalpha() or nxt[0].isdigit()
                                      or nxt == "("):
                # implicit multiplication: "2la", "la mu", "(x)(y)"
                acc = acc * self.parse_factor()
            else:
                return acc

    def _exponent(self) -> int:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -1
        t = self.take()
        if t is None or not t.isdigit():
            raise DomainError("expected integer exponent")
        return sign * int(t)

    def parse_factor(self) -> CommPoly:
        t = self.take()
        if t is None:
            raise DomainError("unexpected end of polynomial")
        if t == "(":
            inner = self.parse_expr()
            self.expect(")")
            base = inner
        elif t.isdigit():
            base = CommPoly.const(self.variables, int(t))
        elif t[0].isalpha() or t[0] == "_":
            if t not in self.variables:
                raise DomainError(f"unknown variable {t!r}")
            base = None  # defer: may carry a negative exponent
            if self.peek() == "^":
                self.take()
                e = self._exponent()
                return CommPoly.var(self.variables, t, e)
            return CommPoly.var(self.variables, t)
        else:
            raise DomainError(f"unexpected token {t!r}")
        if self.peek() == "^":
            self.take()
            e = self._exponent()
            if e < 0:
                raise DomainError("negative exponent on a non-variable factor")
            return base ** e
        return base


def parse_poly(text: str, variables: tuple[str, ...]) -> CommPoly:
    """Parse 'U - la - mu + la*mu' style text over the given variables."""
    parser = _Parser(_tokenize(text), variables)
    out = parser.parse_expr()
    if parser.peek() is not None:
        raise DomainError(f"trailing input at token {parser.peek()!r}")
    return out


# -- exact division and resultants -----------------------------------------


def _lex_leading(p: CommPoly) -> Exps:
    return max(p.terms)


def exact_div(f: CommPoly, g: CommPoly) -> CommPoly:
    """Exact multivariate division; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    f, g = CommPoly.align(f, g)
    out = CommPoly.zero(f.variables)
    rem = f
    ge = _lex_leading(g)
    gc = g.terms[ge]
    while not rem.is_zero():
        re = _lex_leading(rem)
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in qe):
            raise DomainError("inexact polynomial division")
        qc = Fraction(rem.terms[re]) / Fraction(gc)
        if qc.denominator == 1:
            qc = int(qc)
        t = CommPoly(f.variables, {qe: qc})
        out = out + t
        rem = rem - t * g
    return out


def sylvester_resultant(f: CommPoly, g: CommPoly, name: str) -> CommPoly:
    """Resultant in name via Bareiss elimination of the Sylvester matrix.

    Convention: resultant(x - a, x - b, x) = a - b.
    """
    f, g = CommPoly.align(f, g)
    if name not in f.variables:
        raise DomainError(f"{name} is not a variable of the inputs")
    m = f.degree(name)
    n = g.degree(name)
    if m <= 0 or n <= 0:
        raise DomainError("resultant needs positive degree in the variable")
    if f.min_exponent(name) < 0 or g.min_exponent(name) < 0:
        raise DomainError("clear Laurent exponents before taking resultants")
    fc = [f.coeff_of(name, m - k) for k in range(m + 1)]
    gc = [g.coeff_of(name, n - k) for k in range(n + 1)]
    size = m + n
    zero = CommPoly.zero(f.variables)
    rows = []
    for r in range(n):
        rows.append([zero] * r + fc + [zero] * (n - 1 - r))
    for r in range(m):
        rows.append([zero] * r + gc + [zero] * (m - 1 - r))

    # fraction-free Gaussian elimination
    sign = 1
    prev = CommPoly.const(f.variables, 1)
    for k in range(size - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, size)
                         if not rows[i][k].is_zero()), None)
            if swap is None:
                return zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = piv * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = exact_div(num, prev)
            rows[i][k] = zero
        prev = piv
    det = rows[size - 1][size - 1]
    return det * sign if sign < 0 else det


# -- abelianization ----------------------------------------------------------


def abelianize(p, variables: tuple[str, ...] | None = None) -> CommPoly:
    """Collapse a degree-0 noncommutative polynomial onto commuting variables.

    Chord letters become variables named as they print (a12, ...); homology
    letters become their unit-variable names (mu, mu2, la1, ...); coefficient
    variables pass through.  Letters of nonzero degree are rejected.
    """
    from .ncalg import letter_degree, letter_str

    ring = p.ring
    homology = ("la", "mu")

    def letter_var(l) -> tuple[str, int]:
        if l[0] in homology:
            name = l[0] if l[0] in ring.variables else f"{l[0]}{l[1]}"
            return name, l[2]
        if letter_degree(l) != 0:
            raise DomainError(
                f"abelianize needs a degree-0 input; found {letter_str(l)}")
        return letter_str(l), 1

    if variables is None:
        hom: set[str] = set()
        chords: set[str] = set()
        for word in p.terms:
            for l in word:
                name, _ = letter_var(l)
                if l[0] in homology:
                    hom.add(name)
                else:
                    chords.add(name)
        variables = tuple(ring.variables) + tuple(sorted(hom)) + tuple(sorted(chords))

    out = CommPoly.zero(variables)
    idx = {v: i for i, v in enumerate(variables)}
    for word, coeff in p.terms.items():
        exps = [0] * len(variables)
        for l in word:
            name, e = letter_var(l)
            if name not in idx:
                raise DomainError(f"variable {name} missing from target tuple")
            exps[idx[name]] += e
        base = tuple(exps)
        terms: dict[Exps, object] = {}
        for cexps, k in coeff.items():
            e = list(base)
            for v, x in zip(ring.variables, cexps):
                if x:
                    e[idx[v]] += x
            key = tuple(e)
            terms[key] = terms.get(key, 0) + k
        out = out + CommPoly(variables, terms)
    return out


# -- sympy bridge -----------------------------------------------------------


def to_sympy(p: CommPoly):
    import sympy

    syms = sympy.symbols(p.variables) if p.variables else ()
    if isinstance(syms, sympy.Symbol):
        syms = (syms,)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, x in zip(syms, e):
            if x:
                term = term * s ** x
        expr = expr + term
    return expr


def from_sympy(expr, variables: tuple[str, ...]) -> CommPoly:
    import sympy

    syms = [sympy.Symbol(v) for v in variables]
    expr = sympy.expand(expr)
    poly = sympy.Poly(expr, *syms) if syms else None
    out: dict[Exps, object] = {}
    if poly is None:
        c = sympy.Rational(expr)
        val = Fraction(int(c.p), int(c.q))
        v = int(val) if val.denominator == 1 else val
        return CommPoly.const(variables, v)
    for e, c in poly.terms():
        c = sympy.Rational(c)
        val = Fraction(int(c.p), int(c.q))
        out[tuple(int(x) for x in e)] = int(val) if val.denominator == 1 else val
    return CommPoly(variables, out)
