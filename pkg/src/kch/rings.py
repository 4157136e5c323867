"""Commutative target rings for evaluation and linear algebra.

Each ring wraps plain Python values: integers for Z and F_p (residues kept
in 0..p-1), Fraction for Q, and {exponent: Fraction} dicts for Laurent
polynomials Q[t^{+-1}].  The interface is the small protocol the rest of
the package needs: add/neg/mul, 0/1, integer embedding, unit test and
inverse, and exact division where the ring supports it.
"""

from __future__ import annotations

from fractions import Fraction


class IntegerRing:
    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k: int):
        return k

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def units(self):
        return [1, -1]


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"not a prime: {p}")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k: int):
        return k % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def is_unit(self, x) -> bool:
        return x % self.p != 0

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("0 is not a unit")
        return pow(x, self.p - 2, self.p)

    def units(self):
        return list(range(1, self.p))

    def elements(self):
        return list(range(self.p))


class RationalField:
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k: int):
        return Fraction(k)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        return 1 / Fraction(x)


class LaurentRing:
    """Q[t^{+-1}]: sparse {exponent: Fraction} dicts, zero coefficients dropped."""

    name = "Q[t,t^-1]"

    def zero(self):
        return {}

    def one(self):
        return {0: Fraction(1)}

    def t(self, e: int = 1):
        return {e: Fraction(1)}

    def from_int(self, k: int):
        return {0: Fraction(k)} if k else {}

    def from_fraction(self, q: Fraction):
        return {0: Fraction(q)} if q else {}

    def add(self, x, y):
        out = dict(x)
        for e, c in y.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return out

    def neg(self, x):
        return {e: -c for e, c in x.items()}

    def mul(self, x, y):
        out: dict = {}
        for ex, cx in x.items():
            for ey, cy in y.items():
                e = ex + ey
                s = out.get(e, Fraction(0)) + cx * cy
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return out

    def is_zero(self, x) -> bool:
        return not x

    def is_unit(self, x) -> bool:
        return len(x) == 1

    def inv(self, x):
        if len(x) != 1:
            raise ZeroDivisionError("not a unit in Q[t,t^-1]")
        (e, c), = x.items()
        return {-e: 1 / c}

    def to_str(self, x) -> str:
        if not x:
            return "0"
        parts = []
        for e in sorted(x):
            c = x[e]
            if e == 0:
                body = str(c)
            else:
                te = "t" if e == 1 else f"t^{e}"
                body = te if abs(c) == 1 else f"{abs(c)}*{te}"
                if c < 0 and abs(c) == 1:
                    body = te
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)


ZZ = IntegerRing()
QQ = RationalField()
LAURENT_Q = LaurentRing()
