"""Braid words and their action on chord algebras.

A braid word on ``n`` strands is a sequence of nonzero integers; letter
``k`` (resp. ``-k``) is the positive (negative) half-twist of strands
``k`` and ``k+1``.  The closure of the braid is the link the rest of the
package studies.

The central operation is the action of a braid on the degree-0 chord
letters ``a_ij``: each braid letter acts by an algebra substitution, and a
word acts by composing those substitutions left to right (the first letter
of the word is applied first).  Two algebra modes are supported:

- commuted (default): coefficients commute with everything; the
  substitution rules involve only integer signs.
- noncommutative: each strand carries an invertible meridian letter
  ``mu_i`` that rides along in words; a braid letter swaps the meridian
  letters of the two crossing strands and conjugates some chord images.

``action_matrices`` expresses the action on chords that end (or begin) on
an extra parallel "star" strand as left (right) multiplication by a matrix
over the chord algebra; these matrices drive the differential of the
framed DGA.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError
from .ncalg import (
    CoeffRing,
    NCMatrix,
    NCPoly,
    substitute,
)

# Ring with no coefficient variables: integer coefficients only.
PLAIN_RING = CoeffRing((), ())


class BraidError(DomainError):
    """Malformed braid input."""


@dataclass(frozen=True)
class ComponentMap:
    """Link components of a braid closure.

    Components are numbered 1..r in order of their smallest strand.
    ``writhes[c]`` counts signed crossings where both passing strands
    belong to component ``c`` (self-crossings only).
    """

    component_of: dict[int, int]
    sizes: dict[int, int]
    writhes: dict[int, int]
    leading_strand: dict[int, int]

    @property
    def count(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BraidError(f"strand count must be >= 1, got {self.n}")
        for k in self.letters:
            if k == 0 or abs(k) >= self.n:
                raise BraidError(f"letter {k} out of range for {self.n} strands")

    # -- basic invariants ----------------------------------------------

    def writhe(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """perm[i-1] is the end position of the strand starting at i."""
        pos = list(range(self.n + 1))  # pos[i] = current position of strand i
        for k in self.letters:
            k = abs(k)
            at_k = pos.index(k)
            at_k1 = pos.index(k + 1)
            pos[at_k], pos[at_k1] = k + 1, k
        return tuple(pos[1:])

    def components(self) -> ComponentMap:
        perm = self.permutation()
        comp_of: dict[int, int] = {}
        sizes: dict[int, int] = {}
        leading: dict[int, int] = {}
        c = 0
        for start in range(1, self.n + 1):
            if start in comp_of:
                continue
            c += 1
            leading[c] = start
            size = 0
            i = start
            while i not in comp_of:
                comp_of[i] = c
                size += 1
                i = perm[i - 1]
            sizes[c] = size
        writhes = {alpha: 0 for alpha in sizes}
        strand_at = list(range(self.n + 1))  # strand_at[p] = strand at position p
        for k in self.letters:
            sign = 1 if k > 0 else -1
            p = abs(k)
            s, t = strand_at[p], strand_at[p + 1]
            if comp_of[s] == comp_of[t]:
                writhes[comp_of[s]] += sign
            strand_at[p], strand_at[p + 1] = t, s
        return ComponentMap(comp_of, sizes, writhes, leading)

    def is_knot(self) -> bool:
        return self.components().count == 1

    def self_linking(self) -> int:
        """sl of the transverse closure; defined for knots only."""
        if not self.is_knot():
            raise BraidError("self-linking number requires a one-component closure")
        return self.writhe() - self.n

    # -- word moves ------------------------------------------------------

    def conjugated(self, g: int) -> "BraidWord":
        if g == 0 or abs(g) >= self.n:
            raise BraidError(f"conjugating letter {g} out of range")
        return BraidWord(self.n, (g,) + self.letters + (-g,))

    def stabilized(self, sign: int = 1) -> "BraidWord":
        if sign not in (1, -1):
            raise BraidError("stabilization sign must be +1 or -1")
        return BraidWord(self.n + 1, self.letters + (sign * self.n,))

    def to_text(self) -> str:
        return " ".join(str(k) for k in self.letters)

    def __str__(self) -> str:
        return f"BraidWord(n={self.n}, [{self.to_text()}])"


_TOKEN = re.compile(r"^(-?\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    """Parse a braid word: signed integers, optionally with ^power.

    ``"1 1 1"``, ``"1^3"``, and ``"1,1,1"`` all denote the same word.
    The strand count defaults to one more than the largest letter index
    (minimum 1); pass ``n`` to widen.
    """
    letters: list[int] = []
    for token in text.replace(",", " ").split():
        m = _TOKEN.match(token)
        if not m:
            raise BraidError(f"bad braid token {token!r}")
        k = int(m.group(1))
        if k == 0:
            raise BraidError("0 is not a braid letter")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e < 0:
            k, e = -k, -e
        letters.extend([k] * e)
    width = max((abs(k) + 1 for k in letters), default=1)
    if n is None:
        n = width
    elif n < width:
        raise BraidError(f"strand count {n} too small for letters (need {width})")
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# Generator substitution rules
# ---------------------------------------------------------------------------

def _letter_images(ring: CoeffRing, k: int, sign: int, strands: Iterable[int],
                   noncommutative: bool):
    """Images of chord letters under one braid letter; also meridian renames.

    Only chords touching strands k, k+1 move.  The images were taken from
    the defining substitution (positive letter); the negative-letter images
    are the closed-form inverse, verified by composing the two maps.
    """

    def A(i: int, j: int) -> NCPoly:
        return NCPoly.letter(ring, ("a", i, j))

    def MU(i: int, e: int = 1) -> NCPoly:
        return NCPoly.letter(ring, ("mu", i, e))

    kp = k + 1
    others = [i for i in strands if i != k and i != kp]
    images: dict = {}
    renames: dict = {}
    if noncommutative:
        renames[("mu", k)] = ("mu", kp)
        renames[("mu", kp)] = ("mu", k)
    if sign > 0:
        images[("a", k, kp)] = -A(kp, k)
        if noncommutative:
            images[("a", kp, k)] = -(MU(k) * A(k, kp) * MU(kp, -1))
        else:
            images[("a", kp, k)] = -A(k, kp)
        for i in others:
            images[("a", kp, i)] = A(k, i)
            images[("a", i, kp)] = A(i, k)
            images[("a", k, i)] = A(kp, i) - A(kp, k) * A(k, i)
            if noncommutative and i > kp:
                images[("a", i, k)] = A(i, kp) - A(i, k) * MU(k) * A(k, kp) * MU(kp, -1)
            else:
                images[("a", i, k)] = A(i, kp) - A(i, k) * A(k, kp)
    else:
        images[("a", kp, k)] = -A(k, kp)
        if noncommutative:
            images[("a", k, kp)] = -(MU(kp, -1) * A(kp, k) * MU(k))
        else:
            images[("a", k, kp)] = -A(kp, k)
        for i in others:
            images[("a", k, i)] = A(kp, i)
            images[("a", i, k)] = A(i, kp)
            images[("a", kp, i)] = A(k, i) - A(k, kp) * A(kp, i)
            if noncommutative and i < k:
                images[("a", i, kp)] = A(i, k) - A(i, kp) * MU(kp, -1) * A(kp, k) * MU(k)
            else:
                images[("a", i, kp)] = A(i, k) - A(i, kp) * A(kp, k)
    return images, renames


def act(poly: NCPoly, braid: BraidWord, strands: Iterable[int] | None = None,
        noncommutative: bool = False) -> NCPoly:
    """Image of ``poly`` under the braid action.

    Substitutions for the braid letters are applied left to right in word
    order.  ``strands`` defaults to 1..n; pass a wider set to act on an
    algebra with extra (never-crossed) strands.
    """
    strand_list = tuple(strands) if strands is not None else tuple(range(1, braid.n + 1))
    for k in braid.letters:
        images, renames = _letter_images(poly.ring, abs(k), 1 if k > 0 else -1,
                                         strand_list, noncommutative)
        poly = substitute(poly, images, renames)
    return poly


class ExtractionError(DomainError):
    """The braid image failed to be linear in the star chords."""


def action_matrices(braid: BraidWord, star: str = "high",
                    noncommutative: bool = False,
                    ring: CoeffRing | None = None) -> tuple[NCMatrix, NCMatrix]:
    """Left and right action matrices over the chord algebra.

    With a star strand added (index 0 for ``star='low0'``, index n+1 for
    ``star='high'``), the action sends each chord ending on the star
    strand to a left-linear combination of such chords, and each chord
    beginning on the star strand to a right-linear one:

        act(a_{i s}) = sum_j  left[i][j] a_{j s}
        act(a_{s i}) = sum_j  a_{s j} right[j][i]

    Both matrices are n x n over the chord algebra of strands 1..n.
    """
    if star not in ("high", "low0"):
        raise BraidError(f"unknown star convention {star!r}")
    if ring is None:
        ring = PLAIN_RING
    n = braid.n
    s = 0 if star == "low0" else n + 1
    strand_list = tuple(range(1, n + 1)) + (s,)
    zero = NCPoly.zero(ring)
    left = [[zero for _ in range(n)] for _ in range(n)]
    right = [[zero for _ in range(n)] for _ in range(n)]

    def check_interior(word, skip) -> None:
        for t, l in enumerate(word):
            if t == skip:
                continue
            if l[0] == "a" and (l[1] == s or l[2] == s):
                raise ExtractionError(
                    f"image not linear in star chords: stray {l} in {word}")

    for i in range(1, n + 1):
        img = act(NCPoly.letter(ring, ("a", i, s)), braid, strand_list, noncommutative)
        for word, coeff in img.terms.items():
            if not word or word[-1][0] != "a" or word[-1][2] != s:
                raise ExtractionError(f"word {word} does not end in a star chord")
            check_interior(word, len(word) - 1)
            j = word[-1][1]
            left[i - 1][j - 1] = left[i - 1][j - 1] + NCPoly(ring, {word[:-1]: dict(coeff)})

        img = act(NCPoly.letter(ring, ("a", s, i)), braid, strand_list, noncommutative)
        for word, coeff in img.terms.items():
            if not word or word[0][0] != "a" or word[0][1] != s:
                raise ExtractionError(f"word {word} does not begin with a star chord")
            check_interior(word, 0)
            j = word[0][2]
            right[j - 1][i - 1] = right[j - 1][i - 1] + NCPoly(ring, {word[1:]: dict(coeff)})

    return NCMatrix(ring, left), NCMatrix(ring, right)
