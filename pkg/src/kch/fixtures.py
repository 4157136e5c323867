"""A frozen pair of braids distinguished only by the transverse invariant.

Two braid closures can be the same knot with the same self-linking number
and still be distinct as transverse knots.  The pair stored here is such
an example.  Both words are 4-strand braids of writhe 3, so both closures
have self-linking number -1; both close to the knot 7_6 (up to mirror
image: Alexander polynomial 1 - 5t + 7t^2 - 5t^3 + t^4, determinant 19,
and equal Jones polynomials), and their topological-mode augmentation
counts agree at every prime checked.  The hat-mode counts separate them:
5 versus 0 over F_3, and 19 versus 2 over F_5.

The pair was produced by exhaustive search over 4-strand words of the
right writhe, filtered by Alexander polynomial, deduplicated up to cyclic
rotation (conjugation preserves transverse type), and certified by an
independent Jones polynomial computation.  The counts are frozen here as
regression values.
"""

from dataclasses import dataclass

from .braid import BraidWord

WORD_A = (-2, 1, 1, 3, -2, 1, 3)
WORD_B = (-3, -3, -2, 1, 1, 3, 2, 2, 1)
STRANDS = 4
SELF_LINKING = -1
HAT_COUNTS = {3: (5, 0), 5: (19, 2)}
TOP_COUNT_P3 = 3


@dataclass(frozen=True)
class TransverseFixture:
    word_a: tuple[int, ...]
    word_b: tuple[int, ...]
    n: int
    self_linking: int
    hat_counts: dict

    def braids(self) -> tuple[BraidWord, BraidWord]:
        a = BraidWord(self.n, self.word_a)
        b = BraidWord(self.n, self.word_b)
        for braid in (a, b):
            if not braid.is_knot():
                raise AssertionError("fixture braid must close to a knot")
            if braid.self_linking() != self.self_linking:
                raise AssertionError("fixture self-linking drifted")
        return a, b


def transverse_fixture() -> TransverseFixture:
    """The frozen distinguished pair, with its self-linking guard."""
    return TransverseFixture(WORD_A, WORD_B, STRANDS, SELF_LINKING,
                             dict(HAT_COUNTS))
