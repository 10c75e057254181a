"""Involutivity bookkeeping for the lifted contact coframe in n variables.

Exact integer arithmetic only: the reduced characters, the degree of
indeterminacy, and the identity between them that constitutes the Cartan
test.  The closed form for the degree of indeterminacy is cross-checked
against the weighted character sum, which is its own consistency proof.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "CharacterTable",
    "reduced_characters",
    "degree_of_indeterminacy",
    "cartan_test_identity",
    "character_table",
]


@dataclass(frozen=True)
class CharacterTable:
    n: int
    characters: tuple
    r1: int

    @property
    def weighted_sum(self) -> int:
        return sum(i * s for i, s in enumerate(self.characters, start=1))


def reduced_characters(n: int) -> tuple:
    """The 2n+1 reduced characters s'_1 >= ... >= s'_{2n+1}.

    s'_i = (n+1)(n+4)/2 - i for i = 1..n+1, then
    s'_{n+1+j} = (n+1-j)(n+2-j)/2 for j = 1..n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    head = ((n + 1) * (n + 4)) // 2
    assert (n + 1) * (n + 4) % 2 == 0
    out = [head - i for i in range(1, n + 2)]
    for j in range(1, n + 1):
        prod = (n + 1 - j) * (n + 2 - j)
        assert prod % 2 == 0
        out.append(prod // 2)
    return tuple(out)


def degree_of_indeterminacy(n: int) -> int:
    """(n+1)(n+2)(11n^2+29n+12)/24, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prod = (n + 1) * (n + 2) * (11 * n * n + 29 * n + 12)
    q, r = divmod(prod, 24)
    assert r == 0, "closed form is not integral"
    return q


def cartan_test_identity(n: int) -> bool:
    """True iff the degree of indeterminacy equals sum_i i*s'_i."""
    chars = reduced_characters(n)
    return degree_of_indeterminacy(n) == sum(
        i * s for i, s in enumerate(chars, start=1)
    )


def character_table(n: int) -> CharacterTable:
    return CharacterTable(n, reduced_characters(n), degree_of_indeterminacy(n))
