"""Invariant combinatorics of the SL3 model algebra.

The simple module R(a, b) has a monomial basis of its U_theta-invariants
m(i, j) = x1^i x2^(a-i) xi2^(b-j) xi3^j with 0 <= i <= a and 0 <= j <= b.
e1 raises i, e2 raises j, and m(0, 0) generates everything. The same array
gives the branching of R(a, b) to the sl2 of the highest root: R_k occurs once for
every (i, j) with i + j = k.
"""

import logging
from collections import deque
from typing import NamedTuple, Optional

from pydantic import BaseModel, Field

from .exceptions import ArrayIndexError, NegativeWeightError

logger = logging.getLogger(__name__)


class Monomial(NamedTuple):
    """Exponents of x1, x2, xi2, xi3."""

    x1: int
    x2: int
    xi2: int
    xi3: int


def _check_weight(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise NegativeWeightError(f"highest weight ({a}, {b}) has a negative entry", a=a, b=b)


class MonomialArray(BaseModel):
    """The (a+1) x (b+1) array of invariant monomials of R(a, b)."""

    a: int = Field(ge=0)
    b: int = Field(ge=0)

    @classmethod
    def build(cls, a: int, b: int) -> "MonomialArray":
        """Create the array; raises NegativeWeightError for a or b < 0."""
        _check_weight(a, b)
        return cls(a=a, b=b)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a + 1, self.b + 1

    def __len__(self) -> int:
        return (self.a + 1) * (self.b + 1)

    def in_range(self, i: int, j: int) -> bool:
        return 0 <= i <= self.a and 0 <= j <= self.b

    def entry(self, i: int, j: int) -> Monomial:
        """m(i, j)."""
        if not self.in_range(i, j):
            raise ArrayIndexError(
                f"({i}, {j}) is outside the {self.a + 1} x {self.b + 1} array", i=i, j=j
            )
        return Monomial(i, self.a - i, self.b - j, j)

    def entries(self) -> list[Monomial]:
        return [self.entry(i, j) for i in range(self.a + 1) for j in range(self.b + 1)]

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


def invariant_dim(a: int, b: int) -> int:
    """dim R(a, b)^{U_theta} = (a+1)(b+1)."""
    _check_weight(a, b)
    return (a + 1) * (b + 1)


def weyl_dimension(a: int, b: int) -> int:
    """dim R(a, b) = (a+1)(b+1)(a+b+2)/2."""
    _check_weight(a, b)
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def branching_multiplicity(a: int, b: int, k: int) -> int:
    """Multiplicity of R_k in R(a, b) restricted to the sl2 of theta."""
    _check_weight(a, b)
    if k < 0 or k > a + b:
        return 0
    return sum(1 for i in range(a + 1) if 0 <= k - i <= b)


def branching_profile(a: int, b: int) -> list[int]:
    """Multiplicities of R_0, ..., R_{a+b}."""
    return [branching_multiplicity(a, b, k) for k in range(a + b + 1)]


def act_e1(arr: MonomialArray, i: int, j: int) -> Optional[Monomial]:
    """e1 m(i, j) = m(i+1, j), zero (None) for i = a."""
    arr.entry(i, j)
    return arr.entry(i + 1, j) if i < arr.a else None


def act_e2(arr: MonomialArray, i: int, j: int) -> Optional[Monomial]:
    """e2 m(i, j) = m(i, j+1), zero (None) for j = b."""
    arr.entry(i, j)
    return arr.entry(i, j + 1) if j < arr.b else None


def is_cyclic(arr: MonomialArray) -> bool:
    """Whether every m(i, j) is reached from m(0, 0) by e1 and e2."""
    seen = {(0, 0)}
    queue = deque([(0, 0)])
    while queue:
        i, j = queue.popleft()
        for di, dj, act in ((1, 0, act_e1), (0, 1, act_e2)):
            if act(arr, i, j) is not None and (i + di, j + dj) not in seen:
                seen.add((i + di, j + dj))
                queue.append((i + di, j + dj))
    logger.debug(f"m(0,0) reaches {len(seen)} of {len(arr)} entries of R({arr.a},{arr.b})")
    return len(seen) == len(arr)
