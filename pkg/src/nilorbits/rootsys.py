"""Root systems of the simple types A-G in simple-root coordinates.

Nodes follow Bourbaki's numbering. Roots are integer tuples of coefficients
over the simple roots, the invariant form is an exact rational Gram matrix
normalized so that the highest root has square length 2.

Conventions:
    - ``cartan[i][j] = <alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j)``
    - ``roots`` lists the positive roots by height, simple roots in node
      order first within a height, and then
      their negatives in the same order.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .exceptions import InvalidTypeError, NotARootError
from .models import SimpleType

logger = logging.getLogger(__name__)

Root = tuple[int, ...]
Edge = tuple[int, int]

# Bourbaki node (0-based) sitting at each position of the Vinberg-Onishchik order.
_VO_ORDER: dict[str, tuple[int, ...]] = {
    "E6": (5, 4, 3, 2, 0, 1),
    "E7": (6, 5, 4, 3, 2, 0, 1),
    "E8": (7, 6, 5, 4, 3, 2, 0, 1),
    "F4": (3, 2, 1, 0),
    "G2": (0, 1),
}


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Complete root data of one simple type."""

    simple_type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    positives: tuple[int, ...]
    highest_root: Root
    form: tuple[tuple[Fraction, ...], ...]
    _index: dict[Root, int] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @property
    def dim(self) -> int:
        """Dimension of the Lie algebra, |roots| + rank."""
        return len(self.roots) + self.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.roots[:self.rank])

    def index_of(self, gamma: Sequence[int]) -> int:
        """Position of ``gamma`` in ``roots``."""
        try:
            return self._index[tuple(gamma)]
        except KeyError:
            raise NotARootError(
                f"{tuple(gamma)} is not a root of {self.simple_type}",
                simple_type=self.simple_type.label,
            ) from None

    def is_root(self, gamma: Sequence[int]) -> bool:
        return tuple(gamma) in self._index

    def lookup(self, gamma: Sequence[int]) -> Optional[int]:
        """Position of ``gamma`` in ``roots`` or None."""
        return self._index.get(tuple(gamma))

    def norm(self, gamma: Sequence[int]) -> Fraction:
        """Square length (gamma, gamma)."""
        return form_value(self, gamma, gamma)


def _chain(rank: int) -> list[Edge]:
    return [(i, i + 1) for i in range(rank - 1)]


def _nodes_a(rank: int) -> tuple[list[Fraction], list[Edge]]:
    return [Fraction(2)] * rank, _chain(rank)


def _nodes_b(rank: int) -> tuple[list[Fraction], list[Edge]]:
    return [Fraction(2)] * (rank - 1) + [Fraction(1)], _chain(rank)


def _nodes_c(rank: int) -> tuple[list[Fraction], list[Edge]]:
    return [Fraction(1)] * (rank - 1) + [Fraction(2)], _chain(rank)


def _nodes_d(rank: int) -> tuple[list[Fraction], list[Edge]]:
    edges = _chain(rank - 1) + [(rank - 3, rank - 1)]
    return [Fraction(2)] * rank, edges


def _nodes_e(rank: int) -> tuple[list[Fraction], list[Edge]]:
    # 1-3-4-...-n with 2 attached to 4
    edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
    return [Fraction(2)] * rank, edges


def _nodes_f(rank: int) -> tuple[list[Fraction], list[Edge]]:
    return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)], _chain(rank)


def _nodes_g(rank: int) -> tuple[list[Fraction], list[Edge]]:
    # alpha_1 short
    return [Fraction(1), Fraction(3)], _chain(rank)


_NODE_DATA: dict[str, Callable[[int], tuple[list[Fraction], list[Edge]]]] = {
    "A": _nodes_a,
    "B": _nodes_b,
    "C": _nodes_c,
    "D": _nodes_d,
    "E": _nodes_e,
    "F": _nodes_f,
    "G": _nodes_g,
}


def _gram_matrix(t: SimpleType) -> list[list[Fraction]]:
    lengths, edges = _NODE_DATA[t.series](t.rank)
    gram = [[Fraction(0)] * t.rank for _ in range(t.rank)]
    for i, d in enumerate(lengths):
        gram[i][i] = d
    for i, j in edges:
        value = -max(lengths[i], lengths[j]) / 2
        gram[i][j] = gram[j][i] = value
    return gram


def _bilinear(gram: Sequence[Sequence[Fraction]], x: Sequence[int], y: Sequence[int]) -> Fraction:
    return sum(
        (x[i] * gram[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j]),
        Fraction(0),
    )


def _close_under_reflections(
    cartan: Sequence[Sequence[int]], rank: int
) -> set[Root]:
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found: set[Root] = set(simple)
    frontier = list(simple)
    while frontier:
        next_frontier = []
        for gamma in frontier:
            for i in range(rank):
                c = sum(gamma[j] * cartan[j][i] for j in range(rank))
                if c == 0:
                    continue
                image = tuple(g - c * int(k == i) for k, g in enumerate(gamma))
                if image not in found:
                    found.add(image)
                    next_frontier.append(image)
        frontier = next_frontier
    return found


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    """Generate the full root system of ``t``.

    Args:
        t: the Cartan type

    Returns:
        RootSystem with exact normalized form

    Raises:
        InvalidTypeError: if ``t`` has no root data
    """
    if t.series not in _NODE_DATA:
        raise InvalidTypeError(f"No root data for {t}", series=t.series)
    gram = _gram_matrix(t)
    rank = t.rank
    cartan = tuple(
        tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(rank)) for i in range(rank)
    )
    closure = _close_under_reflections(cartan, rank)
    positive = sorted(
        (r for r in closure if all(c >= 0 for c in r)), key=lambda r: (sum(r), tuple(-c for c in r))
    )
    roots = tuple(positive) + tuple(tuple(-c for c in r) for r in positive)
    highest = positive[-1]
    scale = Fraction(2) / _bilinear(gram, highest, highest)
    form = tuple(tuple(scale * g for g in row) for row in gram)
    logger.debug(
        f"Built root system {t}: {len(roots)} roots, highest root {highest}",
        extra={"simple_type": t.label},
    )
    return RootSystem(
        simple_type=t,
        cartan=cartan,
        roots=roots,
        positives=tuple(range(len(positive))),
        highest_root=highest,
        form=form,
        _index={r: k for k, r in enumerate(roots)},
    )


def root_height(rs: RootSystem, gamma: Sequence[int]) -> int:
    """Sum of the simple-root coordinates of a root."""
    rs.index_of(gamma)
    return sum(gamma)


def form_value(rs: RootSystem, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Normalized invariant form on vectors in simple-root coordinates."""
    return _bilinear(rs.form, x, y)


def pairing(rs: RootSystem, gamma: Sequence[int], i: int) -> int:
    """Cartan integer <gamma, alpha_i^vee>."""
    return sum(gamma[j] * rs.cartan[j][i] for j in range(rs.rank))


def coroot_coordinates(rs: RootSystem, gamma: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of gamma^vee over the simple coroots."""
    norm = rs.norm(gamma)
    coords = []
    for i in range(rs.rank):
        c = gamma[i] * rs.form[i][i] / norm
        if c.denominator != 1:
            raise NotARootError(f"{tuple(gamma)} has no integral coroot")
        coords.append(int(c))
    return tuple(coords)


def numbering_permutation(t: SimpleType) -> tuple[int, ...]:
    """Bourbaki node at each position of the Vinberg-Onishchik order."""
    return _VO_ORDER.get(t.label, tuple(range(t.rank)))


def to_vo(marks: Sequence[int], t: SimpleType) -> tuple[int, ...]:
    """Reorder Bourbaki marks into Vinberg-Onishchik order."""
    return tuple(marks[b] for b in numbering_permutation(t))


def from_vo(marks: Sequence[int], t: SimpleType) -> tuple[int, ...]:
    """Reorder Vinberg-Onishchik marks into Bourbaki order."""
    result = [0] * t.rank
    for position, node in enumerate(numbering_permutation(t)):
        result[node] = marks[position]
    return tuple(result)
