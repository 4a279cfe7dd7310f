"""Simple Lie algebras on a Chevalley basis with integer structure constants.

Basis index ``k < len(roots)`` is the root vector e_gamma for
``gamma = rs.roots[k]``; index ``len(roots) + i`` is the simple coroot h_i.
Structure constants follow the extraspecial-pair construction:
N(alpha, beta) = p + 1 on every extraspecial pair, all others derived from
the triple and quadruple relations, ``[e_gamma, e_-gamma] = h_gamma`` and
N(-alpha, -beta) = -N(alpha, beta).
"""

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from sympy.polys.matrices import DomainMatrix

from . import linalg
from .exceptions import (
    AlgebraError,
    AlgebraMismatchError,
    GradingError,
    GradingMismatchError,
)
from .models import SimpleType, WeightedDiagram
from .rootsys import RootSystem, build_root_system, coroot_coordinates, pairing

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _integral(value: Fraction) -> int:
    if value.denominator != 1:
        raise AlgebraError(f"structure constant {value} is not an integer")
    return int(value)


class AlgebraElement:
    """Exact rational combination of Chevalley basis vectors."""

    __slots__ = ("algebra", "coeffs")

    def __init__(
        self, algebra: "ChevalleyAlgebra", coeffs: Optional[Mapping[int, Scalar]] = None
    ):
        self.algebra = algebra
        self.coeffs: dict[int, Fraction] = {
            k: Fraction(v) for k, v in (coeffs or {}).items() if v
        }

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError(
                "Elements belong to different algebras",
                left=self.algebra.simple_type.label,
                right=other.algebra.simple_type.label,
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        result = dict(self.coeffs)
        for k, v in other.coeffs.items():
            result[k] = result.get(k, Fraction(0)) + v
        return AlgebraElement(self.algebra, result)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "AlgebraElement":
        return AlgebraElement(
            self.algebra, {k: v * scalar for k, v in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [
            f"{v}*{self.algebra.basis_label(k)}" for k, v in sorted(self.coeffs.items())
        ]
        return " + ".join(terms)


@dataclass(frozen=True)
class DefiningElement:
    """Element h_+ of the Cartan subalgebra given by its values on simple roots."""

    simple_type: SimpleType
    values: tuple[Fraction, ...]

    @classmethod
    def from_diagram(cls, d: WeightedDiagram) -> "DefiningElement":
        return cls(d.simple_type, tuple(Fraction(m) for m in d.marks))

    def halved(self) -> "DefiningElement":
        return DefiningElement(self.simple_type, tuple(v / 2 for v in self.values))

    def weight(self, gamma: Sequence[int]) -> Fraction:
        """gamma(h_+) for a vector in simple-root coordinates."""
        return sum((c * v for c, v in zip(gamma, self.values)), Fraction(0))


class ChevalleyAlgebra:
    """Adjoint model of the simple Lie algebra of a root system.

    Basis: root vectors in the order of ``rs.roots``, then the simple coroots.
    Brackets of basis vectors are computed on first use and cached per
    instance; the cached values are shared and must not be mutated.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.simple_type = rs.simple_type
        self.n_roots = len(rs.roots)
        self.dim = self.n_roots + rs.rank
        self._negative = [rs.index_of(tuple(-c for c in r)) for r in rs.roots]
        self._constants = self._structure_constants()
        self._table: dict[tuple[int, int], dict[int, int]] = {}
        logger.debug(
            f"Built Chevalley algebra {self.simple_type} of dimension {self.dim}",
            extra={"simple_type": self.simple_type.label, "dim": self.dim},
        )

    # structure constants

    def _sum_index(self, i: int, j: int) -> Optional[int]:
        total = tuple(a + b for a, b in zip(self.rs.roots[i], self.rs.roots[j]))
        return self.rs.lookup(total)

    def _string_below(self, alpha: int, beta: int) -> int:
        """Largest p with beta - p*alpha a root."""
        a, b = self.rs.roots[alpha], self.rs.roots[beta]
        p = 0
        while self.rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    def _structure_constants(self) -> dict[tuple[int, int], int]:
        rs = self.rs
        n_pos = len(rs.positives)
        norms = [rs.norm(r) for r in rs.roots]
        neg = self._negative
        positive_table: dict[tuple[int, int], int] = {}

        def any_sign(x: int, y: int) -> int:
            if x < n_pos and y < n_pos:
                return positive_table[(x, y)]
            if x >= n_pos and y >= n_pos:
                return -positive_table[(neg[x], neg[y])]
            if x >= n_pos:
                return -any_sign(y, x)
            s = self._sum_index(x, y)
            if s is None:
                raise AlgebraError(f"no root sum for basis pair {(x, y)}")
            z = neg[s]
            if s < n_pos:
                value = norms[z] / norms[x] * -positive_table[(neg[y], neg[z])]
            else:
                value = norms[z] / norms[y] * positive_table[(z, x)]
            return _integral(value)

        for xi in range(n_pos):
            pairs = []
            for a in range(xi):
                b = self._sum_index(a, neg[xi])
                if b is None:
                    continue
                b = neg[b]
                if a < b < n_pos:
                    pairs.append((a, b))
            if not pairs:
                continue
            alpha, beta = min(pairs)
            n_extra = self._string_below(alpha, beta) + 1
            positive_table[(alpha, beta)] = n_extra
            positive_table[(beta, alpha)] = -n_extra
            for gamma, delta in pairs:
                if (gamma, delta) == (alpha, beta):
                    continue
                total = Fraction(0)
                bg = self._sum_index(beta, neg[gamma])
                if bg is not None:
                    total += (
                        Fraction(any_sign(beta, neg[gamma]) * any_sign(alpha, neg[delta]))
                        / norms[bg]
                    )
                ag = self._sum_index(alpha, neg[gamma])
                if ag is not None:
                    total += (
                        Fraction(any_sign(neg[gamma], alpha) * any_sign(beta, neg[delta]))
                        / norms[ag]
                    )
                value = _integral(norms[xi] / n_extra * total)
                positive_table[(gamma, delta)] = value
                positive_table[(delta, gamma)] = -value

        constants: dict[tuple[int, int], int] = {}
        for i in range(self.n_roots):
            for j in range(self.n_roots):
                if self._sum_index(i, j) is not None:
                    constants[(i, j)] = any_sign(i, j)
        return constants

    # basis

    def basis_label(self, k: int) -> str:
        if k < self.n_roots:
            return "e[" + ",".join(str(c) for c in self.rs.roots[k]) + "]"
        return f"h{k - self.n_roots + 1}"

    def root_vector(self, gamma: Sequence[int]) -> AlgebraElement:
        return AlgebraElement(self, {self.rs.index_of(gamma): 1})

    def cartan_vector(self, i: int) -> AlgebraElement:
        """Simple coroot h_i (0-based)."""
        return AlgebraElement(self, {self.n_roots + i: 1})

    def element(self, coeffs: Optional[Mapping[int, Scalar]] = None) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self)

    def structure_constant(self, gamma: Sequence[int], delta: Sequence[int]) -> int:
        """N(gamma, delta); zero when gamma + delta is not a root."""
        key = (self.rs.index_of(gamma), self.rs.index_of(delta))
        return self._constants.get(key, 0)

    def coroot_element(self, k: int) -> dict[int, int]:
        """h_gamma for the root with index k, in the coroot basis."""
        coords = coroot_coordinates(self.rs, self.rs.roots[k])
        return {self.n_roots + i: c for i, c in enumerate(coords) if c}

    def bracket_basis(self, i: int, j: int) -> Mapping[int, int]:
        """[b_i, b_j] on basis vectors, read-only."""
        key = (i, j)
        cached = self._table.get(key)
        if cached is not None:
            return cached
        n = self.n_roots
        result: dict[int, int]
        if i >= n and j >= n:
            result = {}
        elif i >= n:
            c = pairing(self.rs, self.rs.roots[j], i - n)
            result = {j: c} if c else {}
        elif j >= n:
            c = pairing(self.rs, self.rs.roots[i], j - n)
            result = {i: -c} if c else {}
        elif self._negative[i] == j:
            result = self.coroot_element(i)
        else:
            k = self._sum_index(i, j)
            result = {k: self._constants[(i, j)]} if k is not None else {}
        self._table[key] = result
        return result

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        a._check(b)
        result: dict[int, Fraction] = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                for k, c in self.bracket_basis(i, j).items():
                    result[k] = result.get(k, Fraction(0)) + ca * cb * c
        return AlgebraElement(self, result)

    def ad_matrix(self, x: AlgebraElement) -> DomainMatrix:
        """Matrix of ad x; column k holds [x, b_k]."""
        columns: list[dict[int, Fraction]] = []
        for k in range(self.dim):
            column: dict[int, Fraction] = {}
            for i, c in x.coeffs.items():
                for target, n in self.bracket_basis(i, k).items():
                    column[target] = column.get(target, Fraction(0)) + c * n
            columns.append(column)
        return linalg.matrix_from_columns(columns, self.dim)

    def ad_columns(
        self,
        x: Mapping[int, Scalar],
        sources: Sequence[int],
        targets: Sequence[int],
    ) -> list[dict[int, Scalar]]:
        """Columns of ad x from span(sources) into span(targets).

        Column j holds [x, b_{sources[j]}] in the positions of ``targets``.

        Raises:
            GradingMismatchError: if some bracket leaves span(targets)
        """
        position = {k: r for r, k in enumerate(targets)}
        columns: list[dict[int, Scalar]] = []
        for k in sources:
            column: dict[int, Scalar] = {}
            for i, c in x.items():
                for target, n in self.bracket_basis(i, k).items():
                    r = position.get(target)
                    if r is None:
                        raise GradingMismatchError(
                            f"[x, {self.basis_label(k)}] has a component "
                            f"on {self.basis_label(target)} outside the target",
                            simple_type=self.simple_type.label,
                        )
                    column[r] = column.get(r, 0) + c * n
            columns.append(column)
        return columns

    def jacobi_defect(self, i: int, j: int, k: int) -> AlgebraElement:
        """[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]."""
        basis = [self.element({t: 1}) for t in (i, j, k)]
        a, b, c = basis
        return (
            self.bracket(self.bracket(a, b), c)
            + self.bracket(self.bracket(b, c), a)
            + self.bracket(self.bracket(c, a), b)
        )

    # gradings

    def grading_weights(self, h: DefiningElement) -> tuple[int, ...]:
        """Integer eigenvalue of ad h on each basis vector."""
        weights = []
        for gamma in self.rs.roots:
            w = h.weight(gamma)
            if w.denominator != 1:
                raise GradingError(
                    f"gamma(h) = {w} is not an integer for gamma = {gamma}",
                    simple_type=self.simple_type.label,
                )
            weights.append(int(w))
        return tuple(weights) + (0,) * self.rs.rank

    def defining_vector(self, h: DefiningElement) -> AlgebraElement:
        """h_+ as an element of the Cartan subalgebra."""
        rank = self.rs.rank
        system = linalg.matrix_from_dense(
            [[self.rs.cartan[j][i] for i in range(rank)] for j in range(rank)]
        )
        coords = linalg.solve(system, dict(enumerate(h.values)))
        if coords is None:
            raise AlgebraError("Cartan matrix is singular")
        return AlgebraElement(self, {self.n_roots + i: c for i, c in coords.items()})

    def elements(self, indices: Sequence[int]) -> Iterator[AlgebraElement]:
        for k in indices:
            yield AlgebraElement(self, {k: 1})


@lru_cache(maxsize=None)
def build_algebra(t: SimpleType) -> ChevalleyAlgebra:
    """Cached Chevalley algebra of type ``t``."""
    return ChevalleyAlgebra(build_root_system(t))


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Exact Lie bracket [a, b]."""
    return a.algebra.bracket(a, b)


def ad_matrix(x: AlgebraElement) -> DomainMatrix:
    """Exact matrix of ad x on the Chevalley basis."""
    return x.algebra.ad_matrix(x)


def graded_piece(alg: ChevalleyAlgebra, h: DefiningElement, i: int) -> list[int]:
    """Basis indices spanning g(i) = {x : [h, x] = i x}."""
    weights = alg.grading_weights(h)
    return [k for k, w in enumerate(weights) if w == i]
