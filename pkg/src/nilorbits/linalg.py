"""Exact linear algebra helpers over the rationals.

Matrices are ``sympy.polys.matrices.DomainMatrix`` objects over ``QQ`` in
sparse format; vectors are sparse ``{index: Fraction}`` dictionaries. A numpy
rank screen modulo a prime is available for fast rejection, but every
decision that reaches a caller is taken over ``QQ``.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
SparseVector = dict[int, Fraction]

MODULAR_PRIME = 2_147_483_647


def to_qq(value: Scalar) -> Any:
    """Convert an int or Fraction into a ``QQ`` element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    """Convert a ``QQ`` element back into a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


def matrix_from_columns(
    columns: Sequence[Mapping[int, Scalar]], nrows: int
) -> DomainMatrix:
    """Sparse matrix whose j-th column is ``columns[j]``."""
    rows: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows.setdefault(i, {})[j] = to_qq(value)
    return DomainMatrix(rows, (nrows, len(columns)), QQ)


def matrix_from_rows(rows: Sequence[Mapping[int, Scalar]], ncols: int) -> DomainMatrix:
    """Sparse matrix whose i-th row is ``rows[i]``."""
    data: dict[int, dict[int, Any]] = {}
    for i, row in enumerate(rows):
        entries = {j: to_qq(v) for j, v in row.items() if v}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), ncols), QQ)


def matrix_from_dense(rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    """Sparse ``QQ`` matrix from a list of lists."""
    ncols = len(rows[0]) if rows else 0
    return matrix_from_rows([dict(enumerate(row)) for row in rows], ncols)


def entries(matrix: DomainMatrix) -> dict[int, dict[int, Fraction]]:
    """Nonzero entries as ``{row: {col: Fraction}}``."""
    return {
        i: {j: from_qq(v) for j, v in row.items()}
        for i, row in matrix.to_sparse().rep.items()
    }


def column(matrix: DomainMatrix, j: int) -> SparseVector:
    """The j-th column as a sparse vector."""
    return {i: row[j] for i, row in entries(matrix).items() if j in row}


def shifted(matrix: DomainMatrix, shift: Scalar) -> DomainMatrix:
    """``matrix + shift * I`` for a square matrix."""
    n = matrix.shape[0]
    data = entries(matrix)
    for i in range(n):
        value = data.setdefault(i, {}).get(i, Fraction(0)) + Fraction(shift)
        if value:
            data[i][i] = value
        else:
            data[i].pop(i, None)
    return matrix_from_rows([data.get(i, {}) for i in range(n)], n)


def rank(matrix: DomainMatrix) -> int:
    """Exact rank over QQ."""
    if 0 in matrix.shape:
        return 0
    return int(matrix.rank())


def nullspace(matrix: DomainMatrix) -> list[SparseVector]:
    """Basis of ``{x : matrix x = 0}`` as sparse vectors."""
    nrows, ncols = matrix.shape
    if ncols == 0:
        return []
    if nrows == 0 or matrix.is_zero_matrix:
        return [{j: Fraction(1)} for j in range(ncols)]
    basis = matrix.nullspace()
    return [entries(basis).get(i, {}) for i in range(basis.shape[0])]


def solve(matrix: DomainMatrix, rhs: Mapping[int, Scalar]) -> Optional[SparseVector]:
    """One solution of ``matrix x = rhs``, or None when inconsistent."""
    nrows, ncols = matrix.shape
    data = entries(matrix)
    for i, value in rhs.items():
        if value:
            data.setdefault(i, {})[ncols] = Fraction(value)
    augmented = matrix_from_rows([data.get(i, {}) for i in range(nrows)], ncols + 1)
    if nrows == 0:
        return {} if not any(rhs.values()) else None
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        return None
    reduced_rows = entries(reduced)
    solution: SparseVector = {}
    for r, c in enumerate(pivots):
        value = reduced_rows.get(r, {}).get(ncols, Fraction(0))
        if value:
            solution[c] = value
    return solution


def integer_rows(columns: Sequence[Mapping[int, Scalar]], nrows: int) -> list[list[int]]:
    """Dense integer rows from sparse integral columns."""
    rows = [[0] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, value in col.items():
            rows[i][j] = int(value)
    return rows


def modular_rank(rows: Sequence[Sequence[int]], prime: int = MODULAR_PRIME) -> int:
    """Rank of an integer matrix modulo ``prime`` (a lower bound for the QQ rank)."""
    if not rows or not rows[0]:
        return 0
    work = np.array([[x % prime for x in row] for row in rows], dtype=np.int64)
    nrows, ncols = work.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        candidates = np.nonzero(work[r:, col])[0]
        if candidates.size == 0:
            continue
        pivot = r + int(candidates[0])
        if pivot != r:
            work[[r, pivot]] = work[[pivot, r]]
        inverse = pow(int(work[r, col]), prime - 2, prime)
        work[r] = (work[r] * inverse) % prime
        below = work[r + 1 :, col]
        hits = np.nonzero(below)[0]
        if hits.size:
            targets = r + 1 + hits
            work[targets] = (work[targets] - np.outer(work[targets, col], work[r])) % prime
        r += 1
    return r


class ExactSpan:
    """Row space over QQ grown incrementally from sparse vectors."""

    def __init__(self, ncols: int, chunk_size: int = 256):
        self.ncols = ncols
        self.chunk_size = chunk_size
        self._basis: list[SparseVector] = []

    @property
    def dim(self) -> int:
        return len(self._basis)

    @property
    def basis(self) -> list[SparseVector]:
        return list(self._basis)

    def _absorb(self, chunk: list[SparseVector]) -> None:
        matrix = matrix_from_rows(self._basis + chunk, self.ncols)
        reduced, pivots = matrix.rref()
        reduced_rows = entries(reduced)
        self._basis = [reduced_rows.get(r, {}) for r in range(len(pivots))]

    def extend(self, vectors: Iterable[Mapping[int, Scalar]], stop_at: Optional[int] = None) -> int:
        """Add vectors; returns the new dimension.

        Stops consuming ``vectors`` once the dimension reaches ``stop_at``.
        """
        chunk: list[SparseVector] = []
        for vector in vectors:
            if stop_at is not None and self.dim >= stop_at:
                break
            sparse = {i: Fraction(v) for i, v in vector.items() if v}
            if sparse:
                chunk.append(sparse)
            if len(chunk) >= self.chunk_size:
                self._absorb(chunk)
                chunk = []
        if chunk and (stop_at is None or self.dim < stop_at):
            self._absorb(chunk)
        return self.dim

    def contains(self, vector: Mapping[int, Scalar]) -> bool:
        if not any(vector.values()):
            return True
        extended = matrix_from_rows([*self._basis, dict(vector)], self.ncols)
        return rank(extended) == self.dim
