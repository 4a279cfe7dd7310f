"""Tests for nilorbits.classical module."""

import pytest
from sympy import Matrix, eye, zeros

from nilorbits.classical import (
    build_e2,
    build_triple,
    check_triple,
    commutator,
    complete_matrix_triple,
    diagram_from_partition,
    diagrams_from_partition,
    divisible_by_diagrams,
    half_partition,
    is_divisible_partition,
    jordan_type,
    minimal_levi,
    partition_height,
    type_of,
    valid_partitions,
    validate_partition,
    verify_e2,
)
from nilorbits.exceptions import (
    EvenPartError,
    InvalidPartitionError,
    InvalidTypeError,
    NotDivisibleError,
    NotNilpotentError,
    PartitionSizeError,
    ZeroElementError,
    ZeroOrbitError,
)
from nilorbits.models import ClassicalAlgebra, Family, Partition
from nilorbits.orbits import diagram_height


def _alg(family: Family, dim_v: int) -> ClassicalAlgebra:
    return ClassicalAlgebra(family=family, dim_v=dim_v)


def _algebras(max_dim: int) -> list[ClassicalAlgebra]:
    algebras = [_alg(Family.SL, n) for n in range(2, max_dim + 1)]
    algebras += [_alg(Family.SP, n) for n in range(2, max_dim + 1, 2)]
    algebras += [_alg(Family.SO, n) for n in range(3, max_dim + 1) if n != 4]
    return algebras


def _nonzero(alg: ClassicalAlgebra) -> list[Partition]:
    return [p for p in valid_partitions(alg) if not p.is_zero]


def _ids(algebras: list[ClassicalAlgebra]) -> list[str]:
    return [str(a) for a in algebras]


def _sweep(max_dim: int, fast_dim: int) -> list:
    """Algebras up to max_dim; those above fast_dim are marked slow."""
    return [
        pytest.param(a, id=str(a), marks=() if a.dim_v <= fast_dim else pytest.mark.slow)
        for a in _algebras(max_dim)
    ]


class TestPartitions:
    """Validity and divisibility of partitions."""

    @pytest.mark.parametrize(
        ("family", "dim_v", "text", "valid"),
        [
            (Family.SL, 4, "2,1,1", True),
            (Family.SP, 4, "3,1", False),
            (Family.SP, 4, "2,1,1", True),
            (Family.SP, 4, "2,2", True),
            (Family.SO, 8, "2,2,1,1,1,1", True),
            (Family.SO, 8, "2,1,1,1,1,1,1", False),
            (Family.SO, 8, "4,4", True),
            (Family.SO, 7, "4,3", False),
        ],
    )
    def test_validate(self, family, dim_v, text, valid):
        assert validate_partition(_alg(family, dim_v), Partition.parse(text)) is valid

    def test_size_mismatch(self, so8):
        with pytest.raises(PartitionSizeError):
            validate_partition(so8, Partition.parse("3,3"))

    @pytest.mark.parametrize(
        ("family", "dim_v", "text", "divisible"),
        [
            (Family.SL, 3, "3", True),
            (Family.SL, 3, "2,1", False),
            (Family.SP, 6, "3,3", True),
            (Family.SO, 8, "5,3", True),
            (Family.SO, 8, "3,3,1,1", True),
            (Family.SO, 8, "7,1", False),
            (Family.SO, 7, "7", False),
            (Family.SO, 7, "5,1,1", False),
            (Family.SO, 9, "5,3,1", True),
            (Family.SO, 10, "5,5", True),
            (Family.SO, 14, "7,7", True),
            (Family.SO, 12, "7,5", False),
        ],
    )
    def test_divisible(self, family, dim_v, text, divisible):
        alg = _alg(family, dim_v)
        assert is_divisible_partition(alg, Partition.parse(text)) is divisible

    def test_divisible_errors(self):
        with pytest.raises(InvalidPartitionError):
            is_divisible_partition(_alg(Family.SP, 4), Partition.parse("3,1"))
        with pytest.raises(ZeroOrbitError):
            is_divisible_partition(_alg(Family.SL, 3), Partition.parse("1,1,1"))

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("5,3", "3,2,2,1"), ("3", "2,1"), ("3,3,1,1", "2,2,1,1,1,1"), ("1,1", "1,1")],
    )
    def test_half_partition(self, text, expected):
        assert half_partition(Partition.parse(text)) == Partition.parse(expected)

    def test_half_partition_even_part(self):
        with pytest.raises(EvenPartError):
            half_partition(Partition.parse("4,1"))

    @pytest.mark.parametrize("alg", _algebras(13), ids=_ids(_algebras(13)))
    def test_criterion_matches_diagrams(self, alg):
        """The partition criterion agrees with halving diagrams, up to dim V = 13."""
        for p in _nonzero(alg):
            match = divisible_by_diagrams(alg, p)
            assert is_divisible_partition(alg, p) is (match is not None), p.text
            if match is not None:
                assert match == half_partition(p)


class TestDiagrams:
    """Weighted diagrams from partitions."""

    @pytest.mark.parametrize(
        ("family", "dim_v", "label"),
        [
            (Family.SL, 5, "A4"),
            (Family.SP, 2, "A1"),
            (Family.SP, 6, "C3"),
            (Family.SO, 3, "A1"),
            (Family.SO, 6, "D3"),
            (Family.SO, 7, "B3"),
            (Family.SO, 8, "D4"),
        ],
    )
    def test_type_of(self, family, dim_v, label):
        assert type_of(_alg(family, dim_v)).label == label

    def test_type_of_not_simple(self):
        with pytest.raises(InvalidTypeError):
            type_of(_alg(Family.SO, 4))

    @pytest.mark.parametrize(
        ("family", "dim_v", "text", "marks"),
        [
            (Family.SL, 3, "3", (2, 2)),
            (Family.SL, 4, "2,1,1", (1, 0, 1)),
            (Family.SP, 4, "2,2", (0, 2)),
            (Family.SO, 7, "3,3,1", (0, 2, 0)),
            (Family.SO, 5, "3,1,1", (2, 0)),
        ],
    )
    def test_diagram(self, family, dim_v, text, marks):
        d = diagram_from_partition(_alg(family, dim_v), Partition.parse(text))
        assert d.marks == marks

    def test_very_even(self, so8):
        diagrams = diagrams_from_partition(so8, Partition.parse("4,4"))
        assert [d.marks for d in diagrams] == [(0, 2, 0, 2), (0, 2, 2, 0)]

    @pytest.mark.parametrize("alg", _algebras(9), ids=_ids(_algebras(9)))
    def test_height(self, alg):
        for p in _nonzero(alg):
            d = diagram_from_partition(alg, p)
            assert partition_height(alg, p) == diagram_height(d), p.text

    def test_zero_height(self, so8):
        with pytest.raises(ZeroOrbitError):
            partition_height(so8, Partition.parse("1,1,1,1,1,1,1,1"))


class TestTriples:
    """Explicit matrix triples and e<2>."""

    @pytest.mark.parametrize("alg", _sweep(13, 8))
    def test_check_triple(self, alg):
        for p in _nonzero(alg):
            results = check_triple(build_triple(alg, p))
            assert all(results.values()), (p.text, results)

    def test_to_json(self):
        t = build_triple(_alg(Family.SL, 3), Partition.parse("2,1"))
        data = t.to_json()
        assert data["algebra"] == "sl(3)"
        assert data["partition"] == [2, 1]
        assert data["blocks"] == [[0, 2], [2, 3]]
        assert data["e"] == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        assert data["h"] == [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
        assert data["phi"] is None

    def test_so_form(self):
        t = build_triple(_alg(Family.SO, 8), Partition.parse("5,3"))
        assert t.phi is not None
        assert t.phi.T == t.phi
        assert t.blocks == [(0, 5), (5, 8)]

    def test_e2_sl(self):
        alg = _alg(Family.SL, 3)
        p = Partition.parse("3")
        t = build_triple(alg, p)
        e2 = build_e2(alg, p, t)
        assert e2 == t.e**2
        assert jordan_type(e2) == Partition.parse("2,1")

    def test_e2_so_interleaved(self):
        """The 5,3 pair of self-dual blocks is not handled block by block."""
        alg = _alg(Family.SO, 8)
        p = Partition.parse("5,3")
        t = build_triple(alg, p)
        e2 = build_e2(alg, p, t)
        assert commutator(t.e, e2).is_zero_matrix
        assert jordan_type(e2) == Partition.parse("3,2,2,1")
        assert (e2.T * t.phi + t.phi * e2).is_zero_matrix

    def test_e2_not_divisible(self, so8):
        p = Partition.parse("7,1")
        with pytest.raises(NotDivisibleError):
            build_e2(so8, p, build_triple(so8, p))
        with pytest.raises(NotDivisibleError):
            verify_e2(so8, p)

    def test_e2_wrong_triple(self, so8):
        t = build_triple(so8, Partition.parse("3,3,1,1"))
        with pytest.raises(InvalidPartitionError):
            build_e2(so8, Partition.parse("5,3"), t)

    @pytest.mark.parametrize("alg", _sweep(13, 11))
    def test_verify_e2(self, alg):
        for p in _nonzero(alg):
            if not is_divisible_partition(alg, p):
                continue
            results = verify_e2(alg, p)
            assert [r.name for r in results] == [
                "form_compatible",
                "weight",
                "characteristic",
                "jordan_type",
                "commutes_with_e",
            ]
            assert all(r.passed for r in results), (p.text, results)


class TestMatrixAlgebra:
    """Generic helpers on matrices."""

    def test_jordan_type(self):
        alg = _alg(Family.SL, 6)
        for p in valid_partitions(alg):
            assert jordan_type(build_triple(alg, p).e) == p

    def test_jordan_type_not_nilpotent(self):
        with pytest.raises(NotNilpotentError):
            jordan_type(eye(3))

    def test_complete_without_h(self):
        t = build_triple(_alg(Family.SP, 6), Partition.parse("4,2"))
        e, h, f = complete_matrix_triple(t.e)
        assert commutator(h, e) == 2 * e
        assert commutator(e, f) == h
        assert commutator(h, f) == -2 * f

    def test_complete_errors(self):
        with pytest.raises(ZeroElementError):
            complete_matrix_triple(zeros(3, 3))
        with pytest.raises(NotNilpotentError):
            complete_matrix_triple(eye(2))


class TestLevi:
    """Minimal Levi subalgebras."""

    @pytest.mark.parametrize(
        ("family", "dim_v", "text", "labels", "divisible"),
        [
            (Family.SL, 6, "3,2,1", ["A2", "A1"], False),
            (Family.SL, 6, "3,3", ["A2", "A2"], True),
            (Family.SO, 8, "3,3,1,1", ["A2"], True),
            (Family.SO, 9, "5,3,1", ["B4"], True),
            (Family.SO, 8, "7,1", ["D4"], False),
            (Family.SP, 6, "2,2,1,1", ["A1"], False),
            (Family.SP, 8, "3,3,2", ["A2", "A1"], False),
            (Family.SP, 6, "4,2", ["C3"], False),
            (Family.SO, 7, "3,1,1,1,1", ["A1"], False),
            (Family.SO, 8, "3,1,1,1,1,1", ["A1", "A1"], False),
            (Family.SO, 10, "3,3,3,1", ["A2", "A1", "A1"], False),
            (Family.SO, 7, "1,1,1,1,1,1,1", [], False),
        ],
    )
    def test_minimal_levi(self, family, dim_v, text, labels, divisible):
        levi = minimal_levi(_alg(family, dim_v), Partition.parse(text))
        assert [f.label for f in levi.factors] == labels
        assert levi.divisible is divisible

    @pytest.mark.parametrize("alg", _algebras(10), ids=_ids(_algebras(10)))
    def test_levi_matches_criterion(self, alg):
        """e is divisible exactly when it is divisible in every Levi factor."""
        for p in _nonzero(alg):
            levi = minimal_levi(alg, p)
            assert levi.divisible is is_divisible_partition(alg, p), p.text


def _centralizer_basis(e) -> list:
    """Basis of the centralizer of e in gl(V)."""
    n = e.rows
    columns = []
    for i in range(n):
        for j in range(n):
            unit = zeros(n, n)
            unit[i, j] = 1
            entries = list(commutator(e, unit))
            columns.append(Matrix(entries))
    system = Matrix.hstack(*columns)
    return [Matrix(n, n, list(v)) for v in system.nullspace()]


class TestDivisibleOrbits:
    """Relations between a divisible orbit and its half."""

    @pytest.mark.parametrize("alg", _algebras(10), ids=_ids(_algebras(10)))
    def test_half_height(self, alg):
        for p in _nonzero(alg):
            if not is_divisible_partition(alg, p):
                continue
            lower = half_partition(p)
            assert 2 * partition_height(alg, lower) == partition_height(alg, p), p.text

    @pytest.mark.parametrize("dim_v", range(2, 9))
    def test_sl_centralizer_inclusion(self, dim_v):
        """In sl(V) everything commuting with e commutes with e<2> = e^2."""
        alg = _alg(Family.SL, dim_v)
        for p in _nonzero(alg):
            if not is_divisible_partition(alg, p):
                continue
            t = build_triple(alg, p)
            e2 = build_e2(alg, p, t)
            for x in _centralizer_basis(t.e):
                assert commutator(e2, x).is_zero_matrix, p.text
