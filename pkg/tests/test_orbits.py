"""Tests for nilorbits.orbits module."""

from fractions import Fraction

import pytest

from nilorbits.chevalley import DefiningElement, bracket, build_algebra
from nilorbits.classical import diagrams_from_partition, type_of, valid_partitions
from nilorbits.exceptions import InvalidDiagramError, NotEvenError
from nilorbits.models import (
    ClassicalAlgebra,
    EvidenceClass,
    Family,
    SimpleType,
    WeightedDiagram,
)
from nilorbits.orbits import (
    diagram_height,
    dynkin_index,
    enumerate_orbits,
    friendly_pairs,
    graded_centralizer_dims,
    graded_dims,
    half,
    is_characteristic,
    is_divisible,
    orbit_record,
    prefilter,
    require_characteristic,
)
from nilorbits.reference import reference_pairs, upper_diagram


def _diagram(label: str, *marks: int) -> WeightedDiagram:
    return WeightedDiagram(simple_type=SimpleType.parse(label), marks=marks)


class TestIsCharacteristic:
    """Validity of weighted diagrams."""

    def test_regular_witness(self, regular_a2):
        certificate = is_characteristic(regular_a2)
        assert certificate
        assert certificate.evidence_class is EvidenceClass.WITNESS
        alg = build_algebra(regular_a2.simple_type)
        h = alg.defining_vector(DefiningElement.from_diagram(regular_a2))
        assert bracket(certificate.e, certificate.f) == h
        assert bracket(h, certificate.e) == 2 * certificate.e
        assert bracket(h, certificate.f) == -2 * certificate.f

    def test_zero_orbit(self, a2):
        certificate = is_characteristic(WeightedDiagram.zero(a2))
        assert certificate.valid
        assert certificate.reason == "zero orbit"
        assert certificate.e.is_zero

    def test_prefilter_rejection(self):
        d = _diagram("A2", 2, 1)
        assert prefilter(d) == "dim g(3) - dim g(5) is odd"
        certificate = is_characteristic(d)
        assert not certificate
        assert certificate.evidence_class is EvidenceClass.OBSTRUCTION

    def test_obstruction_after_rank_screen(self):
        """(2,0,0) passes the dimension tests but h_+ is not in [e, g(-2)]."""
        d = _diagram("A3", 2, 0, 0)
        assert prefilter(d) is None
        certificate = is_characteristic(d)
        assert not certificate.valid
        assert certificate.evidence_class is EvidenceClass.OBSTRUCTION
        assert certificate.rank == certificate.target_dim == 3
        assert certificate.e is not None
        assert certificate.f is None

    @pytest.mark.parametrize("seed", [0, 1, 12345])
    def test_seed_independent(self, seed, f4_a2):
        assert is_characteristic(f4_a2, seed=seed, trials=2).valid

    def test_require_characteristic(self):
        with pytest.raises(InvalidDiagramError) as info:
            require_characteristic(_diagram("A2", 2, 1))
        assert info.value.details["diagram"] == "2,1"


class TestEnumeration:
    """Enumeration of all valid diagrams of a type."""

    def test_a3(self):
        marks = [r.diagram.marks for r in enumerate_orbits(SimpleType.parse("A3"))]
        assert marks == [(0, 0, 0), (0, 2, 0), (1, 0, 1), (2, 0, 2), (2, 2, 2)]

    @pytest.mark.parametrize(
        ("family", "dim_v"),
        [
            (Family.SL, 2),
            (Family.SL, 3),
            (Family.SL, 4),
            (Family.SL, 5),
            (Family.SL, 6),
            (Family.SO, 5),
            (Family.SO, 7),
            (Family.SO, 9),
            (Family.SP, 4),
            (Family.SP, 6),
            (Family.SP, 8),
            (Family.SO, 8),
        ],
    )
    def test_matches_partitions(self, family, dim_v):
        """Root-data enumeration agrees with the partition formulas."""
        alg = ClassicalAlgebra(family=family, dim_v=dim_v)
        from_partitions = {
            d.marks for p in valid_partitions(alg) for d in diagrams_from_partition(alg, p)
        }
        from_roots = {r.diagram.marks for r in enumerate_orbits(type_of(alg))}
        assert from_roots == from_partitions

    @pytest.mark.parametrize(("label", "count"), [("G2", 5), ("F4", 16), ("E6", 21)])
    def test_exceptional_counts(self, label, count):
        assert len(enumerate_orbits(SimpleType.parse(label))) == count

    @pytest.mark.slow
    @pytest.mark.parametrize(("label", "count"), [("E7", 45), ("E8", 70)])
    def test_large_counts(self, label, count):
        assert len(enumerate_orbits(SimpleType.parse(label))) == count

    @pytest.mark.parametrize("label", ["D4", "D5"])
    def test_d_fork_parity(self, label):
        """The two fork marks of a D-type diagram have an even sum."""
        for record in enumerate_orbits(SimpleType.parse(label)):
            marks = record.diagram.marks
            assert (marks[-2] + marks[-1]) % 2 == 0, record.diagram.text

    @pytest.mark.parametrize("label", ["A4", "B3", "C4", "D4", "G2", "F4"])
    def test_even_graded_dims_decrease(self, label):
        """dim g(i) is weakly decreasing in |i| over even i for even diagrams."""
        for record in enumerate_orbits(SimpleType.parse(label)):
            if not record.even:
                continue
            dims = graded_dims(record.diagram)
            top = max(dims)
            for i in range(0, top + 1, 2):
                assert dims.get(i, 0) >= dims.get(i + 2, 0), (record.diagram.text, i)
                assert dims.get(-i, 0) == dims.get(i, 0)


class TestDiagramArithmetic:
    """Half, divisibility, height and Dynkin index."""

    def test_half(self, regular_a2, minimal_a2):
        assert half(regular_a2) == minimal_a2
        with pytest.raises(NotEvenError):
            half(minimal_a2)

    def test_is_divisible(self, a2, regular_a2, minimal_a2):
        assert is_divisible(regular_a2)
        assert not is_divisible(minimal_a2)
        assert not is_divisible(WeightedDiagram.zero(a2))
        with pytest.raises(InvalidDiagramError):
            is_divisible(_diagram("A2", 2, 1))

    def test_even_not_divisible(self):
        """(0,2,0) in A3 is even but (0,1,0) is not a diagram."""
        assert not is_divisible(_diagram("A3", 0, 2, 0))

    @pytest.mark.parametrize(
        ("label", "marks", "height"),
        [
            ("A2", (2, 2), 4),
            ("A2", (1, 1), 2),
            ("F4", (0, 2, 0, 2), 10),
            ("F4", (0, 1, 0, 1), 5),
            ("G2", (0, 2), 4),
            ("E8", (2, 2, 2, 2, 2, 2, 2, 2), 58),
        ],
    )
    def test_height(self, label, marks, height):
        assert diagram_height(_diagram(label, *marks)) == height

    def test_dynkin_index(self, regular_a2, minimal_a2):
        assert dynkin_index(regular_a2) == 4
        assert dynkin_index(minimal_a2) == 1
        assert isinstance(dynkin_index(regular_a2), Fraction)

    @pytest.mark.parametrize("label", ["B3", "C3", "F4", "G2"])
    def test_dynkin_index_ratio(self, label):
        """Halving the diagram divides the index by four."""
        for pair in friendly_pairs(SimpleType.parse(label)):
            assert pair.upper.dynkin_index == 4 * pair.lower.dynkin_index

    def test_graded_dims(self, regular_a2):
        assert graded_dims(regular_a2) == {-4: 1, -2: 2, 0: 2, 2: 2, 4: 1}
        assert graded_centralizer_dims(regular_a2) == {0: 0, 1: 0, 2: 1, 3: 0, 4: 1}

    def test_orbit_record(self, regular_a2, minimal_a2):
        record = orbit_record(regular_a2)
        assert record.dim_orbit == 6
        assert record.height == 4
        assert record.even
        assert record.divisible
        assert record.half == minimal_a2
        assert record.dynkin_index == 4
        assert record.dim_centralizer == 2


class TestFriendlyPairs:
    """Pairs of a divisible orbit and its half."""

    @pytest.mark.parametrize(("label", "count"), [("A2", 1), ("G2", 1), ("F4", 4), ("E6", 6)])
    def test_counts(self, label, count):
        assert len(friendly_pairs(SimpleType.parse(label))) == count

    @pytest.mark.parametrize(
        "label",
        [
            "G2",
            "F4",
            "E6",
            pytest.param("E7", marks=pytest.mark.slow),
            pytest.param("E8", marks=pytest.mark.slow),
        ],
    )
    def test_matches_table(self, label):
        t = SimpleType.parse(label)
        computed = {p.upper.diagram for p in friendly_pairs(t)}
        published = {upper_diagram(row) for row in reference_pairs(t)}
        assert computed == published

    @pytest.mark.parametrize(
        "label",
        [
            "A2",
            "A3",
            "A4",
            "B2",
            "B3",
            "B4",
            "C2",
            "C3",
            "C4",
            "D4",
            "G2",
            "F4",
            "E6",
            pytest.param("E7", marks=pytest.mark.slow),
            pytest.param("E8", marks=pytest.mark.slow),
        ],
    )
    def test_pair_centralizers(self, label):
        """dim g^{e<2>} = dim g^e + dim of the nilradical of g^e, and the graded forms."""
        for pair in friendly_pairs(SimpleType.parse(label)):
            upper, lower = pair.upper, pair.lower
            text = upper.diagram.text
            assert lower.dim_centralizer == upper.dim_centralizer + upper.dim_nilradical, text
            assert upper.dim_nilradical % 2 == 0, text
            assert lower.height * 2 == upper.height, text
            assert upper.dynkin_index == 4 * lower.dynkin_index, text
            ge = graded_centralizer_dims(upper.diagram)
            lower_ge = graded_centralizer_dims(lower.diagram)
            for i, v in lower_ge.items():
                assert ge.get(2 * i, 0) + ge.get(2 * i + 2, 0) == v, (text, i)
            for j in range(1, upper.height // 4 + 2):
                assert (ge.get(4 * j - 2, 0) + ge.get(4 * j, 0)) % 2 == 0, (text, j)
