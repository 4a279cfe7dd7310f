"""Tests for nilorbits.reference module."""

import pytest

from nilorbits.models import SimpleType
from nilorbits.orbits import friendly_pairs, half
from nilorbits.reference import (
    annotate,
    find_row,
    lower_diagram,
    reference_pairs,
    reference_types,
    upper_diagram,
)


class TestTable:
    """Rows of the published table."""

    def test_types(self):
        assert [t.label for t in reference_types()] == ["E6", "E7", "E8", "F4", "G2"]

    @pytest.mark.parametrize(
        ("label", "rows", "a2_pairs"),
        [("E6", 6, 5), ("E7", 8, 7), ("E8", 13, 9), ("F4", 4, 3), ("G2", 1, 1)],
    )
    def test_row_counts(self, label, rows, a2_pairs):
        table = reference_pairs(SimpleType.parse(label))
        assert len(table) == rows
        assert sum(row.a2_pair for row in table) == a2_pairs

    def test_other_types_empty(self):
        assert reference_pairs(SimpleType.parse("A4")) == []

    @pytest.mark.parametrize("label", ["E6", "E7", "E8", "F4", "G2"])
    def test_diagrams_even(self, label):
        for row in reference_pairs(SimpleType.parse(label)):
            upper = upper_diagram(row)
            assert upper.is_even
            assert lower_diagram(row) == half(upper)

    def test_f4_a2_in_bourbaki(self, f4, f4_a2):
        (row,) = [r for r in reference_pairs(f4) if r.upper_label == "F4(a2)"]
        assert upper_diagram(row) == f4_a2
        assert not row.reachable
        assert not row.a2_pair

    def test_a2_pairs_reachable(self):
        """Every A2-pair has a reachable lower orbit."""
        for t in reference_types():
            for row in reference_pairs(t):
                if row.a2_pair:
                    assert row.reachable


class TestAnnotate:
    """Lookup of computed pairs in the table."""

    def test_g2(self, g2):
        (pair,) = friendly_pairs(g2)
        row = find_row(pair)
        assert row is not None
        assert row.lower_label == "A1"
        assert annotate(pair).a2_pair is True

    def test_f4(self, f4):
        annotated = {p.upper.diagram.marks: annotate(p).a2_pair for p in friendly_pairs(f4)}
        assert annotated[(0, 2, 0, 2)] is False
        assert sum(annotated.values()) == 3

    def test_outside_table(self, a2):
        (pair,) = friendly_pairs(a2)
        assert find_row(pair) is None
        assert annotate(pair) is pair
        assert pair.a2_pair is None
