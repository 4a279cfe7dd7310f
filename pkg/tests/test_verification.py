"""Tests for nilorbits.verification module."""

import pytest

from nilorbits.exceptions import InvalidDiagramError, NotDivisibleError
from nilorbits.models import (
    CheckName,
    EvidenceClass,
    RunConfig,
    SimpleType,
    Verdict,
    WeightedDiagram,
)
from nilorbits.orbits import enumerate_orbits, friendly_pairs
from nilorbits.verification import (
    CHECKS,
    DEFAULT_CHECKS,
    check_dims,
    check_height,
    check_index,
    check_nilgen,
    check_reachable,
    check_very_friendly,
    friendly_pair_of,
    graded_parity,
    pair_report,
    run_checks,
    verdict_records,
)

PAIR_TYPES = [
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
]


class TestChecks:
    """Individual named checks."""

    def test_registry(self):
        assert set(CHECKS) == set(CheckName)
        assert DEFAULT_CHECKS == (CheckName.DIMS, CheckName.INDEX, CheckName.HEIGHT)

    def test_dims_divisible(self, f4_a2, run_config):
        result = check_dims(f4_a2, run_config)
        assert result.verdict is Verdict.TRUE
        assert result.name == "dims"
        identities = result.evidence["identities"]
        assert set(identities) == {
            "graded",
            "stabilizer",
            "kernel_square",
            "friendly_sum",
            "nilradical_even",
            "graded_halves",
            "lower_degree_one",
            "graded_parity",
        }
        assert result.evidence["centralizer_dims"]["4"] == 1
        assert result.evidence["dim_centralizer"] == 8

    def test_dims_not_divisible(self, minimal_a2, run_config):
        result = check_dims(minimal_a2, run_config)
        assert result.passed
        assert set(result.evidence["identities"]) == {"graded", "stabilizer", "kernel_square"}

    def test_index(self, regular_a2, minimal_a2, run_config):
        result = check_index(regular_a2, run_config)
        assert result.passed
        assert result.evidence == {"index": "4", "half_index": "1", "ratio": "4"}
        assert check_index(minimal_a2, run_config).evidence == {"index": "1"}

    def test_height(self, f4_a2, run_config):
        result = check_height(f4_a2, run_config)
        assert result.passed
        assert result.evidence == {"height": 10, "element_height": 10, "half_height": 5}

    def test_reachable(self, regular_a2, minimal_a2, run_config):
        assert check_reachable(minimal_a2, run_config).verdict is Verdict.TRUE
        assert check_reachable(regular_a2, run_config).verdict is Verdict.FALSE

    def test_nilgen(self, minimal_a2, run_config):
        result = check_nilgen(minimal_a2, run_config)
        assert result.passed
        assert result.evidence["in_derived"] is True
        assert result.evidence["centralizer_dims"] == {"0": 1, "1": 2, "2": 1}

    def test_very_friendly(self, f4_a2, regular_a2, run_config):
        result = check_very_friendly(f4_a2, run_config)
        assert result.name == "very-friendly"
        assert result.verdict is Verdict.FALSE
        assert result.evidence_class is EvidenceClass.OBSTRUCTION
        assert check_very_friendly(regular_a2, run_config).passed

    def test_friendly_pair_of(self, regular_a2, minimal_a2, run_config):
        pair = friendly_pair_of(regular_a2, run_config)
        assert pair.lower.diagram == minimal_a2
        with pytest.raises(NotDivisibleError):
            friendly_pair_of(minimal_a2, run_config)

    @pytest.mark.parametrize("label", ["G2", "C3", "F4"])
    def test_default_checks_on_every_orbit(self, label, run_config):
        for record in enumerate_orbits(SimpleType.parse(label)):
            results = run_checks(record.diagram, DEFAULT_CHECKS, run_config)
            assert all(r.passed for r in results), (record.diagram.text, results)

    @pytest.mark.parametrize(
        ("dims", "height", "expected"),
        [
            ({0: 2, 2: 1, 4: 1}, 4, True),
            ({0: 2, 2: 1}, 2, False),
            ({0: 4, 2: 0, 4: 1, 6: 1, 8: 0}, 8, False),
            ({0: 3}, 0, True),
        ],
    )
    def test_graded_parity(self, dims, height, expected):
        assert graded_parity(dims, height) is expected

    @pytest.mark.parametrize("label", PAIR_TYPES)
    def test_dims_on_every_pair(self, label, run_config):
        """Every friendly pair satisfies the graded identities, parity included."""
        for pair in friendly_pairs(SimpleType.parse(label)):
            result = check_dims(pair.upper.diagram, run_config)
            identities = result.evidence["identities"]
            assert identities["graded_parity"], pair.upper.diagram.text
            assert result.passed, (pair.upper.diagram.text, identities)


class TestRunChecks:
    """Running checks and serializing verdicts."""

    def test_order(self, regular_a2, run_config):
        names = [CheckName.HEIGHT, CheckName.REACHABLE]
        results = run_checks(regular_a2, names, run_config)
        assert [r.name for r in results] == ["height", "reachable"]

    def test_invalid(self, run_config):
        d = WeightedDiagram(simple_type=SimpleType.parse("A2"), marks=(2, 1))
        with pytest.raises(InvalidDiagramError):
            run_checks(d, DEFAULT_CHECKS, run_config)

    def test_verdict_records(self, f4_a2):
        config = RunConfig(seed=3)
        results = run_checks(f4_a2, [CheckName.VERY_FRIENDLY], config)
        (record,) = verdict_records(f4_a2, results, config.seed)
        assert record.diagram == [0, 2, 0, 2]
        assert record.check == "very-friendly"
        assert record.verdict is Verdict.FALSE
        assert record.seed == 3
        assert record.evidence["half_height"] == 5


class TestPairReport:
    """Computed and reference columns of a friendly pair."""

    def test_f4_a2(self, f4, run_config):
        (pair,) = [p for p in friendly_pairs(f4) if p.upper.diagram.marks == (0, 2, 0, 2)]
        filled, results = pair_report(pair, run_config)
        assert filled.very_friendly is False
        assert filled.lower_reachable is False
        assert filled.a2_pair is False
        assert [r.name for r in results] == ["very-friendly", "lower_reachable"]

    def test_g2(self, g2, run_config):
        (pair,) = friendly_pairs(g2)
        filled, _ = pair_report(pair, run_config)
        assert filled.very_friendly is True
        assert filled.lower_reachable is True
        assert filled.a2_pair is True

    def test_outside_table(self, a2, run_config):
        (pair,) = friendly_pairs(a2)
        filled, _ = pair_report(pair, run_config)
        assert filled.very_friendly is True
        assert filled.a2_pair is None
