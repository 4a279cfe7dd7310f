"""Named checks on a weighted Dynkin diagram and the pair report.

Every check returns a :class:`~nilorbits.models.CheckResult` whose evidence
is plain JSON data, so that ``nilorbits verify`` can print it unchanged.
"""

import logging
from collections.abc import Callable, Sequence
from typing import Any

from .centralizers import (
    centralizer_of_diagram,
    element_height,
    is_reachable,
    kernel_dimension,
    nilradical_generated_by_degree_one,
    nilradical_in_derived,
    representative,
    very_friendly_check,
)
from .chevalley import DefiningElement
from .exceptions import NotDivisibleError
from .models import (
    CheckName,
    CheckResult,
    EvidenceClass,
    FriendlyPair,
    RunConfig,
    Verdict,
    VerdictRecord,
    WeightedDiagram,
)
from .orbits import (
    diagram_height,
    dynkin_index,
    graded_centralizer_dims,
    half,
    orbit_record,
    require_characteristic,
)
from .reference import annotate

logger = logging.getLogger(__name__)

DEFAULT_CHECKS = (CheckName.DIMS, CheckName.INDEX, CheckName.HEIGHT)


def _result(name: CheckName, ok: bool, **evidence: Any) -> CheckResult:
    return CheckResult(
        name=name.value,
        verdict=Verdict.TRUE if ok else Verdict.FALSE,
        evidence_class=EvidenceClass.COMPUTATION,
        evidence=evidence,
    )


def _json_dims(dims: dict[int, int]) -> dict[str, int]:
    return {str(i): v for i, v in sorted(dims.items())}


def graded_parity(centralizer_dims: dict[int, int], height: int) -> bool:
    """dim g^e(4j-2) + dim g^e(4j) is even for every j >= 1."""
    return all(
        (centralizer_dims.get(4 * j - 2, 0) + centralizer_dims.get(4 * j, 0)) % 2 == 0
        for j in range(1, height // 4 + 2)
    )


def check_dims(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    """Graded centralizer dimensions against the counts from root data.

    For a divisible diagram also the identities linking g^e to the
    centralizer of the halved orbit.
    """
    record = orbit_record(d, config.seed, config.trials)
    expected = graded_centralizer_dims(d)
    gc = centralizer_of_diagram(d, config.seed, config.trials)
    computed = gc.dims
    degrees = range(max(max(expected), max(computed)) + 1)
    identities = {
        "graded": all(expected.get(i, 0) == computed.get(i, 0) for i in degrees),
        "stabilizer": gc.dim == record.dim_centralizer,
        "kernel_square": kernel_dimension(gc.base_point, 2)
        == record.graded_dims.get(0, 0)
        + 2 * record.graded_dims.get(1, 0)
        + record.graded_dims.get(2, 0),
    }
    if record.divisible and record.half is not None:
        lower = orbit_record(record.half, config.seed, config.trials)
        lower_dims = graded_centralizer_dims(record.half)
        identities["friendly_sum"] = (
            lower.dim_centralizer == record.dim_centralizer + record.dim_nilradical
        )
        identities["nilradical_even"] = record.dim_nilradical % 2 == 0
        identities["graded_halves"] = all(
            expected.get(2 * i, 0) + expected.get(2 * i + 2, 0) == v
            for i, v in lower_dims.items()
        )
        identities["lower_degree_one"] = lower_dims.get(1, 0) > 0
        identities["graded_parity"] = graded_parity(expected, record.height)
    return _result(
        CheckName.DIMS,
        all(identities.values()),
        identities=identities,
        centralizer_dims=_json_dims(computed),
        dim_centralizer=record.dim_centralizer,
        dim_nilradical=record.dim_nilradical,
    )


def check_index(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    """Dynkin index is an integer, and 4 times that of the half when divisible."""
    record = orbit_record(d, config.seed, config.trials)
    index = dynkin_index(d)
    evidence: dict[str, Any] = {"index": str(index)}
    ok = index.denominator == 1
    if record.divisible and record.half is not None:
        lower = dynkin_index(record.half)
        evidence.update(half_index=str(lower), ratio=str(index / lower))
        ok = ok and index == 4 * lower
    return _result(CheckName.INDEX, ok, **evidence)


def check_height(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    """ht(e) of the representative against the marks, doubled from the half."""
    e = representative(d, config.seed, config.trials)
    height = diagram_height(d)
    measured = element_height(e)
    evidence: dict[str, Any] = {"height": height, "element_height": measured}
    ok = height == measured
    if d.is_even and not d.is_zero and orbit_record(d, config.seed, config.trials).divisible:
        evidence["half_height"] = diagram_height(half(d))
        ok = ok and height == 2 * evidence["half_height"]
    return _result(CheckName.HEIGHT, ok, **evidence)


def check_reachable(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    """e in [g^e, g^e], tested in degree 2 of the grading of ``d``."""
    e = representative(d, config.seed, config.trials)
    return _result(
        CheckName.REACHABLE, is_reachable(e, DefiningElement.from_diagram(d))
    )


def check_nilgen(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    """g^e(>= 1) generated by g^e(1); containment in the derived algebra as evidence."""
    gc = centralizer_of_diagram(d, config.seed, config.trials)
    return _result(
        CheckName.NILGEN,
        nilradical_generated_by_degree_one(gc),
        in_derived=nilradical_in_derived(gc),
        centralizer_dims=_json_dims(gc.dims),
    )


def friendly_pair_of(d: WeightedDiagram, config: RunConfig) -> FriendlyPair:
    """The friendly pair whose upper diagram is ``d``.

    Raises:
        NotDivisibleError: if ``d`` is not divisible
    """
    record = orbit_record(d, config.seed, config.trials)
    if not record.divisible or record.half is None:
        raise NotDivisibleError(f"{d} is not divisible", diagram=d.text)
    return FriendlyPair(
        upper=record, lower=orbit_record(record.half, config.seed, config.trials)
    )


def check_very_friendly(d: WeightedDiagram, config: RunConfig) -> CheckResult:
    result = very_friendly_check(
        friendly_pair_of(d, config),
        config.seed,
        config.trials,
        config.friendly_draws,
        config.sweep_max_dim,
    )
    return result.model_copy(update={"name": CheckName.VERY_FRIENDLY.value})


CHECKS: dict[CheckName, Callable[[WeightedDiagram, RunConfig], CheckResult]] = {
    CheckName.DIMS: check_dims,
    CheckName.INDEX: check_index,
    CheckName.HEIGHT: check_height,
    CheckName.REACHABLE: check_reachable,
    CheckName.VERY_FRIENDLY: check_very_friendly,
    CheckName.NILGEN: check_nilgen,
}


def run_checks(
    d: WeightedDiagram, names: Sequence[CheckName], config: RunConfig
) -> list[CheckResult]:
    """Run ``names`` in order on a valid diagram.

    Raises:
        InvalidDiagramError: if ``d`` is not a weighted Dynkin diagram
    """
    require_characteristic(d, config.seed, config.trials)
    results = []
    for name in names:
        logger.info(f"Running {name.value} on {d}", extra={"diagram": d.text})
        results.append(CHECKS[name](d, config))
    return results


def verdict_records(
    d: WeightedDiagram, results: Sequence[CheckResult], seed: int
) -> list[VerdictRecord]:
    return [
        VerdictRecord(
            diagram=list(d.marks),
            check=r.name,
            verdict=r.verdict,
            evidence=r.evidence,
            seed=seed,
        )
        for r in results
    ]


def pair_report(
    pair: FriendlyPair, config: RunConfig
) -> tuple[FriendlyPair, list[CheckResult]]:
    """Fill the computed columns of a pair and annotate the reference column."""
    upper = pair.upper.diagram
    very_friendly = check_very_friendly(upper, config)
    reachable = check_reachable(pair.lower.diagram, config)
    reachable = reachable.model_copy(update={"name": "lower_reachable"})
    filled = annotate(pair).model_copy(
        update={
            "very_friendly": None
            if very_friendly.verdict is Verdict.INCONCLUSIVE
            else very_friendly.passed,
            "lower_reachable": reachable.passed,
        }
    )
    return filled, [very_friendly, reachable]
