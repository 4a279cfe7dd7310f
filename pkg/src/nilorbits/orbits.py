"""Weighted Dynkin diagram arithmetic.

Validity of a diagram is decided from root data alone: a diagram is the
characteristic of a nilpotent orbit exactly when some e in g(2) completes
to an sl2-triple (e, h_+, f) with f in g(-2). The search draws seeded
integer witnesses, screens the rank of ``x -> [x, e]`` from g(0) to g(2)
modulo a prime and certifies the outcome over the rationals.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from . import linalg
from .chevalley import (
    AlgebraElement,
    ChevalleyAlgebra,
    DefiningElement,
    build_algebra,
)
from .exceptions import AlgebraError, InvalidDiagramError, NotEvenError
from .models import (
    EvidenceClass,
    FriendlyPair,
    OrbitRecord,
    SimpleType,
    WeightedDiagram,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
DEFAULT_TRIALS = 8
COEFFICIENT_BOUND = 2**16


@dataclass(frozen=True)
class CharacteristicCertificate:
    """Verdict of :func:`is_characteristic` and the data backing it.

    A true verdict carries the witness ``e`` in g(2) and the solved partner
    ``f`` in g(-2) with ``[e, f] = h_+``. A false verdict is certified
    (``OBSTRUCTION``) when a witness of full rank exists but h_+ is not in
    ``[e, g(-2)]``, or when a necessary dimension condition fails; otherwise
    it rests on the exhausted trial budget (``BUDGET``).
    """

    diagram: WeightedDiagram
    valid: bool
    evidence_class: EvidenceClass
    reason: str
    rank: int = 0
    target_dim: int = 0
    trials_used: int = 0
    e: Optional[AlgebraElement] = None
    f: Optional[AlgebraElement] = None

    def __bool__(self) -> bool:
        return self.valid


def _algebra(d: WeightedDiagram) -> ChevalleyAlgebra:
    return build_algebra(d.simple_type)


def grading_weights(d: WeightedDiagram) -> tuple[int, ...]:
    """Eigenvalue of ad h_+ on every Chevalley basis vector."""
    return _algebra(d).grading_weights(DefiningElement.from_diagram(d))


def graded_dims(d: WeightedDiagram) -> dict[int, int]:
    """Map i -> dim g(i) over all i with g(i) != 0."""
    return dict(sorted(Counter(grading_weights(d)).items()))


def prefilter(d: WeightedDiagram) -> Optional[str]:
    """First necessary dimension condition the diagram violates, or None."""
    dims = graded_dims(d)
    top = max(dims)
    for j in range(top + 1):
        if dims.get(j, 0) < dims.get(j + 2, 0):
            return f"dim g({j}) < dim g({j + 2})"
    for j in range(1, top + 1, 2):
        if (dims.get(j, 0) - dims.get(j + 2, 0)) % 2:
            return f"dim g({j}) - dim g({j + 2}) is odd"
    dim = sum(dims.values())
    if (dims.get(0, 0) + dims.get(1, 0) - dim) % 2:
        return "odd orbit dimension"
    if not d.is_zero and not dims.get(2, 0):
        return "g(2) = 0"
    return None


def _draw_witness(
    rng: np.random.Generator, indices: list[int]
) -> dict[int, int]:
    values = rng.integers(1, COEFFICIENT_BOUND, size=len(indices), endpoint=True)
    return {k: int(v) for k, v in zip(indices, values)}


@lru_cache(maxsize=None)
def is_characteristic(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> CharacteristicCertificate:
    """Decide whether ``d`` is the weighted Dynkin diagram of a nilpotent orbit.

    Args:
        d: candidate diagram
        seed: seed of the witness generator
        trials: number of witnesses drawn before giving up

    Returns:
        CharacteristicCertificate; truthy exactly when the diagram is valid
    """
    alg = _algebra(d)
    if d.is_zero:
        return CharacteristicCertificate(
            diagram=d,
            valid=True,
            evidence_class=EvidenceClass.WITNESS,
            reason="zero orbit",
            e=alg.zero(),
            f=alg.zero(),
        )
    violated = prefilter(d)
    if violated is not None:
        logger.debug(f"{d} rejected by prefilter: {violated}")
        return CharacteristicCertificate(
            diagram=d,
            valid=False,
            evidence_class=EvidenceClass.OBSTRUCTION,
            reason=violated,
        )

    weights = grading_weights(d)
    piece = {i: [k for k, w in enumerate(weights) if w == i] for i in (-2, 0, 2)}
    target_dim = len(piece[2])
    rng = np.random.default_rng([seed, *d.marks])
    e_coeffs: dict[int, int] = {}
    rank = 0
    used = 0
    for used in range(1, trials + 1):
        e_coeffs = _draw_witness(rng, piece[2])
        columns = alg.ad_columns(e_coeffs, piece[0], piece[2])
        rank = linalg.modular_rank(linalg.integer_rows(columns, target_dim))
        if rank == target_dim:
            break
    else:
        # the modular rank is only a lower bound
        columns = alg.ad_columns(e_coeffs, piece[0], piece[2])
        rank = linalg.rank(linalg.matrix_from_columns(columns, target_dim))
        if rank < target_dim:
            logger.debug(
                f"{d}: no witness of full rank in {trials} trials",
                extra={"diagram": d.text, "rank": rank, "target": target_dim},
            )
            return CharacteristicCertificate(
                diagram=d,
                valid=False,
                evidence_class=EvidenceClass.BUDGET,
                reason="[g(0), e] != g(2) for every witness drawn",
                rank=rank,
                target_dim=target_dim,
                trials_used=used,
            )

    h_plus = alg.defining_vector(DefiningElement.from_diagram(d))
    position = {k: r for r, k in enumerate(piece[0])}
    rhs = {position[k]: v for k, v in h_plus.coeffs.items()}
    system = linalg.matrix_from_columns(
        alg.ad_columns(e_coeffs, piece[-2], piece[0]), len(piece[0])
    )
    solution = linalg.solve(system, rhs)
    e = alg.element(e_coeffs)
    if solution is None:
        logger.debug(f"{d}: h_+ is not in [e, g(-2)] for a generic e")
        return CharacteristicCertificate(
            diagram=d,
            valid=False,
            evidence_class=EvidenceClass.OBSTRUCTION,
            reason="h_+ not in [e, g(-2)] for e in the open G(0)-orbit of g(2)",
            rank=rank,
            target_dim=target_dim,
            trials_used=used,
            e=e,
        )
    f = alg.element({piece[-2][j]: v for j, v in solution.items()})
    return CharacteristicCertificate(
        diagram=d,
        valid=True,
        evidence_class=EvidenceClass.WITNESS,
        reason="sl2-triple (e, h_+, f) with e in g(2)",
        rank=rank,
        target_dim=target_dim,
        trials_used=used,
        e=e,
        f=f,
    )


def require_characteristic(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> CharacteristicCertificate:
    """Certificate of ``d``; raises InvalidDiagramError when it is not valid."""
    certificate = is_characteristic(d, seed, trials)
    if not certificate.valid:
        raise InvalidDiagramError(
            f"{d} is not a weighted Dynkin diagram",
            simple_type=d.simple_type.label,
            diagram=d.text,
            reason=certificate.reason,
        )
    return certificate


def half(d: WeightedDiagram) -> WeightedDiagram:
    """Divide every mark of an even diagram by 2."""
    if not d.is_even:
        raise NotEvenError(f"{d} has a mark equal to 1", diagram=d.text)
    return WeightedDiagram(
        simple_type=d.simple_type, marks=tuple(m // 2 for m in d.marks)
    )


def is_divisible(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> bool:
    """True when d is even, nonzero and its half is again a valid diagram.

    Raises:
        InvalidDiagramError: if ``d`` itself is not valid
    """
    require_characteristic(d, seed, trials)
    if d.is_zero or not d.is_even:
        return False
    return is_characteristic(half(d), seed, trials).valid


def diagram_height(d: WeightedDiagram) -> int:
    """ht(e) = sum of l_alpha n_alpha over the highest root coefficients."""
    theta = _algebra(d).rs.highest_root
    return sum(m * n for m, n in zip(d.marks, theta))


def dynkin_index(d: WeightedDiagram) -> Fraction:
    """(h_+, h_+)/2 with the form normalized by (theta, theta) = 2."""
    alg = _algebra(d)
    rs = alg.rs
    h_plus = alg.defining_vector(DefiningElement.from_diagram(d))
    c = [h_plus.coeffs.get(len(rs.roots) + i, Fraction(0)) for i in range(rs.rank)]
    norms = [rs.form[i][i] for i in range(rs.rank)]
    total = Fraction(0)
    for i in range(rs.rank):
        for j in range(rs.rank):
            if c[i] and c[j]:
                coroot_form = 4 * rs.form[i][j] / (norms[i] * norms[j])
                total += c[i] * c[j] * coroot_form
    return total / 2


def graded_centralizer_dims(d: WeightedDiagram) -> dict[int, int]:
    """Map i -> dim g^e(i) = dim g(i) - dim g(i+2) for 0 <= i <= height."""
    dims = graded_dims(d)
    return {
        i: dims.get(i, 0) - dims.get(i + 2, 0) for i in range(diagram_height(d) + 1)
    }


def orbit_record(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> OrbitRecord:
    """Fill an :class:`OrbitRecord` for a valid diagram."""
    require_characteristic(d, seed, trials)
    dims = graded_dims(d)
    divisible = is_divisible(d, seed, trials)
    index = dynkin_index(d)
    if index.denominator != 1:
        raise AlgebraError(f"Dynkin index {index} of {d} is not an integer")
    return OrbitRecord(
        diagram=d,
        dim_orbit=sum(dims.values()) - dims.get(0, 0) - dims.get(1, 0),
        height=diagram_height(d),
        even=d.is_even,
        divisible=divisible,
        half=half(d) if d.is_even else None,
        dynkin_index=int(index),
        graded_dims=dims,
    )


@lru_cache(maxsize=None)
def _enumerate(t: SimpleType, seed: int, trials: int) -> tuple[OrbitRecord, ...]:
    candidates = [
        WeightedDiagram(simple_type=t, marks=marks)
        for marks in itertools.product((0, 1, 2), repeat=t.rank)
    ]
    logger.info(
        f"Testing {len(candidates)} candidate diagrams of {t}",
        extra={"simple_type": t.label, "seed": seed, "trials": trials},
    )
    valid = [d for d in candidates if is_characteristic(d, seed, trials).valid]
    records = tuple(orbit_record(d, seed, trials) for d in valid)
    logger.info(f"{t} has {len(records)} nilpotent orbits")
    return records


def enumerate_orbits(
    t: SimpleType, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> list[OrbitRecord]:
    """All valid diagrams of ``t`` (zero orbit included), sorted by marks."""
    return sorted(_enumerate(t, seed, trials), key=lambda r: r.diagram.marks)


def friendly_pairs(
    t: SimpleType, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> list[FriendlyPair]:
    """Pairs (O, O<2>) over the nonzero divisible orbits of ``t``."""
    records = enumerate_orbits(t, seed, trials)
    by_marks = {r.diagram.marks: r for r in records}
    pairs = []
    for record in records:
        if not record.divisible or record.half is None:
            continue
        lower = by_marks[record.half.marks]
        pairs.append(FriendlyPair(upper=record, lower=lower))
    logger.debug(f"{t} has {len(pairs)} friendly pairs")
    return pairs
