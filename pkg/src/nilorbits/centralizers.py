"""Element-level computations in the Chevalley model.

Orbit representatives, sl2-triple completion, graded centralizers,
reachability, generation of the nilradical, heights, fingerprints, the
very-friendly search and the spanning check on degree-one generators.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Any, Optional

import numpy as np

from . import linalg
from .chevalley import (
    AlgebraElement,
    ChevalleyAlgebra,
    DefiningElement,
    ad_matrix,
    bracket,
    build_algebra,
)
from .exceptions import (
    FingerprintCollisionError,
    GradingMismatchError,
    NotInDegreeOneError,
    NotNilpotentError,
    ZeroElementError,
)
from .models import (
    CheckResult,
    EvidenceClass,
    FriendlyPair,
    OrbitFingerprint,
    SimpleType,
    Verdict,
    WeightedDiagram,
)
from .orbits import (
    COEFFICIENT_BOUND,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    diagram_height,
    enumerate_orbits,
    half,
    require_characteristic,
)

logger = logging.getLogger(__name__)

DEFAULT_DRAWS = 64
DEFAULT_SWEEP_MAX_DIM = 6


@dataclass(frozen=True)
class GradedCentralizer:
    """Centralizer of ``base_point`` split by the eigenvalues of ad h."""

    base_point: AlgebraElement
    grading_element: DefiningElement
    pieces: dict[int, list[AlgebraElement]] = field(default_factory=dict)

    @property
    def algebra(self) -> ChevalleyAlgebra:
        return self.base_point.algebra

    @property
    def dims(self) -> dict[int, int]:
        return {i: len(basis) for i, basis in sorted(self.pieces.items())}

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    @property
    def top(self) -> int:
        """Largest degree with a nonzero piece."""
        return max((i for i, basis in self.pieces.items() if basis), default=0)

    def piece(self, i: int) -> list[AlgebraElement]:
        return self.pieces.get(i, [])


# elements


def representative(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> AlgebraElement:
    """The certified witness e in g(2) of a valid diagram.

    Raises:
        InvalidDiagramError: if ``d`` is not valid
    """
    certificate = require_characteristic(d, seed, trials)
    if certificate.e is None:
        raise ZeroElementError(f"no witness recorded for {d}")
    return certificate.e


def element_height(x: AlgebraElement) -> int:
    """Largest m with (ad x)^m != 0.

    Raises:
        NotNilpotentError: if (ad x)^m is nonzero for m = dim g
    """
    alg = x.algebra
    frontier = [alg.element({k: 1}) for k in range(alg.dim)]
    m = 0
    while True:
        frontier = [y for y in (bracket(x, z) for z in frontier) if not y.is_zero]
        if not frontier:
            return m
        m += 1
        if m >= alg.dim:
            raise NotNilpotentError(
                f"(ad x)^{m} != 0", simple_type=alg.simple_type.label
            )


def kernel_dimension(x: AlgebraElement, power: int = 1) -> int:
    """dim Ker (ad x)^power."""
    matrix = ad_matrix(x)
    product = matrix
    for _ in range(power - 1):
        product = product * matrix
    return x.algebra.dim - linalg.rank(product)


def centralizer_dim(x: AlgebraElement) -> int:
    return kernel_dimension(x, 1)


def _solve_element(
    alg: ChevalleyAlgebra,
    x: AlgebraElement,
    rhs: AlgebraElement,
    sources: Sequence[int],
    targets: Sequence[int],
) -> Optional[AlgebraElement]:
    """Some y in span(sources) with [x, y] = rhs, or None."""
    position = {k: r for r, k in enumerate(targets)}
    if any(k not in position for k in rhs.coeffs):
        return None
    system = linalg.matrix_from_columns(
        alg.ad_columns(x.coeffs, sources, targets), len(targets)
    )
    solution = linalg.solve(system, {position[k]: v for k, v in rhs.coeffs.items()})
    if solution is None:
        return None
    return alg.element({sources[j]: v for j, v in solution.items()})


def complete_sl2(
    e: AlgebraElement,
) -> tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
    """Complete a nilpotent e to an sl2-triple (e, h', f').

    h' is taken from ``(ad e)^2 z = -2e`` as ``h' = [e, z]``; then f' solves
    ``[e, f'] = h'`` and ``[h', f'] = -2 f'``.

    Raises:
        ZeroElementError: if ``e`` is zero
        NotNilpotentError: if ``e`` is not nilpotent
    """
    alg = e.algebra
    if e.is_zero:
        raise ZeroElementError("cannot complete the zero element")
    element_height(e)
    ad_e = ad_matrix(e)
    z = linalg.solve(ad_e * ad_e, {k: -2 * v for k, v in e.coeffs.items()})
    if z is None:
        raise GradingMismatchError("no characteristic in the image of ad e")
    h = bracket(e, alg.element(z))
    # [e, f] = h and [h, f] + 2f = 0, stacked
    stacked = linalg.entries(ad_e)
    for i, row in linalg.entries(linalg.shifted(ad_matrix(h), 2)).items():
        stacked[alg.dim + i] = row
    system = linalg.matrix_from_rows(
        [stacked.get(i, {}) for i in range(2 * alg.dim)], alg.dim
    )
    solution = linalg.solve(system, h.coeffs)
    if solution is None:
        raise GradingMismatchError("h' is not in [e, g(-2)]")
    f = alg.element(solution)
    logger.debug(f"Completed sl2-triple in {alg.simple_type}")
    return e, h, f


# centralizers


def _pieces_by_weight(alg: ChevalleyAlgebra, h: DefiningElement) -> dict[int, list[int]]:
    by_weight: dict[int, list[int]] = {}
    for k, w in enumerate(alg.grading_weights(h)):
        by_weight.setdefault(w, []).append(k)
    return by_weight


def _kernel(
    alg: ChevalleyAlgebra, x: AlgebraElement, sources: list[int], targets: list[int]
) -> list[AlgebraElement]:
    if not sources:
        return []
    if not targets:
        return list(alg.elements(sources))
    matrix = linalg.matrix_from_columns(
        alg.ad_columns(x.coeffs, sources, targets), len(targets)
    )
    return [
        alg.element({sources[j]: v for j, v in vector.items()})
        for vector in linalg.nullspace(matrix)
    ]


def graded_centralizer(e: AlgebraElement, h: DefiningElement) -> GradedCentralizer:
    """Kernel of ad e on each nonnegative piece g(i).

    Raises:
        GradingMismatchError: if e is not in g(2) for the grading by ``h``
    """
    alg = e.algebra
    weights = alg.grading_weights(h)
    if any(weights[k] != 2 for k in e.coeffs):
        raise GradingMismatchError(
            "[h, e] != 2e", simple_type=alg.simple_type.label
        )
    by_weight = _pieces_by_weight(alg, h)
    pieces = {
        i: _kernel(alg, e, by_weight.get(i, []), by_weight.get(i + 2, []))
        for i in range(max(by_weight) + 1)
    }
    return GradedCentralizer(base_point=e, grading_element=h, pieces=pieces)


def centralizer_of_diagram(
    d: WeightedDiagram, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> GradedCentralizer:
    """Graded centralizer of the representative of ``d``."""
    return graded_centralizer(
        representative(d, seed, trials), DefiningElement.from_diagram(d)
    )


def _vector(x: AlgebraElement) -> dict[int, Fraction]:
    return dict(x.coeffs)


def _span(
    alg: ChevalleyAlgebra,
    elements: Iterable[AlgebraElement],
    stop_at: Optional[int] = None,
) -> linalg.ExactSpan:
    span = linalg.ExactSpan(alg.dim)
    span.extend((_vector(x) for x in elements), stop_at=stop_at)
    return span


def _brackets(
    left: Sequence[AlgebraElement], right: Sequence[AlgebraElement], symmetric: bool = False
) -> Iterator[AlgebraElement]:
    if symmetric:
        for a, b in itertools.combinations(left, 2):
            yield bracket(a, b)
        return
    for a in left:
        for b in right:
            yield bracket(a, b)


def is_reachable(e: AlgebraElement, h: Optional[DefiningElement] = None) -> bool:
    """Whether e lies in [g^e, g^e].

    With a grading ``h`` only ``[g^e(0), g^e(2)] + [g^e(1), g^e(1)]`` is
    spanned, the part of [g^e, g^e] in degree 2.

    Raises:
        ZeroElementError: if ``e`` is zero
    """
    alg = e.algebra
    if e.is_zero:
        raise ZeroElementError("reachability of the zero element")
    if h is not None:
        gc = graded_centralizer(e, h)
        pairs = itertools.chain(
            _brackets(gc.piece(0), gc.piece(2)),
            _brackets(gc.piece(1), gc.piece(1), symmetric=True),
        )
        span = _span(alg, pairs, stop_at=len(gc.piece(2)))
    else:
        basis = [
            alg.element(v) for v in linalg.nullspace(ad_matrix(e))
        ]
        span = _span(alg, _brackets(basis, basis, symmetric=True))
    reachable = span.contains(_vector(e))
    logger.debug(f"Reachability in {alg.simple_type}: {reachable}", extra={"span": span.dim})
    return reachable


def nilradical_generated_by_degree_one(gc: GradedCentralizer) -> bool:
    """Whether iterated brackets of g^e(1) span every g^e(i), i >= 1."""
    alg = gc.algebra
    generators = gc.piece(1)
    level = generators
    for i in range(1, gc.top + 1):
        if i > 1:
            span = _span(alg, _brackets(generators, level), stop_at=len(gc.piece(i)))
            level = [alg.element(v) for v in span.basis]
        if len(level) != len(gc.piece(i)):
            logger.debug(f"g^e({i}) not generated: {len(level)} of {len(gc.piece(i))}")
            return False
    return True


def nilradical_in_derived(gc: GradedCentralizer) -> bool:
    """Whether g^e(k) lies in the sum of [g^e(i), g^e(j)], i + j = k, for k >= 1."""
    alg = gc.algebra
    for k in range(1, gc.top + 1):
        target = len(gc.piece(k))
        if not target:
            continue
        products = itertools.chain.from_iterable(
            _brackets(gc.piece(i), gc.piece(k - i), symmetric=(2 * i == k))
            for i in range(0, k // 2 + 1)
        )
        if _span(alg, products, stop_at=target).dim < target:
            logger.debug(f"g^e({k}) is not in the derived algebra")
            return False
    return True


def check_spade(gc: GradedCentralizer, e1: AlgebraElement, e2: AlgebraElement) -> bool:
    """Whether g^e(i) = [g^e(i-1), e1] + [g^e(i-1), e2] for 1 <= i <= top.

    Raises:
        NotInDegreeOneError: if ``e1`` or ``e2`` is not in g^e(1)
    """
    alg = gc.algebra
    degree_one = _span(alg, gc.piece(1))
    for name, x in (("e1", e1), ("e2", e2)):
        if not degree_one.contains(_vector(x)):
            raise NotInDegreeOneError(f"{name} is not in g^e(1)", argument=name)
    for i in range(1, gc.top + 1):
        previous = gc.piece(i - 1)
        images = itertools.chain(_brackets(previous, [e1]), _brackets(previous, [e2]))
        if _span(alg, images).dim != len(gc.piece(i)):
            return False
    return True


# fingerprints


def fingerprint(x: AlgebraElement) -> OrbitFingerprint:
    """Conjugacy invariants of a nonzero nilpotent x.

    The Jordan type of ad x is read from the ranks of its powers; a Jordan
    block of size s carries the eigenvalues s-1, s-3, ..., 1-s of ad h'.

    Raises:
        ZeroElementError: if ``x`` is zero
        NotNilpotentError: if ``x`` is not nilpotent
    """
    alg = x.algebra
    if x.is_zero:
        raise ZeroElementError("fingerprint of the zero element")
    matrix = ad_matrix(x)
    ranks = [alg.dim]
    power = matrix
    while ranks[-1]:
        if len(ranks) > alg.dim:
            raise NotNilpotentError("ad x is not nilpotent")
        ranks.append(linalg.rank(power))
        power = power * matrix
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    spectrum: Counter[int] = Counter()
    for size in range(1, len(at_least) + 1):
        exactly = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        for weight in range(size - 1, -size, -2):
            spectrum[weight] += exactly
    return OrbitFingerprint(
        centralizer_dim=at_least[0],
        height=len(at_least) - 1,
        ad_spectrum=tuple(sorted((w, m) for w, m in spectrum.items() if m)),
    )


def expected_fingerprint(d: WeightedDiagram) -> OrbitFingerprint:
    """Fingerprint every element of the orbit of a valid ``d`` has."""
    alg = build_algebra(d.simple_type)
    weights = Counter(alg.grading_weights(DefiningElement.from_diagram(d)))
    return OrbitFingerprint(
        centralizer_dim=weights[0] + weights[1],
        height=diagram_height(d),
        ad_spectrum=tuple(sorted(weights.items())),
    )


@lru_cache(maxsize=None)
def _fingerprint_table(
    t: SimpleType, seed: int, trials: int
) -> dict[OrbitFingerprint, WeightedDiagram]:
    table: dict[OrbitFingerprint, WeightedDiagram] = {}
    for record in enumerate_orbits(t, seed, trials):
        if record.diagram.is_zero:
            continue
        fp = expected_fingerprint(record.diagram)
        other = table.get(fp)
        if other is not None:
            raise FingerprintCollisionError(
                f"{other} and {record.diagram} share a fingerprint",
                simple_type=t.label,
                diagrams=[other.text, record.diagram.text],
            )
        table[fp] = record.diagram
    return table


def identify(
    fp: OrbitFingerprint,
    t: SimpleType,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> Optional[WeightedDiagram]:
    """The diagram of ``t`` with fingerprint ``fp``, or None.

    Raises:
        FingerprintCollisionError: if two valid diagrams of ``t`` share a fingerprint
    """
    return _fingerprint_table(t, seed, trials).get(fp)


# very friendly pairs


def _integral_basis(basis: Sequence[AlgebraElement]) -> list[dict[int, int]]:
    """Clear the denominators of each basis element."""
    scaled = []
    for x in basis:
        denominator = lcm(*(v.denominator for v in x.coeffs.values()))
        scaled.append({k: int(v * denominator) for k, v in x.coeffs.items()})
    return scaled


def _combine(basis: Sequence[dict[int, int]], coefficients: Sequence[int]) -> dict[int, int]:
    total: dict[int, int] = {}
    for c, vector in zip(coefficients, basis):
        if c:
            for k, v in vector.items():
                total[k] = total.get(k, 0) + c * v
    return {k: v for k, v in total.items() if v}


class _HalfTest:
    """Does x in g(4) have characteristic h/2?"""

    def __init__(self, alg: ChevalleyAlgebra, upper: WeightedDiagram):
        self.alg = alg
        by_weight = _pieces_by_weight(alg, DefiningElement.from_diagram(upper))
        self.degree_zero = by_weight.get(0, [])
        self.degree_four = by_weight.get(4, [])
        self.degree_minus_four = by_weight.get(-4, [])
        self.h_half = alg.defining_vector(DefiningElement.from_diagram(half(upper)))

    def screen(self, x: dict[int, int]) -> bool:
        """Modular rank of [g(0), x] against dim g(4)."""
        columns = self.alg.ad_columns(x, self.degree_zero, self.degree_four)
        rows = linalg.integer_rows(columns, len(self.degree_four))
        return linalg.modular_rank(rows) == len(self.degree_four)

    def certify(self, x: dict[int, int]) -> Optional[AlgebraElement]:
        """Partner f in g(-4) with [x, f] = h/2, or None."""
        return _solve_element(
            self.alg,
            self.alg.element(x),
            self.h_half,
            self.degree_minus_four,
            self.degree_zero,
        )


def _candidates(
    rng: np.random.Generator, dim: int, draws: int, sweep_max_dim: int
) -> Iterator[tuple[str, tuple[int, ...]]]:
    for _ in range(draws):
        values = rng.integers(1, COEFFICIENT_BOUND, size=dim, endpoint=True)
        yield "random", tuple(int(v) for v in values)
    if dim <= sweep_max_dim:
        for coefficients in itertools.product((-1, 0, 1), repeat=dim):
            if any(coefficients):
                yield "sweep", coefficients


def very_friendly_check(
    pair: FriendlyPair,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    draws: int = DEFAULT_DRAWS,
    sweep_max_dim: int = DEFAULT_SWEEP_MAX_DIM,
) -> CheckResult:
    """Search g^e(4) for an element of the lower orbit with characteristic h/2.

    A witness x is certified by solving ``[x, f] = h/2`` with f in g(-4).
    When g^e(4) is a line spanned by a failing generator, the verdict is a
    certified false together with the height of the generator.
    """
    upper = pair.upper.diagram
    alg = build_algebra(upper.simple_type)
    e = representative(upper, seed, trials)
    gc = graded_centralizer(e, DefiningElement.from_diagram(upper))
    basis = gc.piece(4)
    half_height = diagram_height(half(upper))
    evidence: dict[str, Any] = {"dim_ge4": len(basis), "half_height": half_height}
    if not basis:
        return CheckResult(
            name="very_friendly",
            verdict=Verdict.FALSE,
            evidence_class=EvidenceClass.OBSTRUCTION,
            evidence=evidence,
        )
    test = _HalfTest(alg, upper)
    integral = _integral_basis(basis)
    if len(basis) == 1:
        witness = test.certify(integral[0])
        if witness is None:
            evidence["generator_height"] = element_height(alg.element(integral[0]))
            logger.info(f"{upper}: g^e(4) is a line missing the lower orbit", extra=evidence)
            return CheckResult(
                name="very_friendly",
                verdict=Verdict.FALSE,
                evidence_class=EvidenceClass.OBSTRUCTION,
                evidence=evidence,
            )
        evidence["witness"] = [1]
        return CheckResult(
            name="very_friendly",
            verdict=Verdict.TRUE,
            evidence_class=EvidenceClass.WITNESS,
            evidence=evidence,
        )
    rng = np.random.default_rng([seed, *upper.marks])
    tried = 0
    for source, coefficients in _candidates(rng, len(basis), draws, sweep_max_dim):
        tried += 1
        x = _combine(integral, coefficients)
        if not x or not test.screen(x):
            continue
        if test.certify(x) is not None:
            evidence.update(witness=list(coefficients), source=source, tried=tried)
            return CheckResult(
                name="very_friendly",
                verdict=Verdict.TRUE,
                evidence_class=EvidenceClass.WITNESS,
                evidence=evidence,
            )
    evidence["tried"] = tried
    logger.warning(f"{upper}: very-friendly search exhausted", extra=evidence)
    return CheckResult(
        name="very_friendly",
        verdict=Verdict.INCONCLUSIVE,
        evidence_class=EvidenceClass.BUDGET,
        evidence=evidence,
    )


def very_friendly_witness(
    pair: FriendlyPair,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    draws: int = DEFAULT_DRAWS,
    sweep_max_dim: int = DEFAULT_SWEEP_MAX_DIM,
) -> Optional[AlgebraElement]:
    """The element behind a true :func:`very_friendly_check`, or None."""
    result = very_friendly_check(pair, seed, trials, draws, sweep_max_dim)
    if not result.passed:
        return None
    upper = pair.upper.diagram
    e = representative(upper, seed, trials)
    basis = _integral_basis(graded_centralizer(e, DefiningElement.from_diagram(upper)).piece(4))
    return e.algebra.element(_combine(basis, result.evidence["witness"]))
