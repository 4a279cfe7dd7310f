"""Pydantic models for root data labels, diagrams, partitions and reports."""

import logging
from enum import Enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .exceptions import (
    InvalidDiagramError,
    InvalidPartitionError,
    InvalidTypeError,
)

Series = Literal["A", "B", "C", "D", "E", "F", "G"]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class Numbering(str, Enum):
    """Node numbering used when diagrams are parsed or displayed."""

    BOURBAKI = "bourbaki"
    VO = "vo"


class OutputFormat(str, Enum):
    """Report formats understood by the CLI."""

    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class Family(str, Enum):
    """Classical matrix families."""

    SL = "sl"
    SP = "sp"
    SO = "so"


class Verdict(str, Enum):
    """Three-valued outcome of a verification check."""

    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


class CheckName(str, Enum):
    """Checks run by ``nilorbits verify``."""

    DIMS = "dims"
    INDEX = "index"
    HEIGHT = "height"
    REACHABLE = "reachable"
    VERY_FRIENDLY = "very-friendly"
    NILGEN = "nilgen"


class EvidenceClass(str, Enum):
    """What a verdict rests on."""

    WITNESS = "witness"
    OBSTRUCTION = "obstruction"
    BUDGET = "budget"
    COMPUTATION = "computation"


class SimpleType(BaseModel):
    """Cartan type of a simple Lie algebra, e.g. ``E8``."""

    series: Series
    rank: int

    @model_validator(mode="after")
    def _check_rank(self) -> "SimpleType":
        if self.series in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[self.series]:
                raise ValueError(
                    f"{self.series} has rank in {_FIXED_RANKS[self.series]}, "
                    f"got {self.rank}"
                )
        elif self.rank < _MIN_RANK[self.series]:
            raise ValueError(
                f"{self.series} needs rank >= {_MIN_RANK[self.series]}, got {self.rank}"
            )
        return self

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        """Create from a label such as ``"F4"`` or ``"a3"``."""
        logger = logging.getLogger(__name__)
        label = text.strip().upper()
        logger.debug(f"Parsing simple type {text!r}", extra={"label": label})
        if len(label) < 2 or label[0] not in "ABCDEFG" or not label[1:].isdigit():
            raise InvalidTypeError(
                f"Unknown Cartan type {text!r}", expected="series letter A-G + rank"
            )
        try:
            return cls(series=label[0], rank=int(label[1:]))  # type: ignore[arg-type]
        except ValueError as e:
            raise InvalidTypeError(
                f"Invalid Cartan type {text!r}", series=label[0], rank=label[1:]
            ) from e

    @property
    def label(self) -> str:
        """Short label such as ``E8``."""
        return f"{self.series}{self.rank}"

    def __str__(self) -> str:
        return self.label

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class WeightedDiagram(BaseModel):
    """Marks l_alpha in {0, 1, 2} on the nodes of a Dynkin diagram (Bourbaki order)."""

    simple_type: SimpleType
    marks: tuple[int, ...]

    @model_validator(mode="after")
    def _check_marks(self) -> "WeightedDiagram":
        if len(self.marks) != self.simple_type.rank:
            raise ValueError(
                f"{self.simple_type} needs {self.simple_type.rank} marks, "
                f"got {len(self.marks)}"
            )
        if any(m not in (0, 1, 2) for m in self.marks):
            raise ValueError(f"marks must lie in {{0, 1, 2}}, got {self.marks}")
        return self

    @classmethod
    def parse(cls, simple_type: SimpleType, text: str) -> "WeightedDiagram":
        """Create from comma separated marks, e.g. ``"2,0,2,0"``."""
        try:
            marks = tuple(int(part) for part in text.replace(" ", "").split(","))
            return cls(simple_type=simple_type, marks=marks)
        except ValueError as e:
            raise InvalidDiagramError(
                f"Malformed diagram {text!r} for {simple_type}",
                simple_type=simple_type.label,
            ) from e

    @classmethod
    def zero(cls, simple_type: SimpleType) -> "WeightedDiagram":
        """Diagram of the zero orbit."""
        return cls(simple_type=simple_type, marks=(0,) * simple_type.rank)

    @property
    def is_even(self) -> bool:
        """True when no mark equals 1."""
        return 1 not in self.marks

    @property
    def is_zero(self) -> bool:
        return not any(self.marks)

    @property
    def text(self) -> str:
        return ",".join(str(m) for m in self.marks)

    def __str__(self) -> str:
        return f"{self.simple_type}[{self.text}]"

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class Partition(BaseModel):
    """Weakly decreasing positive parts, the Jordan type of a nilpotent matrix."""

    parts: tuple[int, ...]

    @field_validator("parts")
    @classmethod
    def _check_parts(cls, parts: tuple[int, ...]) -> tuple[int, ...]:
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        return parts

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Create from comma separated parts in any order, e.g. ``"5,3"``."""
        try:
            parts = sorted(
                (int(part) for part in text.replace(" ", "").split(",")), reverse=True
            )
            return cls(parts=tuple(parts))
        except ValueError as e:
            raise InvalidPartitionError(f"Malformed partition {text!r}") from e

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def is_zero(self) -> bool:
        """True for (1, ..., 1), the partition of the zero orbit."""
        return all(p == 1 for p in self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    @property
    def text(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return f"({self.text})"

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class ClassicalAlgebra(BaseModel):
    """One of sl(V), sp(V), so(V) with dim V fixed."""

    family: Family
    dim_v: int

    @model_validator(mode="after")
    def _check_dim(self) -> "ClassicalAlgebra":
        if self.family is Family.SL and self.dim_v < 2:
            raise ValueError("sl(V) needs dim V >= 2")
        if self.family is Family.SP and (self.dim_v < 2 or self.dim_v % 2):
            raise ValueError("sp(V) needs an even dim V >= 2")
        if self.family is Family.SO and self.dim_v < 3:
            raise ValueError("so(V) needs dim V >= 3")
        return self

    def __str__(self) -> str:
        return f"{self.family.value}({self.dim_v})"

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class OrbitRecord(BaseModel):
    """Everything the enumeration knows about one nilpotent orbit."""

    diagram: WeightedDiagram
    dim_orbit: int
    height: int
    even: bool
    divisible: bool
    half: Optional[WeightedDiagram] = None
    dynkin_index: int
    graded_dims: dict[int, int] = Field(default_factory=dict)

    @property
    def dim_centralizer(self) -> int:
        """dim g^e = dim g(0) + dim g(1)."""
        return self.graded_dims.get(0, 0) + self.graded_dims.get(1, 0)

    @property
    def dim_nilradical(self) -> int:
        """dim g^e_nil = dim g(1) + dim g(2)."""
        return self.graded_dims.get(1, 0) + self.graded_dims.get(2, 0)

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class FriendlyPair(BaseModel):
    """A divisible orbit together with the orbit of its halved diagram."""

    upper: OrbitRecord
    lower: OrbitRecord
    very_friendly: Optional[bool] = None
    a2_pair: Optional[bool] = None
    lower_reachable: Optional[bool] = None

    @model_validator(mode="after")
    def _check_halves(self) -> "FriendlyPair":
        if not self.upper.even or self.upper.half != self.lower.diagram:
            raise ValueError("lower diagram must be the half of an even upper diagram")
        return self

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class ReferencePair(BaseModel):
    """One row of the published table of friendly pairs in the exceptional types.

    ``upper_vo`` lists the marks of the upper diagram in the Vinberg-Onishchik
    node order; ``reachable`` refers to the lower orbit.
    """

    simple_type: SimpleType
    lower_label: str
    upper_label: str
    upper_vo: tuple[int, ...]
    reachable: bool
    a2_pair: bool

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class LeviFactor(BaseModel):
    """Simple factor of a minimal Levi subalgebra and whether e is divisible in it."""

    label: str
    divisible: bool
    partition: Optional[Partition] = None

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class LeviDecomposition(BaseModel):
    """Minimal Levi subalgebra meeting a classical orbit.

    ``divisible`` is the conjunction over ``factors``; the zero orbit has no
    factors and is never divisible.
    """

    algebra: ClassicalAlgebra
    partition: Partition
    factors: list[LeviFactor] = Field(default_factory=list)
    divisible: bool

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class OrbitFingerprint(BaseModel):
    """Conjugacy invariants of a nilpotent element.

    ``ad_spectrum`` is the multiset of eigenvalues of ad h' as sorted
    ``(eigenvalue, multiplicity)`` pairs.
    """

    centralizer_dim: int
    height: int
    ad_spectrum: tuple[tuple[int, int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.ad_spectrum)

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
        frozen = True


class CheckResult(BaseModel):
    """Outcome of one named check with its evidence."""

    name: str
    verdict: Verdict
    evidence_class: EvidenceClass = EvidenceClass.COMPUTATION
    evidence: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.TRUE

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class VerdictRecord(BaseModel):
    """Serialized verdict ``{diagram, check, verdict, evidence, seed}``."""

    diagram: list[int]
    check: str
    verdict: Verdict
    evidence: dict[str, Any] = Field(default_factory=dict)
    seed: int

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class RunConfig(BaseModel):
    """Resolved settings for one CLI run."""

    seed: int = 0
    trials: int = Field(default=8, ge=1)
    numbering: Numbering = Numbering.BOURBAKI
    output: OutputFormat = OutputFormat.TEXT
    friendly_draws: int = Field(default=64, ge=1)
    sweep_max_dim: int = Field(default=6, ge=0)

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


__all__ = [
    "CheckName",
    "CheckResult",
    "ClassicalAlgebra",
    "EvidenceClass",
    "Family",
    "FriendlyPair",
    "LeviDecomposition",
    "LeviFactor",
    "Numbering",
    "OrbitFingerprint",
    "OrbitRecord",
    "OutputFormat",
    "Partition",
    "ReferencePair",
    "RunConfig",
    "Series",
    "SimpleType",
    "Verdict",
    "VerdictRecord",
    "WeightedDiagram",
]
