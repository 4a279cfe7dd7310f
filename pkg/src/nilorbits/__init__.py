"""nilorbits - nilpotent orbits of simple Lie algebras from root data.

nilorbits builds root systems and Chevalley bases for every simple type,
decides which weighted Dynkin diagrams belong to nilpotent orbits, and
studies divisible orbits: those whose diagram halves to another orbit's
diagram. All ranks, kernels and images are computed over the rationals.

Key Features:
    - Root systems and Chevalley structure constants for types A-G
    - Enumeration of nilpotent orbits by their weighted Dynkin diagrams
    - Friendly pairs, very-friendly witnesses and reachability
    - Partition criteria and explicit e<2> matrices for sl, sp and so
    - Branching combinatorics of the SL3 model algebra

Example:
    >>> from nilorbits import SimpleType, friendly_pairs
    >>> len(friendly_pairs(SimpleType.parse("G2")))
    1
"""

# Each module logs through logging.getLogger(__name__). Applications
# configure handlers themselves, e.g. with logging.basicConfig(level=logging.INFO).
import logging

from .centralizers import (
    GradedCentralizer,
    complete_sl2,
    element_height,
    fingerprint,
    graded_centralizer,
    identify,
    is_reachable,
    very_friendly_check,
)
from .chevalley import AlgebraElement, ChevalleyAlgebra, DefiningElement, build_algebra
from .classical import (
    MatrixTriple,
    build_e2,
    build_triple,
    diagram_from_partition,
    half_partition,
    is_divisible_partition,
    minimal_levi,
    validate_partition,
)
from .config import ConfigManager, get_config
from .exceptions import (
    AlgebraError,
    CentralizerError,
    DiagramError,
    InvalidDiagramError,
    InvalidPartitionError,
    InvalidTypeError,
    NilorbitsConfigurationError,
    NilorbitsError,
    NotDivisibleError,
    PartitionError,
    Sl3Error,
)
from .models import (
    CheckResult,
    ClassicalAlgebra,
    Family,
    FriendlyPair,
    OrbitRecord,
    Partition,
    RunConfig,
    SimpleType,
    Verdict,
    WeightedDiagram,
)
from .orbits import (
    diagram_height,
    dynkin_index,
    enumerate_orbits,
    friendly_pairs,
    half,
    is_characteristic,
    is_divisible,
)
from .rootsys import RootSystem, build_root_system

# Add a NullHandler to the top-level nilorbits logger to prevent warnings if the
# application does not configure logging
_logger = logging.getLogger("nilorbits")
_logger.addHandler(logging.NullHandler())

__version__ = "0.1.0"
__author__ = "Adithya"
__email__ = "adithyakokkirala@gmail.com"

__all__ = [
    "AlgebraElement",
    "AlgebraError",
    "CentralizerError",
    "CheckResult",
    "ChevalleyAlgebra",
    "ClassicalAlgebra",
    "ConfigManager",
    "DefiningElement",
    "DiagramError",
    "Family",
    "FriendlyPair",
    "GradedCentralizer",
    "InvalidDiagramError",
    "InvalidPartitionError",
    "InvalidTypeError",
    "MatrixTriple",
    "NilorbitsConfigurationError",
    "NilorbitsError",
    "NotDivisibleError",
    "OrbitRecord",
    "Partition",
    "PartitionError",
    "RootSystem",
    "RunConfig",
    "SimpleType",
    "Sl3Error",
    "Verdict",
    "WeightedDiagram",
    "__author__",
    "__email__",
    "__version__",
    "build_algebra",
    "build_e2",
    "build_root_system",
    "build_triple",
    "complete_sl2",
    "diagram_from_partition",
    "diagram_height",
    "dynkin_index",
    "element_height",
    "enumerate_orbits",
    "fingerprint",
    "friendly_pairs",
    "get_config",
    "graded_centralizer",
    "half",
    "half_partition",
    "identify",
    "is_characteristic",
    "is_divisible",
    "is_divisible_partition",
    "is_reachable",
    "minimal_levi",
    "validate_partition",
    "very_friendly_check",
]
