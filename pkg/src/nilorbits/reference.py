"""Published friendly pairs of the exceptional types, as fixture data.

Each row names the lower and upper orbit, the upper weighted diagram in the
Vinberg-Onishchik node order, whether the lower orbit is reachable and
whether the pair is an A2-pair. Orbit labels are annotations only; nothing
in the package computes them.
"""

import logging
from typing import Optional

from .models import FriendlyPair, ReferencePair, SimpleType, WeightedDiagram
from .rootsys import from_vo

logger = logging.getLogger(__name__)

# (lower, upper, upper marks in VO order, lower reachable, A2-pair)
_ROWS: dict[str, list[tuple[str, str, str, bool, bool]]] = {
    "E6": [
        ("A1", "A2", "000002", True, True),
        ("2A1", "2A2", "200020", True, True),
        ("3A1", "D4(a1)", "002000", True, True),
        ("A2+A1", "A4", "200022", True, True),
        ("2A2+A1", "E6(a3)", "202020", True, True),
        ("A4+A1", "E6(a1)", "220222", False, False),
    ],
    "E7": [
        ("A1", "A2", "0000020", True, True),
        ("2A1", "2A2", "0200000", True, True),
        ("(3A1)'", "D4(a1)", "0000200", True, True),
        ("A2+A1", "A4", "0200020", True, True),
        ("A2+2A1", "A4+A2", "0002000", True, True),
        ("2A2+A1", "E6(a3)", "0200200", True, True),
        ("A3+A2", "A6", "0202000", False, False),
        ("A4+A1", "E6(a1)", "0202020", True, True),
    ],
    "E8": [
        ("A1", "A2", "20000000", True, True),
        ("2A1", "2A2", "00000020", True, True),
        ("3A1", "D4(a1)", "02000000", True, True),
        ("4A1", "D4(a1)+A2", "00000002", True, True),
        ("A2+A1", "A4", "20000020", True, True),
        ("A2+2A1", "A4+A2", "00200000", True, True),
        ("2A2+A1", "E6(a3)", "02000020", True, True),
        ("2A2+2A1", "E8(a7)", "00020000", True, True),
        ("A3+A2", "A6", "00200020", False, False),
        ("A4+A1", "E6(a1)", "20200020", True, True),
        ("A4+2A1", "E8(b6)", "20002000", True, False),
        ("A4+A3", "E8(a6)", "02002000", True, False),
        ("D7(a2)", "E8(a4)", "20202020", False, False),
    ],
    "F4": [
        ("A1", "A2", "0002", True, True),
        ("~A1", "~A2", "2000", True, True),
        ("A1+~A1", "F4(a3)", "0020", True, True),
        ("A1+~A2", "F4(a2)", "2020", False, False),
    ],
    "G2": [
        ("A1", "G2(a1)", "02", True, True),
    ],
}


def reference_types() -> list[SimpleType]:
    """Types covered by the table."""
    return [SimpleType.parse(label) for label in _ROWS]


def reference_pairs(t: SimpleType) -> list[ReferencePair]:
    """Rows for ``t``; empty for types outside the table."""
    return [
        ReferencePair(
            simple_type=t,
            lower_label=lower,
            upper_label=upper,
            upper_vo=tuple(int(c) for c in marks),
            reachable=reachable,
            a2_pair=a2,
        )
        for lower, upper, marks, reachable, a2 in _ROWS.get(t.label, [])
    ]


def upper_diagram(row: ReferencePair) -> WeightedDiagram:
    """Upper diagram of a row in Bourbaki order."""
    return WeightedDiagram(
        simple_type=row.simple_type, marks=from_vo(row.upper_vo, row.simple_type)
    )


def lower_diagram(row: ReferencePair) -> WeightedDiagram:
    """Lower diagram of a row in Bourbaki order."""
    upper = upper_diagram(row)
    return WeightedDiagram(
        simple_type=row.simple_type, marks=tuple(m // 2 for m in upper.marks)
    )


def find_row(pair: FriendlyPair) -> Optional[ReferencePair]:
    """The table row whose upper diagram matches ``pair``."""
    t = pair.upper.diagram.simple_type
    for row in reference_pairs(t):
        if upper_diagram(row) == pair.upper.diagram:
            return row
    return None


def annotate(pair: FriendlyPair) -> FriendlyPair:
    """Copy of ``pair`` with the A2-pair column taken from the table."""
    row = find_row(pair)
    if row is None:
        logger.debug(f"No table row for {pair.upper.diagram}")
        return pair
    return pair.model_copy(update={"a2_pair": row.a2_pair})
