"""Built-in benchmark constellations.

Six named designs used throughout the documentation, tests, and the
command line: an asymmetric four-point layout whose origin symbol sits
on a hull edge (and therefore collapses at large noise), the standard
four-point QAM square, and two matched design pairs, pentagon versus
cross-with-center at average power 1 and rectangle versus kite at
average power 5/8 with common minimum distance 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownName
from .geometry import Constellation


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    constellation: Constellation
    provenance: str


def _pentagon() -> list[list[float]]:
    return [
        [math.cos(2.0 * math.pi * k / 5.0), math.sin(2.0 * math.pi * k / 5.0)]
        for k in range(5)
    ]


_CROSS_ARM = math.sqrt(5.0 / 4.0)
_RECT_Y = math.sqrt(3.0 / 8.0)

_ENTRIES = [
    CatalogEntry(
        "asym4",
        Constellation(
            [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]],
            labels=("P1", "P2", "P3", "P4"),
        ),
        "Asymmetric four-point benchmark: the origin plus unit points east, "
        "north, and south. All nearest-neighbor distances are 1, but the "
        "origin lies on an edge of the convex hull and collapses at large "
        "noise.",
    ),
    CatalogEntry(
        "qam4",
        Constellation(
            [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]],
            labels=("Q1", "Q2", "Q3", "Q4"),
        ),
        "Standard 4QAM square at (+-1, +-1); fully symmetric sanity check "
        "with identical descriptors at every symbol.",
    ),
    CatalogEntry(
        "pentagon5",
        Constellation(_pentagon(), labels=("V0", "V1", "V2", "V3", "V4")),
        "Regular pentagon on the unit circle (average power 1); hull-only "
        "five-point design with equal angular fractions 1/5.",
    ),
    CatalogEntry(
        "cross5",
        Constellation(
            [
                [0.0, 0.0],
                [_CROSS_ARM, 0.0],
                [-_CROSS_ARM, 0.0],
                [0.0, _CROSS_ARM],
                [0.0, -_CROSS_ARM],
            ],
            labels=("center", "east", "west", "north", "south"),
        ),
        "Cross-with-center five-point design at average power 1; the center "
        "symbol is interior to the hull and collapses at large noise.",
    ),
    CatalogEntry(
        "rect4",
        Constellation(
            [
                [0.5, _RECT_Y],
                [-0.5, _RECT_Y],
                [-0.5, -_RECT_Y],
                [0.5, -_RECT_Y],
            ],
            labels=("ne", "nw", "sw", "se"),
        ),
        "Rectangle with width 1 and height 2*sqrt(3/8): average power 5/8, "
        "minimum distance 1, the low-burden member of the matched pair.",
    ),
    CatalogEntry(
        "kite4",
        Constellation(
            [[0.0, 1.0], [0.5, 0.0], [0.0, -1.0], [-0.5, 0.0]],
            labels=("top", "right", "bottom", "left"),
        ),
        "Kite with tips at (0, +-1) and side points at (+-1/2, 0): same "
        "average power 5/8 and minimum distance 1 as the rectangle but a "
        "strictly larger worst-symbol burden.",
    ),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_get(name: str) -> CatalogEntry:
    """Look up a built-in constellation by name."""
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(catalog_names())
        raise UnknownName(f"unknown constellation {name!r} (known: {known})") from None
