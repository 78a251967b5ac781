"""Matrix model of proper complete colourings of K_p x K_q (Cartesian product).

A p x q matrix M describes the colouring f_M(i, j) = M[i][j]. The colouring is proper iff
every row and every column holds distinct colours, and complete iff every pair of distinct
colours shares a line (row or column). Row-complete matrices share a row for every pair.
"""

from __future__ import annotations

import itertools
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Mapping, NamedTuple, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np
from typing_extensions import TypeAlias

from achromatic_planes.errors import MatrixFormatError

logger = logging.getLogger("ColouringVerifier")

DEFAULT_MAX_WITNESSES = 10

MODES: Tuple[str, ...] = ("line", "row")

_STRUCTURED = re.compile(r"^(?P<point>\d+):(?P<shift>\d+)$")


class PointColour(NamedTuple):
    """Structured colour (point k, shift t) of the plane construction."""

    point: int
    shift: int

    def __str__(self) -> str:
        return f"{self.point}:{self.shift}"


Colour: TypeAlias = Union[int, str, PointColour]


def colour_key(colour: Colour) -> Tuple[int, Any]:
    """Total order over mixed colour kinds: integers, then strings, then pairs."""
    if isinstance(colour, PointColour):
        return (2, (colour.point, colour.shift))
    if isinstance(colour, str):
        return (1, colour)
    return (0, colour)


def colour_to_json(colour: Colour) -> Union[int, str]:
    if isinstance(colour, PointColour):
        return str(colour)
    return colour


def colour_from_json(raw: Any) -> Colour:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise MatrixFormatError(f"colour label must be an integer or string, got {raw!r}")
    if isinstance(raw, str):
        match = _STRUCTURED.match(raw)
        if match:
            return PointColour(int(match.group("point")), int(match.group("shift")))
    return raw


def _check_colour(colour: Any) -> None:
    if isinstance(colour, PointColour):
        if colour.point < 1 or colour.shift < 1:
            raise MatrixFormatError(f"structured colour {colour!r} needs k >= 1 and t >= 1")
    elif isinstance(colour, bool) or not isinstance(colour, (int, str)):
        raise MatrixFormatError(f"unsupported colour {colour!r}")


@dataclass(frozen=True)
class ColourMatrix:
    """A populated p x q matrix of colours (0-based positions)."""

    cells: Tuple[Tuple[Colour, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(tuple(row) for row in self.cells)
        if not cells or not cells[0]:
            raise MatrixFormatError("a colour matrix needs at least one row and one column")
        width = len(cells[0])
        for i, row in enumerate(cells):
            if len(row) != width:
                raise MatrixFormatError(f"row {i} has {len(row)} cells, expected {width}")
            for colour in row:
                _check_colour(colour)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Colour]]) -> ColourMatrix:
        return cls(tuple(tuple(row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> Tuple[Colour, ...]:
        return self.cells[i]

    def column(self, j: int) -> Tuple[Colour, ...]:
        return tuple(row[j] for row in self.cells)

    def colours(self) -> List[Colour]:
        """Distinct colours in ``colour_key`` order."""
        return sorted({c for row in self.cells for c in row}, key=colour_key)

    def transpose(self) -> ColourMatrix:
        return ColourMatrix(tuple(zip(*self.cells)))

    def permute_rows(self, order: Sequence[int]) -> ColourMatrix:
        return ColourMatrix(tuple(self.cells[i] for i in order))

    def permute_columns(self, order: Sequence[int]) -> ColourMatrix:
        return ColourMatrix(tuple(tuple(row[j] for j in order) for row in self.cells))

    def index_array(self) -> Tuple[np.ndarray, List[Colour]]:
        """Encode the matrix as colour indices into the sorted palette."""
        palette = self.colours()
        position = {c: k for k, c in enumerate(palette)}
        array = np.array([[position[c] for c in row] for row in self.cells], dtype=np.int64)
        return array, palette


@dataclass
class Check:
    passed: bool
    witnesses: List[Any] = field(default_factory=list)
    violations: int = 0


@dataclass
class VerificationReport:
    """Properness and completeness of a colour matrix.

    Witness lists are capped and kept in scan order; ``violations`` counts all failures.
    """

    proper_rows: Check
    proper_cols: Check
    complete: Check
    mode: str
    colour_count: int
    shape: Tuple[int, int]

    @property
    def proper(self) -> bool:
        return self.proper_rows.passed and self.proper_cols.passed

    @property
    def passed(self) -> bool:
        return self.proper and self.complete.passed

    def to_dict(self) -> Dict[str, Any]:
        def pack(check: Check) -> Dict[str, Any]:
            return {
                "passed": check.passed,
                "violations": check.violations,
                "witnesses": check.witnesses,
            }

        return {
            "mode": self.mode,
            "rows": self.shape[0],
            "cols": self.shape[1],
            "colour_count": self.colour_count,
            "passed": self.passed,
            "proper_rows": pack(self.proper_rows),
            "proper_cols": pack(self.proper_cols),
            "complete": pack(self.complete),
        }


def _duplicates(
    lines: Sequence[Sequence[Colour]], kind: str, max_witnesses: int
) -> Check:
    check = Check(passed=True)
    for index, line in enumerate(lines):
        seen: Dict[Colour, int] = {}
        for position, colour in enumerate(line):
            if colour in seen:
                check.passed = False
                check.violations += 1
                if len(check.witnesses) < max_witnesses:
                    check.witnesses.append(
                        {
                            kind: index,
                            "positions": [seen[colour], position],
                            "colour": colour_to_json(colour),
                        }
                    )
            else:
                seen[colour] = position
    return check


def verify_matrix(
    matrix: ColourMatrix, mode: str = "line", max_witnesses: int = DEFAULT_MAX_WITNESSES
) -> VerificationReport:
    """Decide membership of a matrix in the line-complete or row-complete class.

    Completeness is evaluated over the colours that occur in the matrix. Coverage is marked
    into a boolean pair table, one colour-set block per line.

    Args:
        matrix: The matrix to check
        mode: ``"line"`` (rows or columns cover pairs) or ``"row"`` (rows only)
        max_witnesses: Witness cap per check

    Returns:
        VerificationReport: The three checks and the colour count

    Raises:
        ValueError: If ``mode`` is unknown
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    proper_rows = _duplicates(matrix.cells, "row", max_witnesses)
    proper_cols = _duplicates(
        [matrix.column(j) for j in range(matrix.cols)], "col", max_witnesses
    )

    index, palette = matrix.index_array()
    n = len(palette)
    covered = np.zeros((n, n), dtype=bool)
    lines = list(index) if mode == "row" else list(index) + list(index.T)
    for line in lines:
        ids = np.unique(line)
        covered[np.ix_(ids, ids)] = True
    upper_i, upper_j = np.triu_indices(n, k=1)
    missing = np.flatnonzero(~covered[upper_i, upper_j])
    complete = Check(passed=missing.size == 0, violations=int(missing.size))
    for k in missing[:max_witnesses]:
        complete.witnesses.append(
            [colour_to_json(palette[upper_i[k]]), colour_to_json(palette[upper_j[k]])]
        )

    report = VerificationReport(
        proper_rows=proper_rows,
        proper_cols=proper_cols,
        complete=complete,
        mode=mode,
        colour_count=n,
        shape=matrix.shape,
    )
    if report.passed:
        logger.debug("%dx%d matrix passes (%s mode, %d colours)", *matrix.shape, mode, n)
    else:
        logger.warning(
            "%dx%d matrix fails (%s mode): %d row, %d column, %d pair violations",
            matrix.rows,
            matrix.cols,
            mode,
            proper_rows.violations,
            proper_cols.violations,
            complete.violations,
        )
    return report


@dataclass
class FrequencyReport:
    counts: Dict[Colour, int]
    minimum: int

    def to_dict(self) -> Dict[str, Any]:
        ordered = sorted(self.counts.items(), key=lambda item: colour_key(item[0]))
        return {"minimum": self.minimum, "counts": {str(c): k for c, k in ordered}}


def colour_frequencies(matrix: ColourMatrix) -> FrequencyReport:
    """Count occurrences of every colour; ``minimum`` is the smallest count."""
    counts = Counter(c for row in matrix.cells for c in row)
    return FrequencyReport(counts=dict(counts), minimum=min(counts.values()))


@dataclass
class GraphCheck:
    proper: bool
    complete: bool
    missing_pairs: int


def verify_graph_colouring(matrix: ColourMatrix) -> GraphCheck:
    """Check f_M directly on the graph K_p x K_q, edge by edge.

    Independent of :func:`verify_matrix`: adjacency comes from the product definition
    rather than from lines of the matrix.
    """
    graph = nx.cartesian_product(nx.complete_graph(matrix.rows), nx.complete_graph(matrix.cols))
    proper = True
    seen: Set[FrozenSet[Colour]] = set()
    for (i1, j1), (i2, j2) in graph.edges():
        a, b = matrix.cells[i1][j1], matrix.cells[i2][j2]
        if a == b:
            proper = False
            continue
        seen.add(frozenset((a, b)))
    palette = matrix.colours()
    wanted = {frozenset(pair) for pair in itertools.combinations(palette, 2)}
    missing = len(wanted - seen)
    return GraphCheck(proper=proper, complete=missing == 0, missing_pairs=missing)


def matrix_to_json(matrix: ColourMatrix) -> Dict[str, Any]:
    """Serialize a matrix; structured colours are written as ``"k:t"`` strings.

    Raises:
        MatrixFormatError: If an opaque string label already has the ``"k:t"`` form
    """
    for row in matrix.cells:
        for colour in row:
            if isinstance(colour, str) and _STRUCTURED.match(colour):
                raise MatrixFormatError(
                    f"string label {colour!r} would re-parse as a structured colour"
                )
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "cells": [[colour_to_json(c) for c in row] for row in matrix.cells],
    }


def matrix_from_json(data: Mapping[str, Any]) -> ColourMatrix:
    """Parse ``{"rows": p, "cols": q, "cells": [[...]]}``; ``"k:t"`` strings become pairs.

    Raises:
        MatrixFormatError: If the document is malformed or its dimensions disagree
    """
    try:
        rows, cols, cells = data["rows"], data["cols"], data["cells"]
    except (KeyError, TypeError) as e:
        raise MatrixFormatError(f"matrix document is missing {e}") from e
    if not isinstance(cells, list) or not all(isinstance(row, list) for row in cells):
        raise MatrixFormatError("matrix 'cells' must be a list of lists")
    matrix = ColourMatrix(tuple(tuple(colour_from_json(c) for c in row) for row in cells))
    if matrix.shape != (rows, cols):
        raise MatrixFormatError(
            f"declared shape {rows}x{cols} does not match cells {matrix.rows}x{matrix.cols}"
        )
    return matrix


def load_matrix(text: str) -> ColourMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"invalid matrix JSON: {e}") from e
    return matrix_from_json(data)
