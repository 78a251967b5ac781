"""Constructive colourings of K_{r^2+r+1} x K_q from a projective plane.

Two engines live here. The plane construction lays the lines of a plane out as the rows
of a base matrix M, numbers the r+1 copies of every point in row-major order (M'), and
replaces copy l of point k by row l of a cyclic (r+1) x s block over the colours
(k, 1..s). The result M_s is row-complete with (r^2+r+1)s colours.

The one-extra-colour extension appends a column of a fresh colour d to a row-complete
p x q matrix and swaps d into a free column in every row but the first.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Set, Tuple

from achromatic_planes.colouring import (
    Colour,
    ColourMatrix,
    PointColour,
    colour_from_json,
    verify_matrix,
)
from achromatic_planes.errors import (
    BadMultiplicity,
    ExtensionFailed,
    HypothesisViolated,
    InvalidPlane,
    PreconditionViolated,
    STooSmall,
)
from achromatic_planes.gf import field_create
from achromatic_planes.plane import ProjectivePlane, plane_construct, plane_from_json, plane_size

logger = logging.getLogger("Constructions")

FANO_FIXTURE_PATH = Path(__file__).resolve().parent / "data" / "fano_display.json"

Block = Tuple[Tuple[PointColour, ...], ...]


class PointCopy(NamedTuple):
    """The l-th copy of point k in the base matrix."""

    point: int
    copy: int

    def __str__(self) -> str:
        return f"{self.point}^{self.copy}"


@dataclass(frozen=True)
class SuperscriptedMatrix:
    order: int
    cells: Tuple[Tuple[PointCopy, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.cells)


def build_base_matrix(plane: ProjectivePlane, preserve_line_order: bool = False) -> ColourMatrix:
    """Lay the lines of a plane out as the rows of an (r^2+r+1) x (r+1) matrix.

    Args:
        plane: A plane of order r
        preserve_line_order: Keep the points of each line in stored order instead of
            ascending order

    Returns:
        ColourMatrix: Row i lists the points of line i

    Raises:
        InvalidPlane: If a line does not have r+1 distinct points, or the point or line
            count is not r^2+r+1
    """
    r = plane.order
    n = plane_size(r)
    if len(plane.points) != n:
        raise InvalidPlane(f"plane of order {r} has {len(plane.points)} points, expected {n}")
    if len(plane.lines) != n:
        raise InvalidPlane(f"plane of order {r} has {len(plane.lines)} lines, expected {n}")
    rows = []
    for index, line in enumerate(plane.lines):
        if len(set(line)) != r + 1 or len(line) != r + 1:
            raise InvalidPlane(f"line {index} has {len(set(line))} points, expected {r + 1}")
        rows.append(tuple(line) if preserve_line_order else tuple(sorted(line)))
    return ColourMatrix(tuple(rows))


def build_superscripted(base: ColourMatrix) -> SuperscriptedMatrix:
    """Number the copies of every point in row-major order.

    Raises:
        BadMultiplicity: If some point does not occur exactly r+1 times
    """
    r = base.cols - 1
    seen: Dict[Colour, int] = {}
    cells = []
    for row in base.cells:
        out = []
        for point in row:
            if not isinstance(point, int) or isinstance(point, bool):
                raise BadMultiplicity(f"base matrix entry {point!r} is not a point label")
            seen[point] = seen.get(point, 0) + 1
            out.append(PointCopy(point, seen[point]))
        cells.append(tuple(out))
    wrong = {k: count for k, count in seen.items() if count != r + 1}
    if wrong:
        raise BadMultiplicity(f"points {sorted(wrong)} do not occur {r + 1} times: {wrong}")
    return SuperscriptedMatrix(order=r, cells=tuple(cells))


def build_cyclic_block(k: int, s: int, r: int) -> Block:
    """The (r+1) x s block whose cell (i, j) is (k, (i+j-1) mod s in [1, s]), 1-based."""
    if s < 1:
        raise PreconditionViolated(f"cyclic block needs s >= 1, got {s}")
    return tuple(
        tuple(PointColour(k, (i + j) % s + 1) for j in range(s)) for i in range(r + 1)
    )


def assemble_ms(superscripted: SuperscriptedMatrix, s: int) -> ColourMatrix:
    """Replace each copy p_k^l by row l of the cyclic block of point k.

    No hypothesis on s is checked here; see :func:`build_ms`.
    """
    blocks: Dict[int, Block] = {}
    rows = []
    for row in superscripted.cells:
        out: List[Colour] = []
        for cell in row:
            if cell.point not in blocks:
                blocks[cell.point] = build_cyclic_block(cell.point, s, superscripted.order)
            out.extend(blocks[cell.point][cell.copy - 1])
        rows.append(tuple(out))
    return ColourMatrix(tuple(rows))


def build_ms(plane: ProjectivePlane, s: int, preserve_line_order: bool = False) -> ColourMatrix:
    """Build the row-complete (r^2+r+1) x (r+1)s matrix with (r^2+r+1)s colours.

    Args:
        plane: A projective plane of order r
        s: Number of shifts per point, at least r+1
        preserve_line_order: Passed to :func:`build_base_matrix`

    Raises:
        STooSmall: If ``s <= r``
    """
    r = plane.order
    if s <= r:
        raise STooSmall(f"Lemma 3 requires s >= r+1 (got s={s}, r={r})")
    base = build_base_matrix(plane, preserve_line_order=preserve_line_order)
    matrix = assemble_ms(build_superscripted(base), s)
    logger.info("Built M_s for r=%d, s=%d: %dx%d", r, s, matrix.rows, matrix.cols)
    return matrix


def extend_plus_one(matrix: ColourMatrix, d: Colour) -> ColourMatrix:
    """Add one colour to a row-complete matrix by appending and redistributing a column.

    Row 1 keeps d in the new column. Every later row swaps d with the entry in the smallest
    column j such that no earlier row has d in column j and the displaced entry does not
    already occur in the new column.

    Args:
        matrix: A row-complete p x q matrix with p >= 3 and q >= 2p-1
        d: A colour not occurring in ``matrix``

    Returns:
        ColourMatrix: A row-complete p x (q+1) matrix with one more colour

    Raises:
        PreconditionViolated: If the dimensions, row-completeness or freshness of d fail
        ExtensionFailed: If some row has no valid column
    """
    p, q = matrix.shape
    if p < 3 or q < 2 * p - 1:
        raise PreconditionViolated(
            f"Lemma 2 requires p >= 3 and q >= 2p-1 (got p={p}, q={q})"
        )
    if d in set(matrix.colours()):
        raise PreconditionViolated(f"colour {d!r} already occurs in the matrix")
    report = verify_matrix(matrix, mode="row")
    if not report.passed:
        raise PreconditionViolated("Lemma 2 requires a proper row-complete input matrix")

    rows = [list(row) + [d] for row in matrix.cells]
    d_columns: Set[int] = set()
    last_column: Set[Colour] = {d}
    for i in range(1, p):
        for j in range(q):
            if j in d_columns or rows[i][j] in last_column:
                continue
            displaced = rows[i][j]
            rows[i][j], rows[i][q] = d, displaced
            d_columns.add(j)
            last_column.add(displaced)
            break
        else:
            raise ExtensionFailed(f"no column available for {d!r} in row {i}")
    logger.debug("Extended %dx%d matrix with colour %r", p, q, d)
    return ColourMatrix(tuple(tuple(row) for row in rows))


def build_colouring(r: int, s: int, t: int) -> ColourMatrix:
    """Build the lower-bound witness with (r^2+r+1)s+t colours on K_{r^2+r+1} x K_{(r+1)s+t}.

    The t extra colours are labelled ``"d1"``, ``"d2"``, ... and added one at a time.

    Raises:
        HypothesisViolated: If t is outside [0, r], or t >= 1 and s < r^3+1
        STooSmall: If s <= r
        NotPrimePower: If r is not a prime power
    """
    if not 0 <= t <= r:
        raise HypothesisViolated(f"Theorem 4 requires t in [0, r] (got t={t}, r={r})")
    if t >= 1 and s < r**3 + 1:
        raise HypothesisViolated(f"Theorem 4 requires s >= r^3+1 (got s={s}, r={r})")
    plane = plane_construct(field_create(r))
    matrix = build_ms(plane, s)
    for n in range(1, t + 1):
        matrix = extend_plus_one(matrix, f"d{n}")
    logger.info(
        "Built colouring r=%d s=%d t=%d: %dx%d, %d colours",
        r,
        s,
        t,
        matrix.rows,
        matrix.cols,
        plane_size(r) * s + t,
    )
    return matrix


@dataclass
class CoverageChannels:
    """Rows covering colour pairs of M_s, split by how the pair is covered.

    ``distinct`` maps a point pair (k, l) to the rows holding colours of both points;
    ``equal`` maps a point k to the rows holding all s colours of k.
    """

    distinct: Dict[Tuple[int, int], Tuple[int, ...]]
    equal: Dict[int, Tuple[int, ...]]


def coverage_channels(matrix: ColourMatrix, s: int) -> CoverageChannels:
    distinct: Dict[Tuple[int, int], List[int]] = {}
    equal: Dict[int, List[int]] = {}
    for index, row in enumerate(matrix.cells):
        shifts: Dict[int, Set[int]] = {}
        for colour in row:
            if isinstance(colour, PointColour):
                shifts.setdefault(colour.point, set()).add(colour.shift)
        points = sorted(shifts)
        for a_pos, a in enumerate(points):
            for b in points[a_pos + 1 :]:
                distinct.setdefault((a, b), []).append(index)
            if len(shifts[a]) == s:
                equal.setdefault(a, []).append(index)
    return CoverageChannels(
        distinct={k: tuple(v) for k, v in distinct.items()},
        equal={k: tuple(v) for k, v in equal.items()},
    )


@dataclass
class FanoFixture:
    """The displayed Fano example: plane labelling with row order, M, M' and M_3."""

    plane: ProjectivePlane
    s: int
    base: ColourMatrix
    superscripted: Tuple[Tuple[PointCopy, ...], ...]
    ms: ColourMatrix


def _parse_copy(raw: str) -> PointCopy:
    point, copy = raw.split("^")
    return PointCopy(int(point), int(copy))


def load_fano_fixture(path: Optional[Path] = None) -> FanoFixture:
    """Load the golden Fano fixture shipped in ``achromatic_planes/data``."""
    path = path or FANO_FIXTURE_PATH
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return FanoFixture(
        plane=plane_from_json(data, keep_order=True),
        s=data["s"],
        base=ColourMatrix(tuple(tuple(row) for row in data["M"])),
        superscripted=tuple(tuple(_parse_copy(c) for c in row) for row in data["M_prime"]),
        ms=ColourMatrix(tuple(tuple(colour_from_json(c) for c in row) for row in data["M_s"])),
    )
