"""Finite projective planes: the PG(2, r) construction and an axiom verifier.

Points are labelled 1..n. Lines are tuples of point labels and are referenced by their
position in ``ProjectivePlane.lines`` (0-based). The verifier accepts any incidence
structure, not only constructed planes.
"""

from __future__ import annotations

import itertools
import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

from achromatic_planes.errors import MatrixFormatError, NoUniqueLine, PreconditionViolated
from achromatic_planes.gf import Field, FieldElement

logger = logging.getLogger("PlaneVerifier")

DEFAULT_MAX_WITNESSES = 10

CHECK_NAMES = ("A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "B5")

CHECK_DESCRIPTIONS = {
    "A1": "two distinct points lie on exactly one line",
    "A2": "two distinct lines intersect (line-intersection reading of the axiom)",
    "A3": "four points exist determining six distinct lines",
    "A4": "some line has r+1 points",
    "B1": "two distinct lines meet in exactly one point",
    "B2": "every line has r+1 points",
    "B3": "every point lies on r+1 lines",
    "B4": "there are r^2+r+1 points",
    "B5": "there are r^2+r+1 lines",
}


def plane_size(order: int) -> int:
    return order * order + order + 1


@dataclass(frozen=True)
class ProjectivePlane:
    """A point-line incidence structure claimed to have the given order.

    Attributes:
        order: Claimed order r
        lines: Lines as tuples of point labels
        points: Point labels, ascending
    """

    order: int
    lines: Tuple[Tuple[int, ...], ...]
    points: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.points:
            labels = set(range(1, plane_size(self.order) + 1))
            labels.update(label for line in self.lines for label in line)
            object.__setattr__(self, "points", tuple(sorted(labels)))

    @property
    def point_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(line) for line in self.lines)

    def incidence(self) -> Dict[int, Tuple[int, ...]]:
        """Map each point label to the indices of the lines through it."""
        through: Dict[int, List[int]] = {p: [] for p in self.points}
        for index, line in enumerate(self.lines):
            for p in line:
                through.setdefault(p, []).append(index)
        return {p: tuple(idx) for p, idx in through.items()}


def _normalized_triples(gf: Field) -> List[Tuple[FieldElement, FieldElement, FieldElement]]:
    one = gf.one
    triples = []
    for triple in itertools.product(list(gf.elements()), repeat=3):
        leading = next((x for x in triple if not x.is_zero()), None)
        if leading == one:
            triples.append(triple)
    triples.sort(key=lambda t: tuple(x.value for x in t))
    return triples


def plane_construct(gf: Field) -> ProjectivePlane:
    """Build PG(2, r) over the given field.

    Points and lines are the normalized nonzero homogeneous triples (first nonzero
    coordinate 1) in ascending canonical order. Point x lies on line u iff x . u = 0.

    Args:
        gf: The field GF(r)

    Returns:
        ProjectivePlane: The plane with ascending lines
    """
    triples = _normalized_triples(gf)
    zero = gf.zero
    lines = []
    for u in triples:
        members = tuple(
            label
            for label, x in enumerate(triples, start=1)
            if x[0] * u[0] + x[1] * u[1] + x[2] * u[2] == zero
        )
        lines.append(members)
    plane = ProjectivePlane(order=gf.order, lines=tuple(lines))
    logger.info("Constructed PG(2,%d): %d points, %d lines", gf.order, len(triples), len(lines))
    return plane


@dataclass
class CheckResult:
    name: str
    passed: bool
    description: str
    witnesses: List[Any] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "description": self.description,
            "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
        }


@dataclass
class PlaneVerificationReport:
    """Outcome of each axiom and property check, keyed A1..A4, B1..B5."""

    order: int
    checks: Dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks.values())

    def failed(self) -> List[str]:
        return [name for name in CHECK_NAMES if not self.checks[name].passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "passed": self.passed,
            "checks": [self.checks[name].to_dict() for name in CHECK_NAMES],
        }


class _Witnesses:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.items: List[Any] = []
        self.failed = False

    def add(self, item: Any) -> None:
        self.failed = True
        if len(self.items) < self.limit:
            self.items.append(item)


def _pair_line_counts(plane: ProjectivePlane) -> Dict[Tuple[int, int], List[int]]:
    pairs: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for index, line in enumerate(plane.lines):
        for a, b in itertools.combinations(sorted(set(line)), 2):
            pairs[(a, b)].append(index)
    return pairs


def _has_quadrilateral(
    points: Sequence[int], pair_lines: Mapping[Tuple[int, int], List[int]]
) -> Optional[Tuple[int, ...]]:
    for quad in itertools.combinations(points, 4):
        joined: Set[int] = set()
        for pair in itertools.combinations(quad, 2):
            found = pair_lines.get(pair, [])
            if len(found) != 1:
                break
            joined.add(found[0])
        else:
            if len(joined) == 6:
                return quad
    return None


def plane_verify(
    plane: ProjectivePlane, max_witnesses: int = DEFAULT_MAX_WITNESSES
) -> PlaneVerificationReport:
    """Check the axioms A1-A4 and the properties B1-B5.

    Failures are report content. Each failed check keeps at most ``max_witnesses``
    witnesses in scan order.

    Args:
        plane: Any incidence structure
        max_witnesses: Witness cap per check

    Returns:
        PlaneVerificationReport: One entry per check
    """
    r = plane.order
    n = plane_size(r)
    sets = plane.point_sets
    pair_lines = _pair_line_counts(plane)
    results: Dict[str, _Witnesses] = {name: _Witnesses(max_witnesses) for name in CHECK_NAMES}

    for pair in itertools.combinations(plane.points, 2):
        count = len(pair_lines.get(pair, []))
        if count != 1:
            results["A1"].add((pair[0], pair[1], count))

    for i, j in itertools.combinations(range(len(sets)), 2):
        common = len(sets[i] & sets[j])
        if common == 0:
            results["A2"].add((i, j))
        if common != 1:
            results["B1"].add((i, j, common))

    quad = _has_quadrilateral(plane.points, pair_lines)
    if quad is None:
        results["A3"].add("no four points determine six distinct lines")

    if not any(len(s) == r + 1 for s in sets):
        results["A4"].add(f"no line of size {r + 1}")

    for index, s in enumerate(sets):
        if len(s) != r + 1:
            results["B2"].add((index, len(s)))

    degree = Counter(p for s in sets for p in s)
    for p in plane.points:
        if degree[p] != r + 1:
            results["B3"].add((p, degree[p]))

    if len(plane.points) != n:
        results["B4"].add(f"{len(plane.points)} points, expected {n}")
    if len(plane.lines) != n:
        results["B5"].add(f"{len(plane.lines)} lines, expected {n}")

    checks = {
        name: CheckResult(name, not w.failed, CHECK_DESCRIPTIONS[name], w.items)
        for name, w in results.items()
    }
    report = PlaneVerificationReport(order=r, checks=checks)
    if report.passed:
        logger.info("Plane of order %d passes all checks (quadrilateral %s)", r, quad)
    else:
        logger.warning("Plane of order %d fails %s", r, ", ".join(report.failed()))
    return report


def line_through(plane: ProjectivePlane, p1: int, p2: int) -> int:
    """Return the index of the unique line through two distinct points.

    Raises:
        PreconditionViolated: If ``p1 == p2``
        NoUniqueLine: If the pair lies on zero or several lines
    """
    if p1 == p2:
        raise PreconditionViolated(f"line_through needs two distinct points, got {p1} twice")
    found = [i for i, line in enumerate(plane.lines) if p1 in line and p2 in line]
    if len(found) != 1:
        raise NoUniqueLine(p1, p2, len(found))
    return found[0]


def lines_through(plane: ProjectivePlane, point: int) -> Tuple[int, ...]:
    return plane.incidence().get(point, ())


def flag_count(plane: ProjectivePlane) -> int:
    """Number of incident point-line pairs."""
    return sum(len(set(line)) for line in plane.lines)


def plane_to_json(plane: ProjectivePlane) -> Dict[str, Any]:
    return {"order": plane.order, "lines": [sorted(line) for line in plane.lines]}


def plane_from_json(data: Mapping[str, Any], keep_order: bool = False) -> ProjectivePlane:
    """Parse the plane interchange document ``{"order": r, "lines": [[...], ...]}``.

    Args:
        data: Parsed JSON document
        keep_order: Keep each line in the order given instead of sorting it

    Raises:
        MatrixFormatError: If the document is malformed
    """
    try:
        order = data["order"]
        raw_lines = data["lines"]
    except (KeyError, TypeError) as e:
        raise MatrixFormatError(f"plane document is missing {e}") from e
    if not isinstance(order, int) or isinstance(order, bool) or order < 2:
        raise MatrixFormatError(f"plane order must be an integer >= 2, got {order!r}")
    if not isinstance(raw_lines, list):
        raise MatrixFormatError("plane 'lines' must be a list")
    lines: List[Tuple[int, ...]] = []
    for raw in raw_lines:
        if not isinstance(raw, list) or not all(
            isinstance(p, int) and not isinstance(p, bool) and p >= 1 for p in raw
        ):
            raise MatrixFormatError(f"line {raw!r} is not a list of positive integers")
        lines.append(tuple(raw) if keep_order else tuple(sorted(raw)))
    return ProjectivePlane(order=order, lines=tuple(lines))


def load_plane(text: str, keep_order: bool = False) -> ProjectivePlane:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"invalid plane JSON: {e}") from e
    return plane_from_json(data, keep_order=keep_order)


