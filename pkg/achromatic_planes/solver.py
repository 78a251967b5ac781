"""Exact achromatic number of K_p x K_q for small p*q by branch and bound.

The search fills a p x q matrix in row-major order. The first row is fixed to colours
1..q and new colours are introduced in first-use order, which removes the column
permutation and colour relabelling symmetries. Each cell tries the existing colours in
ascending order and then one fresh colour, so the first optimum found is the smallest
optimal witness in row-major colour-index order.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional

import psutil

from achromatic_planes.bounds import lemma1_cap
from achromatic_planes.colouring import ColourMatrix, matrix_to_json
from achromatic_planes.errors import PreconditionViolated

logger = logging.getLogger("AchromaticSolver")

DEFAULT_PROGRESS_INTERVAL = 200_000

_CLOCK_CHECK_MASK = 1023

_cap = lru_cache(maxsize=None)(lemma1_cap)


class _BudgetExhausted(Exception):
    pass


class _CapReached(Exception):
    pass


@dataclass
class SearchNode:
    """Mutable state of the depth-first search.

    ``cells`` holds 0-based colour indices (-1 while unfilled). ``cover[a][b]`` counts the
    filled line pairs holding colours a and b; ``uncovered`` counts pairs of used colours
    whose count is zero.
    """

    p: int
    q: int
    cells: List[int]
    row_masks: List[int]
    col_masks: List[int]
    cover: List[List[int]]
    colours_used: int = 0
    uncovered: int = 0
    filled: int = 0
    best: int = 0

    @classmethod
    def empty(cls, p: int, q: int, capacity: int) -> SearchNode:
        return cls(
            p=p,
            q=q,
            cells=[-1] * (p * q),
            row_masks=[0] * p,
            col_masks=[0] * q,
            cover=[[0] * capacity for _ in range(capacity)],
        )

    @property
    def remaining(self) -> int:
        return self.p * self.q - self.filled

    def _neighbours(self, pos: int) -> List[int]:
        i, j = divmod(pos, self.q)
        row_start = i * self.q
        return self.cells[row_start : row_start + j] + [
            self.cells[k * self.q + j] for k in range(i)
        ]

    def introduce(self) -> int:
        colour = self.colours_used
        self.uncovered += colour
        self.colours_used += 1
        return colour

    def retract(self) -> None:
        self.colours_used -= 1
        self.uncovered -= self.colours_used

    def place(self, pos: int, colour: int) -> None:
        cover = self.cover
        for other in self._neighbours(pos):
            if cover[colour][other] == 0:
                self.uncovered -= 1
            cover[colour][other] += 1
            cover[other][colour] += 1
        i, j = divmod(pos, self.q)
        self.row_masks[i] |= 1 << colour
        self.col_masks[j] |= 1 << colour
        self.cells[pos] = colour
        self.filled += 1

    def unplace(self, pos: int, colour: int) -> None:
        i, j = divmod(pos, self.q)
        self.cells[pos] = -1
        self.filled -= 1
        self.row_masks[i] &= ~(1 << colour)
        self.col_masks[j] &= ~(1 << colour)
        cover = self.cover
        for other in self._neighbours(pos):
            cover[colour][other] -= 1
            cover[other][colour] -= 1
            if cover[colour][other] == 0:
                self.uncovered += 1

    def deficit_exceeds_capacity(self) -> bool:
        """True when the open colour pairs cannot all be covered by the unfilled cells."""
        return self.uncovered > self.remaining * (self.p + self.q - 2)


def prune_bound(node: SearchNode, p: int, q: int) -> int:
    """Admissible upper bound on the colour count of any completion of ``node``.

    Every unfilled cell adds at most one colour, and no complete matrix beats the Lemma 1
    cap. A full node is bounded by its own colour count.
    """
    if node.remaining == 0:
        return node.colours_used
    return min(_cap(p, q), node.colours_used + node.remaining)


@dataclass
class SolverResult:
    p: int
    q: int
    value: int
    witness: ColourMatrix
    complete: bool
    nodes: int
    elapsed: float
    upper_bound: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "value": self.value,
            "complete": self.complete,
            "upper_bound": self.upper_bound,
            "nodes": self.nodes,
            "elapsed_seconds": round(self.elapsed, 3),
            "notes": list(self.notes),
            "witness": matrix_to_json(self.witness),
        }


def baseline_witness(p: int, q: int) -> ColourMatrix:
    """The cyclic colouring (i + j) mod max(p, q); proper and complete."""
    n = max(p, q)
    return ColourMatrix(tuple(tuple((i + j) % n + 1 for j in range(q)) for i in range(p)))


class _Search:
    def __init__(
        self, p: int, q: int, budget: Optional[float], progress_interval: int
    ) -> None:
        self.p = p
        self.q = q
        self.cap = _cap(p, q)
        self.node = SearchNode.empty(p, q, self.cap)
        # the cyclic baseline already reaches max(p, q)
        self.node.best = max(p, q) - 1
        self.best_cells: Optional[List[int]] = None
        self.nodes = 0
        self.started = time.monotonic()
        self.deadline = None if budget is None else self.started + budget
        self.progress_interval = max(progress_interval, 1)
        self.process = psutil.Process()

    def run(self) -> None:
        node = self.node
        for j in range(self.q):
            node.place(j, node.introduce())
        self._dfs(self.q)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes & _CLOCK_CHECK_MASK == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _BudgetExhausted
        if self.nodes % self.progress_interval == 0:
            logger.info(
                "K_%d x K_%d: nodes=%d best=%d elapsed=%.1fs rss=%.1fMB",
                self.p,
                self.q,
                self.nodes,
                self.node.best,
                time.monotonic() - self.started,
                self.process.memory_info().rss / 2**20,
            )

    def _dfs(self, pos: int) -> None:
        self._tick()
        node = self.node
        if pos == self.p * self.q:
            if node.uncovered == 0 and node.colours_used > node.best:
                node.best = node.colours_used
                self.best_cells = list(node.cells)
                logger.debug("K_%d x K_%d: new best %d", self.p, self.q, node.best)
                if node.best >= self.cap:
                    raise _CapReached
            return
        if prune_bound(node, self.p, self.q) <= node.best or node.deficit_exceeds_capacity():
            return
        i, j = divmod(pos, self.q)
        forbidden = node.row_masks[i] | node.col_masks[j]
        for colour in range(node.colours_used):
            if not (forbidden >> colour) & 1:
                node.place(pos, colour)
                try:
                    self._dfs(pos + 1)
                finally:
                    node.unplace(pos, colour)
        if node.colours_used < self.cap:
            colour = node.introduce()
            node.place(pos, colour)
            try:
                self._dfs(pos + 1)
            finally:
                node.unplace(pos, colour)
                node.retract()

    def witness(self) -> Optional[ColourMatrix]:
        if self.best_cells is None:
            return None
        q = self.q
        rows = [self.best_cells[i * q : (i + 1) * q] for i in range(self.p)]
        return ColourMatrix(tuple(tuple(c + 1 for c in row) for row in rows))


def achromatic_exact(
    p: int,
    q: int,
    budget: Optional[float] = None,
    progress_interval: int = DEFAULT_PROGRESS_INTERVAL,
) -> SolverResult:
    """Compute achr(K_p x K_q) with a witness matrix.

    Args:
        p: Number of rows, at least 1
        q: Number of columns, at least 1
        budget: Time limit in seconds; None searches to completion
        progress_interval: Log a progress line every this many nodes

    Returns:
        SolverResult: ``complete`` is False when the budget ran out; ``value`` is then the
        best colour count found so far and ``upper_bound`` the Lemma 1 cap

    Raises:
        PreconditionViolated: If p or q is below 1
    """
    if p < 1 or q < 1:
        raise PreconditionViolated(f"the solver needs p >= 1 and q >= 1 (got p={p}, q={q})")
    search = _Search(p, q, budget, progress_interval)
    complete = True
    try:
        search.run()
    except _CapReached:
        pass
    except _BudgetExhausted:
        complete = False
        logger.warning("K_%d x K_%d: budget of %.1fs exhausted", p, q, budget or 0.0)
    elapsed = time.monotonic() - search.started

    found = search.witness()
    notes: List[str] = []
    if found is None:
        witness = baseline_witness(p, q)
        notes.append("witness is the cyclic baseline colouring")
    else:
        witness = found
    value = search.node.best if found is not None else max(p, q)
    result = SolverResult(
        p=p,
        q=q,
        value=value,
        witness=witness,
        complete=complete,
        nodes=search.nodes,
        elapsed=elapsed,
        upper_bound=value if complete else search.cap,
        notes=notes,
    )
    logger.info(
        "K_%d x K_%d: achr %s %d after %d nodes in %.2fs",
        p,
        q,
        "=" if complete else ">=",
        value,
        search.nodes,
        elapsed,
    )
    return result
