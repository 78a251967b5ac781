"""Closed-form bounds on achr(K_p x K_q).

Everything here is exact integer or ``Fraction`` arithmetic. Each bound carries the name of
the rule that produced it, e.g. ``"Theorem4.lower"`` or ``"Lemma1.3"``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from achromatic_planes.colouring import ColourMatrix, colour_frequencies, verify_matrix
from achromatic_planes.constructions import build_colouring
from achromatic_planes.errors import HypothesisViolated, PreconditionViolated
from achromatic_planes.gf import is_prime_power
from achromatic_planes.plane import plane_size

logger = logging.getLogger("Bounds")

# lim achr(K_p x K_q)/q for p <= 6
KNOWN_LIMITS: Dict[int, Fraction] = {
    1: Fraction(1),
    2: Fraction(1),
    3: Fraction(3, 2),
    4: Fraction(5, 3),
    5: Fraction(9, 5),
    6: Fraction(2),
}


@dataclass
class ConstraintResult:
    rule: str
    statement: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "statement": self.statement,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


@dataclass
class Lemma1Report:
    p: int
    q: int
    a: int
    l: int  # noqa: E741
    constraints: List[ConstraintResult]

    @property
    def satisfied(self) -> bool:
        return all(c.holds for c in self.constraints)

    def violated(self) -> List[str]:
        return [c.rule for c in self.constraints if not c.holds]


def lemma1_constraints(p: int, q: int, a: int, l: int) -> Lemma1Report:  # noqa: E741
    """Evaluate l <= p, l <= floor(pq/a) and a <= l(p+q-l-1)+1.

    Raises:
        PreconditionViolated: Unless p >= 1, q >= p, a >= 1 and l >= 1
    """
    if p < 1 or q < p or a < 1 or l < 1:
        raise PreconditionViolated(
            f"Lemma 1 needs p >= 1, q >= p, a >= 1, l >= 1 (got p={p}, q={q}, a={a}, l={l})"
        )
    constraints = [
        ConstraintResult("Lemma1.1", "l <= p", l, p),
        ConstraintResult("Lemma1.2", "l <= floor(pq/a)", l, (p * q) // a),
        ConstraintResult("Lemma1.3", "a <= l(p+q-l-1)+1", a, l * (p + q - l - 1) + 1),
    ]
    return Lemma1Report(p=p, q=q, a=a, l=l, constraints=constraints)


def lemma1_cap(p: int, q: int) -> int:
    """Largest a for which some minimum frequency l satisfies all Lemma 1 constraints."""
    best = 0
    for l in range(1, min(p, q) + 1):  # noqa: E741
        best = max(best, min(l * (p + q - l - 1) + 1, (p * q) // l))
    return best


@dataclass
class BoundValue:
    value: int
    rule: str


@dataclass
class BoundsReport:
    """Lower and upper bounds on achr(K_p x K_q) with their provenance."""

    p: int
    q: int
    lower: Optional[BoundValue] = None
    upper: Optional[BoundValue] = None
    exact: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    witness: Optional[ColourMatrix] = None
    witness_summary: Optional[Dict[str, Any]] = None

    def __post_init__(self) -> None:
        if self.lower and self.upper and self.lower.value > self.upper.value:
            raise AssertionError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def to_dict(self) -> Dict[str, Any]:
        def pack(bound: Optional[BoundValue]) -> Optional[Dict[str, Any]]:
            return None if bound is None else {"value": bound.value, "rule": bound.rule}

        data: Dict[str, Any] = {
            "p": self.p,
            "q": self.q,
            "lower": pack(self.lower),
            "upper": pack(self.upper),
            "exact": self.exact,
            "notes": list(self.notes),
        }
        if self.witness_summary is not None:
            data["witness"] = self.witness_summary
        return data


def check_theorem4_hypotheses(r: int, s: int, t: int) -> None:
    if r < 2:
        raise HypothesisViolated(f"Theorem 4 requires r >= 2 (got r={r})")
    if not 0 <= t <= r:
        raise HypothesisViolated(f"Theorem 4 requires t in [0, r] (got t={t}, r={r})")
    if s < r**3 + 1:
        raise HypothesisViolated(f"Theorem 4 requires s >= r^3+1 (got s={s}, r={r})")


def theorem4_bounds(r: int, s: int, t: int, attach_witness: bool = False) -> BoundsReport:
    """(r^2+r+1)s + t <= achr(K_{r^2+r+1} x K_{(r+1)s+t}) <= (r^2+r+1)s + rt.

    Args:
        r: Plane order; non-prime-powers are accepted for the arithmetic only
        s: At least r^3+1
        t: In [0, r]
        attach_witness: Build and verify the lower-bound witness matrix

    Raises:
        HypothesisViolated: If r, s or t is out of range
    """
    check_theorem4_hypotheses(r, s, t)
    p = plane_size(r)
    report = BoundsReport(
        p=p,
        q=(r + 1) * s + t,
        lower=BoundValue(p * s + t, "Theorem4.lower"),
        upper=BoundValue(p * s + r * t, "Theorem4.upper"),
    )
    if t == 0:
        report.exact = p * s
        report.notes.append("Corollary: t = 0 closes the bracket")
    else:
        report.notes.append("tightness of the upper bound for t >= 1 is open; reported as a range")
    prime_power = is_prime_power(r)
    if not prime_power:
        report.notes.append(f"r={r} is not a prime power: arithmetic only, no plane is built")
    if attach_witness:
        if prime_power:
            witness = build_colouring(r, s, t)
            check = verify_matrix(witness, mode="row")
            report.witness = witness
            report.witness_summary = {
                "rows": witness.rows,
                "cols": witness.cols,
                "colour_count": check.colour_count,
                "row_complete": check.passed,
                "min_frequency": colour_frequencies(witness).minimum,
            }
            report.notes.append("lower bound witnessed by Lemma 3 plus t one-colour extensions")
        else:
            report.notes.append("witness skipped: no construction for this order")
    logger.info("Theorem 4 bounds r=%d s=%d t=%d: [%d, %d]", r, s, t, p * s + t, p * s + r * t)
    return report


def _known(p: int, q: int) -> Optional[Tuple[int, str]]:
    p, q = min(p, q), max(p, q)
    if p == 1:
        return q, "Theorem1.trivial"
    if p == 2 and q >= 3:
        return q + 1, "Theorem1.1"
    if p == 3 and q >= 4:
        return (3 * q) // 2, "Theorem1.2"
    if p == 4 and q >= 25:
        return (5 * q) // 3, "Theorem1.3"
    if p == 5 and q >= 43:
        return (9 * q) // 5, "Theorem1.4"
    if p == 6 and q >= 41 and q % 2 == 1:
        return 2 * q + 3, "Theorem1.5"
    if p == 6 and q >= 42 and q % 2 == 0:
        return 2 * q + 4, "Theorem1.6"
    return None


def known_value(p: int, q: int) -> Optional[int]:
    """Return the known exact achr(K_p x K_q) for p <= 6 inside the listed ranges."""
    found = _known(p, q)
    return None if found is None else found[0]


def known_rule(p: int, q: int) -> Optional[str]:
    found = _known(p, q)
    return None if found is None else found[1]


@dataclass
class RatioReport:
    r: int
    ratio: Fraction
    known_limits: Dict[int, Fraction]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "p": plane_size(self.r),
            "ratio": str(self.ratio),
            "known_limits": {str(p): str(v) for p, v in self.known_limits.items()},
        }


def asymptotic_ratio(r: int) -> RatioReport:
    """The limit (r^2+r+1)/(r+1) of achr(K_{r^2+r+1} x K_q)/q, in lowest terms."""
    if r < 2:
        raise HypothesisViolated(f"the limit theorem requires r >= 2 (got r={r})")
    return RatioReport(r=r, ratio=Fraction(plane_size(r), r + 1), known_limits=dict(KNOWN_LIMITS))


def ratio_bracket(r: int, q: int) -> Tuple[Fraction, Fraction]:
    """Sandwich achr(K_{r^2+r+1} x K_q)/q between the two sides of the Theorem 4 bracket.

    Raises:
        HypothesisViolated: If floor(q/(r+1)) < r^3+1
    """
    s = q // (r + 1)
    if r < 2 or s < r**3 + 1:
        raise HypothesisViolated(
            f"the ratio bracket requires r >= 2 and floor(q/(r+1)) >= r^3+1 (got r={r}, q={q})"
        )
    p = plane_size(r)
    return Fraction(p * s, q), Fraction(p * s + r * r, q)


@dataclass
class DerivationStep:
    rule: str
    statement: str
    value: int


@dataclass
class BoundDerivation:
    r: int
    s: int
    t: int
    l: int  # noqa: E741
    branch: str
    bound: int
    steps: List[DerivationStep]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "s": self.s,
            "t": self.t,
            "l": self.l,
            "branch": self.branch,
            "bound": self.bound,
            "steps": [
                {"rule": x.rule, "statement": x.statement, "value": x.value}
                for x in self.steps
            ],
        }


def upper_bound_chain(r: int, s: int, t: int, l: int) -> BoundDerivation:  # noqa: E741
    """Replay the upper-bound argument of Theorem 4 for a given minimum frequency l.

    With l = r+1 every colour class has at least r+1 cells; with l <= r the Lemma 1.3
    polynomial in l is increasing up to r. Both branches end at or below
    (r^2+r+1)s + rt.

    Raises:
        HypothesisViolated: If the Theorem 4 hypotheses fail, l < 1, or l exceeds the
            Lemma 1.2 cap
    """
    check_theorem4_hypotheses(r, s, t)
    p = plane_size(r)
    q = (r + 1) * s + t
    cap = (p * q) // (p * s)
    steps = [DerivationStep("Lemma1.2", "l <= floor(pq / ((r^2+r+1)s)) = r+1", cap)]
    if l < 1 or l > cap:
        raise HypothesisViolated(f"minimum frequency l={l} must lie in [1, {cap}] by Lemma 1.2")
    target = p * s + r * t
    if l == r + 1:
        bound = p * s + (p * t) // (r + 1)
        steps.append(
            DerivationStep(
                "Theorem4.upper", "a <= (r^2+r+1)s + floor((r^2+r+1)t/(r+1))", bound
            )
        )
        steps.append(DerivationStep("Theorem4.upper", "= (r^2+r+1)s + rt", target))
        branch = "l = r+1"
    else:
        bound = l * (p + q - l - 1) + 1
        steps.append(DerivationStep("Lemma1.3", "a <= l(r^2+r+1+(r+1)s+t-l-1)+1", bound))
        relaxed = r * (r * r + (r + 1) * s + t) + 1
        steps.append(
            DerivationStep("Lemma1.3", "<= r(r^2+(r+1)s+t)+1, increasing for l <= r", relaxed)
        )
        steps.append(
            DerivationStep("Theorem4.upper", "<= (r^2+r+1)s + rt when s >= r^3+1", target)
        )
        branch = "l <= r"
    return BoundDerivation(r=r, s=s, t=t, l=l, branch=branch, bound=bound, steps=steps)


def _plane_order_for(p: int) -> Optional[int]:
    r = 2
    while plane_size(r) <= p:
        if plane_size(r) == p:
            return r
        r += 1
    return None


def product_bounds(p: int, q: int, attach_witness: bool = False) -> BoundsReport:
    """Bounds for K_p x K_q when the pair has one of the closed forms known here.

    Uses a Theorem 1 value when one applies; otherwise writes one side as r^2+r+1 and the
    other as (r+1)s + k with k in [0, r] and applies Theorem 4.

    Raises:
        HypothesisViolated: If neither form applies
    """
    found = _known(p, q)
    if found is not None:
        value, rule = found
        return BoundsReport(
            p=p,
            q=q,
            lower=BoundValue(value, rule),
            upper=BoundValue(value, rule),
            exact=value,
        )
    for side, other in ((p, q), (q, p)):
        r = _plane_order_for(side)
        if r is None:
            continue
        s, k = divmod(other, r + 1)
        if s >= r**3 + 1:
            report = theorem4_bounds(r, s, k, attach_witness=attach_witness)
            report.p, report.q = p, q
            report.notes.append(f"decomposed as r={r}, q=(r+1)*{s}+{k}")
            return report
    raise HypothesisViolated(
        f"no closed form for ({p}, {q}): needs p <= 6 in a Theorem 1 range, or one side "
        "r^2+r+1 and the other at least (r+1)(r^3+1)"
    )
