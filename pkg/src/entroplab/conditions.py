"""Witness-producing checkers for support and product conditions on joint
distributions, plus consistency audits over their implications.

All checks are decided exactly on the rational atom masses; no verdict in
this module depends on floating point.  A failed check always carries the
lexicographically smallest violating tuple as its witness.

Condition ids used in verdicts and by the CLI:

  independence               p(u, v) = p(u) * p(v) at every cell
  conditional-independence   p(a,x) * p(a,y) = p(a,x,y) * p(a) at every cell
  functional                 each (x, y) cell in the support carries one a
  cond-2-B                   p(a,x) > 0 and p(a,y) > 0 imply p(a,x,y) > 0
  cond-2-C                   no a != a2 share both a row x and a column y
  pointwise-product          p(a,x) p(a,y) p(x,y) <= p(a) p(x) p(y) p(a,x,y)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .distributions import ZERO, JointDistribution, Outcome, Symbol
from .errors import LabError, PreconditionFailed

COND_INDEPENDENCE = "independence"
COND_CI_GIVEN = "conditional-independence"
COND_FUNCTIONAL = "functional"
COND_SUPPORT_SATURATION = "cond-2-B"
COND_UNIQUE_COMMON_VALUE = "cond-2-C"
COND_POINTWISE_PRODUCT = "pointwise-product"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one condition check; holds is False iff a witness exists."""

    condition: str
    holds: bool
    witness: dict | None = None
    detail: str = ""

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise LabError("BAD_PARAM", "verdict must carry a witness exactly when it fails")

    def to_json_dict(self) -> dict:
        doc = {"condition": self.condition, "holds": self.holds, "witness": self.witness}
        if self.detail:
            doc["detail"] = self.detail
        return doc


def _names(arg) -> tuple[str, ...]:
    return (arg,) if isinstance(arg, str) else tuple(arg)


def _value(outcome: Outcome):
    # single symbols serialize bare, grouped values as lists
    return outcome[0] if len(outcome) == 1 else list(outcome)


def check_independence(d: JointDistribution, first, second) -> Verdict:
    """Exact independence of two disjoint variable groups, zero cells included."""
    u = _names(first)
    v = _names(second)
    if set(u) & set(v):
        raise LabError("OVERLAPPING_SETS", f"{u} and {v} overlap")
    tu = d.table(u)
    tv = d.table(v)
    tuv = d.table(u + v)
    for cu in sorted(tu):
        for cv in sorted(tv):
            if tuv.get(cu + cv, ZERO) != tu[cu] * tv[cv]:
                witness = {name: val for name, val in zip(u + v, cu + cv)}
                return Verdict(COND_INDEPENDENCE, False, witness)
    return Verdict(COND_INDEPENDENCE, True)


def check_ci_given(d: JointDistribution, first, second, given) -> Verdict:
    """Conditional independence of two groups given a third, decided through
    the exact cross-multiplied form p(a,x) p(a,y) = p(a,x,y) p(a)."""
    x = _names(first)
    y = _names(second)
    a = _names(given)
    for s, t in ((x, y), (x, a), (y, a)):
        if set(s) & set(t):
            raise LabError("OVERLAPPING_SETS", f"{s} and {t} overlap")
    ta = d.table(a)
    tax = d.table(a + x)
    tay = d.table(a + y)
    taxy = d.table(a + x + y)
    # Cells with p(a,x) = 0 or p(a,y) = 0 make both sides vanish (the right
    # side because p(a,x,y) <= p(a,x)), so only the joined support matters.
    xs_by_a: dict[Outcome, list[Outcome]] = {}
    ys_by_a: dict[Outcome, list[Outcome]] = {}
    for key in tax:
        xs_by_a.setdefault(key[: len(a)], []).append(key[len(a) :])
    for key in tay:
        ys_by_a.setdefault(key[: len(a)], []).append(key[len(a) :])
    for ca in sorted(xs_by_a):
        for cx in sorted(xs_by_a[ca]):
            for cy in sorted(ys_by_a.get(ca, ())):
                lhs = tax[ca + cx] * tay[ca + cy]
                rhs = taxy.get(ca + cx + cy, ZERO) * ta[ca]
                if lhs != rhs:
                    witness = {name: val for name, val in zip(a + x + y, ca + cx + cy)}
                    return Verdict(COND_CI_GIVEN, False, witness)
    return Verdict(COND_CI_GIVEN, True)


def check_functional(d: JointDistribution, target="A", given=("X", "Y")) -> Verdict:
    """Support-level functional dependence: every cell of ``given`` inside the
    support determines exactly one value of ``target``."""
    t = _names(target)
    g = _names(given)
    if set(t) & set(g):
        raise LabError("OVERLAPPING_SETS", f"{t} and {g} overlap")
    table = d.table(g + t)
    cells: dict[Outcome, list[Outcome]] = {}
    for key in table:
        cells.setdefault(key[: len(g)], []).append(key[len(g) :])
    for cell in sorted(cells):
        values = sorted(cells[cell])
        if len(values) > 1:
            witness = {name: val for name, val in zip(g, cell)}
            witness["a"] = _value(values[0])
            witness["a2"] = _value(values[1])
            return Verdict(COND_FUNCTIONAL, False, witness)
    return Verdict(COND_FUNCTIONAL, True)


def _row_column_values(d: JointDistribution):
    # values of A sharing positive mass with each x and with each y
    by_x: dict[Symbol, set[Symbol]] = {}
    by_y: dict[Symbol, set[Symbol]] = {}
    for (a, x) in d.table(("A", "X")):
        by_x.setdefault(x, set()).add(a)
    for (a, y) in d.table(("A", "Y")):
        by_y.setdefault(y, set()).add(a)
    return by_x, by_y


def check_support_saturation(d: JointDistribution) -> Verdict:
    """cond-2-B: whenever a is possible with x and possible with y, the triple
    (a, x, y) itself has positive mass."""
    taxy = d.table(("A", "X", "Y"))
    xs_by_a: dict[Symbol, list[Symbol]] = {}
    ys_by_a: dict[Symbol, list[Symbol]] = {}
    for (a, x) in d.table(("A", "X")):
        xs_by_a.setdefault(a, []).append(x)
    for (a, y) in d.table(("A", "Y")):
        ys_by_a.setdefault(a, []).append(y)
    for a in sorted(xs_by_a):
        for x in sorted(xs_by_a[a]):
            for y in sorted(ys_by_a.get(a, ())):
                if (a, x, y) not in taxy:
                    return Verdict(
                        COND_SUPPORT_SATURATION,
                        False,
                        {"a": a, "x": x, "y": y},
                    )
    return Verdict(COND_SUPPORT_SATURATION, True)


def check_unique_common_value(d: JointDistribution) -> Verdict:
    """cond-2-C: no two distinct values of A are both possible with some x and
    both possible with some y.  The quantifier runs over every (x, y) pair of
    marginal support values, including pairs with p(x, y) = 0."""
    by_x, by_y = _row_column_values(d)
    best = None
    for x in by_x:
        for y in by_y:
            common = by_x[x] & by_y[y]
            if len(common) > 1:
                lo, hi = sorted(common)[:2]
                candidate = (lo, hi, x, y)
                if best is None or candidate < best:
                    best = candidate
    if best is None:
        return Verdict(COND_UNIQUE_COMMON_VALUE, True)
    a, a2, x, y = best
    return Verdict(COND_UNIQUE_COMMON_VALUE, False, {"a": a, "a2": a2, "x": x, "y": y})


@dataclass(frozen=True)
class PointwiseProductReport:
    """Verdict of the pointwise product inequality together with its exact
    extremal ratio.

    ``max_ratio`` is the largest value of
    p(a,x) p(a,y) p(x,y) / (p(a) p(x) p(y) p(a,x,y)) over cells with a
    positive denominator; ``equality`` records whether the two sides agree
    exactly at every cell of the alphabet cube.
    """

    verdict: Verdict
    equality: bool
    max_ratio: Fraction
    argmax: dict | None

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_json_dict(self) -> dict:
        doc = self.verdict.to_json_dict()
        doc["equality"] = self.equality
        doc["max_ratio"] = str(self.max_ratio)
        doc["argmax"] = self.argmax
        return doc


def check_pointwise_product(d: JointDistribution) -> PointwiseProductReport:
    """Exact check of p(a,x) p(a,y) p(x,y) <= p(a) p(x) p(y) p(a,x,y) over the
    whole alphabet cube (absent masses read as zero)."""
    ta = d.table(("A",))
    tx = d.table(("X",))
    ty = d.table(("Y",))
    tax = d.table(("A", "X"))
    tay = d.table(("A", "Y"))
    txy = d.table(("X", "Y"))
    taxy = d.table(("A", "X", "Y"))
    xs_by_a: dict[Symbol, list[Symbol]] = {}
    ys_by_a: dict[Symbol, list[Symbol]] = {}
    for (a, x) in tax:
        xs_by_a.setdefault(a, []).append(x)
    for (a, y) in tay:
        ys_by_a.setdefault(a, []).append(y)
    # Outside cells with p(a,x) > 0 and p(a,y) > 0 both sides vanish, so
    # scanning those cells decides the inequality and the equality claim.
    equality = True
    worst = None
    max_ratio = ZERO
    argmax = None
    for a in sorted(xs_by_a):
        for x in sorted(xs_by_a[a]):
            for y in sorted(ys_by_a.get(a, ())):
                lhs = tax[(a, x)] * tay[(a, y)] * txy.get((x, y), ZERO)
                rhs = ta[(a,)] * tx[(x,)] * ty[(y,)] * taxy.get((a, x, y), ZERO)
                if lhs != rhs:
                    equality = False
                if lhs > rhs:
                    candidate = (a, x, y)
                    if worst is None or candidate < worst:
                        worst = candidate
                if rhs > 0:
                    ratio = lhs / rhs
                    if ratio > max_ratio:
                        max_ratio = ratio
                        argmax = {"a": a, "x": x, "y": y}
    if worst is None:
        verdict = Verdict(COND_POINTWISE_PRODUCT, True)
    else:
        a, x, y = worst
        verdict = Verdict(
            COND_POINTWISE_PRODUCT,
            False,
            {"a": a, "x": x, "y": y},
            detail="left product exceeds right product at this cell",
        )
    return PointwiseProductReport(verdict, equality, max_ratio, argmax)


# ---------------------------------------------------------------------------
# audits


@dataclass(frozen=True)
class Lemma1Audit:
    """The four condition verdicts on one distribution and any violated
    implications among them.

    The audited implications: conditional independence of X and Y given A
    implies cond-2-B; functional plus cond-2-B imply cond-2-C; cond-2-C
    implies functional.
    """

    conditional_independence: Verdict
    functional: Verdict
    support_saturation: Verdict
    unique_common_value: Verdict
    violations: tuple[str, ...]
    fingerprint: str

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "verdicts": {
                v.condition: v.to_json_dict()
                for v in (
                    self.conditional_independence,
                    self.functional,
                    self.support_saturation,
                    self.unique_common_value,
                )
            },
            "violations": list(self.violations),
            "ok": self.ok,
            "fingerprint": self.fingerprint,
        }


def audit_lemma1(d: JointDistribution) -> Lemma1Audit:
    """Evaluate all four conditions on (A, X, Y) and cross-check the
    implication structure between them."""
    ci = check_ci_given(d, "X", "Y", "A")
    fn = check_functional(d, "A", ("X", "Y"))
    sat = check_support_saturation(d)
    ucv = check_unique_common_value(d)
    violations = []
    if ci.holds and not sat.holds:
        violations.append("conditional-independence->cond-2-B")
    if fn.holds and sat.holds and not ucv.holds:
        violations.append("functional+cond-2-B->cond-2-C")
    if ucv.holds and not fn.holds:
        violations.append("cond-2-C->functional")
    return Lemma1Audit(ci, fn, sat, ucv, tuple(violations), d.fingerprint())


@dataclass(frozen=True)
class Lemma3Audit:
    """Stability of cond-2-C under conditioning on positive-mass events."""

    trials: int
    failures: tuple[dict, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {"trials": self.trials, "ok": self.ok, "failures": list(self.failures)}


def audit_lemma3(d: JointDistribution, trials: int, seed: int) -> Lemma3Audit:
    """Condition a cond-2-C distribution on ``trials`` random positive-mass
    events (atom subsets, and B slices when a B column exists) and re-check
    the condition after each conditioning."""
    base = check_unique_common_value(d)
    if not base.holds:
        raise PreconditionFailed(
            "distribution does not satisfy cond-2-C", base.witness
        )
    rng = random.Random(seed)
    outcomes = sorted(d.atoms)
    b_values = d.alphabet("B") if "B" in d.variables else []
    failures = []
    for trial in range(trials):
        if b_values and rng.random() < 0.5:
            b = rng.choice(b_values)
            event = {"B": b}
            description = {"trial": trial, "event": f"B={b}"}
            conditioned = d.condition(event)
        else:
            count = rng.randint(1, len(outcomes))
            kept = rng.sample(outcomes, count)
            description = {"trial": trial, "event": f"{count} retained atoms"}
            conditioned = d.condition(kept)
        verdict = check_unique_common_value(conditioned)
        if not verdict.holds:
            description["witness"] = verdict.witness
            failures.append(description)
    return Lemma3Audit(trials, tuple(failures))
