"""Gap evaluation and exact error-term certificates for a family of
conditional information inequalities over four variables A, B, X, Y.

Inequality ids and their reading (gap = right side minus left side, so a
nonnegative gap certifies the inequality):

  ingleton          I(A:B) <= I(A:B|X) + I(A:B|Y) + I(X:Y)
  reduced-ingleton  I(A:B) <= I(A:B|X) + I(A:B|Y)
  entropy-split     H(A|B,X) + H(A|B,Y) <= H(A|B)

The reduced form drops the I(X:Y) term of the Ingleton expression and the
entropy-split form is its conditional-entropy counterpart; neither holds
unconditionally, which is what the error terms quantify.  Each error term
is the base-2 log of an exact rational power sum computed over the
quadruples (a, b, x, y) with p(a,b,x) > 0 and p(a,b,y) > 0:

  gamma        sum of p(b,x) p(b,y) / p(b)
  delta        sum of p(a,x) p(a,y) p(b,x) p(b,y) / (p(a) p(x) p(y) p(b))
  delta-prime  max over support cells (a, x, y) of
               p(a,x) p(a,y) p(x,y) / (p(a) p(x) p(y) p(a,x,y))

A missing B column is treated as a constant variable throughout.

Verifier statuses: PASS (hypothesis holds and every assertion checks out),
NOT_APPLICABLE (the hypothesis fails, with a witness), and FAIL, which
flags a violated guarantee and is treated as a build-breaking event by the
CLI (exit code 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conditions import (
    PointwiseProductReport,
    Verdict,
    check_pointwise_product,
    check_support_saturation,
    check_unique_common_value,
)
from .distributions import (
    TOLERANCE,
    ZERO,
    JointDistribution,
    log2_fraction,
)
from .errors import LabError, PreconditionFailed

PASS = "PASS"
FAIL = "FAIL"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class GapReport:
    """Right side minus left side of one inequality, with the individual
    terms in bits; ``holds`` allows the shared absolute tolerance."""

    inequality: str
    gap: float
    terms: dict[str, float]

    @property
    def holds(self) -> bool:
        return self.gap >= -TOLERANCE

    def to_json_dict(self) -> dict:
        return {"inequality": self.inequality, "gap": self.gap, "terms": dict(self.terms)}


@dataclass(frozen=True)
class ErrorTermCertificate:
    """An error term together with the exact rational it is the log of.

    The float ``bits`` is derived from ``power_sum`` through a sign-faithful
    log, so bits <= 0 exactly when power_sum <= 1.
    """

    kind: str
    power_sum: Fraction
    bits: float

    @property
    def at_most_one(self) -> bool:
        return self.power_sum <= 1

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "power_sum": str(self.power_sum), "bits": self.bits}


def _certificate(kind: str, power_sum: Fraction) -> ErrorTermCertificate:
    if power_sum <= 0:
        raise LabError("BAD_PARAM", f"{kind} power sum {power_sum} must be positive")
    return ErrorTermCertificate(kind, power_sum, log2_fraction(power_sum))


def _with_b(d: JointDistribution) -> JointDistribution:
    return d if "B" in d.variables else d.with_constant("B")


def ingleton_gap(d: JointDistribution) -> GapReport:
    """Gap of I(A:B) <= I(A:B|X) + I(A:B|Y) + I(X:Y)."""
    e = _with_b(d)
    terms = {
        "I(A:B|X)": e.mutual_info("A", "B", "X"),
        "I(A:B|Y)": e.mutual_info("A", "B", "Y"),
        "I(X:Y)": e.mutual_info("X", "Y"),
        "I(A:B)": e.mutual_info("A", "B"),
    }
    gap = terms["I(A:B|X)"] + terms["I(A:B|Y)"] + terms["I(X:Y)"] - terms["I(A:B)"]
    return GapReport("ingleton", gap, terms)


def reduced_ingleton_gap(d: JointDistribution) -> GapReport:
    """Gap of I(A:B) <= I(A:B|X) + I(A:B|Y)."""
    e = _with_b(d)
    terms = {
        "I(A:B|X)": e.mutual_info("A", "B", "X"),
        "I(A:B|Y)": e.mutual_info("A", "B", "Y"),
        "I(A:B)": e.mutual_info("A", "B"),
    }
    gap = terms["I(A:B|X)"] + terms["I(A:B|Y)"] - terms["I(A:B)"]
    return GapReport("reduced-ingleton", gap, terms)


def entropy_split_gap(d: JointDistribution) -> GapReport:
    """Gap of H(A|B,X) + H(A|B,Y) <= H(A|B)."""
    e = _with_b(d)
    terms = {
        "H(A|B)": e.cond_entropy("A", "B"),
        "H(A|B,X)": e.cond_entropy("A", ("B", "X")),
        "H(A|B,Y)": e.cond_entropy("A", ("B", "Y")),
    }
    gap = terms["H(A|B)"] - terms["H(A|B,X)"] - terms["H(A|B,Y)"]
    return GapReport("entropy-split", gap, terms)


def _support_quadruples(e: JointDistribution):
    """Iterate (a, b, xs, ys): for each (a, b) group the x and y values with
    p(a,b,x) > 0 and p(a,b,y) > 0.  The error-term index set runs over one
    term per quadruple (a, b, x, y) drawn from these lists."""
    xs_by_ab: dict[tuple, list] = {}
    ys_by_ab: dict[tuple, list] = {}
    for (a, b, x) in e.table(("A", "B", "X")):
        xs_by_ab.setdefault((a, b), []).append(x)
    for (a, b, y) in e.table(("A", "B", "Y")):
        ys_by_ab.setdefault((a, b), []).append(y)
    for (a, b), xs in xs_by_ab.items():
        ys = ys_by_ab.get((a, b))
        if ys:
            yield a, b, xs, ys


def gamma_term(d: JointDistribution) -> ErrorTermCertificate:
    """Exact certificate for the entropy-split error term."""
    e = _with_b(d)
    tb = e.table(("B",))
    tbx = e.table(("B", "X"))
    tby = e.table(("B", "Y"))
    total = ZERO
    for a, b, xs, ys in _support_quadruples(e):
        pb = tb[(b,)]
        for x in xs:
            for y in ys:
                total += tbx[(b, x)] * tby[(b, y)] / pb
    return _certificate("gamma", total)


def delta_term(d: JointDistribution) -> ErrorTermCertificate:
    """Exact certificate for the reduced-Ingleton error term."""
    e = _with_b(d)
    ta = e.table(("A",))
    tb = e.table(("B",))
    tx = e.table(("X",))
    ty = e.table(("Y",))
    tax = e.table(("A", "X"))
    tay = e.table(("A", "Y"))
    tbx = e.table(("B", "X"))
    tby = e.table(("B", "Y"))
    total = ZERO
    for a, b, xs, ys in _support_quadruples(e):
        scale = ta[(a,)] * tb[(b,)]
        for x in xs:
            for y in ys:
                total += (
                    tax[(a, x)]
                    * tay[(a, y)]
                    * tbx[(b, x)]
                    * tby[(b, y)]
                    / (scale * tx[(x,)] * ty[(y,)])
                )
    return _certificate("delta", total)


def delta_prime_term(d: JointDistribution) -> ErrorTermCertificate:
    """Pointwise-maximum error term; requires cond-2-B, which guarantees the
    denominator is positive at every cell where the numerator is."""
    saturated = check_support_saturation(d)
    if not saturated.holds:
        raise PreconditionFailed(
            "delta-prime needs cond-2-B (support saturation)", saturated.witness
        )
    report = check_pointwise_product(d)
    return _certificate("delta-prime", report.max_ratio)


# ---------------------------------------------------------------------------
# verifiers


@dataclass(frozen=True)
class Lemma2Certificate:
    """Unconditional guarantees: the entropy-split gap is at least -gamma and
    the reduced-Ingleton gap is at least -delta, both within tolerance."""

    status: str
    entropy_split: GapReport
    reduced_ingleton: GapReport
    gamma: ErrorTermCertificate
    delta: ErrorTermCertificate

    @property
    def entropy_split_slack(self) -> float:
        return self.entropy_split.gap + self.gamma.bits

    @property
    def reduced_ingleton_slack(self) -> float:
        return self.reduced_ingleton.gap + self.delta.bits

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "entropy_split": self.entropy_split.to_json_dict(),
            "reduced_ingleton": self.reduced_ingleton.to_json_dict(),
            "gamma": self.gamma.to_json_dict(),
            "delta": self.delta.to_json_dict(),
            "entropy_split_slack": self.entropy_split_slack,
            "reduced_ingleton_slack": self.reduced_ingleton_slack,
        }


def verify_lemma2(d: JointDistribution) -> Lemma2Certificate:
    """Check both error-term bounds on an arbitrary distribution."""
    split = entropy_split_gap(d)
    reduced = reduced_ingleton_gap(d)
    gamma = gamma_term(d)
    delta = delta_term(d)
    ok = (
        split.gap + gamma.bits >= -TOLERANCE
        and reduced.gap + delta.bits >= -TOLERANCE
    )
    return Lemma2Certificate(PASS if ok else FAIL, split, reduced, gamma, delta)


@dataclass(frozen=True)
class Theorem1Certificate:
    """Entropy-split inequality under cond-2-C, with two exact proof routes.

    When the condition holds the verifier asserts the numeric gap, that the
    gamma power sum is at most 1 exactly, and that the route sum
    sum over (b,x,y) with p(b,x) > 0, p(b,y) > 0 of p(b,x) p(b,y) / p(b)
    equals 1 exactly (cond-2-C injects the error-term index set into the
    index set of that sum).
    """

    status: str
    condition: Verdict
    gap: GapReport | None = None
    gamma: ErrorTermCertificate | None = None
    power_sum_at_most_one: bool | None = None
    route_sum: Fraction | None = None
    route_sum_is_one: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "condition": self.condition.to_json_dict(),
            "gap": self.gap.to_json_dict() if self.gap else None,
            "gamma": self.gamma.to_json_dict() if self.gamma else None,
            "power_sum_at_most_one": self.power_sum_at_most_one,
            "route_sum": None if self.route_sum is None else str(self.route_sum),
            "route_sum_is_one": self.route_sum_is_one,
        }


def _route_sum(d: JointDistribution) -> Fraction:
    e = _with_b(d)
    tb = e.table(("B",))
    xs_by_b: dict[str, list] = {}
    ys_by_b: dict[str, list] = {}
    tbx = e.table(("B", "X"))
    tby = e.table(("B", "Y"))
    for (b, x) in tbx:
        xs_by_b.setdefault(b, []).append(x)
    for (b, y) in tby:
        ys_by_b.setdefault(b, []).append(y)
    total = ZERO
    for b, xs in xs_by_b.items():
        for x in xs:
            for y in ys_by_b.get(b, ()):
                total += tbx[(b, x)] * tby[(b, y)] / tb[(b,)]
    return total


def verify_theorem1(d: JointDistribution) -> Theorem1Certificate:
    """Entropy-split inequality for distributions satisfying cond-2-C."""
    condition = check_unique_common_value(d)
    if not condition.holds:
        return Theorem1Certificate(NOT_APPLICABLE, condition)
    gap = entropy_split_gap(d)
    gamma = gamma_term(d)
    power_ok = gamma.power_sum <= 1
    route = _route_sum(d)
    route_ok = route == 1
    ok = gap.gap >= -TOLERANCE and power_ok and route_ok
    return Theorem1Certificate(
        PASS if ok else FAIL, condition, gap, gamma, power_ok, route, route_ok
    )


@dataclass(frozen=True)
class Theorem2Certificate:
    """Reduced-Ingleton inequality with the pointwise error term under
    cond-2-B; when the pointwise product inequality additionally holds at
    every cell, the plain bound follows and the product comparison must be
    an exact equality cell by cell."""

    status: str
    condition: Verdict
    gap: GapReport | None = None
    delta_prime: ErrorTermCertificate | None = None
    pointwise: PointwiseProductReport | None = None
    bound_slack: float | None = None
    plain_bound_holds: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "condition": self.condition.to_json_dict(),
            "gap": self.gap.to_json_dict() if self.gap else None,
            "delta_prime": self.delta_prime.to_json_dict() if self.delta_prime else None,
            "pointwise": self.pointwise.to_json_dict() if self.pointwise else None,
            "bound_slack": self.bound_slack,
            "plain_bound_holds": self.plain_bound_holds,
        }


def verify_theorem2(d: JointDistribution) -> Theorem2Certificate:
    """Reduced-Ingleton bound for distributions satisfying cond-2-B."""
    condition = check_support_saturation(d)
    if not condition.holds:
        return Theorem2Certificate(NOT_APPLICABLE, condition)
    pointwise = check_pointwise_product(d)
    delta_prime = _certificate("delta-prime", pointwise.max_ratio)
    gap = reduced_ingleton_gap(d)
    slack = gap.gap + delta_prime.bits
    ok = slack >= -TOLERANCE
    plain = None
    if pointwise.holds:
        # the product inequality everywhere forces equality everywhere, and
        # the reduced bound holds without any error term
        plain = gap.gap >= -TOLERANCE
        ok = ok and plain and pointwise.equality
    return Theorem2Certificate(
        PASS if ok else FAIL, condition, gap, delta_prime, pointwise, slack, plain
    )
