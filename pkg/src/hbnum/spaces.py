"""Hardy/Bergman space descriptors and three-valued membership verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Hardy:
    p: float

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("Hardy exponent p must be positive")

    def __str__(self):
        return f"H^{self.p:g}"


@dataclass(frozen=True)
class Bergman:
    p: float
    alpha: float

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("Bergman exponent p must be positive")
        if not self.alpha > -1:
            raise ValueError("Bergman weight alpha must exceed -1")

    @property
    def ratio(self) -> float:
        # p/(alpha+2), the quantity the Bergman number is a sup of
        return self.p / (self.alpha + 2.0)

    def __str__(self):
        return f"A^{self.p:g}_{self.alpha:g}"


SpaceParams = Hardy | Bergman


class Status(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a membership test.

    margin is the signed distance of the decisive quantity from its threshold
    (positive for membership).  Inconclusive only arises from numeric routes;
    exact symbolic classifiers always decide.
    """

    status: Status
    margin: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def member(self) -> bool:
        return self.status is Status.MEMBER

    @property
    def non_member(self) -> bool:
        return self.status is Status.NON_MEMBER

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE


def member(margin: float, **diag) -> MembershipVerdict:
    return MembershipVerdict(Status.MEMBER, float(margin), dict(diag))


def non_member(margin: float, **diag) -> MembershipVerdict:
    return MembershipVerdict(Status.NON_MEMBER, float(margin), dict(diag))


def inconclusive(margin: float, **diag) -> MembershipVerdict:
    if math.isnan(margin):
        margin = 0.0
    return MembershipVerdict(Status.INCONCLUSIVE, float(margin), dict(diag))
