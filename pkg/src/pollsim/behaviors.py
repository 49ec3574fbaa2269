"""Opportunity-driven voter behavior: safety and collaboration functions,
the two-coordinate reluctance model on the unit square, and the
one-dimensional tent-map model with exact rational iteration.

The planar model covers a four-type electorate (Z: abc, Y: a(bc),
X: bac, W: c(ab)) in reduced coordinates (x, z): the shares of X and Z
casting the two-name ballot {a, b}.  Candidate scores are

    V_a = n_z + n_y + n_x * x        V_c = n_w
    V_b = n_z * z + n_x              (rule "derived")
    V_b = n_z * z + x                (rule "literal")

The two b-score rules and the two safety normalizations are exposed as
configuration axes; they produce markedly different dynamics and the
derived/total-weight pair is the one that reproduces the documented
attractors, so nothing is silently privileged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .cultures import splitmix64


class SafetyKind(Enum):
    # margin of the second-listed score over the third when it leads the
    # first, otherwise the average of both leading margins over the third
    TWO_CASE = "two_case"
    SIMPLE_MARGIN = "simple_margin"


class Normalization(Enum):
    RAW = "raw"
    TOTAL_WEIGHT = "total"


@dataclass(frozen=True)
class SafetyFunction:
    kind: SafetyKind = SafetyKind.TWO_CASE
    normalization: Normalization = Normalization.TOTAL_WEIGHT


def safety(f: SafetyFunction, v1: float, v2: float, v3: float, total_weight: float | None = None) -> float:
    """How safe it looks not to cooperate, given the scores of the
    favorite (v1), the second choice (v2) and the rejected candidate (v3).
    Continuous in the scores; both branches agree when v1 == v2."""
    if f.normalization is Normalization.TOTAL_WEIGHT:
        if total_weight is None:
            raise ValueError("total_weight required for normalized safety")
        v1, v2, v3 = v1 / total_weight, v2 / total_weight, v3 / total_weight
    if f.kind is SafetyKind.SIMPLE_MARGIN:
        return abs(v2 - v3)
    if v2 > v1:
        return abs(v2 - v3)
    return 0.5 * abs(v2 - v3) + 0.5 * abs(v1 - v3)


@dataclass(frozen=True)
class LinearClamped:
    """C(t) = max(0, 1 - kappa t): full collaboration at zero safety,
    none beyond 1/kappa."""

    kappa: float = 5.0

    def __call__(self, t: float) -> float:
        return max(0.0, 1.0 - self.kappa * t)


@dataclass(frozen=True)
class RationalDecay:
    """C(t) = 1 / (1 + lam t): steeper near zero, never fully opts out."""

    lam: float = 45.0

    def __call__(self, t: float) -> float:
        return 1.0 / (1.0 + self.lam * t)


class BScoreRule(Enum):
    # "derived": b's score counts the whole cooperating bloc of type X.
    # "literal": the cooperating share of X contributes with unit weight.
    DERIVED = "derived"
    LITERAL = "literal"


@dataclass(frozen=True)
class ReluctanceConfig:
    n_z: float = 3.0
    n_y: float = 1.0
    n_x: float = 3.0
    n_w: float = 5.0
    safety_fn: SafetyFunction = field(default_factory=SafetyFunction)
    collaboration: object = field(default_factory=LinearClamped)
    b_score_rule: BScoreRule = BScoreRule.DERIVED

    def __post_init__(self) -> None:
        for w in (self.n_z, self.n_y, self.n_x, self.n_w):
            if w <= 0:
                raise ValueError("weights must be positive")

    @property
    def total_weight(self) -> float:
        return self.n_z + self.n_y + self.n_x + self.n_w


class PlanarReluctanceMap:
    """The (x, z) -> (x', z') map induced by opportunity-driven
    collaboration of types X and Z; maps the unit square into itself."""

    def __init__(self, config: ReluctanceConfig):
        self.config = config

    def scores(self, state: tuple[float, float]) -> tuple[float, float, float]:
        x, z = state
        c = self.config
        va = c.n_z + c.n_y + c.n_x * x
        if c.b_score_rule is BScoreRule.LITERAL:
            vb = c.n_z * z + x
        else:
            vb = c.n_z * z + c.n_x
        return va, vb, c.n_w

    def winner(self, state: tuple[float, float]) -> str:
        va, vb, vc = self.scores(state)
        best = max(enumerate((va, vb, vc)), key=lambda p: (p[1], -p[0]))[0]
        return "abc"[best]

    def step(self, state: tuple[float, float]) -> tuple[float, float]:
        c = self.config
        va, vb, vc = self.scores(state)
        total = c.total_weight
        s_z = safety(c.safety_fn, va, vb, vc, total)
        s_x = safety(c.safety_fn, vb, va, vc, total)
        z_new = min(1.0, max(0.0, c.collaboration(s_z)))
        x_new = min(1.0, max(0.0, c.collaboration(s_x)))
        return (x_new, z_new)


def build_planar_map(config: ReluctanceConfig | None = None) -> PlanarReluctanceMap:
    return PlanarReluctanceMap(config or ReluctanceConfig())


_TENT_DEN = 5**30  # odd, and 2 has huge multiplicative order mod 5**30


class TentModel:
    """One-dimensional model (Z: abc 2, Y: b(ac) 3.5, X: c(ab) 4.5).

    Only type Z reacts to polls; its cooperating share z follows
    z -> 2z on [0, 1/2], 2 - 2z on [1/2, 1], and the winner is b exactly
    when z >= 1/2.  Binary floats collapse doubling maps onto 0 after a
    few dozen steps, so long orbits run on exact rationals p/q with a
    fixed odd q; the orbit is then eventually periodic with period tied
    to the multiplicative order of 2 modulo q, which the default q makes
    astronomically large.
    """

    n_z = 2.0
    n_y = 3.5
    n_x = 4.5
    safety_fn = SafetyFunction(SafetyKind.SIMPLE_MARGIN, Normalization.TOTAL_WEIGHT)
    collaboration = LinearClamped(kappa=10.0)

    @property
    def total_weight(self) -> float:
        return self.n_z + self.n_y + self.n_x

    def scores(self, z: float) -> tuple[float, float, float]:
        return (self.n_z, self.n_y + self.n_z * float(z), self.n_x)

    def winner(self, z) -> str:
        if isinstance(z, Fraction):
            return "b" if 2 * z.numerator >= z.denominator else "c"
        return "b" if z >= 0.5 else "c"

    def step(self, z):
        if isinstance(z, Fraction):
            num, den = z.numerator, z.denominator
            two = 2 * num
            return Fraction(two, den) if two <= den else Fraction(2 * den - two, den)
        return 2.0 * z if z <= 0.5 else 2.0 - 2.0 * z

    def collaboration_step(self, z: float) -> float:
        """Same update computed through the safety/collaboration pipeline
        rather than the closed form."""
        va, vb, vc = self.scores(z)
        return self.collaboration(safety(self.safety_fn, va, vb, vc, self.total_weight))

    def default_start(self, seed: int = 0) -> Fraction:
        """A generic rational start p/q with q = 5**30 and p coprime to 5."""
        acc = 0
        x = seed & 0xFFFFFFFFFFFFFFFF
        for _ in range(3):
            x = splitmix64(x)
            acc = (acc << 64) | x
        p = acc % _TENT_DEN
        while p % 5 == 0 or p == 0:
            p += 1
        return Fraction(p, _TENT_DEN)

    def winners_word_exact(self, start: Fraction, n: int) -> str:
        """n letters of the winners word along the exact orbit of
        ``start``; integer arithmetic on a fixed denominator."""
        num, den = start.numerator, start.denominator
        if not 0 <= num <= den:
            raise ValueError("start must lie in [0, 1]")
        letters = bytearray(n)
        for k in range(n):
            two = num << 1
            letters[k] = 98 if two >= den else 99  # 'b' / 'c'
            num = two if two <= den else (den << 1) - two
        return letters.decode("ascii")


def build_tent_model() -> TentModel:
    return TentModel()
