"""Probabilities of fuzzy events over finite interpretations.

Given a probability distribution mu over the domain, the probability of a
fuzzy concept is the expectation of its membership function::

    P(C) = sum_d C(d) * mu(d)

Conditional constraints ``(C | D)[l, u]`` hold when ``P(C and D) / P(D)``
lies inside the interval (endpoints absorb the comparison tolerance); a
zero-probability conditioning event leaves the ratio undefined.  Relative
cardinality ``|C and D| / |D|`` is the uniform-distribution special case,
and the subsethood degree of C in D is ``|C and D| / |C|``.

Conditioning on a singleton ``{x}`` collapses to the membership degree
C(x); both routes are computed and cross-checked here.  Conjunction uses
min throughout, so this module is pinned to the ``zadeh`` family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .concepts import And, Concept, Name, Nominal, ProbAssertion
from .errors import (
    UndefinedConditionalError,
    UndefinedSubsethoodError,
)
from .fuzzy import (
    EPS_CMP,
    ZADEH,
    FuzzyInterpretation,
    LogicFamily,
    eval_concept,
)
from .mlp import ActivityTable, Network, StimulusSet, forward

__all__ = [
    "EPS_PROB",
    "EPS_NUM",
    "Distribution",
    "FuzzyProbInterp",
    "fuzzy_event_prob",
    "conditional_prob",
    "check_conditional",
    "fuzzy_cardinality",
    "relative_cardinality",
    "subsethood",
    "nominal_conditional",
    "network_prob_abox",
    "load_distribution",
]

EPS_PROB = 1e-9
EPS_NUM = 1e-9


@dataclass(frozen=True)
class Distribution:
    """A probability mass function over domain elements; missing mass is 0."""

    mu: dict[str, float]

    def __post_init__(self) -> None:
        total = 0.0
        for elem, p in self.mu.items():
            if p < 0.0:
                raise ValueError(f"negative probability {p!r} at {elem!r}")
            total += p
        if abs(total - 1.0) > EPS_PROB:
            raise ValueError(
                f"distribution mass {total!r} is not 1 within {EPS_PROB}"
            )

    def prob(self, elem: str) -> float:
        return self.mu.get(elem, 0.0)

    @classmethod
    def uniform(cls, domain: tuple[str, ...] | list[str]) -> "Distribution":
        n = len(domain)
        if n == 0:
            raise ValueError("cannot build a distribution over an empty domain")
        return cls({elem: 1.0 / n for elem in domain})

    @classmethod
    def from_json(cls, obj: dict) -> "Distribution":
        if not isinstance(obj, dict) or "mu" not in obj:
            raise ValueError("a distribution object needs a 'mu' mapping")
        return cls({str(k): float(v) for k, v in obj["mu"].items()})

    def to_json(self) -> dict:
        return {"mu": dict(self.mu)}


def load_distribution(path: str | Path) -> Distribution:
    return Distribution.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass
class FuzzyProbInterp:
    """A fuzzy interpretation paired with a distribution over its domain."""

    interp: FuzzyInterpretation
    dist: Distribution
    family: LogicFamily = ZADEH

    def __post_init__(self) -> None:
        if self.family.name != "zadeh":
            raise ValueError(
                "probabilities of fuzzy events are defined here for the"
                " zadeh family only"
            )
        members = set(self.interp.domain)
        for elem in self.dist.mu:
            if elem not in members:
                raise ValueError(
                    f"distribution assigns mass to unknown element {elem!r}"
                )


def fuzzy_event_prob(fpi: FuzzyProbInterp, concept: Concept) -> float:
    """Expected membership of the concept under the distribution."""
    return sum(
        eval_concept(fpi.interp, fpi.family, concept, d) * fpi.dist.prob(d)
        for d in fpi.interp.domain
    )


def conditional_prob(fpi: FuzzyProbInterp, left: Concept, given: Concept) -> float:
    """P(left and given) / P(given); undefined on zero-probability givens."""
    denom = fuzzy_event_prob(fpi, given)
    if denom == 0.0:
        raise UndefinedConditionalError(
            f"conditioning event {given} has probability zero"
        )
    return fuzzy_event_prob(fpi, And(left, given)) / denom


def check_conditional(
    fpi: FuzzyProbInterp,
    left: Concept,
    given: Concept,
    lower: float,
    upper: float,
    eps: float = EPS_CMP,
) -> bool:
    """Whether the conditional probability lies in [lower, upper]."""
    ratio = conditional_prob(fpi, left, given)
    return lower - eps <= ratio <= upper + eps


def fuzzy_cardinality(
    interp: FuzzyInterpretation, concept: Concept, family: LogicFamily = ZADEH
) -> float:
    """Sigma-count: the sum of membership degrees over the domain."""
    return sum(eval_concept(interp, family, concept, d) for d in interp.domain)


def relative_cardinality(
    interp: FuzzyInterpretation, left: Concept, given: Concept
) -> float:
    """|left and given| / |given| with min conjunction."""
    denom = fuzzy_cardinality(interp, given)
    if denom == 0.0:
        raise UndefinedConditionalError(
            f"conditioning concept {given} has zero cardinality"
        )
    return fuzzy_cardinality(interp, And(left, given)) / denom


def subsethood(
    interp: FuzzyInterpretation, left: Concept, right: Concept
) -> float:
    """Degree to which left is contained in right: |left and right| / |left|."""
    denom = fuzzy_cardinality(interp, left)
    if denom == 0.0:
        raise UndefinedSubsethoodError(
            f"concept {left} has zero cardinality; subsethood is undefined"
        )
    return fuzzy_cardinality(interp, And(left, right)) / denom


def nominal_conditional(fpi: FuzzyProbInterp, concept: Concept, individual: str) -> float:
    """Conditional probability of the concept given the singleton {individual}.

    Computed as the event ratio and cross-checked against the membership
    degree at the individual's element; the two agree up to rounding.
    """
    elem = fpi.interp.element_of(individual)
    if fpi.dist.prob(elem) == 0.0:
        raise UndefinedConditionalError(
            f"individual {individual!r} carries probability zero"
        )
    ratio = conditional_prob(fpi, concept, Nominal(individual))
    direct = eval_concept(fpi.interp, fpi.family, concept, elem)
    if abs(ratio - direct) > EPS_NUM:
        raise ArithmeticError(
            f"singleton conditioning disagrees with membership:"
            f" {ratio!r} vs {direct!r}"
        )
    return ratio


def network_prob_abox(
    net: Network,
    stimuli: StimulusSet,
    table: ActivityTable | None = None,
) -> list[ProbAssertion]:
    """One probabilistic assertion per unit and stimulus: P(C_k(x))[y_k(x)].

    Activities are read as the probabilities that the unit's concept
    applies to the stimulus, with stimulus ids doubling as individuals.
    """
    if table is None:
        table = forward(net, stimuli)
    out: list[ProbAssertion] = []
    for u in net.units:
        for sid in stimuli.ids:
            out.append(ProbAssertion(Name(u.id), sid, table.activity[sid][u.id]))
    return out
