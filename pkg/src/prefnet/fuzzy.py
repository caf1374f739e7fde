"""Fuzzy interpretation structures and concept evaluation.

An interpretation has a finite nonempty domain, fuzzy concept tables
(degrees in [0, 1], absent entries read as 0), fuzzy role tables (absent
pairs and absent roles read as 0, so mostly-crisp fixtures stay sparse),
and a partial map from individual names to domain elements.  Crisp
two-valued semantics is the special case where every degree is 0 or 1.

Connectives are interpreted through a :class:`LogicFamily` bundling a
t-norm, its dual s-norm, a negation, and an implication:

* ``zadeh``: min, max, 1 - a, and the implication max(1 - a, b)
* ``goedel``: min, max, residual negation, residual implication
* ``lukasiewicz``: max(0, a + b - 1), min(1, a + b), 1 - a, min(1, 1 - a + b)
* ``product``: a * b, a + b - a * b, residual negation, b / a residual

Quantifiers take the best (existential) or worst (universal) witness over
the finite domain::

    (exists r.C)(x) = max_y tnorm(r(x, y), C(y))
    (forall r.C)(x) = min_y impl(r(x, y), C(y))

and the degree of an inclusion C [= D is ``min_x impl(C(x), D(x))``.
Degree comparisons use a tolerance of ``EPS_CMP`` for ``>=`` and ``<=``
and are exact for ``>`` and ``<``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .concepts import (
    And,
    Assertion,
    Bottom,
    Concept,
    ConditionalConstraint,
    DefeasibleInclusion,
    Exists,
    Forall,
    FuzzyAssertion,
    FuzzyInclusion,
    Name,
    Nominal,
    Not,
    Or,
    ProbAssertion,
    RoleAssertion,
    StrictInclusion,
    Top,
    Typ,
    contains_typ,
)
from .errors import EvaluationError, UnknownNameError, UnsupportedAxiomError

__all__ = [
    "EPS_CMP",
    "LogicFamily",
    "ZADEH",
    "GOEDEL",
    "LUKASIEWICZ",
    "PRODUCT",
    "FAMILIES",
    "get_family",
    "FuzzyInterpretation",
    "crisp_interpretation",
    "eval_concept",
    "eval_inclusion",
    "check_axiom",
    "compare",
    "interpretation_to_json",
    "interpretation_from_json",
    "load_interpretation",
]

EPS_CMP = 1e-9


@dataclass(frozen=True)
class LogicFamily:
    """A truth-function family: t-norm, s-norm, negation, implication."""

    name: str
    tnorm: Callable[[float, float], float]
    snorm: Callable[[float, float], float]
    neg: Callable[[float], float]
    impl: Callable[[float, float], float]


ZADEH = LogicFamily(
    "zadeh",
    tnorm=min,
    snorm=max,
    neg=lambda a: 1.0 - a,
    impl=lambda a, b: max(1.0 - a, b),
)

GOEDEL = LogicFamily(
    "goedel",
    tnorm=min,
    snorm=max,
    neg=lambda a: 1.0 if a == 0.0 else 0.0,
    impl=lambda a, b: 1.0 if a <= b else b,
)

LUKASIEWICZ = LogicFamily(
    "lukasiewicz",
    tnorm=lambda a, b: max(0.0, a + b - 1.0),
    snorm=lambda a, b: min(1.0, a + b),
    neg=lambda a: 1.0 - a,
    impl=lambda a, b: min(1.0, 1.0 - a + b),
)

PRODUCT = LogicFamily(
    "product",
    tnorm=lambda a, b: a * b,
    snorm=lambda a, b: a + b - a * b,
    neg=lambda a: 1.0 if a == 0.0 else 0.0,
    impl=lambda a, b: 1.0 if a <= b else b / a,
)

FAMILIES = {f.name: f for f in (ZADEH, GOEDEL, LUKASIEWICZ, PRODUCT)}


def get_family(tag: str) -> LogicFamily:
    try:
        return FAMILIES[tag.lower()]
    except KeyError:
        options = ", ".join(sorted(FAMILIES))
        raise ValueError(f"unknown logic family {tag!r}; choose one of: {options}") from None


@dataclass
class FuzzyInterpretation:
    """A finite fuzzy first-order structure.

    Treat instances as immutable after construction; evaluation never
    mutates them.  ``concepts`` keys declare the known concept names, and
    looking up an undeclared name is an error, while a declared concept
    simply reads 0 at elements missing from its row.
    """

    domain: tuple[str, ...]
    concepts: dict[str, dict[str, float]] = field(default_factory=dict)
    roles: dict[str, dict[tuple[str, str], float]] = field(default_factory=dict)
    individuals: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.domain = tuple(self.domain)
        if not self.domain:
            raise ValueError("the domain must be nonempty")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain elements must be unique")
        members = set(self.domain)
        for cname, row in self.concepts.items():
            for elem, deg in row.items():
                if elem not in members:
                    raise ValueError(
                        f"concept {cname!r} mentions unknown element {elem!r}"
                    )
                if not 0.0 <= deg <= 1.0:
                    raise ValueError(
                        f"degree {deg!r} of {cname!r} at {elem!r} is outside [0,1]"
                    )
        for rname, row in self.roles.items():
            for (x, y), deg in row.items():
                if x not in members or y not in members:
                    raise ValueError(
                        f"role {rname!r} mentions an unknown element in ({x!r}, {y!r})"
                    )
                if not 0.0 <= deg <= 1.0:
                    raise ValueError(
                        f"degree {deg!r} of {rname!r} at ({x!r}, {y!r}) is outside [0,1]"
                    )
        for ind, elem in self.individuals.items():
            if elem not in members:
                raise ValueError(
                    f"individual {ind!r} maps to unknown element {elem!r}"
                )

    def concept_degree(self, name: str, x: str) -> float:
        try:
            row = self.concepts[name]
        except KeyError:
            raise UnknownNameError(f"unknown concept name {name!r}") from None
        return row.get(x, 0.0)

    def role_degree(self, role: str, x: str, y: str) -> float:
        return self.roles.get(role, {}).get((x, y), 0.0)

    def element_of(self, individual: str) -> str:
        try:
            return self.individuals[individual]
        except KeyError:
            raise UnknownNameError(f"unknown individual name {individual!r}") from None

    @property
    def is_crisp(self) -> bool:
        for row in self.concepts.values():
            for deg in row.values():
                if deg != 0.0 and deg != 1.0:
                    return False
        for row in self.roles.values():
            for deg in row.values():
                if deg != 0.0 and deg != 1.0:
                    return False
        return True


def crisp_interpretation(
    domain: tuple[str, ...] | list[str],
    concept_members: dict[str, set[str] | list[str] | tuple[str, ...]] | None = None,
    role_pairs: dict[str, set | list | tuple] | None = None,
    individuals: dict[str, str] | None = None,
) -> FuzzyInterpretation:
    """Build a two-valued interpretation from membership sets."""
    concepts = {
        name: {elem: 1.0 for elem in members}
        for name, members in (concept_members or {}).items()
    }
    roles = {
        name: {(x, y): 1.0 for (x, y) in pairs}
        for name, pairs in (role_pairs or {}).items()
    }
    return FuzzyInterpretation(
        domain=tuple(domain),
        concepts=concepts,
        roles=roles,
        individuals=dict(individuals or {}),
    )


# ---------------------------------------------------------------------------
# Evaluation


def eval_concept(
    interp: FuzzyInterpretation, family: LogicFamily, concept: Concept, x: str
) -> float:
    """The degree to which element x belongs to the concept."""
    if isinstance(concept, Top):
        return 1.0
    if isinstance(concept, Bottom):
        return 0.0
    if isinstance(concept, Name):
        return interp.concept_degree(concept.name, x)
    if isinstance(concept, Not):
        return family.neg(eval_concept(interp, family, concept.arg, x))
    if isinstance(concept, And):
        return family.tnorm(
            eval_concept(interp, family, concept.left, x),
            eval_concept(interp, family, concept.right, x),
        )
    if isinstance(concept, Or):
        return family.snorm(
            eval_concept(interp, family, concept.left, x),
            eval_concept(interp, family, concept.right, x),
        )
    if isinstance(concept, Exists):
        return max(
            family.tnorm(
                interp.role_degree(concept.role, x, y),
                eval_concept(interp, family, concept.arg, y),
            )
            for y in interp.domain
        )
    if isinstance(concept, Forall):
        return min(
            family.impl(
                interp.role_degree(concept.role, x, y),
                eval_concept(interp, family, concept.arg, y),
            )
            for y in interp.domain
        )
    if isinstance(concept, Nominal):
        return 1.0 if interp.element_of(concept.individual) == x else 0.0
    if isinstance(concept, Typ):
        raise EvaluationError(
            "typicality is defined against a preference model, not a bare"
            " interpretation"
        )
    raise TypeError(f"not a concept: {concept!r}")


def eval_inclusion(
    interp: FuzzyInterpretation, family: LogicFamily, left: Concept, right: Concept
) -> float:
    """The degree of C [= D: the worst implication over the domain."""
    return min(
        family.impl(
            eval_concept(interp, family, left, x),
            eval_concept(interp, family, right, x),
        )
        for x in interp.domain
    )


def compare(value: float, theta: str, bound: float, eps: float = EPS_CMP) -> bool:
    """Tolerant degree comparison: >=/<= absorb eps, >/< stay exact."""
    if theta == ">=":
        return value >= bound - eps
    if theta == "<=":
        return value <= bound + eps
    if theta == ">":
        return value > bound
    if theta == "<":
        return value < bound
    raise ValueError(f"unknown comparison {theta!r}")


def check_axiom(
    interp: FuzzyInterpretation,
    family: LogicFamily,
    axiom: object,
    eps: float = EPS_CMP,
) -> bool:
    """Decide one axiom against the interpretation.

    Strict inclusions and plain assertions are read as degree >= 1, which
    on a crisp interpretation coincides with the two-valued subset and
    membership checks.  Typicality inclusions, conditional constraints,
    and probabilistic assertions belong to other checkers.
    """
    if isinstance(axiom, StrictInclusion):
        _reject_typ(axiom.left, axiom.right)
        return compare(eval_inclusion(interp, family, axiom.left, axiom.right), ">=", 1.0, eps)
    if isinstance(axiom, FuzzyInclusion):
        _reject_typ(axiom.left, axiom.right)
        value = eval_inclusion(interp, family, axiom.left, axiom.right)
        return compare(value, axiom.theta, axiom.degree, eps)
    if isinstance(axiom, Assertion):
        _reject_typ(axiom.concept)
        value = eval_concept(interp, family, axiom.concept, interp.element_of(axiom.individual))
        return compare(value, ">=", 1.0, eps)
    if isinstance(axiom, FuzzyAssertion):
        _reject_typ(axiom.concept)
        value = eval_concept(interp, family, axiom.concept, interp.element_of(axiom.individual))
        return compare(value, axiom.theta, axiom.degree, eps)
    if isinstance(axiom, RoleAssertion):
        return compare(
            interp.role_degree(axiom.role, interp.element_of(axiom.subject),
                               interp.element_of(axiom.target)),
            ">=",
            1.0,
            eps,
        )
    if isinstance(axiom, (DefeasibleInclusion, ConditionalConstraint, ProbAssertion)):
        raise UnsupportedAxiomError(
            f"{type(axiom).__name__} is not checked against a bare interpretation"
        )
    raise TypeError(f"not an axiom: {axiom!r}")


def _reject_typ(*concepts: Concept) -> None:
    for c in concepts:
        if contains_typ(c):
            raise UnsupportedAxiomError(
                "typicality axioms are checked against a preference model"
            )


# ---------------------------------------------------------------------------
# JSON interface


def interpretation_to_json(interp: FuzzyInterpretation) -> dict:
    return {
        "domain": list(interp.domain),
        "concepts": {name: dict(row) for name, row in interp.concepts.items()},
        "roles": {
            name: [[x, y, deg] for (x, y), deg in row.items()]
            for name, row in interp.roles.items()
        },
        "individuals": dict(interp.individuals),
    }


def interpretation_from_json(obj: dict) -> FuzzyInterpretation:
    if not isinstance(obj, dict) or "domain" not in obj:
        raise ValueError("an interpretation object needs a 'domain' list")
    roles: dict[str, dict[tuple[str, str], float]] = {}
    for name, triples in (obj.get("roles") or {}).items():
        row: dict[tuple[str, str], float] = {}
        for triple in triples:
            if len(triple) != 3:
                raise ValueError(f"role {name!r}: each entry must be [x, y, degree]")
            x, y, deg = triple
            row[(str(x), str(y))] = float(deg)
        roles[name] = row
    concepts = {
        str(name): {str(e): float(d) for e, d in (row or {}).items()}
        for name, row in (obj.get("concepts") or {}).items()
    }
    return FuzzyInterpretation(
        domain=tuple(str(d) for d in obj["domain"]),
        concepts=concepts,
        roles=roles,
        individuals={str(k): str(v) for k, v in (obj.get("individuals") or {}).items()},
    )


def load_interpretation(path: str | Path) -> FuzzyInterpretation:
    return interpretation_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
