"""Concept-wise preference models built from weighted knowledge bases.

Every distinguished concept C_i induces a weight on domain elements:

* crisp: the sum of the weights of the defeasible inclusions whose
  consequent the element satisfies, or -inf when the element is not an
  instance of C_i at all;
* fuzzy: the degree-weighted sum ``sum_h w_h * D_h(x)`` over the whole
  block, or -inf when C_i(x) = 0.

Sums accumulate left to right in block order, so ties are deterministic,
and -inf is a genuine bottom: below every real and equal to itself.

Higher weight means more typical.  Each weight map yields a total preorder
``x <= y  iff  W(x) >= W(y)`` whose strict part is modular, irreflexive,
transitive, and well-founded on finite domains.  In the crisp case the
per-concept orders also combine into a Pareto global preference

    x < y  iff  some x <_i y and all x <=_j y

which interprets typicality: T(C) collects the globally minimal instances
of C.  In the fuzzy case typicality is induced directly by membership
degrees: T(C) collects the positive-degree maximizers of C.

A model is (weakly) coherent for C_i when the constructed preference and
the membership function agree: strictly, ``x <_i y  iff  C_i(x) > C_i(y)``;
weakly, only the right-to-left direction.

For knowledge bases without roles, quantifiers, or nominals, entailment is
decided on one canonical model whose domain holds every truth assignment
over the mentioned concept names that satisfies the strict inclusions.
Copying a domain element never changes typicality verdicts, which is what
makes the single canonical model adequate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .concepts import (
    And,
    Assertion,
    Bottom,
    Concept,
    FuzzyInclusion,
    Name,
    Not,
    Or,
    RoleAssertion,
    StrictInclusion,
    Top,
    Typ,
    concept_names_in,
    contains_typ,
    is_rolefree_concept,
)
from .errors import (
    EnumerationLimitError,
    FragmentError,
    UnknownNameError,
)
from .fuzzy import (
    EPS_CMP,
    ZADEH,
    FuzzyInterpretation,
    LogicFamily,
    check_axiom,
    compare,
    eval_concept,
)
from .kb import WeightedKB

__all__ = [
    "NEG_INF",
    "ConceptPreference",
    "GlobalPreference",
    "MultiprefModel",
    "crisp_weight",
    "fuzzy_weight",
    "build_preferences",
    "typicality_global",
    "typicality_induced",
    "check_typicality_axiom",
    "is_crisp_model",
    "is_fuzzy_model",
    "Violation",
    "CoherenceReport",
    "coherence_report",
    "consistent_valuations",
    "canonical_crisp_interpretation",
    "entails_rolefree",
    "ENUMERATION_LIMIT",
]

NEG_INF = float("-inf")
ENUMERATION_LIMIT = 20


# ---------------------------------------------------------------------------
# Element weights


def crisp_weight(
    kb: WeightedKB, interp: FuzzyInterpretation, concept_name: str, x: str
) -> float:
    """Sum of weights of the defaults x satisfies; -inf for non-instances."""
    _require_distinguished(kb, concept_name)
    if not interp.is_crisp:
        raise ValueError("crisp_weight needs a two-valued interpretation")
    if eval_concept(interp, ZADEH, Name(concept_name), x) != 1.0:
        return NEG_INF
    total = 0.0
    for d in kb.defaults_for(concept_name):
        if eval_concept(interp, ZADEH, d.consequent, x) == 1.0:
            total += d.weight
    return total


def fuzzy_weight(
    kb: WeightedKB,
    interp: FuzzyInterpretation,
    family: LogicFamily,
    concept_name: str,
    x: str,
) -> float:
    """Degree-weighted sum over the whole block; -inf when C_i(x) = 0."""
    _require_distinguished(kb, concept_name)
    if eval_concept(interp, family, Name(concept_name), x) == 0.0:
        return NEG_INF
    total = 0.0
    for d in kb.defaults_for(concept_name):
        total += d.weight * eval_concept(interp, family, d.consequent, x)
    return total


def _require_distinguished(kb: WeightedKB, concept_name: str) -> None:
    if concept_name not in kb.defeasible:
        raise UnknownNameError(f"{concept_name!r} is not a distinguished concept")


# ---------------------------------------------------------------------------
# Preference relations


@dataclass(frozen=True)
class ConceptPreference:
    """Total preorder on the domain from one concept's weight map.

    Lower in the order means more typical, so ``lt(x, y)`` holds when x
    outweighs y.  Elements with weight -inf sit together at the very top.
    """

    concept: str
    weights: dict[str, float]

    def weight(self, x: str) -> float:
        return self.weights[x]

    def leq(self, x: str, y: str) -> bool:
        return self.weights[x] >= self.weights[y]

    def lt(self, x: str, y: str) -> bool:
        return self.weights[x] > self.weights[y]

    def sim(self, x: str, y: str) -> bool:
        return self.weights[x] == self.weights[y]


@dataclass(frozen=True)
class GlobalPreference:
    """Pareto combination of the per-concept strict preferences."""

    parts: tuple[ConceptPreference, ...]

    def lt(self, x: str, y: str) -> bool:
        return any(p.lt(x, y) for p in self.parts) and all(p.leq(x, y) for p in self.parts)


@dataclass
class MultiprefModel:
    """An interpretation plus one preference per distinguished concept.

    ``family`` is None exactly in crisp mode, where the Pareto global
    preference is available; in fuzzy mode there is no global relation.
    """

    interp: FuzzyInterpretation
    concepts: tuple[str, ...]
    preferences: dict[str, ConceptPreference]
    family: LogicFamily | None = None
    global_pref: GlobalPreference | None = None
    kb: WeightedKB | None = None

    @property
    def is_crisp_mode(self) -> bool:
        return self.family is None

    def weight(self, concept_name: str, x: str) -> float:
        return self.preferences[concept_name].weight(x)


def build_preferences(
    kb: WeightedKB,
    interp: FuzzyInterpretation,
    family: LogicFamily | None = None,
) -> MultiprefModel:
    """Construct the concept-wise preferences a weighted KB induces.

    Pass a logic family for fuzzy weights; pass None for the crisp
    construction on a two-valued interpretation, which also builds the
    Pareto global preference.
    """
    for name in sorted(kb.signature().concept_names):
        if name not in interp.concepts:
            raise UnknownNameError(
                f"interpretation does not cover concept name {name!r}"
            )
    if family is None and not interp.is_crisp:
        raise ValueError(
            "crisp preference construction needs a two-valued interpretation;"
            " pass a logic family for fuzzy interpretations"
        )
    prefs: dict[str, ConceptPreference] = {}
    for name in kb.distinguished:
        if family is None:
            weights = {x: crisp_weight(kb, interp, name, x) for x in interp.domain}
        else:
            weights = {x: fuzzy_weight(kb, interp, family, name, x) for x in interp.domain}
        prefs[name] = ConceptPreference(name, weights)
    global_pref = None
    if family is None:
        global_pref = GlobalPreference(tuple(prefs[n] for n in kb.distinguished))
    return MultiprefModel(
        interp=interp,
        concepts=tuple(kb.distinguished),
        preferences=prefs,
        family=family,
        global_pref=global_pref,
        kb=kb,
    )


# ---------------------------------------------------------------------------
# Typicality


def typicality_global(model: MultiprefModel, concept: Concept) -> list[str]:
    """Globally minimal instances of a crisp concept, in domain order."""
    if model.global_pref is None:
        raise ValueError(
            "no global preference in fuzzy mode; use typicality_induced"
        )
    family = model.family or ZADEH
    extension = [
        x for x in model.interp.domain
        if eval_concept(model.interp, family, concept, x) == 1.0
    ]
    lt = model.global_pref.lt
    return [u for u in extension if not any(lt(z, u) for z in extension if z != u)]


def typicality_induced(
    interp: FuzzyInterpretation, family: LogicFamily, concept: Concept
) -> list[str]:
    """Positive-degree maximizers of the concept, in domain order."""
    degrees = {x: eval_concept(interp, family, concept, x) for x in interp.domain}
    best = max(degrees.values())
    if best == 0.0:
        return []
    return [x for x in interp.domain if degrees[x] == best]


def check_typicality_axiom(
    model: MultiprefModel,
    axiom: StrictInclusion | FuzzyInclusion,
    *,
    fuzzy_semantics: str = "implication",
    eps: float = EPS_CMP,
) -> bool:
    """Decide ``T(C) [= D``, optionally with a degree bound.

    Crisp mode uses the global preference: every globally typical instance
    of C must belong to D (bounded variants compare the worst implication
    instead).  Fuzzy mode uses membership-induced typicality; with
    ``fuzzy_semantics="implication"`` the axiom degree is the worst
    implication from the two-valued typicality membership into D, with
    ``"containment"`` the bound is checked pointwise on every typical
    instance.  An empty typicality set satisfies the plain axiom.
    """
    if isinstance(axiom, StrictInclusion):
        left, right, theta, bound = axiom.left, axiom.right, None, None
    elif isinstance(axiom, FuzzyInclusion):
        left, right, theta, bound = axiom.left, axiom.right, axiom.theta, axiom.degree
    else:
        raise TypeError(f"not an inclusion axiom: {axiom!r}")
    if not isinstance(left, Typ):
        raise ValueError("the axiom's left side must have the form T(C)")
    subject = left.arg

    if model.is_crisp_mode:
        typical = set(typicality_global(model, subject))
        family = ZADEH
    else:
        assert model.family is not None
        family = model.family
        typical = set(typicality_induced(model.interp, family, subject))

    if theta is None:
        theta, bound = ">=", 1.0
        if model.is_crisp_mode:
            return all(
                eval_concept(model.interp, family, right, u) == 1.0 for u in typical
            )
    assert bound is not None

    if fuzzy_semantics == "containment" and not model.is_crisp_mode:
        return all(
            compare(eval_concept(model.interp, family, right, u), theta, bound, eps)
            for u in typical
        )
    if fuzzy_semantics not in ("implication", "containment"):
        raise ValueError(f"unknown typicality semantics {fuzzy_semantics!r}")

    degree = min(
        family.impl(
            1.0 if x in typical else 0.0,
            eval_concept(model.interp, family, right, x),
        )
        for x in model.interp.domain
    )
    return compare(degree, theta, bound, eps)


# ---------------------------------------------------------------------------
# Model checks


def is_crisp_model(kb: WeightedKB, interp: FuzzyInterpretation) -> bool:
    """True when the two-valued interpretation satisfies strict TBox and ABox."""
    if not interp.is_crisp:
        raise ValueError("is_crisp_model needs a two-valued interpretation")
    for inc in kb.strict:
        if not check_axiom(interp, ZADEH, inc, eps=0.0):
            return False
    for a in kb.abox:
        if not check_axiom(interp, ZADEH, a, eps=0.0):
            return False
    return True


def is_fuzzy_model(
    kb: WeightedKB,
    interp: FuzzyInterpretation,
    family: LogicFamily,
    eps: float = EPS_CMP,
) -> bool:
    """True when every strict axiom and assertion holds to degree >= 1."""
    for inc in kb.strict:
        if not check_axiom(interp, family, inc, eps=eps):
            return False
    for a in kb.abox:
        if not check_axiom(interp, family, a, eps=eps):
            return False
    return True


# ---------------------------------------------------------------------------
# Coherence


@dataclass(frozen=True)
class Violation:
    """One ordered pair witnessing a preference/degree disagreement.

    ``kind`` is "weak" when the degrees order the pair strictly but the
    preference does not (this breaks weak and full coherence), and
    "strict" when the preference orders it strictly without a matching
    degree gap (this breaks full coherence only).
    """

    concept: str
    x: str
    y: str
    kind: str

    def to_json(self) -> dict:
        return {"concept": self.concept, "x": self.x, "y": self.y, "kind": self.kind}


@dataclass
class CoherenceReport:
    coherent: bool
    weakly_coherent: bool
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False

    def to_json(self, limit: int | None = 10) -> dict:
        shown = self.violations if limit is None else self.violations[:limit]
        return {
            "coherent": self.coherent,
            "weakly_coherent": self.weakly_coherent,
            "violations": [v.to_json() for v in shown],
            "violation_count": len(self.violations),
            "truncated": self.truncated,
        }


def _strictly_consistent(pairs: list[tuple[float, float]]) -> bool:
    """All (weight, degree) pairs agree: weight gaps iff degree gaps."""
    ordered = sorted(pairs, key=lambda p: p[0])
    for (w0, d0), (w1, d1) in zip(ordered, ordered[1:]):
        if w0 == w1:
            if d0 != d1:
                return False
        elif not d1 > d0:
            return False
    return True


def _weakly_consistent(pairs: list[tuple[float, float]]) -> bool:
    """Degree gaps force weight gaps: d(x) > d(y) implies w(x) > w(y)."""
    ordered = sorted(pairs, key=lambda p: p[1])
    n = len(ordered)
    suffix_min = [float("inf")] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(ordered[i][0], suffix_min[i + 1])
    idx = 0
    while idx < n:
        end = idx
        max_w = NEG_INF
        while end < n and ordered[end][1] == ordered[idx][1]:
            max_w = max(max_w, ordered[end][0])
            end += 1
        # Everything with a strictly higher degree must outweigh this group.
        if end < n and not suffix_min[end] > max_w:
            return False
        idx = end
    return True


def coherence_report(
    model: MultiprefModel, *, max_violations: int | None = None
) -> CoherenceReport:
    """Compare each concept's preference with its membership degrees.

    The verdict flags come from sorted consistency checks per concept, so
    they are exact even when ``max_violations`` caps how many witnessing
    pairs get collected; a pairwise scan runs only for failing concepts.
    """
    violations: list[Violation] = []
    truncated = False
    weak_ok = True
    strict_ok = True
    domain = model.interp.domain
    for name in model.concepts:
        weights = model.preferences[name].weights
        degrees = {x: model.interp.concept_degree(name, x) for x in domain}
        pairs = [(weights[x], degrees[x]) for x in domain]
        s_ok = _strictly_consistent(pairs)
        strict_ok = strict_ok and s_ok
        if s_ok:
            continue
        weak_ok = weak_ok and _weakly_consistent(pairs)
        if max_violations is not None and len(violations) >= max_violations:
            truncated = True
            continue
        for x in domain:
            for y in domain:
                if x == y:
                    continue
                pref_strict = weights[x] > weights[y]
                deg_strict = degrees[x] > degrees[y]
                if deg_strict and not pref_strict:
                    violations.append(Violation(name, x, y, "weak"))
                elif pref_strict and not deg_strict:
                    violations.append(Violation(name, x, y, "strict"))
                if max_violations is not None and len(violations) >= max_violations:
                    truncated = True
                    break
            if truncated:
                break
    return CoherenceReport(
        coherent=strict_ok,
        weakly_coherent=weak_ok,
        violations=violations,
        truncated=truncated,
    )


# ---------------------------------------------------------------------------
# Canonical models and role-free entailment


def _eval_boolean(concept: Concept, valuation: dict[str, bool]) -> bool:
    if isinstance(concept, Top):
        return True
    if isinstance(concept, Bottom):
        return False
    if isinstance(concept, Name):
        return valuation[concept.name]
    if isinstance(concept, Not):
        return not _eval_boolean(concept.arg, valuation)
    if isinstance(concept, And):
        return _eval_boolean(concept.left, valuation) and _eval_boolean(
            concept.right, valuation
        )
    if isinstance(concept, Or):
        return _eval_boolean(concept.left, valuation) or _eval_boolean(
            concept.right, valuation
        )
    raise FragmentError(f"not a role-free boolean concept: {concept}")


def _check_rolefree(kb: WeightedKB, *extra: Concept) -> list[str]:
    for c in list(kb.all_concepts()) + list(extra):
        if not is_rolefree_concept(c):
            raise FragmentError(
                f"concept {c} uses roles or nominals; entailment here is"
                " restricted to the role-free boolean fragment"
            )
        if contains_typ(c):
            raise FragmentError(
                f"concept {c} nests the typicality operator"
            )
    if kb.abox:
        raise FragmentError("entailment here requires an empty ABox")
    names: set[str] = set(kb.distinguished)
    for c in kb.all_concepts():
        names |= concept_names_in(c)
    for c in extra:
        names |= concept_names_in(c)
    ordered = sorted(names)
    if len(ordered) > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"{len(ordered)} concept names exceed the enumeration budget of"
            f" {ENUMERATION_LIMIT}"
        )
    return ordered


def consistent_valuations(
    kb: WeightedKB, names: list[str]
) -> list[dict[str, bool]]:
    """Every truth assignment over the names satisfying the strict TBox."""
    rows: list[dict[str, bool]] = []
    for bits in itertools.product((False, True), repeat=len(names)):
        valuation = dict(zip(names, bits))
        ok = True
        for inc in kb.strict:
            if _eval_boolean(inc.left, valuation) and not _eval_boolean(
                inc.right, valuation
            ):
                ok = False
                break
        if ok:
            rows.append(valuation)
    return rows


def _interp_from_valuations(
    names: list[str], rows: list[dict[str, bool]]
) -> FuzzyInterpretation:
    domain = []
    concepts: dict[str, dict[str, float]] = {n: {} for n in names}
    for valuation in rows:
        elem = "w" + "".join("1" if valuation[n] else "0" for n in names)
        domain.append(elem)
        for n in names:
            if valuation[n]:
                concepts[n][elem] = 1.0
    return FuzzyInterpretation(domain=tuple(domain), concepts=concepts)


def canonical_crisp_interpretation(
    kb: WeightedKB, extra_names: tuple[str, ...] = ()
) -> FuzzyInterpretation:
    """One domain element per strict-TBox-consistent truth assignment."""
    names = _check_rolefree(kb, *(Name(n) for n in extra_names))
    rows = consistent_valuations(kb, names)
    if not rows:
        raise ValueError("the strict TBox is unsatisfiable; no canonical model")
    return _interp_from_valuations(names, rows)


def entails_rolefree(kb: WeightedKB, subject: Concept, consequent: Concept) -> bool:
    """Decide ``T(subject) [= consequent`` over all models of the KB.

    Sound and complete for role-free boolean KBs and queries: the verdict
    on the canonical model settles the question, vacuously true when the
    strict TBox admits no assignment at all.
    """
    names = _check_rolefree(kb, subject, consequent)
    rows = consistent_valuations(kb, names)
    if not rows:
        return True
    interp = _interp_from_valuations(names, rows)
    model = build_preferences(kb, interp)
    return check_typicality_axiom(model, StrictInclusion(Typ(subject), consequent))
