"""Multilayer perceptrons as interpretations and as weighted KBs.

A network is a directed graph of units over a list of input nodes.  Each
unit k computes an induced field ``u_k = bias_k + sum_j w_kj * s_j`` over
the activities of its synapse sources (listed order, left to right) and an
activity ``y_k = phi_k(u_k)``.  Acyclic networks are evaluated in one
topological sweep; cyclic ones run synchronous updates from all-zero unit
activities until the largest activity change drops below ``EPS_FIX``
(at most ``MAX_ITERATIONS`` rounds), then record the stationary state.

Input activities are the stimulus values clamped to [0, 1].  The clamped
value is both the concept membership of the input node and the signal its
synapses carry, which keeps the extracted-KB weight identity below exact
even for out-of-range stimuli.

With stimuli as domain elements, activities give a fuzzy interpretation:
one concept name per node, membership = activity.  Thresholding activities
(nonzero, or > 0.5) gives a crisp interpretation whose per-unit preferences
order stimuli by raw activity, with non-members together at the top.

Each designated unit also reads as a block of weighted defeasible
inclusions: ``T(C_k) [= C_j @ w_kj`` per synapse, preceded by
``T(C_k) [= Top @ bias_k`` when the bias is nonzero.  Under the fuzzy
weight construction the block total reproduces ``u_k(x)`` exactly wherever
``y_k(x) > 0``, which is what the two verification routines assert:

* strictly increasing activations with range inside (0, 1] must yield a
  fully coherent model,
* monotone non-decreasing activations must yield a weakly coherent one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .concepts import TOP, Name, is_identifier
from .errors import (
    ActivationPreconditionError,
    NonConvergenceError,
    PrefnetError,
)
from .fuzzy import ZADEH, FuzzyInterpretation
from .kb import DefeasibleInclusion, WeightedKB
from .preferences import (
    NEG_INF,
    CoherenceReport,
    ConceptPreference,
    GlobalPreference,
    MultiprefModel,
    build_preferences,
    coherence_report,
)

__all__ = [
    "EPS_FIX",
    "EPS_NUM",
    "MAX_ITERATIONS",
    "Activation",
    "ACTIVATIONS",
    "get_activation",
    "Unit",
    "Network",
    "StimulusSet",
    "ActivityTable",
    "forward",
    "build_fuzzy_interp",
    "build_cwm_interp",
    "extract_kb",
    "VerificationReport",
    "verify_strict_coherence",
    "verify_weak_coherence",
    "network_to_json",
    "network_from_json",
    "load_network",
    "stimuli_to_json",
    "stimuli_from_json",
    "load_stimuli",
]

EPS_FIX = 1e-9
EPS_NUM = 1e-9
MAX_ITERATIONS = 10000


# ---------------------------------------------------------------------------
# Activations


@dataclass(frozen=True)
class Activation:
    """An activation function with the properties verification relies on.

    The flags are claims about the mathematical function: strict increase,
    range contained in (0, 1], and monotone non-decrease.  They gate the
    two verification routines, so each registry entry keeps them truthful.
    """

    tag: str
    fn: Callable[[float], float]
    strictly_increasing: bool
    range_in_unit_halfopen: bool
    nondecreasing: bool


def _sigmoid(u: float) -> float:
    if u >= 0.0:
        return 1.0 / (1.0 + math.exp(-u))
    e = math.exp(u)
    return e / (1.0 + e)


def _softplus01(u: float) -> float:
    # log1p(exp(u)) rescaled onto (0, 1) by s / (1 + s).
    s = u + math.log1p(math.exp(-u)) if u > 30.0 else math.log1p(math.exp(u))
    return s / (1.0 + s)


def _hard_sigmoid(u: float) -> float:
    return min(1.0, max(0.0, 0.2 * u + 0.5))


def _step(u: float) -> float:
    # Threshold at zero; the boundary point fires.
    return 1.0 if u >= 0.0 else 0.0


def _linear_clamp(u: float) -> float:
    return min(1.0, max(0.0, u))


ACTIVATIONS = {
    a.tag: a
    for a in (
        Activation("sigmoid", _sigmoid, True, True, True),
        Activation("softplus01", _softplus01, True, True, True),
        Activation("hard-sigmoid", _hard_sigmoid, False, False, True),
        Activation("step", _step, False, False, True),
        Activation("linear-clamp", _linear_clamp, False, False, True),
    )
}


def get_activation(tag: str) -> Activation:
    try:
        return ACTIVATIONS[tag]
    except KeyError:
        options = ", ".join(sorted(ACTIVATIONS))
        raise ValueError(
            f"unknown activation {tag!r}; choose one of: {options}"
        ) from None


# ---------------------------------------------------------------------------
# Network structure


@dataclass(frozen=True)
class Unit:
    id: str
    activation: str
    bias: float = 0.0
    incoming: tuple[tuple[str, float], ...] = ()


@dataclass
class Network:
    """Input nodes, units, and the designated concept units."""

    inputs: tuple[str, ...]
    units: tuple[Unit, ...]
    c_units: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        self.inputs = tuple(self.inputs)
        self.units = tuple(self.units)
        self.c_units = tuple(self.c_units)
        ids = list(self.inputs) + [u.id for u in self.units]
        if len(set(ids)) != len(ids):
            raise ValueError("node ids must be unique across inputs and units")
        for node_id in ids:
            if not is_identifier(node_id):
                raise ValueError(
                    f"node id {node_id!r} is not a usable concept identifier"
                )
        known = set(ids)
        unit_ids = {u.id for u in self.units}
        for u in self.units:
            get_activation(u.activation)
            if not math.isfinite(u.bias):
                raise ValueError(f"unit {u.id!r} has a non-finite bias")
            for src, w in u.incoming:
                if src not in known:
                    raise ValueError(
                        f"unit {u.id!r} has a synapse from undeclared node {src!r}"
                    )
                if not math.isfinite(w):
                    raise ValueError(
                        f"synapse {src!r} -> {u.id!r} has a non-finite weight"
                    )
        for cid in self.c_units:
            if cid not in unit_ids:
                raise ValueError(f"designated unit {cid!r} is not a unit id")

    def unit(self, unit_id: str) -> Unit:
        for u in self.units:
            if u.id == unit_id:
                return u
        raise KeyError(unit_id)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return self.inputs + tuple(u.id for u in self.units)

    def topological_units(self) -> list[Unit] | None:
        """Units in dependency order, or None when the graph has a cycle.

        Declaration order is kept among units whose dependencies are
        already satisfied, so evaluation order is deterministic.
        """
        unit_ids = {u.id for u in self.units}
        visited: set[str] = set()
        ordered: list[Unit] = []
        remaining = list(self.units)
        while remaining:
            progressed = False
            rest = []
            for u in remaining:
                if all(
                    src in visited or src not in unit_ids for src, _ in u.incoming
                ):
                    ordered.append(u)
                    visited.add(u.id)
                    progressed = True
                else:
                    rest.append(u)
            remaining = rest
            if not progressed:
                return None
        return ordered

    @property
    def is_feedforward(self) -> bool:
        return self.topological_units() is not None


@dataclass
class StimulusSet:
    """Named input vectors; every stimulus assigns every input node."""

    ids: tuple[str, ...]
    values: dict[str, dict[str, float]]

    def __post_init__(self) -> None:
        self.ids = tuple(self.ids)
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("stimulus ids must be unique")
        for sid in self.ids:
            if sid not in self.values:
                raise ValueError(f"stimulus {sid!r} has no value row")

    def check_against(self, net: Network) -> None:
        for sid in self.ids:
            row = self.values[sid]
            for inp in net.inputs:
                if inp not in row:
                    raise ValueError(
                        f"stimulus {sid!r} assigns no value to input {inp!r}"
                    )
            for key in row:
                if key not in net.inputs:
                    raise ValueError(
                        f"stimulus {sid!r} assigns a value to unknown input {key!r}"
                    )


@dataclass
class ActivityTable:
    """Recorded activities (all nodes) and induced fields (units only)."""

    stimuli: tuple[str, ...]
    activity: dict[str, dict[str, float]]
    induced_field: dict[str, dict[str, float]]

    def y(self, stimulus: str, node: str) -> float:
        return self.activity[stimulus][node]

    def u(self, stimulus: str, unit: str) -> float:
        return self.induced_field[stimulus][unit]

    def to_json(self) -> dict:
        return {
            "stimuli": list(self.stimuli),
            "activity": {s: dict(row) for s, row in self.activity.items()},
            "induced_field": {
                s: dict(row) for s, row in self.induced_field.items()
            },
        }


def _clamp01(v: float) -> float:
    return min(1.0, max(0.0, v))


# ---------------------------------------------------------------------------
# Evaluation


def forward(
    net: Network,
    stimuli: StimulusSet,
    *,
    eps: float = EPS_FIX,
    max_iterations: int = MAX_ITERATIONS,
    force_iterative: bool = False,
) -> ActivityTable:
    """Evaluate the network on every stimulus.

    Acyclic graphs get a single topological sweep.  Cyclic graphs (or
    ``force_iterative``) run synchronous updates from zero until stationary
    within ``eps``, failing with :class:`NonConvergenceError` at the
    iteration cap; the recorded fields are recomputed at the fixed point so
    ``y = phi(u)`` holds exactly.
    """
    stimuli.check_against(net)
    order = None if force_iterative else net.topological_units()
    activity: dict[str, dict[str, float]] = {}
    induced: dict[str, dict[str, float]] = {}
    for sid in stimuli.ids:
        signals = {inp: _clamp01(stimuli.values[sid][inp]) for inp in net.inputs}
        fields: dict[str, float] = {}
        if order is not None:
            for u in order:
                total = u.bias
                for src, w in u.incoming:
                    total += w * signals[src]
                fields[u.id] = total
                signals[u.id] = get_activation(u.activation).fn(total)
        else:
            for u in net.units:
                signals[u.id] = 0.0
            converged = False
            for _ in range(max_iterations):
                new_fields = {}
                new_values = {}
                for u in net.units:
                    total = u.bias
                    for src, w in u.incoming:
                        total += w * signals[src]
                    new_fields[u.id] = total
                    new_values[u.id] = get_activation(u.activation).fn(total)
                delta = max(
                    abs(new_values[u.id] - signals[u.id]) for u in net.units
                )
                for u in net.units:
                    signals[u.id] = new_values[u.id]
                fields = new_fields
                if delta < eps:
                    converged = True
                    break
            if not converged:
                raise NonConvergenceError(
                    f"no stationary state for stimulus {sid!r} within"
                    f" {max_iterations} iterations"
                )
            # One settling pass so recorded pairs satisfy y = phi(u) exactly.
            for u in net.units:
                total = u.bias
                for src, w in u.incoming:
                    total += w * signals[src]
                fields[u.id] = total
            for u in net.units:
                signals[u.id] = get_activation(u.activation).fn(fields[u.id])
        activity[sid] = dict(signals)
        induced[sid] = fields
    return ActivityTable(
        stimuli=stimuli.ids, activity=activity, induced_field=induced
    )


def build_fuzzy_interp(
    net: Network,
    stimuli: StimulusSet,
    table: ActivityTable | None = None,
) -> FuzzyInterpretation:
    """Stimuli as domain, one concept per node, membership = activity.

    Every stimulus id doubles as an individual name for itself, so
    assertion-style queries can address single stimuli.
    """
    if not stimuli.ids:
        raise ValueError("cannot interpret a network over zero stimuli")
    if table is None:
        table = forward(net, stimuli)
    concepts: dict[str, dict[str, float]] = {}
    for node in net.node_ids:
        row = {}
        for sid in stimuli.ids:
            value = table.activity[sid][node]
            if not 0.0 <= value <= 1.0:
                raise PrefnetError(
                    f"activity of {node!r} at {sid!r} is {value}, outside [0,1]"
                )
            row[sid] = value
        concepts[node] = row
    return FuzzyInterpretation(
        domain=stimuli.ids,
        concepts=concepts,
        individuals={sid: sid for sid in stimuli.ids},
    )


def build_cwm_interp(
    net: Network,
    stimuli: StimulusSet,
    threshold_mode: str = "nonzero",
    table: ActivityTable | None = None,
) -> MultiprefModel:
    """Crisp model: threshold memberships, preferences by raw activity.

    ``threshold_mode`` "nonzero" counts any positive activity as
    membership; "half" requires activity above 0.5.  Preferences order
    member stimuli by activity (higher first); non-members share the
    bottom spot via weight -inf.  The designated units combine into the
    Pareto global preference.
    """
    if threshold_mode not in ("nonzero", "half"):
        raise ValueError("threshold_mode must be 'nonzero' or 'half'")
    if table is None:
        table = forward(net, stimuli)
    fuzzy = build_fuzzy_interp(net, stimuli, table)

    def member(value: float) -> bool:
        return value != 0.0 if threshold_mode == "nonzero" else value > 0.5

    concepts = {
        node: {
            sid: 1.0
            for sid in stimuli.ids
            if member(fuzzy.concepts[node][sid])
        }
        for node in net.node_ids
    }
    interp = FuzzyInterpretation(
        domain=stimuli.ids,
        concepts=concepts,
        individuals={sid: sid for sid in stimuli.ids},
    )
    prefs: dict[str, ConceptPreference] = {}
    for cid in net.c_units:
        weights = {
            sid: fuzzy.concepts[cid][sid]
            if member(fuzzy.concepts[cid][sid])
            else NEG_INF
            for sid in stimuli.ids
        }
        prefs[cid] = ConceptPreference(cid, weights)
    return MultiprefModel(
        interp=interp,
        concepts=tuple(net.c_units),
        preferences=prefs,
        family=None,
        global_pref=GlobalPreference(tuple(prefs[c] for c in net.c_units)),
    )


# ---------------------------------------------------------------------------
# KB extraction and verification


def extract_kb(net: Network, c_units: tuple[str, ...] | None = None) -> WeightedKB:
    """Read each designated unit as a weighted defeasible block.

    The bias contributes a leading ``T(C_k) [= Top @ bias`` default when
    nonzero; synapses follow in listed order.  Summing the block with
    degree-weighted fuzzy weights then replays the induced-field sum
    term for term.
    """
    designated = tuple(c_units) if c_units is not None else net.c_units
    unit_ids = {u.id for u in net.units}
    for cid in designated:
        if cid not in unit_ids:
            raise ValueError(f"designated unit {cid!r} is not a unit id")
    blocks: dict[str, tuple[DefeasibleInclusion, ...]] = {}
    for cid in designated:
        unit = net.unit(cid)
        block: list[DefeasibleInclusion] = []
        if unit.bias != 0.0:
            block.append(DefeasibleInclusion(cid, TOP, unit.bias))
        for src, w in unit.incoming:
            block.append(DefeasibleInclusion(cid, Name(src), w))
        blocks[cid] = tuple(block)
    return WeightedKB(distinguished=designated, defeasible=blocks)


@dataclass
class VerificationReport:
    """Outcome of checking the activity/weight identity plus coherence."""

    kind: str  # "strict" or "weak"
    ok: bool
    weight_identity_ok: bool
    max_weight_error: float
    gated_pairs: int
    checked_pairs: int
    coherence: CoherenceReport

    def to_json(self, violation_limit: int | None = 10) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "weight_identity_ok": self.weight_identity_ok,
            "max_weight_error": self.max_weight_error,
            "gated_pairs": self.gated_pairs,
            "checked_pairs": self.checked_pairs,
            "coherence": self.coherence.to_json(violation_limit),
        }


def _verify(net: Network, stimuli: StimulusSet, kind: str, eps: float) -> VerificationReport:
    table = forward(net, stimuli)
    interp = build_fuzzy_interp(net, stimuli, table)
    kb = extract_kb(net)
    model = build_preferences(kb, interp, ZADEH)
    max_err = 0.0
    gated = 0
    checked = 0
    identity_ok = True
    for cid in kb.distinguished:
        weights = model.preferences[cid].weights
        for sid in stimuli.ids:
            w = weights[sid]
            if interp.concepts[cid][sid] == 0.0:
                # Zero activity turns the weight into -inf by construction;
                # the field comparison applies only where the gate passes.
                gated += 1
                if w != NEG_INF:
                    identity_ok = False
                continue
            checked += 1
            err = abs(w - table.u(sid, cid))
            if err > max_err:
                max_err = err
            if err > eps:
                identity_ok = False
    report = coherence_report(model, max_violations=200)
    coh_ok = report.coherent if kind == "strict" else report.weakly_coherent
    return VerificationReport(
        kind=kind,
        ok=identity_ok and coh_ok,
        weight_identity_ok=identity_ok,
        max_weight_error=max_err,
        gated_pairs=gated,
        checked_pairs=checked,
        coherence=report,
    )


def _require_flags(net: Network, kind: str) -> None:
    if kind == "strict":
        offenders = [
            u.id
            for u in net.units
            if not (
                ACTIVATIONS[u.activation].strictly_increasing
                and ACTIVATIONS[u.activation].range_in_unit_halfopen
            )
        ]
        needed = "strictly increasing activations with range inside (0, 1]"
    else:
        offenders = [
            u.id for u in net.units if not ACTIVATIONS[u.activation].nondecreasing
        ]
        needed = "monotone non-decreasing activations"
    if offenders:
        raise ActivationPreconditionError(
            f"{kind} coherence verification needs {needed};"
            f" offending units: {', '.join(offenders)}",
            offenders,
        )


def verify_strict_coherence(
    net: Network, stimuli: StimulusSet, *, eps: float = EPS_NUM
) -> VerificationReport:
    """Extracted KB on the activity interpretation must be fully coherent.

    Requires every activation strictly increasing with range in (0, 1].
    Also asserts the block-sum weight equals the recorded induced field
    within ``eps`` at every designated unit and stimulus.
    """
    _require_flags(net, "strict")
    return _verify(net, stimuli, "strict", eps)


def verify_weak_coherence(
    net: Network, stimuli: StimulusSet, *, eps: float = EPS_NUM
) -> VerificationReport:
    """Extracted KB on the activity interpretation must be weakly coherent.

    Requires every activation monotone non-decreasing.  The weight/field
    identity is asserted wherever the activity is positive; zero-activity
    pairs are counted as gated.
    """
    _require_flags(net, "weak")
    return _verify(net, stimuli, "weak", eps)


# ---------------------------------------------------------------------------
# JSON interface


def network_to_json(net: Network) -> dict:
    return {
        "inputs": list(net.inputs),
        "units": [
            {
                "id": u.id,
                "activation": u.activation,
                "bias": u.bias,
                "in": [[src, w] for src, w in u.incoming],
            }
            for u in net.units
        ],
        "C": list(net.c_units),
    }


def network_from_json(obj: dict) -> Network:
    if not isinstance(obj, dict) or "units" not in obj:
        raise ValueError("a network object needs a 'units' list")
    units = []
    for entry in obj["units"]:
        units.append(
            Unit(
                id=str(entry["id"]),
                activation=str(entry.get("activation", "sigmoid")),
                bias=float(entry.get("bias", 0.0)),
                incoming=tuple(
                    (str(src), float(w)) for src, w in entry.get("in", [])
                ),
            )
        )
    return Network(
        inputs=tuple(str(i) for i in obj.get("inputs", [])),
        units=tuple(units),
        c_units=tuple(str(c) for c in obj.get("C", [])),
    )


def load_network(path: str | Path) -> Network:
    return network_from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def stimuli_to_json(stimuli: StimulusSet) -> dict:
    return {
        "stimuli": [
            {"id": sid, "values": dict(stimuli.values[sid])} for sid in stimuli.ids
        ]
    }


def stimuli_from_json(obj: dict) -> StimulusSet:
    if not isinstance(obj, dict) or "stimuli" not in obj:
        raise ValueError("a stimulus object needs a 'stimuli' list")
    ids = []
    values = {}
    for entry in obj["stimuli"]:
        sid = str(entry["id"])
        ids.append(sid)
        values[sid] = {str(k): float(v) for k, v in (entry.get("values") or {}).items()}
    return StimulusSet(ids=tuple(ids), values=values)


def load_stimuli(path: str | Path) -> StimulusSet:
    return stimuli_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
