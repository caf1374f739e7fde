import math
import random

import pytest

from prefnet import (
    ACTIVATIONS,
    ActivationPreconditionError,
    Name,
    NEG_INF,
    Network,
    NonConvergenceError,
    StimulusSet,
    TOP,
    Unit,
    ZADEH,
    build_cwm_interp,
    build_fuzzy_interp,
    build_preferences,
    extract_kb,
    forward,
    fuzzy_weight,
    get_activation,
    network_from_json,
    network_to_json,
    serialize_kb,
    stimuli_from_json,
    stimuli_to_json,
    verify_strict_coherence,
    verify_weak_coherence,
)
from genutil import random_feedforward_net, random_stimuli


def single_unit(activation: str, bias: float, weight: float) -> Network:
    return Network(
        inputs=("x0",),
        units=(
            Unit(
                id="u0",
                activation=activation,
                bias=bias,
                incoming=(("x0", weight),),
            ),
        ),
        c_units=("u0",),
    )


def one_stimulus(value: float) -> StimulusSet:
    return StimulusSet(ids=("s0",), values={"s0": {"x0": value}})


# ---------------------------------------------------------------------------
# Activations


def test_sigmoid_midpoint():
    net = single_unit("sigmoid", 0.0, 1.0)
    table = forward(net, one_stimulus(0.0))
    assert table.u("s0", "u0") == 0.0
    assert table.y("s0", "u0") == 0.5


def test_sigmoid_value():
    net = single_unit("sigmoid", 0.25, 2.0)
    table = forward(net, one_stimulus(0.5))
    u = 0.25 + 2.0 * 0.5
    assert table.u("s0", "u0") == pytest.approx(u)
    assert table.y("s0", "u0") == pytest.approx(1.0 / (1.0 + math.exp(-u)))


def test_step_threshold():
    net = single_unit("step", -1.0, 1.0)
    assert forward(net, one_stimulus(0.5)).y("s0", "u0") == 0.0
    assert forward(net, one_stimulus(1.0)).y("s0", "u0") == 1.0  # fires at u = 0


def test_hard_sigmoid_clips():
    phi = get_activation("hard-sigmoid").fn
    assert phi(-3.0) == 0.0
    assert phi(3.0) == 1.0
    assert phi(0.0) == 0.5
    assert phi(1.0) == pytest.approx(0.7)


def test_softplus01_range():
    phi = get_activation("softplus01").fn
    assert 0.0 < phi(-50.0) < 1e-9
    assert phi(0.0) == pytest.approx(math.log(2) / (1 + math.log(2)))
    assert phi(100.0) < 1.0
    assert phi(40.0) > 0.97


def test_linear_clamp():
    phi = get_activation("linear-clamp").fn
    assert phi(-0.5) == 0.0
    assert phi(0.25) == 0.25
    assert phi(2.0) == 1.0


def test_activation_flags_are_truthful():
    samples = [i / 7 - 3 for i in range(43)]
    for tag, act in ACTIVATIONS.items():
        values = [act.fn(u) for u in samples]
        if act.strictly_increasing:
            for a, b in zip(values, values[1:]):
                assert b > a, tag
        if act.nondecreasing:
            for a, b in zip(values, values[1:]):
                assert b >= a, tag
        if act.range_in_unit_halfopen:
            for v in values:
                assert 0.0 < v <= 1.0, tag


def test_unknown_activation_rejected():
    with pytest.raises(Exception):
        single_unit("relu", 0.0, 1.0)


# ---------------------------------------------------------------------------
# Forward pass


def test_input_clamping():
    net = single_unit("sigmoid", 0.0, 1.0)
    high = forward(net, one_stimulus(7.0))
    assert high.u("s0", "u0") == 1.0
    low = forward(net, one_stimulus(-2.0))
    assert low.u("s0", "u0") == 0.0


def test_listed_order_accumulation():
    net = Network(
        inputs=("a", "b", "c"),
        units=(
            Unit(
                id="o",
                activation="sigmoid",
                bias=0.1,
                incoming=(("a", 0.3), ("b", -0.7), ("c", 1.9)),
            ),
        ),
        c_units=("o",),
    )
    st = StimulusSet(ids=("s",), values={"s": {"a": 0.2, "b": 0.9, "c": 0.4}})
    table = forward(net, st)
    expected = 0.1
    expected += 0.3 * 0.2
    expected += -0.7 * 0.9
    expected += 1.9 * 0.4
    assert table.u("s", "o") == expected  # bit-exact, same fold order


def test_layered_forward():
    net = Network(
        inputs=("x",),
        units=(
            Unit(id="h", activation="sigmoid", bias=0.0, incoming=(("x", 2.0),)),
            Unit(id="o", activation="sigmoid", bias=-1.0, incoming=(("h", 3.0),)),
        ),
        c_units=("h", "o"),
    )
    table = forward(net, one_stimulus_for(net, 0.5))
    h = 1.0 / (1.0 + math.exp(-1.0))
    assert table.y("s0", "h") == pytest.approx(h)
    assert table.y("s0", "o") == pytest.approx(
        1.0 / (1.0 + math.exp(-(3.0 * h - 1.0)))
    )


def one_stimulus_for(net: Network, value: float) -> StimulusSet:
    return StimulusSet(
        ids=("s0",), values={"s0": {inp: value for inp in net.inputs}}
    )


def test_recurrent_fixed_point_matches_topo_on_acyclic():
    rng = random.Random(3)
    for _ in range(10):
        net = random_feedforward_net(rng)
        st = random_stimuli(rng, net, 5)
        direct = forward(net, st)
        iterated = forward(net, st, force_iterative=True)
        for sid in st.ids:
            for u in net.units:
                assert direct.y(sid, u.id) == pytest.approx(
                    iterated.y(sid, u.id), abs=1e-7
                )
                # the settling pass makes y = phi(u) hold exactly
                act = get_activation(u.activation).fn
                assert iterated.y(sid, u.id) == act(iterated.u(sid, u.id))


def test_recurrent_convergence():
    net = Network(
        inputs=("x",),
        units=(
            Unit(id="a", activation="sigmoid", bias=0.0, incoming=(("x", 1.0), ("b", 0.5))),
            Unit(id="b", activation="sigmoid", bias=0.0, incoming=(("a", 0.5),)),
        ),
        c_units=("a", "b"),
    )
    assert not net.is_feedforward
    table = forward(net, one_stimulus_for(net, 0.8))
    a, b = table.y("s0", "a"), table.y("s0", "b")
    assert a == pytest.approx(
        1.0 / (1.0 + math.exp(-(0.8 + 0.5 * b))), abs=1e-7
    )


def test_nonconvergence_raises():
    # linear-clamp with gain 4 oscillates between the saturation points
    net = Network(
        inputs=("x",),
        units=(
            Unit(
                id="a",
                activation="linear-clamp",
                bias=2.0,
                incoming=(("b", -4.0),),
            ),
            Unit(
                id="b",
                activation="linear-clamp",
                bias=-1.0,
                incoming=(("a", 4.0), ("x", 0.0)),
            ),
        ),
        c_units=("a", "b"),
    )
    with pytest.raises(NonConvergenceError):
        forward(net, one_stimulus_for(net, 0.5), max_iterations=200)


def test_cycle_detection():
    net = Network(
        inputs=("x",),
        units=(
            Unit(id="a", activation="sigmoid", bias=0.0, incoming=(("b", 1.0),)),
            Unit(id="b", activation="sigmoid", bias=0.0, incoming=(("a", 1.0),)),
        ),
        c_units=("a",),
    )
    assert net.topological_units() is None


# ---------------------------------------------------------------------------
# Extraction and models


def test_extract_kb_with_bias():
    net = single_unit("sigmoid", 0.5, 2.0)
    kb = extract_kb(net)
    block = kb.defaults_for("u0")
    assert len(block) == 2
    assert block[0].consequent is TOP or block[0].consequent == TOP
    assert block[0].weight == 0.5
    assert block[1].consequent == Name("x0")
    assert block[1].weight == 2.0


def test_extract_kb_zero_bias_drops_top_default():
    net = single_unit("sigmoid", 0.0, 2.0)
    kb = extract_kb(net)
    block = kb.defaults_for("u0")
    assert len(block) == 1
    assert block[0].consequent == Name("x0")


def test_extract_kb_serializes(tmp_path):
    rng = random.Random(8)
    net = random_feedforward_net(rng)
    kb = extract_kb(net)
    from prefnet import parse_kb

    assert parse_kb(serialize_kb(kb)) == kb


def test_extracted_weight_equals_field():
    rng = random.Random(13)
    net = random_feedforward_net(rng)
    st = random_stimuli(rng, net, 10)
    table = forward(net, st)
    interp = build_fuzzy_interp(net, st, table)
    kb = extract_kb(net)
    for u in net.units:
        for sid in st.ids:
            w = fuzzy_weight(kb, interp, ZADEH, u.id, sid)
            if table.y(sid, u.id) > 0.0:
                assert w == table.u(sid, u.id)  # bit-exact
            else:
                assert w == NEG_INF


def test_build_fuzzy_interp_shape():
    net = single_unit("sigmoid", 0.0, 1.0)
    st = one_stimulus(0.5)
    interp = build_fuzzy_interp(net, st)
    assert interp.domain == ("s0",)
    assert set(interp.concepts) == {"x0", "u0"}
    assert interp.individuals == {"s0": "s0"}


def test_build_cwm_interp_thresholds():
    net = single_unit("sigmoid", 0.0, 1.0)
    st = StimulusSet(
        ids=("lo", "hi"), values={"lo": {"x0": 0.0}, "hi": {"x0": 1.0}}
    )
    nonzero = build_cwm_interp(net, st, "nonzero")
    assert nonzero.interp.concept_degree("u0", "lo") == 1.0  # sigmoid(0)=0.5 != 0
    half = build_cwm_interp(net, st, "half")
    assert half.interp.concept_degree("u0", "lo") == 0.0  # 0.5 is not > 0.5
    assert half.interp.concept_degree("u0", "hi") == 1.0


def test_cwm_weights_are_activities():
    net = single_unit("sigmoid", 0.0, 1.0)
    st = one_stimulus(1.0)
    model = build_cwm_interp(net, st, "nonzero")
    y = forward(net, st).y("s0", "u0")
    assert model.preferences["u0"].weights["s0"] == y


# ---------------------------------------------------------------------------
# Verification


def test_verify_strict_on_sigmoid():
    rng = random.Random(21)
    net = random_feedforward_net(rng)
    st = random_stimuli(rng, net, 20)
    report = verify_strict_coherence(net, st)
    assert report.ok
    assert report.weight_identity_ok
    assert report.max_weight_error == 0.0
    assert report.coherence.coherent
    assert report.checked_pairs + report.gated_pairs == len(net.units) * len(st.ids)


def test_verify_strict_rejects_step():
    net = single_unit("step", 0.0, 1.0)
    with pytest.raises(ActivationPreconditionError) as exc:
        verify_strict_coherence(net, one_stimulus(0.5))
    assert "u0" in str(exc.value)


def test_verify_weak_on_step():
    rng = random.Random(33)
    net = random_feedforward_net(rng, activation="step")
    st = random_stimuli(rng, net, 20)
    report = verify_weak_coherence(net, st)
    assert report.ok
    assert report.coherence.weakly_coherent


def test_step_net_fails_strict_coherence():
    # two stimuli with different fields but the same thresholded activity:
    # the weights order them strictly while the degrees tie
    net = single_unit("step", 0.0, 1.0)
    st = StimulusSet(
        ids=("s0", "s1"), values={"s0": {"x0": 0.25}, "s1": {"x0": 0.75}}
    )
    table = forward(net, st)
    assert table.y("s0", "u0") == table.y("s1", "u0") == 1.0
    interp = build_fuzzy_interp(net, st, table)
    kb = extract_kb(net)
    model = build_preferences(kb, interp, ZADEH)
    from prefnet import coherence_report

    rep = coherence_report(model)
    assert not rep.coherent
    assert rep.weakly_coherent


def test_verify_weak_accepts_hard_sigmoid():
    rng = random.Random(55)
    net = random_feedforward_net(rng, activation="hard-sigmoid")
    st = random_stimuli(rng, net, 20)
    report = verify_weak_coherence(net, st)
    assert report.ok


def test_verify_report_json():
    net = single_unit("sigmoid", 0.0, 1.0)
    report = verify_strict_coherence(net, one_stimulus(0.5))
    blob = report.to_json()
    for key in (
        "kind",
        "ok",
        "weight_identity_ok",
        "max_weight_error",
        "gated_pairs",
        "checked_pairs",
        "coherence",
    ):
        assert key in blob


# ---------------------------------------------------------------------------
# Serialization


def test_network_json_round_trip():
    rng = random.Random(44)
    net = random_feedforward_net(rng)
    assert network_from_json(network_to_json(net)) == net


def test_stimuli_json_round_trip():
    rng = random.Random(45)
    net = random_feedforward_net(rng)
    st = random_stimuli(rng, net, 7)
    assert stimuli_from_json(stimuli_to_json(st)) == st


def test_network_validation():
    with pytest.raises(ValueError):
        Network(
            inputs=("x", "x"),
            units=(Unit(id="u", activation="sigmoid", bias=0.0, incoming=()),),
            c_units=("u",),
        )
    with pytest.raises(ValueError):
        Network(
            inputs=("x",),
            units=(
                Unit(
                    id="u",
                    activation="sigmoid",
                    bias=0.0,
                    incoming=(("ghost", 1.0),),
                ),
            ),
            c_units=("u",),
        )
    with pytest.raises(ValueError):
        Network(
            inputs=("x",),
            units=(Unit(id="u", activation="sigmoid", bias=0.0, incoming=()),),
            c_units=("other",),
        )


def test_stimulus_validation():
    net = single_unit("sigmoid", 0.0, 1.0)
    st = StimulusSet(ids=("s",), values={"s": {}})
    with pytest.raises(ValueError):
        forward(net, st)
