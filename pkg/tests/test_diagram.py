"""Diagram shape, propagation, cut enumeration against brute force, the
knowledge base region-for-region, composition, and rendering."""

import itertools
import json

import pytest

from cichon import (
    Contradiction,
    DiagramState,
    compose_profiles,
    diagram_spec,
    emit_dot,
    emit_json,
    enumerate_cuts,
    kb_lookup,
    kb_names,
    propagate,
)
from cichon.diagram import NODES, REGION_NODES, parse_state
from cichon.errors import UnknownForcing

EXPECTED_EDGES = {
    ("Empty", "BIn"),
    ("BIn", "BLeq"),
    ("BLeq", "BNeq"),
    ("BIn", "DNeq"),
    ("BLeq", "DLeq"),
    ("BNeq", "DIn"),
    ("DNeq", "DLeq"),
    ("DLeq", "DIn"),
    ("DIn", "AllNew"),
}

# The recorded per-forcing regions: emptiness pattern, equality classes in
# diagram order, and which adjacent separations stay open.
EXPECTED_PROFILES = {
    "sacks": (
        {"AllNew"},
        [["BIn", "BLeq", "BNeq", "DNeq", "DLeq", "DIn"], ["AllNew"]],
        ["distinct"],
    ),
    "cohen": (
        {"DNeq", "DLeq", "DIn", "AllNew"},
        [["BIn", "BLeq", "BNeq"], ["DNeq", "DLeq", "DIn", "AllNew"]],
        ["distinct"],
    ),
    "hechler": (
        {"BLeq", "BNeq", "DNeq", "DLeq", "DIn", "AllNew"},
        [["BIn"], ["BLeq", "BNeq"], ["DNeq", "DLeq", "DIn", "AllNew"]],
        ["distinct", "distinct"],
    ),
    "e": (
        {"BNeq", "DNeq", "DLeq", "DIn", "AllNew"},
        [["BIn", "BLeq"], ["BNeq"], ["DNeq", "DLeq", "DIn", "AllNew"]],
        ["distinct", "distinct"],
    ),
    "loc": (
        set(REGION_NODES),
        [["BIn"], ["BLeq"], ["BNeq"], ["DNeq"], ["DLeq"], ["DIn"], ["AllNew"]],
        ["distinct", "distinct", "distinct", "unknown", "unknown", "distinct"],
    ),
    "random": (
        {"BNeq", "DIn", "AllNew"},
        [["BIn", "BLeq", "DNeq", "DLeq"], ["BNeq", "DIn", "AllNew"]],
        ["distinct"],
    ),
    "laver": (
        {"BLeq", "BNeq", "DLeq", "DIn", "AllNew"},
        [["BIn", "DNeq"], ["BLeq", "BNeq", "DLeq", "DIn", "AllNew"]],
        ["distinct"],
    ),
    "miller": (
        {"DLeq", "DIn", "AllNew"},
        [["BIn", "BLeq", "BNeq", "DNeq"], ["DLeq", "DIn", "AllNew"]],
        ["distinct"],
    ),
    "ee": (
        {"DIn", "AllNew"},
        [["BIn", "BLeq", "BNeq", "DNeq", "DLeq"], ["DIn"], ["AllNew"]],
        ["distinct", "unknown"],
    ),
    "b-then-pt": (
        {"BNeq", "DLeq", "DIn", "AllNew"},
        [["BIn", "BLeq", "DNeq"], ["BNeq"], ["DLeq"], ["DIn"], ["AllNew"]],
        ["distinct", "unknown", "unknown", "unknown"],
    ),
    "trivial": (
        set(),
        [["BIn", "BLeq", "BNeq", "DNeq", "DLeq", "DIn", "AllNew"]],
        [],
    ),
}


def brute_force_cuts():
    """Independent oracle: filter all 2^7 subsets by the edge rule."""
    edges = [(a, b) for a, b in EXPECTED_EDGES if a != "Empty"]
    cuts = []
    for size in range(len(REGION_NODES) + 1):
        for subset in itertools.combinations(REGION_NODES, size):
            chosen = set(subset)
            if all(b in chosen for a, b in edges if a in chosen):
                cuts.append(frozenset(chosen))
    return set(cuts)


# ---------------------------------------------------------------------------
# Shape


def test_diagram_shape():
    nodes, edges = diagram_spec()
    assert len(nodes) == 8
    assert len(edges) == 9
    assert set(edges) == EXPECTED_EDGES


def test_two_paths_to_din():
    from cichon.diagram import REACHABLE

    assert "DIn" in REACHABLE["BLeq"]
    paths = [("BLeq", "BNeq", "DIn"), ("BLeq", "DLeq", "DIn")]
    for path in paths:
        for a, b in zip(path, path[1:]):
            assert (a, b) in EXPECTED_EDGES


def test_no_side_edge_between_bneq_and_dneq():
    from cichon.diagram import REACHABLE

    assert "DNeq" not in REACHABLE["BNeq"]
    assert "BNeq" not in REACHABLE["DNeq"]
    assert "DNeq" not in REACHABLE["BLeq"]


# ---------------------------------------------------------------------------
# Propagation


def test_propagate_nonempty_up():
    state = DiagramState(emptiness={"BLeq": "nonempty"})
    closed = propagate(state)
    assert not isinstance(closed, Contradiction)
    for node in ("BNeq", "DLeq", "DIn", "AllNew"):
        assert closed.emptiness[node] == "nonempty"
    for node in ("BIn", "DNeq"):
        assert closed.emptiness[node] == "unknown"


def test_propagate_all_unknown():
    closed = propagate(DiagramState(emptiness={}))
    assert not isinstance(closed, Contradiction)
    assert closed.emptiness["Empty"] == "empty"
    assert all(closed.emptiness[node] == "unknown" for node in REGION_NODES)


def test_propagate_empty_down():
    closed = propagate(DiagramState(emptiness={"DIn": "empty"}))
    assert not isinstance(closed, Contradiction)
    for node in ("BIn", "BLeq", "BNeq", "DNeq", "DLeq"):
        assert closed.emptiness[node] == "empty"
    assert closed.emptiness["AllNew"] == "unknown"


def test_propagate_contradiction():
    result = propagate(DiagramState(emptiness={"DIn": "empty", "BIn": "nonempty"}))
    assert isinstance(result, Contradiction)
    assert result.node == "DIn"
    assert result.chain[0] == "BIn" and result.chain[-1] == "DIn"
    for a, b in zip(result.chain, result.chain[1:]):
        assert (a, b) in EXPECTED_EDGES


def test_propagate_idempotent_on_profiles():
    for name in kb_names():
        state = kb_lookup(name).state
        closed = propagate(state)
        assert not isinstance(closed, Contradiction)
        assert closed.emptiness == state.emptiness


# ---------------------------------------------------------------------------
# Cuts


def test_enumerate_cuts_count_and_oracle():
    cuts = enumerate_cuts()
    assert len(cuts) == 11
    assert {cut.nonempty for cut in cuts} == brute_force_cuts()


def test_cut_realizers_bijective():
    cuts = enumerate_cuts()
    realizers = [cut.realized_by for cut in cuts]
    assert None not in realizers
    assert sorted(realizers) == sorted(kb_names())
    for cut in cuts:
        assert kb_lookup(cut.realized_by).state.nonempty_set() == cut.nonempty


def test_full_cut_and_non_cut():
    cuts = {cut.nonempty for cut in enumerate_cuts()}
    assert frozenset(REGION_NODES) in cuts
    assert frozenset({"BLeq", "DNeq"}) not in cuts


# ---------------------------------------------------------------------------
# Knowledge base


def test_kb_profiles_match_recorded_regions():
    assert set(kb_names()) == set(EXPECTED_PROFILES)
    for name, (nonempty, classes, separators) in EXPECTED_PROFILES.items():
        profile = kb_lookup(name)
        assert profile.state.nonempty_set() == frozenset(nonempty), name
        assert [list(cls) for cls in profile.state.classes] == classes, name
        assert list(profile.state.separators) == separators, name
        assert profile.citation


def test_kb_nonempty_sets_upward_closed():
    from cichon.diagram import is_upward_closed

    for name in kb_names():
        assert is_upward_closed(kb_lookup(name).state.nonempty_set()), name


def test_kb_classes_share_emptiness():
    for name in kb_names():
        assert kb_lookup(name).state.class_violations() == [], name


def test_kb_unknown_forcing():
    with pytest.raises(UnknownForcing):
        kb_lookup("solovay")


def test_sacks_profile_example():
    state = kb_lookup("sacks").state
    assert state.nonempty_set() == frozenset({"AllNew"})


def test_hechler_profile_example():
    state = kb_lookup("hechler").state
    assert state.emptiness["BIn"] == "empty"
    assert ("BLeq", "BNeq") in {tuple(cls) for cls in state.classes}
    assert ("DNeq", "DLeq", "DIn", "AllNew") in {tuple(cls) for cls in state.classes}


def test_random_profile_example():
    state = kb_lookup("random").state
    for node in ("BIn", "BLeq", "DNeq", "DLeq"):
        assert state.emptiness[node] == "empty"
    assert ("BNeq", "DIn", "AllNew") in {tuple(cls) for cls in state.classes}


# ---------------------------------------------------------------------------
# Composition


def test_compose_full_separation_product():
    state = compose_profiles(["sacks", "laver", "loc", "random"])
    assert state.nonempty_set() == frozenset(REGION_NODES)
    assert state.classes is not None
    assert all(len(cls) == 1 for cls in state.classes)
    assert all(sep == "distinct" for sep in state.separators)


def test_compose_trivial_pair():
    state = compose_profiles(["trivial", "trivial"])
    assert state.nonempty_set() == frozenset()
    assert all(state.emptiness[node] == "empty" for node in REGION_NODES)


def test_compose_cohen_sacks_join():
    state = compose_profiles(["cohen", "sacks"])
    for node in ("DNeq", "DLeq", "DIn", "AllNew"):
        assert state.emptiness[node] == "nonempty"
    for node in ("BIn", "BLeq", "BNeq"):
        assert state.emptiness[node] == "empty"
    assert state.classes is None


def test_compose_monotone(rng):
    names = kb_names()
    for _ in range(60):
        base = rng.sample(names, rng.randint(1, 3))
        bigger = base + [rng.choice(names)]
        before = compose_profiles(base)
        after = compose_profiles(bigger)
        assert before.nonempty_set() <= after.nonempty_set()


def test_compose_unknown_factor():
    with pytest.raises(UnknownForcing):
        compose_profiles(["cohen", "amoeba"])


# ---------------------------------------------------------------------------
# Rendering


def test_dot_has_nine_edges():
    for name in kb_names():
        dot = emit_dot(kb_lookup(name).state)
        assert dot.count(" -> ") == 9


def test_dot_hechler_clusters():
    state = kb_lookup("hechler").state
    dot = emit_dot(state)
    assert dot.count("subgraph cluster_") == 3
    nonempty_clusters = [
        cls for cls in state.classes if state.emptiness[cls[0]] == "nonempty"
    ]
    assert len(nonempty_clusters) == 2


def test_json_round_trip():
    for name in kb_names():
        state = kb_lookup(name).state
        assert parse_state(emit_json(state)) == state


def test_emitted_json_is_sorted_and_stable():
    state = kb_lookup("cohen").state
    assert emit_json(state) == emit_json(parse_state(emit_json(state)))
    payload = json.loads(emit_json(state))
    assert set(payload["emptiness"]) == set(NODES)
