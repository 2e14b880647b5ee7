"""The eight-node inclusion diagram: reachability, emptiness propagation,
cut enumeration, and the forcing knowledge base.

Nodes name the bounding/non-dominating regions for the three threshold
relations, sandwiched between the always-empty bottom and the region of
all new reals.  Arrows are inclusions, so nonemptiness flows up the
arrows and emptiness flows down; a cut is an upward-closed set of
nonempty nodes.  The knowledge base records, per classical forcing, which
regions its extension makes nonempty and which equalities between regions
are asserted, left open, or refuted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import UnknownForcing

NODES = ("Empty", "BIn", "BLeq", "BNeq", "DNeq", "DLeq", "DIn", "AllNew")
REGION_NODES = NODES[1:]

EDGES = (
    ("Empty", "BIn"),
    ("BIn", "BLeq"),
    ("BLeq", "BNeq"),
    ("BIn", "DNeq"),
    ("BLeq", "DLeq"),
    ("BNeq", "DIn"),
    ("DNeq", "DLeq"),
    ("DLeq", "DIn"),
    ("DIn", "AllNew"),
)

EMPTINESS = ("empty", "nonempty", "unknown")
SEPARATORS = ("distinct", "unknown")


def diagram_spec() -> tuple[tuple[str, ...], tuple[tuple[str, str], ...]]:
    """The node list and directed edge list of the inclusion diagram."""
    return NODES, EDGES


def _successors() -> dict[str, tuple[str, ...]]:
    out: dict[str, list[str]] = {node: [] for node in NODES}
    for a, b in EDGES:
        out[a].append(b)
    return {node: tuple(v) for node, v in out.items()}


SUCCESSORS = _successors()


def reachable(start: str) -> frozenset[str]:
    """Nodes strictly reachable from start along the arrows."""
    seen: set[str] = set()
    stack = list(SUCCESSORS[start])
    while stack:
        node = stack.pop()
        if node not in seen:
            seen.add(node)
            stack.extend(SUCCESSORS[node])
    return frozenset(seen)


REACHABLE = {node: reachable(node) for node in NODES}


def is_upward_closed(nonempty: frozenset[str]) -> bool:
    return all(REACHABLE[node] <= nonempty for node in nonempty)


@dataclass(frozen=True)
class Cut:
    """An upward-closed set of region nodes, with its realizing forcing."""

    nonempty: frozenset[str]
    realized_by: str | None = None

    def sorted_nodes(self) -> list[str]:
        order = {node: i for i, node in enumerate(NODES)}
        return sorted(self.nonempty, key=order.__getitem__)

    def to_obj(self):
        return {"nonempty": self.sorted_nodes(), "realized_by": self.realized_by}


@dataclass(frozen=True)
class Contradiction:
    """A node forced both empty and nonempty, with the implication chain."""

    node: str
    chain: tuple[str, ...]

    def __str__(self):
        return f"{self.node} forced both ways via {' -> '.join(self.chain)}"


@dataclass(frozen=True)
class DiagramState:
    """Per-node emptiness plus an optional equality-class structure.

    Classes partition the region nodes in diagram order; separators[i]
    records whether classes i and i+1 are asserted distinct or left open.
    """

    emptiness: dict[str, str]
    classes: tuple[tuple[str, ...], ...] | None = None
    separators: tuple[str, ...] | None = None
    citation: str | None = None

    def __post_init__(self):
        emptiness = {node: "unknown" for node in NODES}
        emptiness.update(self.emptiness)
        emptiness["Empty"] = "empty"
        object.__setattr__(self, "emptiness", emptiness)
        for node, value in emptiness.items():
            if node not in NODES:
                raise ValueError(f"unknown diagram node {node!r}")
            if value not in EMPTINESS:
                raise ValueError(f"unknown emptiness value {value!r}")
        if self.classes is not None:
            classes = tuple(tuple(cls) for cls in self.classes)
            object.__setattr__(self, "classes", classes)
            seen = [node for cls in classes for node in cls]
            if sorted(seen) != sorted(REGION_NODES):
                raise ValueError("classes must partition the seven region nodes")
            separators = self.separators
            if separators is None:
                separators = tuple("distinct" for _ in range(len(classes) - 1))
            else:
                separators = tuple(separators)
            if len(separators) != max(len(classes) - 1, 0):
                raise ValueError("need one separator between consecutive classes")
            if any(sep not in SEPARATORS for sep in separators):
                raise ValueError(f"separators must be in {SEPARATORS}")
            object.__setattr__(self, "separators", separators)

    def nonempty_set(self) -> frozenset[str]:
        return frozenset(
            node for node in REGION_NODES if self.emptiness[node] == "nonempty"
        )

    def class_violations(self) -> list[str]:
        """Nodes in one class must share an emptiness value."""
        if self.classes is None:
            return []
        out = []
        for cls in self.classes:
            values = {self.emptiness[node] for node in cls}
            if len(values) > 1:
                out.append(f"class {list(cls)} mixes emptiness values {sorted(values)}")
        return out

    def to_obj(self):
        obj = {"emptiness": {node: self.emptiness[node] for node in NODES}}
        if self.classes is not None:
            obj["classes"] = [list(cls) for cls in self.classes]
            obj["separators"] = list(self.separators)
        if self.citation is not None:
            obj["citation"] = self.citation
        return obj

    @classmethod
    def from_obj(cls, obj) -> "DiagramState":
        if not isinstance(obj, dict) or "emptiness" not in obj:
            raise ValueError('DiagramState JSON must carry an "emptiness" map')
        classes = obj.get("classes")
        return cls(
            emptiness=dict(obj["emptiness"]),
            classes=None if classes is None else tuple(tuple(c) for c in classes),
            separators=None
            if obj.get("separators") is None
            else tuple(obj["separators"]),
            citation=obj.get("citation"),
        )


@dataclass(frozen=True)
class ForcingProfile:
    """A knowledge-base entry: a named diagram state with its citation."""

    name: str
    state: DiagramState
    citation: str = field(default="")


# ---------------------------------------------------------------------------
# Propagation


def _shortest_path(start: str, goal: str) -> tuple[str, ...]:
    frontier = [(start,)]
    while frontier:
        path = frontier.pop(0)
        if path[-1] == goal:
            return path
        for nxt in SUCCESSORS[path[-1]]:
            frontier.append(path + (nxt,))
    return (start, goal)


def propagate(state: DiagramState) -> DiagramState | Contradiction:
    """Close the state under the inclusion semantics of the arrows.

    A nonempty node makes everything it reaches nonempty; an empty node
    makes everything reaching it empty.  A node pushed both ways is
    reported as a Contradiction carrying a witnessing implication chain.
    The closure is monotone and stabilizes within one pass per node.
    """
    values = dict(state.emptiness)
    if values["Empty"] == "nonempty":
        return Contradiction("Empty", ("Empty",))
    values["Empty"] = "empty"
    for node in NODES:
        if values[node] == "nonempty":
            for other in REACHABLE[node]:
                if values[other] == "empty":
                    return Contradiction(other, _shortest_path(node, other))
                values[other] = "nonempty"
    for node in NODES:
        if values[node] == "empty":
            for other in NODES:
                if node in REACHABLE[other]:
                    if values[other] == "nonempty":
                        return Contradiction(other, _shortest_path(other, node))
                    values[other] = "empty"
    return DiagramState(
        emptiness=values,
        classes=state.classes,
        separators=state.separators,
        citation=state.citation,
    )


# ---------------------------------------------------------------------------
# Cut enumeration


def enumerate_cuts() -> list[Cut]:
    """All upward-closed subsets of the seven region nodes, each paired
    with its realizing forcing, in (size, node order) order."""
    realizers = {
        profile.state.nonempty_set(): profile.name for profile in kb_profiles()
    }
    order = {node: i for i, node in enumerate(NODES)}
    cuts = []
    for mask in range(1 << len(REGION_NODES)):
        subset = frozenset(
            node for i, node in enumerate(REGION_NODES) if mask & (1 << i)
        )
        if is_upward_closed(subset):
            cuts.append(Cut(subset, realizers.get(subset)))
    cuts.sort(key=lambda c: (len(c.nonempty), [order[n] for n in c.sorted_nodes()]))
    return cuts


# ---------------------------------------------------------------------------
# Knowledge base


_KB_CACHE: dict | None = None


def _load_kb() -> dict:
    global _KB_CACHE
    if _KB_CACHE is None:
        text = resources.files("cichon").joinpath("data/kb.json").read_text()
        raw = json.loads(text)
        profiles = {}
        for name, entry in raw["profiles"].items():
            state = DiagramState.from_obj(entry)
            _check_profile(name, state)
            profiles[name] = ForcingProfile(name, state, entry.get("citation", ""))
        products = {}
        for entry in raw.get("products", []):
            key = tuple(sorted(entry["factors"]))
            state = DiagramState.from_obj(entry["profile"])
            _check_profile("*".join(key), state)
            products[key] = ForcingProfile(
                "*".join(key), state, entry["profile"].get("citation", "")
            )
        _KB_CACHE = {"profiles": profiles, "products": products}
    return _KB_CACHE


def _check_profile(name: str, state: DiagramState):
    if not is_upward_closed(state.nonempty_set()):
        raise ValueError(f"profile {name}: nonempty set is not upward closed")
    closed = propagate(state)
    if isinstance(closed, Contradiction):
        raise ValueError(f"profile {name}: contradiction {closed}")
    if closed.emptiness != state.emptiness:
        raise ValueError(f"profile {name}: not a propagation fixpoint")
    violations = state.class_violations()
    if violations:
        raise ValueError(f"profile {name}: {violations}")


def kb_names() -> list[str]:
    return sorted(_load_kb()["profiles"])


def kb_profiles() -> list[ForcingProfile]:
    return [_load_kb()["profiles"][name] for name in kb_names()]


def kb_lookup(name: str) -> ForcingProfile:
    profiles = _load_kb()["profiles"]
    if name not in profiles:
        raise UnknownForcing(f"no knowledge-base entry for {name!r}")
    return profiles[name]


def compose_profiles(names: list[str]) -> DiagramState:
    """Join the recorded states of a product of forcings.

    A node is nonempty if any factor makes it nonempty and empty only if
    every factor leaves it empty.  Class structure is dropped, except
    that a recorded product entry (matched as a multiset-free factor set)
    is returned verbatim.
    """
    kb = _load_kb()
    states = [kb_lookup(name).state for name in names]
    key = tuple(sorted(set(names)))
    if key in kb["products"]:
        return kb["products"][key].state
    emptiness = {}
    for node in REGION_NODES:
        values = {state.emptiness[node] for state in states}
        if "nonempty" in values:
            emptiness[node] = "nonempty"
        elif values == {"empty"}:
            emptiness[node] = "empty"
        else:
            emptiness[node] = "unknown"
    return DiagramState(emptiness=emptiness)


# ---------------------------------------------------------------------------
# Rendering


def emit_json(state: DiagramState) -> str:
    return json.dumps(state.to_obj(), indent=2, sort_keys=True)


def parse_state(text: str) -> DiagramState:
    return DiagramState.from_obj(json.loads(text))


def emit_dot(state: DiagramState) -> str:
    """Render as a DOT digraph: shaded = empty, dashed border = unknown,
    plain = nonempty; equality classes become same-rank clusters."""
    lines = ["digraph cichon {", "  rankdir=LR;", '  node [shape=box];']
    for node in NODES:
        value = state.emptiness[node]
        if value == "empty":
            attrs = ' [style=filled, fillcolor=gray85]'
        elif value == "unknown":
            attrs = ' [style=dashed]'
        else:
            attrs = ""
        lines.append(f'  "{node}"{attrs};')
    if state.classes is not None:
        for i, cls in enumerate(state.classes):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append("    rank=same;")
            for node in cls:
                lines.append(f'    "{node}";')
            lines.append("  }")
    for a, b in EDGES:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
