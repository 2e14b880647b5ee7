"""Forcing-condition posets: Cohen, Hechler, eventually-different,
localization, and the Sacks/Laver tree kinds with their fusion orders.

In every order, a <= b reads "a strengthens b".  Trees are finite
approximations: prefix-closed node sets whose leaves all sit at the
working depth (the maximal node length), so that a node whose splitting
lies beyond the horizon is indistinguishable from a splitting one; the
Laver branching budget and the Miller splitting-budget flag are recorded
approximation grades, not extra order clauses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import Family, FinFunc, Slalom
from .errors import HorizonMismatch, InvalidCondition, KindMismatch

POSET_KINDS = ("cohen", "hechler", "e", "loc", "sacks", "laver", "product")
FUSION_KINDS = ("sacks", "laver", "product")

Node = tuple[int, ...]


@dataclass(frozen=True)
class CohenCond:
    """A finite sequence; the order is end-extension."""

    stem: FinFunc
    kind: str = field(default="cohen", init=False)


@dataclass(frozen=True)
class HechlerCond:
    """Simplified form: an initial-segment stem with a single side function
    over the working horizon."""

    stem: FinFunc
    side: FinFunc
    kind: str = field(default="hechler", init=False)


@dataclass(frozen=True)
class ECond:
    """Stem plus a side family; new stem values must avoid every side value."""

    stem: FinFunc
    side: Family
    kind: str = field(default="e", init=False)


@dataclass(frozen=True)
class LocCond:
    """An identity-width slalom prefix plus a side family to be captured."""

    prefix: Slalom
    side: Family
    kind: str = field(default="loc", init=False)


@dataclass(frozen=True)
class FiniteTree:
    """A prefix-closed finite tree, either binary ("sacks") or
    natural-branching with a stem ("laver")."""

    tree_kind: str
    nodes: frozenset[Node]
    branching_budget: int | None = None
    splitting_budget: int | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "nodes", frozenset(tuple(node) for node in self.nodes)
        )

    @property
    def kind(self) -> str:
        return self.tree_kind

    @property
    def depth(self) -> int:
        """Working depth: the maximal node length."""
        return max((len(n) for n in self.nodes), default=0)

    def children(self, node: Node) -> list[Node]:
        out = [m for m in self.nodes if len(m) == len(node) + 1 and m[: len(node)] == node]
        return sorted(out)

    @property
    def stem(self) -> Node:
        """The maximal linearly ordered initial segment."""
        current: Node = ()
        if current not in self.nodes:
            return current
        while True:
            kids = self.children(current)
            if len(kids) != 1:
                return current
            current = kids[0]

    def leaves(self) -> list[Node]:
        return sorted(n for n in self.nodes if not self.children(n))


@dataclass(frozen=True)
class ProductCond:
    """A Sacks tree paired with a Laver tree, ordered componentwise."""

    sacks_part: FiniteTree
    laver_part: FiniteTree
    kind: str = field(default="product", init=False)


Condition = CohenCond | HechlerCond | ECond | LocCond | FiniteTree | ProductCond


# ---------------------------------------------------------------------------
# Validity


def _validate_tree(t: FiniteTree) -> list[str]:
    out = []
    if () not in t.nodes:
        out.append("tree must contain the root")
        return out
    for node in t.nodes:
        if node and node[:-1] not in t.nodes:
            out.append(f"not prefix-closed at {list(node)}")
        if t.tree_kind == "sacks" and any(v not in (0, 1) for v in node):
            out.append(f"binary alphabet violated at {list(node)}")
        if t.tree_kind == "laver" and any(v < 0 for v in node):
            out.append(f"natural alphabet violated at {list(node)}")
    depth = t.depth
    for leaf in t.leaves():
        if len(leaf) != depth:
            out.append(
                f"leaf {list(leaf)} at depth {len(leaf)} != working depth {depth}"
            )
    if t.tree_kind == "laver":
        if t.branching_budget is not None and t.branching_budget < 1:
            out.append("branching budget must be >= 1")
    elif t.tree_kind != "sacks":
        out.append(f"unknown tree kind {t.tree_kind!r}")
    return out


def validate(cond: Condition) -> list[str]:
    """Structural invariant check; the empty list means valid.

    Violations are data, each naming the failed clause.
    """
    if isinstance(cond, CohenCond):
        return []
    if isinstance(cond, HechlerCond):
        out = []
        if cond.stem.horizon > cond.side.horizon:
            out.append("stem horizon <= side horizon")
        return out
    if isinstance(cond, ECond):
        out = []
        if cond.stem.horizon > cond.side.horizon:
            out.append("stem horizon <= family horizon")
        return out
    if isinstance(cond, LocCond):
        out = []
        s = cond.prefix
        for n in range(s.horizon):
            if len(s[n]) > n:
                out.append(f"|s(n)| <= n at n={n}")
        if len(cond.side) > s.horizon:
            out.append("|F| <= |s|")
        if s.horizon > cond.side.horizon:
            out.append("|s| <= side horizon")
        return out
    if isinstance(cond, FiniteTree):
        return _validate_tree(cond)
    if isinstance(cond, ProductCond):
        out = []
        if cond.sacks_part.tree_kind != "sacks":
            out.append("first component must be a sacks tree")
        if cond.laver_part.tree_kind != "laver":
            out.append("second component must be a laver tree")
        out.extend(_validate_tree(cond.sacks_part))
        out.extend(_validate_tree(cond.laver_part))
        return out
    raise KindMismatch(f"not a condition: {type(cond).__name__}")


def _kind_of(cond: Condition) -> str:
    if isinstance(cond, FiniteTree):
        return cond.tree_kind
    return cond.kind


def _require(kind: str, a: Condition, b: Condition):
    if kind not in POSET_KINDS:
        raise KindMismatch(f"unknown poset kind {kind!r}")
    for cond in (a, b):
        if _kind_of(cond) != kind:
            raise KindMismatch(f"expected {kind!r} condition, got {_kind_of(cond)!r}")
        violations = validate(cond)
        if violations:
            raise InvalidCondition(violations)


def _extends(longer: FinFunc, shorter: FinFunc) -> bool:
    return (
        longer.horizon >= shorter.horizon
        and longer.values[: shorter.horizon] == shorter.values
    )


def _family_contains(big: Family, small: Family) -> bool:
    members = {f.values for f in big}
    return all(f.values in members for f in small)


# ---------------------------------------------------------------------------
# Orders


def leq(kind: str, a: Condition, b: Condition) -> bool:
    """True iff a strengthens b in the given poset."""
    _require(kind, a, b)
    if kind == "cohen":
        return _extends(a.stem, b.stem)
    if kind == "hechler":
        if a.side.horizon != b.side.horizon:
            raise HorizonMismatch("hechler sides live on different horizons")
        if not _extends(a.stem, b.stem):
            return False
        new = range(b.stem.horizon, a.stem.horizon)
        if any(a.stem[n] < b.side[n] for n in new):
            return False
        return all(a.side[n] >= b.side[n] for n in range(b.side.horizon))
    if kind == "e":
        if a.side.horizon != b.side.horizon:
            raise HorizonMismatch("e-condition families live on different horizons")
        if not _extends(a.stem, b.stem):
            return False
        if not _family_contains(a.side, b.side):
            return False
        new = range(b.stem.horizon, a.stem.horizon)
        return all(a.stem[n] != f[n] for n in new for f in b.side)
    if kind == "loc":
        if a.side.horizon != b.side.horizon:
            raise HorizonMismatch("loc-condition families live on different horizons")
        s, t = b.prefix, a.prefix
        if t.horizon < s.horizon or t.cells[: s.horizon] != s.cells:
            return False
        if not _family_contains(a.side, b.side):
            return False
        new = range(s.horizon, t.horizon)
        return all(f[n] in t[n] for n in new for f in b.side)
    if kind in ("sacks", "laver"):
        return a.nodes <= b.nodes
    if kind == "product":
        return leq("sacks", a.sacks_part, b.sacks_part) and leq(
            "laver", a.laver_part, b.laver_part
        )
    raise KindMismatch(f"unknown poset kind {kind!r}")


# ---------------------------------------------------------------------------
# Fusion machinery


def splitting_nodes(tree: FiniteTree, n: int) -> list[Node]:
    """Splitting nodes with exactly n splitting proper predecessors."""
    if tree.tree_kind != "sacks":
        raise KindMismatch("splitting nodes are defined for sacks trees")
    violations = validate(tree)
    if violations:
        raise InvalidCondition(violations)
    splits = {node for node in tree.nodes if len(tree.children(node)) >= 2}
    out = []
    for node in splits:
        predecessors = sum(
            1 for i in range(len(node)) if node[:i] in splits
        )
        if predecessors == n:
            out.append(node)
    return sorted(out)


def canonical_enum(tree: FiniteTree) -> list[Node]:
    """Nodes strictly above the stem in length-then-lexicographic order."""
    if tree.tree_kind != "laver":
        raise KindMismatch("the canonical enumeration is defined for laver trees")
    violations = validate(tree)
    if violations:
        raise InvalidCondition(violations)
    stem = tree.stem
    above = [
        node
        for node in tree.nodes
        if len(node) > len(stem) and node[: len(stem)] == stem
    ]
    return sorted(above, key=lambda node: (len(node), node))


def fusion_leq(kind: str, a: Condition, b: Condition, n: int) -> bool:
    """The n-th fusion order: plain strengthening plus preservation of the
    first n + 1 splitting levels (sacks) or canonical nodes (laver).

    Levels accumulate, so the orders nest: fusion at n + 1 implies fusion
    at n implies the plain order.
    """
    if n < 0:
        raise ValueError("fusion index must be a natural number")
    if kind not in FUSION_KINDS:
        raise KindMismatch(f"fusion orders exist for {FUSION_KINDS}, got {kind!r}")
    _require(kind, a, b)
    if kind == "sacks":
        if not a.nodes <= b.nodes:
            return False
        for i in range(n + 1):
            mine = set(splitting_nodes(a, i))
            theirs = set(splitting_nodes(b, i))
            if not mine <= theirs:
                return False
        return True
    if kind == "laver":
        if not a.nodes <= b.nodes:
            return False
        return canonical_enum(a)[: n + 1] == canonical_enum(b)[: n + 1]
    return fusion_leq("sacks", a.sacks_part, b.sacks_part, n) and fusion_leq(
        "laver", a.laver_part, b.laver_part, n
    )


# ---------------------------------------------------------------------------
# JSON codec (tagged union)


def condition_to_obj(cond: Condition):
    kind = _kind_of(cond)
    if isinstance(cond, CohenCond):
        return {"kind": kind, "stem": cond.stem.to_obj()}
    if isinstance(cond, HechlerCond):
        return {"kind": kind, "stem": cond.stem.to_obj(), "side": cond.side.to_obj()}
    if isinstance(cond, ECond):
        return {"kind": kind, "stem": cond.stem.to_obj(), "side": cond.side.to_obj()}
    if isinstance(cond, LocCond):
        return {
            "kind": kind,
            "prefix": [sorted(c) for c in cond.prefix.cells],
            "side": cond.side.to_obj(),
        }
    if isinstance(cond, FiniteTree):
        obj = {"kind": kind, "nodes": [list(node) for node in sorted(cond.nodes)]}
        if cond.branching_budget is not None:
            obj["branching_budget"] = cond.branching_budget
        if cond.splitting_budget is not None:
            obj["splitting_budget"] = cond.splitting_budget
        return obj
    if isinstance(cond, ProductCond):
        return {
            "kind": kind,
            "sacks": condition_to_obj(cond.sacks_part),
            "laver": condition_to_obj(cond.laver_part),
        }
    raise KindMismatch(f"not a condition: {type(cond).__name__}")


def condition_from_obj(obj) -> Condition:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError('condition JSON must be a tagged object {"kind": ...}')
    kind = obj["kind"]
    if kind == "cohen":
        return CohenCond(FinFunc.from_obj(obj["stem"]))
    if kind == "hechler":
        return HechlerCond(FinFunc.from_obj(obj["stem"]), FinFunc.from_obj(obj["side"]))
    if kind == "e":
        return ECond(FinFunc.from_obj(obj["stem"]), Family.from_obj(obj["side"]))
    if kind == "loc":
        cells = tuple(frozenset(c) for c in obj["prefix"])
        return LocCond(Slalom.identity_width(cells), Family.from_obj(obj["side"]))
    if kind in ("sacks", "laver"):
        nodes = frozenset(tuple(node) for node in obj["nodes"])
        return FiniteTree(
            kind,
            nodes,
            branching_budget=obj.get("branching_budget"),
            splitting_budget=obj.get("splitting_budget"),
        )
    if kind == "product":
        return ProductCond(
            condition_from_obj(obj["sacks"]), condition_from_obj(obj["laver"])
        )
    raise ValueError(f"unknown condition kind {kind!r}")
