"""Constructive witnesses: dominators, weavers, avoiders, and encoders.

Conventions used throughout (stated once): max of the empty set is 0 and
the empty sum is 0, so every construction is total.  Block slaloms with
fewer than h(n) members at a block are padded with constantly-0 partial
functions before weaving.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import Family, FinFunc, Slalom, WidthProfile, least_threshold
from .errors import (
    EmptyFamily,
    HorizonTooShort,
    NoAdmissibleString,
    ShapeMismatch,
    ZeroWidth,
)


def _max0(values) -> int:
    return max(values, default=0)


# ---------------------------------------------------------------------------
# Pointwise witnesses from a slalom or a family


def slalom_dominator(sigma: Slalom) -> FinFunc:
    """z(n) = max(sigma(n)) + 1; dominates anything the slalom captures."""
    return FinFunc(tuple(_max0(cell) + 1 for cell in sigma.cells))


def sum_evader_bound(sigma: Slalom) -> FinFunc:
    """z(n) = 1 + sum(sigma(n)); any f with f(n) >= z(n) has f(n) outside sigma(n)."""
    return FinFunc(tuple(1 + sum(cell) for cell in sigma.cells))


def family_dominator(family: Family) -> FinFunc:
    """d(n) = 1 + max over members; capture threshold 0 for every member."""
    return FinFunc(
        tuple(
            1 + _max0(f[n] for f in family)
            for n in range(family.horizon)
        )
    )


def least_avoider(family: Family) -> FinFunc:
    """g(n) = least value outside {f(n) : f in family}.

    Differs from every member at every position while staying bounded by
    the family size, the bounded eventually-different witness.
    """
    out = []
    for n in range(family.horizon):
        taken = {f[n] for f in family}
        v = 0
        while v in taken:
            v += 1
        out.append(v)
    return FinFunc(tuple(out))


def round_robin_ioe(family: Family) -> FinFunc:
    """g(n) = f_{n mod |F|}(n); matches each member at >= floor(N/|F|) positions."""
    if len(family) == 0:
        raise EmptyFamily("round robin needs at least one member")
    members = family.functions
    return FinFunc(
        tuple(members[n % len(members)][n] for n in range(family.horizon))
    )


def singleton_slalom(g: FinFunc) -> Slalom:
    """The width-1 slalom with cells {g(n)}."""
    return Slalom(
        tuple(frozenset({v}) for v in g.values),
        WidthProfile(tuple(1 for _ in g.values)),
    )


def family_slalom(family: Family) -> tuple[Slalom, tuple[int, ...]]:
    """Identity-width slalom capturing member i from position i + 1.

    cells(n) = {f_i(n) : i < min(n, |F|)}; returns the slalom together
    with each member's actual least capture threshold.
    """
    cells = tuple(
        frozenset(family.functions[i][n] for i in range(min(n, len(family))))
        for n in range(family.horizon)
    )
    sigma = Slalom(cells, WidthProfile.identity(family.horizon))
    thresholds = tuple(
        least_threshold("in", f, sigma).threshold for f in family
    )
    return sigma, thresholds


# ---------------------------------------------------------------------------
# Block machinery


@dataclass(frozen=True)
class BlockPartition:
    """Disjoint nonempty position cells J_{n,k}, k in {1..h(n)}, covering
    [0, covered_horizon)."""

    cells: tuple[tuple[frozenset[int], ...], ...]
    width: WidthProfile
    covered_horizon: int

    @property
    def block_count(self) -> int:
        return len(self.cells)

    def block(self, n: int) -> frozenset[int]:
        """J_n, the union of the block's cells."""
        return frozenset().union(*self.cells[n])

    def violations(self) -> list[str]:
        out = []
        seen: set[int] = set()
        for n, block in enumerate(self.cells):
            if len(block) != self.width[n]:
                out.append(f"block {n} has {len(block)} cells, width is {self.width[n]}")
            for cell in block:
                if not cell:
                    out.append(f"empty cell in block {n}")
                if cell & seen:
                    out.append(f"cells overlap at block {n}")
                seen |= cell
        if seen != set(range(self.covered_horizon)):
            out.append("cells do not cover [0, covered_horizon)")
        return out

    def to_obj(self):
        return {
            "width": list(self.width.widths[: self.block_count]),
            "cells": [[sorted(c) for c in block] for block in self.cells],
        }

    @classmethod
    def from_obj(cls, obj) -> "BlockPartition":
        if not isinstance(obj, dict) or "width" not in obj or "cells" not in obj:
            raise ValueError('BlockPartition JSON must be {"width": [...], "cells": [[[...]...]...]}')
        cells = tuple(
            tuple(frozenset(c) for c in block) for block in obj["cells"]
        )
        width = WidthProfile(tuple(obj["width"]))
        covered = sum(len(c) for block in cells for c in block)
        return cls(cells, width, covered)


@dataclass(frozen=True)
class BlockFunc:
    """Per-block restrictions of a function: entry n maps J_n to values."""

    entries: tuple[dict[int, int], ...]

    def __getitem__(self, n: int) -> dict[int, int]:
        return self.entries[n]


@dataclass(frozen=True)
class BlockSlalom:
    """Per block n, at most h(n) partial functions with domain J_n."""

    entries: tuple[tuple[dict[int, int], ...], ...]
    width: WidthProfile

    def __getitem__(self, n: int) -> tuple[dict[int, int], ...]:
        return self.entries[n]


def block_partition(width: WidthProfile, block_count: int, cell_size: int = 1) -> BlockPartition:
    """Assign cells consecutively: block n gets h(n) cells of cell_size
    positions each.  Singleton cells (the default) are the canonical choice;
    cell_size > 1 gives interval cells."""
    if block_count > width.horizon:
        raise ValueError(
            f"width profile covers {width.horizon} blocks, {block_count} requested"
        )
    if cell_size < 1:
        raise ValueError("cell_size must be >= 1")
    for n in range(block_count):
        if width[n] == 0:
            raise ZeroWidth(f"h({n}) = 0; blocks need width >= 1")
    cells = []
    pos = 0
    for n in range(block_count):
        block = []
        for _ in range(width[n]):
            block.append(frozenset(range(pos, pos + cell_size)))
            pos += cell_size
        cells.append(tuple(block))
    return BlockPartition(tuple(cells), width, pos)


def block_encode(f: FinFunc, partition: BlockPartition) -> BlockFunc:
    """entry(n) = f restricted to J_n."""
    if f.horizon < partition.covered_horizon:
        raise HorizonTooShort(
            f"horizon {f.horizon} < covered horizon {partition.covered_horizon}"
        )
    return BlockFunc(
        tuple(
            {x: f[x] for x in sorted(partition.block(n))}
            for n in range(partition.block_count)
        )
    )


def _padded_entry(entry, block_positions, h_n):
    """Pad a block entry up to h_n members with constantly-0 partial functions."""
    zero = {x: 0 for x in block_positions}
    padded = list(entry) + [dict(zero) for _ in range(h_n - len(entry))]
    return padded


def weave(block_slalom: BlockSlalom, partition: BlockPartition) -> FinFunc:
    """Glue g(x) = w^n_k(x) for x in J_{n,k} into a single function.

    The k-th member of each (padded) block entry supplies the values on
    the block's k-th cell; disjoint covering makes g total on
    [0, covered_horizon).
    """
    if block_slalom.width.widths[: partition.block_count] != partition.width.widths[: partition.block_count]:
        raise ShapeMismatch("block slalom and partition disagree on widths")
    if len(block_slalom.entries) != partition.block_count:
        raise ShapeMismatch(
            f"{len(block_slalom.entries)} entries for {partition.block_count} blocks"
        )
    out = [0] * partition.covered_horizon
    for n in range(partition.block_count):
        entry = block_slalom[n]
        h_n = partition.width[n]
        if len(entry) > h_n:
            raise ShapeMismatch(f"block {n} has {len(entry)} members, width is {h_n}")
        block_positions = sorted(partition.block(n))
        for w in entry:
            if set(w) != set(block_positions):
                raise ShapeMismatch(f"block {n} member domain is not J_{n}")
        padded = _padded_entry(entry, block_positions, h_n)
        for k, cell in enumerate(partition.cells[n]):
            w = padded[k]
            for x in cell:
                out[x] = w[x]
    return FinFunc(tuple(out))


def columns_slalom(sigma: Slalom, width: WidthProfile, partition: BlockPartition) -> BlockSlalom:
    """w^n_k(l) = k-th greatest member of sigma(l) (1-indexed), 0 if absent."""
    if sigma.horizon < partition.covered_horizon:
        raise HorizonTooShort(
            f"slalom horizon {sigma.horizon} < covered horizon {partition.covered_horizon}"
        )
    if width.widths[: partition.block_count] != partition.width.widths[: partition.block_count]:
        raise ShapeMismatch("width profile does not match the partition")
    entries = []
    for n in range(partition.block_count):
        block_positions = sorted(partition.block(n))
        members = []
        for k in range(1, width[n] + 1):
            w = {}
            for l in block_positions:
                ranked = sorted(sigma[l], reverse=True)
                w[l] = ranked[k - 1] if len(ranked) >= k else 0
            members.append(w)
        entries.append(tuple(members))
    return BlockSlalom(tuple(entries), width)


def avoider_witness(sigma: Slalom, width: WidthProfile, partition: BlockPartition) -> FinFunc:
    """Weave the rank columns: for x in J_{n,k}, g(x) is the k-th greatest
    member of sigma(x) (0 if sigma(x) has fewer than k members)."""
    return weave(columns_slalom(sigma, width, partition), partition)


# ---------------------------------------------------------------------------
# Binary-string enumeration and the evasion construction


class StringEnumeration:
    """Length-then-lexicographic enumeration of finite binary strings.

    Strings of length n occupy the index interval [2^n - 1, 2^(n+1) - 1);
    index_of and string_of are mutually inverse.
    """

    @staticmethod
    def index_of(bits: str) -> int:
        n = len(bits)
        offset = int(bits, 2) if n else 0
        return (1 << n) - 1 + offset

    @staticmethod
    def string_of(index: int) -> str:
        if index < 0:
            raise ValueError("index must be a natural number")
        n = (index + 1).bit_length() - 1
        offset = index - ((1 << n) - 1)
        return format(offset, "b").zfill(n) if n else ""

    @staticmethod
    def length_range(n: int) -> range:
        """Indices of the length-n strings."""
        return range((1 << n) - 1, (1 << (n + 1)) - 1)


@dataclass(frozen=True)
class BitstringFunc:
    """A finite-horizon function whose values are binary strings."""

    values: tuple[str, ...]

    def __post_init__(self):
        for v in self.values:
            if not isinstance(v, str) or any(ch not in "01" for ch in v):
                raise ValueError(f"bitstring values must be over {{0,1}}, got {v!r}")

    @property
    def horizon(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> str:
        return self.values[n]

    def to_obj(self):
        return [{"bits": v} for v in self.values]

    @classmethod
    def from_obj(cls, obj) -> "BitstringFunc":
        if not isinstance(obj, list):
            raise ValueError('bitstring JSON must be an array of {"bits": "..."}')
        return cls(tuple(entry["bits"] for entry in obj))


def string_encode(g: BitstringFunc, enum: StringEnumeration | None = None) -> FinFunc:
    """Replace each string by its enumeration index."""
    enum = enum or StringEnumeration()
    return FinFunc(tuple(enum.index_of(v) for v in g.values))


def evasion_target(sigma: Slalom, enum: StringEnumeration | None = None) -> BitstringFunc:
    """At each n, the first length-n string whose index escapes sigma(n).

    Encoding the result back through the enumeration lands outside the
    slalom at every position, by choice of index.
    """
    enum = enum or StringEnumeration()
    values = []
    for n in range(sigma.horizon):
        chosen = None
        for k in enum.length_range(n):
            if k not in sigma[n]:
                chosen = k
                break
        if chosen is None:
            raise NoAdmissibleString(
                f"sigma({n}) excludes every length-{n} string index"
            )
        values.append(enum.string_of(chosen))
    return BitstringFunc(tuple(values))
