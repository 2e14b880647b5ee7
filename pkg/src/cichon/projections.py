"""Projections from localization conditions onto the Hechler and
eventually-different posets, with constructive lifts.

Both maps send the top condition to the top condition and admit explicit
lift algorithms: given a strengthening of the projected condition
(subject to the preconditions spelled out on each lift), a localization
condition is produced whose projection recovers the given strengthening
on its whole domain.  All free choices are resolved by deterministic
least-value padding rules, so equal inputs give equal outputs.
"""

from __future__ import annotations

from .combinatorics import Family, FinFunc, Slalom
from .errors import (
    FamilyTooLarge,
    GrowthTooSmall,
    HorizonMismatch,
    InvalidCondition,
    NotBelowProjection,
    RankTooLarge,
    SideTooSmall,
)
from .posets import ECond, HechlerCond, LocCond, leq, validate


def _validated(cond):
    violations = validate(cond)
    if violations:
        raise InvalidCondition(violations)
    return cond


def family_sum(family: Family) -> FinFunc:
    """Pointwise sum of the members (the empty sum is 0)."""
    return FinFunc(
        tuple(sum(f[n] for f in family) for n in range(family.horizon))
    )


def _kth_excluded(excluded: frozenset[int] | set[int], k: int) -> int:
    """The k-th natural number (0-indexed) outside the excluded set."""
    v = 0
    while True:
        if v not in excluded:
            if k == 0:
                return v
            k -= 1
        v += 1


def _rank_outside(excluded: set[int], m: int) -> int | None:
    """Rank of m among the naturals outside the set; None if m is in it."""
    if m in excluded:
        return None
    return m - sum(1 for x in excluded if x < m)


# ---------------------------------------------------------------------------
# Localization -> Hechler


def proj_loc_to_d(c: LocCond) -> HechlerCond:
    """(s, F) maps to (n -> max s(n), pointwise sum of F)."""
    _validated(c)
    stem = FinFunc(tuple(max(cell, default=0) for cell in c.prefix.cells))
    return HechlerCond(stem, family_sum(c.side))


def lift_loc_to_d(c: LocCond, q: HechlerCond) -> LocCond:
    """Lift a Hechler strengthening of the projection back to localization.

    Preconditions: q strengthens proj_loc_to_d(c); |F| < |s|; q's side
    strictly exceeds the family sum everywhere; and every new stem value
    obeys the strict growth bound q.stem(n) > n + sum(F)(n), which
    guarantees room for the padding below.

    The result is (t, F + {H}) where H = q.side - sum(F) and, at each new
    position, t(n) holds the family values and q.stem(n), padded with the
    least unused values below q.stem(n) up to exactly n members.  Then
    the result strengthens c and projects back to q exactly.
    """
    _validated(c)
    _validated(q)
    if c.side.horizon != q.side.horizon:
        raise HorizonMismatch(
            f"working horizons differ: {c.side.horizon} vs {q.side.horizon}"
        )
    s, fam = c.prefix, c.side
    if len(fam) >= s.horizon:
        raise FamilyTooLarge(f"|F| = {len(fam)} must be < |s| = {s.horizon}")
    projected = proj_loc_to_d(c)
    if not leq("hechler", q, projected):
        raise NotBelowProjection("target does not strengthen the projection")
    sums = family_sum(fam)
    for n in range(fam.horizon):
        if q.side[n] <= sums[n]:
            raise SideTooSmall(f"side({n}) = {q.side[n]} <= family sum {sums[n]}")
    new_positions = range(s.horizon, q.stem.horizon)
    for n in new_positions:
        if q.stem[n] <= n + sums[n]:
            raise GrowthTooSmall(
                f"stem({n}) = {q.stem[n]} <= {n} + family sum {sums[n]}"
            )
    cells = list(s.cells)
    for n in new_positions:
        cell = {f[n] for f in fam} | {q.stem[n]}
        v = 0
        while len(cell) < n:
            if v not in cell and v < q.stem[n]:
                cell.add(v)
            v += 1
        cells.append(frozenset(cell))
    h = FinFunc(tuple(q.side[n] - sums[n] for n in range(fam.horizon)))
    side = Family(fam.functions + (h,), fam.horizon)
    return LocCond(Slalom.identity_width(cells), side)


# ---------------------------------------------------------------------------
# Localization -> eventually different


def proj_loc_to_e(c: LocCond) -> ECond:
    """Stem value at n >= 1: the k-th natural outside s(n), where
    k = sum(s(n)) mod n; position 0 is pinned to 0 (mod 0 is undefined).

    The side family passes through unchanged.
    """
    _validated(c)
    s = c.prefix
    stem = []
    for n in range(s.horizon):
        if n == 0:
            stem.append(0)
        else:
            k = sum(s[n]) % n
            stem.append(_kth_excluded(s[n], k))
    return ECond(FinFunc(tuple(stem)), c.side)


def lift_loc_to_e(c: LocCond, q: ECond) -> LocCond:
    """Lift an eventually-different strengthening back to localization.

    Preconditions: q strengthens proj_loc_to_e(c); the side family stays
    smaller than every new position; and at each new position n the stem
    value's rank among naturals avoiding the side values is below n (the
    mod-n residue cannot encode a larger rank).

    At a new position n the cell collects the side values and is padded
    up to n members with values strictly above max(stem value, side
    values): first the least value in the residue class fixing the sum
    congruence, then least multiples of n (which leave the sum class
    untouched).  Keeping all padding above the stem value preserves its
    avoidance rank, so re-projection returns q's stem on its domain.
    """
    _validated(c)
    _validated(q)
    s = c.prefix
    if c.side.horizon != q.side.horizon:
        raise HorizonMismatch(
            f"working horizons differ: {c.side.horizon} vs {q.side.horizon}"
        )
    projected = proj_loc_to_e(c)
    if not leq("e", q, projected):
        raise NotBelowProjection("target does not strengthen the projection")
    new_positions = range(s.horizon, q.stem.horizon)
    for n in new_positions:
        if len(q.side) >= n:
            raise FamilyTooLarge(
                f"|side| = {len(q.side)} must be < new position {n}"
            )
    if not new_positions and len(q.side) > s.horizon:
        raise FamilyTooLarge(f"|side| = {len(q.side)} must be <= |s| = {s.horizon}")
    cells = list(s.cells)
    for n in new_positions:
        m = q.stem[n]
        side_values = {f[n] for f in q.side}
        rank = _rank_outside(side_values, m)
        if rank is None or rank >= n:
            raise RankTooLarge(
                f"stem({n}) = {m} has avoidance rank {rank} (needs rank < {n})"
            )
        bound = max(side_values | {m})
        j = sum(side_values) % n
        residue = (rank - j) % n
        first = bound + 1
        while first % n != residue:
            first += 1
        cell = set(side_values) | {first}
        multiple = ((bound + n) // n) * n
        while len(cell) < n:
            if multiple != first:
                cell.add(multiple)
            multiple += n
        cells.append(frozenset(cell))
    return LocCond(Slalom.identity_width(cells), q.side)


def reduce_e(q: ECond, from_position: int) -> ECond:
    """Repair an eventually-different condition for lifting.

    From the given position on, any stem value whose avoidance rank is
    undefined or too large for its position is replaced by the least
    value outside the side values there (rank 0); liftable values are
    kept.  The side family is untouched.
    """
    _validated(q)
    stem = list(q.stem.values)
    for n in range(max(from_position, 0), len(stem)):
        side_values = {f[n] for f in q.side}
        least = _kth_excluded(side_values, 0)
        rank = _rank_outside(side_values, stem[n])
        ok = rank is not None and (rank < n if n >= 1 else stem[n] == least)
        if not ok:
            stem[n] = least
    return ECond(FinFunc(tuple(stem)), q.side)


def parity_map(d: FinFunc) -> FinFunc:
    """c(n) = d(n) mod 2, the induced binary sequence."""
    return FinFunc(tuple(v % 2 for v in d.values))
