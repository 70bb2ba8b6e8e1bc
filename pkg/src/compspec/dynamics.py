"""Boundary orbit analysis on the contact set.

Each contact point either iterates out of the contact set within n steps
(n = number of contact points), or is eventually periodic.  The contact
set therefore splits into iterate-out points, disjoint cycles, and
lead-in sets, one per cycle.  Cycle multipliers come from the chain rule
over the cycle, never from composing the symbol with itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbiguousMatchError, InvalidDataError
from .symbol import (Symbol, boundary_derivative, boundary_image,
                     contact_set)

__all__ = ["Cycle", "OrbitPartition", "boundary_step", "partition",
           "cycle_multiplier", "primitive_lead_ins"]


@dataclass(frozen=True)
class Cycle:
    points: tuple       # ordered: phi maps each point to the next
    multiplier: float   # |(phi^[len])'| at any cycle point

    @property
    def length(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class OrbitPartition:
    iterate_out: tuple
    cycles: tuple          # of Cycle
    lead_ins: dict         # cycle index -> tuple of points

    @property
    def all_points(self):
        pts = list(self.iterate_out)
        for c in self.cycles:
            pts.extend(c.points)
        for v in self.lead_ins.values():
            pts.extend(v)
        return pts


def _match(points, w, match_tol):
    hits = [i for i, p in enumerate(points) if abs(p - w) <= match_tol]
    if len(hits) > 1:
        raise AmbiguousMatchError(
            f"boundary image {w} matches several contact points; "
            "decrease the matching tolerance or separate the data")
    return hits[0] if hits else None


def boundary_step(s: Symbol, zeta: complex):
    """phi(zeta) if it lands back in the contact set, else None ("exits")."""
    points = contact_set(s)
    if _match(points, zeta, s.tol.match_tol) is None:
        raise InvalidDataError(f"{zeta} is not a contact point")
    w = boundary_image(s, zeta)
    i = _match(points, w, s.tol.match_tol)
    return None if i is None else points[i]


def cycle_multiplier(s: Symbol, points) -> float:
    """Chain-rule product of |phi'| over the cycle points."""
    out = 1.0
    for p in points:
        out *= abs(boundary_derivative(s, p))
    return out


def partition(s: Symbol) -> OrbitPartition:
    points = contact_set(s)
    n = len(points)
    if n == 0:
        return OrbitPartition((), (), {})
    match_tol = s.tol.match_tol
    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) < 10 * match_tol:
                raise InvalidDataError(
                    "contact points closer than 10x the matching tolerance")
    succ = []
    for p in points:
        w = boundary_image(s, p)
        succ.append(_match(points, w, match_tol))

    # walk each point at most n+1 steps: exit -> iterate-out, else find
    # the first repeat, which identifies the cycle the point reaches
    reaches_cycle: list[tuple | None] = [None] * n
    iterate_out = []
    cycles: list[tuple] = []

    def cycle_of(start: int) -> tuple | None:
        path = [start]
        seen = {start: 0}
        cur = start
        for _ in range(n + 1):
            nxt = succ[cur]
            if nxt is None:
                return None
            if nxt in seen:
                return tuple(path[seen[nxt]:])
            seen[nxt] = len(path)
            path.append(nxt)
            cur = nxt
        raise AssertionError("orbit walk exceeded the pigeonhole bound")

    for i in range(n):
        cyc = cycle_of(i)
        if cyc is None:
            iterate_out.append(i)
        else:
            reaches_cycle[i] = cyc
            canon = tuple(sorted(cyc))
            if canon not in [tuple(sorted(c)) for c in cycles]:
                cycles.append(cyc)

    cycle_objs = []
    lead_ins: dict[int, tuple] = {}
    for k, cyc in enumerate(cycles):
        pts = tuple(points[i] for i in cyc)
        mult = cycle_multiplier(s, pts)
        if len(pts) > 1 and mult <= 1.0 + s.tol.eps:
            raise InvalidDataError(
                f"cycle of length {len(pts)} with multiplier {mult} <= 1; "
                "a second Denjoy-Wolff point would follow")
        cycle_objs.append(Cycle(pts, mult))
        members = set(cyc)
        leads = tuple(points[i] for i in range(n)
                      if reaches_cycle[i] is not None
                      and tuple(sorted(reaches_cycle[i])) == tuple(sorted(cyc))
                      and i not in members)
        lead_ins[k] = leads
    return OrbitPartition(tuple(points[i] for i in iterate_out),
                          tuple(cycle_objs), lead_ins)


def primitive_lead_ins(s: Symbol, part: OrbitPartition, cycle_index: int):
    """Lead-in points of a cycle with no lead-in preimage (recomputed on
    demand; used transiently by the elimination argument)."""
    leads = part.lead_ins[cycle_index]
    out = []
    for p in leads:
        has_pre = any(abs(boundary_image(s, q) - p) <= s.tol.match_tol
                      for q in leads if q != p)
        if not has_pre:
            out.append(p)
    return tuple(out)
