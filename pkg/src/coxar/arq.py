"""The periodic Auslander-Reiten quiver and the canonical root bijection.

Vertices are pairs (i, n) with i a Dynkin vertex and n a residue mod 2h of
matching parity; each Dynkin edge {i, j} contributes arrows (i, n) -> (j, n+1)
on every level. The twist tau shifts n by 2 and corresponds to the Coxeter
element under the bijection built here, which identifies the root system
with the vertex set once an anchor is fixed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from . import coxeter as cox
from .rootsys import (
    DynkinType,
    SimpleSystem,
    diagram_involution,
    inverse_perm,
    involution_from_longest,
    negated_system,
)

Vertex = tuple[int, int]


@dataclass(frozen=True)
class PeriodicQuiver:
    """The translation quiver on I x Z_2h cut out by the parity function."""

    dynkin: DynkinType
    h: int
    parity: tuple[int, ...]
    vertices: tuple[Vertex, ...]

    @property
    def period(self) -> int:
        return 2 * self.h

    def contains(self, v: Vertex) -> bool:
        i, n = v
        return 1 <= i <= self.dynkin.rank and n % 2 == self.parity[i - 1] and 0 <= n < self.period

    def normalize(self, i: int, n: int) -> Vertex:
        v = (i, n % self.period)
        if not self.contains(v):
            raise ValueError(f"({i}, {n}) violates the parity constraint")
        return v

    def tau(self, v: Vertex, steps: int = 1) -> Vertex:
        return (v[0], (v[1] + 2 * steps) % self.period)

    def targets(self, v: Vertex) -> tuple[Vertex, ...]:
        i, n = v
        return tuple((j, (n + 1) % self.period) for j in self.dynkin.neighbors(i))

    def sources_of(self, v: Vertex) -> tuple[Vertex, ...]:
        i, n = v
        return tuple((j, (n - 1) % self.period) for j in self.dynkin.neighbors(i))

    def edges(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return tuple((v, w) for v in self.vertices for w in self.targets(v))

    def line(self, i: int) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v[0] == i)

    def canonical_heights(self) -> tuple[int, ...]:
        """The reference height function h(i) = d(1, i) mod 2h."""
        return tuple(d % self.period for d in self.dynkin.distance_from_one())


def build_periodic_quiver(dynkin: DynkinType) -> PeriodicQuiver:
    h = dynkin.coxeter_number
    parity = dynkin.parity()
    verts = tuple((i, n) for n in range(2 * h) for i in range(1, dynkin.rank + 1)
                  if n % 2 == parity[i - 1])
    verts = tuple(sorted(verts))
    pq = PeriodicQuiver(dynkin, h, parity, verts)
    if len(verts) != dynkin.rank * h:
        raise AssertionError("periodic quiver vertex count is not rank * h")
    return pq


def is_height_function(pq: PeriodicQuiver, values: tuple[int, ...]) -> bool:
    """Valid when parities match and adjacent values differ by exactly 1."""
    if len(values) != pq.dynkin.rank:
        return False
    if any(values[i - 1] % 2 != pq.parity[i - 1] for i in range(1, pq.dynkin.rank + 1)):
        return False
    for i, j in pq.dynkin.edges():
        d = (values[j - 1] - values[i - 1]) % pq.period
        if d not in (1, pq.period - 1):
            return False
    return True


def orientation_from_heights(dynkin: DynkinType, values: tuple[int, ...], period: int) -> cox.Orientation:
    arrows = set()
    for i, j in dynkin.edges():
        if (values[j - 1] - values[i - 1]) % period == 1:
            arrows.add((i, j))
        else:
            arrows.add((j, i))
    return cox.Orientation(dynkin, frozenset(arrows))


def lift_heights(dynkin: DynkinType, values: tuple[int, ...], period: int) -> tuple[int, ...]:
    """Integer lift of a height function, anchored at the value at vertex 1.

    Walking the tree and choosing the +-1 step that matches the residues
    gives the unique lift with the anchored value; adjacent entries differ
    by exactly one.
    """
    lifted = {1: values[0]}
    frontier = [1]
    while frontier:
        new = []
        for v in frontier:
            for u in dynkin.neighbors(v):
                if u not in lifted:
                    step = 1 if (values[u - 1] - values[v - 1]) % period == 1 else -1
                    lifted[u] = lifted[v] + step
                    new.append(u)
        frontier = new
    return tuple(lifted[i] for i in range(1, dynkin.rank + 1))


# ---------------------------------------------------------------------------
# the root/vertex bijection

@dataclass(frozen=True)
class RootBijection:
    """Bijection between root indices and periodic-quiver vertices."""

    forward: tuple[Vertex, ...]
    inverse_map: dict[Vertex, int]
    anchor_root: int
    anchor_vertex: Vertex

    def image(self, k: int) -> Vertex:
        return self.forward[k]

    def preimage(self, v: Vertex) -> int:
        return self.inverse_map[v]


def periodic_quiver(ctx: cox.CoxeterContext) -> PeriodicQuiver:
    return ctx.memo("pq", lambda: build_periodic_quiver(ctx.rs.dynkin))


def root_bijection(ctx: cox.CoxeterContext, pi: SimpleSystem) -> RootBijection:
    """The unique bijection sending C to tau and pi's orbit representatives
    to one vertex per line, with consecutive levels along the arrows of pi's
    orientation.

    The anchor places the representative at vertex 1 of the canonical
    compatible system on level p(1); every other choice differs by a power
    of tau. Bijections built from different compatible systems coincide,
    which the test suite checks exhaustively on small types.
    """

    def build():
        pq = periodic_quiver(ctx)
        rs = ctx.rs
        omega = cox.orientation_of(ctx, pi)
        reps = cox.orbit_representatives(ctx, pi)

        anchor_root = ctx.memo(
            "anchor",
            lambda: cox.orbit_representatives(ctx, cox.canonical_system(ctx))[0])
        anchor_vertex = (1, pq.parity[0])

        # position of this system's first representative inside the C-orbit
        k = 0
        cur = anchor_root
        while cur != reps[0]:
            cur = ctx.coxeter[cur]
            k += 1
            if k > ctx.h:
                raise AssertionError("representative not in the anchor C-orbit")
        levels = {1: (anchor_vertex[1] + 2 * k) % pq.period}

        frontier = [1]
        while frontier:
            new = []
            for v in frontier:
                for u in pq.dynkin.neighbors(v):
                    if u not in levels:
                        step = 1 if (v, u) in omega.arrows else -1
                        levels[u] = (levels[v] + step) % pq.period
                        new.append(u)
            frontier = new

        forward: list[Vertex | None] = [None] * len(rs.roots)
        for i in range(1, rs.dynkin.rank + 1):
            root = reps[i - 1]
            for t in range(ctx.h):
                forward[root] = (i, (levels[i] + 2 * t) % pq.period)
                root = ctx.coxeter[root]
        if None in forward or len(set(forward)) != len(forward):
            raise AssertionError("root/vertex assignment is not a bijection")
        fwd = tuple(forward)
        return RootBijection(fwd, {v: k for k, v in enumerate(fwd)},
                             anchor_root, anchor_vertex)

    return ctx.memo(("phi", pi.witness), build)


def height_function_of(ctx: cox.CoxeterContext, pi: SimpleSystem) -> tuple[int, ...]:
    """Levels of pi's orbit representatives; always a height function."""
    phi = root_bijection(ctx, pi)
    reps = cox.orbit_representatives(ctx, pi)
    values = tuple(phi.image(reps[i - 1])[1] for i in range(1, ctx.rs.dynkin.rank + 1))
    if not is_height_function(periodic_quiver(ctx), values):
        raise AssertionError("representative levels are not a height function")
    return values


def system_from_height(ctx: cox.CoxeterContext, values: tuple[int, ...]) -> SimpleSystem:
    """The unique compatible simple system whose representatives sit at the
    given heights; total by the classification of compatible systems."""
    pq = periodic_quiver(ctx)
    if not is_height_function(pq, tuple(values)):
        raise ValueError("not a height function")

    def build():
        table = {}
        for pi in cox.enumerate_compatible(ctx):
            table[height_function_of(ctx, pi)] = pi
        if len(table) != len(cox.enumerate_compatible(ctx)):
            raise AssertionError("two compatible systems share a height function")
        return table

    return ctx.memo("height_table", build)[tuple(values)]


# ---------------------------------------------------------------------------
# Nakayama involution

def minus_w0_involution(ctx: cox.CoxeterContext, pi: SimpleSystem) -> dict[int, int]:
    """The vertex involution with -alpha_i = w0(alpha at the partner).

    Cross-checked against the equivalent description through negated orbit
    representatives: -rep_i of pi equals rep at the partner for -pi. A
    mismatch between the two computations is a hard error.
    """
    rs = ctx.rs
    invol = involution_from_longest(rs, pi)
    reps = cox.orbit_representatives(ctx, pi)
    neg_reps = cox.orbit_representatives(ctx, negated_system(rs, pi))
    for i in range(1, rs.dynkin.rank + 1):
        if rs.neg(reps[i - 1]) != neg_reps[invol[i] - 1]:
            raise AssertionError("the two involution definitions disagree")
    if invol != diagram_involution(rs.dynkin):
        raise AssertionError("involution differs from the diagram automorphism table")
    return invol


def nakayama_periodic(ctx: cox.CoxeterContext, v: Vertex) -> Vertex:
    """(i, n) -> (partner of i, n + h); an involution commuting with tau."""
    pq = periodic_quiver(ctx)
    invol = diagram_involution(ctx.rs.dynkin)
    return pq.normalize(invol[v[0]], v[1] + pq.h)


# ---------------------------------------------------------------------------
# the positive region and reduced words for the longest element

@dataclass(frozen=True)
class PositiveRegion:
    """Vertices between the slices of pi and -pi, with their integer lift.

    ``order`` lists the vertices sorted by (lifted level, vertex label),
    which is one linear extension of the path order. The lift is anchored at
    the height of vertex 1, so arrows inside the region always raise the
    lifted level by exactly one.
    """

    quiver: PeriodicQuiver
    vertices: frozenset[Vertex]
    order: tuple[Vertex, ...]
    lifted: dict[Vertex, int]
    heights: tuple[int, ...]
    negated_heights: tuple[int, ...]

    def internal_arrows(self) -> tuple[tuple[Vertex, Vertex], ...]:
        out = []
        for v in self.order:
            for w in self.quiver.targets(v):
                if w in self.vertices:
                    if self.lifted[w] != self.lifted[v] + 1:
                        raise AssertionError("region arrow skips a lifted level")
                    out.append((v, w))
        return tuple(out)


def positive_region(ctx: cox.CoxeterContext, pi: SimpleSystem) -> PositiveRegion:
    """The image of pi's positive roots: vertices from the slice of pi up to,
    excluding, the slice of -pi, walking each line forward in Z_2h."""
    pq = periodic_quiver(ctx)
    rs = ctx.rs
    heights = height_function_of(ctx, pi)
    neg_heights = height_function_of(ctx, negated_system(rs, pi))
    lifted_base = lift_heights(rs.dynkin, heights, pq.period)

    verts = []
    lifted = {}
    for i in range(1, rs.dynkin.rank + 1):
        n = heights[i - 1]
        depth = 0
        while n != neg_heights[i - 1]:
            v = (i, n)
            verts.append(v)
            lifted[v] = lifted_base[i - 1] + 2 * depth
            n = (n + 2) % pq.period
            depth += 1
            if depth > pq.h:
                raise AssertionError("region line longer than the period")
    if len(verts) != rs.npos:
        raise AssertionError("region size is not the number of positive roots")

    phi = root_bijection(ctx, pi)
    image = {phi.image(pi.witness[p]) for p in range(rs.npos)}
    if image != set(verts):
        raise AssertionError("region differs from the image of the positive roots")

    order = tuple(sorted(verts, key=lambda v: (lifted[v], v[0])))
    region = PositiveRegion(pq, frozenset(verts), order, lifted, heights, neg_heights)
    region.internal_arrows()  # validates the lift against every arrow
    return region


def longest_word(ctx: cox.CoxeterContext, pi: SimpleSystem) -> tuple[int, ...]:
    """Reduced word for the longest element of pi read off the region.

    Any linear extension of the path order works; this one sorts by
    (lifted level, vertex label) so the output is deterministic.
    """
    return tuple(v[0] for v in positive_region(ctx, pi).order)


def random_linear_extension(region: PositiveRegion, rng: random.Random) -> tuple[int, ...]:
    """A uniformly shuffled linear extension of the region's path order."""
    preds: dict[Vertex, set[Vertex]] = {v: set() for v in region.vertices}
    for v, w in region.internal_arrows():
        preds[w].add(v)
    remaining = set(region.vertices)
    out = []
    while remaining:
        ready = [v for v in remaining if not (preds[v] & remaining)]
        v = rng.choice(sorted(ready))
        out.append(v[0])
        remaining.discard(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# the mesh presentation of the root lattice

def mesh_relation_matrix(pq: PeriodicQuiver) -> list[list[int]]:
    """One row per vertex (i, n): the relation
    (i, n) - sum of (j, n+1) over neighbors j + (i, n+2)."""
    idx = {v: k for k, v in enumerate(pq.vertices)}
    rows = []
    for (i, n) in pq.vertices:
        row = [0] * len(pq.vertices)
        row[idx[(i, n)]] += 1
        row[idx[pq.tau((i, n))]] += 1
        for j in pq.dynkin.neighbors(i):
            row[idx[(j, (n + 1) % pq.period)]] -= 1
        rows.append(row)
    return rows


def reduce_to_slice(pq: PeriodicQuiver, href: tuple[int, ...],
                    combo: Mapping[Vertex, int]) -> tuple[int, ...]:
    """Rewrite a formal sum of vertices into the slice basis of ``href``.

    Vertices in the forward half of the period are knitted backward with
    (i, n+2) = sum(j, n+1) - (i, n); the rest forward. Coordinates come out
    in the basis ((i, href(i)))_i, ordered by vertex label.
    """
    if not is_height_function(pq, tuple(href)):
        raise ValueError("reference heights are not a height function")
    rank = pq.dynkin.rank
    lifted = lift_heights(pq.dynkin, href, pq.period)
    memo: dict[Vertex, tuple[int, ...]] = {}

    def unit(i: int) -> tuple[int, ...]:
        return tuple(int(t == i - 1) for t in range(rank))

    def add(a, b, sign=1):
        return tuple(x + sign * y for x, y in zip(a, b))

    def resolve(v: Vertex) -> tuple[int, ...]:
        if v in memo:
            return memo[v]
        i, n = v
        depth = ((n - href[i - 1]) % pq.period) // 2
        signed = depth if 2 * depth <= pq.h else depth - pq.h
        if signed == 0:
            out = unit(i)
        elif signed > 0:
            out = tuple([0] * rank)
            for j in pq.dynkin.neighbors(i):
                out = add(out, resolve((j, (n - 1) % pq.period)))
            out = add(out, resolve((i, (n - 2) % pq.period)), sign=-1)
        else:
            out = tuple([0] * rank)
            for j in pq.dynkin.neighbors(i):
                out = add(out, resolve((j, (n + 1) % pq.period)))
            out = add(out, resolve((i, (n + 2) % pq.period)), sign=-1)
        memo[v] = out
        return out

    total = tuple([0] * rank)
    for v, c in combo.items():
        if c:
            vv = pq.normalize(*v)
            total = tuple(x + c * y for x, y in zip(total, resolve(vv)))
    return total
