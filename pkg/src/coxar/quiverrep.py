"""Auslander-Reiten combinatorics of quiver representations.

The repetition quiver ZI is materialized on a finite window of translation
levels. Arrows follow the standard construction, oriented by distance from
vertex 1: for an edge {i, j} with j one step farther from vertex 1 there are
arrows (i, k) -> (j, k) and (j, k) -> (i, k+1). The AR quiver of an
orientation is the part of ZI between the projective slice and its Nakayama
shift; dimension vectors are knitted forward through the meshes from the
projectives, which realizes Gabriel's bijection with the positive roots
without ever building module categories.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arq
from . import coxeter as cox
from . import euler as euler_mod
from .arq import Vertex
from .rootsys import DynkinType, SimpleSystem, diagram_involution

ZVertex = tuple[int, int]
DimVector = tuple[int, ...]


@dataclass(frozen=True)
class RepetitionQuiver:
    """A window |k| <= radius of the repetition quiver of the diagram."""

    dynkin: DynkinType
    radius: int
    level: tuple[int, ...]  # distance from vertex 1, per vertex label

    def contains(self, v: ZVertex) -> bool:
        i, k = v
        return 1 <= i <= self.dynkin.rank and abs(k) <= self.radius

    def vertices(self) -> tuple[ZVertex, ...]:
        return tuple((i, k) for k in range(-self.radius, self.radius + 1)
                     for i in range(1, self.dynkin.rank + 1))

    def arrows_out(self, v: ZVertex) -> tuple[ZVertex, ...]:
        i, k = v
        out = []
        for j in self.dynkin.neighbors(i):
            if self.level[j - 1] == self.level[i - 1] + 1:
                out.append((j, k))
            else:
                out.append((j, k + 1))
        return tuple(w for w in sorted(out) if self.contains(w))

    def arrows_in(self, v: ZVertex) -> tuple[ZVertex, ...]:
        i, k = v
        out = []
        for j in self.dynkin.neighbors(i):
            if self.level[j - 1] == self.level[i - 1] + 1:
                out.append((j, k - 1))
            else:
                out.append((j, k))
        return tuple(w for w in sorted(out) if self.contains(w))

    def tau(self, v: ZVertex, steps: int = 1) -> ZVertex:
        return (v[0], v[1] - steps)

    def covered_level(self, v: ZVertex) -> int:
        return self.level[v[0] - 1] + 2 * v[1]


def build_repetition_quiver(dynkin: DynkinType, radius: int) -> RepetitionQuiver:
    if radius < dynkin.coxeter_number:
        raise ValueError(
            f"window radius {radius} is smaller than the Coxeter number "
            f"{dynkin.coxeter_number}")
    return RepetitionQuiver(dynkin, radius, dynkin.distance_from_one())


def nakayama_shift(dynkin: DynkinType) -> tuple[int, ...]:
    """Per-vertex translation step of the Nakayama permutation.

    The shift (h + l(i) - l(partner)) / 2 is forced by arrow preservation;
    it reduces to i for type A and to h/2 whenever the -w0 involution
    preserves distance from vertex 1 (all types except E6).
    """
    invol = diagram_involution(dynkin)
    dist = dynkin.distance_from_one()
    h = dynkin.coxeter_number
    out = []
    for i in range(1, dynkin.rank + 1):
        num = h + dist[i - 1] - dist[invol[i] - 1]
        if num % 2:
            raise AssertionError("Nakayama shift is not an integer")
        out.append(num // 2)
    return tuple(out)


def nakayama_repetition(dynkin: DynkinType, v: ZVertex) -> ZVertex:
    invol = diagram_involution(dynkin)
    shift = nakayama_shift(dynkin)
    i, k = v
    return (invol[i], k + shift[i - 1])


# ---------------------------------------------------------------------------
# slices and projectives

def slice_positions(dynkin: DynkinType, omega: cox.Orientation) -> dict[int, int]:
    """Translation levels of the slice through (1, 0) isomorphic to omega.

    For an edge {i, j} with j farther from vertex 1, an arrow i -> j keeps
    the level and an arrow j -> i drops it by one.
    """
    dist = dynkin.distance_from_one()
    pos = {1: 0}
    frontier = [1]
    while frontier:
        new = []
        for v in frontier:
            for u in dynkin.neighbors(v):
                if u in pos:
                    continue
                if dist[u - 1] == dist[v - 1] + 1:
                    pos[u] = pos[v] if (v, u) in omega.arrows else pos[v] - 1
                else:
                    pos[u] = pos[v] if (u, v) in omega.arrows else pos[v] + 1
                new.append(u)
        frontier = new
    return pos


def projective_dims(omega: cox.Orientation) -> dict[int, DimVector]:
    """Dimension vectors of the indecomposable projectives: entry j is 1
    exactly when an oriented path i -> ... -> j exists (including j = i)."""
    rank = omega.dynkin.rank
    return {i: tuple(int(j in omega.reachable_from(i)) for j in range(1, rank + 1))
            for i in range(1, rank + 1)}


@dataclass(frozen=True)
class ARQuiver:
    """The AR quiver of an orientation, as a labeled region of ZI."""

    quiver: RepetitionQuiver
    omega: cox.Orientation
    bottom: dict[int, int]   # projective slice position per line
    top: dict[int, int]      # first excluded position per line (Nakayama slice)
    order: tuple[ZVertex, ...]
    dims: dict[ZVertex, DimVector]

    @property
    def vertices(self) -> tuple[ZVertex, ...]:
        return self.order

    def contains(self, v: ZVertex) -> bool:
        i, k = v
        return 1 <= i <= self.quiver.dynkin.rank and self.bottom[i] <= k < self.top[i]

    def arrows(self) -> tuple[tuple[ZVertex, ZVertex], ...]:
        return tuple((v, w) for v in self.order
                     for w in self.quiver.arrows_out(v) if self.contains(w))


def ar_quiver(omega: cox.Orientation, radius: int | None = None) -> ARQuiver:
    """Knit the AR quiver of Rep(I, omega) from its projectives.

    The region runs from the slice of the opposite orientation up to its
    Nakayama image (excluded). Meshes treat vertices outside the region as
    zero; a negative entry during knitting means the region or the edge rule
    is broken and raises immediately.
    """
    dynkin = omega.dynkin
    if radius is None:
        radius = 2 * dynkin.coxeter_number
    zq = build_repetition_quiver(dynkin, radius)
    opp = omega.opposite()
    bottom = slice_positions(dynkin, opp)
    top = {}
    for i in range(1, dynkin.rank + 1):
        j, k = nakayama_repetition(dynkin, (i, bottom[i]))
        top[j] = k
    count = sum(top[i] - bottom[i] for i in range(1, dynkin.rank + 1))
    if count != dynkin.num_positive_roots:
        raise AssertionError("AR region size is not the number of positive roots")

    region = [(i, k) for i in range(1, dynkin.rank + 1)
              for k in range(bottom[i], top[i])]
    order = tuple(sorted(region, key=zq.covered_level))
    projectives = projective_dims(omega)
    dims: dict[ZVertex, DimVector] = {}
    for v in order:
        i, k = v
        if k == bottom[i]:
            dims[v] = projectives[i]
            continue
        total = [-x for x in dims[(i, k - 1)]]
        for w in zq.arrows_in(v):
            if w in dims:
                total = [a + b for a, b in zip(total, dims[w])]
        if min(total) < 0:
            raise AssertionError(f"knitting produced a negative entry at {v}")
        dims[v] = tuple(total)
    return ARQuiver(zq, omega, bottom, top, order, dims)


# ---------------------------------------------------------------------------
# covering onto the periodic quiver

def covering_map(ctx: cox.CoxeterContext, pi: SimpleSystem, v: ZVertex) -> Vertex:
    """(i, k) -> (i, h(1) + l(i) + 2k) onto the periodic quiver, where h is
    pi's height function and l the distance from vertex 1."""
    pq = arq.periodic_quiver(ctx)
    heights = arq.height_function_of(ctx, pi)
    dist = ctx.rs.dynkin.distance_from_one()
    i, k = v
    return pq.normalize(i, heights[0] + dist[i - 1] + 2 * k)


# ---------------------------------------------------------------------------
# the representation-theoretic Euler form

def rep_form_matrix(omega: cox.Orientation) -> list[list[int]]:
    r = omega.dynkin.rank
    m = [[int(a == b) for b in range(r)] for a in range(r)]
    for i, j in omega.arrows:
        m[i - 1][j - 1] -= 1
    return m


def euler_form_rep(omega: cox.Orientation, x: DimVector, y: DimVector) -> int:
    """<x, y> = sum x_i y_i - sum over arrows i -> j of x_i y_j."""
    m = rep_form_matrix(omega)
    return sum(xi * m[i][j] * y[j]
               for i, xi in enumerate(x) if xi for j in range(len(y)) if y[j])


# ---------------------------------------------------------------------------
# verdicts tying both sides together

@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[str, ...] = ()


def _dim_to_root(ctx: cox.CoxeterContext, pi: SimpleSystem, dim: DimVector) -> int:
    """Interpret a dimension vector in pi's base and return the root index."""
    rs = ctx.rs
    coords = tuple(
        sum(dim[i] * rs.coords(pi.base[i])[t] for i in range(rs.dynkin.rank))
        for t in range(rs.dynkin.rank))
    return rs.root_index(coords)


def verify_commutative_diagram(ctx: cox.CoxeterContext, pi: SimpleSystem) -> Verdict:
    """Check that dimension vectors, the covering map and the root bijection
    agree on the AR quiver of the opposite orientation, and that the region
    covers exactly the positive roots' image."""
    omega = cox.orientation_of(ctx, pi)
    gamma = ar_quiver(omega.opposite())
    phi = arq.root_bijection(ctx, pi)
    failures = []
    for v in gamma.vertices:
        root = _dim_to_root(ctx, pi, gamma.dims[v])
        if phi.image(root) != covering_map(ctx, pi, v):
            failures.append(
                f"vertex {v}: bijection sends its root to {phi.image(root)}, "
                f"covering map gives {covering_map(ctx, pi, v)}")
    covered = {covering_map(ctx, pi, v) for v in gamma.vertices}
    region = arq.positive_region(ctx, pi).vertices
    if covered != region:
        failures.append("covering image of the AR quiver is not the positive region")
    return Verdict(not failures, tuple(failures))


def verify_euler_identification(ctx: cox.CoxeterContext, pi: SimpleSystem) -> Verdict:
    """Check that the representation Euler form matches the lattice Euler
    form through the covering map, on every pair of AR vertices."""
    omega = cox.orientation_of(ctx, pi)
    opp = omega.opposite()
    gamma = ar_quiver(opp)
    phi = arq.root_bijection(ctx, pi)
    table = euler_mod.euler_form_from_system(ctx, pi)
    rs = ctx.rs
    failures = []
    for v in gamma.vertices:
        for w in gamma.vertices:
            lhs = euler_form_rep(opp, gamma.dims[v], gamma.dims[w])
            xv = rs.coords(phi.preimage(covering_map(ctx, pi, v)))
            xw = rs.coords(phi.preimage(covering_map(ctx, pi, w)))
            rhs = table.value_ref(xv, xw)
            if lhs != rhs:
                failures.append(f"pair ({v}, {w}): {lhs} != {rhs}")
    return Verdict(not failures, tuple(failures))
