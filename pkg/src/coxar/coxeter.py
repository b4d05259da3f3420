"""Coxeter elements, compatible simple systems and C-orbit representatives.

A simple system is compatible with the Coxeter element C when C is the
product of its r simple reflections in some order; such orders are exactly
the linear extensions of an acyclic orientation of the Dynkin diagram.
The closure of one compatible system under sink/source reflections yields
all of them without ever enumerating the Weyl group.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _intmat
from .rootsys import (
    DynkinType,
    Perm,
    RootSystem,
    SimpleSystem,
    compose,
    greedy_word,
    greedy_word_left,
    identity_perm,
    inverse_perm,
    perm_order,
    perm_power,
    simple_reflection,
    simple_system,
    weyl_length,
    word_to_perm,
)


@dataclass(frozen=True)
class Orientation:
    """An acyclic orientation of the Dynkin diagram: one arrow per edge."""

    dynkin: DynkinType
    arrows: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        undirected = {frozenset(a) for a in self.arrows}
        if undirected != {frozenset(e) for e in self.dynkin.edges()}:
            raise ValueError("arrows do not match the Dynkin edges")
        if len(self.arrows) != len(self.dynkin.edges()):
            raise ValueError("some edge carries both directions")

    def sorted_arrows(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arrows))

    def targets(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(b for a, b in self.arrows if a == i))

    def sources_into(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(a for a, b in self.arrows if b == i))

    def is_sink(self, i: int) -> bool:
        return not self.targets(i) and i in _vertices(self.dynkin)

    def is_source(self, i: int) -> bool:
        return not self.sources_into(i) and i in _vertices(self.dynkin)

    def sinks(self) -> tuple[int, ...]:
        return tuple(i for i in _vertices(self.dynkin) if self.is_sink(i))

    def sources(self) -> tuple[int, ...]:
        return tuple(i for i in _vertices(self.dynkin) if self.is_source(i))

    def reversed_at(self, i: int) -> "Orientation":
        flipped = {(b, a) if i in (a, b) else (a, b) for a, b in self.arrows}
        return Orientation(self.dynkin, frozenset(flipped))

    def opposite(self) -> "Orientation":
        return Orientation(self.dynkin, frozenset((b, a) for a, b in self.arrows))

    def topological_order(self) -> tuple[int, ...]:
        """Linear extension of the arrows, lowest label first among sources."""
        remaining = set(_vertices(self.dynkin))
        preds = {i: set(self.sources_into(i)) for i in remaining}
        out = []
        while remaining:
            ready = min(i for i in remaining if not (preds[i] & remaining))
            out.append(ready)
            remaining.discard(ready)
        return tuple(out)

    def reachable_from(self, i: int) -> frozenset[int]:
        """Vertices j with an oriented path i -> ... -> j, including i."""
        seen = {i}
        frontier = [i]
        while frontier:
            new = []
            for v in frontier:
                for u in self.targets(v):
                    if u not in seen:
                        seen.add(u)
                        new.append(u)
            frontier = new
        return frozenset(seen)

    def path_leq(self, j: int, i: int) -> bool:
        """The reflexive path order: j <= i when some path j -> ... -> i exists."""
        return i in self.reachable_from(j)


def _vertices(dynkin: DynkinType) -> range:
    return range(1, dynkin.rank + 1)


def orientation_from_word(dynkin: DynkinType, word: tuple[int, ...]) -> Orientation:
    """Arrow i -> j for each edge whose vertex i comes first in the word."""
    pos = {v: k for k, v in enumerate(word)}
    arrows = frozenset((i, j) if pos[i] < pos[j] else (j, i) for i, j in dynkin.edges())
    return Orientation(dynkin, arrows)


class CoxeterContext:
    """A fixed Coxeter element with one compatibility witness.

    Construction verifies that the element has order h, that the witness
    gives it length exactly rank, and that 1 is not an eigenvalue of its
    action on the root lattice. Expensive derived data (the compatible
    systems, the canonical system, root/vertex bijections) is memoized.
    """

    def __init__(self, rs: RootSystem, coxeter: Perm, seed: SimpleSystem):
        self.rs = rs
        self.coxeter = coxeter
        self.seed = seed
        self.h = perm_order(coxeter)
        if self.h != rs.h:
            raise ValueError("element order does not equal the Coxeter number")
        if weyl_length(rs, seed, coxeter) != rs.dynkin.rank:
            raise ValueError("witness simple system is not compatible")
        m = rs.matrix_of(coxeter)
        one_minus = _intmat.mat_sub(_intmat.identity(rs.dynkin.rank), m)
        if _intmat.det(one_minus) == 0:
            raise ValueError("Coxeter element has a nonzero fixed vector")
        self.coxeter_inv = inverse_perm(coxeter)
        self._memo: dict = {}

    def memo(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def matrix(self) -> list[list[int]]:
        return self.memo("matrix", lambda: self.rs.matrix_of(self.coxeter))

    def power(self, k: int) -> Perm:
        return perm_power(self.coxeter, k % self.h)


def coxeter_from_word(rs: RootSystem, pi: SimpleSystem, order: tuple[int, ...]) -> CoxeterContext:
    """Build C = s_{i1} ... s_{ir} from a word visiting every vertex once."""
    if sorted(order) != list(_vertices(rs.dynkin)):
        raise ValueError("word must visit each vertex exactly once")
    return CoxeterContext(rs, word_to_perm(rs, pi, tuple(order)), pi)


def coxeter_from_orientation(rs: RootSystem, pi: SimpleSystem, omega: Orientation) -> CoxeterContext:
    """The Coxeter element whose reduced words linearize the orientation."""
    return coxeter_from_word(rs, pi, omega.topological_order())


def is_compatible(ctx: CoxeterContext, pi: SimpleSystem) -> tuple[bool, tuple[int, ...] | None]:
    """Length test for compatibility, with a witness word on success.

    The word is reduced and visits every vertex exactly once.
    """
    r = ctx.rs.dynkin.rank
    if weyl_length(ctx.rs, pi, ctx.coxeter) != r:
        return False, None
    word = greedy_word(ctx.rs, pi, ctx.coxeter)
    if sorted(word) != list(_vertices(ctx.rs.dynkin)):
        raise AssertionError("length-r word for a Coxeter element repeats a vertex")
    return True, word


def orientation_of(ctx: CoxeterContext, pi: SimpleSystem) -> Orientation:
    """Orientation read off a reduced word; checked against a second word
    from an independent extraction so commutation-class bugs surface."""
    ok, word = is_compatible(ctx, pi)
    if not ok:
        raise ValueError("simple system is not compatible with the Coxeter element")
    omega = orientation_from_word(ctx.rs.dynkin, word)
    other = greedy_word_left(ctx.rs, pi, ctx.coxeter)
    if orientation_from_word(ctx.rs.dynkin, other) != omega:
        raise AssertionError("two reduced words disagree on the orientation")
    return omega


def elementary_reflection(ctx: CoxeterContext, pi: SimpleSystem, i: int) -> SimpleSystem:
    """Reflect the base at vertex i, which must be a sink or a source."""
    omega = orientation_of(ctx, pi)
    if not (omega.is_sink(i) or omega.is_source(i)):
        raise ValueError(f"vertex {i} is neither a sink nor a source")
    return simple_system(ctx.rs, compose(simple_reflection(ctx.rs, pi, i), pi.witness))


def enumerate_compatible(ctx: CoxeterContext) -> tuple[SimpleSystem, ...]:
    """All simple systems compatible with C, by reflection closure.

    Needs no Weyl group enumeration, so it works for every type. The result
    is sorted by witness permutation for reproducibility and its size is
    checked against h * 2^(rank-1).
    """

    def build():
        seen = {ctx.seed.witness: ctx.seed}
        queue = [ctx.seed]
        while queue:
            pi = queue.pop()
            omega = orientation_of(ctx, pi)
            for i in set(omega.sinks()) | set(omega.sources()):
                nxt = elementary_reflection(ctx, pi, i)
                if nxt.witness not in seen:
                    seen[nxt.witness] = nxt
                    queue.append(nxt)
        out = tuple(seen[w] for w in sorted(seen))
        expected = ctx.h * 2 ** (ctx.rs.dynkin.rank - 1)
        if len(out) != expected:
            raise AssertionError("reflection closure size is not h * 2^(r-1)")
        return out

    return ctx.memo("compatible", build)


def canonical_system(ctx: CoxeterContext) -> SimpleSystem:
    """The compatible system with the least (witness word, base) key.

    This choice depends only on the Coxeter element, which pins down the
    otherwise arbitrary anchor of the root/vertex bijection and keeps all
    emitted tables reproducible.
    """

    def build():
        def key(pi: SimpleSystem):
            return (greedy_word(ctx.rs, pi, ctx.coxeter), pi.base)

        return min(enumerate_compatible(ctx), key=key)

    return ctx.memo("canonical", build)


def orbit_representatives(ctx: CoxeterContext, pi: SimpleSystem) -> tuple[int, ...]:
    """The canonical C-orbit representatives attached to pi, as root indices.

    Entry i-1 is the sum of the base roots over the path-order predecessors
    of i. The value is cross-checked against the prefix-reflection formula
    and against the positive-roots-with-negative-C-preimage filter; any
    disagreement means the orientation bookkeeping is broken, so it raises.
    """
    rs = ctx.rs
    ok, word = is_compatible(ctx, pi)
    if not ok:
        raise ValueError("simple system is not compatible with the Coxeter element")
    omega = orientation_from_word(rs.dynkin, word)

    reps = []
    for i in _vertices(rs.dynkin):
        below = [j for j in _vertices(rs.dynkin) if omega.path_leq(j, i)]
        total = tuple(
            sum(rs.coords(pi.base[j - 1])[t] for j in below)
            for t in range(rs.dynkin.rank))
        reps.append(rs.root_index(total))
    reps = tuple(reps)

    # prefix-reflection formula along the witness word
    prefix = identity_perm(len(rs.roots))
    by_prefix = {}
    for i in word:
        by_prefix[i] = prefix[pi.base[i - 1]]
        prefix = compose(prefix, simple_reflection(rs, pi, i))
    if tuple(by_prefix[i] for i in _vertices(rs.dynkin)) != reps:
        raise AssertionError("prefix-reflection representatives disagree")

    # filter characterization
    inv = inverse_perm(pi.witness)
    filtered = {
        k for p in range(rs.npos)
        for k in (pi.witness[p],)
        if inv[ctx.coxeter_inv[k]] >= rs.npos
    }
    if filtered != set(reps):
        raise AssertionError("filter characterization representatives disagree")
    return reps


def reps_after_reflection(ctx: CoxeterContext, pi: SimpleSystem, i: int) -> tuple[int, ...]:
    """Orbit representatives of the reflected system, via the update rule:
    only the entry at the reflected vertex moves, by C (source) or C^-1
    (sink). Verified against a fresh computation."""
    omega = orientation_of(ctx, pi)
    reps = orbit_representatives(ctx, pi)
    if omega.is_sink(i):
        step = ctx.coxeter_inv
    elif omega.is_source(i):
        step = ctx.coxeter
    else:
        raise ValueError(f"vertex {i} is neither a sink nor a source")
    updated = tuple(step[k] if j == i else k for j, k in enumerate(reps, start=1))
    fresh = orbit_representatives(ctx, elementary_reflection(ctx, pi, i))
    if updated != fresh:
        raise AssertionError("reflected representatives disagree with recomputation")
    return updated


def coxeter_orbit(ctx: CoxeterContext, k: int) -> tuple[int, ...]:
    """The C-orbit of root k: (k, Ck, C^2 k, ...)."""
    out = [k]
    cur = ctx.coxeter[k]
    while cur != k:
        out.append(cur)
        cur = ctx.coxeter[cur]
    return tuple(out)
