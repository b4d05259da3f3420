"""Exact ADE root systems and their Weyl groups.

Roots live in the lattice spanned by a fixed reference simple system and are
stored as integer coordinate tuples in that basis, so every computation
(including type E) stays integral. Weyl group elements are permutations of
the root index table; composing elements is composing permutations.

Root indices are canonical: positive roots sorted by (height, coordinates),
negative roots mirrored after them, so index tables are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _intmat

Perm = tuple[int, ...]
Coords = tuple[int, ...]

#: Default ceiling on |W| for brute-force group enumeration.
ENUMERATION_CAP = 10**6

_E_RANGE = (6, 8)


@dataclass(frozen=True)
class DynkinType:
    """A simply laced Dynkin diagram with Bourbaki vertex labels 1..rank.

    Type D forks at vertex rank-2 into the two end vertices rank-1 and rank.
    Type E has the branch vertex 4 on the long arm and vertex 2 on the short
    arm, so E6 is the path 1-3-4-5-6 plus the edge 2-4.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "D", "E"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "A" and self.rank < 1:
            raise ValueError("type A needs rank >= 1")
        if self.family == "D" and self.rank < 4:
            raise ValueError("type D needs rank >= 4")
        if self.family == "E" and not _E_RANGE[0] <= self.rank <= _E_RANGE[1]:
            raise ValueError("type E needs rank in {6, 7, 8}")

    @classmethod
    def parse(cls, name: str) -> "DynkinType":
        name = name.strip()
        if len(name) < 2 or name[0].upper() not in "ADE" or not name[1:].isdigit():
            raise ValueError(f"cannot parse Dynkin type {name!r}")
        return cls(name[0].upper(), int(name[1:]))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def edges(self) -> tuple[tuple[int, int], ...]:
        n = self.rank
        if self.family == "A":
            return tuple((i, i + 1) for i in range(1, n))
        if self.family == "D":
            return tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
        e = [(1, 3), (2, 4), (3, 4), (4, 5)] + [(i, i + 1) for i in range(5, n)]
        return tuple(sorted(e))

    def neighbors(self, i: int) -> tuple[int, ...]:
        out = [b if a == i else a for a, b in self.edges() if i in (a, b)]
        return tuple(sorted(out))

    def distance_from_one(self) -> tuple[int, ...]:
        """Graph distance d(1, i) for every vertex, as a tuple indexed i-1."""
        dist = {1: 0}
        frontier = [1]
        while frontier:
            nxt = []
            for v in frontier:
                for u in self.neighbors(v):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        return tuple(dist[i] for i in range(1, self.rank + 1))

    def parity(self) -> tuple[int, ...]:
        """Two-coloring p(i) = d(1, i) mod 2."""
        return tuple(d % 2 for d in self.distance_from_one())

    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in self.edges():
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return tuple(tuple(row) for row in a)

    @property
    def coxeter_number(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return 2 * self.rank - 2
        return {6: 12, 7: 18, 8: 30}[self.rank]

    @property
    def num_positive_roots(self) -> int:
        return self.rank * self.coxeter_number // 2

    @property
    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return _factorial(n + 1)
        if self.family == "D":
            return 2 ** (n - 1) * _factorial(n)
        return {6: 51840, 7: 2903040, 8: 696729600}[n]


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


# ---------------------------------------------------------------------------
# permutations of the root index set

def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(u: Perm, v: Perm) -> Perm:
    """(u o v)(x) = u(v(x))."""
    return tuple(u[k] for k in v)


def inverse_perm(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, img in enumerate(w):
        out[img] = k
    return tuple(out)


def perm_order(w: Perm) -> int:
    ident = identity_perm(len(w))
    p, n = w, 1
    while p != ident:
        p = compose(w, p)
        n += 1
    return n


def perm_power(w: Perm, k: int) -> Perm:
    n = len(w)
    if k < 0:
        return perm_power(inverse_perm(w), -k)
    out = identity_perm(n)
    for _ in range(k):
        out = compose(w, out)
    return out


# ---------------------------------------------------------------------------
# the root system proper

class RootSystem:
    """Root table, Cartan form and Weyl machinery for one Dynkin type."""

    def __init__(self, dynkin: DynkinType):
        self.dynkin = dynkin
        r = dynkin.rank
        self.cartan = dynkin.cartan()
        simples = [tuple(int(j == i) for j in range(r)) for i in range(r)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for x in frontier:
                for i in range(r):
                    y = self.reflect(x, simples[i])
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        pos = sorted((c for c in seen if min(c) >= 0), key=lambda c: (sum(c), c))
        neg = [tuple(-v for v in c) for c in pos]
        if len(pos) + len(neg) != len(seen):
            raise AssertionError("root closure produced a mixed-sign vector")
        self.roots: tuple[Coords, ...] = tuple(pos + neg)
        self.npos = len(pos)
        self.index: dict[Coords, int] = {c: k for k, c in enumerate(self.roots)}
        self.simple_idx = tuple(self.index[s] for s in simples)
        self.h = dynkin.coxeter_number
        if len(self.roots) != r * self.h:
            raise AssertionError("root count does not match rank * Coxeter number")
        self._reflections: dict[int, Perm] = {}

    def inner(self, x: Coords, y: Coords) -> int:
        tot = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.cartan[i]
                tot += xi * sum(a * b for a, b in zip(row, y))
        return tot

    def reflect(self, x: Coords, root: Coords) -> Coords:
        t = self.inner(x, root)
        return tuple(a - t * b for a, b in zip(x, root))

    def coords(self, k: int) -> Coords:
        return self.roots[k]

    def root_index(self, coords: Coords) -> int:
        try:
            return self.index[tuple(coords)]
        except KeyError:
            raise ValueError(f"{coords} is not a root") from None

    def neg(self, k: int) -> int:
        return k + self.npos if k < self.npos else k - self.npos

    def is_positive(self, k: int) -> bool:
        """Positivity with respect to the reference simple system."""
        return k < self.npos

    def reflection_perm(self, k: int) -> Perm:
        """The reflection in root k, as a permutation of root indices."""
        k = k if k < self.npos else self.neg(k)
        cached = self._reflections.get(k)
        if cached is None:
            beta = self.roots[k]
            cached = tuple(self.index[self.reflect(c, beta)] for c in self.roots)
            self._reflections[k] = cached
        return cached

    def matrix_of(self, w: Perm) -> list[list[int]]:
        """Matrix of w acting on reference coordinates (columns = images)."""
        cols = [self.roots[w[k]] for k in self.simple_idx]
        return [list(row) for row in zip(*cols)]


def build_root_system(dynkin: DynkinType) -> RootSystem:
    """Close the reference simple system under simple reflections.

    The resulting table is deduplicated and canonically ordered; the Coxeter
    number is cross-checked against the order of s_1 ... s_r.
    """
    rs = RootSystem(dynkin)
    cox = identity_perm(len(rs.roots))
    for i in range(dynkin.rank, 0, -1):
        cox = compose(rs.reflection_perm(rs.simple_idx[i - 1]), cox)
    if perm_order(cox) != rs.h:
        raise AssertionError("Coxeter element order disagrees with root count")
    return rs


def inner_product(rs: RootSystem, x: Coords, y: Coords) -> int:
    if len(x) != rs.dynkin.rank or len(y) != rs.dynkin.rank:
        raise ValueError("vector length does not match the rank")
    return rs.inner(tuple(x), tuple(y))


# ---------------------------------------------------------------------------
# simple systems

@dataclass(frozen=True)
class SimpleSystem:
    """An ordered base of the root system, carried from the reference base.

    ``witness`` is the Weyl element w with w(reference base) = this base, so
    ``base[i-1]`` is the root index of the i-th base root. Indexing by the
    witness keeps the canonical labeling of simple roots W-equivariant.
    """

    witness: Perm
    base: tuple[int, ...]


def simple_system(rs: RootSystem, witness: Perm) -> SimpleSystem:
    return SimpleSystem(witness, tuple(witness[k] for k in rs.simple_idx))


def ref_system(rs: RootSystem) -> SimpleSystem:
    return simple_system(rs, identity_perm(len(rs.roots)))


def apply_weyl(rs: RootSystem, w: Perm, pi: SimpleSystem) -> SimpleSystem:
    return simple_system(rs, compose(w, pi.witness))


def simple_reflection(rs: RootSystem, pi: SimpleSystem, i: int) -> Perm:
    """The reflection in the i-th base root of pi, on root indices."""
    return rs.reflection_perm(pi.base[i - 1])


def coords_in_basis(rs: RootSystem, pi: SimpleSystem, k: int) -> Coords:
    """Coordinates of root k in the base of pi (always integers)."""
    return rs.coords(inverse_perm(pi.witness)[k])


def root_from_coords_in_basis(rs: RootSystem, pi: SimpleSystem, coords: Coords) -> int:
    return pi.witness[rs.root_index(coords)]


def weyl_length(rs: RootSystem, pi: SimpleSystem, w: Perm) -> int:
    """Number of positive roots of pi sent to negative roots by w."""
    inv = inverse_perm(pi.witness)
    return sum(1 for p in range(rs.npos) if inv[w[pi.witness[p]]] >= rs.npos)


def greedy_word(rs: RootSystem, pi: SimpleSystem, w: Perm) -> tuple[int, ...]:
    """A reduced word for w in the simple reflections of pi.

    Strips right descents, lowest vertex label first; the output length
    always equals weyl_length(rs, pi, w).
    """
    inv = inverse_perm(pi.witness)
    ident = identity_perm(len(w))
    stripped = []
    cur = w
    while cur != ident:
        for i in range(1, rs.dynkin.rank + 1):
            if inv[cur[pi.base[i - 1]]] >= rs.npos:
                cur = compose(cur, simple_reflection(rs, pi, i))
                stripped.append(i)
                break
        else:
            raise AssertionError("non-identity element with no descent")
    return tuple(reversed(stripped))


def greedy_word_left(rs: RootSystem, pi: SimpleSystem, w: Perm) -> tuple[int, ...]:
    """Like greedy_word but strips left descents; same length, possibly a
    different representative of the commutation class."""
    inv = inverse_perm(pi.witness)
    ident = identity_perm(len(w))
    word = []
    cur = w
    winv = inverse_perm(w)
    while cur != ident:
        for i in range(1, rs.dynkin.rank + 1):
            if inv[winv[pi.base[i - 1]]] >= rs.npos:
                s = simple_reflection(rs, pi, i)
                cur = compose(s, cur)
                winv = inverse_perm(cur)
                word.append(i)
                break
        else:
            raise AssertionError("non-identity element with no descent")
    return tuple(word)


def word_to_perm(rs: RootSystem, pi: SimpleSystem, word: tuple[int, ...]) -> Perm:
    """Evaluate s_{i1} ... s_{ik} (rightmost letter acts first)."""
    out = identity_perm(len(rs.roots))
    for i in reversed(word):
        out = compose(simple_reflection(rs, pi, i), out)
    return out


def longest_element(rs: RootSystem, pi: SimpleSystem) -> Perm:
    """The longest element for pi, built by greedy length increase."""
    inv = inverse_perm(pi.witness)
    cur = identity_perm(len(rs.roots))
    while True:
        for i in range(1, rs.dynkin.rank + 1):
            if inv[cur[pi.base[i - 1]]] < rs.npos:
                cur = compose(cur, simple_reflection(rs, pi, i))
                break
        else:
            return cur


def negated_system(rs: RootSystem, pi: SimpleSystem) -> SimpleSystem:
    """The opposite base -pi, indexed through the longest element of pi."""
    return apply_weyl(rs, longest_element(rs, pi), pi)


def enumerate_weyl_group(rs: RootSystem, cap: int = ENUMERATION_CAP) -> tuple[Perm, ...]:
    """The full Weyl group by closure under the reference simple reflections.

    Refuses types whose group order exceeds ``cap`` so oracle suites stay
    fast; the non-enumerative algorithms in this package do not go through
    here and work for every type.
    """
    order = rs.dynkin.weyl_order
    if order > cap:
        raise ValueError(
            f"|W| = {order} for {rs.dynkin.name} exceeds the enumeration cap {cap}")
    gens = [rs.reflection_perm(k) for k in rs.simple_idx]
    ident = identity_perm(len(rs.roots))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                u = compose(g, w)
                if u not in seen:
                    seen.add(u)
                    new.append(u)
        frontier = new
    if len(seen) != order:
        raise AssertionError("enumerated group size disagrees with the order formula")
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# the -w0 diagram involution

def diagram_involution(dynkin: DynkinType) -> dict[int, int]:
    """The vertex involution induced by -w0 (a diagram automorphism).

    Types A, D_odd and E6 get the nontrivial automorphism; for the others
    -1 already lies in the Weyl group and the map is the identity.
    """
    n = dynkin.rank
    ident = {i: i for i in range(1, n + 1)}
    if dynkin.family == "A":
        return {i: n + 1 - i for i in range(1, n + 1)}
    if dynkin.family == "D" and n % 2 == 1:
        ident[n - 1], ident[n] = n, n - 1
        return ident
    if dynkin.family == "E" and n == 6:
        return {1: 6, 2: 2, 3: 5, 4: 4, 5: 3, 6: 1}
    return ident


def involution_from_longest(rs: RootSystem, pi: SimpleSystem) -> dict[int, int]:
    """Recover the involution from -alpha_i = w0(alpha_{i-check})."""
    w0 = longest_element(rs, pi)
    images = {w0[pi.base[j - 1]]: j for j in range(1, rs.dynkin.rank + 1)}
    return {i: images[rs.neg(pi.base[i - 1])] for i in range(1, rs.dynkin.rank + 1)}


# ---------------------------------------------------------------------------
# Euclidean display transform for types A and D

def euclidean_vector(rs: RootSystem, k: int) -> tuple[int, ...] | None:
    """Coordinates in the usual e_i realization; None for type E."""
    fam, n = rs.dynkin.family, rs.dynkin.rank
    c = rs.coords(k)
    if fam == "A":
        vec = [0] * (n + 1)
        for i, ci in enumerate(c):
            vec[i] += ci
            vec[i + 1] -= ci
        return tuple(vec)
    if fam == "D":
        vec = [0] * n
        for i, ci in enumerate(c[: n - 1]):
            vec[i] += ci
            vec[i + 1] -= ci
        vec[n - 2] += c[n - 1]
        vec[n - 1] += c[n - 1]
        return tuple(vec)
    return None


def euclidean_label(rs: RootSystem, k: int) -> str | None:
    """Display form like ``e1-e3`` or ``-e2-e4``; None for type E."""
    vec = euclidean_vector(rs, k)
    if vec is None:
        return None
    parts = []
    for pos, v in enumerate(vec, start=1):
        if v == 0:
            continue
        sign = "+" if v > 0 else "-"
        parts.append((sign, f"e{pos}"))
    out = "".join((s if (s == "-" or idx > 0) else "") + t
                  for idx, (s, t) in enumerate(parts))
    return out


def weights_matrix(rs: RootSystem) -> list[list[Fraction]]:
    """Columns are the fundamental weights of the reference base."""
    return _intmat.invert(rs.cartan)
