"""Finite groups as multiplication tables.

Elements are the integers ``0..N-1`` and ``0`` is always the identity. The
dihedral group ``D_n = <a, b | a^n = b^2 = 1, b^-1 a b = a^-1>`` uses the
encoding ``i -> a^i`` and ``n + i -> a^i b``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_AUT_BOUND = 24


class GroupError(ValueError):
    """Invalid group data (bad table, bad spec, bad subgroup)."""


class BoundExceeded(ValueError):
    """A search was asked to run on a group larger than its configured bound."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    kind: tuple = ("table",)
    generators: tuple[int, ...] = ()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self.mul == other.mul

    def __hash__(self) -> int:
        return hash((self.order, self.kind))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    @property
    def name(self) -> str:
        if self.kind[0] == "cyclic":
            return f"cyclic:{self.kind[1]}"
        if self.kind[0] == "dihedral":
            return f"dihedral:{self.kind[1]}"
        return f"table[{self.order}]"

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[x][y] == m[y][x] for x in self.elements for y in range(x))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        y = 0
        for _ in range(k % self.element_orders[x]):
            y = self.mul[y][x]
        return y

    def element_name(self, x: int) -> str:
        if self.kind[0] != "dihedral":
            return str(x)
        n = self.kind[1]
        i, refl = x % n, x >= n
        rot = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if refl:
            return rot + "b"
        return rot or "1"


# --- constructors -----------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group needs n >= 1, got {n}")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, mul, inv, ("cyclic", n), (1,) if n > 1 else ())


def dihedral_index(n: int, i: int, refl: int = 0) -> int:
    """Index of ``a^i b^refl`` in ``D_n``."""
    return i % n + (n if refl % 2 else 0)


def dihedral(n: int) -> FiniteGroup:
    if n < 3:
        raise GroupError(f"dihedral group needs n >= 3, got {n}")
    rows = []
    for x in range(2 * n):
        i, eps = x % n, x // n
        row = []
        for y in range(2 * n):
            j, delta = y % n, y // n
            row.append(dihedral_index(n, i + (-j if eps else j), eps + delta))
        rows.append(tuple(row))
    inv = tuple(dihedral_index(n, -x, 0) if x < n else x for x in range(2 * n))
    return FiniteGroup(2 * n, tuple(rows), inv, ("dihedral", n), (1, n))


def from_table(rows: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a Cayley table and relabel so that the identity is index 0."""
    size = len(rows)
    if size == 0:
        raise GroupError("empty table")
    if any(len(r) != size for r in rows):
        raise GroupError("table is not square")
    if any(not 0 <= v < size for r in rows for v in r):
        raise GroupError("table entry out of range")
    ident = next(
        (e for e in range(size)
         if all(rows[e][x] == x and rows[x][e] == x for x in range(size))),
        None,
    )
    if ident is None:
        raise GroupError("table has no identity element")
    # swap labels ident <-> 0
    lab = list(range(size))
    lab[0], lab[ident] = ident, 0
    mul = tuple(
        tuple(lab[rows[lab[x]][lab[y]]] for y in range(size)) for x in range(size)
    )
    for x, y, z in product(range(size), repeat=3):
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            raise GroupError(f"table is not associative at ({x}, {y}, {z})")
    inv = []
    for x in range(size):
        y = next((y for y in range(size) if mul[x][y] == 0 and mul[y][x] == 0), None)
        if y is None:
            raise GroupError(f"element {x} has no inverse")
        inv.append(y)
    g = FiniteGroup(size, mul, tuple(inv), ("table",))
    return FiniteGroup(size, mul, tuple(inv), ("table",), _greedy_generators(g))


def _greedy_generators(g: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    current = {0}
    # prefer elements of large order so the list stays short
    for x in sorted(g.elements, key=lambda x: (-g.element_orders[x], x)):
        if x not in current:
            gens.append(x)
            current = set(closure(g, gens))
        if len(current) == g.order:
            break
    return tuple(sorted(gens))


def load_table(path: str | Path) -> FiniteGroup:
    """Read a table file: first line N, then N rows of N indices."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupError(f"{path}: empty table file")
    try:
        size = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise GroupError(f"{path}: {exc}") from None
    if len(rows) != size:
        raise GroupError(f"{path}: expected {size} rows, found {len(rows)}")
    return from_table(rows)


def make_group(spec: str) -> FiniteGroup:
    """Build a group from ``cyclic:<n>``, ``dihedral:<n>`` or ``table:<path>``."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GroupError(f"bad group spec {spec!r}")
    kind = kind.strip().lower()
    if kind == "table":
        return load_table(arg.strip())
    try:
        n = int(arg)
    except ValueError:
        raise GroupError(f"bad group spec {spec!r}") from None
    if kind == "cyclic":
        return cyclic(n)
    if kind == "dihedral":
        return dihedral(n)
    raise GroupError(f"unknown group kind {kind!r}")


# --- subgroups --------------------------------------------------------------


def closure(g: FiniteGroup, gens: Iterable[int]) -> list[int]:
    gens = list(dict.fromkeys(gens))
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.mul[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = set(self.elements)
        if 0 not in els:
            raise GroupError("subgroup must contain the identity")
        m, inv = self.parent.mul, self.parent.inv
        for x in els:
            if inv[x] not in els or any(m[x][y] not in els for y in els):
                raise GroupError(f"subset {sorted(els)} is not closed")
        assert self.parent.order % len(els) == 0

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members


def make_subgroup(g: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    return Subgroup(g, tuple(sorted(set(elements))))


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, tuple(closure(g, gens)))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (0,))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements))


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    m, inv = g.mul, g.inv
    return all(m[m[x][y]][inv[x]] in h for x in g.elements for y in h)


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by repeatedly joining cyclic subgroups. Sorted by (size, elements)."""
    cyclic_subs = {tuple(closure(g, [x])) for x in g.elements}
    found = set(cyclic_subs)
    frontier = set(cyclic_subs)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic_subs:
                if set(c) <= set(h):
                    continue
                j = tuple(closure(g, h + c))
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return [Subgroup(g, h) for h in sorted(found, key=lambda h: (len(h), h))]


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return [h for h in all_subgroups(g) if is_normal(g, h)]


def dihedral_subgroup(n: int, name: str, g: FiniteGroup | None = None) -> Subgroup:
    """Named subgroups of ``D_n``: ``a``, ``a2``, ``a2b``, ``a2ab``, ``1``, ``all``."""
    g = g or dihedral(n)
    gens = {
        "1": [],
        "a": [1],
        "a2": [2],
        "a2b": [2, n],
        "a2ab": [2, n + 1],
        "all": [1, n],
    }.get(name)
    if gens is None:
        raise GroupError(f"unknown dihedral subgroup name {name!r}")
    return subgroup_generated(g, gens)


def dihedral_normal_subgroups(n: int) -> list[Subgroup]:
    """Proper normal subgroups of ``D_n``: ``<a^u>`` for ``u | n``, plus
    ``<a^2, b>`` and ``<a^2, ab>`` when ``n`` is even."""
    if n < 3:
        raise GroupError(f"dihedral group needs n >= 3, got {n}")
    g = dihedral(n)
    subs = [subgroup_generated(g, [u % n]) for u in range(1, n + 1) if n % u == 0]
    if n % 2 == 0:
        subs += [dihedral_subgroup(n, "a2b", g), dihedral_subgroup(n, "a2ab", g)]
    for h in subs:
        assert is_normal(g, h), h
    return subs


# --- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise GroupError("image table has the wrong length")
        if self.images[0] != 0:
            raise GroupError("a homomorphism must send 0 to 0")
        sm, tm, im = self.source.mul, self.target.mul, self.images
        for x in self.source.elements:
            for y in self.source.elements:
                if im[sm[x][y]] != tm[im[x]][im[y]]:
                    raise GroupError(f"not a homomorphism at ({x}, {y})")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_surjective()

    def is_automorphism(self) -> bool:
        return self.source == self.target and self.is_bijective()

    def kernel(self) -> Subgroup:
        return make_subgroup(self.source, (x for x, y in enumerate(self.images) if y == 0))

    def image(self, xs: Iterable[int]) -> list[int]:
        return sorted({self.images[x] for x in xs})

    def preimage(self, ys: Iterable[int]) -> list[int]:
        ys = set(ys)
        return [x for x, y in enumerate(self.images) if y in ys]

    def inverse(self) -> "GroupMap":
        if not self.is_bijective():
            raise GroupError("map is not invertible")
        out = [0] * self.source.order
        for x, y in enumerate(self.images):
            out[y] = x
        return GroupMap(self.target, self.source, tuple(out))

    def then(self, other: "GroupMap") -> "GroupMap":
        """``other o self``."""
        return GroupMap(self.source, other.target, tuple(other.images[y] for y in self.images))


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, tuple(g.elements))


def quotient(g: FiniteGroup, nsub: Subgroup) -> tuple[FiniteGroup, GroupMap]:
    """Quotient ``g / nsub`` on smallest-index coset representatives.

    Quotient element ``i`` is the coset of the ``i``-th smallest representative,
    so the identity coset is 0. Returns the group and the projection.
    """
    if not is_normal(g, nsub):
        raise GroupError("quotient by a non-normal subgroup")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in g.elements:
        if coset_of[x] >= 0:
            continue
        for h in nsub:
            coset_of[g.mul[x][h]] = len(reps)
        reps.append(x)
    m = len(reps)
    mul = tuple(tuple(coset_of[g.mul[reps[i]][reps[j]]] for j in range(m)) for i in range(m))
    inv = tuple(coset_of[g.inv[reps[i]]] for i in range(m))
    q = FiniteGroup(m, mul, inv, ("table",))
    q = FiniteGroup(m, mul, inv, ("table",), _greedy_generators(q))
    return q, GroupMap(g, q, tuple(coset_of))


def automorphisms(g: FiniteGroup, bound: int = DEFAULT_AUT_BOUND) -> list[GroupMap]:
    """All automorphisms, by trying every assignment of generator images.

    Sorted lexicographically by image table.
    """
    if g.order > bound:
        raise BoundExceeded(f"automorphism search bound {bound} < |G| = {g.order}")
    gens = list(g.generators)
    # spanning tree of the Cayley graph: x = parent[x] * gens[step[x]]
    parent = {0: (None, None)}
    queue = deque([0])
    order_bfs = []
    while queue:
        x = queue.popleft()
        order_bfs.append(x)
        for k, s in enumerate(gens):
            y = g.mul[x][s]
            if y not in parent:
                parent[y] = (x, k)
                queue.append(y)
    ords = g.element_orders
    candidates = [[y for y in g.elements if ords[y] == ords[s]] for s in gens]
    found = []
    for choice in product(*candidates):
        img = [0] * g.order
        for x in order_bfs[1:]:
            p, k = parent[x]
            img[x] = g.mul[img[p]][choice[k]]
        if len(set(img)) != g.order:
            continue
        if all(img[g.mul[x][y]] == g.mul[img[x]][img[y]]
               for x in g.elements for y in g.elements):
            found.append(tuple(img))
    return [GroupMap(g, g, t) for t in sorted(found)]


def dihedral_automorphism(n: int, t: int, c: int, g: FiniteGroup | None = None) -> GroupMap:
    """The automorphism ``a -> a^t, b -> a^c b`` of ``D_n``."""
    if math.gcd(t, n) != 1:
        raise GroupError(f"gcd({t}, {n}) != 1")
    g = g or dihedral(n)
    images = tuple(
        dihedral_index(n, t * (x % n) + (c if x >= n else 0), x >= n) for x in range(2 * n)
    )
    return GroupMap(g, g, images)


def dihedral_automorphisms(n: int, g: FiniteGroup | None = None) -> list[GroupMap]:
    """All ``a -> a^t, b -> a^c b`` maps; sorted by image table."""
    g = g or dihedral(n)
    maps = [dihedral_automorphism(n, t, c, g)
            for t in range(1, n) if math.gcd(t, n) == 1 for c in range(n)]
    return sorted(maps, key=lambda m: m.images)
