"""Exhaustive enumeration of all skew-morphisms of a small group.

Work is split into independent tasks:

* the order ``n`` of the skew-morphism;
* an orbit-length profile: for every ``d | n`` the elements whose orbit
  length divides ``d`` form a subgroup, so the possible assignments of orbit
  lengths can be listed from the subgroup lattice, and most orders ``n`` have
  none at all;
* a prime-order element ``k`` assumed to lie in the kernel (the kernel is
  never trivial), with the smaller such representatives forced out of it so
  the tasks do not overlap;
* the image of ``k``.

Each task is a depth-first search in :mod:`skewmorph._dfs`. Every leaf is
re-checked with :func:`skewmorph.skew.verify`, so the pruning only affects
speed, never membership.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _dfs
from .groups import BoundExceeded, FiniteGroup, Subgroup, all_subgroups, closure
from .skew import SkewMorphism, is_kernel_preserving, is_smooth, kernel, verify

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 16


@dataclass(frozen=True)
class EnumConfig:
    max_group_order: int = DEFAULT_MAX_ORDER
    parallel: bool = False
    order_filter: frozenset[int] | None = None
    workers: int | None = None

    def __post_init__(self):
        if self.max_group_order < 1:
            raise ValueError("max_group_order must be >= 1")


def _prime_order_reps(g: FiniteGroup) -> list[int]:
    """Least non-identity element of each subgroup of prime order, ascending."""
    reps = set()
    for x in g.elements:
        o = g.element_orders[x]
        if o > 1 and all(o % d for d in range(2, o)):
            reps.add(min(y for y in closure(g, [x]) if y))
    return sorted(reps)


def _factor(n: int) -> list[tuple[int, int]]:
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _valuations(g: FiniteGroup, subs, p: int, e: int) -> list[tuple[int, ...]]:
    """Candidate p-adic valuations of the orbit lengths.

    For ``i = 1..e`` the elements whose orbit length has p-part at most
    ``p^(e-i)`` form a subgroup ``H_i``; the ``H_i`` are nested and ``H_1`` is
    proper because some orbit has full p-part ``p^e``.
    """
    N = g.order
    out = []

    def walk(chain):
        if len(chain) == e:
            v = tuple(e - sum(x in h for h in chain) for x in range(N))
            # each class {v = i} is a union of orbits of length divisible by p^i
            if all(v.count(i) % p ** i == 0 for i in range(1, e + 1)):
                out.append(v)
            return
        for h in subs:
            if (chain and h <= chain[-1]) or (not chain and len(h) < N):
                walk(chain + [h])

    walk([])
    return sorted(set(out))


def _length_profiles(g: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    """Every assignment of orbit lengths a skew-morphism of order ``n`` could have.

    Orbit lengths of products divide the lcm of the factors' orbit lengths and
    orbits are closed under inversion, so for each ``d | n`` the elements with
    orbit length dividing ``d`` form a subgroup. Profiles whose length classes
    cannot be split into whole orbits are dropped.
    """
    subs = sorted((frozenset(h) for h in all_subgroups(g)), key=lambda h: (len(h), sorted(h)))
    per_prime = [[(p, v) for v in _valuations(g, subs, p, e)] for p, e in _factor(n)]
    out = []
    for combo in itertools.product(*per_prime):
        lengths = tuple(math.prod(p ** v[x] for p, v in combo) for x in range(g.order))
        counts: dict[int, int] = {}
        for L in lengths:
            counts[L] = counts.get(L, 0) + 1
        if all(c % L == 0 for L, c in counts.items()):
            out.append(lengths)
    return sorted(out)


@functools.lru_cache(maxsize=8)
def _arrays(g: FiniteGroup):
    return (np.array(g.mul, dtype=np.int64), np.array(g.inv, dtype=np.int64),
            np.array(g.generators, dtype=np.int64), _prime_order_reps(g))


def _search_task(args) -> list[tuple[int, ...]]:
    g, n, lengths, idx, img = args
    mul, inv, gens, reps = _arrays(g)
    notker = np.zeros(g.order, dtype=np.bool_)
    notker[reps[:idx]] = True
    found, nodes = _dfs.search(mul, inv, gens, np.array(lengths, dtype=np.int64),
                               notker, n, reps[idx], img)
    log.debug("n=%d k=%d image %d: %d nodes, %d leaves", n, reps[idx], img, nodes, len(found))
    return [tuple(int(v) for v in p) for p in found]


def _tasks(g: FiniteGroup, cfg: EnumConfig):
    """One task per (order n, orbit-length profile, minimal kernel subgroup <k>, image of k)."""
    orders = range(2, g.order + 1)
    if cfg.order_filter is not None:
        orders = [n for n in orders if n in cfg.order_filter]
    reps = _prime_order_reps(g)
    ords = g.element_orders
    for n in orders:
        for lengths in _length_profiles(g, n):
            for idx, k in enumerate(reps):
                for img in range(1, g.order):
                    if ords[img] == ords[k] and lengths[img] == lengths[k]:
                        yield (g, n, lengths, idx, img)


def enumerate_skew_morphisms(g: FiniteGroup, cfg: EnumConfig | None = None) -> list[SkewMorphism]:
    """All skew-morphisms of ``g``, sorted by the ``phi`` image table."""
    cfg = cfg or EnumConfig()
    if g.order > cfg.max_group_order:
        raise BoundExceeded(
            f"|G| = {g.order} exceeds the enumeration bound {cfg.max_group_order}")
    found: set[tuple[int, ...]] = set()
    if cfg.order_filter is None or 1 in cfg.order_filter:
        found.add(tuple(range(g.order)))
    if g.order > 1:
        tasks = list(_tasks(g, cfg))
        if cfg.parallel and len(tasks) > 1:
            workers = cfg.workers or os.cpu_count() or 1
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for res in pool.map(_search_task, tasks, chunksize=8):
                    found.update(res)
        else:
            for t in tasks:
                found.update(_search_task(t))
    out = []
    for p in sorted(found):
        s = verify(g, p)
        if cfg.order_filter is not None and s.order not in cfg.order_filter:
            continue
        out.append(s)
    return out


# --- filtered views ---------------------------------------------------------


def kernel_equals(h: Subgroup) -> Callable[[SkewMorphism], bool]:
    target = set(h)
    return lambda s: set(kernel(s)) == target


PREDICATES: dict[str, Callable[[SkewMorphism], bool]] = {
    "smooth": is_smooth,
    "kernel-preserving": is_kernel_preserving,
    "automorphism": SkewMorphism.is_automorphism,
}


def enumerate_with_filter(
    g: FiniteGroup,
    cfg: EnumConfig | None,
    predicate: str | Callable[[SkewMorphism], bool],
) -> list[SkewMorphism]:
    if isinstance(predicate, str):
        predicate = PREDICATES[predicate]
    return [s for s in enumerate_skew_morphisms(g, cfg) if predicate(s)]
