"""Structural facts about skew-morphisms, checked one map at a time.

Each check takes a skew-morphism and a :class:`GroupContext` and returns a
list of human-readable violations (empty when the property holds). The
checks are meant to be run over complete oracle output, e.g.::

    ctx = GroupContext.build(g)
    report = check_all(ctx, enumerate_skew_morphisms(g))
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .groups import (
    FiniteGroup,
    GroupError,
    GroupMap,
    Subgroup,
    all_subgroups,
    automorphisms,
    closure,
    dihedral_subgroup,
    is_normal,
    quotient,
)
from .skew import (
    NotSkewMorphism,
    SkewMorphism,
    conjugate,
    core,
    fix,
    is_invariant,
    is_kernel_preserving,
    is_smooth,
    kernel,
    orbit_lengths,
    orbit_pi_subgroup,
    periodicity,
    power,
    quotient_skew,
    sigma,
    smooth_subgroup,
)


@dataclass
class GroupContext:
    """Per-group data shared by the checks."""

    group: FiniteGroup
    subgroups: list[Subgroup]
    auts: list[GroupMap]
    # phi tables of the complete skew-morphism list, when known
    known: frozenset = frozenset()

    @classmethod
    def build(cls, g: FiniteGroup, skews: Iterable[SkewMorphism] = ()) -> "GroupContext":
        return cls(g, all_subgroups(g), automorphisms(g, bound=max(g.order, 24)),
                   frozenset(s.phi for s in skews))

    @cached_property
    def normal(self) -> list[Subgroup]:
        return [h for h in self.subgroups if is_normal(self.group, h)]

    @cached_property
    def generating_pairs(self) -> list[tuple[int, int]]:
        g = self.group
        return [(x, y) for x in g.elements for y in g.elements
                if x <= y and len(closure(g, [x, y])) == g.order]


Check = Callable[[SkewMorphism, GroupContext], list[str]]


def _orbit(s: SkewMorphism, x: int) -> list[int]:
    out = [x]
    y = s.phi[x]
    while y != x:
        out.append(y)
        y = s.phi[y]
    return out


# --- basic identities -------------------------------------------------------


def check_power_identity(s, ctx) -> list[str]:
    """``phi^k(xy) = phi^k(x) phi^sigma(x,k)(y)`` for ``1 <= k <= n``."""
    g, out = s.group, []
    for k in range(1, s.order + 1):
        pk = s.powers[k % s.order]
        for x in g.elements:
            sk = s.powers[sigma(s, x, k)]
            row, prow = g.mul[x], g.mul[pk[x]]
            for y in g.elements:
                if pk[row[y]] != prow[sk[y]]:
                    out.append(f"k={k} x={x} y={y}")
                    break
    return out


def check_power_function_rule(s, ctx) -> list[str]:
    """``pi(xy) = sigma(y, pi(x))``."""
    g = s.group
    return [f"x={x} y={y}" for x in g.elements for y in g.elements
            if s.pi[g.mul[x][y]] != sigma(s, y, s.pi[x])]


def check_equal_pi_cosets(s, ctx) -> list[str]:
    """``pi(x) = pi(y)`` exactly when ``x`` and ``y`` share a right coset of the kernel."""
    g = s.group
    ker = set(kernel(s))
    return [f"x={x} y={y}" for x in g.elements for y in g.elements
            if (s.pi[x] == s.pi[y]) != (g.mul[x][g.inv[y]] in ker)]


def check_order_bound(s, ctx) -> list[str]:
    """The order is at most ``|A|`` and the kernel is non-trivial."""
    out = []
    if s.order > s.group.order:
        out.append(f"order {s.order} > |A|")
    if s.group.order > 1 and len(kernel(s)) == 1:
        out.append("trivial kernel")
    return out


def check_inverse_orbits(s, ctx) -> list[str]:
    g = s.group
    return [f"x={x}" for x in g.elements
            if set(_orbit(s, g.inv[x])) != {g.inv[y] for y in _orbit(s, x)}]


def check_orbit_sum(s, ctx) -> list[str]:
    """``sigma(x, |O_x|) = 0 mod |O_x|`` and ``sigma(x, n) = 0 mod n``."""
    lens = orbit_lengths(s)
    out = []
    for x in s.group.elements:
        m = lens[x]
        if sigma(s, x, m) % m or sigma(s, x, s.order) % s.order:
            out.append(f"x={x}")
    return out


def check_orbit_lcm(s, ctx) -> list[str]:
    """``|O_xy|`` divides ``lcm(|O_x|, |O_y|)``."""
    g = s.group
    lens = orbit_lengths(s)
    return [f"x={x} y={y}" for x in g.elements for y in g.elements
            if math.lcm(lens[x], lens[y]) % lens[g.mul[x][y]]]


def rebuild_from_orbits(s: SkewMorphism, gens: Iterable[int]) -> tuple[list[int], list[int]]:
    """Recover ``phi`` and ``pi`` everywhere from their values on the generator orbits."""
    g = s.group
    phi = [-1] * g.order
    pi = [-1] * g.order
    phi[0], pi[0] = 0, 1 % s.order
    gens = list(gens)
    for x in gens:
        for y in _orbit(s, x):
            phi[y], pi[y] = s.phi[y], s.pi[y]
    orbit_of = {x: _orbit(s, x) for x in gens}
    frontier = [x for x in g.elements if phi[x] >= 0]
    while frontier:
        nxt = []
        for h in frontier:
            for x in gens:
                z = g.mul[h][x]
                if phi[z] >= 0:
                    continue
                orb = orbit_of[x]
                phi[z] = g.mul[phi[h]][orb[pi[h] % len(orb)]]
                pi[z] = sum(pi[orb[i % len(orb)]] for i in range(pi[h])) % s.order
                nxt.append(z)
        frontier = nxt
    return phi, pi


def check_generating_orbits(s, ctx) -> list[str]:
    """The order is the lcm of the orbit lengths of any generating set, and the
    orbits of the group's generators determine the whole map."""
    out = []
    lens = orbit_lengths(s)
    gens = ctx.group.generators
    if gens and math.lcm(*(lens[x] for x in gens)) != s.order:
        out.append("generator orbits do not give the order")
    for x, y in ctx.generating_pairs:
        if math.lcm(lens[x], lens[y]) != s.order:
            out.append(f"pair ({x},{y})")
    phi, pi = rebuild_from_orbits(s, gens)
    if tuple(phi) != s.phi or tuple(pi) != s.pi:
        out.append("rebuild from generator orbits differs")
    return out


# --- group-specific -----------------------------------------------------------


def check_dihedral_kernel(s, ctx) -> list[str]:
    """In ``D_n`` the kernel is never the rotation subgroup."""
    g = s.group
    if g.kind[0] != "dihedral":
        return []
    if set(kernel(s)) == set(dihedral_subgroup(g.kind[1], "a", g)):
        return ["kernel is <a>"]
    return []


def check_abelian_kernel_preserving(s, ctx) -> list[str]:
    if s.group.is_abelian and not is_kernel_preserving(s):
        return ["abelian group but kernel not preserved"]
    return []


# --- invariant subgroups ------------------------------------------------------


def check_invariant_closure(s, ctx) -> list[str]:
    """Intersections and products of invariant subgroups are invariant."""
    g = s.group
    inv = [set(h) for h in ctx.subgroups if is_invariant(s, h)]
    out = []
    for m, n in itertools.combinations(inv, 2):
        if not is_invariant(s, m & n):
            out.append(f"intersection of {sorted(m)} and {sorted(n)}")
        prod = {g.mul[x][y] for x in m for y in n}
        if not is_invariant(s, prod):
            out.append(f"product of {sorted(m)} and {sorted(n)}")
    return out


def _primes(k: int) -> list[int]:
    return [p for p in range(2, k + 1) if k % p == 0 and all(p % d for d in range(2, p))]


def check_orbit_pi_subgroups(s, ctx) -> list[str]:
    """Elements whose orbit length only involves given primes form an invariant subgroup."""
    out = []
    ps = _primes(max(orbit_lengths(s)))
    fx = set(fix(s))
    for r in range(len(ps) + 1):
        for chosen in itertools.combinations(ps, r):
            try:
                h = orbit_pi_subgroup(s, chosen)
            except GroupError:
                out.append(f"primes {chosen}: not a subgroup")
                continue
            if not is_invariant(s, h) or not fx <= set(h):
                out.append(f"primes {chosen}")
    return out


def check_smooth_equivalence(s, ctx) -> list[str]:
    """Membership of ``x`` in the smooth subgroup agrees with ``pi`` being
    constant on the orbit of ``x`` and with ``x`` being fixed in ``A / Core``."""
    g = s.group
    c = core(s)
    cset = set(c)
    q, proj = quotient(g, c)
    bar = quotient_skew(s, c)
    out = []
    for x in g.elements:
        a = g.mul[s.phi[x]][g.inv[x]] in cset
        b = all(s.pi[y] == s.pi[x] for y in _orbit(s, x))
        c3 = bar.phi[proj(x)] == proj(x)
        if not a == b == c3:
            out.append(f"x={x}: {a} {b} {c3}")
    sm = smooth_subgroup(s)
    if not is_invariant(s, sm):
        out.append("smooth subgroup not invariant")
    if {proj(x) for x in sm} != {y for y in q.elements if bar.phi[y] == y}:
        out.append("image of smooth subgroup differs from fixed points of the quotient")
    return out


# --- kernel-preserving and smooth maps -----------------------------------------


def check_periodicity_quotient(s, ctx) -> list[str]:
    """For kernel-preserving maps, periodicity and the quotient by the kernel."""
    if not is_kernel_preserving(s):
        return []
    g, n = s.group, s.order
    ker = kernel(s)
    out = []
    if not is_normal(g, ker):
        return ["kernel not normal"]
    bar = quotient_skew(s, ker)
    m = bar.order
    if periodicity(s) != m or n % m:
        out.append(f"periodicity {periodicity(s)} vs quotient order {m}")
    try:
        mu = power(s, m)
    except NotSkewMorphism:
        return out + [f"phi^{m} is not a skew-morphism"]
    if not s.is_identity() and mu.is_identity():
        out.append(f"phi^{m} is trivial")
    if not is_smooth(mu) or mu.order != n // m:
        out.append(f"phi^{m} not smooth of order n/m")
    if mu.is_automorphism() != all(sigma(s, x, m) == m % n for x in g.elements):
        out.append("automorphism test for phi^m disagrees")
    _, proj = quotient(g, ker)
    if is_smooth(bar) != all((s.pi[s.phi[x]] - s.pi[x]) % m == 0 for x in g.elements):
        out.append("smoothness test for the quotient disagrees")
    bar_ker = set(kernel(bar))
    if any(proj(x) in bar_ker and (s.pi[x] - 1) % m for x in g.elements):
        out.append("quotient kernel element with pi != 1 mod m")
    if bar.is_automorphism() != all((p - 1) % m == 0 for p in s.pi):
        out.append("automorphism test for the quotient disagrees")
    return out


def check_smooth_structure(s, ctx) -> list[str]:
    """For smooth maps: ``pi`` is a homomorphism into the units, and
    quotients, powers and conjugates stay smooth."""
    if not is_smooth(s):
        return []
    g, n = s.group, s.order
    out = []
    if any(math.gcd(p, n) != 1 for p in s.pi):
        out.append("pi takes a non-unit value")
    if any(s.pi[g.mul[x][y]] != s.pi[x] * s.pi[y] % n for x in g.elements for y in g.elements):
        out.append("pi is not multiplicative")
    ker = set(kernel(s))
    for h in ctx.normal:
        if not is_invariant(s, h):
            continue
        bar = quotient_skew(s, h)
        if not is_smooth(bar):
            out.append(f"quotient by {sorted(h)} not smooth")
        if set(h) == ker and not bar.is_identity():
            out.append("quotient by the kernel is not the identity")
    for k in range(1, n + 1):
        try:
            if not is_smooth(power(s, k)):
                out.append(f"phi^{k} not smooth")
        except NotSkewMorphism:
            out.append(f"phi^{k} not a skew-morphism")
    for gamma in ctx.auts:
        if not is_smooth(conjugate(s, gamma)):
            out.append(f"conjugate by {gamma.images} not smooth")
    return out


# --- closure of the complete list ----------------------------------------------


def check_conjugation_closure(s, ctx) -> list[str]:
    if not ctx.known:
        return []
    return [f"conjugate by {gamma.images} missing" for gamma in ctx.auts
            if conjugate(s, gamma).phi not in ctx.known]


def check_power_closure(s, ctx) -> list[str]:
    if not ctx.known:
        return []
    out = []
    for k in range(1, s.order + 1):
        try:
            mu = power(s, k)
        except NotSkewMorphism:
            continue
        if mu.phi not in ctx.known:
            out.append(f"phi^{k} missing")
    return out


CHECKS: dict[str, Check] = {
    "power-identity": check_power_identity,
    "power-function-rule": check_power_function_rule,
    "equal-pi-cosets": check_equal_pi_cosets,
    "order-bound": check_order_bound,
    "inverse-orbits": check_inverse_orbits,
    "orbit-sum": check_orbit_sum,
    "orbit-lcm": check_orbit_lcm,
    "generating-orbits": check_generating_orbits,
    "dihedral-kernel": check_dihedral_kernel,
    "abelian-kernel-preserving": check_abelian_kernel_preserving,
    "invariant-closure": check_invariant_closure,
    "orbit-pi-subgroups": check_orbit_pi_subgroups,
    "smooth-equivalence": check_smooth_equivalence,
    "periodicity-quotient": check_periodicity_quotient,
    "smooth-structure": check_smooth_structure,
    "conjugation-closure": check_conjugation_closure,
    "power-closure": check_power_closure,
}


@dataclass
class PropertyReport:
    group: str
    checked: int
    violations: dict[str, list[str]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.violations.values())


def check_all(ctx: GroupContext, skews: Iterable[SkewMorphism],
              names: Iterable[str] | None = None) -> PropertyReport:
    names = list(names or CHECKS)
    skews = list(skews)
    report = PropertyReport(ctx.group.name, len(skews), {k: [] for k in names})
    for s in skews:
        for name in names:
            report.violations[name].extend(f"{s.cycle_notation()}: {v}" for v in CHECKS[name](s, ctx))
    return report
