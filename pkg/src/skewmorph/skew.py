"""Skew-morphisms of finite groups and their invariants.

A skew-morphism of ``A`` is a permutation ``phi`` fixing the identity together
with a power function ``pi`` such that ``phi(xy) = phi(x) phi^pi(x)(y)``.
``pi`` is stored as canonical residues modulo ``n = |phi|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import perm as P
from .groups import (
    FiniteGroup,
    GroupError,
    GroupMap,
    Subgroup,
    is_normal,
    make_subgroup,
    quotient,
)


class NotSkewMorphism(ValueError):
    """Raised when a permutation fails the defining identity.

    ``x`` is the offending element; ``y`` (when known) is the first partner
    for which the identity breaks under the best candidate exponent.
    """

    def __init__(self, message: str, x: int, y: int | None = None):
        super().__init__(message)
        self.x = x
        self.y = y


@dataclass(frozen=True, eq=False)
class SkewMorphism:
    group: FiniteGroup
    phi: tuple[int, ...]
    order: int
    pi: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewMorphism):
            return NotImplemented
        return self.phi == other.phi and self.pi == other.pi and self.group == other.group

    def __hash__(self) -> int:
        return hash(self.phi)

    def __repr__(self) -> str:
        return f"SkewMorphism({self.group.name}, {P.format_cycles(self.phi)})"

    def __call__(self, x: int) -> int:
        return self.phi[x]

    @cached_property
    def powers(self) -> tuple[tuple[int, ...], ...]:
        """``powers[j][y] == phi^j(y)`` for ``0 <= j < order``."""
        out = [P.identity(self.group.order)]
        for _ in range(self.order - 1):
            out.append(tuple(self.phi[v] for v in out[-1]))
        return tuple(out)

    def apply(self, x: int, k: int) -> int:
        return self.powers[k % self.order][x]

    def is_automorphism(self) -> bool:
        return all(p == 1 % self.order for p in self.pi)

    def is_identity(self) -> bool:
        return self.order == 1

    def cycle_notation(self) -> str:
        return P.format_cycles(self.phi)


def _power_table(p: Sequence[int], n: int) -> list[tuple[int, ...]]:
    table = [P.identity(len(p))]
    for _ in range(n - 1):
        table.append(tuple(p[v] for v in table[-1]))
    return table


def verify(g: FiniteGroup, p: Sequence[int]) -> SkewMorphism:
    """Check whether ``p`` is a skew-morphism of ``g`` and derive its power function.

    Raises ``ValueError`` if ``p`` is not a bijection of the right size and
    :class:`NotSkewMorphism` (with a witness) if the defining identity fails.
    """
    p = tuple(p)
    size = g.order
    if len(p) != size or not P.is_bijection(p):
        raise ValueError("not a bijection on the group elements")
    if p[0] != 0:
        raise NotSkewMorphism("phi does not fix the identity", 0)
    n = P.order(p)
    pw = _power_table(p, n)
    mul = g.mul
    pi = []
    for x in g.elements:
        row, px = mul[x], mul[p[x]]
        best_y, best_j = -1, 0
        for j in range(n):
            pj = pw[j]
            y = next((y for y in range(size) if p[row[y]] != px[pj[y]]), None)
            if y is None:
                pi.append(j)
                break
            if y > best_y:
                best_y, best_j = y, j
        else:
            raise NotSkewMorphism(
                f"no exponent j works for x={x} (best j={best_j} fails at y={best_y})",
                x, best_y)
    return SkewMorphism(g, p, n, tuple(pi))


def is_skew_morphism(g: FiniteGroup, p: Sequence[int]) -> bool:
    try:
        verify(g, p)
    except ValueError:
        return False
    return True


def identity_skew(g: FiniteGroup) -> SkewMorphism:
    return SkewMorphism(g, P.identity(g.order), 1, (0,) * g.order)


def from_automorphism(gamma: GroupMap) -> SkewMorphism:
    if not gamma.is_automorphism():
        raise GroupError("not an automorphism")
    n = P.order(gamma.images)
    return SkewMorphism(gamma.source, gamma.images, n, (1 % n,) * gamma.source.order)


# --- invariants -------------------------------------------------------------


def sigma(s: SkewMorphism, x: int, k: int) -> int:
    """``sum_{i=1..k} pi(phi^(i-1)(x))`` reduced mod the order."""
    total, y = 0, x
    for _ in range(k):
        total += s.pi[y]
        y = s.phi[y]
    return total % s.order


@dataclass(frozen=True)
class OrbitPartition:
    cycles: tuple[tuple[int, ...], ...]

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def orbit_of(self, x: int) -> tuple[int, ...]:
        return next(c for c in self.cycles if x in c)


def orbits(s: SkewMorphism) -> OrbitPartition:
    return OrbitPartition(tuple(tuple(c) for c in P.cycles(s.phi)))


def orbit_lengths(s: SkewMorphism) -> list[int]:
    """``orbit_lengths(s)[x] == |O_x|``."""
    out = [0] * s.group.order
    for c in P.cycles(s.phi):
        for x in c:
            out[x] = len(c)
    return out


def kernel(s: SkewMorphism) -> Subgroup:
    one = 1 % s.order
    return make_subgroup(s.group, (x for x, p in enumerate(s.pi) if p == one))


def fix(s: SkewMorphism) -> Subgroup:
    return make_subgroup(s.group, (x for x, y in enumerate(s.phi) if x == y))


def core(s: SkewMorphism) -> Subgroup:
    """Intersection of the translates ``phi^i(Ker)``, ``i = 1..n``."""
    ker = set(kernel(s))
    common = set(ker)
    for i in range(1, s.order + 1):
        common &= {s.apply(x, i) for x in ker}
    h = make_subgroup(s.group, common)
    assert is_invariant(s, h) and is_normal(s.group, h)
    return h


def _prime_factors(k: int) -> set[int]:
    out, d = set(), 2
    while d * d <= k:
        while k % d == 0:
            out.add(d)
            k //= d
        d += 1
    if k > 1:
        out.add(k)
    return out


def is_pi_number(k: int, primes: Iterable[int]) -> bool:
    return _prime_factors(k) <= set(primes)


def orbit_pi_subgroup(s: SkewMorphism, primes: Iterable[int]) -> Subgroup:
    """Elements whose orbit length has all prime factors in ``primes``."""
    primes = set(primes)
    lens = orbit_lengths(s)
    return make_subgroup(s.group, (x for x in s.group.elements if is_pi_number(lens[x], primes)))


def smooth_subgroup(s: SkewMorphism) -> Subgroup:
    c = core(s)
    g = s.group
    return make_subgroup(g, (x for x in g.elements if g.mul[s.phi[x]][g.inv[x]] in c))


def is_smooth(s: SkewMorphism) -> bool:
    return all(s.pi[s.phi[x]] == s.pi[x] for x in s.group.elements)


def is_invariant(s: SkewMorphism, subset: Iterable[int]) -> bool:
    subset = set(subset)
    return {s.phi[x] for x in subset} == subset


def is_kernel_preserving(s: SkewMorphism) -> bool:
    return is_invariant(s, kernel(s))


def periodicity(s: SkewMorphism) -> int:
    """Least ``p >= 1`` with ``pi(phi^p(x)) == pi(x)`` for every ``x``."""
    for p in range(1, s.order + 1):
        pp = s.powers[p % s.order]
        if all(s.pi[pp[x]] == s.pi[x] for x in s.group.elements):
            return p
    raise AssertionError("unreachable: p = order always works")


# --- constructions ----------------------------------------------------------


def power(s: SkewMorphism, k: int) -> SkewMorphism:
    """``phi^k`` as a skew-morphism, via the congruences ``k t = sigma(x, k) (mod n)``.

    Raises :class:`NotSkewMorphism` naming the first ``x`` whose congruence has
    no solution.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = s.order
    d = math.gcd(n, k)
    m = n // d
    inv_k = pow(k // d, -1, m) if m > 1 else 0
    pi = []
    for x in s.group.elements:
        rhs = sigma(s, x, k)
        if rhs % d:
            raise NotSkewMorphism(f"k*t = {rhs} (mod {n}) unsolvable for x={x}", x)
        pi.append((rhs // d) * inv_k % m)
    return SkewMorphism(s.group, s.powers[k % n], m, tuple(pi))


def conjugate(s: SkewMorphism, gamma: GroupMap) -> SkewMorphism:
    """``gamma^-1 o phi o gamma`` with power function ``pi o gamma``."""
    if gamma.source != s.group or not gamma.is_automorphism():
        raise GroupError("gamma is not an automorphism of the group")
    ginv = gamma.inverse().images
    g = gamma.images
    phi = tuple(ginv[s.phi[g[x]]] for x in s.group.elements)
    pi = tuple(s.pi[g[x]] for x in s.group.elements)
    return SkewMorphism(s.group, phi, s.order, pi)


def quotient_skew(s: SkewMorphism, nsub: Subgroup) -> SkewMorphism:
    """Induced skew-morphism on ``A / nsub`` (cosets labelled as in :func:`quotient`)."""
    if not is_invariant(s, nsub):
        raise GroupError("subgroup is not phi-invariant")
    if not is_normal(s.group, nsub):
        raise GroupError("subgroup is not normal")
    q, proj = quotient(s.group, nsub)
    img = [0] * q.order
    for x in s.group.elements:
        img[proj(x)] = proj(s.phi[x])
    return verify(q, img)


def is_covering(s1: SkewMorphism, s2: SkewMorphism, theta: GroupMap) -> bool:
    """Whether ``theta o phi1 == phi2 o theta`` for an epimorphism ``theta``."""
    if theta.source != s1.group or theta.target != s2.group or not theta.is_surjective():
        raise GroupError("theta is not an epimorphism between the two groups")
    return all(theta(s1.phi[x]) == s2.phi[theta(x)] for x in s1.group.elements)
