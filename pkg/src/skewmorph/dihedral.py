"""Smooth skew-morphisms of dihedral groups: parameter families and catalog.

``D_n`` is encoded as in :func:`skewmorph.groups.dihedral`: index ``i`` is
``a^i`` and ``n + i`` is ``a^i b``. Write ``h = n / 2``. A non-automorphism
smooth skew-morphism of ``D_n`` (``n`` even) has kernel ``<a^2>``,
``<a^2, b>`` or ``<a^2, ab>``:

* kernel ``<a^2>``: family ``class1`` with parameters ``(r, s, u, e, f)``;
* kernel ``<a^2, b>``: families ``class2-I`` (``phi(a)`` a rotation) and
  ``class2-II`` (``phi(a)`` a reflection), parameters ``(r, s, u, e)``;
* kernel ``<a^2, ab>``: conjugates of the previous two by ``a -> a, b -> ab``.

For odd ``n`` every smooth skew-morphism is an automorphism.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from .groups import (
    FiniteGroup,
    GroupError,
    dihedral,
    dihedral_automorphism,
    dihedral_automorphisms,
    dihedral_index,
    dihedral_subgroup,
)
from .oracle import EnumConfig, enumerate_skew_morphisms
from .skew import SkewMorphism, conjugate, from_automorphism, is_smooth, kernel, verify


class InvalidParams(ValueError):
    pass


# --- arithmetic helpers -----------------------------------------------------


def geom(u: int, j: int, m: int) -> int:
    """``sum_{i=1..j} u^(i-1) mod m`` (0 for ``j = 0``)."""
    tot, p = 0, 1
    for _ in range(j):
        tot += p
        p = p * u % m
    return tot % m


def alt_geom(u: int, j: int, m: int) -> int:
    """``sum_{i=1..j} (-u)^(i-1) mod m``."""
    return geom(-u, j, m)


def even_geom(u: int, j: int, m: int) -> int:
    """``sum_{i=1..j/2} u^(2(i-1)) mod m`` for even ``j``."""
    return geom(u * u, j // 2, m)


def family_order(r: int, s: int, u: int, h: int) -> int:
    """Least ``k >= 1`` with ``r * geom(u, k) = s * geom(u, k) = 0 (mod h)``."""
    _check_unit(u, h)
    k, g = 1, 1 % h
    while (r * g) % h or (s * g) % h:
        k += 1
        g = (g + pow(u, k - 1, h)) % h
    return k


def reflection_family_order(r: int, s: int, u: int, h: int) -> int:
    """Least even ``j >= 2`` with ``r * alt_geom(u, j) = s * even_geom(u, j) (mod h)``.

    This is the length of the orbit of ``a`` for the family whose ``phi(a)``
    is a reflection.
    """
    _check_unit(u, h)
    j = 2
    while (r * alt_geom(u, j, h) - s * even_geom(u, j, h)) % h:
        j += 2
    return j


def _check_unit(u: int, h: int) -> None:
    # for non-units the search for the least k need not terminate
    if math.gcd(u, h) != 1:
        raise InvalidParams(f"u = {u} is not a unit mod {h}")


def _units(m: int) -> list[int]:
    return [x for x in range(m) if math.gcd(x, m) == 1]


def _involutions(k: int) -> list[int]:
    """Units ``e`` of ``Z_k`` in ``[2, k)`` with ``e^2 = 1``."""
    return [e for e in range(2, k) if math.gcd(e, k) == 1 and e * e % k == 1]


def _check_even(n: int, least: int) -> int:
    if n % 2 or n < least:
        raise InvalidParams(f"n must be even and >= {least}, got {n}")
    return n // 2


# --- parameter types --------------------------------------------------------


@dataclass(frozen=True, order=True)
class Class1Params:
    n: int
    r: int
    s: int
    u: int
    e: int
    f: int
    k: int

    def __post_init__(self):
        bad = class1_violation(self.n, self.r, self.s, self.u, self.e, self.f, self.k)
        if bad:
            raise InvalidParams(f"{self}: {bad}")

    def as_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "u": self.u, "e": self.e, "f": self.f, "k": self.k}


def class1_violation(n, r, s, u, e, f, k) -> str | None:
    """First failed condition for the kernel ``<a^2>`` family, or None."""
    h = _check_even(n, 4)
    if not (0 <= r < h and 0 <= s < h and 0 <= u < h and math.gcd(u, h) == 1):
        return "r, s must lie in Z_h and u in Z_h^*"
    if k != family_order(r, s, u, h):
        return "k is not the least k with r*sigma(u,k) = s*sigma(u,k) = 0"
    for x in (e, f):
        if not (0 <= x < k and math.gcd(x, k) == 1):
            return "e, f must be units mod k"
    if 1 % k in (e % k, f % k, e * f % k):
        return "none of e, f, ef may be 1 mod k"
    if e * e % k != 1 % k or f * f % k != 1 % k:
        return "e^2 and f^2 must be 1 mod k"
    if pow(u, e - 1, h) != 1 % h or pow(u, f - 1, h) != 1 % h:
        return "u^(e-1) and u^(f-1) must be 1 mod h"
    se, sf = geom(u, e - 1, h), geom(u, f - 1, h)
    if (r * se - (u - 2 * r - 1)) % h:
        return "r*sigma(u,e-1) != u-2r-1"
    if (s * sf) % h:
        return "s*sigma(u,f-1) != 0"
    if (r * sf + s * se - (u - 2 * r - 1)) % h:
        return "r*sigma(u,f-1) + s*sigma(u,e-1) != u-2r-1"
    return None


@dataclass(frozen=True, order=True)
class Class2IParams:
    n: int
    r: int
    s: int
    u: int
    e: int
    k: int

    def __post_init__(self):
        bad = class2a_violation(self.n, self.r, self.s, self.u, self.e, self.k)
        if bad:
            raise InvalidParams(f"{self}: {bad}")

    def as_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "u": self.u, "e": self.e, "f": None, "k": self.k}


def class2a_violation(n, r, s, u, e, k) -> str | None:
    h = _check_even(n, 4)
    if not (0 <= r < h and 0 <= s < h and 0 <= u < h and math.gcd(u, h) == 1):
        return "r, s must lie in Z_h and u in Z_h^*"
    if (u - 1 - 2 * r) % h == 0:
        return "u-1-2r must be nonzero mod h"
    if k != family_order(r, s, u, h):
        return "k is not the least k with r*sigma(u,k) = s*sigma(u,k) = 0"
    if not (0 <= e < k and math.gcd(e, k) == 1) or e % k == 1 % k or e * e % k != 1 % k:
        return "e must be a unit mod k with e != 1 and e^2 = 1"
    if pow(u, e - 1, h) != 1 % h:
        return "u^(e-1) must be 1 mod h"
    se = geom(u, e - 1, h)
    if (r * se - (u - 2 * r - 1)) % h:
        return "r*sigma(u,e-1) != u-2r-1"
    if (s * se - (-u + 2 * r + 1)) % h:
        return "s*sigma(u,e-1) != -u+2r+1"
    return None


@dataclass(frozen=True, order=True)
class Class2IIParams:
    n: int
    r: int
    s: int
    u: int
    e: int

    def __post_init__(self):
        bad = class2b_violation(self.n, self.r, self.s, self.u, self.e)
        if bad:
            raise InvalidParams(f"{self}: {bad}")

    @property
    def k(self) -> int:
        return 2 * (self.e - 1)

    def as_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "u": self.u, "e": self.e, "f": None, "k": self.k}


def class2b_violation(n, r, s, u, e) -> str | None:
    h = _check_even(n, 4)
    if not (0 <= r < h and 0 <= s < h and 0 <= u < h and math.gcd(u, h) == 1):
        return "r, s must lie in Z_h and u in Z_h^*"
    if e <= 1 or e % 2 == 0:
        return "e must be an odd integer > 1"
    if pow(u, e - 1, h) != (-1) % h:
        return "u^(e-1) must be -1 mod h"
    if (s * geom(u, e - 1, h) - (u + 2 * r + 1)) % h:
        return "s*sigma(u,e-1) != u+2r+1"
    if (r * alt_geom(u, e - 1, h) - (s * even_geom(u, e - 1, h) - 1)) % h:
        return "r*xi(u,e-1) != s*zeta(u,e-1) - 1"
    if reflection_family_order(r, s, u, h) != 2 * (e - 1):
        return "2(e-1) is not the orbit length of a"
    return None


Params = Union[Class1Params, Class2IParams, Class2IIParams]


# --- parameter scans --------------------------------------------------------


def class1_params(n: int) -> list[Class1Params]:
    """All admissible ``(r, s, u, e, f)`` for the kernel ``<a^2>`` family, ascending."""
    h = _check_even(n, 4)
    invols: dict[int, list[int]] = {}
    out = []
    for r in range(h):
        for s in range(h):
            for u in _units(h):
                k = family_order(r, s, u, h)
                if k not in invols:
                    invols[k] = _involutions(k)
                cands = [x for x in invols[k] if pow(u, x - 1, h) == 1 % h]
                for e in cands:
                    for f in cands:
                        if e != f and class1_violation(n, r, s, u, e, f, k) is None:
                            out.append(Class1Params(n, r, s, u, e, f, k))
    return out


def _check_class2_range(n: int, allow_small: bool) -> int:
    return _check_even(n, 4 if allow_small else 8)


def class2a_params(n: int, allow_small: bool = False) -> list[Class2IParams]:
    """All admissible ``(r, s, u, e)`` for family I with kernel ``<a^2, b>``."""
    h = _check_class2_range(n, allow_small)
    out = []
    for r in range(h):
        for s in range(h):
            for u in _units(h):
                k = family_order(r, s, u, h)
                for e in _involutions(k):
                    if class2a_violation(n, r, s, u, e, k) is None:
                        out.append(Class2IParams(n, r, s, u, e, k))
    return out


def class2b_params(n: int, allow_small: bool = False) -> list[Class2IIParams]:
    """All admissible ``(r, s, u, e)`` for family II; ``e`` is odd with ``3 <= e <= n + 1``.

    The upper bound comes from the order ``2(e-1)`` being at most ``|D_n| = 2n``.
    """
    h = _check_class2_range(n, allow_small)
    out = []
    for r in range(h):
        for s in range(h):
            for u in _units(h):
                for e in range(3, n + 2, 2):
                    if class2b_violation(n, r, s, u, e) is None:
                        out.append(Class2IIParams(n, r, s, u, e))
    return out


# --- builders ---------------------------------------------------------------


def _rot(n: int, j: int) -> int:
    return dihedral_index(n, j, 0)


def _refl(n: int, j: int) -> int:
    """``a^j b``."""
    return dihedral_index(n, j, 1)


def _b_times_rot(n: int, j: int) -> int:
    """``b a^j``, normalised to ``a^(-j) b``."""
    return _refl(n, -j)


def _finish(g: FiniteGroup, phi: list[int], pi: list[int], k: int) -> SkewMorphism:
    s = verify(g, phi)
    want = tuple(v % k for v in pi)
    if s.order != k or s.pi != want:
        raise AssertionError(f"family data disagree with verify(): order {s.order} vs {k}")
    return s


def class1_build(p: Class1Params, g: FiniteGroup | None = None) -> SkewMorphism:
    n, h = p.n, p.n // 2
    g = g or dihedral(n)
    r, s, u, e, f = p.r, p.s, p.u, p.e, p.f
    shift = 2 * s * geom(u, e, h)
    phi, pi = [0] * (2 * n), [0] * (2 * n)
    for i in range(h):
        phi[_rot(n, 2 * i)] = _rot(n, 2 * i * u)
        phi[_rot(n, 2 * i + 1)] = _rot(n, 2 * i * u + 2 * r + 1)
        phi[_refl(n, 2 * i)] = _refl(n, 2 * i * u + 2 * s)
        phi[_refl(n, 2 * i + 1)] = _refl(n, 2 * i * u + 2 * r + shift + 1)
        pi[_rot(n, 2 * i)] = 1
        pi[_rot(n, 2 * i + 1)] = e
        pi[_refl(n, 2 * i)] = f
        pi[_refl(n, 2 * i + 1)] = e * f
    return _finish(g, phi, pi, p.k)


def class2a_build(p: Class2IParams, g: FiniteGroup | None = None) -> SkewMorphism:
    n, h = p.n, p.n // 2
    g = g or dihedral(n)
    r, s, u, e = p.r, p.s, p.u, p.e
    phi, pi = [0] * (2 * n), [0] * (2 * n)
    for i in range(h):
        phi[_rot(n, 2 * i)] = _rot(n, 2 * i * u)
        phi[_rot(n, 2 * i + 1)] = _rot(n, 2 * i * u + 2 * r + 1)
        phi[_b_times_rot(n, 2 * i)] = _b_times_rot(n, 2 * i * u + 2 * s)
        phi[_b_times_rot(n, 2 * i + 1)] = _b_times_rot(n, 2 * r + 2 * s + 2 * i * u + 1)
        for x in (_rot(n, 2 * i + 1), _b_times_rot(n, 2 * i + 1)):
            pi[x] = e
        for x in (_rot(n, 2 * i), _b_times_rot(n, 2 * i)):
            pi[x] = 1
    return _finish(g, phi, pi, p.k)


def class2b_build(p: Class2IIParams, g: FiniteGroup | None = None) -> SkewMorphism:
    n, h = p.n, p.n // 2
    g = g or dihedral(n)
    r, s, u, e = p.r, p.s, p.u, p.e
    phi, pi = [0] * (2 * n), [0] * (2 * n)
    for i in range(h):
        phi[_rot(n, 2 * i)] = _rot(n, 2 * i * u)
        phi[_rot(n, 2 * i + 1)] = _b_times_rot(n, 2 * r - 2 * i * u + 1)
        phi[_b_times_rot(n, 2 * i)] = _b_times_rot(n, 2 * s + 2 * i * u)
        phi[_b_times_rot(n, 2 * i + 1)] = _rot(n, 2 * r - 2 * s - 2 * i * u + 1)
        for x in (_rot(n, 2 * i + 1), _b_times_rot(n, 2 * i + 1)):
            pi[x] = e
        for x in (_rot(n, 2 * i), _b_times_rot(n, 2 * i)):
            pi[x] = 1
    return _finish(g, phi, pi, p.k)


def build(p: Params, g: FiniteGroup | None = None) -> SkewMorphism:
    if isinstance(p, Class1Params):
        return class1_build(p, g)
    if isinstance(p, Class2IParams):
        return class2a_build(p, g)
    return class2b_build(p, g)


def provenance_of(p: Params) -> str:
    if isinstance(p, Class1Params):
        return "class1"
    if isinstance(p, Class2IParams):
        return "class2-I"
    return "class2-II"


def transport_kernel(s: SkewMorphism) -> SkewMorphism:
    """Move a smooth skew-morphism with kernel ``<a^2, b>`` to kernel ``<a^2, ab>``."""
    g = s.group
    if g.kind[0] != "dihedral":
        raise GroupError("transport_kernel needs a dihedral group")
    n = g.kind[1]
    if n % 2 or set(kernel(s)) != set(dihedral_subgroup(n, "a2b", g)) or not is_smooth(s):
        raise InvalidParams("expected a smooth skew-morphism with kernel <a^2, b>")
    return conjugate(s, dihedral_automorphism(n, 1, 1, g))


# --- catalog ----------------------------------------------------------------


PROVENANCES = ("automorphism", "class1", "class2-I", "class2-II", "class2-transported", "oracle")

KERNEL_NAMES = ("all", "a2", "a2b", "a2ab")


@dataclass(frozen=True)
class CatalogRecord:
    skew: SkewMorphism
    provenance: str
    params: Params | None = None
    # every parameter tuple that produced this table, first one included
    preimages: tuple = ()

    def to_dict(self) -> dict:
        g = self.skew.group
        return {
            "n": g.kind[1],
            "provenance": self.provenance,
            "params": self.params.as_dict() if self.params is not None else None,
            "perm": list(self.skew.phi),
            "order": self.skew.order,
            "pi": list(self.skew.pi),
            "kernel": sorted(kernel(self.skew)),
            "smooth": is_smooth(self.skew),
        }


@dataclass
class Catalog:
    n: int
    records: list[CatalogRecord]
    # phi tables reached by more than one parameter tuple
    collisions: list[tuple[tuple[int, ...], tuple]] = field(default_factory=list)

    def phis(self) -> set[tuple[int, ...]]:
        return {r.skew.phi for r in self.records}

    def by_provenance(self, tag: str) -> list[CatalogRecord]:
        return [r for r in self.records if r.provenance == tag]

    def flagged(self) -> list[CatalogRecord]:
        """Records found only by the oracle (small n outside the families' range)."""
        return self.by_provenance("oracle")

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.records], indent=1)


def record_from_dict(d: dict, g: FiniteGroup | None = None) -> CatalogRecord:
    """Inverse of :meth:`CatalogRecord.to_dict`; the table is re-verified."""
    n = d["n"]
    g = g or dihedral(n)
    s = verify(g, d["perm"])
    if s.order != d["order"] or list(s.pi) != list(d["pi"]):
        raise ValueError("record data disagree with the permutation")
    if d["provenance"] not in PROVENANCES:
        raise ValueError(f"unknown provenance {d['provenance']!r}")
    params = None
    if d["params"] is not None:
        params = _params_for(n, d["provenance"], d["params"], s, g)
    return CatalogRecord(s, d["provenance"], params, (params,) if params else ())


def _params_for(n: int, tag: str, q: dict, s: SkewMorphism, g: FiniteGroup) -> Params:
    """Rebuild the parameter object of a record and check it reproduces ``s``."""
    makers = {
        "class1": [lambda: Class1Params(n, q["r"], q["s"], q["u"], q["e"], q["f"], q["k"])],
        "class2-I": [lambda: Class2IParams(n, q["r"], q["s"], q["u"], q["e"], q["k"])],
        "class2-II": [lambda: Class2IIParams(n, q["r"], q["s"], q["u"], q["e"])],
    }
    makers["class2-transported"] = makers["class2-I"] + makers["class2-II"]
    for make in makers.get(tag, []):
        try:
            p = make()
        except InvalidParams:
            continue
        t = build(p, g)
        if tag == "class2-transported":
            t = transport_kernel(t)
        if t.phi == s.phi:
            return p
    raise ValueError(f"parameters {q} do not produce this {tag} record")


def catalog_from_json(text: str) -> list[CatalogRecord]:
    groups: dict[int, FiniteGroup] = {}
    out = []
    for d in json.loads(text):
        g = groups.setdefault(d["n"], dihedral(d["n"]))
        out.append(record_from_dict(d, g))
    return out


def kernel_name(s: SkewMorphism) -> str:
    """One of ``all``, ``a2``, ``a2b``, ``a2ab`` or ``other``."""
    g = s.group
    n = g.kind[1]
    ker = set(kernel(s))
    for name in KERNEL_NAMES:
        if name != "all" and n % 2:
            continue
        if ker == set(dihedral_subgroup(n, name, g)):
            return name
    return "other"


def family_records(n: int, g: FiniteGroup | None = None, allow_small: bool = True):
    """``(provenance, params, skew)`` for every family member and its transport."""
    g = g or dihedral(n)
    out = []
    for p in class1_params(n):
        out.append(("class1", p, class1_build(p, g)))
    if n >= 8 or allow_small:
        for p in class2a_params(n, allow_small=True) + class2b_params(n, allow_small=True):
            s = build(p, g)
            out.append((provenance_of(p), p, s))
            out.append(("class2-transported", p, transport_kernel(s)))
    return out


def classify_smooth(n: int, cfg: EnumConfig | None = None) -> Catalog:
    """Catalog of the smooth skew-morphisms of ``D_n`` given by the families.

    For ``n`` in ``{4, 6}``, below the range of the kernel ``<a^2, b>``
    families, the oracle's smooth set is merged in and extra maps are tagged
    ``oracle``.
    """
    if n < 3:
        raise InvalidParams(f"n must be >= 3, got {n}")
    g = dihedral(n)
    entries: dict[tuple[int, ...], list] = {}
    for gamma in dihedral_automorphisms(n, g):
        s = from_automorphism(gamma)
        entries.setdefault(s.phi, ["automorphism", s, []])
    if n % 2 == 0:
        for tag, p, s in family_records(n, g):
            entry = entries.setdefault(s.phi, [tag, s, []])
            entry[2].append(p)
        if n < 8:
            cfg = cfg or EnumConfig(max_group_order=max(2 * n, 16))
            for s in enumerate_skew_morphisms(g, cfg):
                if is_smooth(s):
                    entries.setdefault(s.phi, ["oracle", s, []])
    records, collisions = [], []
    for phi in sorted(entries):
        tag, s, params = entries[phi]
        records.append(CatalogRecord(s, tag, params[0] if params else None, tuple(params)))
        if len(params) > 1:
            collisions.append((phi, tuple(params)))
    return Catalog(n, records, collisions)


# --- cross-check against the oracle -----------------------------------------


@dataclass
class CrossCheck:
    n: int
    passed: bool
    # kernel name -> (catalog tables, oracle tables)
    parts: dict[str, tuple[frozenset, frozenset]]

    def missing(self) -> set:
        """Oracle maps absent from the catalog."""
        return set().union(*(o - c for c, o in self.parts.values()))

    def extra(self) -> set:
        """Catalog maps the oracle does not produce."""
        return set().union(*(c - o for c, o in self.parts.values()))


_EXPECTED_KERNEL = {
    "automorphism": "all",
    "class1": "a2",
    "class2-I": "a2b",
    "class2-II": "a2b",
    "class2-transported": "a2ab",
}


def partition(skews: Iterable[SkewMorphism]) -> dict[str, frozenset]:
    parts: dict[str, set] = {}
    for s in skews:
        parts.setdefault(kernel_name(s), set()).add(s.phi)
    return {k: frozenset(v) for k, v in parts.items()}


def cross_check(n: int, cfg: EnumConfig | None = None, catalog: Catalog | None = None) -> CrossCheck:
    """Compare the catalog with the oracle's smooth set, kernel by kernel.

    The catalog side of each part only uses records whose provenance
    predicts that kernel, so a family member with the wrong kernel also
    counts as a failure.
    """
    g = dihedral(n)
    cfg = cfg or EnumConfig(max_group_order=max(2 * n, 16))
    oracle = partition(s for s in enumerate_skew_morphisms(g, cfg) if is_smooth(s))
    catalog = catalog or classify_smooth(n, cfg)
    cat: dict[str, set] = {}
    for r in catalog.records:
        name = _EXPECTED_KERNEL.get(r.provenance) or kernel_name(r.skew)
        cat.setdefault(name, set()).add(r.skew.phi)
        if kernel_name(r.skew) != name:
            cat.setdefault("misplaced", set()).add(r.skew.phi)
    names = sorted(set(oracle) | set(cat))
    parts = {k: (frozenset(cat.get(k, ())), oracle.get(k, frozenset())) for k in names}
    passed = all(c == o for c, o in parts.values())
    return CrossCheck(n, passed, parts)
