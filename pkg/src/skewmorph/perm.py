"""Permutations stored as image tuples, plus cycle-notation I/O.

A permutation of ``[0, N)`` is a tuple ``p`` with ``p[x]`` the image of ``x``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

Perm = tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(size: int) -> Perm:
    return tuple(range(size))


def is_bijection(p: Sequence[int]) -> bool:
    n = len(p)
    return sorted(p) == list(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p o q``, i.e. ``x -> p[q[x]]``."""
    return tuple(p[q[x]] for x in range(len(q)))


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def power(p: Sequence[int], k: int) -> Perm:
    """``p**k`` for any integer ``k`` (negative powers allowed)."""
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = tuple(p)
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p: Sequence[int]) -> list[list[int]]:
    """Cycle decomposition, each cycle starting at its least element, sorted by it."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(cyc)
    return out


def order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if len(p) else 1


def from_cycles(cycs: Iterable[Sequence[int]], size: int) -> Perm:
    """Build a permutation of ``[0, size)`` from disjoint cycles; missing points are fixed."""
    img = list(range(size))
    seen: set[int] = set()
    for cyc in cycs:
        for x in cyc:
            if not 0 <= x < size:
                raise ValueError(f"point {x} outside [0, {size})")
            if x in seen:
                raise ValueError(f"point {x} appears twice")
            seen.add(x)
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def parse_cycles(text: str, size: int) -> Perm:
    """Parse cycle notation such as ``(0)(1, 2 ,4)(3,5)``.

    Whitespace is ignored and omitted points are fixed. Raises ``ValueError``
    on malformed input or on points repeated across cycles.
    """
    compact = re.sub(r"\s+", "", text)
    if compact in ("", "()"):
        return identity(size)
    if _CYCLE_RE.sub("", compact):
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycs = []
    for body in _CYCLE_RE.findall(compact):
        if not body:
            continue
        try:
            cycs.append([int(tok) for tok in body.split(",")])
        except ValueError:
            raise ValueError(f"bad cycle ({body})") from None
    return from_cycles(cycs, size)


def format_cycles(p: Sequence[int]) -> str:
    """Inverse of :func:`parse_cycles`; fixed points are printed."""
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles(p))
