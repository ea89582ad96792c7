import itertools

import pytest

from skewmorph.dihedral import (
    Class1Params,
    build,
    class1_params,
    class2a_params,
    class2b_params,
    transport_kernel,
)
from skewmorph.groups import (
    BoundExceeded,
    automorphisms,
    cyclic,
    dihedral,
    dihedral_subgroup,
    from_table,
    make_group,
    make_subgroup,
)
from skewmorph.oracle import EnumConfig, enumerate_skew_morphisms, enumerate_with_filter, kernel_equals
from skewmorph.skew import NotSkewMorphism, conjugate, is_kernel_preserving, is_smooth, power, verify

from conftest import Z18_ORDER6, Z18_ORDER9, oracle
from skewmorph import perm as P


def brute_force(g):
    """Every permutation fixing 0 that satisfies the defining identity for some exponent.

    Written straight from the definition; shares no code with the library search.
    """
    N, m = g.order, g.mul
    found = []
    for rest in itertools.permutations(range(1, N)):
        p = (0,) + rest
        pw = [tuple(range(N))]
        while True:
            nxt = tuple(p[v] for v in pw[-1])
            if nxt == pw[0]:
                break
            pw.append(nxt)
        ok = True
        for x in range(1, N):
            if not any(all(p[m[x][y]] == m[p[x]][q[y]] for y in range(N)) for q in pw):
                ok = False
                break
        if ok:
            found.append(p)
    return found


def direct_product(a, b):
    pairs = [(i, j) for i in range(a.order) for j in range(b.order)]
    idx = {p: k for k, p in enumerate(pairs)}
    return from_table([[idx[(a.mul[i][k], b.mul[j][l])] for (k, l) in pairs] for (i, j) in pairs])


def quaternion():
    # (sign, unit) with unit in 1, i, j, k
    table = {"i": {"i": (-1, "1"), "j": (1, "k"), "k": (-1, "j")},
             "j": {"i": (-1, "k"), "j": (-1, "1"), "k": (1, "i")},
             "k": {"i": (1, "j"), "j": (-1, "i"), "k": (-1, "1")}}

    def unit_mul(u, v):
        if u == "1":
            return 1, v
        if v == "1":
            return 1, u
        return table[u][v]

    els = [(s, u) for u in "1ijk" for s in (1, -1)]
    idx = {e: k for k, e in enumerate(els)}
    rows = []
    for s1, u1 in els:
        row = []
        for s2, u2 in els:
            s, u = unit_mul(u1, u2)
            row.append(idx[(s1 * s2 * s, u)])
        rows.append(row)
    return from_table(rows)


SMALL = {
    "cyclic:1": cyclic(1), "cyclic:2": cyclic(2), "cyclic:3": cyclic(3),
    "cyclic:4": cyclic(4), "cyclic:5": cyclic(5), "cyclic:6": cyclic(6),
    "cyclic:7": cyclic(7), "cyclic:8": cyclic(8),
    "dihedral:3": dihedral(3), "dihedral:4": dihedral(4),
    "z2xz2": direct_product(cyclic(2), cyclic(2)),
    "z2xz4": direct_product(cyclic(2), cyclic(4)),
    "z2^3": direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2))),
    "q8": quaternion(),
}


@pytest.mark.parametrize("name", list(SMALL))
def test_matches_brute_force(name):
    g = SMALL[name]
    want = brute_force(g)
    got = enumerate_skew_morphisms(g)
    assert [s.phi for s in got] == sorted(want)


def test_known_small_counts():
    # counts from the brute-force runs above, pinned as a regression net
    counts = {name: len(enumerate_skew_morphisms(g)) for name, g in SMALL.items()}
    assert counts == {"cyclic:1": 1, "cyclic:2": 1, "cyclic:3": 2, "cyclic:4": 2,
                      "cyclic:5": 4, "cyclic:6": 4, "cyclic:7": 6, "cyclic:8": 6,
                      "dihedral:3": 12, "dihedral:4": 20, "z2xz2": 6, "z2xz4": 16,
                      "z2^3": 168, "q8": 24}


def test_trivial_group():
    out = enumerate_skew_morphisms(cyclic(1))
    assert len(out) == 1 and out[0].is_identity()


def test_bound():
    with pytest.raises(BoundExceeded):
        enumerate_skew_morphisms(cyclic(18))
    with pytest.raises(ValueError):
        EnumConfig(max_group_order=0)


def test_z18_with_raised_bound_contains_examples():
    got = {s.phi for s in oracle("cyclic:18", 18)}
    for cyc in (Z18_ORDER9, Z18_ORDER6):
        assert P.parse_cycles(cyc, 18) in got


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_cyclic_kernel_preserving(p):
    out = oracle(f"cyclic:{p}")
    assert len(out) == p - 1
    for s in out:
        assert verify(s.group, s.phi) == s
        assert is_kernel_preserving(s)


SPECS = [f"cyclic:{n}" for n in range(1, 17)] + [f"dihedral:{n}" for n in range(3, 9)]


@pytest.mark.parametrize("spec", SPECS)
def test_output_sorted_unique_verified(spec):
    out = oracle(spec)
    phis = [s.phi for s in out]
    assert phis == sorted(set(phis))
    for s in out:
        assert verify(s.group, s.phi) == s


@pytest.mark.parametrize("spec", SPECS)
def test_closed_under_conjugation(spec):
    out = oracle(spec)
    phis = {s.phi for s in out}
    for gamma in automorphisms(out[0].group):
        for s in out:
            assert conjugate(s, gamma).phi in phis


@pytest.mark.parametrize("spec", SPECS)
def test_closed_under_admissible_powers(spec):
    out = oracle(spec)
    phis = {s.phi for s in out}
    for s in out:
        for k in range(1, s.order + 1):
            try:
                assert power(s, k).phi in phis
            except NotSkewMorphism:
                pass


@pytest.mark.parametrize("n", [4, 6, 8])
def test_contains_family_builds(n):
    phis = {s.phi for s in oracle(f"dihedral:{n}")}
    g = dihedral(n)
    for p in class1_params(n) + class2a_params(n, allow_small=True) + class2b_params(n, allow_small=True):
        s = build(p, g)
        assert s.phi in phis
        if not isinstance(p, Class1Params):
            assert transport_kernel(s).phi in phis


def test_order_filter():
    g = dihedral(4)
    full = enumerate_skew_morphisms(g)
    some = enumerate_skew_morphisms(g, EnumConfig(order_filter=frozenset({1, 4})))
    assert [s.phi for s in some] == [s.phi for s in full if s.order in (1, 4)]


def test_parallel_matches_serial():
    g = dihedral(6)
    serial = enumerate_skew_morphisms(g)
    par = enumerate_skew_morphisms(g, EnumConfig(parallel=True, workers=3))
    assert [(s.phi, s.pi) for s in par] == [(s.phi, s.pi) for s in serial]


def test_filters():
    g5 = dihedral(5)
    smooth = enumerate_with_filter(g5, None, "smooth")
    assert [s.phi for s in smooth] == [s.phi for s in enumerate_with_filter(g5, None, "automorphism")]
    assert len(smooth) == len(automorphisms(g5))
    for spec in ("cyclic:6", "dihedral:4"):
        g = make_group(spec)
        whole = enumerate_with_filter(g, None, kernel_equals(make_subgroup(g, g.elements)))
        assert [s.phi for s in whole] == [s.phi for s in enumerate_with_filter(g, None, "automorphism")]
    g6 = dihedral(6)
    assert enumerate_with_filter(g6, None, kernel_equals(dihedral_subgroup(6, "a", g6))) == []
    kp = enumerate_with_filter(g6, None, "kernel-preserving")
    assert all(is_kernel_preserving(s) for s in kp)
    assert all(is_smooth(s) for s in enumerate_with_filter(g6, None, is_smooth))
