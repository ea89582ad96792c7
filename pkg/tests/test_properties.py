import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from skewmorph import perm as P
from skewmorph.groups import cyclic, dihedral, make_group
from skewmorph.properties import CHECKS, GroupContext, check_all, rebuild_from_orbits
from skewmorph.skew import SkewMorphism, verify

from conftest import Z18_ORDER9, oracle

SPECS = [f"cyclic:{n}" for n in range(1, 17)] + [f"dihedral:{n}" for n in range(3, 9)]


@pytest.fixture(scope="module")
def contexts():
    cache = {}

    def get(spec):
        if spec not in cache:
            out = oracle(spec)
            cache[spec] = GroupContext.build(make_group(spec), out)
        return cache[spec]
    return get


@pytest.mark.parametrize("spec", SPECS)
def test_no_violations(spec, contexts):
    report = check_all(contexts(spec), oracle(spec))
    assert report.checked == len(oracle(spec))
    assert report.total == 0, {k: v[:3] for k, v in report.violations.items() if v}


def test_rebuild_from_generator_orbits():
    for s in oracle("dihedral:8")[::7]:
        phi, pi = rebuild_from_orbits(s, s.group.generators)
        assert tuple(phi) == s.phi and tuple(pi) == s.pi


# --- the checks must notice broken input ----------------------------------------------


def corrupt(s: SkewMorphism, **kw) -> SkewMorphism:
    return dataclasses.replace(s, **kw)


@pytest.fixture
def z18():
    g = cyclic(18)
    return verify(g, P.parse_cycles(Z18_ORDER9, 18))


def test_wrong_pi_is_caught(z18, contexts):
    pi = list(z18.pi)
    pi[1] = (pi[1] + 1) % z18.order
    bad = corrupt(z18, pi=tuple(pi))
    ctx = GroupContext.build(z18.group)
    for name in ("power-identity", "power-function-rule", "equal-pi-cosets", "generating-orbits"):
        assert CHECKS[name](bad, ctx), name


def test_rotation_kernel_is_caught():
    g = dihedral(4)
    # claim pi = 1 exactly on <a>
    s = verify(g, tuple(g.elements))
    fake = SkewMorphism(g, s.phi, 2, tuple(1 if x < 4 else 0 for x in g.elements))
    ctx = GroupContext.build(g)
    assert CHECKS["dihedral-kernel"](fake, ctx)


def test_non_preserved_kernel_on_abelian_is_caught():
    g = cyclic(4)
    # pi = 1 on {0, 2} but phi moves 2 out of it
    fake = SkewMorphism(g, (0, 2, 1, 3), 2, (1, 0, 1, 0))
    assert CHECKS["abelian-kernel-preserving"](fake, GroupContext.build(g))


def test_missing_conjugates_are_caught():
    out = oracle("dihedral:4")
    g = out[0].group
    ctx = GroupContext.build(g, out[:5])
    assert any(CHECKS["conjugation-closure"](s, ctx) for s in out[:5])


def test_orbit_sum_catches_bad_sums(z18):
    pi = list(z18.pi)
    pi[2] = (pi[2] + 1) % z18.order
    bad = corrupt(z18, pi=tuple(pi))
    assert CHECKS["orbit-sum"](bad, GroupContext.build(z18.group))


def test_smooth_equivalence_on_non_smooth_example(z18):
    # a genuine example where some but not all elements are smooth
    ctx = GroupContext.build(z18.group)
    assert CHECKS["smooth-equivalence"](z18, ctx) == []
    assert CHECKS["periodicity-quotient"](z18, ctx) == []


@settings(max_examples=40, deadline=None)
@given(spec=st.sampled_from(["cyclic:12", "cyclic:16", "dihedral:6", "dihedral:8"]),
       name=st.sampled_from(sorted(CHECKS)), data=st.data())
def test_random_member_random_check(spec, name, data, contexts):
    s = data.draw(st.sampled_from(oracle(spec)))
    assert CHECKS[name](s, contexts(spec)) == []
