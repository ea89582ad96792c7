"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are printed even when
output is captured). ``SKEWMORPH_STRETCH=1`` adds the D_10 cross-check.
"""

import functools
import io
import json
import os
import time

import pytest

from skewmorph import cli
from skewmorph import perm as P
from skewmorph.dihedral import (
    Class1Params,
    class1_build,
    class1_params,
    classify_smooth,
    cross_check,
    family_order,
)
from skewmorph.groups import automorphisms, cyclic, dihedral, dihedral_subgroup, make_group
from skewmorph.oracle import EnumConfig, enumerate_skew_morphisms
from skewmorph.properties import GroupContext, check_all
from skewmorph.skew import (
    core,
    is_smooth,
    kernel,
    orbit_pi_subgroup,
    periodicity,
    power,
    quotient_skew,
    smooth_subgroup,
    verify,
)

from conftest import Z18_ORDER6, Z18_ORDER9, Z21_AUT

PROPERTY_SPECS = [f"cyclic:{n}" for n in range(1, 17)] + [f"dihedral:{n}" for n in range(3, 9)]


@pytest.fixture
def report(capsys):
    def line(k, ok, detail, seconds):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s) {detail}")
    return line


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# --- 1-3: worked examples on cyclic groups ---------------------------------------------


def _z21():
    g = cyclic(21)
    s = verify(g, P.parse_cycles(Z21_AUT, 21))
    subs = {q: list(orbit_pi_subgroup(s, q)) for q in ((2,), (3,), (5,), (2, 3))}
    return s.order == 6 and subs == {
        (2,): [0, 7, 14], (3,): list(range(0, 21, 3)), (5,): [0], (2, 3): list(range(21))}


def test_criterion_1_z21(report):
    ok, dt = timed(_z21)
    report(1, ok and dt < 1, "order 6, Orbit^Pi subgroups <7>, <3>, {0}, Z_21", dt)
    assert ok and dt < 1


def _z18_order9():
    g = cyclic(18)
    s = verify(g, P.parse_cycles(Z18_ORDER9, 18))
    expected = {0: 1, 6: 1, 12: 1, 2: 7, 14: 7, 8: 7, 4: 4, 10: 4, 16: 4}
    for i, x in enumerate((1, 15, 17, 7, 3, 5, 13, 9, 11)):
        expected[x] = (2, 5, 8)[i % 3]
    return (s.order == 9
            and all(s.pi[x] == v % 9 for x, v in expected.items())
            and list(core(s)) == [0, 6, 12]
            and list(smooth_subgroup(s)) == list(range(0, 18, 2))
            and quotient_skew(s, core(s)).cycle_notation() == "(0)(1,3,5)(2)(4)")


def test_criterion_2_z18_order9(report):
    ok, dt = timed(_z18_order9)
    report(2, ok and dt < 1, "order 9, pi table, Core <6>, Smooth <2>, quotient (0)(1,3,5)(2)(4)", dt)
    assert ok and dt < 1


def _z18_order6():
    g = cyclic(18)
    s = verify(g, P.parse_cycles(Z18_ORDER6, 18))
    return (list(kernel(s)) == list(range(0, 18, 3))
            and periodicity(s) == 2
            and quotient_skew(s, kernel(s)).cycle_notation() == "(0)(1,2)"
            and power(s, 2).is_automorphism())


def test_criterion_3_z18_order6(report):
    ok, dt = timed(_z18_order6)
    report(3, ok and dt < 1, "Ker <3>, periodicity 2, quotient (0)(1,2), phi^2 automorphism", dt)
    assert ok and dt < 1


# --- 4: the D_24 family ---------------------------------------------------------------------


def _d24():
    g = dihedral(24)
    p = Class1Params(24, 7, 3, 1, 11, 5, 12)
    s = class1_build(p, g)
    ok = (p in class1_params(24) and s.order == 12 and is_smooth(s)
          and set(kernel(s)) == set(dihedral_subgroup(24, "a2", g)))
    for m in (3, 5, 7):
        n = 8 * m
        q = Class1Params(n, m + 4, m, 1, 4 * m - 1, 2 * m - 1, family_order(m + 4, m, 1, n // 2))
        t = class1_build(q)
        ok = ok and t.order == 4 * m and is_smooth(t) and \
            set(kernel(t)) == set(dihedral_subgroup(n, "a2", t.group))
    return ok


def test_criterion_4_d24_family(report):
    ok, dt = timed(_d24)
    report(4, ok and dt < 5, "(7,3,1,11,5) in class1_params(24); m = 3, 5, 7 build order 4m, kernel <a^2>", dt)
    assert ok and dt < 5


# --- 5-8: oracle runs -------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def full_run(threads: int):
    """Criteria 5-7 end to end with ``threads`` workers; returns artifacts and timings."""
    cfg = EnumConfig(parallel=threads > 1, workers=threads)
    t0 = time.perf_counter()
    oracle = {spec: enumerate_skew_morphisms(make_group(spec), cfg) for spec in PROPERTY_SPECS}
    t_oracle = time.perf_counter() - t0

    checks, catalogs = {}, {}
    t0 = time.perf_counter()
    for n in range(3, 9):
        cat = classify_smooth(n, cfg)
        catalogs[n] = cat.to_json()
        smooth = [s for s in oracle[f"dihedral:{n}"] if is_smooth(s)]
        if n % 2 == 0:
            checks[n] = cross_check(n, cfg, cat).passed
        else:
            auts = {gamma.images for gamma in automorphisms(dihedral(n))}
            checks[n] = {s.phi for s in smooth} == auts == cat.phis()
    t_classify = time.perf_counter() - t0

    t0 = time.perf_counter()
    violations = {}
    for spec, skews in oracle.items():
        rep = check_all(GroupContext.build(make_group(spec), skews), skews)
        violations[spec] = rep.violations
    t_props = time.perf_counter() - t0

    listing = {spec: [[list(s.phi), list(s.pi)] for s in skews] for spec, skews in oracle.items()}
    blob = json.dumps({"oracle": listing, "catalogs": catalogs, "violations": violations},
                      sort_keys=True)
    return {"checks": checks, "violations": violations, "blob": blob,
            "times": (t_oracle, t_classify, t_props)}


def test_criterion_5_oracle_equivalence(report):
    run = full_run(1)
    ok = all(run["checks"][n] for n in (4, 6, 8))
    dt = sum(run["times"][:2])
    report(5, ok and dt < 600, f"D_4, D_6, D_8 smooth sets equal the catalog, by kernel: "
           f"{ {n: run['checks'][n] for n in (4, 6, 8)} }", dt)
    assert ok and dt < 600


@pytest.mark.skipif(not os.environ.get("SKEWMORPH_STRETCH"), reason="set SKEWMORPH_STRETCH=1")
def test_criterion_5_stretch_d10(report):
    (cc, dt) = timed(lambda: cross_check(10, EnumConfig(max_group_order=20)))
    report("5 (D_10 stretch)", cc.passed, {k: (len(a), len(b)) for k, (a, b) in cc.parts.items()}, dt)
    assert cc.passed


def test_criterion_6_odd_n(report):
    run = full_run(1)
    ok = all(run["checks"][n] for n in (3, 5, 7))
    dt = sum(run["times"][:2])
    report(6, ok and dt < 600, "D_3, D_5, D_7 smooth sets equal the automorphisms", dt)
    assert ok and dt < 600


def test_criterion_7_property_suite(report):
    run = full_run(1)
    bad = {spec: {k: v[:2] for k, v in viol.items() if v} for spec, viol in run["violations"].items()}
    bad = {k: v for k, v in bad.items() if v}
    total = sum(len(v) for viol in run["violations"].values() for v in viol.values())
    report(7, total == 0, f"{len(PROPERTY_SPECS)} groups, {total} violations {bad or ''}",
           run["times"][2])
    assert total == 0, bad


def test_criterion_8_determinism(report):
    one, four = full_run(1), full_run(4)
    # the CLI path as well
    outs = []
    for threads in ("1", "4"):
        buf = io.StringIO()
        assert cli.main(["classify", "--n", "8", "--out", "json", "--threads", threads], out=buf) == 0
        outs.append(buf.getvalue())
    ok = one["blob"] == four["blob"] and outs[0] == outs[1]
    report(8, ok, f"threads 1 vs 4: {len(one['blob'])} bytes of oracle output, catalogs and reports", 
           sum(four["times"]))
    assert ok
