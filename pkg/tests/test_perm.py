import pytest
from hypothesis import given, strategies as st

from skewmorph import perm as P


def test_parse_omitted_fixed_points():
    assert P.parse_cycles("(1, 2)( 3,4 )", 5) == (0, 2, 1, 4, 3)


def test_parse_identity_forms():
    assert P.parse_cycles("", 3) == (0, 1, 2)
    assert P.parse_cycles("()", 3) == (0, 1, 2)


@pytest.mark.parametrize("text", ["(1,2", "(1,2)(2,3)", "(1,x)", "1,2", "(1,9)"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        P.parse_cycles(text, 5)


def test_format_prints_fixed_points():
    assert P.format_cycles((0, 2, 1, 3)) == "(0)(1,2)(3)"


def test_order_and_power():
    p = P.parse_cycles("(1,2,3)(4,5)", 6)
    assert P.order(p) == 6
    assert P.power(p, 6) == P.identity(6)
    assert P.power(p, -1) == P.inverse(p)


perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n)))


@given(perms)
def test_cycle_roundtrip(p):
    p = tuple(p)
    assert P.parse_cycles(P.format_cycles(p), len(p)) == p


@given(perms, st.integers(-12, 12))
def test_power_matches_repeated_compose(p, k):
    p = tuple(p)
    q = P.identity(len(p))
    step = p if k >= 0 else P.inverse(p)
    for _ in range(abs(k)):
        q = tuple(step[v] for v in q)
    assert P.power(p, k) == q


@given(perms)
def test_inverse(p):
    p = tuple(p)
    assert P.compose(p, P.inverse(p)) == P.identity(len(p))
