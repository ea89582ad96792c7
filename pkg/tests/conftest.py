import functools

import pytest

from skewmorph.groups import make_group
from skewmorph.oracle import EnumConfig, enumerate_skew_morphisms

# the two cyclic examples used throughout
Z21_AUT = "(0)(1,2,4,8,16,11)(3,6,12)(5,10,20,19,17,13)(7,14)(9,18,15)"
Z18_ORDER9 = "(0)(1,15,17,7,3,5,13,9,11)(2,14,8)(4,10,16)(6)(12)"
# the 2-cycle is (3,15): 5 already lies in the 6-cycle and 15 is otherwise missing
Z18_ORDER6 = "(0)(1,5,13,11,7,17)(2,16,8,10,14,4)(3,15)(6,12)(9)"


@functools.lru_cache(maxsize=None)
def oracle(spec: str, bound: int = 16):
    """Cached oracle output, shared by every test module."""
    return tuple(enumerate_skew_morphisms(make_group(spec), EnumConfig(max_group_order=bound)))


@pytest.fixture
def enum():
    return oracle
