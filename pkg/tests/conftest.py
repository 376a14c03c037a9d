"""Shared fixtures: the standard algebra roster, built once per session."""

import pytest

from bflab.scalar import PrimeField, Rationals
from bflab import frobenius as fr, hopf, twist as tw

Q = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def roster_specs():
    return [
        ("kZ2/Q", lambda: hopf.build_group_algebra(Q, [2])),
        ("kZ3/Q", lambda: hopf.build_group_algebra(Q, [3])),
        ("kZ2xZ2/Q", lambda: hopf.build_group_algebra(Q, [2, 2])),
        ("kZ2/F5", lambda: hopf.build_group_algebra(F5, [2])),
        ("kZ3/F5", lambda: hopf.build_group_algebra(F5, [3])),
        ("kZ2xZ2/F5", lambda: hopf.build_group_algebra(F5, [2, 2])),
        ("kZ2dual/Q", lambda: hopf.build_dual_group_algebra(Q, [2])),
        ("F2X2", lambda: hopf.build_truncated_polynomial(F2, 2, 1, 1)),
        ("F2X4", lambda: hopf.build_truncated_polynomial(F2, 2, 2, 1)),
        ("F3X3", lambda: hopf.build_truncated_polynomial(F3, 3, 1, 1)),
    ]


_algebras: dict = {}
_frobenius: dict = {}
_twists: dict = {}


def get_algebra(name):
    if name not in _algebras:
        _algebras[name] = dict(roster_specs())[name]()
    return _algebras[name]


def get_frobenius(name) -> fr.FrobeniusData:
    if name not in _frobenius:
        _frobenius[name] = fr.build_frobenius(get_algebra(name))
    return _frobenius[name]


def get_twist(name) -> tw.TwistData:
    if name not in _twists:
        _twists[name] = tw.build_twist(get_frobenius(name))
    return _twists[name]


ROSTER_NAMES = [name for name, _ in roster_specs()]


@pytest.fixture(params=ROSTER_NAMES)
def roster_name(request):
    return request.param


@pytest.fixture
def roster_algebra(roster_name):
    return roster_name, get_algebra(roster_name)
