import itertools

from bflab.scalar import Rationals
from bflab import braid as br, frobenius as fr, tensor as tz, twist as tw
from bflab.hopf import build_group_algebra
from conftest import get_algebra, get_frobenius, get_twist

Q = Rationals()


def test_theta_is_core_quandle_on_group_likes(roster_algebra):
    # theta(x, y) = (y, y x^{-1} y) on the group basis
    name, h = roster_algebra
    if h.family != "group":
        import pytest

        pytest.skip("group-like oracle")
    orders = h.params
    theta = get_twist(name).theta
    elements = list(itertools.product(*[range(m) for m in orders]))

    def idx(g):
        k = 0
        for d, m in zip(g, orders):
            k = k * m + d
        return k

    for x, y in itertools.product(elements, repeat=2):
        core = tuple((2 * b - a) % m for a, b, m in zip(x, y, orders))
        assert theta.cols[(idx(x), idx(y))] == {(idx(y), idx(core)): h.ring.one}


def test_theta_equals_closed_form(roster_algebra):
    name, _ = roster_algebra
    td = get_twist(name)
    assert td.theta == td.theta_core, name


def test_theta_invertible(roster_algebra):
    name, _ = roster_algebra
    assert tz.is_invertible(get_twist(name).theta), name


def test_trivial_algebra_twists_are_identity():
    f = fr.build_frobenius(build_group_algebra(Q, [1]))
    td = tw.build_twist(f)
    ident = f.H.id(2)
    assert td.theta == ident
    assert td.Theta == ident
    assert td.theta_doubled == f.H.id(4)


def test_doubled_heap_group_formula():
    # both acting pairs act on each component:
    # ((x,x'),(y,y'),(z,z')) -> (x - y + y' - z + z', x' - y + y' - z + z')
    h = get_algebra("kZ2/Q")
    t2 = tw.double_tsd(h, get_frobenius("kZ2/Q").braid.T)
    for key in itertools.product(range(2), repeat=6):
        x, xp, y, yp, z, zp = key
        d = (-y + yp - z + zp) % 2
        assert t2.cols[key] == {((x + d) % 2, (xp + d) % 2): Q.one}


def test_doubled_heap_is_self_distributive():
    for name in ("kZ2/Q", "F2X2"):
        h = get_algebra(name)
        t2 = tw.double_tsd(h, get_frobenius(name).braid.T)
        assert tw.check_tsd_doubled(h, t2), name


def test_tortile_identity(roster_algebra):
    name, h = roster_algebra
    f = get_frobenius(name)
    td = get_twist(name)
    assert tw.check_tortile(h, td.theta, td.theta_doubled, f.braid.beta), name


def test_twist_commutes_with_braiding(roster_algebra):
    name, h = roster_algebra
    f = get_frobenius(name)
    td = get_twist(name)
    assert tw.check_twist_braiding(h, td.theta, f.braid.beta), name
    assert tw.check_twist_braiding(h, td.Theta, f.braid.beta), name


def test_swap_control_case_is_just_recorded():
    # replacing theta by the swap: the commutation becomes a computation,
    # not an expectation
    h = get_algebra("kZ3/Q")
    f = get_frobenius("kZ3/Q")
    swap = tz.permute(Q, 3, 2, (1, 0))
    outcome = tw.check_twist_braiding(h, swap, f.braid.beta)
    assert isinstance(outcome, bool)


def test_slideloop(roster_algebra):
    name, h = roster_algebra
    assert tw.check_slideloop(h, get_frobenius(name).braid.T), name


def test_slideloop_trivial():
    h = build_group_algebra(Q, [1])
    assert tw.check_slideloop(h, br.build_heap_T(h))


def test_twist_commutes_with_multiplication(roster_algebra):
    name, _ = roster_algebra
    f = get_frobenius(name)
    td = get_twist(name)
    assert tw.check_twist_multiplication(f, td.theta, td.theta_doubled), name
    assert tw.check_twist_comultiplication(f, td.theta, td.theta_doubled), name
    assert tw.check_twist_multiplication_closed_form(f, td.theta), name


def test_loop_twist_commutes_with_multiplication(roster_algebra):
    name, _ = roster_algebra
    f = get_frobenius(name)
    td = get_twist(name)
    doubled = tw.doubled_by_tortile(f.H, td.Theta, f.braid.beta)
    assert tw.check_twist_multiplication(f, td.Theta, doubled), name
    assert tw.check_twist_comultiplication(f, td.Theta, doubled), name


def test_closed_form_oracle_on_z3():
    f = get_frobenius("kZ3/Q")
    td = get_twist("kZ3/Q")
    target = tw.twist_multiplication_closed_form(f)
    composite = f.H.chain(f.mu2, td.theta)
    assert composite == target


def test_cancelpair_and_theta_comparison_recorded(roster_algebra):
    # both open questions: run to completion, record, never assert a value
    name, _ = roster_algebra
    f = get_frobenius(name)
    td = get_twist(name)
    cancel = tw.check_cancelpair(f)
    same = td.theta == td.Theta
    assert isinstance(cancel, bool)
    assert isinstance(same, bool)
