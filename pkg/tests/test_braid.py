import itertools

import pytest

from bflab.errors import NotCommutativeError, VerificationError
from bflab.scalar import PrimeField, Rationals
from bflab import braid as br, integral as ig, tensor as tz
from bflab.hopf import build_group_algebra, make_hopf
from conftest import get_algebra, get_frobenius

Q = Rationals()
F2 = PrimeField(2)

# ---------------------------------------------------------------------------
# independent set-level group-heap oracle
# ---------------------------------------------------------------------------


def group_heap(x, y, z, orders):
    return tuple((a - b + c) % m for a, b, c, m in zip(x, y, z, orders))


def heap_braiding(x, y, u, v, orders):
    return (u, v, group_heap(x, u, v, orders), group_heap(y, u, v, orders))


def elements(orders):
    return list(itertools.product(*[range(m) for m in orders]))


def index_of(g, orders):
    k = 0
    for digit, m in zip(g, orders):
        k = k * m + digit
    return k


def test_heap_operation_examples():
    h3 = get_algebra("kZ3/Q")
    t3 = br.build_heap_T(h3)
    # g . inv(g^2) . g = e
    assert t3.cols[(1, 2, 1)] == {(0,): Q.one}
    hx = get_algebra("F2X2")
    tx = br.build_heap_T(hx)
    # X . S(1) . X = X^2 = 0
    assert tx.cols.get((1, 0, 1), {}) == {}


def test_heap_contraction_is_counit():
    # T(x', x'', z) = eps(x) z
    for name in ("kZ3/Q", "F2X4"):
        h = get_algebra(name)
        t = br.build_heap_T(h)
        lhs = h.chain(h.par(h.delta, 1), t)
        rhs = h.chain(h.par(h.counit, 1))
        assert lhs == rhs, name


def test_heap_needs_involutory_antipode():
    h = get_algebra("kZ3/Q")
    bad = make_hopf(Q, 3, h.mu, h.unit, h.delta, h.counit,
                    tz.zero_map(Q, 3, 1, 1), check=False)
    with pytest.raises(NotCommutativeError):
        br.build_heap_T(bad)


def test_group_like_degeneracy(roster_algebra):
    # T(g (x) g (x) z) = z for group-like basis vectors g of a group algebra
    name, h = roster_algebra
    if h.family != "group":
        pytest.skip("group-like basis only for group algebras")
    t = br.build_heap_T(h)
    for g in range(h.n):
        for z in range(h.n):
            assert t.cols[(g, g, z)] == {(z,): h.ring.one}


def test_tsd_on_roster(roster_algebra):
    name, h = roster_algebra
    t = br.build_heap_T(h)
    assert br.check_coalgebra_morphism(h, t), name
    assert br.check_tsd(h, t), name
    assert br.check_invertible_tsd(h, t), name


def test_tsd_fails_with_corrupted_antipode():
    h = get_algebra("kZ3/Q")
    bad = make_hopf(Q, 3, h.mu, h.unit, h.delta, h.counit, h.id(), check=False)
    t = br.build_heap_T(bad, require_involutory=False)
    assert not br.check_tsd(bad, t)


def test_repeated_first_slot_variant_is_reported_not_asserted():
    h = get_algebra("kZ2/Q")
    t = br.build_heap_T(h)
    value = br.check_tsd_repeated_first(h, t)
    assert isinstance(value, bool)


def test_beta1_group_formula():
    # beta1(x, u, v) = u (x) v (x) x u^{-1} v on the group basis
    orders = (3,)
    h = get_algebra("kZ3/Q")
    beta1, _ = br.build_beta1(h, br.build_heap_T(h))
    for x, u, v in itertools.product(range(3), repeat=3):
        expect = (u, v, (x - u + v) % 3)
        assert beta1.cols[(x, u, v)] == {expect: Q.one}


def test_beta1_inverse_on_truncated():
    h = get_algebra("F2X2")
    beta1, beta1_inv = br.build_beta1(h, br.build_heap_T(h))
    ident = h.id(3)
    assert tz.compose(beta1, beta1_inv) == ident
    assert tz.compose(beta1_inv, beta1) == ident


def test_beta_verifications_raise_on_mismatch():
    h = get_algebra("kZ2/Q")
    t_bad = tz.zero_map(Q, 2, 3, 1)
    with pytest.raises(VerificationError):
        br.build_beta1(h, t_bad)
    with pytest.raises(VerificationError):
        br.build_beta(h, t_bad)


def test_trivial_algebra_braids_are_identities():
    h = build_group_algebra(Q, [1])
    data = br.build_braid(h)
    assert data.beta1 == h.id(3)
    assert data.beta == h.id(4)
    assert br.check_tsd(h, data.T)
    assert br.check_invertible_tsd(h, data.T)


def test_beta_group_permutation_oracle(roster_algebra):
    name, h = roster_algebra
    if h.family != "group":
        pytest.skip("oracle covers group algebras")
    orders = h.params
    data = br.build_braid(h)
    for x, y, u, v in itertools.product(elements(orders), repeat=4):
        key = tuple(index_of(g, orders) for g in (x, y, u, v))
        expect = tuple(
            index_of(g, orders) for g in heap_braiding(x, y, u, v, orders)
        )
        assert data.beta.cols[key] == {expect: h.ring.one}, (name, key)


def test_beta_inverse_on_rank_four():
    h = get_algebra("kZ2xZ2/Q")
    data = br.build_braid(h)
    ident = h.id(4)
    assert tz.compose(data.beta, data.beta_inv) == ident
    assert tz.compose(data.beta_inv, data.beta) == ident


def test_beta_factorization(roster_algebra):
    name, h = roster_algebra
    data = br.build_braid(h)
    factored = h.chain(h.par(1, data.beta1), h.par(data.beta1, 1))
    assert factored == data.beta, name


def test_ybe_on_roster(roster_algebra):
    name, h = roster_algebra
    data = br.build_braid(h)
    assert br.check_ybe(h, data.beta), name


def test_transposition_control_case():
    # the V-level swap satisfies the braid relation trivially, but squares to
    # the identity, which beta on k[Z3] does not
    h = get_algebra("kZ3/Q")
    tau_v = tz.permute(Q, 3, 4, (2, 3, 0, 1))
    assert br.check_ybe(h, tau_v)
    assert tz.compose(tau_v, tau_v) == h.id(4)
    beta = br.build_braid(h).beta
    assert tz.compose(beta, beta) != h.id(4)


def test_passcup_passcap_on_roster(roster_algebra):
    name, h = roster_algebra
    f = get_frobenius(name)
    assert br.check_passcup(h, f.cc.cup, f.braid.T), name
    assert br.check_passcap(h, f.cc.cap, f.braid.T), name


def test_arbitrary_pairing_usually_fails_passcup():
    # among the invertible rank-2 pairings over F2, some fail the slide law
    h = get_algebra("F2X2")
    t = br.build_heap_T(h)
    failures = 0
    for entries in itertools.product([0, 1], repeat=4):
        cup = tz.TensorMap.from_entries(
            F2, 2, 2, 0,
            [((), (i, j), entries[2 * i + j]) for i in range(2) for j in range(2)],
        )
        if not ig.cup_nondegenerate(h, cup):
            continue
        if not br.check_passcup(h, cup, t):
            failures += 1
    assert failures > 0


def test_cupcap_braiding_commutations(roster_algebra):
    name, h = roster_algebra
    f = get_frobenius(name)
    results = br.check_cupcap_braiding(h, f.braid.beta, f.cc.cup, f.cc.cap)
    assert all(results.values()), (name, results)


def test_rank_nine_group_algebra_streams():
    # 9^6 exceeds the default dense cutoff, so the braid relation streams
    h = build_group_algebra(PrimeField(5), [3, 3])
    data = br.build_braid(h)
    assert br.check_tsd(h, data.T, threshold=10_000)
    assert br.check_ybe(h, data.beta)
