"""The quantum heap operation and the braidings it induces.

On an involutory Hopf algebra, T(x (x) y (x) z) = x S(y) z is a ternary
self-distributive (TSD) coalgebra morphism; it generates a crossing map
beta1 on X^3 (one strand passing under a pair) and a Yang-Baxter operator
beta on X^4 = V (x) V for V = X (x) X, with explicit inverses.  Everything
here is verified by exact map equality; Yang-Baxter instances on X^6 stream
basis vectors once the flattened dimension exceeds the configured threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCommutativeError, VerificationError
from .tensor import TensorMap, chain_equal, compose, route
from .hopf import HopfAlgebra


@dataclass(frozen=True)
class BraidData:
    T: TensorMap          # 3 -> 1
    beta1: TensorMap      # 3 -> 3
    beta1_inv: TensorMap  # 3 -> 3
    beta: TensorMap       # 4 -> 4
    beta_inv: TensorMap   # 4 -> 4


def build_heap_T(h: HopfAlgebra, require_involutory: bool = True) -> TensorMap:
    """T = mu o (mu (x) 1) o (1 (x) S (x) 1), the linearized x y^{-1} z."""
    if require_involutory and not h.is_involutory():
        raise NotCommutativeError("the heap operation needs an involutory antipode")
    return h.chain(h.par(1, h.antipode, 1), h.par(h.mu, 1), h.mu)


def check_coalgebra_morphism(h: HopfAlgebra, t: TensorMap) -> bool:
    """delta o T = (T (x) T) o shuffle o (delta (x) delta (x) delta)."""
    lhs = compose(t, h.delta)
    rhs = h.chain(
        h.par(h.delta, h.delta, h.delta),
        route(0, 2, 4, 1, 3, 5),
        h.par(t, t),
    )
    return lhs == rhs


def _tsd_sides(h: HopfAlgebra, t: TensorMap):
    d3 = h.sweedler(3)
    lhs = [h.par(t, 2), t]
    rhs = [
        h.par(3, d3, d3),
        route(0, 3, 6, 1, 4, 7, 2, 5, 8),
        h.par(t, t, t),
        t,
    ]
    return lhs, rhs


def check_tsd(h: HopfAlgebra, t: TensorMap, threshold=None) -> bool:
    """T(T(x,y,z),u,v) = T(T(x,u',v'), T(y,u'',v''), T(z,u''',v''')) with the
    three Sweedler legs of u and v distributed over the inner slots."""
    lhs, rhs = _tsd_sides(h, t)
    return chain_equal(h.ring, h.n, lhs, rhs, threshold)


def check_tsd_repeated_first(h: HopfAlgebra, t: TensorMap, threshold=None) -> bool:
    """Observational variant where all three inner first slots take Sweedler
    legs of the same first input, with the other two inputs consumed by the
    counit; recorded, never asserted."""
    d3 = h.sweedler(3)
    lhs = [h.par(t, 2), t]
    rhs = [
        h.par(d3, h.counit, h.counit, d3, d3),
        route(0, 3, 6, 1, 4, 7, 2, 5, 8),
        h.par(t, t, t),
        t,
    ]
    return chain_equal(h.ring, h.n, lhs, rhs, threshold)


def check_invertible_tsd(h: HopfAlgebra, t: TensorMap) -> bool:
    """T(T(x,y'',z''),z',y') = eps(y) eps(z) x."""
    lhs = h.chain(
        h.par(1, h.delta, h.delta),
        route(0, 2, 4, 3, 1),
        h.par(t, 2),
        t,
    )
    rhs = h.chain(h.par(1, h.counit, h.counit))
    return lhs == rhs


def build_beta1(h: HopfAlgebra, t: TensorMap, verify: bool = True):
    """Crossing of one strand under a pair and its inverse.

    beta1(x,y,z) = y' (x) z' (x) T(x,y'',z'');
    beta1_inv(y,z,x) = T(x,z'',y'') (x) y' (x) z'.
    """
    beta1 = h.chain(h.par(1, h.delta, h.delta), route(1, 3, 0, 2, 4), h.par(2, t))
    beta1_inv = h.chain(h.par(h.delta, h.delta, 1), route(4, 3, 1, 0, 2), h.par(t, 2))
    if verify:
        ident = h.id(3)
        if compose(beta1, beta1_inv) != ident or compose(beta1_inv, beta1) != ident:
            raise VerificationError("beta1 and beta1_inv are not mutually inverse")
    return beta1, beta1_inv


def build_beta(h: HopfAlgebra, t: TensorMap, verify: bool = True):
    """The braiding on V (x) V (V = X (x) X) and its inverse.

    beta((x,x'),(y,z)) = (y',z') (x) T(x,y'',z'') (x) T(x',y''',z''');
    the pair (y,z) acts on each component through its Sweedler legs.
    """
    d3 = h.sweedler(3)
    beta = h.chain(h.par(2, d3, d3), route(2, 5, 0, 3, 6, 1, 4, 7), h.par(2, t, t))
    beta_inv = h.chain(
        h.par(d3, d3, 1, 1), route(6, 4, 1, 7, 5, 2, 0, 3), h.par(t, t, 2)
    )
    if verify:
        ident = h.id(4)
        if compose(beta, beta_inv) != ident or compose(beta_inv, beta) != ident:
            raise VerificationError("beta and beta_inv are not mutually inverse")
        beta1, _ = build_beta1(h, t, verify=False)
        factored = h.chain(h.par(1, beta1), h.par(beta1, 1))
        if factored != beta:
            raise VerificationError("beta does not factor through beta1")
    return beta, beta_inv


def build_braid(h: HopfAlgebra) -> BraidData:
    t = build_heap_T(h)
    beta1, beta1_inv = build_beta1(h, t)
    beta, beta_inv = build_beta(h, t)
    return BraidData(t, beta1, beta1_inv, beta, beta_inv)


def check_ybe(h: HopfAlgebra, braiding: TensorMap, threshold=None) -> bool:
    """(R (x) 1)(1 (x) R)(R (x) 1) = (1 (x) R)(R (x) 1)(1 (x) R) on X^6,
    where 1 is the identity of V = X^2."""
    lhs = [h.par(braiding, 2), h.par(2, braiding), h.par(braiding, 2)]
    rhs = [h.par(2, braiding), h.par(braiding, 2), h.par(2, braiding)]
    return chain_equal(h.ring, h.n, lhs, rhs, threshold)


def check_passcup(h: HopfAlgebra, cup: TensorMap, t: TensorMap) -> bool:
    """A cup fed by a strand passing under a pair equals the cup fed through
    the inverse crossing on its other leg (inputs x, u, v, y)."""
    beta1, beta1_inv = build_beta1(h, t, verify=False)
    lhs = [h.par(beta1, 1), h.par(2, cup)]
    rhs = [h.par(1, beta1_inv), h.par(cup, 2)]
    return chain_equal(h.ring, h.n, lhs, rhs)


def check_passcap(h: HopfAlgebra, cap: TensorMap, t: TensorMap) -> bool:
    """Vertical mirror of the passcup move: a cap leg slides past the pair.

    (beta1_inv (x) 1)(1^2 (x) cap) = (1 (x) beta1)(cap (x) 1^2) as maps
    X^2 -> X^4 on inputs (u, v).
    """
    beta1, beta1_inv = build_beta1(h, t, verify=False)
    lhs = [h.par(2, cap), h.par(beta1_inv, 1)]
    rhs = [h.par(cap, 2), h.par(1, beta1)]
    return chain_equal(h.ring, h.n, lhs, rhs)


def check_cupcap_braiding(h: HopfAlgebra, braiding: TensorMap,
                          cup: TensorMap, cap: TensorMap) -> dict:
    """The four commutations of cup and cap with the braiding at the V level.

    The cup consumes one V slot (two adjacent X factors); the cap creates one.
    """
    ring, n = h.ring, h.n
    return {
        "cup_slide_left": chain_equal(
            ring, n, [braiding, h.par(2, cup)], [h.par(cup, 2)]
        ),
        "cup_slide_right": chain_equal(
            ring, n, [braiding, h.par(cup, 2)], [h.par(2, cup)]
        ),
        "cap_slide_left": chain_equal(
            ring, n, [h.par(2, cap), braiding], [h.par(cap, 2)]
        ),
        "cap_slide_right": chain_equal(
            ring, n, [h.par(cap, 2), braiding], [h.par(2, cap)]
        ),
    }
