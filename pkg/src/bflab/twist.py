"""Ribbon twists on V = X (x) X and their doubled forms.

``theta`` is the full twist computed from the heap operation through Sweedler
legs of both inputs; it collapses to the closed form

    theta(x (x) y) = y'' (x) y' S(x) y'''

(a linearized core-quandle operation), which is rebuilt independently as
``theta_core`` and compared.  ``double_tsd`` promotes the heap action to
pairs: both pair-arguments act on each component in sequence, which is
exactly the wiring under which the twist of the doubled coalgebra equals the
tortile composite beta beta (theta (x) theta).  ``Theta`` is the loop variant
built from cup and cap around one braiding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationError
from .tensor import TensorMap, chain_equal, compose, is_invertible, route
from .hopf import HopfAlgebra
from .frobenius import FrobeniusData


@dataclass(frozen=True)
class TwistData:
    theta: TensorMap          # 2 -> 2
    theta_core: TensorMap     # 2 -> 2, closed form
    Theta: TensorMap          # 2 -> 2, cup/cap loop
    theta_doubled: TensorMap  # 4 -> 4


def build_theta(h: HopfAlgebra, t: TensorMap) -> TensorMap:
    """theta(x,y) = T(x',x'',y'') (x) T(y',x''',y''')."""
    d3 = h.sweedler(3)
    return h.chain(h.par(d3, d3), route(0, 1, 4, 3, 2, 5), h.par(t, t))


def build_theta_core(h: HopfAlgebra, t: TensorMap) -> TensorMap:
    """Closed form theta(x,y) = y'' (x) T(y',x,y''')."""
    d3 = h.sweedler(3)
    return h.chain(h.par(1, d3), route(2, 1, 0, 3), h.par(1, t))


def double_tsd(h: HopfAlgebra, t: TensorMap) -> TensorMap:
    """The heap operation on pairs: (X^2)^3 -> X^2.

    Each component of the first pair is acted on by the second pair and then
    by the third, with Sweedler legs of all four acting wires distributed
    across the two components.  On group-likes:
    ((x,x'),(y,y'),(z,z')) -> (x y^{-1}y' z^{-1}z', x' y^{-1}y' z^{-1}z').
    """
    t5 = h.chain(h.par(t, 2), t)  # T(T(a,b,c),d,e)
    return h.chain(
        h.par(2, h.delta, h.delta, h.delta, h.delta),
        route(0, 2, 4, 6, 8, 1, 3, 5, 7, 9),
        h.par(t5, t5),
    )


def check_tsd_doubled(h: HopfAlgebra, t2: TensorMap, threshold=None) -> bool:
    """The self-distributivity law for the pair-level heap on (X^2)^5.

    Sweedler legs of the two acting pairs are taken in the pair coalgebra,
    i.e. component-wise and interleaved.
    """
    d3 = h.sweedler(3)
    lhs = [h.par(t2, 4), t2]
    rhs = [
        h.par(6, d3, d3, d3, d3),
        route(0, 1, 6, 9, 12, 15, 2, 3, 7, 10, 13, 16, 4, 5, 8, 11, 14, 17),
        h.par(t2, t2, t2),
        t2,
    ]
    return chain_equal(h.ring, h.n, lhs, rhs, threshold)


def build_theta_doubled(h: HopfAlgebra, t: TensorMap) -> TensorMap:
    """The parallel twist on V (x) V: the twist formula applied to the pair
    coalgebra X^2 with the doubled heap operation."""
    t2 = double_tsd(h, t)
    d3 = h.sweedler(3)
    return h.chain(
        h.par(d3, d3, d3, d3),
        route(0, 3, 1, 4, 7, 10, 6, 9, 2, 5, 8, 11),
        h.par(t2, t2),
    )


def build_loop_twist(f: FrobeniusData, positive: bool = True) -> TensorMap:
    """The twist as a ribbon passing through a cup/cap loop.

    With the braiding replaced by its inverse this yields the negative loop
    used by the cancelpair move.
    """
    h = f.H
    b = f.braid.beta if positive else f.braid.beta_inv
    return h.chain(
        h.par(2, f.cc.cap),
        h.par(3, f.cc.cap, 1),
        h.par(b, 2),
        h.par(3, f.cc.cup, 1),
        h.par(2, f.cc.cup),
    )


def build_twist(f: FrobeniusData) -> TwistData:
    h = f.H
    t = f.braid.T
    theta = build_theta(h, t)
    theta_core = build_theta_core(h, t)
    if theta != theta_core:
        raise VerificationError("twist does not match its closed form")
    if not is_invertible(theta):
        raise VerificationError("twist is not invertible")
    return TwistData(theta, theta_core, build_loop_twist(f), build_theta_doubled(h, t))


def check_twist_braiding(h: HopfAlgebra, twist: TensorMap, braiding: TensorMap) -> bool:
    """beta (twist (x) 1) = (1 (x) twist) beta and the mirrored equation."""
    ring, n = h.ring, h.n
    return chain_equal(
        ring, n, [h.par(twist, 2), braiding], [braiding, h.par(2, twist)]
    ) and chain_equal(
        ring, n, [h.par(2, twist), braiding], [braiding, h.par(twist, 2)]
    )


def check_slideloop(h: HopfAlgebra, t: TensorMap) -> bool:
    """T(x, T(z',z'',w''), T(w',z''',w''')) = T(x,z,w)."""
    d3 = h.sweedler(3)
    lhs = [
        h.par(1, d3, d3),
        route(0, 1, 2, 5, 4, 3, 6),
        h.par(1, t, t),
        t,
    ]
    return chain_equal(h.ring, h.n, lhs, [t])


def check_twist_multiplication(f: FrobeniusData, twist: TensorMap,
                               twist_doubled: TensorMap) -> bool:
    """twist o mu2 = mu2 o twist_doubled."""
    h = f.H
    return chain_equal(h.ring, h.n, [f.mu2, twist], [twist_doubled, f.mu2])


def check_twist_comultiplication(f: FrobeniusData, twist: TensorMap,
                                 twist_doubled: TensorMap) -> bool:
    """delta2 o twist = twist_doubled o delta2."""
    h = f.H
    return chain_equal(h.ring, h.n, [twist, f.delta2], [f.delta2, twist_doubled])


def twist_multiplication_closed_form(f: FrobeniusData) -> TensorMap:
    """(x,y,z,w) -> cup(y,z) . w'' (x) T(w',x,w''') built directly; equals
    theta o mu2 on a commutative, cocommutative algebra."""
    h = f.H
    d3 = h.sweedler(3)
    return h.chain(
        h.par(1, 1, 1, d3),
        route(1, 2, 4, 3, 0, 5),
        h.par(f.cc.cup, 1, f.braid.T),
    )


def check_twist_multiplication_closed_form(f: FrobeniusData, twist: TensorMap) -> bool:
    h = f.H
    target = twist_multiplication_closed_form(f)
    return chain_equal(h.ring, h.n, [f.mu2, twist], [target])


def doubled_by_tortile(h: HopfAlgebra, twist: TensorMap, braiding: TensorMap) -> TensorMap:
    """beta beta (twist (x) twist), the tortile form of the doubled twist."""
    return h.chain(h.par(twist, twist), braiding, braiding)


def check_tortile(h: HopfAlgebra, twist: TensorMap, twist_doubled: TensorMap,
                  braiding: TensorMap) -> bool:
    """twist_{V,V} = beta beta (twist (x) twist)."""
    return chain_equal(
        h.ring, h.n, [twist_doubled], [h.par(twist, twist), braiding, braiding]
    )


def check_cancelpair(f: FrobeniusData) -> bool:
    """Whether a positive loop after a negative loop is the identity;
    recorded per algebra, never asserted."""
    h = f.H
    plus = build_loop_twist(f, positive=True)
    minus = build_loop_twist(f, positive=False)
    return compose(minus, plus) == h.id(2)
