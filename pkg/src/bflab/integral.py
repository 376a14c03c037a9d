"""Integral elements and functionals, and the cup/cap pairing they induce.

The integral element Lambda satisfies x.Lambda = eps(x).Lambda for every x;
the integral functional lam satisfies (lam (x) 1) delta = eta lam.  Both
solution spaces must have rank exactly one, which is verified by the exact
solver rather than assumed.  From a pair we set

    cup = lam o mu o (1 (x) S)        cap = delta o Lambda

and rescale Lambda so that the switchback (zig-zag) identities

    (cup (x) 1)(1 (x) cap) = 1 = (1 (x) cup)(cap (x) 1)

hold exactly.  Only Lambda is rescaled, deterministically, so serialized
output is reproducible; scaling Lambda by a unit u and lam by u^{-1} leaves
the normalized pairing unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegeneratePairingError, IntegralRankError, SwitchbackError
from . import tensor as tz
from .tensor import TensorMap, compose, is_scalar_multiple_of_identity, scale
from .hopf import HopfAlgebra


@dataclass(frozen=True)
class IntegralPair:
    Lambda: TensorMap      # element, 0 -> 1
    functional: TensorMap  # 1 -> 0
    normalization: object  # scalar already applied to the raw Lambda


@dataclass(frozen=True)
class CupCap:
    cup: TensorMap  # 2 -> 0
    cap: TensorMap  # 0 -> 2


def _left_multiplication(h: HopfAlgebra, i: int) -> TensorMap:
    entries = []
    for (a, b), col in h.mu.cols.items():
        if a == i:
            for out, v in col.items():
                entries.append((out, (b,), v))
    return TensorMap.from_entries(h.ring, h.n, 1, 1, entries)


def _right_multiplication(h: HopfAlgebra, i: int) -> TensorMap:
    entries = []
    for (a, b), col in h.mu.cols.items():
        if b == i:
            for out, v in col.items():
                entries.append((out, (a,), v))
    return TensorMap.from_entries(h.ring, h.n, 1, 1, entries)


def _counit_value(h: HopfAlgebra, i: int):
    return h.counit.cols.get((i,), {}).get((), h.ring.zero)


def _normalize_leading(h: HopfAlgebra, vec: TensorMap) -> TensorMap:
    col = vec.cols.get((), {})
    lead = min(col)
    return scale(vec, h.ring.inv(col[lead]))


def find_integral_element(h: HopfAlgebra) -> TensorMap:
    """Solve { v : x v = eps(x) v for every basis x }; rank must be 1."""
    ring = h.ring
    family = []
    for i in range(h.n):
        lx = _left_multiplication(h, i)
        eps = _counit_value(h, i)
        family.append(tz.add_maps(lx, scale(h.id(), ring.neg(eps))))
    basis = tz.solve_right_null(family)
    if len(basis) != 1:
        raise IntegralRankError("integral element", len(basis))
    return _normalize_leading(h, basis[0])


def find_integral_functional(h: HopfAlgebra) -> TensorMap:
    """The functional form of the integral, i.e. the integral element of the
    transpose-dual algebra; the defining equation (lam (x) 1) delta = eta lam
    is re-verified on the result."""
    ring = h.ring
    family = []
    # dual left multiplication by the i-th dual basis functional
    for i in range(h.n):
        entries = []
        for (a,), col in h.delta.cols.items():
            for (x, y), v in col.items():
                if x == i:
                    entries.append(((a,), (y,), v))
        lx = TensorMap.from_entries(ring, h.n, 1, 1, entries)
        eps = h.unit.cols.get((), {}).get((i,), ring.zero)
        family.append(tz.add_maps(lx, scale(h.id(), ring.neg(eps))))
    basis = tz.solve_right_null(family)
    if len(basis) != 1:
        raise IntegralRankError("integral functional", len(basis))
    lam = tz.transpose(_normalize_leading(h, basis[0]))
    if not check_functional_equation(h, lam):
        raise IntegralRankError("integral functional", 0)
    return lam


def check_element_equation(h: HopfAlgebra, vec: TensorMap, side: str = "left") -> bool:
    ring = h.ring
    for i in range(h.n):
        mult = _left_multiplication(h, i) if side == "left" else _right_multiplication(h, i)
        if compose(vec, mult) != scale(vec, _counit_value(h, i)):
            return False
    return True


def check_functional_equation(h: HopfAlgebra, lam: TensorMap, side: str = "left") -> bool:
    eta_lam = compose(lam, h.unit)
    if side == "left":
        lhs = h.chain(h.delta, h.par(lam, 1))
    else:
        lhs = h.chain(h.delta, h.par(1, lam))
    return lhs == eta_lam


def find_integral_pair(h: HopfAlgebra) -> IntegralPair:
    return IntegralPair(find_integral_element(h), find_integral_functional(h), h.ring.one)


def _switchback_composites(h: HopfAlgebra, cc: CupCap):
    left = h.chain(h.par(1, cc.cap), h.par(cc.cup, 1))
    right = h.chain(h.par(cc.cap, 1), h.par(1, cc.cup))
    return left, right


def _leading_unit(ring, m: TensorMap):
    """Coefficient at the lexicographically first nonzero entry."""
    if not m.cols:
        raise DegeneratePairingError("integral datum is the zero map")
    first = min((inn, out) for inn, col in m.cols.items() for out in col)
    return m.cols[first[0]][first[1]]


def build_cupcap(h: HopfAlgebra, pair: IntegralPair):
    """Build cup and cap and normalize so the switchback identities hold.

    The incoming pair is first brought to canonical scale (leading
    coefficient one on both members), so unit rescalings of Lambda and of the
    functional produce bit-identical output.  Then only Lambda is rescaled,
    by the inverse of the scalar c with (cup (x) 1)(1 (x) cap) = c . 1.
    Returns ``(CupCap, IntegralPair)``, the pair recording the total scalar
    applied to Lambda.
    """
    ring = h.ring
    lam_unit = _leading_unit(ring, pair.functional)
    functional = scale(pair.functional, ring.inv(lam_unit))
    el_unit = _leading_unit(ring, pair.Lambda)
    applied = ring.inv(el_unit)
    element = scale(pair.Lambda, applied)
    cup = h.chain(h.par(1, h.antipode), h.mu, functional)
    cap = compose(element, h.delta)
    m = h.chain(h.par(1, cap), h.par(cup, 1))
    c = is_scalar_multiple_of_identity(m)
    if c is None:
        raise SwitchbackError(
            "(cup (x) 1)(1 (x) cap) is not a scalar multiple of the identity"
        )
    if ring.is_zero(c):
        raise DegeneratePairingError("cup/cap pairing collapses to zero")
    cinv = ring.inv(c)
    applied = ring.mul(applied, cinv)
    element = scale(element, cinv)
    cc = CupCap(cup, compose(element, h.delta))
    left, right = _switchback_composites(h, cc)
    ident = h.id()
    if left != ident or right != ident:
        raise SwitchbackError("switchback identities fail after normalization")
    normalized = IntegralPair(
        element, functional, ring.mul(pair.normalization, applied)
    )
    return cc, normalized


def check_switchback(h: HopfAlgebra, cc: CupCap) -> bool:
    left, right = _switchback_composites(h, cc)
    ident = h.id()
    return left == ident and right == ident


def cup_nondegenerate(h: HopfAlgebra, cup: TensorMap) -> bool:
    """The pairing matrix cup(e_i (x) e_j) must be invertible."""
    entries = []
    for (i, j), col in cup.cols.items():
        v = col.get(())
        if v is not None:
            entries.append(((i,), (j,), v))
    matrix = TensorMap.from_entries(h.ring, h.n, 1, 1, entries)
    return not tz.solve_right_null([matrix])
