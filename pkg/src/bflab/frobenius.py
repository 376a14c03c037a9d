"""The braided Frobenius algebra on V = X (x) X.

The multiplication contracts the inner pair with the cup and the
comultiplication inserts the cap:

    mu2 = 1 (x) cup (x) 1     delta2 = 1 (x) cap (x) 1
    eta2 = cap                eps2 = cup

``check_frobenius_axioms`` verifies the six Frobenius laws at the V level;
``check_braided_frobenius`` the eight commutations with the braiding.  All
identities here hold exactly when the underlying Hopf algebra is commutative
and cocommutative; hypothesis-violating inputs can still be explored with
``force=True``, in which case the reports simply record failures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCommutativeError, VerificationError
from .tensor import TensorMap, chain_equal, compose
from .hopf import HopfAlgebra
from .integral import CupCap, IntegralPair, build_cupcap, find_integral_pair
from .braid import BraidData, build_braid


@dataclass(frozen=True)
class FrobeniusData:
    H: HopfAlgebra
    pair: IntegralPair
    cc: CupCap
    braid: BraidData
    mu2: TensorMap     # 4 -> 2
    delta2: TensorMap  # 2 -> 4
    eta2: TensorMap    # 0 -> 2
    eps2: TensorMap    # 2 -> 0


def build_frobenius(h: HopfAlgebra, force: bool = False) -> FrobeniusData:
    if not force:
        if not (h.is_commutative() and h.is_cocommutative()):
            raise NotCommutativeError(
                "the doubling construction needs a commutative, cocommutative "
                "Hopf algebra (pass force=True to explore anyway)"
            )
        axioms = h.check_all_axioms()
        bad = sorted(name for name, ok in axioms.items() if not ok)
        if bad:
            raise VerificationError(f"Hopf axioms fail: {bad}")
    pair = find_integral_pair(h)
    cc, pair = build_cupcap(h, pair)
    braid = build_braid(h)
    mu2 = h.chain(h.par(1, cc.cup, 1))
    delta2 = h.chain(h.par(1, cc.cap, 1))
    return FrobeniusData(h, pair, cc, braid, mu2, delta2, cc.cap, cc.cup)


def closed_form_frobenius(f: FrobeniusData) -> TensorMap:
    """(x,y,z,w) -> cup(y,z) . x (x) cap (x) w, assembled entrywise from the
    stored cup and cap rather than by composing mu2 and delta2."""
    h = f.H
    ring = h.ring
    cap_col = f.cc.cap.cols.get((), {})
    entries = []
    for (y, z), col in f.cc.cup.cols.items():
        s = col.get(())
        if s is None:
            continue
        for (a, b), capval in cap_col.items():
            coeff = ring.mul(s, capval)
            for x in range(h.n):
                for w in range(h.n):
                    entries.append(((x, a, b, w), (x, y, z, w), coeff))
    return TensorMap.from_entries(ring, h.n, 4, 4, entries)


def check_frobenius_axioms(f: FrobeniusData) -> dict:
    h = f.H
    ring, n = h.ring, h.n
    mu2, delta2, eta2, eps2 = f.mu2, f.delta2, f.eta2, f.eps2
    ident2 = [h.par(2)]
    frob_mid = [mu2, delta2]
    return {
        "associativity": chain_equal(
            ring, n, [h.par(mu2, 2), mu2], [h.par(2, mu2), mu2]
        ),
        "coassociativity": chain_equal(
            ring, n, [delta2, h.par(delta2, 2)], [delta2, h.par(2, delta2)]
        ),
        "unit": chain_equal(ring, n, [h.par(eta2, 2), mu2], ident2)
        and chain_equal(ring, n, [h.par(2, eta2), mu2], ident2),
        "counit": chain_equal(ring, n, [delta2, h.par(eps2, 2)], ident2)
        and chain_equal(ring, n, [delta2, h.par(2, eps2)], ident2),
        "frobenius_left": chain_equal(
            ring, n, [h.par(2, delta2), h.par(mu2, 2)], frob_mid
        ),
        "frobenius_right": chain_equal(
            ring, n, [h.par(delta2, 2), h.par(2, mu2)], frob_mid
        ),
    }


def check_closed_form(f: FrobeniusData) -> bool:
    """All three Frobenius composites equal the cup-scalar closed form."""
    h = f.H
    target = closed_form_frobenius(f)
    composites = [
        [f.mu2, f.delta2],
        [h.par(2, f.delta2), h.par(f.mu2, 2)],
        [h.par(f.delta2, 2), h.par(2, f.mu2)],
    ]
    return all(chain_equal(h.ring, h.n, c, [target]) for c in composites)


def check_capmult(f: FrobeniusData) -> bool:
    """delta2 = (mu2 (x) 1)(1 (x) delta2 eta2): the cap converts mu to delta."""
    h = f.H
    cap_split = compose(f.eta2, f.delta2)  # 0 -> 4
    rhs = [h.par(2, cap_split), h.par(f.mu2, 2)]
    return chain_equal(h.ring, h.n, rhs, [f.delta2])


def pairing_scalar(f: FrobeniusData):
    """eps2 o eta2 = cup o cap, a dimension-like invariant of the pairing."""
    loop = compose(f.eta2, f.eps2)
    return loop.cols.get((), {}).get((), f.H.ring.zero)


def check_braided_frobenius(f: FrobeniusData) -> dict:
    """The eight naturality equations between the braiding and the Frobenius
    structure maps, each identity block being the V-level identity 1^2."""
    h = f.H
    ring, n = h.ring, h.n
    b, mu2, delta2, eta2, eps2 = f.braid.beta, f.mu2, f.delta2, f.eta2, f.eps2
    return {
        "mu_slide_left": chain_equal(
            ring, n,
            [h.par(b, 2), h.par(2, b), h.par(mu2, 2)],
            [h.par(2, mu2), b],
        ),
        "mu_slide_right": chain_equal(
            ring, n,
            [h.par(2, b), h.par(b, 2), h.par(2, mu2)],
            [h.par(mu2, 2), b],
        ),
        "delta_slide_left": chain_equal(
            ring, n,
            [h.par(2, delta2), h.par(b, 2), h.par(2, b)],
            [b, h.par(delta2, 2)],
        ),
        "delta_slide_right": chain_equal(
            ring, n,
            [h.par(delta2, 2), h.par(2, b), h.par(b, 2)],
            [b, h.par(2, delta2)],
        ),
        "eta_slide_left": chain_equal(
            ring, n, [h.par(eta2, 2), b], [h.par(2, eta2)]
        ),
        "eta_slide_right": chain_equal(
            ring, n, [h.par(2, eta2), b], [h.par(eta2, 2)]
        ),
        "eps_slide_left": chain_equal(
            ring, n, [b, h.par(eps2, 2)], [h.par(2, eps2)]
        ),
        "eps_slide_right": chain_equal(
            ring, n, [b, h.par(2, eps2)], [h.par(eps2, 2)]
        ),
    }
