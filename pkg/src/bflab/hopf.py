"""Hopf algebras as structure constants, axiom checks, and example builders.

An algebra of rank n is given by five tensor maps over one ground field:
multiplication ``mu`` (2->1), unit ``unit`` (0->1), comultiplication
``delta`` (1->2), counit ``counit`` (1->0) and antipode ``antipode`` (1->1).
Builders verify all axioms eagerly; hand-entered structure constants may be
constructed unchecked and probed on demand (``check_all_axioms``), which is
what the mutation-sensitivity tests rely on.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .errors import ConfigError, ShapeError, VerificationError
from .scalar import PrimeField
from . import tensor as tz
from .tensor import TensorMap, compose, identity, permute, tensor


@dataclass(frozen=True)
class HopfAlgebra:
    ring: object
    n: int
    mu: TensorMap
    unit: TensorMap
    delta: TensorMap
    counit: TensorMap
    antipode: TensorMap
    basis_labels: tuple = ()
    family: str = "explicit"
    params: tuple = ()

    def __post_init__(self):
        expected = {
            "mu": (2, 1),
            "unit": (0, 1),
            "delta": (1, 2),
            "counit": (1, 0),
            "antipode": (1, 1),
        }
        for name, (a, b) in expected.items():
            m = getattr(self, name)
            if m.ring != self.ring or m.n != self.n:
                raise ShapeError(f"{name} does not live over the declared ring/rank")
            if (m.in_arity, m.out_arity) != (a, b):
                raise ShapeError(f"{name} must be {a}->{b}")
        if self.basis_labels and len(self.basis_labels) != self.n:
            raise ShapeError("basis_labels length must equal the rank")

    # -- convenience -------------------------------------------------------
    def id(self, arity: int = 1) -> TensorMap:
        return identity(self.ring, self.n, arity)

    def tau(self) -> TensorMap:
        return permute(self.ring, self.n, 2, (1, 0))

    def par(self, *parts):
        return tz.par(self.ring, *parts)

    def chain(self, *stages) -> TensorMap:
        return tz.run_chain(self.ring, self.n, stages)

    # -- axiom checks ------------------------------------------------------
    def check_associativity(self) -> bool:
        lhs = self.chain(self.par(self.mu, 1), self.mu)
        rhs = self.chain(self.par(1, self.mu), self.mu)
        return lhs == rhs

    def check_unit(self) -> bool:
        left = self.chain(self.par(self.unit, 1), self.mu)
        right = self.chain(self.par(1, self.unit), self.mu)
        return left == self.id() and right == self.id()

    def check_coassociativity(self) -> bool:
        lhs = self.chain(self.delta, self.par(self.delta, 1))
        rhs = self.chain(self.delta, self.par(1, self.delta))
        return lhs == rhs

    def check_counit(self) -> bool:
        left = self.chain(self.delta, self.par(self.counit, 1))
        right = self.chain(self.delta, self.par(1, self.counit))
        return left == self.id() and right == self.id()

    def check_bialgebra(self) -> bool:
        """delta o mu = (mu (x) mu) o (1 (x) tau (x) 1) o (delta (x) delta),
        together with the unit/counit compatibilities delta eta = eta (x) eta,
        eps mu = eps (x) eps and eps eta = 1."""
        lhs = compose(self.mu, self.delta)
        rhs = self.chain(
            self.par(self.delta, self.delta),
            tz.route(0, 2, 1, 3),
            self.par(self.mu, self.mu),
        )
        if lhs != rhs:
            return False
        if compose(self.unit, self.delta) != tensor(self.unit, self.unit):
            return False
        if compose(self.mu, self.counit) != tensor(self.counit, self.counit):
            return False
        eps_eta = compose(self.unit, self.counit)
        return eps_eta.cols.get((), {}).get((), None) == self.ring.one

    def check_antipode(self) -> bool:
        eta_eps = compose(self.counit, self.unit)
        left = self.chain(self.delta, self.par(1, self.antipode), self.mu)
        right = self.chain(self.delta, self.par(self.antipode, 1), self.mu)
        return left == eta_eps and right == eta_eps

    def check_antihom(self) -> bool:
        """S mu tau = mu (S (x) S), together with S eta = eta and eps S = eps."""
        s = self.antipode
        lhs = self.chain(self.tau(), self.mu, s)
        rhs = self.chain(self.par(s, s), self.mu)
        return (
            lhs == rhs
            and compose(self.unit, s) == self.unit
            and compose(s, self.counit) == self.counit
        )

    def check_all_axioms(self) -> dict:
        return {
            "associativity": self.check_associativity(),
            "coassociativity": self.check_coassociativity(),
            "unit": self.check_unit(),
            "counit": self.check_counit(),
            "bialgebra": self.check_bialgebra(),
            "antipode": self.check_antipode(),
            "antihom": self.check_antihom(),
        }

    def is_commutative(self) -> bool:
        return compose(self.tau(), self.mu) == self.mu

    def is_cocommutative(self) -> bool:
        return compose(self.delta, self.tau()) == self.delta

    def is_involutory(self) -> bool:
        return compose(self.antipode, self.antipode) == self.id()

    def sweedler(self, m: int) -> TensorMap:
        """Iterated comultiplication 1 -> m; bracketing is irrelevant by
        coassociativity, built here by splitting the leftmost leg."""
        if m < 1:
            raise ShapeError(f"sweedler arity must be >= 1, got {m}")
        out = self.id()
        for k in range(m - 1):
            out = compose(out, self.chain(self.par(self.delta, k)))
        return out

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(self.ring.tag.encode())
        h.update(str(self.n).encode())
        h.update(self.family.encode())
        h.update(repr(self.params).encode())
        for name in ("mu", "unit", "delta", "counit", "antipode"):
            h.update(tz.serialize(getattr(self, name)).encode())
        return h.hexdigest()[:16]


def make_hopf(ring, n, mu, unit, delta, counit, antipode, labels=(),
              family="explicit", params=(), check=True) -> HopfAlgebra:
    """Assemble a Hopf algebra, optionally verifying every axiom eagerly."""
    h = HopfAlgebra(ring, n, mu, unit, delta, counit, antipode, tuple(labels),
                    family, tuple(params))
    if check:
        results = h.check_all_axioms()
        bad = sorted(name for name, ok in results.items() if not ok)
        if bad:
            raise VerificationError(f"axioms failed for {family}{params}: {bad}")
    return h


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _group_labels(orders):
    def label(exps):
        if not any(exps):
            return "e"
        if len(exps) == 1:
            return "g" if exps[0] == 1 else f"g^{exps[0]}"
        parts = []
        for i, a in enumerate(exps):
            if a == 1:
                parts.append(f"g{i}")
            elif a > 1:
                parts.append(f"g{i}^{a}")
        return "*".join(parts)

    return tuple(label(e) for e in itertools.product(*[range(m) for m in orders]))


def build_group_algebra(ring, cyclic_orders) -> HopfAlgebra:
    """Group algebra k[G] for G a product of cyclic groups.

    Basis enumeration is mixed-radix over the cyclic factors; mu is the
    linearized group law, delta the diagonal, S linearized inversion.
    """
    orders = tuple(int(m) for m in cyclic_orders)
    if not orders or any(m < 1 for m in orders):
        raise ConfigError(f"cyclic orders must all be >= 1, got {list(cyclic_orders)}")
    elements = list(itertools.product(*[range(m) for m in orders]))
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    one = ring.one

    def gmul(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    def ginv(a):
        return tuple((-x) % m for x, m in zip(a, orders))

    e = elements[0]
    mu = TensorMap.from_entries(
        ring, n, 2, 1,
        (((index[gmul(a, b)],), (index[a], index[b]), one) for a in elements for b in elements),
    )
    unit = TensorMap.from_entries(ring, n, 0, 1, [((index[e],), (), one)])
    delta = TensorMap.from_entries(
        ring, n, 1, 2, (((i, i), (i,), one) for i in range(n))
    )
    counit = TensorMap.from_entries(ring, n, 1, 0, (((), (i,), one) for i in range(n)))
    antipode = TensorMap.from_entries(
        ring, n, 1, 1, (((index[ginv(a)],), (index[a],), one) for a in elements)
    )
    return make_hopf(ring, n, mu, unit, delta, counit, antipode,
                     _group_labels(orders), "group", orders)


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """Transpose-dual algebra on the dual basis: mu* = delta^T and so on."""
    return make_hopf(
        h.ring,
        h.n,
        tz.transpose(h.delta),
        tz.transpose(h.counit),
        tz.transpose(h.mu),
        tz.transpose(h.unit),
        tz.transpose(h.antipode),
        tuple(f"{lbl}*" for lbl in h.basis_labels),
        f"dual_{h.family}",
        h.params,
    )


def build_dual_group_algebra(ring, cyclic_orders) -> HopfAlgebra:
    return dual_hopf(build_group_algebra(ring, cyclic_orders))


def _binomial_mod(m: int, j: int, p: int) -> int:
    # Lucas' theorem keeps the numbers small
    result = 1
    while m or j:
        mi, m = m % p, m // p
        ji, j = j % p, j // p
        if ji > mi:
            return 0
        num = den = 1
        for t in range(ji):
            num = num * (mi - t) % p
            den = den * (t + 1) % p
        result = result * num * pow(den, p - 2, p) % p
    return result


def build_truncated_polynomial(ring, p: int, k: int, nvars: int = 1) -> HopfAlgebra:
    """F_p[X_1..X_v]/(X_i^{p^k}) with primitive generators.

    delta extends Delta(X_i) = 1 (x) X_i + X_i (x) 1 multiplicatively; the
    truncation exponent being a power of the characteristic is what makes
    that extension well defined (binomials across the boundary vanish mod p).
    """
    if not isinstance(ring, PrimeField) or ring.p != p:
        raise ConfigError(f"truncated polynomial algebra needs the ring F_{p}")
    if k < 1 or nvars < 1:
        raise ConfigError("truncation power and variable count must be >= 1")
    q = p**k
    # graded-lex with the first variable ranked highest
    monomials = sorted(
        itertools.product(range(q), repeat=nvars),
        key=lambda m: (sum(m), tuple(-a for a in m)),
    )
    index = {m: i for i, m in enumerate(monomials)}
    n = len(monomials)
    one = ring.one

    def label(m):
        if not any(m):
            return "1"
        parts = []
        for i, a in enumerate(m):
            if a == 0:
                continue
            name = "X" if nvars == 1 else f"X{i + 1}"
            parts.append(name if a == 1 else f"{name}^{a}")
        return "*".join(parts)

    mu_entries = []
    for a in monomials:
        for b in monomials:
            prod = tuple(x + y for x, y in zip(a, b))
            if all(x < q for x in prod):
                mu_entries.append(((index[prod],), (index[a], index[b]), one))
    mu = TensorMap.from_entries(ring, n, 2, 1, mu_entries)

    delta_entries = []
    for m in monomials:
        for split in itertools.product(*[range(a + 1) for a in m]):
            coeff = 1
            for a, j in zip(m, split):
                coeff = coeff * _binomial_mod(a, j, p) % p
            if coeff:
                rest = tuple(a - j for a, j in zip(m, split))
                delta_entries.append(((index[split], index[rest]), (index[m],), coeff))
    delta = TensorMap.from_entries(ring, n, 1, 2, delta_entries)

    zero_m = monomials[0]
    unit = TensorMap.from_entries(ring, n, 0, 1, [((index[zero_m],), (), one)])
    counit = TensorMap.from_entries(ring, n, 1, 0, [((), (index[zero_m],), one)])
    antipode = TensorMap.from_entries(
        ring, n, 1, 1,
        (((index[m],), (index[m],), pow(p - 1, sum(m), p)) for m in monomials),
    )
    return make_hopf(ring, n, mu, unit, delta, counit, antipode,
                     tuple(label(m) for m in monomials), "truncated_poly",
                     (p, k, nvars))
