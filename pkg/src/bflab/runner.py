"""Suite orchestration: build the derived structures, run checks, assemble a report.

Structures build lazily in dependency order (Hopf axioms -> integrals ->
braiding -> Frobenius -> twist); a build failure marks every dependent check
``error`` rather than ``fail`` so a single broken prerequisite does not read
as a cascade of refuted identities.  Observational checks record their
outcome as ``observational-true``/``-false`` and never affect the exit
status.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__, braid as br, diagram as dg, frobenius as fr
from . import integral as ig, tensor as tz, twist as tw
from .config import SuiteConfig, build_algebra, describe_algebra
from .errors import BflError
from .hopf import HopfAlgebra
from .tensor import compose


class Builder:
    """Memoized construction of the derived structures for one algebra."""

    def __init__(self, h: HopfAlgebra):
        self.h = h
        self._lock = threading.RLock()
        self._cache: dict = {}

    def _get(self, key, fn):
        with self._lock:
            if key not in self._cache:
                try:
                    self._cache[key] = ("ok", fn())
                except Exception as exc:  # memoized so dependents agree
                    self._cache[key] = ("error", exc)
            status, value = self._cache[key]
        if status == "error":
            raise value
        return value

    def axioms(self) -> dict:
        return self._get("axioms", self.h.check_all_axioms)

    def require_axioms(self):
        bad = sorted(k for k, v in self.axioms().items() if not v)
        if bad:
            raise BflError(f"prerequisite Hopf axioms failed: {bad}")
        return self.h

    def pair(self) -> ig.IntegralPair:
        return self._get("pair", lambda: ig.find_integral_pair(self.require_axioms()))

    def cupcap(self):
        def build():
            cc, pair = ig.build_cupcap(self.h, self.pair())
            return cc, pair

        return self._get("cupcap", build)

    def heap(self):
        return self._get("heap", lambda: br.build_heap_T(self.require_axioms()))

    def braid(self) -> br.BraidData:
        def build():
            t = self.heap()
            beta1, beta1_inv = br.build_beta1(self.h, t, verify=False)
            beta, beta_inv = br.build_beta(self.h, t, verify=False)
            return br.BraidData(t, beta1, beta1_inv, beta, beta_inv)

        return self._get("braid", build)

    def frob(self) -> fr.FrobeniusData:
        def build():
            cc, pair = self.cupcap()
            braid = self.braid()
            h = self.h
            mu2 = h.chain(h.par(1, cc.cup, 1))
            delta2 = h.chain(h.par(1, cc.cap, 1))
            return fr.FrobeniusData(h, pair, cc, braid, mu2, delta2, cc.cap, cc.cup)

        return self._get("frob", build)

    def twist(self) -> tw.TwistData:
        return self._get("twist", lambda: tw.build_twist(self.frob()))

    def loop_twist_pair(self):
        def build():
            f = self.frob()
            return tw.build_loop_twist(f, True), tw.build_loop_twist(f, False)

        return self._get("loop_twist_pair", build)

    def theta_vv_loop(self):
        return self._get(
            "theta_vv_loop",
            lambda: tw.doubled_by_tortile(self.h, self.twist().Theta, self.braid().beta),
        )

    # report dictionaries shared by several check entries
    def frobenius_report(self) -> dict:
        return self._get("frobenius_report",
                         lambda: fr.check_frobenius_axioms(self.frob()))

    def braided_report(self) -> dict:
        return self._get("braided_report",
                         lambda: fr.check_braided_frobenius(self.frob()))

    def cupcap_slides(self) -> dict:
        def build():
            cc, _ = self.cupcap()
            return br.check_cupcap_braiding(self.h, self.braid().beta, cc.cup, cc.cap)

        return self._get("cupcap_slides", build)


@dataclass(frozen=True)
class CheckSpec:
    suite: str
    name: str
    arity: int  # X-power of the space the compared maps act on
    kind: str  # "asserted" | "observational"
    run: object


def _axiom(name):
    return lambda b: b.axioms()[name]


CHECKS = [
    CheckSpec("hopf_axioms", "associativity", 3, "asserted", _axiom("associativity")),
    CheckSpec("hopf_axioms", "coassociativity", 1, "asserted", _axiom("coassociativity")),
    CheckSpec("hopf_axioms", "unit", 1, "asserted", _axiom("unit")),
    CheckSpec("hopf_axioms", "counit", 1, "asserted", _axiom("counit")),
    CheckSpec("hopf_axioms", "bialgebra", 2, "asserted", _axiom("bialgebra")),
    CheckSpec("hopf_axioms", "antipode", 1, "asserted", _axiom("antipode")),
    CheckSpec("hopf_axioms", "antihom", 2, "asserted", _axiom("antihom")),
    CheckSpec("hopf_axioms", "commutative", 2, "observational",
              lambda b: b.h.is_commutative()),
    CheckSpec("hopf_axioms", "cocommutative", 1, "observational",
              lambda b: b.h.is_cocommutative()),
    CheckSpec("hopf_axioms", "involutory", 1, "observational",
              lambda b: b.h.is_involutory()),
    CheckSpec("integrals", "element_rank_one", 1, "asserted",
              lambda b: b.pair().Lambda is not None),
    CheckSpec("integrals", "functional_rank_one", 1, "asserted",
              lambda b: b.pair().functional is not None),
    CheckSpec("integrals", "element_two_sided", 1, "asserted",
              lambda b: ig.check_element_equation(b.h, b.pair().Lambda, "left")
              and ig.check_element_equation(b.h, b.pair().Lambda, "right")),
    CheckSpec("integrals", "functional_two_sided", 1, "asserted",
              lambda b: ig.check_functional_equation(b.h, b.pair().functional, "left")
              and ig.check_functional_equation(b.h, b.pair().functional, "right")),
    CheckSpec("switchback", "switchback", 1, "asserted",
              lambda b: ig.check_switchback(b.h, b.cupcap()[0])),
    CheckSpec("switchback", "cup_nondegenerate", 1, "asserted",
              lambda b: ig.cup_nondegenerate(b.h, b.cupcap()[0].cup)),
    CheckSpec("tsd", "tsd", 5, "asserted", lambda b: br.check_tsd(b.h, b.heap())),
    CheckSpec("tsd", "invertible_tsd", 3, "asserted",
              lambda b: br.check_invertible_tsd(b.h, b.heap())),
    CheckSpec("tsd", "coalgebra_morphism", 3, "asserted",
              lambda b: br.check_coalgebra_morphism(b.h, b.heap())),
    CheckSpec("braiding", "beta1_inverse", 3, "asserted",
              lambda b: compose(b.braid().beta1, b.braid().beta1_inv) == b.h.id(3)
              and compose(b.braid().beta1_inv, b.braid().beta1) == b.h.id(3)),
    CheckSpec("braiding", "beta_inverse", 4, "asserted",
              lambda b: compose(b.braid().beta, b.braid().beta_inv) == b.h.id(4)
              and compose(b.braid().beta_inv, b.braid().beta) == b.h.id(4)),
    CheckSpec("braiding", "beta_factors_through_beta1", 4, "asserted",
              lambda b: b.h.chain(b.h.par(1, b.braid().beta1),
                                  b.h.par(b.braid().beta1, 1)) == b.braid().beta),
    CheckSpec("braiding", "cup_slide_left", 4, "asserted",
              lambda b, k="cup_slide_left": b.cupcap_slides()[k]),
    CheckSpec("braiding", "cup_slide_right", 4, "asserted",
              lambda b, k="cup_slide_right": b.cupcap_slides()[k]),
    CheckSpec("braiding", "cap_slide_left", 2, "asserted",
              lambda b, k="cap_slide_left": b.cupcap_slides()[k]),
    CheckSpec("braiding", "cap_slide_right", 2, "asserted",
              lambda b, k="cap_slide_right": b.cupcap_slides()[k]),
    CheckSpec("ybe", "ybe", 6, "asserted", lambda b: br.check_ybe(b.h, b.braid().beta)),
    CheckSpec("passcup", "passcup", 4, "asserted",
              lambda b: br.check_passcup(b.h, b.cupcap()[0].cup, b.heap())),
    CheckSpec("passcup", "passcap", 2, "asserted",
              lambda b: br.check_passcap(b.h, b.cupcap()[0].cap, b.heap())),
    CheckSpec("frobenius", "associativity", 6, "asserted",
              lambda b, k="associativity": b.frobenius_report()[k]),
    CheckSpec("frobenius", "coassociativity", 2, "asserted",
              lambda b, k="coassociativity": b.frobenius_report()[k]),
    CheckSpec("frobenius", "unit", 2, "asserted",
              lambda b, k="unit": b.frobenius_report()[k]),
    CheckSpec("frobenius", "counit", 2, "asserted",
              lambda b, k="counit": b.frobenius_report()[k]),
    CheckSpec("frobenius", "frobenius_left", 4, "asserted",
              lambda b, k="frobenius_left": b.frobenius_report()[k]),
    CheckSpec("frobenius", "frobenius_right", 4, "asserted",
              lambda b, k="frobenius_right": b.frobenius_report()[k]),
    CheckSpec("frobenius", "closed_form", 4, "asserted",
              lambda b: fr.check_closed_form(b.frob())),
    CheckSpec("frobenius", "capmult", 2, "asserted",
              lambda b: fr.check_capmult(b.frob())),
    CheckSpec("braided_frobenius", "mu_slide_left", 6, "asserted",
              lambda b, k="mu_slide_left": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "mu_slide_right", 6, "asserted",
              lambda b, k="mu_slide_right": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "delta_slide_left", 4, "asserted",
              lambda b, k="delta_slide_left": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "delta_slide_right", 4, "asserted",
              lambda b, k="delta_slide_right": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "eta_slide_left", 2, "asserted",
              lambda b, k="eta_slide_left": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "eta_slide_right", 2, "asserted",
              lambda b, k="eta_slide_right": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "eps_slide_left", 4, "asserted",
              lambda b, k="eps_slide_left": b.braided_report()[k]),
    CheckSpec("braided_frobenius", "eps_slide_right", 4, "asserted",
              lambda b, k="eps_slide_right": b.braided_report()[k]),
    CheckSpec("twist", "theta_matches_closed_form", 2, "asserted",
              lambda b: b.twist().theta == b.twist().theta_core),
    CheckSpec("twist", "theta_invertible", 2, "asserted",
              lambda b: tz.is_invertible(b.twist().theta)),
    CheckSpec("twist", "theta_commutes_braiding", 4, "asserted",
              lambda b: tw.check_twist_braiding(b.h, b.twist().theta, b.braid().beta)),
    CheckSpec("twist", "loop_twist_commutes_braiding", 4, "asserted",
              lambda b: tw.check_twist_braiding(b.h, b.twist().Theta, b.braid().beta)),
    CheckSpec("twist", "slideloop", 3, "asserted",
              lambda b: tw.check_slideloop(b.h, b.heap())),
    CheckSpec("twist", "theta_multiplication", 4, "asserted",
              lambda b: tw.check_twist_multiplication(
                  b.frob(), b.twist().theta, b.twist().theta_doubled)),
    CheckSpec("twist", "theta_comultiplication", 2, "asserted",
              lambda b: tw.check_twist_comultiplication(
                  b.frob(), b.twist().theta, b.twist().theta_doubled)),
    CheckSpec("twist", "theta_multiplication_closed_form", 4, "asserted",
              lambda b: tw.check_twist_multiplication_closed_form(
                  b.frob(), b.twist().theta)),
    CheckSpec("twist", "loop_twist_multiplication", 4, "asserted",
              lambda b: tw.check_twist_multiplication(
                  b.frob(), b.twist().Theta, b.theta_vv_loop())),
    CheckSpec("twist", "loop_twist_comultiplication", 2, "asserted",
              lambda b: tw.check_twist_comultiplication(
                  b.frob(), b.twist().Theta, b.theta_vv_loop())),
    CheckSpec("tortile", "tortile", 4, "asserted",
              lambda b: tw.check_tortile(
                  b.h, b.twist().theta, b.twist().theta_doubled, b.braid().beta)),
    CheckSpec("observational", "cancelpair", 2, "observational",
              lambda b: compose(b.loop_twist_pair()[1], b.loop_twist_pair()[0])
              == b.h.id(2)),
    CheckSpec("observational", "theta_equals_loop_twist", 2, "observational",
              lambda b: b.twist().theta == b.twist().Theta),
    CheckSpec("observational", "tsd_repeated_first_slot", 5, "observational",
              lambda b: br.check_tsd_repeated_first(b.h, b.heap())),
]


def _run_one(spec: CheckSpec, builder: Builder, n: int) -> dict:
    start = time.perf_counter()
    try:
        value = bool(spec.run(builder))
        if spec.kind == "observational":
            status = "observational-true" if value else "observational-false"
        else:
            status = "pass" if value else "fail"
        entry = {"status": status}
    except Exception as exc:
        entry = {"status": "error", "message": f"{type(exc).__name__}: {exc}"}
    entry["wall_time"] = round(time.perf_counter() - start, 6)
    entry["dimensions"] = {"space": f"X^{spec.arity}", "dim": n**spec.arity}
    return entry


def run_suites(cfg: SuiteConfig, h: HopfAlgebra | None = None) -> dict:
    if cfg.stream_threshold is not None:
        tz.set_stream_threshold(cfg.stream_threshold)
    try:
        if h is None:
            h = build_algebra(cfg)
        builder = Builder(h)
        selected = [spec for spec in CHECKS if spec.suite in cfg.suites]
        if cfg.jobs > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(
                    pool.map(lambda s: _run_one(s, builder, h.n), selected)
                )
        else:
            results = [_run_one(spec, builder, h.n) for spec in selected]
        checks = {
            f"{spec.suite}.{spec.name}": entry
            for spec, entry in zip(selected, results)
        }
        report = {
            "tool": {"name": "bflab", "version": __version__},
            "algebra": {
                "label": describe_algebra(cfg, h),
                "family": h.family,
                "params": list(h.params),
                "ring": h.ring.tag,
                "rank": h.n,
                "fingerprint": h.fingerprint(),
            },
            "suites": list(cfg.suites),
            "checks": checks,
            "data": _collect_data(builder, cfg),
            "summary": _summarize(checks),
        }
        return report
    finally:
        tz.set_stream_threshold(None)


def _collect_data(builder: Builder, cfg: SuiteConfig) -> dict:
    data: dict = {}
    ring = builder.h.ring
    if "integrals" in cfg.suites or "switchback" in cfg.suites:
        try:
            cc, pair = builder.cupcap()
            data["integrals"] = {
                "Lambda": tz.serialize(pair.Lambda),
                "functional": tz.serialize(pair.functional),
                "normalization": ring.format(pair.normalization),
            }
        except Exception as exc:
            data["integrals"] = {"error": f"{type(exc).__name__}: {exc}"}
    if "frobenius" in cfg.suites:
        try:
            data["frobenius"] = {
                "pairing_scalar": ring.format(fr.pairing_scalar(builder.frob()))
            }
        except Exception as exc:
            data["frobenius"] = {"error": f"{type(exc).__name__}: {exc}"}
    return data


def _summarize(checks: dict) -> dict:
    counts = {"passed": 0, "failed": 0, "errors": 0, "observational": 0}
    for entry in checks.values():
        status = entry["status"]
        if status == "pass":
            counts["passed"] += 1
        elif status == "fail":
            counts["failed"] += 1
        elif status == "error":
            counts["errors"] += 1
        else:
            counts["observational"] += 1
    counts["ok"] = counts["failed"] == 0 and counts["errors"] == 0
    return counts


def diagram_context(builder: Builder) -> dg.Context:
    """Generator maps for the diagram evaluator; everything that built is
    available, the rest raises ContextError on use."""
    h = builder.h
    maps = {
        "mu": h.mu,
        "delta": h.delta,
        "eta": h.unit,
        "eps": h.counit,
        "S": h.antipode,
        "tau": h.tau(),
    }
    try:
        braid = builder.braid()
        maps.update(
            T=braid.T, beta1=braid.beta1, beta1inv=braid.beta1_inv,
            beta=braid.beta, betainv=braid.beta_inv,
        )
    except Exception:
        pass
    try:
        cc, _ = builder.cupcap()
        maps.update(cup=cc.cup, cap=cc.cap, eps2=cc.cup, eta2=cc.cap)
    except Exception:
        pass
    try:
        f = builder.frob()
        maps.update(mu2=f.mu2, delta2=f.delta2)
    except Exception:
        pass
    try:
        td = builder.twist()
        maps.update(theta=td.theta, Theta=td.Theta, theta_vv=td.theta_doubled)
    except Exception:
        pass
    return dg.Context(h.ring, h.n, maps, h.fingerprint())
