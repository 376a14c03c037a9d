"""Loading algebra and suite configuration from TOML text.

A config names one algebra and optionally narrows the verification suites::

    family = "group"            # group | dual_group | truncated_poly | explicit
    ring = "Q"                  # "Q" or "Fp:<p>"
    orders = [2, 2]             # group families
    # p = 2 ; k = 2 ; vars = 1  # truncated_poly
    suites = ["hopf_axioms"]    # optional, defaults to every suite
    label = "k[Z2xZ2]"          # optional display name
    stream_threshold = 100000   # optional dense/streaming cutoff
    jobs = 1                    # optional parallelism degree

    # family = "explicit" supplies the five structure tensors:
    # [tensors]
    # mu = '''tensor ring=Q n=2 in=2 out=1
    # (0) <- (0,0) : 1
    # ...'''
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .scalar import ring_from_text
from . import tensor as tz
from .hopf import (
    HopfAlgebra,
    build_dual_group_algebra,
    build_group_algebra,
    build_truncated_polynomial,
    make_hopf,
)

ALL_SUITES = (
    "hopf_axioms",
    "integrals",
    "switchback",
    "tsd",
    "braiding",
    "ybe",
    "passcup",
    "frobenius",
    "braided_frobenius",
    "twist",
    "tortile",
    "observational",
)

FAMILIES = ("group", "dual_group", "truncated_poly", "explicit")


@dataclass
class SuiteConfig:
    family: str
    ring_text: str
    orders: tuple = ()
    p: int = 0
    k: int = 0
    variables: int = 1
    tensors: dict = field(default_factory=dict)
    label: str = ""
    suites: tuple = ALL_SUITES
    out: str = ""
    stream_threshold: int | None = None
    jobs: int = 1
    eager_check: bool = True


def parse_config(text: str) -> SuiteConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config is not valid TOML: {exc}") from exc
    family = raw.get("family")
    if family not in FAMILIES:
        raise ConfigError(f"family must be one of {FAMILIES}, got {family!r}")
    ring_text = raw.get("ring")
    if not isinstance(ring_text, str):
        raise ConfigError("config must set ring = \"Q\" or \"Fp:<p>\"")
    suites = tuple(raw.get("suites", ALL_SUITES))
    if not suites:
        raise ConfigError("at least one suite must be selected")
    for s in suites:
        if s not in ALL_SUITES:
            raise ConfigError(f"unknown suite {s!r}; choose from {ALL_SUITES}")
    cfg = SuiteConfig(
        family=family,
        ring_text=ring_text,
        orders=tuple(raw.get("orders", ())),
        p=int(raw.get("p", 0)),
        k=int(raw.get("k", 0)),
        variables=int(raw.get("vars", 1)),
        tensors=dict(raw.get("tensors", {})),
        label=str(raw.get("label", "")),
        suites=suites,
        out=str(raw.get("out", "")),
        stream_threshold=(
            int(raw["stream_threshold"]) if "stream_threshold" in raw else None
        ),
        jobs=int(raw.get("jobs", 1)),
        eager_check=bool(raw.get("eager_check", family != "explicit")),
    )
    if cfg.jobs < 1:
        raise ConfigError("jobs must be >= 1")
    return cfg


def load_config(path: str) -> SuiteConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def build_algebra(cfg: SuiteConfig) -> HopfAlgebra:
    ring = ring_from_text(cfg.ring_text)
    if cfg.family == "group":
        if not cfg.orders:
            raise ConfigError("group family needs orders = [..]")
        return build_group_algebra(ring, cfg.orders)
    if cfg.family == "dual_group":
        if not cfg.orders:
            raise ConfigError("dual_group family needs orders = [..]")
        return build_dual_group_algebra(ring, cfg.orders)
    if cfg.family == "truncated_poly":
        if cfg.p < 2 or cfg.k < 1:
            raise ConfigError("truncated_poly family needs p (prime) and k >= 1")
        return build_truncated_polynomial(ring, cfg.p, cfg.k, cfg.variables)
    required = ("mu", "unit", "delta", "counit", "antipode")
    missing = [name for name in required if name not in cfg.tensors]
    if missing:
        raise ConfigError(f"explicit family is missing tensors: {missing}")
    maps = {}
    for name in required:
        m = tz.deserialize(cfg.tensors[name])
        if m.ring != ring:
            raise ConfigError(f"tensor {name!r} is over {m.ring.tag}, config says {ring.tag}")
        maps[name] = m
    n = maps["mu"].n
    return make_hopf(ring, n, maps["mu"], maps["unit"], maps["delta"],
                     maps["counit"], maps["antipode"], check=cfg.eager_check)


def describe_algebra(cfg: SuiteConfig, h: HopfAlgebra) -> str:
    if cfg.label:
        return cfg.label
    if h.family in ("group", "dual_group"):
        body = "x".join(f"Z{m}" for m in h.params)
        name = f"k[{body}]"
        return name + "*" if h.family == "dual_group" else name
    if h.family == "truncated_poly":
        p, k, nvars = h.params
        if nvars == 1:
            return f"F{p}[X]/(X^{p**k})"
        inner = ",".join(f"X{i + 1}" for i in range(nvars))
        return f"F{p}[{inner}]/(X_i^{p**k})"
    return f"explicit(rank {h.n}, {h.ring.tag})"
