"""Structured set generators for experiment sweeps.

A generator spec is a compact string like `interval(a=0,n=10)` or
`gap(a0=0,steps=1|45,bounds=6|6)`.  Given a PrimeContext and a seed it
produces an FpSet deterministically: random subsets draw from a PCG64 stream
keyed only by the seed, so the same spec and seed always give the same set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import BadSpec
from .field import PrimeContext
from .fpsets import FpSet, Gap, gap_enumerate

KINDS = {
    "interval": {"a": 0, "n": None},
    "ap": {"a": 0, "d": None, "n": None},
    "gap": {"a0": 0, "steps": None, "bounds": None},
    "geometric": {"g": 1, "r": None, "n": None},
    "random": {"n": None, "seed": None},
    "residues": {},
}

_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*(.*?)\s*\))?\s*$")


@dataclass(frozen=True)
class SetSpec:
    kind: str
    params: tuple  # sorted ((name, value), ...)
    negate: bool
    raw: str  # canonical text form, used in CSV columns

    def param(self, name, default=None):
        for k, v in self.params:
            if k == name:
                return v
        return default


def parse_set_spec(text: str) -> SetSpec:
    """Parse `kind(k=v,...)`; `negate=1` flips the set through x -> -x."""
    m = _SPEC_RE.match(text)
    if not m:
        raise BadSpec(f"cannot parse set spec {text!r}")
    kind, body = m.group(1), m.group(2) or ""
    if kind not in KINDS:
        raise BadSpec(f"unknown generator kind {kind!r}")
    allowed = KINDS[kind]
    params = {}
    negate = False
    for item in filter(None, (s.strip() for s in body.split(","))):
        if "=" not in item:
            raise BadSpec(f"malformed parameter {item!r} in {text!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        if name == "negate":
            negate = value not in ("0", "false", "")
            continue
        if name not in allowed:
            raise BadSpec(f"parameter {name!r} not valid for kind {kind!r}")
        try:
            if name in ("steps", "bounds"):
                params[name] = tuple(int(v) for v in value.split("|"))
            else:
                params[name] = int(value)
        except ValueError as exc:
            raise BadSpec(f"bad value for {name!r} in {text!r}") from exc
    for name, default in allowed.items():
        if default is None and name not in params and not (kind == "random" and name == "seed"):
            raise BadSpec(f"kind {kind!r} requires parameter {name!r}")
    canon = kind
    shown = sorted(params.items())
    if shown or negate:
        parts = [f"{k}={'|'.join(map(str, v)) if isinstance(v, tuple) else v}" for k, v in shown]
        if negate:
            parts.append("negate=1")
        canon = f"{kind}({','.join(parts)})"
    else:
        canon = f"{kind}()"
    return SetSpec(kind, tuple(shown), negate, canon)


def generate_set(spec: SetSpec, ctx: PrimeContext, seed: int = 0) -> FpSet:
    """Realize a spec over F_p; `seed` feeds `random` specs without their own."""
    p = ctx.p
    kind = spec.kind
    if kind == "interval":
        a, n = spec.param("a", 0), spec.param("n")
        _check_count(n)
        out = FpSet.from_elements(p, range(a, a + n))
    elif kind == "ap":
        a, d, n = spec.param("a", 0), spec.param("d"), spec.param("n")
        _check_count(n)
        out = FpSet.from_elements(p, (a + j * d for j in range(n)))
    elif kind == "gap":
        gap = Gap(p, spec.param("a0", 0), spec.param("steps"), spec.param("bounds"))
        out = gap_enumerate(gap)
    elif kind == "geometric":
        g, r, n = spec.param("g", 1), spec.param("r"), spec.param("n")
        _check_count(n)
        elems, x = [], g % p
        for _ in range(n):
            elems.append(x)
            x = x * r % p
        out = FpSet.from_elements(p, elems)
    elif kind == "random":
        n = spec.param("n")
        _check_count(n)
        if n > p:
            raise BadSpec(f"random subset size {n} exceeds field size {p}")
        use_seed = spec.param("seed")
        rng = np.random.default_rng(seed if use_seed is None else use_seed)
        out = FpSet.from_elements(p, rng.permutation(p)[:n])
    elif kind == "residues":
        x = np.arange(1, p, dtype=np.int64)
        out = FpSet.from_elements(p, (x * x) % p)
    else:  # unreachable given parse_set_spec
        raise BadSpec(f"unknown generator kind {kind!r}")
    return out.negate() if spec.negate else out


def _check_count(n):
    if n is None or n < 0:
        raise BadSpec(f"set size must be a nonnegative integer, got {n}")
