"""Line-oriented experiment configuration.

Grammar: `key = value` per line, `#` starts a comment, blank lines are
skipped, UTF-8.  Comma-separated values and repeated keys both form lists
(commas inside generator parentheses do not split).  Unknown keys are hard
errors so a typo can never silently change an experiment.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .errors import BadValue, NotPrime, UnknownKey
from .field import is_prime
from .generators import SetSpec, parse_set_spec


@dataclass
class ExperimentConfig:
    experiment: str = "experiment"
    p_list: list[int] = field(default_factory=list)
    p_max: int = 0  # when set, extends p_list with every admissible prime <= p_max
    chi: list[str] = field(default_factory=lambda: ["legendre"])
    set_a: list[SetSpec] = field(default_factory=list)
    set_b: list[SetSpec] = field(default_factory=list)
    set_c: list[SetSpec] = field(default_factory=list)
    seed_list: list[int] = field(default_factory=lambda: [0])
    epsilon_list: list[float] = field(default_factory=lambda: [0.1, 0.25, 0.5, 0.75, 1.0])
    q: float = 2.0
    cs_constant: float = 1.0
    r_list: list[int] = field(default_factory=lambda: [1])
    i_sizes: list[int] = field(default_factory=lambda: [1, 2, 3, 4])
    polys_per_case: int = 50
    m_max: int = 4
    instances: int = 100
    max_set_size: int = 12
    context_limit: int = 1 << 20
    davenport_direct_cap: int = 250_000
    davenport_expanded_cap: int = 1 << 16
    gap_cap: int = 1 << 24
    ternary_direct_cap: int = 1_000_000
    system_direct_cap: int = 1 << 21
    clique_cap: int = 10_000

    def primes(self, residue_one_mod_four: bool = False) -> list[int]:
        """The effective prime list: p_list plus the p_max sweep, deduplicated."""
        from .field import primes_up_to

        ps = list(self.p_list)
        if self.p_max:
            ps.extend(q for q in primes_up_to(self.p_max) if q >= 3)
        ps = sorted(set(ps))
        if residue_one_mod_four:
            ps = [q for q in ps if q % 4 == 1]
        return ps


def _parse_prime(text: str) -> int:
    v = int(text)
    if not is_prime(v):
        raise NotPrime(f"p={v} in config is not prime")
    return v


def _parse_chi(text: str) -> str:
    t = text.strip()
    if t in ("legendre", "higher") or t.startswith("index:") or t.startswith("order:"):
        if ":" in t:
            int(t.split(":", 1)[1])  # must carry an integer
        return t
    raise ValueError(
        f"chi spec must be 'legendre', 'higher', 'index:K' or 'order:D', got {t!r}"
    )


# key -> (converter, elementwise list?)
_REGISTRY = {
    "experiment": (str, False),
    "p_list": (_parse_prime, True),
    "p_max": (int, False),
    "chi": (_parse_chi, True),
    "set_a": (parse_set_spec, True),
    "set_b": (parse_set_spec, True),
    "set_c": (parse_set_spec, True),
    "seed_list": (int, True),
    "epsilon_list": (float, True),
    "q": (float, False),
    "cs_constant": (float, False),
    "r_list": (int, True),
    "i_sizes": (int, True),
    "polys_per_case": (int, False),
    "m_max": (int, False),
    "instances": (int, False),
    "max_set_size": (int, False),
    "context_limit": (int, False),
    "davenport_direct_cap": (int, False),
    "davenport_expanded_cap": (int, False),
    "gap_cap": (int, False),
    "ternary_direct_cap": (int, False),
    "system_direct_cap": (int, False),
    "clique_cap": (int, False),
}


def _split_top_level(value: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [s.strip() for s in parts if s.strip()]


def parse_config(text: str) -> ExperimentConfig:
    """Parse config text into an ExperimentConfig; primes are validated here."""
    cfg = ExperimentConfig()
    seen_scalar = set()
    list_keys_touched = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadValue(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _REGISTRY:
            raise UnknownKey(f"line {lineno}: unknown key {key!r}")
        conv, is_list = _REGISTRY[key]
        try:
            if is_list:
                items = [conv(v) for v in _split_top_level(value)]
                if key not in list_keys_touched:
                    setattr(cfg, key, [])  # replace the default on first sight
                    list_keys_touched.add(key)
                getattr(cfg, key).extend(items)
            else:
                if key in seen_scalar:
                    raise BadValue(f"line {lineno}: key {key!r} given more than once")
                seen_scalar.add(key)
                setattr(cfg, key, conv(value))
        except (NotPrime, UnknownKey, BadValue):
            raise
        except Exception as exc:
            raise BadValue(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    return cfg


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_field_names() -> list[str]:
    return [f.name for f in fields(ExperimentConfig)]
