"""Experiment sweeps behind the CLI: grid construction, per-row computation,
parallel execution with deterministic output order, and the selftest suites.

Rows of a sweep are independent pure computations; they may run on any number
of worker threads because the records are sorted by their identity key before
anything is written.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from . import oracles
from .clique import clique_number_exhaustive, paley_clique
from .config import ExperimentConfig
from .counts import (
    element_ratio_spectrum,
    incidence_count,
    level_set,
    sextuple_count,
    sum_pair_ratio_spectrum,
    sum_quotient_spectrum,
    system_count,
)
from .errors import CharlabError
from .field import Character, PrimeContext, divisors, make_context, primes_up_to
from .fpsets import (
    FpSet,
    Gap,
    additive_energy,
    gap_is_proper,
    lp_norm,
    multiplicative_energy,
    plunnecke_check,
    rep_spectrum,
    sumset,
)
from .generators import generate_set, parse_set_spec
from .periods import cs_period_search, l1_transfer_check, transfer_chain_verify
from .reporting import (
    CountsRecord,
    DavenportRecord,
    PaleyRecord,
    PeriodScanRecord,
    ScanRecord,
    SelftestRecord,
    WeilRecord,
    sort_records,
)
from .sums import (
    LinearFactorPoly,
    binary_sum,
    davenport_bound,
    davenport_moment,
    ternary_sum,
    weil_check,
)

SIZE_EXPONENT_OFFSET = 12 / 31  # sets must exceed p^(12/31 + delta)


@lru_cache(maxsize=64)
def _context(p: int, limit: int = 1 << 20) -> PrimeContext:
    return make_context(p, limit)


def resolve_chi(ctx: PrimeContext, spec: str) -> Character:
    """Turn a chi spec string into a character over ctx.

    legendre  -- the quadratic character;
    index:K   -- explicit index;
    order:D   -- one character of exact order D (D must divide p-1);
    higher    -- smallest order above 2 dividing p-1 (always exists for p >= 7).
    """
    if spec == "legendre":
        return ctx.legendre()
    if spec == "higher":
        for d in divisors(ctx.p - 1):
            if d > 2:
                return ctx.character_of_order(d)
        raise CharlabError(f"no character order above 2 exists mod {ctx.p}")
    name, _, arg = spec.partition(":")
    if name == "index":
        return ctx.character(int(arg))
    if name == "order":
        return ctx.character_of_order(int(arg))
    raise CharlabError(f"unknown chi spec {spec!r}")


def run_rows(fn, specs, workers: int = 1):
    """Map fn over row specs, serial or threaded, then sort deterministically."""
    if workers <= 1:
        records = [fn(s) for s in specs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(fn, specs))
    return sort_records(records)


# ---------------------------------------------------------------------------
# binary / ternary scans
# ---------------------------------------------------------------------------


def scan_row_specs(cfg: ExperimentConfig, kind: str):
    third = cfg.set_c if kind == "ternary" else [None]
    return [
        (cfg, kind, p, seed, sa, sb, sc, chi)
        for p in cfg.primes()
        for seed in cfg.seed_list
        for sa in cfg.set_a
        for sb in cfg.set_b
        for sc in third
        for chi in cfg.chi
    ]


def compute_scan_record(spec) -> ScanRecord:
    cfg, kind, p, seed, sa, sb, sc, chi_spec = spec
    t0 = time.perf_counter()
    flag = ""
    nan = float("nan")
    K = L = delta = nan
    lhs, rhs, ratio = nan, None, None
    p_large = False
    size_a = size_b = size_c = 0
    try:
        ctx = _context(p, cfg.context_limit)
        chi = resolve_chi(ctx, chi_spec)
        A = generate_set(sa, ctx, seed)
        B = generate_set(sb, ctx, seed)
        C = generate_set(sc, ctx, seed) if sc is not None else None
        size_a, size_b = len(A), len(B)
        size_c = len(C) if C is not None else 0
        if size_a == 0 or size_b == 0 or (kind == "ternary" and size_c == 0):
            flag = "empty_set"
            lhs = 0.0
        else:
            if kind == "binary":
                lhs = abs(binary_sum(A, B, chi))
                L = len(sumset(A, B)) / size_b
            else:
                lhs = abs(ternary_sum(A, B, C, chi))
                L = len(sumset(B, C)) / size_b
            K = len(sumset(A, A)) / size_a
            delta = math.log(size_a) / math.log(p) - SIZE_EXPONENT_OFFSET
            if delta > 0:
                log2k = math.log(2.0 * K)
                if kind == "binary":
                    rhs = math.sqrt(L * log2k / (delta * math.log(p))) * size_a * size_b
                else:
                    tau = delta * delta / log2k**3
                    rhs = p ** (-tau) * size_a * size_b * size_c
                ratio = lhs / rhs if rhs else None
                logp = math.log(p)
                p_large = logp >= log2k**6 / delta**2 and logp * delta >= log2k**3 * math.log(L)
            else:
                flag = "delta_nonpositive"
    except CharlabError as exc:
        flag = f"error:{type(exc).__name__}"
    ms = (time.perf_counter() - t0) * 1000.0
    return ScanRecord(
        cfg.experiment, kind, p, seed, chi_spec,
        sa.raw, sb.raw, sc.raw if sc is not None else "",
        size_a, size_b, size_c, K, L, delta, lhs, rhs, ratio, p_large, flag, ms,
    )


# ---------------------------------------------------------------------------
# Weil grid
# ---------------------------------------------------------------------------


def weil_row_specs(cfg: ExperimentConfig):
    return [
        (cfg, p, d, case)
        for p in cfg.primes()
        for d in divisors(p - 1)
        if d > 1
        for case in range(cfg.polys_per_case)
    ]


def random_linear_factor_poly(p: int, rng, m_max: int = 4) -> LinearFactorPoly:
    """Distinct random roots with exponents drawn from {1, p-2}.

    These are exactly the complete-sum shapes the moment expansion produces;
    neither exponent is divisible by any character order d > 1 (d divides
    p-1, which is coprime to both 1 and p-2), so the d-th power exclusion
    never triggers for them.
    """
    m = int(rng.integers(1, min(m_max, p - 1) + 1))
    roots = rng.choice(p, size=m, replace=False)
    exps = [1 if int(rng.integers(0, 2)) == 0 else p - 2 for _ in range(m)]
    return LinearFactorPoly.of(p, zip((int(t) for t in roots), exps))


def compute_weil_record(spec) -> WeilRecord:
    cfg, p, d, case = spec
    t0 = time.perf_counter()
    ctx = _context(p, cfg.context_limit)
    chi = ctx.character_of_order(d)
    rng = np.random.default_rng([cfg.seed_list[0], p, d, case])
    poly = random_linear_factor_poly(p, rng, cfg.m_max)
    rep = weil_check(chi, poly)
    ms = (time.perf_counter() - t0) * 1000.0
    return WeilRecord(
        p, d, case, poly.num_roots, str(poly), rep.abs_sum, rep.bound,
        rep.applicable, rep.holds, ms,
    )


# ---------------------------------------------------------------------------
# Davenport moment grid
# ---------------------------------------------------------------------------


def davenport_row_specs(cfg: ExperimentConfig):
    return [
        (cfg, p, chi, s, r)
        for p in cfg.primes()
        for chi in cfg.chi
        for s in cfg.i_sizes
        for r in cfg.r_list
    ]


def compute_davenport_record(spec) -> DavenportRecord:
    cfg, p, chi_spec, s, r = spec
    t0 = time.perf_counter()
    ctx = _context(p, cfg.context_limit)
    chi = resolve_chi(ctx, chi_spec)
    I = FpSet.from_elements(p, range(1, s + 1))
    direct = davenport_moment(chi, I, r, "direct", cfg.davenport_direct_cap)
    expanded = davenport_moment(
        chi, I, r, "expanded", cfg.davenport_direct_cap, cfg.davenport_expanded_cap
    )
    rel_gap = abs(direct - expanded) / max(1.0, abs(direct))
    bound = davenport_bound(p, s, r)
    ms = (time.perf_counter() - t0) * 1000.0
    return DavenportRecord(
        p, chi_spec, s, r, direct, expanded, rel_gap, bound,
        rel_gap <= 1e-6, direct < bound, ms,
    )


# ---------------------------------------------------------------------------
# Croot-Sisask period scans (with the transfer chain on the same grid)
# ---------------------------------------------------------------------------


def period_row_specs(cfg: ExperimentConfig):
    return [
        (cfg, p, seed, sa, eps)
        for p in cfg.primes()
        for seed in cfg.seed_list
        for sa in cfg.set_a
        for eps in cfg.epsilon_list
    ]


def verify_period_report(A: FpSet, f, report) -> bool:
    """Recompute every period's deviation norm through the independent loop route."""
    conv = oracles.convolve_loop(list(f), [int(v) for v in A.indicator()])
    budget = report.epsilon * len(A) * lp_norm(f, report.q)
    if 0 not in report.periods:
        return False
    for t in report.periods.elements():
        if oracles.shift_norm_loop(conv, int(t), report.q) > budget:
            return False
    return True


def compute_period_record(spec) -> PeriodScanRecord:
    cfg, p, seed, sa, eps = spec
    t0 = time.perf_counter()
    ctx = _context(p, cfg.context_limit)
    A = generate_set(sa, ctx, seed)
    f = A.indicator()
    report = cs_period_search(A, A, f, eps, cfg.q, cfg.cs_constant)
    verified = verify_period_report(A, f, report)
    chain = transfer_chain_verify(A, A, ctx.legendre(), report.periods)
    ms = (time.perf_counter() - t0) * 1000.0
    return PeriodScanRecord(
        cfg.experiment, p, seed, sa.raw, eps, cfg.q, report.shift,
        len(report.periods), report.doubling, cfg.cs_constant,
        report.predicted_floor, report.norm_budget, report.max_deviation, verified,
        abs(chain.lhs), abs(chain.shifted_sum), chain.l1_total,
        chain.identity_gap, chain.chain_holds, ms,
    )


# ---------------------------------------------------------------------------
# counting-suite rows (oracle equivalence as CSV data)
# ---------------------------------------------------------------------------

COUNT_SUITES = ("system", "sextuple", "incidence", "energy_add", "energy_mul")


def counts_row_specs(cfg: ExperimentConfig):
    return [
        (cfg, suite, case)
        for suite in COUNT_SUITES
        for case in range(cfg.instances)
    ]


def _random_subset(rng, p: int, size: int, avoid_zero: bool = False) -> FpSet:
    lo = 1 if avoid_zero else 0
    pool = np.arange(lo, p, dtype=np.int64)
    take = min(size, pool.size)
    return FpSet.from_elements(p, rng.permutation(pool)[:take])


def compute_counts_record(spec) -> CountsRecord:
    cfg, suite, case = spec
    t0 = time.perf_counter()
    sid = COUNT_SUITES.index(suite)
    rng = np.random.default_rng([cfg.seed_list[0], sid, case])
    size_s = 0
    if suite == "system":
        p = int(rng.choice([5, 7, 11, 13]))
        A = _random_subset(rng, p, int(rng.integers(1, 5)), avoid_zero=True)
        B = _random_subset(rng, p, int(rng.integers(1, 5)))
        C = _random_subset(rng, p, int(rng.integers(1, 5)))
        rep = system_count(A, B, C, direct=False)
        oracle = oracles.system_count_brute(A, B, C)
        value = rep.reconciliation
        match = oracle == value and (rep.zero_overlap > 0 or oracle == rep.spectral)
        na, nb, nc = len(A), len(B), len(C)
    elif suite == "sextuple":
        p = int(rng.choice([29, 53, 101]))
        A = _random_subset(rng, p, int(rng.integers(1, 11)))
        B = _random_subset(rng, p, int(rng.integers(1, 11)))
        C = _random_subset(rng, p, int(rng.integers(1, 11)))
        value = sextuple_count(A, B, C).count
        oracle = oracles.sextuple_count_brute(A, B, C)
        match = value == oracle
        na, nb, nc = len(A), len(B), len(C)
    elif suite == "incidence":
        p = int(rng.choice([29, 53, 101]))
        A = _random_subset(rng, p, int(rng.integers(1, 11)))
        B = _random_subset(rng, p, int(rng.integers(1, 11)))
        S = _random_subset(rng, p, int(rng.integers(1, 11)))
        C = _random_subset(rng, p, int(rng.integers(1, 11)))
        value = incidence_count(A, B, S, C).incidences
        oracle = oracles.incidence_count_brute(A, B, S, C)
        match = value == oracle
        na, nb, nc, size_s = len(A), len(B), len(C), len(S)
    else:  # energy_add / energy_mul
        p = int(rng.choice([13, 53, 101]))
        n = int(rng.integers(1, cfg.max_set_size + 1))
        A = _random_subset(rng, p, n)
        if case % 2 == 0 and 0 not in A:  # exercise the 0-in-A counting rules
            A = A | FpSet.from_elements(p, [0])
        if suite == "energy_add":
            value, oracle = additive_energy(A), oracles.additive_energy_brute(A)
        else:
            value, oracle = multiplicative_energy(A), oracles.multiplicative_energy_brute(A)
        match = value == oracle
        na, nb, nc = len(A), 0, 0
    ms = (time.perf_counter() - t0) * 1000.0
    return CountsRecord(suite, p, case, na, nb, nc, size_s, value, oracle, match, ms)


# ---------------------------------------------------------------------------
# Paley clique rows
# ---------------------------------------------------------------------------


def compute_paley_record(args) -> PaleyRecord:
    p, cap = args
    t0 = time.perf_counter()
    omega = paley_clique(p, cap)
    ms = (time.perf_counter() - t0) * 1000.0
    return PaleyRecord(p, omega, ms)


def paley_sweep_specs(p_max: int, cap: int):
    return [(p, cap) for p in primes_up_to(p_max) if p % 4 == 1 and p >= 5]


# ---------------------------------------------------------------------------
# selftest: every oracle-equivalence suite at a small, fixed scale
# ---------------------------------------------------------------------------


def _st_field_tables():
    cases = failures = 0
    for p in (7, 101):
        ctx = _context(p)
        for d in divisors(p - 1):
            if d == 1:
                continue
            chi = ctx.character_of_order(d)
            cases += 1
            if abs(chi.values.sum()) >= 1e-9:
                failures += 1
            conj = chi.conjugate()
            if conj.index != (p - 1 - chi.index) % (p - 1):
                failures += 1
            if not np.allclose(conj.values, np.conj(chi.values), atol=1e-12):
                failures += 1
    return cases, failures


def _st_binary_strategies():
    cases = failures = 0
    for p in (7, 101):
        ctx = _context(p)
        for case in range(50):
            rng = np.random.default_rng([11, p, case])
            A = _random_subset(rng, p, int(rng.integers(1, max(2, p // 2))))
            B = _random_subset(rng, p, int(rng.integers(1, max(2, p // 2))))
            chi = ctx.character(int(rng.integers(1, p - 1)))
            d = binary_sum(A, B, chi, "direct")
            s = binary_sum(A, B, chi, "spectral")
            cases += 1
            if abs(d - s) > 1e-8 * max(1, len(A) * len(B)):
                failures += 1
    return cases, failures


def _st_ternary():
    cases = failures = 0
    p = 31
    ctx = _context(p)
    for case in range(20):
        rng = np.random.default_rng([13, case])
        A = _random_subset(rng, p, int(rng.integers(1, 9)))
        B = _random_subset(rng, p, int(rng.integers(1, 9)))
        C = _random_subset(rng, p, int(rng.integers(1, 9)))
        chi = ctx.character(int(rng.integers(1, p - 1)))
        d = ternary_sum(A, B, C, chi, "direct")
        s = ternary_sum(A, B, C, chi, "spectral")
        cases += 1
        if abs(d - s) > 1e-8 * max(1, len(A) * len(B) * len(C)):
            failures += 1
        zero = FpSet.from_elements(p, [0])
        cases += 1
        if ternary_sum(A, B, zero, chi) != binary_sum(A, B, chi):
            failures += 1
    return cases, failures


def _st_energies():
    cases = failures = 0
    for case in range(50):
        rng = np.random.default_rng([17, case])
        p = int(rng.choice([13, 53, 101]))
        A = _random_subset(rng, p, int(rng.integers(1, 11)))
        if case % 2 == 0 and 0 not in A:
            A = A | FpSet.from_elements(p, [0])
        cases += 2
        if additive_energy(A) != oracles.additive_energy_brute(A):
            failures += 1
        if multiplicative_energy(A) != oracles.multiplicative_energy_brute(A):
            failures += 1
    return cases, failures


def _st_plunnecke():
    cases = failures = 0
    p = 101
    for case in range(200):
        rng = np.random.default_rng([19, case])
        A = _random_subset(rng, p, int(rng.integers(1, 20)))
        B = _random_subset(rng, p, int(rng.integers(1, 20)))
        C = _random_subset(rng, p, int(rng.integers(1, 20)))
        for op in ("+", "-"):
            cases += 1
            if not plunnecke_check(A, B, C, op).holds:
                failures += 1
    return cases, failures


def _st_gap_properness():
    cases = failures = 0
    p = 101
    for case in range(40):
        rng = np.random.default_rng([23, case])
        d = int(rng.integers(1, 4))
        steps = [int(rng.integers(1, p)) for _ in range(d)]
        bounds = [int(rng.integers(1, 6)) for _ in range(d)]
        a0 = int(rng.integers(0, p))
        gap = Gap(p, a0, steps, bounds)
        cases += 1
        if gap_is_proper(gap) != oracles.gap_proper_brute(p, a0, steps, bounds):
            failures += 1
    return cases, failures


def _st_system():
    cases = failures = 0
    for case in range(12):
        rng = np.random.default_rng([29, case])
        p = int(rng.choice([5, 7, 11, 13]))
        A = _random_subset(rng, p, int(rng.integers(1, 5)), avoid_zero=True)
        B = _random_subset(rng, p, int(rng.integers(1, 5)))
        C = _random_subset(rng, p, int(rng.integers(1, 5)))
        rep = system_count(A, B, C, direct=True)
        oracle = oracles.system_count_brute(A, B, C)
        cases += 1
        if not (rep.total == rep.reconciliation == oracle):
            failures += 1
        if rep.zero_overlap == 0 and rep.spectral != rep.total:
            failures += 1
    return cases, failures


def _st_sextuple_incidence():
    cases = failures = 0
    for case in range(20):
        rng = np.random.default_rng([31, case])
        p = int(rng.choice([29, 53]))
        A = _random_subset(rng, p, int(rng.integers(1, 9)))
        B = _random_subset(rng, p, int(rng.integers(1, 9)))
        C = _random_subset(rng, p, int(rng.integers(1, 9)))
        S = _random_subset(rng, p, int(rng.integers(1, 9)))
        cases += 2
        if sextuple_count(A, B, C).count != oracles.sextuple_count_brute(A, B, C):
            failures += 1
        if incidence_count(A, B, S, C).incidences != oracles.incidence_count_brute(A, B, S, C):
            failures += 1
    return cases, failures


def _st_spectra_identities():
    cases = failures = 0
    for case in range(20):
        rng = np.random.default_rng([37, case])
        p = int(rng.choice([11, 13, 29]))
        B = _random_subset(rng, p, int(rng.integers(1, 6)))
        C = _random_subset(rng, p, int(rng.integers(1, 6)))
        A = _random_subset(rng, p, int(rng.integers(1, 6)), avoid_zero=True)
        fs = sum_quotient_spectrum(B, C)
        gs = sum_pair_ratio_spectrum(B, C)
        hs = element_ratio_spectrum(A)
        S = sumset(B, C)
        cases += 4
        nz = len(S) - (1 if 0 in S else 0)
        if fs.mass() != len(B) * len(C) * nz:
            failures += 1
        if not np.all(gs.counts <= len(C) * fs.counts):
            failures += 1
        if hs.mass() != len(A) ** 2:
            failures += 1
        if int((hs.counts.astype(np.int64) ** 2).sum()) != multiplicative_energy(A):
            failures += 1
        # level sets are nested as the threshold rises
        taus = [0, 1, 2, 4, fs.max() + 1]
        for lo, hi in zip(taus, taus[1:]):
            cases += 1
            big, small = level_set(fs, lo), level_set(fs, hi)
            if not np.all(small.member <= big.member):
                failures += 1
    return cases, failures


def _st_weil_small():
    cases = failures = 0
    for p in primes_up_to(61):
        if p < 3:
            continue
        ctx = _context(p)
        for d in divisors(p - 1):
            if d == 1:
                continue
            chi = ctx.character_of_order(d)
            for case in range(5):
                rng = np.random.default_rng([41, p, d, case])
                rep = weil_check(chi, random_linear_factor_poly(p, rng))
                cases += 1
                if rep.applicable and not rep.holds:
                    failures += 1
    return cases, failures


def _st_davenport_small():
    cases = failures = 0
    for p in (11, 31):
        ctx = _context(p)
        for chi in (ctx.legendre(), resolve_chi(ctx, "higher")):
            for s in (1, 2):
                for r in (1, 2):
                    I = FpSet.from_elements(p, range(1, s + 1))
                    d = davenport_moment(chi, I, r, "direct")
                    e = davenport_moment(chi, I, r, "expanded")
                    cases += 1
                    if abs(d - e) > 1e-6 * max(1.0, d) or not d < davenport_bound(p, s, r):
                        failures += 1
    return cases, failures


def _st_croot_sisask():
    cases = failures = 0
    p = 101
    ctx = _context(p)
    specs = [parse_set_spec("interval(n=10)"), parse_set_spec("residues")]
    for sa in specs:
        A = generate_set(sa, ctx)
        f = A.indicator()
        sizes = []
        for eps in (0.5, 1.0):
            rep = cs_period_search(A, A, f, eps, 2.0)
            sizes.append(len(rep.periods))
            cases += 2
            if not verify_period_report(A, f, rep):
                failures += 1
            chain = transfer_chain_verify(A, A, ctx.legendre(), rep.periods)
            scale = len(A) * len(A) * len(rep.periods)
            if not chain.chain_holds or chain.identity_gap > 1e-7 * scale:
                failures += 1
        cases += 1
        if sizes != sorted(sizes):  # |T| monotone in epsilon
            failures += 1
    return cases, failures


def _st_l1_transfer():
    cases = failures = 0
    p = 101
    for case in range(100):
        rng = np.random.default_rng([43, case])
        A = _random_subset(rng, p, int(rng.integers(1, 30)))
        B = _random_subset(rng, p, int(rng.integers(1, 30)))
        t = int(rng.integers(0, p))
        cases += 1
        if not l1_transfer_check(A, B, t, 0.5).holds:
            failures += 1
    return cases, failures


def _st_paley_oracle():
    cases = failures = 0
    for p in (5, 13, 17, 29):
        cases += 1
        if paley_clique(p) != clique_number_exhaustive(p):
            failures += 1
    return cases, failures


SELFTEST_SUITES = [
    ("binary_strategies", _st_binary_strategies),
    ("croot_sisask", _st_croot_sisask),
    ("davenport_small", _st_davenport_small),
    ("energies", _st_energies),
    ("field_tables", _st_field_tables),
    ("gap_properness", _st_gap_properness),
    ("l1_transfer", _st_l1_transfer),
    ("paley_oracle", _st_paley_oracle),
    ("plunnecke", _st_plunnecke),
    ("sextuple_incidence", _st_sextuple_incidence),
    ("spectra_identities", _st_spectra_identities),
    ("system_oracle", _st_system),
    ("ternary", _st_ternary),
    ("weil_small", _st_weil_small),
]


def _run_selftest_suite(item) -> SelftestRecord:
    name, fn = item
    t0 = time.perf_counter()
    cases, failures = fn()
    ms = (time.perf_counter() - t0) * 1000.0
    return SelftestRecord(name, cases, failures, "PASS" if failures == 0 else "FAIL", ms)


def selftest_records(workers: int = 1):
    return run_rows(_run_selftest_suite, SELFTEST_SUITES, workers)
