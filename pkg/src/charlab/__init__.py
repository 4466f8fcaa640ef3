"""charlab: character sums and additive combinatorics over prime fields.

A verification and experimentation toolkit: exact evaluators for binary and
ternary multiplicative character sums, set algebra and energies over F_p,
lambda-spectra and solution counts for the two-equation ratio system,
complete-sum and moment bounds, almost-period search for convolutions, a
Paley-graph clique solver, and a deterministic CSV sweep harness.
"""

from .clique import clique_number_exhaustive, paley_clique
from .config import ExperimentConfig, load_config, parse_config
from .counts import (
    IncidenceReport,
    SextupleReport,
    SystemCountReport,
    element_ratio_spectrum,
    incidence_count,
    level_set,
    sextuple_count,
    sum_pair_ratio_spectrum,
    sum_quotient_spectrum,
    system_count,
)
from .field import Character, PrimeContext, is_prime, make_context, primes_up_to
from .fpsets import (
    FpSet,
    Gap,
    PlunneckeReport,
    Spectrum,
    additive_energy,
    convolve,
    difference,
    gap_enumerate,
    gap_is_proper,
    lp_norm,
    multiplicative_energy,
    plunnecke_check,
    productset,
    quotientset,
    rep_spectrum,
    sumset,
)
from .generators import SetSpec, generate_set, parse_set_spec
from .periods import (
    ChainReport,
    L1TransferReport,
    PeriodReport,
    cs_floor,
    cs_period_search,
    l1_transfer_check,
    transfer_chain_verify,
)
from .sums import (
    LinearFactorPoly,
    WeilReport,
    binary_sum,
    davenport_bound,
    davenport_moment,
    ternary_sum,
    weil_check,
    weil_sum,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "ChainReport",
    "ExperimentConfig",
    "FpSet",
    "Gap",
    "IncidenceReport",
    "L1TransferReport",
    "LinearFactorPoly",
    "PeriodReport",
    "PlunneckeReport",
    "PrimeContext",
    "SetSpec",
    "SextupleReport",
    "Spectrum",
    "SystemCountReport",
    "WeilReport",
    "additive_energy",
    "binary_sum",
    "clique_number_exhaustive",
    "convolve",
    "cs_floor",
    "cs_period_search",
    "davenport_bound",
    "davenport_moment",
    "difference",
    "element_ratio_spectrum",
    "gap_enumerate",
    "gap_is_proper",
    "generate_set",
    "incidence_count",
    "is_prime",
    "l1_transfer_check",
    "level_set",
    "load_config",
    "lp_norm",
    "make_context",
    "multiplicative_energy",
    "paley_clique",
    "parse_config",
    "parse_set_spec",
    "plunnecke_check",
    "primes_up_to",
    "productset",
    "quotientset",
    "rep_spectrum",
    "sextuple_count",
    "sum_pair_ratio_spectrum",
    "sum_quotient_spectrum",
    "sumset",
    "system_count",
    "ternary_sum",
    "transfer_chain_verify",
    "weil_check",
    "weil_sum",
]
