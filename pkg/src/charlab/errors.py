"""Exception types shared across the package."""


class CharlabError(Exception):
    """Base class for every package-specific error."""


class NotPrime(CharlabError):
    """A modulus that must be an odd prime is not."""


class TooLarge(CharlabError):
    """A parameter exceeds the configured work or memory cap."""


class IndexOutOfRange(CharlabError):
    """Character index outside [0, p-2]."""


class ModulusMismatch(CharlabError):
    """Operands live over different prime fields."""


class EmptySet(CharlabError):
    """An operation that needs a nonempty set received an empty one."""


class EmptyDivisorSet(CharlabError):
    """Quotient set requested with a divisor set contained in {0}."""


class BadExponent(CharlabError):
    """Norm or moment exponent outside its admissible range."""


class TrivialCharacter(CharlabError):
    """The trivial character was passed where a nontrivial one is required."""


class WorkCapExceeded(CharlabError):
    """A direct enumeration would exceed the configured operation budget."""


class ZeroInSet(CharlabError):
    """A set that must avoid 0 contains it."""


class BadEpsilon(CharlabError):
    """Almost-period tolerance outside (0, 1]."""


class BadSpec(CharlabError):
    """Malformed or unsupported set-generator specification."""


class BadResidueClass(CharlabError):
    """Paley graph requested for p not congruent to 1 mod 4."""


class ConfigError(CharlabError):
    """Problem in an experiment configuration file."""


class UnknownKey(ConfigError):
    """Configuration key that is not in the registry (typos are hard errors)."""


class BadValue(ConfigError):
    """Configuration value that cannot be converted to the key's type."""
