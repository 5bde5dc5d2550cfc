"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI echoes
on stderr.
"""


class GaussianStateError(ValueError):
    code = "error"


class PairingFailure(GaussianStateError):
    """Moduli of the eigenvalues of Omega @ sigma do not pair up."""

    code = "pairing_failure"


class UnphysicalState(GaussianStateError):
    code = "unphysical"


class DomainError(GaussianStateError):
    code = "domain"


class OutOfRange(GaussianStateError):
    code = "out_of_range"


class NoSolution(GaussianStateError):
    code = "no_solution"


class NoInversion(GaussianStateError):
    code = "no_inversion"


class DegenerateRegion(GaussianStateError):
    code = "degenerate_region"


class SamplingExhausted(GaussianStateError):
    code = "sampling_exhausted"


class IndexOutOfRange(GaussianStateError, IndexError):
    code = "index_out_of_range"
