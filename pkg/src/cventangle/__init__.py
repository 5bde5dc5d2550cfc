"""Entanglement of Gaussian states from global and marginal purities and entropies."""
from .entropic import EntropicBounds, EntropicConstraint, NodalPoint, entropic_negativity_bounds, nodal_surface
from .entropy import EntropySpec, purity, renyi_entropy, tsallis_entropy, von_neumann_entropy
from .errors import GaussianStateError
from .extremal import Region, average_negativity, classify, glems, gmems, negativity_bounds
from .multimode import SymmetricMultimodeParams, localize, one_to_n_negativity
from .sampling import Sampler, SamplerConfig
from .symplectic import CovarianceMatrix, log_negativity, partial_transpose, symplectic_spectrum
from .twomode import TwoModeInvariants, invariants_from_cm, standard_form_from_invariants, two_mode_negativity

__all__ = [
    "CovarianceMatrix",
    "EntropicBounds",
    "EntropicConstraint",
    "EntropySpec",
    "GaussianStateError",
    "NodalPoint",
    "Region",
    "Sampler",
    "SamplerConfig",
    "SymmetricMultimodeParams",
    "TwoModeInvariants",
    "average_negativity",
    "classify",
    "entropic_negativity_bounds",
    "glems",
    "gmems",
    "invariants_from_cm",
    "localize",
    "log_negativity",
    "negativity_bounds",
    "nodal_surface",
    "one_to_n_negativity",
    "partial_transpose",
    "purity",
    "renyi_entropy",
    "standard_form_from_invariants",
    "symplectic_spectrum",
    "tsallis_entropy",
    "two_mode_negativity",
    "von_neumann_entropy",
]
