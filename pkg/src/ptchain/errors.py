"""Exception types shared across the solver modules."""


class PTChainError(Exception):
    """Base class for all ptchain errors."""


class RootCountMismatch(PTChainError):
    """Real quasimomentum count is neither N nor N-2 after filtering."""


class NonConvergence(PTChainError):
    """An iterative solver exhausted its iteration budget."""


class PhaseError(PTChainError):
    """Operation requested in the wrong symmetry phase."""


class NullState(PTChainError):
    """A candidate root produced an identically vanishing amplitude vector."""


class DomainError(PTChainError):
    """Asymptotic formula evaluated outside its domain of validity."""


class GaugeError(PTChainError):
    """Gauge transformation left a non-negligible imaginary residue."""


class DegeneracyError(PTChainError):
    """Reciprocal pairing of metric eigenvalues could not be established."""


class StructureError(PTChainError):
    """Block structure of the equivalent Hamiltonian failed to emerge."""


class SingularSolve(PTChainError):
    """Inverse iteration hit a numerically singular shifted system."""
