from typing import Any, List, Optional


class LogicSupError(Exception):
    """Base class for every error raised by logicsup."""


class InputError(LogicSupError, ValueError):
    """Bad input: the CLI maps these to exit code 2."""


class DimensionMismatchError(InputError):
    def __init__(self, left: int, right: int, what: str = "operands"):
        super().__init__(f"Dimension mismatch between {what}: {left} != {right}")
        self.left = left
        self.right = right


class NotHermitianError(InputError):
    def __init__(self, max_asymmetry: float, tolerance: float):
        super().__init__(
            f"Matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_asymmetry:.3e} "
            f"exceeds tolerance {tolerance:.3e}"
        )
        self.max_asymmetry = max_asymmetry
        self.tolerance = tolerance


class NotAProjectionError(InputError):
    pass


class DecompositionError(InputError):
    pass


class ClusterAmbiguityError(DecompositionError):
    def __init__(self, gap: float, cluster_tol: float):
        super().__init__(
            f"Eigenvalue clusters are only {gap:.3e} apart with cluster_tol={cluster_tol:.3e}; "
            f"retry with a larger cluster tolerance (at least {gap:.3e})"
        )
        self.gap = gap
        self.cluster_tol = cluster_tol


class IllConditionedPairError(DecompositionError):
    pass


class BorelSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class SpectrumSpecError(InputError):
    pass


class OperatorFileError(InputError):
    def __init__(self, path: str, details: List[str], action: str = "Invalid operator file"):
        joined = "; ".join(details)
        super().__init__(f"{action} {path}: {joined}")
        self.path = path
        self.details = details


class InvariantViolationError(LogicSupError):
    def __init__(self, invariant: str, detail: str):
        super().__init__(f"Invariant '{invariant}' violated: {detail}")
        self.invariant = invariant


class PreconditionError(LogicSupError):
    pass


class SupremumDoesNotExistError(PreconditionError):
    def __init__(self, witness: Optional[Any]):
        if witness is None:
            message = "The supremum does not exist"
        else:
            message = (
                f"The supremum does not exist: eigenprojections at {witness.lam:g} and "
                f"{witness.mu:g} overlap with norm {witness.overlap_norm:.6g}"
            )
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(LogicSupError):
    pass


class RouteDisagreementError(InternalConsistencyError):
    pass
