class HyperwalkError(Exception):
    pass


class StateError(HyperwalkError, ValueError):
    """Invalid label or amplitude."""


class ConfigurationError(HyperwalkError, ValueError):
    """Bad walk configuration, including an exhausted coin schedule."""


class NotHermitianError(HyperwalkError, ValueError):
    def __init__(self, i: int, j: int, deviation: float):
        super().__init__(
            f"matrix is not Hermitian: |m[{i},{j}] - conj(m[{j},{i}])| = {deviation:.3e}"
        )
        self.pair = (i, j)
        self.deviation = deviation


class ConvergenceError(HyperwalkError, RuntimeError):
    pass


class InvariantViolation(HyperwalkError, RuntimeError):
    """A numerical invariant (norm, negativity bound, ...) failed."""
