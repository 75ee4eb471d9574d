from ._vlab import (  # noqa: F401
    BradlowBoundError,
    SolverConvergenceError,
    TangentVector,
    VortexSolution,
    solve,
    verify,
)

__all__ = [
    "BradlowBoundError",
    "SolverConvergenceError",
    "TangentVector",
    "VortexSolution",
    "solve",
    "verify",
]
