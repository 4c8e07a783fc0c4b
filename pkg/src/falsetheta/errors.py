"""Exception types shared across the package.

The CLI maps these onto its exit codes: validation errors exit 2, identity
failures exit 3, numeric non-convergence exits 4.
"""


class ValidationError(ValueError):
    """Bad arguments or inputs outside an operation's documented domain."""


class IdentityError(AssertionError):
    """An exact identity the implementation guarantees failed to hold."""


class ToleranceError(ArithmeticError):
    """A numeric routine could not reach the requested tolerance.

    ``achieved`` carries the best error bound that was reached.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
