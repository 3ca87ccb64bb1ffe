"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetExceeded(DomainError):
    """Exhaustive enumeration would visit more subsets than allowed."""

    def __init__(self, n: int, required: int, budget: int):
        self.n = n
        self.required = required
        self.budget = budget
        super().__init__(
            f"n={n} needs {required} subsets, budget is {budget} "
            f"(raise it with ICG_BUDGET={required})"
        )


class OracleInconsistency(AssertionError):
    """A floating-point oracle produced a value it should not be able to."""
