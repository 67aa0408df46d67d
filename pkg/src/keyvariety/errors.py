"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its documented preconditions."""


class RenderError(ContractViolation):
    """A form cannot be written in the requested Veronese/Segre coordinates."""

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class DomainError(ContractViolation):
    """Parameters fall outside the locus where a construction is defined."""


class DegenerateInput(ContractViolation):
    """Branch data is not general enough for the requested count or check."""


class NotEigenvector(ContractViolation):
    """A proposed section is not an eigenvector of the involution with the
    requested sign."""

    def __init__(self, message, form=None):
        super().__init__(message)
        self.form = form
