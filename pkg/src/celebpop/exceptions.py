"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input data or configuration violates a documented constraint."""


class NotFoundError(KeyError):
    """A handle or named item is not present."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UndefinedDensityError(ValueError):
    """Average retweet density requested for a category with no authored tweets."""


class UndefinedProfileError(ValueError):
    """A linguistic feature has no tokens (or sentences) to work with."""


class UndefinedCorrelationError(ValueError):
    """Rank correlation is undefined, e.g. one of the lists is constant."""


class ConvergenceWarning(UserWarning):
    """An iterative routine stopped at ``max_iter`` without meeting its tolerance."""
