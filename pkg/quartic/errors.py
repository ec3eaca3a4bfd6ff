"""Exceptions raised by the quartic library.

Validation problems subclass ``ValueError``/``TypeError`` as well, so
callers that only know the builtins still catch them.
"""


class FloquetError(Exception):
    """Base class of every error raised by this package."""

    exit_code = 3

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class InvalidPotentialError(FloquetError, ValueError):
    exit_code = 2


class UnsupportedRepresentationError(FloquetError, TypeError):
    exit_code = 2

    def __init__(self, kind, operation):
        super().__init__(f"{operation} is not available for {kind} potentials",
                         kind=kind, operation=operation)


class RangeExceededError(FloquetError, ArithmeticError):
    def __init__(self, lam, reason):
        super().__init__(f"cannot integrate at lambda={lam!r}: {reason}",
                         lam=[complex(lam).real, complex(lam).imag])


class CountMismatchError(FloquetError):
    def __init__(self, region, expected, found):
        super().__init__(f"{region}: argument principle counts {expected} "
                         f"zeros but {found} were located",
                         region=region, expected=expected, found=found)


class ZeroOnContourError(FloquetError):
    pass


class RootEscapeError(FloquetError):
    pass


class DomainError(FloquetError, ValueError):
    exit_code = 2


class BracketError(FloquetError, ValueError):
    exit_code = 2

    def __init__(self, n, nu, nu_max):
        super().__init__(f"gamma - gamma_{n} = {nu!r} is outside the validated "
                         f"bracket (-{nu_max!r}, {nu_max!r})",
                         n=n, nu=nu, lo=-nu_max, hi=nu_max)


class ConfigError(FloquetError, ValueError):
    exit_code = 2
