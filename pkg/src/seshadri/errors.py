class SeshadriError(ValueError):
    """Base class for domain errors raised by this package."""


class DomainError(SeshadriError):
    pass


class NotAmpleError(DomainError):
    pass
