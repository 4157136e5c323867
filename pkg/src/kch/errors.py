"""Exception hierarchy shared across the package.

DomainError covers malformed or out-of-domain input (CLI exit code 1);
ResourceRefused covers inputs that are well-formed but above the size caps
the package is willing to attempt (CLI exit code 2).
"""


class KchError(Exception):
    pass


class DomainError(KchError, ValueError):
    pass


class ResourceRefused(KchError, RuntimeError):
    pass
