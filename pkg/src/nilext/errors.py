"""Exception hierarchy.  Mathematical failures carry a JSON-able certificate."""


class NilextError(Exception):
    """Base class for every error raised by this package."""

    def certificate(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class AlgebraFormatError(NilextError, ValueError):
    """An input file does not follow the documented schema."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ArityError(NilextError, ValueError):
    """An operation was used with the wrong number of products."""


class IdentityViolation(NilextError):
    """Structure constants violate the defining identities of their type."""

    def __init__(self, message: str, violations):
        self.violations = list(violations)
        super().__init__(f"{message} ({len(self.violations)} violation(s), first: {self.violations[0]})")

    def certificate(self) -> dict:
        cert = super().certificate()
        cert["violations"] = [v.to_json() for v in self.violations[:20]]
        return cert


class InvalidAlgebra(IdentityViolation):
    pass


class InvalidFactorSystem(IdentityViolation):
    """The algebra built from a factor system breaks the type's identities."""


class NotAnIdeal(NilextError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)

    def certificate(self) -> dict:
        cert = super().certificate()
        if self.witness is not None:
            cert["witness"] = self.witness
        return cert


class ExtensionError(NilextError):
    """Data does not describe a short exact sequence of algebras."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)

    def certificate(self) -> dict:
        cert = super().certificate()
        if self.witness is not None:
            cert["witness"] = self.witness
        return cert


class LiftMismatch(NilextError):
    """Two lifts do not differ by adjoint operators (they induce different classes)."""


class HypothesisUnmet(NilextError):
    """A theorem's hypothesis fails; ``report`` records the verdict."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
