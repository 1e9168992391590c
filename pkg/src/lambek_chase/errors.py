class LambekChaseError(Exception):
    """Base class for library errors."""


class BackendMismatch(LambekChaseError):
    pass


class IllDefinedMorphism(LambekChaseError):
    """Payload does not describe a morphism between the given objects."""


class FactorizationFailure(LambekChaseError):
    """A universal-property factorization does not exist."""


class InternalInvariantViolation(LambekChaseError):
    """A construction produced data violating its defining identity.

    Raised only on library or backend bugs; never on user input.
    """


class NotNullComposite(LambekChaseError):
    pass


class NotNullRows(LambekChaseError):
    pass


class MNotIso(LambekChaseError):
    """m(f, g) failed the iso test: the backend is not homological."""


class HypothesisViolated(LambekChaseError):
    def __init__(self, failed, message=None):
        self.failed = tuple(failed)
        super().__init__(message or "hypothesis violated: " + ", ".join(self.failed))


class TheoremViolation(LambekChaseError):
    """A conclusion failed although all its hypotheses held."""

    def __init__(self, claim, detail=""):
        self.claim = claim
        super().__init__(f"{claim} failed with hypotheses satisfied {detail}".rstrip())


class EnumerationTooLarge(LambekChaseError):
    pass


class GenerationFailed(LambekChaseError):
    pass


class ParseError(LambekChaseError):
    pass


class ValidationError(LambekChaseError):
    pass
