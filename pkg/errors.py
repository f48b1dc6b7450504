"""Error taxonomy for the kernel.

Every error carries a wire code in the "ECategory:Message" form used by the
JSON service. The two branches decide how callers react: an InputError is the
caller's fault (CLI exit 2, HTTP 400), an InvariantError means an identity or
internal contract broke (CLI exit 1, HTTP 500).
"""


class KernelError(Exception):
    code = 'EGeneral:Internal error'

    def __init__(self, message=None, code=None):
        super().__init__(message or self.code.split(':', 1)[-1])
        if code:
            self.code = code

    def to_wire(self):
        message = str(self)
        if self.code.endswith(message):
            return self.code
        return f"{self.code} ({message})"


class InputError(KernelError, ValueError):
    code = 'EInput:Invalid arguments'
    exit_code = 2
    http_status = 400


class InvariantError(KernelError):
    code = 'EInvariant:Invariant violated'
    exit_code = 1
    http_status = 500


class DivisionByZero(InputError, ZeroDivisionError):
    code = 'EArith:Division by zero'


class PoleError(InputError):
    code = 'EArith:Pole at q=1'


class ParseError(InputError):
    code = 'EInput:Unparseable expression'


class SizeMismatch(InputError):
    code = 'EInput:Size mismatch'


class GuardExceeded(InputError):
    code = 'EInput:Size guard exceeded'


class PatternError(InputError):
    code = 'EInput:Forbidden pattern'


class SupportError(InputError):
    code = 'EInput:Unsupported monomial support'


class SingularSystem(InvariantError):
    code = 'EInvariant:Singular trace system'


class AsymmetricCollection(InvariantError):
    code = 'EInvariant:Asymmetric collection'


class IndifferenceViolation(InvariantError):
    code = 'EInvariant:Not an indifference graph'
