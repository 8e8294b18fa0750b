"""Exception hierarchy shared by every netbank module.

Each error carries a stable ``code`` string; the HTTP layer and the CLI
surface that code verbatim so clients can match on it.
"""


class NetBankError(Exception):
    """Base class for all domain, storage, dispatch and parsing errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class CurrencyMismatch(NetBankError):
    code = "currency_mismatch"


class InvalidPeriod(NetBankError):
    code = "invalid_period"


class InvalidDepth(NetBankError):
    code = "invalid_depth"


class CorruptLedger(NetBankError):
    code = "corrupt_ledger"

    def __init__(self, message: str, line_number: int):
        super().__init__(f"{message} (line {line_number})")
        self.line_number = line_number


class ReferentialError(NetBankError):
    code = "referential_error"


class NoSuchAccount(NetBankError):
    code = "no_such_account"


class NullSelection(NetBankError):
    """An integer selector hit the default branch of a code table."""

    code = "null_selection"


class UnsupportedCombination(NetBankError):
    code = "unsupported_combination"


class FamilyMismatch(NetBankError):
    code = "family_mismatch"


class DuplicateRegistration(NetBankError):
    code = "duplicate_registration"


class ModelSyntaxError(NetBankError):
    """Process-model DSL rejected the input text."""

    code = "syntax_error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class DuplicateService(ModelSyntaxError):
    code = "duplicate_service"


class DuplicateOperation(ModelSyntaxError):
    code = "duplicate_operation"
