"""netbank: simulated internet-banking backend.

Read-only enquiries (statement, balance, mini statement) dispatch over
two independent axes, account family and service, so either axis can be
extended without touching existing handlers. Ships with an append-only
ledger store, an HTTP API, a CLI and a process-model analyzer that
surfaces crosscutting operations.
"""

__version__ = "0.1.0"

from .domain import (
    Account,
    MiniStatement,
    Money,
    Statement,
    Transaction,
    TransactionKind,
    balance_of,
    mini_statement_of,
    statement_of,
)
from .enquiry import (
    ACCOUNT,
    BALANCE,
    CREDIT_CARD,
    MINI_STATEMENT,
    STATEMENT,
    AccountFamilyKind,
    BalanceResult,
    DispatchRegistry,
    EnquiryRequest,
    EnquiryResult,
    MiniStatementResult,
    ServiceKind,
    StatementResult,
    builtin_registry,
    service_code,
)
from .store import LedgerSnapshot, LedgerStore, open_store, write_snapshot

__all__ = [
    "Account",
    "AccountFamilyKind",
    "ACCOUNT",
    "BALANCE",
    "BalanceResult",
    "CREDIT_CARD",
    "DispatchRegistry",
    "EnquiryRequest",
    "EnquiryResult",
    "LedgerSnapshot",
    "LedgerStore",
    "MINI_STATEMENT",
    "MiniStatement",
    "MiniStatementResult",
    "Money",
    "STATEMENT",
    "ServiceKind",
    "Statement",
    "StatementResult",
    "Transaction",
    "TransactionKind",
    "balance_of",
    "builtin_registry",
    "mini_statement_of",
    "open_store",
    "service_code",
    "statement_of",
    "write_snapshot",
]
