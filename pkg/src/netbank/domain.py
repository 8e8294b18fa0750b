"""Banking domain types and the three enquiry derivations.

Everything here is an immutable value; the functions are pure and do
exact integer arithmetic on minor currency units. Storage and transport
live elsewhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum

from .errors import CurrencyMismatch, InvalidDepth, InvalidPeriod

_CURRENCY_RE = re.compile(r"^[A-Z]{3}$")

# Headroom so a fold over a million transactions cannot overflow a
# signed 64-bit accumulator.
MAX_AMOUNT_MAGNITUDE = 2**62

DEFAULT_CURRENCY = "INR"


class TransactionKind(str, Enum):
    DEPOSIT = "deposit"
    WITHDRAWAL = "withdrawal"
    THIRD_PARTY_TRANSFER = "third_party_transfer"
    BILL_PAYMENT = "bill_payment"
    CARD_CHARGE = "card_charge"
    CARD_PAYMENT = "card_payment"
    MUTUAL_FUND = "mutual_fund"
    FEE = "fee"


@dataclass(frozen=True)
class Money:
    """An exact amount in minor units (e.g. paise) of one currency."""

    amount_minor: int
    currency: str

    def __post_init__(self):
        if not _CURRENCY_RE.match(self.currency):
            raise ValueError(f"currency must be a 3-letter uppercase code, got {self.currency!r}")
        if abs(self.amount_minor) >= MAX_AMOUNT_MAGNITUDE:
            raise ValueError(f"amount magnitude {self.amount_minor} out of range")

    def __add__(self, other: "Money") -> "Money":
        if not isinstance(other, Money):
            return NotImplemented
        if other.currency != self.currency:
            raise CurrencyMismatch(
                f"cannot add {other.currency} to {self.currency}"
            )
        return Money(self.amount_minor + other.amount_minor, self.currency)

    @classmethod
    def zero(cls, currency: str) -> "Money":
        return cls(0, currency)


@dataclass(frozen=True)
class Account:
    """One customer account; ``family`` names its dispatch family."""

    id: str
    customer_id: str
    family: str
    currency: str
    opened_at: datetime

    def __post_init__(self):
        if not self.id:
            raise ValueError("account id must be nonempty")
        if not _CURRENCY_RE.match(self.currency):
            raise ValueError(f"bad currency {self.currency!r} for account {self.id}")
        _require_utc(self.opened_at, "opened_at")


@dataclass(frozen=True)
class Transaction:
    """A single signed ledger entry; positive = credit, negative = debit."""

    seq: int
    account_id: str
    timestamp: datetime
    amount: Money
    kind: TransactionKind
    description: str

    def __post_init__(self):
        if self.seq < 1:
            raise ValueError(f"seq must be positive, got {self.seq}")
        if self.amount.amount_minor == 0:
            raise ValueError("transaction amount must be nonzero")
        _require_utc(self.timestamp, "timestamp")


@dataclass(frozen=True)
class Statement:
    """Account activity over a half-open period [period_from, period_to)."""

    account_id: str
    period_from: datetime
    period_to: datetime
    opening_balance: Money
    lines: tuple[Transaction, ...]
    closing_balance: Money


@dataclass(frozen=True)
class MiniStatement:
    """The most recent transactions of an account plus its current balance."""

    account_id: str
    lines: tuple[Transaction, ...]
    current_balance: Money


def _require_utc(value: datetime, field: str):
    if value.tzinfo is None or value.utcoffset() != timezone.utc.utcoffset(None):
        raise ValueError(f"{field} must be a UTC-aware datetime, got {value!r}")


def _chronological(transactions) -> list[Transaction]:
    # Ties on timestamp always break by seq so output is deterministic.
    return sorted(transactions, key=lambda t: (t.timestamp, t.seq))


def balance_of(transactions, currency: str) -> Money:
    """Sum the given transactions into a balance in ``currency``.

    Raises CurrencyMismatch if any transaction carries another currency;
    an empty input folds to zero.
    """
    total = 0
    for txn in transactions:
        if txn.amount.currency != currency:
            raise CurrencyMismatch(
                f"transaction {txn.seq} is in {txn.amount.currency}, expected {currency}"
            )
        total += txn.amount.amount_minor
    return Money(total, currency)


def statement_of(
    transactions,
    account: Account,
    period_from: datetime,
    period_to: datetime,
) -> Statement:
    """Build the account statement for the half-open period [from, to).

    The opening balance folds every transaction strictly before the
    period; the closing balance is opening plus the in-period lines.
    """
    if period_from >= period_to:
        raise InvalidPeriod(
            f"period_from {period_from.isoformat()} must precede period_to {period_to.isoformat()}"
        )
    ordered = _chronological(transactions)
    before = [t for t in ordered if t.timestamp < period_from]
    lines = tuple(t for t in ordered if period_from <= t.timestamp < period_to)
    opening = balance_of(before, account.currency)
    closing = opening + balance_of(lines, account.currency)
    return Statement(
        account_id=account.id,
        period_from=period_from,
        period_to=period_to,
        opening_balance=opening,
        lines=lines,
        closing_balance=closing,
    )


def mini_statement_of(transactions, account: Account, depth: int) -> MiniStatement:
    """Return the last ``depth`` transactions (chronological) and the balance."""
    if depth < 1:
        raise InvalidDepth(f"depth must be >= 1, got {depth}")
    ordered = _chronological(transactions)
    lines = tuple(ordered[-depth:]) if ordered else ()
    return MiniStatement(
        account_id=account.id,
        lines=lines,
        current_balance=balance_of(ordered, account.currency),
    )
