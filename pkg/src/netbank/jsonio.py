"""JSON encoding shared by the store, the enquiry results and the API.

Field order inside each record is fixed so serialized output is stable
byte for byte; timestamps are ISO-8601 UTC with a ``Z`` suffix at
millisecond precision.
"""

from __future__ import annotations

from datetime import datetime, timezone

from .domain import Account, Money, MiniStatement, Statement, Transaction, TransactionKind


def format_timestamp(value: datetime) -> str:
    utc = value.astimezone(timezone.utc)
    millis = utc.microsecond // 1000
    return f"{utc.strftime('%Y-%m-%dT%H:%M:%S')}.{millis:03d}Z"


def parse_timestamp(text: str) -> datetime:
    """Parse ISO-8601; accepts a trailing Z (Python 3.10 fromisoformat does not)."""
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def money_to_json(money: Money) -> dict:
    return {"amount_minor": money.amount_minor, "currency": money.currency}


def transaction_to_json(txn: Transaction) -> dict:
    return {
        "seq": txn.seq,
        "account_id": txn.account_id,
        "timestamp": format_timestamp(txn.timestamp),
        "amount_minor": txn.amount.amount_minor,
        "currency": txn.amount.currency,
        "kind": txn.kind.value,
        "description": txn.description,
    }


def transaction_from_json(record: dict) -> Transaction:
    return Transaction(
        seq=record["seq"],
        account_id=record["account_id"],
        timestamp=parse_timestamp(record["timestamp"]),
        amount=Money(record["amount_minor"], record["currency"]),
        kind=TransactionKind(record["kind"]),
        description=record["description"],
    )


def account_to_json(account: Account) -> dict:
    return {
        "id": account.id,
        "customer_id": account.customer_id,
        "family": account.family,
        "currency": account.currency,
        "opened_at": format_timestamp(account.opened_at),
    }


def account_from_json(record: dict) -> Account:
    return Account(
        id=record["id"],
        customer_id=record["customer_id"],
        family=record["family"],
        currency=record["currency"],
        opened_at=parse_timestamp(record["opened_at"]),
    )


def statement_to_json(statement: Statement) -> dict:
    return {
        "account_id": statement.account_id,
        "period_from": format_timestamp(statement.period_from),
        "period_to": format_timestamp(statement.period_to),
        "opening_balance": money_to_json(statement.opening_balance),
        "lines": [transaction_to_json(t) for t in statement.lines],
        "closing_balance": money_to_json(statement.closing_balance),
    }


def mini_statement_to_json(mini: MiniStatement) -> dict:
    return {
        "account_id": mini.account_id,
        "lines": [transaction_to_json(t) for t in mini.lines],
        "current_balance": money_to_json(mini.current_balance),
    }
