"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import pytest

from netbank.domain import Account, Money, Transaction, TransactionKind
from netbank.store import LedgerSnapshot

BASE_TIME = datetime(2025, 3, 1, 12, 0, 0, tzinfo=timezone.utc)


def ts(days: float = 0, minutes: float = 0) -> datetime:
    return BASE_TIME + timedelta(days=days, minutes=minutes)


def make_account(account_id="ACC1", customer_id="C001", family="account", currency="INR"):
    return Account(
        id=account_id,
        customer_id=customer_id,
        family=family,
        currency=currency,
        opened_at=ts(days=-400),
    )


def make_txn(seq, minor, *, account_id="ACC1", timestamp=None, currency="INR", description=""):
    kind = TransactionKind.DEPOSIT if minor > 0 else TransactionKind.WITHDRAWAL
    return Transaction(
        seq=seq,
        account_id=account_id,
        timestamp=timestamp if timestamp is not None else ts(days=seq),
        amount=Money(minor, currency),
        kind=kind,
        description=description or f"txn {seq}",
    )


def make_snapshot(accounts, transactions):
    next_seq = max((t.seq for t in transactions), default=0) + 1
    return LedgerSnapshot(
        accounts={a.id: a for a in accounts},
        transactions=tuple(sorted(transactions, key=lambda t: t.seq)),
        next_seq=next_seq,
    )


@pytest.fixture
def deposit_account():
    return make_account()


@pytest.fixture
def card_account():
    return make_account(account_id="CC1", family="credit_card")
