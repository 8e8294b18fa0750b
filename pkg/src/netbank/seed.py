"""Deterministic demo fixture: customers, accounts and a small ledger.

Same seed in, byte-identical store files out. PINs are plaintext demo
data and exist only here; this is a simulator, not a production
credential store.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .domain import Account, Money, TransactionKind
from .store import LedgerSnapshot, LedgerStore, open_store, write_snapshot

CUSTOMERS_FILE = "customers.json"

DEFAULT_SEED = 7
SEED_TRANSACTION_COUNT = 20

_BASE_TIME = datetime(2025, 1, 6, 9, 0, 0, tzinfo=timezone.utc)


@dataclass(frozen=True)
class Customer:
    customer_id: str
    name: str
    pin: str


SEED_CUSTOMERS = (
    Customer("C001", "Asha Rao", "4312"),
    Customer("C002", "Vikram Iyer", "8891"),
)

SEED_ACCOUNTS = (
    Account("ACC1", "C001", "account", "INR", datetime(2023, 3, 14, 10, 30, tzinfo=timezone.utc)),
    Account("ACC2", "C002", "account", "INR", datetime(2024, 7, 2, 15, 45, tzinfo=timezone.utc)),
    Account("CC1", "C001", "credit_card", "INR", datetime(2024, 11, 20, 12, 0, tzinfo=timezone.utc)),
)

# (kind, sign, amount range in minor units, descriptions) per family
_DEPOSIT_MOVES = (
    (TransactionKind.DEPOSIT, 1, (50_000, 500_000), ("salary credit", "cash deposit", "cheque deposit")),
    (TransactionKind.WITHDRAWAL, -1, (5_000, 80_000), ("atm withdrawal", "branch withdrawal")),
    (TransactionKind.THIRD_PARTY_TRANSFER, -1, (10_000, 120_000), ("transfer to beneficiary", "rent transfer")),
    (TransactionKind.BILL_PAYMENT, -1, (2_000, 40_000), ("electricity bill", "broadband bill", "water bill")),
    (TransactionKind.MUTUAL_FUND, -1, (25_000, 150_000), ("sip instalment", "fund purchase")),
    (TransactionKind.FEE, -1, (100, 2_500), ("account maintenance fee", "cheque book fee")),
)

_CARD_MOVES = (
    (TransactionKind.CARD_CHARGE, -1, (1_500, 90_000), ("grocery store", "online shopping", "fuel station", "restaurant")),
    (TransactionKind.CARD_PAYMENT, 1, (20_000, 120_000), ("card bill payment",)),
    (TransactionKind.FEE, -1, (500, 3_000), ("annual card fee", "late payment fee")),
)


def seed_store(directory, seed: int = DEFAULT_SEED) -> LedgerStore:
    """Write the demo fixture into ``directory`` and return the opened store."""
    directory = Path(directory)
    write_snapshot(
        directory,
        LedgerSnapshot(
            accounts={a.id: a for a in SEED_ACCOUNTS},
            transactions=(),
            next_seq=1,
        ),
    )
    _write_customers(directory)

    store = open_store(directory)
    rng = random.Random(seed)
    timestamp = _BASE_TIME
    account_ids = [a.id for a in SEED_ACCOUNTS]
    for i in range(SEED_TRANSACTION_COUNT):
        # first pass covers every account once, then the rng picks freely
        account_id = account_ids[i] if i < len(account_ids) else rng.choice(account_ids)
        account = next(a for a in SEED_ACCOUNTS if a.id == account_id)
        moves = _CARD_MOVES if account.family == "credit_card" else _DEPOSIT_MOVES
        kind, sign, (low, high), descriptions = rng.choice(moves)
        amount = Money(sign * rng.randint(low, high), account.currency)
        timestamp += timedelta(minutes=rng.randint(40, 2200), milliseconds=rng.randint(0, 999))
        store.append_transaction(
            account_id=account_id,
            timestamp=timestamp,
            amount=amount,
            kind=kind,
            description=rng.choice(descriptions),
        )
    return store


def _write_customers(directory: Path) -> None:
    records = [
        {"customer_id": c.customer_id, "name": c.name, "pin": c.pin}
        for c in SEED_CUSTOMERS
    ]
    (directory / CUSTOMERS_FILE).write_text(
        json.dumps(records, indent=2) + "\n", encoding="utf-8"
    )


def load_customers(directory) -> dict[str, Customer]:
    path = Path(directory) / CUSTOMERS_FILE
    if not path.exists():
        return {}
    records = json.loads(path.read_text(encoding="utf-8"))
    return {
        r["customer_id"]: Customer(r["customer_id"], r["name"], r["pin"]) for r in records
    }
