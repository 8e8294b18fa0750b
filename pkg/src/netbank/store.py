"""Append-only ledger storage with consistent snapshot reads.

Layout inside the store directory:

* ``accounts.json`` — one JSON array of account records
* ``ledger.jsonl``  — one JSON object per transaction, append-only

Any prefix of the ledger file is loadable. A torn final line (a crash
mid-append) is truncated with a warning on open; corruption anywhere
earlier fails hard with the offending line number.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .domain import Account, Money, Transaction, TransactionKind
from .errors import CorruptLedger, CurrencyMismatch, NoSuchAccount, ReferentialError
from .jsonio import account_from_json, account_to_json, transaction_from_json, transaction_to_json

logger = logging.getLogger(__name__)

ACCOUNTS_FILE = "accounts.json"
LEDGER_FILE = "ledger.jsonl"


@dataclass(frozen=True)
class LedgerSnapshot:
    """Immutable, internally consistent view of the whole store."""

    accounts: Mapping[str, Account]
    transactions: tuple[Transaction, ...]
    next_seq: int

    def __post_init__(self):
        object.__setattr__(self, "accounts", MappingProxyType(dict(self.accounts)))

    def transactions_for(self, account_id: str) -> tuple[Transaction, ...]:
        return tuple(t for t in self.transactions if t.account_id == account_id)


class LedgerStore:
    """Handle over one store directory: single writer, many readers.

    Appends are serialized by a lock and flushed to disk before they are
    published; readers always see the snapshot reference as a whole, so a
    concurrent append can never produce a torn view.
    """

    def __init__(self, directory: Path, snapshot: LedgerSnapshot):
        self.directory = directory
        self._lock = threading.Lock()
        self._snapshot = snapshot

    @property
    def ledger_path(self) -> Path:
        return self.directory / LEDGER_FILE

    @property
    def accounts_path(self) -> Path:
        return self.directory / ACCOUNTS_FILE

    def snapshot(self) -> LedgerSnapshot:
        return self._snapshot

    def append_transaction(
        self,
        account_id: str,
        timestamp: datetime,
        amount: Money,
        kind: TransactionKind | str,
        description: str,
    ) -> Transaction:
        """Assign the next seq, persist one record, then publish the new snapshot."""
        kind = TransactionKind(kind)
        with self._lock:
            snap = self._snapshot
            account = snap.accounts.get(account_id)
            if account is None:
                raise NoSuchAccount(f"no account {account_id!r} in store")
            if amount.currency != account.currency:
                raise CurrencyMismatch(
                    f"account {account_id} holds {account.currency}, got {amount.currency}"
                )
            txn = Transaction(
                seq=snap.next_seq,
                account_id=account_id,
                timestamp=timestamp,
                amount=amount,
                kind=kind,
                description=description,
            )
            line = json.dumps(transaction_to_json(txn)) + "\n"
            with open(self.ledger_path, "ab") as fh:
                fh.write(line.encode("utf-8"))
                fh.flush()
                os.fsync(fh.fileno())
            self._snapshot = LedgerSnapshot(
                accounts=snap.accounts,
                transactions=snap.transactions + (txn,),
                next_seq=snap.next_seq + 1,
            )
        return txn


def open_store(directory) -> LedgerStore:
    """Open (creating if needed) the store in ``directory`` and load its state."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    accounts = _load_accounts(directory / ACCOUNTS_FILE)
    transactions = _load_ledger(directory / LEDGER_FILE, accounts)
    next_seq = transactions[-1].seq + 1 if transactions else 1
    snapshot = LedgerSnapshot(
        accounts=accounts,
        transactions=tuple(transactions),
        next_seq=next_seq,
    )
    return LedgerStore(directory, snapshot)


def write_snapshot(directory, snapshot: LedgerSnapshot) -> None:
    """Write a snapshot out as fresh store files (stable byte-for-byte)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    records = [account_to_json(a) for a in sorted(snapshot.accounts.values(), key=lambda a: a.id)]
    (directory / ACCOUNTS_FILE).write_text(
        json.dumps(records, indent=2) + "\n", encoding="utf-8"
    )
    with open(directory / LEDGER_FILE, "w", encoding="utf-8") as fh:
        for txn in snapshot.transactions:
            fh.write(json.dumps(transaction_to_json(txn)) + "\n")


def _load_accounts(path: Path) -> dict[str, Account]:
    if not path.exists() or path.stat().st_size == 0:
        return {}
    try:
        records = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorruptLedger(f"accounts file is not valid JSON: {exc}", 0) from exc
    accounts: dict[str, Account] = {}
    for record in records:
        account = account_from_json(record)
        if account.id in accounts:
            raise ReferentialError(f"duplicate account id {account.id!r}")
        accounts[account.id] = account
    return accounts


def _load_ledger(path: Path, accounts: Mapping[str, Account]) -> list[Transaction]:
    if not path.exists():
        return []
    raw = path.read_bytes()
    lines = raw.split(b"\n")
    transactions: list[Transaction] = []
    last_seq = 0
    offset = 0
    for index, line in enumerate(lines):
        is_final = index == len(lines) - 1
        if line.strip() == b"":
            if is_final:
                break  # normal trailing newline
            raise CorruptLedger("empty ledger line", index + 1)
        try:
            record = json.loads(line.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            if is_final:
                # Torn final write: recover the loadable prefix and cut the
                # file back so the next append starts on a clean boundary.
                logger.warning(
                    "truncating torn final ledger line %d in %s", index + 1, path
                )
                with open(path, "r+b") as fh:
                    fh.truncate(offset)
                break
            raise CorruptLedger(f"malformed ledger line: {exc}", index + 1) from exc
        try:
            txn = transaction_from_json(record)
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptLedger(f"bad ledger record: {exc}", index + 1) from exc
        if txn.seq <= last_seq:
            raise CorruptLedger(
                f"seq {txn.seq} out of order after {last_seq}", index + 1
            )
        if txn.account_id not in accounts:
            raise ReferentialError(
                f"ledger line {index + 1} references unknown account {txn.account_id!r}"
            )
        if txn.amount.currency != accounts[txn.account_id].currency:
            raise ReferentialError(
                f"ledger line {index + 1}: {txn.amount.currency} entry on "
                f"{accounts[txn.account_id].currency} account {txn.account_id}"
            )
        last_seq = txn.seq
        transactions.append(txn)
        offset += len(line) + 1
    return transactions
