"""Acceptance gate: one test per release criterion, one printed line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the line per
criterion. Every tolerance is pinned here; all comparisons are exact.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from netbank.api import ApiConfig, create_app
from netbank.domain import Money, balance_of, mini_statement_of, statement_of
from netbank.enquiry import (
    SCREEN_FOR_VARIANT,
    STANDARD_HANDLERS,
    AccountFamilyKind,
    EnquiryRequest,
    ServiceKind,
    balance_handler,
    builtin_registry,
    service_code,
)
from netbank.errors import NullSelection
from netbank.process_model import analyze, load_bundled_model
from netbank.seed import seed_store
from netbank.store import LEDGER_FILE, LedgerSnapshot, open_store

from .conftest import make_account, make_txn, ts

GOLDEN = Path(__file__).parent / "golden" / "builtin_dispatch.json"

ACCOUNT_FOR_FAMILY = {"account": "ACC1", "credit_card": "CC1"}


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


@pytest.fixture(scope="module")
def seeded_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("acceptance-store")
    seed_store(directory)
    return directory


@pytest.fixture(scope="module")
def seeded_snapshot(seeded_dir):
    return open_store(seeded_dir).snapshot()


def test_code_table_fidelity():
    with criterion("code-table fidelity"):
        started = time.monotonic()
        registry = builtin_registry()
        families = {0: "account", 1: "credit_card"}
        services = {0: "statement", 1: "balance", 2: "mini_statement"}
        for i in range(-2, 11):
            if i in families:
                assert registry.get_type(i).name == families[i]
            else:
                with pytest.raises(NullSelection):
                    registry.get_type(i)
            if i in services:
                assert registry.get_service(i).name == services[i]
            else:
                with pytest.raises(NullSelection):
                    registry.get_service(i)
        assert service_code(registry.service_by_name("statement")) == 1
        assert service_code(registry.service_by_name("balance")) == 2
        assert service_code(registry.service_by_name("mini_statement")) == 3
        assert time.monotonic() - started < 1.0


def test_legacy_equivalence(seeded_snapshot):
    with criterion("legacy equivalence"):
        registry = builtin_registry()
        checked = 0
        for family_index in (0, 1):
            for service_index in (0, 1, 2):
                label = registry.legacy_visit(family_index, service_index)
                family = registry.get_type(family_index)
                service = registry.get_service(service_index)
                request = EnquiryRequest(
                    family, service, ACCOUNT_FOR_FAMILY[family.name]
                )
                result = registry.dispatch(request, seeded_snapshot)
                assert SCREEN_FOR_VARIANT[result.variant] == label
                checked += 1
        assert checked == 6


def test_open_closed_extension(seeded_snapshot):
    with criterion("open/closed extension"):
        registry = builtin_registry()
        golden = json.loads(GOLDEN.read_text())

        def dispatch_builtin(reg):
            outputs = {}
            for selector in (0, 1):
                family = reg.get_type(selector)
                for index in (0, 1, 2):
                    service = reg.get_service(index)
                    request = EnquiryRequest(
                        family, service, ACCOUNT_FOR_FAMILY[family.name]
                    )
                    outputs[f"{family.name}/{service.name}"] = json.dumps(
                        reg.dispatch(request, seeded_snapshot).to_json(),
                        separators=(",", ":"),
                    )
            return outputs

        assert dispatch_builtin(registry) == golden

        mutual_fund = AccountFamilyKind(selector=2, name="mutual_fund")
        funds_position = ServiceKind(code=4, name="funds_position")
        extended = registry.register_family(mutual_fund, dict(STANDARD_HANDLERS))
        extended = extended.register_service(
            funds_position,
            {name: balance_handler for name in ("account", "credit_card", "mutual_fund")},
        )

        assert dispatch_builtin(extended) == golden

        mf_account = make_account("MF1", family="mutual_fund")
        grown = LedgerSnapshot(
            accounts={**seeded_snapshot.accounts, "MF1": mf_account},
            transactions=seeded_snapshot.transactions,
            next_seq=seeded_snapshot.next_seq,
        )
        for service in ("statement", "balance", "mini_statement", "funds_position"):
            result = extended.dispatch(
                EnquiryRequest(mutual_fund, extended.service_by_name(service), "MF1"),
                grown,
            )
            assert result.family == "mutual_fund"
        for family_name, account_id in ACCOUNT_FOR_FAMILY.items():
            result = extended.dispatch(
                EnquiryRequest(
                    extended.family_by_name(family_name), funds_position, account_id
                ),
                grown,
            )
            assert result.service == "funds_position"


def test_oracle_equivalence_on_randomized_ledgers():
    with criterion("oracle equivalence (200 randomized ledgers)"):
        started = time.monotonic()
        rng = random.Random(20250301)
        account = make_account()
        for _ in range(200):
            size = rng.randint(0, 1000)
            txns = [
                make_txn(
                    seq,
                    rng.choice([-1, 1]) * rng.randint(1, 10**7),
                    timestamp=ts(minutes=rng.randint(0, 50_000)),
                )
                for seq in range(1, size + 1)
            ]

            expected_total = sum(t.amount.amount_minor for t in txns)
            assert balance_of(txns, "INR") == Money(expected_total, "INR")

            start = rng.randint(0, 50_000)
            stop = start + rng.randint(1, 25_000)
            period_from, period_to = ts(minutes=start), ts(minutes=stop)
            statement = statement_of(txns, account, period_from, period_to)
            ordered = sorted(txns, key=lambda t: (t.timestamp, t.seq))
            expected_lines = [
                t for t in ordered if period_from <= t.timestamp < period_to
            ]
            expected_opening = sum(
                t.amount.amount_minor for t in txns if t.timestamp < period_from
            )
            assert list(statement.lines) == expected_lines
            assert statement.opening_balance.amount_minor == expected_opening
            assert statement.closing_balance.amount_minor == expected_opening + sum(
                t.amount.amount_minor for t in expected_lines
            )

            depth = rng.randint(1, 12)
            mini = mini_statement_of(txns, account, depth)
            assert list(mini.lines) == ordered[len(ordered) - min(depth, len(ordered)):]
            assert mini.current_balance.amount_minor == expected_total
        elapsed = time.monotonic() - started
        assert elapsed < 30.0, f"oracle sweep took {elapsed:.1f}s"


def test_crosscutting_analysis_of_bundled_model():
    with criterion("crosscutting analysis"):
        report = analyze(load_bundled_model())
        assert report.crosscutting_operations() == (
            "MiniStatement",
            "ViewBalance",
            "ViewStatement",
        )
        for entry in report.entries:
            if entry.crosscutting:
                assert entry.degree == 2
                assert entry.services == ("Account", "CreditCard")
        assert len(report.candidates) == 1
        candidate = report.candidates[0]
        assert candidate.pattern == "Enquiry (Visitor)"
        assert candidate.operations == ("MiniStatement", "ViewBalance", "ViewStatement")
        assert candidate.families == ("Account", "CreditCard")


def test_api_equivalence(seeded_dir, seeded_snapshot):
    with criterion("API/engine equivalence"):
        started = time.monotonic()
        client = TestClient(create_app(ApiConfig(store_dir=seeded_dir)))
        registry = builtin_registry()

        headers = {}
        for customer_id, pin in (("C001", "4312"), ("C002", "8891")):
            response = client.post(
                "/sessions", json={"customer_id": customer_id, "pin": pin}
            )
            assert response.status_code == 200
            headers[customer_id] = {
                "Authorization": f"Bearer {response.json()['token']}"
            }

        ledger_before = (seeded_dir / LEDGER_FILE).read_bytes()

        for account in seeded_snapshot.accounts.values():
            family = registry.family_by_name(account.family)
            for index in (0, 1, 2):
                service = registry.get_service(index)
                response = client.get(
                    "/enquiry",
                    params={
                        "family": family.selector,
                        "service": index,
                        "account": account.id,
                    },
                    headers=headers[account.customer_id],
                )
                assert response.status_code == 200
                depth = 5 if service.name == "mini_statement" else None
                request = EnquiryRequest(family, service, account.id, depth=depth)
                direct = registry.dispatch(request, seeded_snapshot).to_json()
                assert response.json() == direct

        response = client.get(
            "/enquiry",
            params={"family": 9, "service": 0, "account": "ACC1"},
            headers=headers["C001"],
        )
        assert response.status_code == 400
        assert response.json()["error"] == "null_selection"

        assert (seeded_dir / LEDGER_FILE).read_bytes() == ledger_before
        assert time.monotonic() - started < 10.0


def test_persistence_round_trip(tmp_path, caplog):
    with criterion("persistence round-trip"):
        import logging

        store_dir = tmp_path / "store"
        seeded = seed_store(store_dir).snapshot()
        reloaded = open_store(store_dir).snapshot()
        assert reloaded == seeded

        ledger = store_dir / LEDGER_FILE
        with open(ledger, "ab") as fh:
            fh.write(b'{"seq": 21, "account_id": "AC')
        with caplog.at_level(logging.WARNING):
            recovered = open_store(store_dir).snapshot()
        assert any("torn" in record.message for record in caplog.records)
        assert recovered == seeded
