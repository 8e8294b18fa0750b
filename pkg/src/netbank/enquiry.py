"""Double-dispatch enquiry engine over (account family x service).

Two axes drive dispatch: an account family (deposit account, credit
card, ...) and an enquiry service (statement, balance, mini statement).
A registry binds integer selectors to families, switch indices to
services, and (family, service) pairs to handlers. Registration is
add-only, so extending either axis can never change the behaviour of an
existing pair.

``legacy_visit`` replays the original integer-code control flow (the
element returns a code, the visitor branches on it) and exists for the
fidelity test suite; ``dispatch`` is the real engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from types import MappingProxyType
from typing import Callable, ClassVar, Mapping

from .domain import MiniStatement, Money, Statement, balance_of, mini_statement_of, statement_of
from .errors import (
    DuplicateRegistration,
    FamilyMismatch,
    NoSuchAccount,
    NullSelection,
    UnsupportedCombination,
)
from .jsonio import mini_statement_to_json, money_to_json, statement_to_json
from .store import LedgerSnapshot

DEFAULT_MINI_STATEMENT_DEPTH = 5

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class ServiceKind:
    """An enquiry service: the visited element of the dispatch."""

    code: int
    name: str


@dataclass(frozen=True)
class AccountFamilyKind:
    """An account family: the visiting side of the dispatch."""

    selector: int
    name: str


# Built-in bindings. Selector and code values are part of the public
# contract (clients may address kinds numerically) and never change.
ACCOUNT = AccountFamilyKind(selector=0, name="account")
CREDIT_CARD = AccountFamilyKind(selector=1, name="credit_card")

STATEMENT = ServiceKind(code=1, name="statement")
BALANCE = ServiceKind(code=2, name="balance")
MINI_STATEMENT = ServiceKind(code=3, name="mini_statement")

BUILTIN_VARIANTS = ("statement", "balance", "mini_statement")

SCREEN_FOR_VARIANT = {
    "statement": "statement_screen",
    "balance": "balance_screen",
    "mini_statement": "mini_statement_screen",
}


@dataclass(frozen=True)
class EnquiryRequest:
    family: AccountFamilyKind
    service: ServiceKind
    account_id: str
    period: tuple[datetime, datetime] | None = None
    depth: int | None = None

    def __post_init__(self):
        if self.period is not None and self.service.name != "statement":
            raise ValueError("period is only valid for statement enquiries")
        if self.depth is not None and self.service.name != "mini_statement":
            raise ValueError("depth is only valid for mini-statement enquiries")


@dataclass(frozen=True)
class EnquiryResult:
    """Base of the tagged result variants; echoes what was asked."""

    family: str
    service: str

    variant: ClassVar[str]

    def payload_json(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "family": self.family,
            "service": self.service,
            "payload": self.payload_json(),
        }


@dataclass(frozen=True)
class StatementResult(EnquiryResult):
    statement: Statement

    variant = "statement"

    def payload_json(self) -> dict:
        return statement_to_json(self.statement)


@dataclass(frozen=True)
class BalanceResult(EnquiryResult):
    amount: Money

    variant = "balance"

    def payload_json(self) -> dict:
        return money_to_json(self.amount)


@dataclass(frozen=True)
class MiniStatementResult(EnquiryResult):
    mini: MiniStatement

    variant = "mini_statement"

    def payload_json(self) -> dict:
        return mini_statement_to_json(self.mini)


Handler = Callable[[EnquiryRequest, LedgerSnapshot], EnquiryResult]


@dataclass(frozen=True)
class DispatchRegistry:
    """Immutable dispatch tables; registration returns a new registry."""

    families: Mapping[int, AccountFamilyKind]
    services: Mapping[int, ServiceKind]
    handlers: Mapping[tuple[str, str], Handler]

    def __post_init__(self):
        object.__setattr__(self, "families", MappingProxyType(dict(self.families)))
        object.__setattr__(self, "services", MappingProxyType(dict(self.services)))
        object.__setattr__(self, "handlers", MappingProxyType(dict(self.handlers)))

    @classmethod
    def empty(cls) -> "DispatchRegistry":
        return cls(families={}, services={}, handlers={})

    # -- code tables ------------------------------------------------------

    def get_type(self, i: int) -> AccountFamilyKind:
        """Selector -> family; unbound selectors fall through to NullSelection."""
        family = self.families.get(i)
        if family is None:
            raise NullSelection(f"no account family bound to selector {i}")
        return family

    def get_service(self, i: int) -> ServiceKind:
        """Switch index -> service; unbound indices fall through to NullSelection."""
        service = self.services.get(i)
        if service is None:
            raise NullSelection(f"no service bound to index {i}")
        return service

    def family_by_name(self, name: str) -> AccountFamilyKind:
        for family in self.families.values():
            if family.name == name:
                return family
        raise NullSelection(f"no account family named {name!r}")

    def service_by_name(self, name: str) -> ServiceKind:
        for service in self.services.values():
            if service.name == name:
                return service
        raise NullSelection(f"no service named {name!r}")

    # -- dispatch ---------------------------------------------------------

    def dispatch(self, request: EnquiryRequest, snapshot: LedgerSnapshot) -> EnquiryResult:
        """Invoke exactly the handler registered for (family, service).

        Pure: the result is derived solely from the snapshot, so equal
        requests against equal snapshots yield equal results.
        """
        account = snapshot.accounts.get(request.account_id)
        if account is None:
            raise NoSuchAccount(f"no account {request.account_id!r}")
        if account.family != request.family.name:
            raise FamilyMismatch(
                f"account {request.account_id} is in family {account.family!r}, "
                f"request named {request.family.name!r}"
            )
        handler = self.handlers.get((request.family.name, request.service.name))
        if handler is None:
            raise UnsupportedCombination(
                f"no handler for ({request.family.name}, {request.service.name})"
            )
        result = handler(request, snapshot)
        if result.variant != request.service.name and request.service.name in BUILTIN_VARIANTS:
            raise ValueError(
                f"handler for {request.service.name!r} returned variant {result.variant!r}"
            )
        return result

    # -- registration (add-only) ------------------------------------------

    def register_service(
        self, service: ServiceKind, handlers: Mapping[str, Handler]
    ) -> "DispatchRegistry":
        """Bind a new service at the next free switch index, with handlers per family."""
        for existing in self.services.values():
            if existing.code == service.code or existing.name == service.name:
                raise DuplicateRegistration(
                    f"service code {service.code} / name {service.name!r} already bound"
                )
        family_names = {f.name for f in self.families.values()}
        for name in handlers:
            if name not in family_names:
                raise ValueError(f"handler references unregistered family {name!r}")
        index = max(self.services, default=-1) + 1
        new_handlers = dict(self.handlers)
        for family_name, handler in handlers.items():
            new_handlers[(family_name, service.name)] = handler
        return replace(
            self,
            services={**self.services, index: service},
            handlers=new_handlers,
        )

    def register_family(
        self, family: AccountFamilyKind, handlers: Mapping[str, Handler]
    ) -> "DispatchRegistry":
        """Bind a new family at its selector, with handlers per service."""
        for existing in self.families.values():
            if existing.selector == family.selector or existing.name == family.name:
                raise DuplicateRegistration(
                    f"family selector {family.selector} / name {family.name!r} already bound"
                )
        service_names = {s.name for s in self.services.values()}
        for name in handlers:
            if name not in service_names:
                raise ValueError(f"handler references unregistered service {name!r}")
        new_handlers = dict(self.handlers)
        for service_name, handler in handlers.items():
            new_handlers[(family.name, service_name)] = handler
        return replace(
            self,
            families={**self.families, family.selector: family},
            handlers=new_handlers,
        )

    # -- legacy control flow ----------------------------------------------

    def legacy_visit(self, family_index: int, service_index: int) -> str:
        """Replay the original integer-coded dispatch and name the screen.

        The selected service hands its code back to the family's visit
        branch: 1 opens the statement screen, 2 the balance screen, and
        anything else falls through to the mini-statement screen.
        """
        self.get_type(family_index)
        service = self.get_service(service_index)
        code = service_code(service)
        if code == 1:
            return "statement_screen"
        elif code == 2:
            return "balance_screen"
        else:
            return "mini_statement_screen"


def service_code(service: ServiceKind) -> int:
    """The integer a service element reports to its visitor."""
    return service.code


_INT_RE = re.compile(r"^-?\d+$")


def resolve_family(registry: DispatchRegistry, value: str) -> AccountFamilyKind:
    """Resolve a client-supplied family: integer selectors verbatim, else by name."""
    if _INT_RE.match(value):
        return registry.get_type(int(value))
    return registry.family_by_name(value)


def resolve_service(registry: DispatchRegistry, value: str) -> ServiceKind:
    """Resolve a client-supplied service: switch index if numeric, else by name."""
    if _INT_RE.match(value):
        return registry.get_service(int(value))
    return registry.service_by_name(value)


# -- standard handlers ----------------------------------------------------


def statement_handler(request: EnquiryRequest, snapshot: LedgerSnapshot) -> StatementResult:
    """Statement over the requested period, or the full history when absent.

    The default period is derived from the snapshot (earliest to just
    past the latest transaction) so the handler stays pure.
    """
    account = snapshot.accounts[request.account_id]
    transactions = snapshot.transactions_for(request.account_id)
    if request.period is not None:
        period_from, period_to = request.period
    elif transactions:
        period_from = min(t.timestamp for t in transactions)
        period_to = max(t.timestamp for t in transactions) + timedelta(milliseconds=1)
    else:
        period_from, period_to = _EPOCH, _EPOCH + timedelta(milliseconds=1)
    statement = statement_of(transactions, account, period_from, period_to)
    return StatementResult(
        family=request.family.name, service=request.service.name, statement=statement
    )


def balance_handler(request: EnquiryRequest, snapshot: LedgerSnapshot) -> BalanceResult:
    account = snapshot.accounts[request.account_id]
    amount = balance_of(snapshot.transactions_for(request.account_id), account.currency)
    return BalanceResult(family=request.family.name, service=request.service.name, amount=amount)


def mini_statement_handler(
    request: EnquiryRequest, snapshot: LedgerSnapshot
) -> MiniStatementResult:
    account = snapshot.accounts[request.account_id]
    depth = request.depth if request.depth is not None else DEFAULT_MINI_STATEMENT_DEPTH
    mini = mini_statement_of(snapshot.transactions_for(request.account_id), account, depth)
    return MiniStatementResult(
        family=request.family.name, service=request.service.name, mini=mini
    )


STANDARD_HANDLERS: Mapping[str, Handler] = MappingProxyType(
    {
        "statement": statement_handler,
        "balance": balance_handler,
        "mini_statement": mini_statement_handler,
    }
)


def builtin_registry() -> DispatchRegistry:
    """The stock 2x3 registry: account/credit_card x statement/balance/mini."""
    registry = DispatchRegistry.empty()
    registry = registry.register_family(ACCOUNT, {})
    registry = registry.register_family(CREDIT_CARD, {})
    for service in (STATEMENT, BALANCE, MINI_STATEMENT):
        handler = STANDARD_HANDLERS[service.name]
        registry = registry.register_service(
            service, {ACCOUNT.name: handler, CREDIT_CARD.name: handler}
        )
    return registry
