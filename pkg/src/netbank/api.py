"""HTTP surface: session login, account listing, enquiry dispatch, registry metadata.

Every enquiry runs against a fresh ledger snapshot and never writes.
Error bodies always carry ``{"error": <code>, "message": <text>}``.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .enquiry import EnquiryRequest, builtin_registry, resolve_family, resolve_service
from .errors import (
    CurrencyMismatch,
    FamilyMismatch,
    InvalidDepth,
    InvalidPeriod,
    NetBankError,
    NoSuchAccount,
    NullSelection,
    UnsupportedCombination,
)
from .jsonio import format_timestamp, parse_timestamp
from .seed import load_customers
from .store import open_store

_STATUS_BY_ERROR = {
    NullSelection: 400,
    UnsupportedCombination: 400,
    FamilyMismatch: 400,
    InvalidPeriod: 400,
    InvalidDepth: 400,
    CurrencyMismatch: 400,
    NoSuchAccount: 404,
}


@dataclass
class ApiConfig:
    """Server settings; validated on construction."""

    store_dir: Path
    host: str = "127.0.0.1"
    port: int = 8435
    mini_statement_depth: int = 5
    session_lifetime_seconds: int = 3600
    cors_origins: tuple[str, ...] = ("*",)
    static_dir: Path | None = None

    def __post_init__(self):
        self.store_dir = Path(self.store_dir)
        if self.mini_statement_depth < 1:
            raise ValueError("mini_statement_depth must be >= 1")
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")


@dataclass(frozen=True)
class Session:
    token: str
    customer_id: str
    expires_at: datetime


class ApiError(Exception):
    """Carries an HTTP status plus the stable error code for the body."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class SessionManager:
    def __init__(self, lifetime: timedelta, clock: Callable[[], datetime]):
        self._lifetime = lifetime
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, customer_id: str) -> Session:
        session = Session(
            token=secrets.token_urlsafe(32),
            customer_id=customer_id,
            expires_at=self._clock() + self._lifetime,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def authenticate(self, token: str) -> Session:
        with self._lock:
            session = self._sessions.get(token)
        if session is None or self._clock() >= session.expires_at:
            raise ApiError(401, "unauthenticated", "missing, unknown or expired session token")
        return session


class LoginBody(BaseModel):
    customer_id: str
    pin: str


def create_app(config: ApiConfig, clock: Callable[[], datetime] | None = None) -> FastAPI:
    """Build the application around one store handle and one registry."""
    clock = clock or (lambda: datetime.now(timezone.utc))
    store = open_store(config.store_dir)
    registry = builtin_registry()
    customers = load_customers(config.store_dir)
    sessions = SessionManager(timedelta(seconds=config.session_lifetime_seconds), clock)

    app = FastAPI(title="netbank", version="0.1.0")
    app.state.store = store
    app.state.registry = registry
    app.state.sessions = sessions
    app.state.config = config

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["Authorization", "Content-Type"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"error": exc.code, "message": exc.message}
        )

    @app.exception_handler(NetBankError)
    async def handle_domain_error(request: Request, exc: NetBankError):
        status = _STATUS_BY_ERROR.get(type(exc), 400)
        return JSONResponse(
            status_code=status, content={"error": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "invalid_request", "message": str(exc.errors())},
        )

    def require_session(authorization: str | None = Header(default=None)) -> Session:
        if not authorization or not authorization.startswith("Bearer "):
            raise ApiError(401, "unauthenticated", "expected Authorization: Bearer <token>")
        return sessions.authenticate(authorization.removeprefix("Bearer "))

    @app.post("/sessions")
    def login(body: LoginBody):
        customer = customers.get(body.customer_id)
        if customer is None or customer.pin != body.pin:
            raise ApiError(401, "bad_credentials", "unknown customer or wrong pin")
        session = sessions.create(customer.customer_id)
        return {
            "token": session.token,
            "customer_id": session.customer_id,
            "expires_at": format_timestamp(session.expires_at),
        }

    @app.get("/accounts")
    def list_accounts(session: Session = Depends(require_session)):
        snapshot = store.snapshot()
        owned = sorted(
            (a for a in snapshot.accounts.values() if a.customer_id == session.customer_id),
            key=lambda a: a.id,
        )
        return {
            "accounts": [
                {
                    "id": a.id,
                    "family": a.family,
                    "currency": a.currency,
                    "opened_at": format_timestamp(a.opened_at),
                }
                for a in owned
            ]
        }

    @app.get("/meta/families")
    def meta_families():
        return {
            "families": [
                {"selector": selector, "name": kind.name}
                for selector, kind in sorted(registry.families.items())
            ]
        }

    @app.get("/meta/services")
    def meta_services():
        return {
            "services": [
                {"index": index, "code": kind.code, "name": kind.name}
                for index, kind in sorted(registry.services.items())
            ]
        }

    @app.get("/enquiry")
    def enquiry(
        family: str,
        service: str,
        account: str,
        period_from: str | None = Query(default=None, alias="from"),
        period_to: str | None = Query(default=None, alias="to"),
        depth: int | None = Query(default=None),
        session: Session = Depends(require_session),
    ):
        family_kind = resolve_family(registry, family)
        service_kind = resolve_service(registry, service)

        snapshot = store.snapshot()
        owned = snapshot.accounts.get(account)
        if owned is None or owned.customer_id != session.customer_id:
            raise NoSuchAccount(f"no account {account!r} for this customer")

        request = _build_request(
            config, family_kind, service_kind, account, period_from, period_to, depth
        )
        return registry.dispatch(request, snapshot).to_json()

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def _build_request(
    config: ApiConfig,
    family_kind,
    service_kind,
    account: str,
    period_from: str | None,
    period_to: str | None,
    depth: int | None,
) -> EnquiryRequest:
    period = None
    if period_from is not None or period_to is not None:
        if period_from is None or period_to is None:
            raise ApiError(400, "invalid_request", "from and to must be given together")
        if service_kind.name != "statement":
            raise ApiError(400, "invalid_request", "period applies only to statement enquiries")
        try:
            period = (parse_timestamp(period_from), parse_timestamp(period_to))
        except ValueError as exc:
            raise ApiError(400, "invalid_request", f"bad timestamp: {exc}") from exc
    if depth is not None and service_kind.name != "mini_statement":
        raise ApiError(400, "invalid_request", "depth applies only to mini-statement enquiries")
    if depth is None and service_kind.name == "mini_statement":
        depth = config.mini_statement_depth
    return EnquiryRequest(
        family=family_kind,
        service=service_kind,
        account_id=account,
        period=period,
        depth=depth,
    )
