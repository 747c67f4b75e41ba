"""Accounts, password digests, session tokens and role checks.

Credentials persist in the store; session tokens live in memory and are
lost on restart (sessions are cheap to recreate).  Login failures are
indistinguishable between unknown email and wrong password, and an email
is locked out after five failures within one minute.
"""
from __future__ import annotations

import hashlib
import hmac
import secrets
import threading
from collections import deque
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Callable

from . import domain, ids
from .domain import Customer, Role, ValidationError, normalize_email
from .store import Credential, DuplicateEmail, Store


class AuthError(Exception):
    pass


class Forbidden(AuthError):
    """Caller's role does not permit the operation."""


class WeakPassword(AuthError):
    pass


class AuthenticationFailed(AuthError):
    """Bad email/password pair; deliberately not more specific."""


class Unauthorized(AuthError):
    """Missing, unknown or expired session token."""


MIN_PASSWORD_LENGTH = 8
LOCKOUT_FAILURES = 5
LOCKOUT_WINDOW = timedelta(minutes=1)

_PBKDF2_ITERATIONS = 50_000


def hash_password(password: str, *, iterations: int = _PBKDF2_ITERATIONS) -> str:
    salt = secrets.token_hex(16)
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), bytes.fromhex(salt), iterations
    )
    return f"pbkdf2_sha256${iterations}${salt}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, raw_iterations, salt, expected = stored.split("$")
        iterations = int(raw_iterations)
    except ValueError:
        return False
    if scheme != "pbkdf2_sha256":
        return False
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), bytes.fromhex(salt), iterations
    )
    return hmac.compare_digest(digest.hex(), expected)


@dataclass(frozen=True)
class SessionToken:
    token: str
    account_id: str
    role: Role
    expires_at: datetime


class AuthService:
    """Credential verification and opaque bearer tokens over a store."""

    def __init__(
        self,
        store: Store,
        *,
        ttl_hours: float = 24,
        clock: Callable[[], datetime] | None = None,
        iterations: int = _PBKDF2_ITERATIONS,
    ):
        self._store = store
        self._ttl = timedelta(hours=ttl_hours)
        self._clock = clock if clock is not None else (lambda: domain.utc_now())
        self._iterations = iterations
        self._tokens: dict[str, SessionToken] = {}
        self._failures: dict[str, deque[datetime]] = {}
        self._lock = threading.Lock()

    # -- account creation ---------------------------------------------------

    def _check_password(self, password: str) -> None:
        if len(password) < MIN_PASSWORD_LENGTH:
            raise WeakPassword(f"password must be at least {MIN_PASSWORD_LENGTH} characters")

    def create_customer(
        self,
        name: str,
        email: str,
        phone: str | None,
        password: str,
        now: datetime | None = None,
    ) -> Customer:
        """Create a customer account without a caller check (CLI trust boundary)."""
        self._check_password(password)
        email = normalize_email(email)
        if self._store.find_credential_by_email(email) is not None:
            raise DuplicateEmail(f"email already registered: {email}")
        customer = Customer(
            id=ids.new_id(),
            name=name,
            email=email,
            phone=phone,
            created_at=now if now is not None else self._clock(),
        )
        self._store.save_customer(customer)
        self._store.save_credential(
            Credential(
                account_id=customer.id,
                email=email,
                name=customer.name,
                role=Role.CUSTOMER,
                password_digest=hash_password(password, iterations=self._iterations),
            )
        )
        return customer

    def register_customer(
        self,
        admin_token: str,
        name: str,
        email: str,
        phone: str | None,
        initial_password: str,
        now: datetime | None = None,
    ) -> Customer:
        """Admin-only customer registration (the API path)."""
        _, role = self.authenticate(admin_token, now)
        if role is not Role.ADMIN:
            raise Forbidden("only admins may register customers")
        return self.create_customer(name, email, phone, initial_password, now)

    def provision_account(
        self, name: str, email: str, password: str, role: Role
    ) -> Credential:
        """Create a staff or admin login; reachable from the CLI only."""
        if role is Role.CUSTOMER:
            raise ValidationError("use create_customer for customer accounts")
        self._check_password(password)
        email = normalize_email(email)
        if self._store.find_credential_by_email(email) is not None:
            raise DuplicateEmail(f"email already registered: {email}")
        if self._store.find_customer_by_email(email) is not None:
            raise DuplicateEmail(f"email already registered: {email}")
        credential = Credential(
            account_id=ids.new_id(),
            email=email,
            name=name,
            role=role,
            password_digest=hash_password(password, iterations=self._iterations),
        )
        self._store.save_credential(credential)
        return credential

    # -- sessions -------------------------------------------------------------

    def _locked_out(self, email: str, now: datetime) -> bool:
        window = self._failures.get(email)
        if window is None:
            return False
        while window and now - window[0] > LOCKOUT_WINDOW:
            window.popleft()
        return len(window) >= LOCKOUT_FAILURES

    def login(self, email: str, password: str, now: datetime | None = None) -> SessionToken:
        at = now if now is not None else self._clock()
        key = normalize_email(email)
        with self._lock:
            if self._locked_out(key, at):
                raise AuthenticationFailed("invalid email or password")
        credential = self._store.find_credential_by_email(key)
        ok = credential is not None and verify_password(password, credential.password_digest)
        with self._lock:
            if not ok:
                self._failures.setdefault(key, deque()).append(at)
                raise AuthenticationFailed("invalid email or password")
            self._failures.pop(key, None)
            assert credential is not None
            session = SessionToken(
                token=secrets.token_urlsafe(32),
                account_id=credential.account_id,
                role=credential.role,
                expires_at=at + self._ttl,
            )
            self._tokens[session.token] = session
            return session

    def authenticate(self, token: str, now: datetime | None = None) -> tuple[str, Role]:
        at = now if now is not None else self._clock()
        with self._lock:
            session = self._tokens.get(token)
            if session is None:
                raise Unauthorized("unknown token")
            if at >= session.expires_at:
                del self._tokens[token]
                raise Unauthorized("token expired")
            return session.account_id, session.role

    def change_password(
        self,
        token: str,
        current_password: str,
        new_password: str,
        now: datetime | None = None,
    ) -> None:
        account_id, _ = self.authenticate(token, now)
        credential = self._store.find_credential(account_id)
        if credential is None or not verify_password(current_password, credential.password_digest):
            raise AuthenticationFailed("invalid email or password")
        self._check_password(new_password)
        self._store.save_credential(
            Credential(
                account_id=credential.account_id,
                email=credential.email,
                name=credential.name,
                role=credential.role,
                password_digest=hash_password(new_password, iterations=self._iterations),
            )
        )

    def display_name(self, account_id: str) -> str:
        credential = self._store.find_credential(account_id)
        return credential.name if credential is not None else account_id
