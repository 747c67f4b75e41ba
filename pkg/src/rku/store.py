"""Durable JSON-file store for customers, orders, complaints, FAQ and credentials.

Layout: one UTF-8 JSON document per collection inside the store directory
(``customers.json``, ``orders.json``, ``complaints.json``, ``faq.json``,
``counters.json``, ``credentials.json``).  Every mutation rewrites the
affected file via temp-file-then-atomic-rename and only then updates the
in-memory state, so an interrupted save leaves the previous snapshot
loadable.

One logical writer at a time: mutations are serialized through an internal
lock; reads see immutable domain values.
"""
from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import date, datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Iterator

from contextlib import contextmanager

from .domain import (
    Customer,
    DeviceCategory,
    DeviceInfo,
    Division,
    DomainError,
    OrderStatus,
    Role,
    ServiceOrder,
    StatusEvent,
    ValidationError,
    format_nota,
    normalize_email,
    parse_nota,
)


class StoreError(Exception):
    pass


class CorruptStore(StoreError):
    """A store file failed to parse or violates a snapshot invariant."""


class StorageFailure(StoreError):
    """The underlying filesystem write failed; in-memory state unchanged."""


class DuplicateEmail(StoreError):
    pass


class DuplicateNota(StoreError):
    pass


class ForeignKeyViolation(StoreError):
    """A record references a customer or nota that is not in the store."""


class UnknownRecord(StoreError):
    """Mutation addressed a record that does not exist."""


class ComplaintState(str, Enum):
    OPEN = "Open"
    ACKNOWLEDGED = "Acknowledged"
    RESOLVED = "Resolved"

    @classmethod
    def parse(cls, text: str) -> "ComplaintState":
        try:
            return cls(text)
        except ValueError:
            raise ValidationError(f"not a complaint state: {text!r}") from None


@dataclass(frozen=True)
class Complaint:
    """Free-text customer grievance, optionally linked to an order."""

    id: str
    customer_id: str
    nota: str | None
    text: str
    created_at: datetime
    state: ComplaintState

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("complaint id must be non-empty")
        if not self.text.strip():
            raise ValidationError("complaint text must be non-empty")
        if self.created_at.tzinfo is None:
            raise ValidationError("created_at must be timezone-aware UTC")
        if not isinstance(self.state, ComplaintState):
            raise ValidationError(f"not a complaint state: {self.state!r}")


@dataclass(frozen=True)
class FaqEntry:
    id: str
    question: str
    answer: str
    tags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("faq id must be non-empty")
        if not self.question.strip():
            raise ValidationError("faq question must be non-empty")
        if not self.answer.strip():
            raise ValidationError("faq answer must be non-empty")
        object.__setattr__(self, "tags", tuple(self.tags))


@dataclass(frozen=True)
class Credential:
    """Login record: salted one-way digest, never a plaintext password."""

    account_id: str
    email: str
    name: str
    role: Role
    password_digest: str

    def __post_init__(self) -> None:
        if not self.account_id:
            raise ValidationError("account_id must be non-empty")
        if self.email != normalize_email(self.email):
            raise ValidationError(f"credential email not normalized: {self.email!r}")
        if not isinstance(self.role, Role):
            raise ValidationError(f"not a role: {self.role!r}")
        if not self.password_digest:
            raise ValidationError("password_digest must be non-empty")


@dataclass(frozen=True)
class StoreSnapshot:
    """Value view of the whole store, used for round-trip comparisons."""

    customers: dict[str, Customer]
    orders: dict[str, ServiceOrder]
    complaints: tuple[Complaint, ...]
    faq: tuple[FaqEntry, ...]
    nota_counters: dict[str, int]
    credentials: dict[str, Credential]


def _dt_to_json(value: datetime) -> str:
    return value.astimezone(timezone.utc).replace(microsecond=0).isoformat()


def _dt_from_json(raw: str) -> datetime:
    try:
        parsed = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError:
        raise ValidationError(f"not an ISO-8601 timestamp: {raw!r}") from None
    if parsed.tzinfo is None:
        raise ValidationError(f"timestamp lacks timezone: {raw!r}")
    return parsed.astimezone(timezone.utc)


def _customer_to_json(c: Customer) -> dict[str, Any]:
    return {
        "id": c.id,
        "name": c.name,
        "email": c.email,
        "phone": c.phone,
        "created_at": _dt_to_json(c.created_at),
    }


def _customer_from_json(raw: dict[str, Any]) -> Customer:
    return Customer(
        id=raw["id"],
        name=raw["name"],
        email=raw["email"],
        phone=raw.get("phone"),
        created_at=_dt_from_json(raw["created_at"]),
    )


def _order_to_json(o: ServiceOrder) -> dict[str, Any]:
    return {
        "nota": o.nota,
        "customer_id": o.customer_id,
        "division": o.division.value,
        "device": {
            "category": o.device.category.value,
            "brand": o.device.brand,
            "description": o.device.description,
        },
        "problem": o.problem,
        "history": [
            {
                "status": e.status.value,
                "at": _dt_to_json(e.at),
                "actor": e.actor,
                "note": e.note,
            }
            for e in o.history
        ],
    }


def _order_from_json(raw: dict[str, Any]) -> ServiceOrder:
    device = raw["device"]
    return ServiceOrder(
        nota=raw["nota"],
        customer_id=raw["customer_id"],
        division=Division.parse(raw["division"]),
        device=DeviceInfo(
            category=DeviceCategory.parse(device["category"]),
            brand=device["brand"],
            description=device["description"],
        ),
        problem=raw["problem"],
        history=tuple(
            StatusEvent(
                status=OrderStatus.parse(e["status"]),
                at=_dt_from_json(e["at"]),
                actor=e["actor"],
                note=e.get("note"),
            )
            for e in raw["history"]
        ),
    )


def _complaint_to_json(c: Complaint) -> dict[str, Any]:
    return {
        "id": c.id,
        "customer_id": c.customer_id,
        "nota": c.nota,
        "text": c.text,
        "created_at": _dt_to_json(c.created_at),
        "state": c.state.value,
    }


def _complaint_from_json(raw: dict[str, Any]) -> Complaint:
    return Complaint(
        id=raw["id"],
        customer_id=raw["customer_id"],
        nota=raw.get("nota"),
        text=raw["text"],
        created_at=_dt_from_json(raw["created_at"]),
        state=ComplaintState.parse(raw["state"]),
    )


def _faq_to_json(e: FaqEntry) -> dict[str, Any]:
    return {"id": e.id, "question": e.question, "answer": e.answer, "tags": list(e.tags)}


def _faq_from_json(raw: dict[str, Any]) -> FaqEntry:
    return FaqEntry(
        id=raw["id"],
        question=raw["question"],
        answer=raw["answer"],
        tags=tuple(raw.get("tags", ())),
    )


def _credential_to_json(c: Credential) -> dict[str, Any]:
    return {
        "account_id": c.account_id,
        "email": c.email,
        "name": c.name,
        "role": c.role.value,
        "password_digest": c.password_digest,
    }


def _credential_from_json(raw: dict[str, Any]) -> Credential:
    try:
        role = Role(raw["role"])
    except ValueError:
        raise ValidationError(f"not a role: {raw['role']!r}") from None
    return Credential(
        account_id=raw["account_id"],
        email=raw["email"],
        name=raw["name"],
        role=role,
        password_digest=raw["password_digest"],
    )


def _atomic_write(path: Path, text: str) -> None:
    """Write to a temp file, fsync, then atomically replace ``path``."""
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except OSError as exc:
        try:
            tmp.unlink(missing_ok=True)
        except OSError:
            pass
        raise StorageFailure(f"failed to write {path.name}: {exc}") from exc
    try:
        dir_fd = os.open(path.parent, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)
    except OSError:
        pass


def _dump(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class Store:
    """Persistent shop state.  Open with :meth:`Store.open`."""

    CUSTOMERS = "customers.json"
    ORDERS = "orders.json"
    COMPLAINTS = "complaints.json"
    FAQ = "faq.json"
    COUNTERS = "counters.json"
    CREDENTIALS = "credentials.json"

    def __init__(self, root: Path):
        self.root = root
        self._lock = threading.RLock()
        self._customers: dict[str, Customer] = {}
        self._orders: dict[str, ServiceOrder] = {}
        self._complaints: list[Complaint] = []
        self._faq: list[FaqEntry] = []
        self._counters: dict[str, int] = {}
        self._credentials: dict[str, Credential] = {}

    # -- opening and validation -------------------------------------------

    @classmethod
    def open(cls, path: str | Path) -> "Store":
        """Load the store at ``path``; an absent directory yields an empty store."""
        root = Path(path)
        try:
            root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageFailure(f"cannot create store directory {root}: {exc}") from exc
        store = cls(root)
        store._customers = {
            c.id: c for c in store._load_list(cls.CUSTOMERS, _customer_from_json, "id")
        }
        store._orders = {
            o.nota: o for o in store._load_list(cls.ORDERS, _order_from_json, "nota")
        }
        store._complaints = store._load_list(cls.COMPLAINTS, _complaint_from_json, "id")
        store._faq = store._load_list(cls.FAQ, _faq_from_json, "id")
        store._credentials = {
            c.account_id: c
            for c in store._load_list(cls.CREDENTIALS, _credential_from_json, "account_id")
        }
        store._counters = store._load_counters()
        store._validate_snapshot()
        return store

    def _load_list(self, name: str, decode, key_field: str) -> list:
        path = self.root / name
        if not path.exists():
            return []
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorruptStore(f"{name}: cannot parse: {exc}") from exc
        if not isinstance(raw, list):
            raise CorruptStore(f"{name}: expected a JSON array")
        records = []
        seen: set[str] = set()
        for item in raw:
            ident = item.get(key_field, "<missing>") if isinstance(item, dict) else "<bad>"
            try:
                record = decode(item)
            except (DomainError, KeyError, TypeError, AttributeError) as exc:
                raise CorruptStore(f"{name}: record {ident}: {exc}") from exc
            if ident in seen:
                raise CorruptStore(f"{name}: duplicate record {ident}")
            seen.add(ident)
            records.append(record)
        return records

    def _load_counters(self) -> dict[str, int]:
        path = self.root / self.COUNTERS
        if not path.exists():
            return {}
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorruptStore(f"{self.COUNTERS}: cannot parse: {exc}") from exc
        if not isinstance(raw, dict):
            raise CorruptStore(f"{self.COUNTERS}: expected a JSON object")
        counters: dict[str, int] = {}
        for key, value in raw.items():
            if not isinstance(value, int) or value < 0:
                raise CorruptStore(f"{self.COUNTERS}: bad counter {key}: {value!r}")
            counters[key] = value
        return counters

    def _validate_snapshot(self) -> None:
        emails: set[str] = set()
        for customer in self._customers.values():
            key = normalize_email(customer.email)
            if key in emails:
                raise CorruptStore(f"{self.CUSTOMERS}: duplicate email {customer.email}")
            emails.add(key)
        for order in self._orders.values():
            if order.customer_id not in self._customers:
                raise CorruptStore(
                    f"{self.ORDERS}: order {order.nota} references missing customer "
                    f"{order.customer_id}"
                )
            intake, seq = parse_nota(order.nota)
            counted = self._counters.get(intake.strftime("%Y%m%d"), 0)
            if counted < seq:
                raise CorruptStore(
                    f"{self.COUNTERS}: counter for {intake.isoformat()} is {counted}, "
                    f"below issued nota {order.nota}"
                )
        for complaint in self._complaints:
            if complaint.customer_id not in self._customers:
                raise CorruptStore(
                    f"{self.COMPLAINTS}: complaint {complaint.id} references missing "
                    f"customer {complaint.customer_id}"
                )
            if complaint.nota is not None and complaint.nota not in self._orders:
                raise CorruptStore(
                    f"{self.COMPLAINTS}: complaint {complaint.id} references missing "
                    f"nota {complaint.nota}"
                )
        cred_emails: set[str] = set()
        for cred in self._credentials.values():
            if cred.email in cred_emails:
                raise CorruptStore(f"{self.CREDENTIALS}: duplicate email {cred.email}")
            cred_emails.add(cred.email)
            if cred.role is Role.CUSTOMER and cred.account_id not in self._customers:
                raise CorruptStore(
                    f"{self.CREDENTIALS}: credential {cred.account_id} references "
                    "missing customer"
                )

    # -- persistence -------------------------------------------------------

    def _persist_customers(self) -> None:
        payload = [_customer_to_json(c) for c in sorted(self._customers.values(), key=lambda c: c.id)]
        _atomic_write(self.root / self.CUSTOMERS, _dump(payload))

    def _persist_orders(self) -> None:
        payload = [_order_to_json(o) for o in sorted(self._orders.values(), key=lambda o: o.nota)]
        _atomic_write(self.root / self.ORDERS, _dump(payload))

    def _persist_complaints(self) -> None:
        _atomic_write(
            self.root / self.COMPLAINTS, _dump([_complaint_to_json(c) for c in self._complaints])
        )

    def _persist_faq(self) -> None:
        _atomic_write(self.root / self.FAQ, _dump([_faq_to_json(e) for e in self._faq]))

    def _persist_counters(self) -> None:
        _atomic_write(self.root / self.COUNTERS, _dump(self._counters))

    def _persist_credentials(self) -> None:
        payload = [
            _credential_to_json(c)
            for c in sorted(self._credentials.values(), key=lambda c: c.account_id)
        ]
        _atomic_write(self.root / self.CREDENTIALS, _dump(payload))

    @contextmanager
    def exclusive(self) -> Iterator[None]:
        """Hold the writer lock across a read-modify-write sequence."""
        with self._lock:
            yield

    def snapshot(self) -> StoreSnapshot:
        with self._lock:
            return StoreSnapshot(
                customers=dict(self._customers),
                orders=dict(self._orders),
                complaints=tuple(self._complaints),
                faq=tuple(self._faq),
                nota_counters=dict(self._counters),
                credentials=dict(self._credentials),
            )

    # -- nota issuance ------------------------------------------------------

    def issue_nota(self, intake_date: date) -> str:
        """Next receipt number for the date; the counter is durable before return."""
        with self._lock:
            key = intake_date.strftime("%Y%m%d")
            seq = self._counters.get(key, 0) + 1
            if seq > 9999:
                raise StorageFailure(f"nota sequence exhausted for {intake_date.isoformat()}")
            previous = dict(self._counters)
            self._counters = {**previous, key: seq}
            try:
                self._persist_counters()
            except StorageFailure:
                self._counters = previous
                raise
            return format_nota(intake_date, seq)

    # -- customers -----------------------------------------------------------

    def save_customer(self, customer: Customer) -> None:
        with self._lock:
            key = normalize_email(customer.email)
            for other in self._customers.values():
                if other.id != customer.id and normalize_email(other.email) == key:
                    raise DuplicateEmail(f"email already registered: {customer.email}")
            previous = dict(self._customers)
            self._customers = {**self._customers, customer.id: customer}
            try:
                self._persist_customers()
            except StorageFailure:
                self._customers = previous
                raise

    def find_customer(self, customer_id: str) -> Customer | None:
        with self._lock:
            return self._customers.get(customer_id)

    def find_customer_by_email(self, email: str) -> Customer | None:
        key = normalize_email(email)
        with self._lock:
            for customer in self._customers.values():
                if normalize_email(customer.email) == key:
                    return customer
        return None

    def list_customers(self) -> list[Customer]:
        with self._lock:
            return sorted(self._customers.values(), key=lambda c: c.id)

    # -- orders ---------------------------------------------------------------

    def save_order(self, order: ServiceOrder) -> None:
        with self._lock:
            if order.nota in self._orders:
                raise DuplicateNota(f"nota already exists: {order.nota}")
            if order.customer_id not in self._customers:
                raise ForeignKeyViolation(f"order references missing customer: {order.customer_id}")
            previous = dict(self._orders)
            self._orders = {**self._orders, order.nota: order}
            try:
                self._persist_orders()
            except StorageFailure:
                self._orders = previous
                raise

    def update_order(self, order: ServiceOrder) -> None:
        with self._lock:
            if order.nota not in self._orders:
                raise UnknownRecord(f"no such order: {order.nota}")
            previous = dict(self._orders)
            self._orders = {**self._orders, order.nota: order}
            try:
                self._persist_orders()
            except StorageFailure:
                self._orders = previous
                raise

    def find_order_by_nota(self, nota: str) -> ServiceOrder | None:
        with self._lock:
            return self._orders.get(nota)

    def list_orders(self) -> list[ServiceOrder]:
        with self._lock:
            return sorted(self._orders.values(), key=lambda o: o.nota)

    def list_orders_by_customer(self, customer_id: str) -> list[ServiceOrder]:
        with self._lock:
            return sorted(
                (o for o in self._orders.values() if o.customer_id == customer_id),
                key=lambda o: o.nota,
            )

    # -- complaints --------------------------------------------------------------

    def append_complaint(self, complaint: Complaint) -> None:
        with self._lock:
            if complaint.customer_id not in self._customers:
                raise ForeignKeyViolation(
                    f"complaint references missing customer: {complaint.customer_id}"
                )
            if complaint.nota is not None and complaint.nota not in self._orders:
                raise ForeignKeyViolation(f"complaint references missing nota: {complaint.nota}")
            if any(c.id == complaint.id for c in self._complaints):
                raise StoreError(f"duplicate complaint id: {complaint.id}")
            previous = list(self._complaints)
            self._complaints = previous + [complaint]
            try:
                self._persist_complaints()
            except StorageFailure:
                self._complaints = previous
                raise

    def list_complaints(self, state: ComplaintState | None = None) -> list[Complaint]:
        with self._lock:
            if state is None:
                return list(self._complaints)
            return [c for c in self._complaints if c.state is state]

    def find_complaint(self, complaint_id: str) -> Complaint | None:
        with self._lock:
            for complaint in self._complaints:
                if complaint.id == complaint_id:
                    return complaint
        return None

    def set_complaint_state(self, complaint_id: str, state: ComplaintState) -> Complaint:
        with self._lock:
            index = next(
                (i for i, c in enumerate(self._complaints) if c.id == complaint_id), None
            )
            if index is None:
                raise UnknownRecord(f"no such complaint: {complaint_id}")
            old = self._complaints[index]
            updated = Complaint(
                id=old.id,
                customer_id=old.customer_id,
                nota=old.nota,
                text=old.text,
                created_at=old.created_at,
                state=state,
            )
            previous = list(self._complaints)
            self._complaints = previous[:index] + [updated] + previous[index + 1 :]
            try:
                self._persist_complaints()
            except StorageFailure:
                self._complaints = previous
                raise
            return updated

    # -- FAQ ------------------------------------------------------------------------

    def upsert_faq(self, entry: FaqEntry) -> None:
        with self._lock:
            previous = list(self._faq)
            index = next((i for i, e in enumerate(previous) if e.id == entry.id), None)
            if index is None:
                self._faq = previous + [entry]
            else:
                self._faq = previous[:index] + [entry] + previous[index + 1 :]
            try:
                self._persist_faq()
            except StorageFailure:
                self._faq = previous
                raise

    def list_faq(self) -> list[FaqEntry]:
        with self._lock:
            return list(self._faq)

    # -- credentials -------------------------------------------------------------------

    def save_credential(self, credential: Credential) -> None:
        with self._lock:
            for other in self._credentials.values():
                if other.account_id != credential.account_id and other.email == credential.email:
                    raise DuplicateEmail(f"email already registered: {credential.email}")
            previous = dict(self._credentials)
            self._credentials = {**self._credentials, credential.account_id: credential}
            try:
                self._persist_credentials()
            except StorageFailure:
                self._credentials = previous
                raise

    def find_credential(self, account_id: str) -> Credential | None:
        with self._lock:
            return self._credentials.get(account_id)

    def find_credential_by_email(self, email: str) -> Credential | None:
        key = normalize_email(email)
        with self._lock:
            for credential in self._credentials.values():
                if credential.email == key:
                    return credential
        return None
