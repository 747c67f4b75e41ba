"""Pure domain model for repair orders: value types and the status lifecycle.

Everything in this module is immutable and free of I/O.  Mutation of the
shop's state lives in :mod:`rku.store`; this module only defines what a
valid order looks like and which status changes are legal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime, timezone
from enum import Enum


class DomainError(Exception):
    """Base class for all domain-level failures."""


class ValidationError(DomainError):
    """A value does not satisfy the domain invariants."""


class InvalidTransition(DomainError):
    """Requested status change is not an edge of the lifecycle table."""


class ClockSkew(DomainError):
    """A new event would be timestamped before the order's last event."""


class MalformedNota(DomainError):
    """Text does not parse as a receipt number."""


def utc_now() -> datetime:
    """Current UTC time truncated to whole seconds (store precision)."""
    return datetime.now(timezone.utc).replace(microsecond=0)


class Role(str, Enum):
    """Account kinds.  Staff and Admin are provisioned via CLI only."""

    CUSTOMER = "Customer"
    STAFF = "Staff"
    ADMIN = "Admin"


class Division(str, Enum):
    """Shop units that take repair work.  Marketing sells, never repairs."""

    PRINTER = "Printer"
    SOFTWARE = "Software"
    HARDWARE = "Hardware"

    @classmethod
    def parse(cls, text: str) -> "Division":
        try:
            return cls(text)
        except ValueError:
            raise ValidationError(f"not a repair division: {text!r}") from None


class DeviceCategory(str, Enum):
    COMPUTER = "Computer"
    PRINTER = "Printer"
    ACCESSORY = "Accessory"

    @classmethod
    def parse(cls, text: str) -> "DeviceCategory":
        try:
            return cls(text)
        except ValueError:
            raise ValidationError(f"not a device category: {text!r}") from None


class OrderStatus(str, Enum):
    RECEIVED = "Received"
    DIAGNOSING = "Diagnosing"
    AWAITING_PARTS = "AwaitingParts"
    IN_REPAIR = "InRepair"
    COMPLETED = "Completed"
    PICKED_UP = "PickedUp"
    CANCELLED = "Cancelled"

    @classmethod
    def parse(cls, text: str) -> "OrderStatus":
        try:
            return cls(text)
        except ValueError:
            raise ValidationError(f"not an order status: {text!r}") from None


# The only legal lifecycle edges.  PickedUp and Cancelled are terminal.
TRANSITIONS: dict[OrderStatus, frozenset[OrderStatus]] = {
    OrderStatus.RECEIVED: frozenset({OrderStatus.DIAGNOSING, OrderStatus.CANCELLED}),
    OrderStatus.DIAGNOSING: frozenset(
        {OrderStatus.IN_REPAIR, OrderStatus.AWAITING_PARTS, OrderStatus.CANCELLED}
    ),
    OrderStatus.AWAITING_PARTS: frozenset({OrderStatus.IN_REPAIR, OrderStatus.CANCELLED}),
    OrderStatus.IN_REPAIR: frozenset(
        {OrderStatus.COMPLETED, OrderStatus.AWAITING_PARTS, OrderStatus.CANCELLED}
    ),
    OrderStatus.COMPLETED: frozenset({OrderStatus.PICKED_UP}),
    OrderStatus.PICKED_UP: frozenset(),
    OrderStatus.CANCELLED: frozenset(),
}


def legal_transitions(status: OrderStatus) -> frozenset[OrderStatus]:
    """Statuses reachable in one step from ``status``; empty for terminal ones."""
    return TRANSITIONS[OrderStatus(status)]


_NOTA_RE = re.compile(r"^RKU-(\d{8})-(\d{4})$")


def format_nota(intake_date: date, seq: int) -> str:
    """Build the canonical receipt number ``RKU-YYYYMMDD-NNNN``."""
    if not 1 <= seq <= 9999:
        raise MalformedNota(f"nota sequence out of range: {seq}")
    return f"RKU-{intake_date.strftime('%Y%m%d')}-{seq:04d}"


def parse_nota(text: str) -> tuple[date, int]:
    """Inverse of :func:`format_nota`; raises MalformedNota on any other shape."""
    m = _NOTA_RE.match(text)
    if m is None:
        raise MalformedNota(f"not a nota number: {text!r}")
    raw_date, raw_seq = m.groups()
    try:
        intake_date = datetime.strptime(raw_date, "%Y%m%d").date()
    except ValueError:
        raise MalformedNota(f"nota has no valid date: {text!r}") from None
    seq = int(raw_seq)
    if seq < 1:
        raise MalformedNota(f"nota sequence must be >= 1: {text!r}")
    return intake_date, seq


_EMAIL_RE = re.compile(r"^[^@\s]+@[^@\s]+\.[^@\s]+$")


def normalize_email(email: str) -> str:
    """Canonical form used for uniqueness and lookup: trimmed and case-folded."""
    return email.strip().casefold()


def _require_utc(value: datetime, what: str) -> None:
    if value.tzinfo is None or value.utcoffset() is None:
        raise ValidationError(f"{what} must be timezone-aware UTC")


@dataclass(frozen=True)
class Customer:
    """An admin-registered account that owns orders and complaints."""

    id: str
    name: str
    email: str
    phone: str | None
    created_at: datetime

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("customer id must be non-empty")
        if not self.name.strip():
            raise ValidationError("customer name must be non-empty")
        if not _EMAIL_RE.match(self.email):
            raise ValidationError(f"not a valid email address: {self.email!r}")
        if self.email != normalize_email(self.email):
            raise ValidationError(f"email not normalized: {self.email!r}")
        _require_utc(self.created_at, "created_at")


@dataclass(frozen=True)
class DeviceInfo:
    """The device brought in for repair."""

    category: DeviceCategory
    brand: str
    description: str

    def __post_init__(self) -> None:
        if not isinstance(self.category, DeviceCategory):
            raise ValidationError(f"not a device category: {self.category!r}")
        if not self.description.strip():
            raise ValidationError("device description must be non-empty")


@dataclass(frozen=True)
class StatusEvent:
    """One lifecycle step of an order."""

    status: OrderStatus
    at: datetime
    actor: str
    note: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.status, OrderStatus):
            raise ValidationError(f"not an order status: {self.status!r}")
        _require_utc(self.at, "event timestamp")
        if not self.actor.strip():
            raise ValidationError("event actor must be non-empty")


@dataclass(frozen=True)
class ServiceOrder:
    """A repair ticket keyed by nota, with an append-only status history.

    The current status is always ``history[-1].status``; it is never stored
    separately.  Instances are values: :func:`transition` returns a new
    order instead of mutating.
    """

    nota: str
    customer_id: str
    division: Division
    device: DeviceInfo
    problem: str
    history: tuple[StatusEvent, ...]

    def __post_init__(self) -> None:
        parse_nota(self.nota)
        if not self.customer_id:
            raise ValidationError("customer_id must be non-empty")
        if not isinstance(self.division, Division):
            raise ValidationError(f"not a repair division: {self.division!r}")
        if not self.problem.strip():
            raise ValidationError("problem description must be non-empty")
        history = tuple(self.history)
        object.__setattr__(self, "history", history)
        if not history:
            raise ValidationError("order history must be non-empty")
        if history[0].status is not OrderStatus.RECEIVED:
            raise ValidationError(
                f"order history must start at Received, got {history[0].status.value}"
            )
        for prev, nxt in zip(history, history[1:]):
            if nxt.status not in TRANSITIONS[prev.status]:
                raise ValidationError(
                    f"illegal edge in history: {prev.status.value} -> {nxt.status.value}"
                )
            if nxt.at < prev.at:
                raise ValidationError("history timestamps must be non-decreasing")

    @property
    def status(self) -> OrderStatus:
        return self.history[-1].status


def new_order(
    nota: str,
    customer_id: str,
    division: Division,
    device: DeviceInfo,
    problem: str,
    actor: str,
    now: datetime,
) -> ServiceOrder:
    """Open a fresh order at Received.  The caller supplies the issued nota."""
    if not isinstance(division, Division):
        raise ValidationError(f"not a repair division: {division!r}")
    return ServiceOrder(
        nota=nota,
        customer_id=customer_id,
        division=division,
        device=device,
        problem=problem,
        history=(StatusEvent(status=OrderStatus.RECEIVED, at=now, actor=actor),),
    )


def transition(
    order: ServiceOrder,
    new_status: OrderStatus,
    actor: str,
    note: str | None,
    now: datetime,
) -> ServiceOrder:
    """Append one status event, returning a new order value.

    Raises InvalidTransition when the edge is not in the table (including
    any edge out of PickedUp or Cancelled) and ClockSkew when ``now`` is
    earlier than the last recorded event.
    """
    if not isinstance(new_status, OrderStatus):
        raise ValidationError(f"not an order status: {new_status!r}")
    current = order.status
    if new_status not in TRANSITIONS[current]:
        raise InvalidTransition(
            f"{current.value} -> {new_status.value} is not a legal transition"
        )
    last = order.history[-1]
    if now < last.at:
        raise ClockSkew(
            f"event time {now.isoformat()} precedes last event {last.at.isoformat()}"
        )
    event = StatusEvent(status=new_status, at=now, actor=actor, note=note)
    return ServiceOrder(
        nota=order.nota,
        customer_id=order.customer_id,
        division=order.division,
        device=order.device,
        problem=order.problem,
        history=order.history + (event,),
    )
