"""Request and response bodies for the HTTP API.

Enum-like fields arrive as plain strings and are parsed by the domain so
that a bad division or status yields the domain's own validation error,
not a framework-shaped one.
"""
from __future__ import annotations

from datetime import datetime

from pydantic import BaseModel

from ..domain import Customer, OrderStatus, ServiceOrder, legal_transitions
from ..fuzzy import Suggestion
from ..store import Complaint, FaqEntry


class ApiErrorBody(BaseModel):
    code: str
    message: str


class MessageResponse(BaseModel):
    message: str


class LoginRequest(BaseModel):
    email: str
    password: str


class CustomerOut(BaseModel):
    id: str
    name: str
    email: str
    phone: str | None
    created_at: datetime

    @classmethod
    def from_domain(cls, customer: Customer) -> "CustomerOut":
        return cls(
            id=customer.id,
            name=customer.name,
            email=customer.email,
            phone=customer.phone,
            created_at=customer.created_at,
        )


class LoginResponse(BaseModel):
    token: str
    expires_at: datetime
    role: str
    name: str
    customer: CustomerOut | None


class RegisterCustomerRequest(BaseModel):
    name: str
    email: str
    phone: str | None = None
    password: str


class PasswordChangeRequest(BaseModel):
    current_password: str
    new_password: str


class DeviceModel(BaseModel):
    category: str
    brand: str
    description: str


class OrderCreateRequest(BaseModel):
    customer_id: str
    division: str
    device: DeviceModel
    problem: str


class TransitionRequest(BaseModel):
    status: str
    note: str | None = None


class StatusEventOut(BaseModel):
    status: str
    at: datetime
    actor: str
    note: str | None


class OrderOut(BaseModel):
    nota: str
    customer_id: str
    division: str
    device: DeviceModel
    problem: str
    status: str
    history: list[StatusEventOut]
    legal_transitions: list[str]

    @classmethod
    def from_domain(cls, order: ServiceOrder) -> "OrderOut":
        return cls(
            nota=order.nota,
            customer_id=order.customer_id,
            division=order.division.value,
            device=DeviceModel(
                category=order.device.category.value,
                brand=order.device.brand,
                description=order.device.description,
            ),
            problem=order.problem,
            status=order.status.value,
            history=[
                StatusEventOut(status=e.status.value, at=e.at, actor=e.actor, note=e.note)
                for e in order.history
            ],
            legal_transitions=[
                s.value for s in OrderStatus if s in legal_transitions(order.status)
            ],
        )


class OrderListResponse(BaseModel):
    orders: list[OrderOut]


class ComplaintCreateRequest(BaseModel):
    text: str
    nota: str | None = None


class ComplaintStateRequest(BaseModel):
    state: str


class ComplaintOut(BaseModel):
    id: str
    customer_id: str
    nota: str | None
    text: str
    created_at: datetime
    state: str

    @classmethod
    def from_domain(cls, complaint: Complaint) -> "ComplaintOut":
        return cls(
            id=complaint.id,
            customer_id=complaint.customer_id,
            nota=complaint.nota,
            text=complaint.text,
            created_at=complaint.created_at,
            state=complaint.state.value,
        )


class ComplaintListResponse(BaseModel):
    complaints: list[ComplaintOut]


class FaqEntryOut(BaseModel):
    id: str
    question: str
    answer: str
    tags: list[str]

    @classmethod
    def from_domain(cls, entry: FaqEntry) -> "FaqEntryOut":
        return cls(id=entry.id, question=entry.question, answer=entry.answer, tags=list(entry.tags))


class FaqListResponse(BaseModel):
    entries: list[FaqEntryOut]


class SuggestionOut(BaseModel):
    entry: FaqEntryOut
    matched_text: str
    score: int

    @classmethod
    def from_domain(cls, entry: FaqEntry, suggestion: Suggestion) -> "SuggestionOut":
        return cls(
            entry=FaqEntryOut.from_domain(entry),
            matched_text=suggestion.matched_text,
            score=suggestion.score,
        )


class SearchResponse(BaseModel):
    suggestions: list[SuggestionOut]
