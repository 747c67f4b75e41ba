"""HTTP/JSON facade over the application service.

Every error response is an :class:`ApiErrorBody` with a machine code and a
human message; bodies never carry credential material or stack detail.
Bearer tokens ride in the Authorization header.
"""
from __future__ import annotations

import logging
from pathlib import Path

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..auth import AuthenticationFailed, Forbidden, Unauthorized, WeakPassword
from ..domain import (
    ClockSkew,
    DeviceCategory,
    DeviceInfo,
    Division,
    InvalidTransition,
    OrderStatus,
    Role,
    ValidationError,
)
from ..fuzzy import EmptyQuery
from ..service import NotaNotOwned, RkuService
from ..store import (
    ComplaintState,
    DuplicateEmail,
    DuplicateNota,
    ForeignKeyViolation,
    StorageFailure,
    UnknownRecord,
)
from . import schemas

log = logging.getLogger("rku.api")

LIST_CAP = 100

_ERROR_STATUS: list[tuple[type[Exception], int, str]] = [
    (ValidationError, 400, "VALIDATION"),
    (EmptyQuery, 400, "EMPTY_QUERY"),
    (WeakPassword, 400, "WEAK_PASSWORD"),
    (AuthenticationFailed, 401, "AUTH_FAILED"),
    (Unauthorized, 401, "UNAUTHORIZED"),
    (Forbidden, 403, "FORBIDDEN"),
    (UnknownRecord, 404, "NOT_FOUND"),
    (InvalidTransition, 409, "INVALID_TRANSITION"),
    (ClockSkew, 409, "CLOCK_SKEW"),
    (DuplicateEmail, 409, "DUPLICATE_EMAIL"),
    (DuplicateNota, 409, "DUPLICATE_NOTA"),
    (NotaNotOwned, 422, "NOTA_NOT_OWNED"),
    (ForeignKeyViolation, 422, "FOREIGN_KEY"),
    (StorageFailure, 500, "STORAGE_FAILURE"),
]


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    body = schemas.ApiErrorBody(code=code, message=message)
    return JSONResponse(status_code=status, content=body.model_dump())


def create_app(service: RkuService, *, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="RKU e-service", docs_url="/api/docs", openapi_url="/api/openapi.json")
    app.state.service = service

    for exc_type, status, code in _ERROR_STATUS:
        def handler(request: Request, exc: Exception, status=status, code=code) -> JSONResponse:
            return _error_response(status, code, str(exc))

        app.add_exception_handler(exc_type, handler)

    @app.exception_handler(RequestValidationError)
    def invalid_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error_response(400, "BAD_REQUEST", "malformed request body or parameters")

    @app.exception_handler(StarletteHTTPException)
    def http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = {404: "NOT_FOUND", 405: "METHOD_NOT_ALLOWED"}.get(exc.status_code, "HTTP_ERROR")
        return _error_response(exc.status_code, code, str(exc.detail))

    # -- auth plumbing ----------------------------------------------------

    def bearer_token(authorization: str | None = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise Unauthorized("missing bearer token")
        return authorization[len("Bearer ") :]

    def current_account(token: str = Depends(bearer_token)) -> tuple[str, Role]:
        return service.auth.authenticate(token)

    def require_staff(account: tuple[str, Role] = Depends(current_account)) -> tuple[str, Role]:
        if account[1] not in (Role.STAFF, Role.ADMIN):
            raise Forbidden("staff access required")
        return account

    def require_customer(account: tuple[str, Role] = Depends(current_account)) -> tuple[str, Role]:
        if account[1] is not Role.CUSTOMER:
            raise Forbidden("customer access required")
        return account

    # -- session ------------------------------------------------------------

    @app.post("/api/login", response_model=schemas.LoginResponse)
    def login(body: schemas.LoginRequest) -> schemas.LoginResponse:
        session = service.auth.login(body.email, body.password)
        customer = service.store.find_customer(session.account_id)
        return schemas.LoginResponse(
            token=session.token,
            expires_at=session.expires_at,
            role=session.role.value,
            name=service.auth.display_name(session.account_id),
            customer=schemas.CustomerOut.from_domain(customer) if customer else None,
        )

    @app.post("/api/my/password", response_model=schemas.MessageResponse)
    def change_password(
        body: schemas.PasswordChangeRequest, token: str = Depends(bearer_token)
    ) -> schemas.MessageResponse:
        service.auth.change_password(token, body.current_password, body.new_password)
        return schemas.MessageResponse(message="password changed")

    # -- customers -------------------------------------------------------------

    @app.post("/api/customers", response_model=schemas.CustomerOut, status_code=201)
    def register_customer(
        body: schemas.RegisterCustomerRequest, token: str = Depends(bearer_token)
    ) -> schemas.CustomerOut:
        customer = service.auth.register_customer(
            token, body.name, body.email, body.phone, body.password
        )
        return schemas.CustomerOut.from_domain(customer)

    # -- orders -------------------------------------------------------------------

    @app.get("/api/orders", response_model=schemas.OrderListResponse)
    def list_orders(
        account: tuple[str, Role] = Depends(require_staff)
    ) -> schemas.OrderListResponse:
        orders = service.list_orders()[:LIST_CAP]
        return schemas.OrderListResponse(orders=[schemas.OrderOut.from_domain(o) for o in orders])

    @app.post("/api/orders", response_model=schemas.OrderOut, status_code=201)
    def create_order(
        body: schemas.OrderCreateRequest,
        account: tuple[str, Role] = Depends(require_staff),
    ) -> schemas.OrderOut:
        order = service.create_order(
            customer_id=body.customer_id,
            division=Division.parse(body.division),
            device=DeviceInfo(
                category=DeviceCategory.parse(body.device.category),
                brand=body.device.brand,
                description=body.device.description,
            ),
            problem=body.problem,
            actor=account[0],
        )
        return schemas.OrderOut.from_domain(order)

    @app.get("/api/orders/{nota}", response_model=schemas.OrderOut)
    def get_order(
        nota: str, account: tuple[str, Role] = Depends(current_account)
    ) -> schemas.OrderOut:
        order = service.get_order(nota)
        if order is None:
            raise UnknownRecord(f"no such order: {nota}")
        account_id, role = account
        if role is Role.CUSTOMER and order.customer_id != account_id:
            raise Forbidden("order belongs to another customer")
        return schemas.OrderOut.from_domain(order)

    @app.post("/api/orders/{nota}/status", response_model=schemas.OrderOut)
    def advance_order(
        nota: str,
        body: schemas.TransitionRequest,
        account: tuple[str, Role] = Depends(require_staff),
    ) -> schemas.OrderOut:
        order = service.apply_status(
            nota, OrderStatus.parse(body.status), actor=account[0], note=body.note
        )
        return schemas.OrderOut.from_domain(order)

    @app.get("/api/my/orders", response_model=schemas.OrderListResponse)
    def my_orders(
        account: tuple[str, Role] = Depends(require_customer)
    ) -> schemas.OrderListResponse:
        orders = service.list_orders_for(account[0])[:LIST_CAP]
        return schemas.OrderListResponse(orders=[schemas.OrderOut.from_domain(o) for o in orders])

    # -- complaints -------------------------------------------------------------------

    @app.post("/api/complaints", response_model=schemas.ComplaintOut, status_code=201)
    def submit_complaint(
        body: schemas.ComplaintCreateRequest,
        account: tuple[str, Role] = Depends(require_customer),
    ) -> schemas.ComplaintOut:
        complaint = service.submit_complaint(account[0], body.text, body.nota)
        return schemas.ComplaintOut.from_domain(complaint)

    @app.get("/api/my/complaints", response_model=schemas.ComplaintListResponse)
    def my_complaints(
        account: tuple[str, Role] = Depends(require_customer)
    ) -> schemas.ComplaintListResponse:
        complaints = service.list_customer_complaints(account[0])[:LIST_CAP]
        return schemas.ComplaintListResponse(
            complaints=[schemas.ComplaintOut.from_domain(c) for c in complaints]
        )

    @app.get("/api/complaints", response_model=schemas.ComplaintListResponse)
    def list_complaints(
        state: str | None = Query(default=None),
        account: tuple[str, Role] = Depends(require_staff),
    ) -> schemas.ComplaintListResponse:
        parsed = ComplaintState.parse(state) if state is not None else None
        complaints = service.list_complaints(parsed)[:LIST_CAP]
        return schemas.ComplaintListResponse(
            complaints=[schemas.ComplaintOut.from_domain(c) for c in complaints]
        )

    @app.post("/api/complaints/{complaint_id}/state", response_model=schemas.ComplaintOut)
    def set_complaint_state(
        complaint_id: str,
        body: schemas.ComplaintStateRequest,
        account: tuple[str, Role] = Depends(require_staff),
    ) -> schemas.ComplaintOut:
        complaint = service.set_complaint_state(complaint_id, ComplaintState.parse(body.state))
        return schemas.ComplaintOut.from_domain(complaint)

    # -- FAQ (public) ---------------------------------------------------------------------

    @app.get("/api/faq", response_model=schemas.FaqListResponse)
    def list_faq() -> schemas.FaqListResponse:
        entries = service.list_faq()[:LIST_CAP]
        return schemas.FaqListResponse(entries=[schemas.FaqEntryOut.from_domain(e) for e in entries])

    @app.get("/api/faq/search", response_model=schemas.SearchResponse)
    def search_faq(
        q: str = Query(...),
        limit: int = Query(default=10, ge=1, le=LIST_CAP),
        max_distance: int | None = Query(default=None, ge=0),
    ) -> schemas.SearchResponse:
        matches = service.search_faq(q, limit=limit, max_distance=max_distance)
        return schemas.SearchResponse(
            suggestions=[schemas.SuggestionOut.from_domain(e, s) for e, s in matches]
        )

    @app.get("/api/health", response_model=schemas.MessageResponse)
    def health() -> schemas.MessageResponse:
        return schemas.MessageResponse(message="ok")

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="portal")

    return app
