"""Operator command line: serve the API or administer the store directly.

The CLI trusts the local operator (no tokens) but goes through the same
application layer as the HTTP API, so every domain invariant still holds
and store files come out identical for equivalent operations.

Exit codes: 0 success, 2 domain error, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from .auth import AuthError, AuthService
from .config import AppConfig, ConfigError, load_config
from .domain import DeviceCategory, DeviceInfo, Division, DomainError, OrderStatus, Role
from .notify import LogSink, Notifier, WebhookSink
from .service import NotaNotOwned, RkuService, StoreNotEmpty
from .store import ComplaintState, Store, StoreError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64

LOCK_FILE = ".lock"


class LockHeld(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 64 on usage errors, per the CLI contract."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _error_code(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).upper()


def build_service(config: AppConfig) -> RkuService:
    store = Store.open(config.store_path)
    auth = AuthService(store, ttl_hours=config.token_ttl_hours)
    sinks = [LogSink()]
    if config.webhook_url:
        sinks.append(WebhookSink(config.webhook_url))
    return RkuService(store=store, auth=auth, notifier=Notifier(sinks))


def _lock_path(config: AppConfig) -> Path:
    return config.store_path / LOCK_FILE


def _refuse_if_locked(config: AppConfig) -> None:
    path = _lock_path(config)
    if path.exists():
        holder = path.read_text(encoding="utf-8").strip() or "unknown"
        raise LockHeld(
            f"store {config.store_path} is locked by a serve process (pid {holder}); "
            f"stop it or remove {path}"
        )


@contextmanager
def _hold_lock(config: AppConfig) -> Iterator[None]:
    config.store_path.mkdir(parents=True, exist_ok=True)
    path = _lock_path(config)
    try:
        fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise LockHeld(f"store {config.store_path} is already locked ({path})") from None
    try:
        os.write(fd, str(os.getpid()).encode("ascii"))
    finally:
        os.close(fd)
    try:
        yield
    finally:
        path.unlink(missing_ok=True)


def _emit(args: argparse.Namespace, payload: dict, plain: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(plain)


# -- command handlers ---------------------------------------------------------


def _cmd_serve(args: argparse.Namespace, config: AppConfig) -> int:
    import signal

    import uvicorn

    from .api import create_app

    service = build_service(config)
    app = create_app(service, static_dir=config.static_dir)

    # uvicorn re-raises SIGTERM after its own graceful shutdown; turn that
    # into SystemExit so the lock file below is released on the way out.
    def graceful(signum, frame):
        raise SystemExit(0)

    try:
        signal.signal(signal.SIGTERM, graceful)
    except ValueError:
        pass  # not in the main thread; lock cleanup is best-effort there
    with _hold_lock(config):
        uvicorn.run(app, host=args.host, port=config.port, log_level="info")
    return EXIT_OK


def _cmd_customer_add(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    customer = service.auth.create_customer(args.name, args.email, args.phone, args.password)
    _emit(args, {"id": customer.id, "email": customer.email}, customer.id)
    return EXIT_OK


def _cmd_account_add(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    role = Role.ADMIN if args.role == "admin" else Role.STAFF
    credential = service.auth.provision_account(args.name, args.email, args.password, role)
    _emit(
        args,
        {"id": credential.account_id, "email": credential.email, "role": credential.role.value},
        credential.account_id,
    )
    return EXIT_OK


def _cmd_order_create(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    order = service.create_order(
        customer_id=args.customer_id,
        division=Division.parse(args.division),
        device=DeviceInfo(
            category=DeviceCategory.parse(args.category),
            brand=args.brand,
            description=args.desc,
        ),
        problem=args.problem,
        actor=args.actor,
    )
    _emit(args, {"nota": order.nota, "status": order.status.value}, order.nota)
    return EXIT_OK


def _cmd_order_status(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    order = service.apply_status(
        args.nota, OrderStatus.parse(args.to), actor=args.actor, note=args.note
    )
    _emit(
        args,
        {"nota": order.nota, "status": order.status.value},
        f"{order.nota} -> {order.status.value}",
    )
    return EXIT_OK


def _cmd_faq_add(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    tags = tuple(t.strip() for t in args.tags.split(",") if t.strip()) if args.tags else ()
    entry = service.add_faq(args.question, args.answer, tags)
    _emit(args, {"id": entry.id}, entry.id)
    return EXIT_OK


def _cmd_complaints_list(args: argparse.Namespace, config: AppConfig) -> int:
    service = build_service(config)
    state = ComplaintState.parse(args.state) if args.state else None
    complaints = service.list_complaints(state)
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "id": c.id,
                        "customer_id": c.customer_id,
                        "nota": c.nota,
                        "text": c.text,
                        "created_at": c.created_at.isoformat(),
                        "state": c.state.value,
                    }
                    for c in complaints
                ],
                ensure_ascii=False,
            )
        )
    else:
        for c in complaints:
            nota = c.nota or "-"
            print(f"{c.id}  {c.state.value:<12} {c.created_at.isoformat()}  {nota}  {c.text}")
    return EXIT_OK


def _cmd_seed_demo(args: argparse.Namespace, config: AppConfig) -> int:
    _refuse_if_locked(config)
    service = build_service(config)
    summary = service.seed_demo()
    _emit(
        args,
        summary,
        f"seeded {summary['customers']} customers, {summary['orders']} orders, "
        f"{summary['faq']} FAQ entries",
    )
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _build_parser() -> _Parser:
    shared = _Parser(add_help=False)
    shared.add_argument("--store", help="store directory (default: RKU_STORE_PATH or ./data)")
    shared.add_argument("--config", help="JSON config file (default: RKU_CONFIG)")
    shared.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="rku", description="RKU repair-shop e-service administration")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    serve = commands.add_parser("serve", parents=[shared], help="run the HTTP API")
    serve.add_argument("--port", type=int, help="listen port (default: RKU_PORT or 8080)")
    serve.add_argument("--host", default="127.0.0.1", help="bind address")
    serve.set_defaults(handler=_cmd_serve)

    customer = commands.add_parser("customer", help="customer accounts")
    customer_sub = customer.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    add = customer_sub.add_parser("add", parents=[shared], help="create a customer account")
    add.add_argument("--name", required=True)
    add.add_argument("--email", required=True)
    add.add_argument("--phone")
    add.add_argument("--password", required=True)
    add.set_defaults(handler=_cmd_customer_add)

    account = commands.add_parser("account", help="staff and admin accounts")
    account_sub = account.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    aadd = account_sub.add_parser("add", parents=[shared], help="create a staff or admin login")
    aadd.add_argument("--name", required=True)
    aadd.add_argument("--email", required=True)
    aadd.add_argument("--password", required=True)
    aadd.add_argument("--role", required=True, choices=["staff", "admin"])
    aadd.set_defaults(handler=_cmd_account_add)

    order = commands.add_parser("order", help="service orders")
    order_sub = order.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    create = order_sub.add_parser("create", parents=[shared], help="open a new order")
    create.add_argument("--customer-id", required=True, dest="customer_id")
    create.add_argument("--division", required=True, help="Printer, Software or Hardware")
    create.add_argument("--category", required=True, help="Computer, Printer or Accessory")
    create.add_argument("--brand", required=True)
    create.add_argument("--desc", required=True)
    create.add_argument("--problem", required=True)
    create.add_argument("--actor", default="cli", help="staff identifier recorded in history")
    create.set_defaults(handler=_cmd_order_create)
    status = order_sub.add_parser("status", parents=[shared], help="advance an order")
    status.add_argument("--nota", required=True)
    status.add_argument("--to", required=True)
    status.add_argument("--note")
    status.add_argument("--actor", default="cli", help="staff identifier recorded in history")
    status.set_defaults(handler=_cmd_order_status)

    faq = commands.add_parser("faq", help="FAQ entries")
    faq_sub = faq.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    fadd = faq_sub.add_parser("add", parents=[shared], help="add an FAQ entry")
    fadd.add_argument("--question", required=True)
    fadd.add_argument("--answer", required=True)
    fadd.add_argument("--tags", help="comma-separated tags")
    fadd.set_defaults(handler=_cmd_faq_add)

    complaints = commands.add_parser("complaints", help="customer complaints")
    complaints_sub = complaints.add_subparsers(
        dest="subcommand", required=True, metavar="subcommand"
    )
    clist = complaints_sub.add_parser("list", parents=[shared], help="list complaints, newest first")
    clist.add_argument("--state", help="Open, Acknowledged or Resolved")
    clist.set_defaults(handler=_cmd_complaints_list)

    seed = commands.add_parser("seed-demo", parents=[shared], help="load the demo dataset")
    seed.set_defaults(handler=_cmd_seed_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = load_config(
            config_file=getattr(args, "config", None),
            store_path=getattr(args, "store", None),
            port=getattr(args, "port", None),
        )
        return args.handler(args, config)
    except (DomainError, StoreError, AuthError, NotaNotOwned, StoreNotEmpty, ConfigError,
            LockHeld) as exc:
        sys.stderr.write(f"rku: error: {_error_code(exc)}: {exc}\n")
        return EXIT_DOMAIN


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))
