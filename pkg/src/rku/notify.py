"""Completion notifications, replacing phone confirmation calls.

Sinks must never fail the request that triggered the event: delivery
errors are logged and swallowed.  The webhook sink retries three times
with exponential backoff before giving up.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Protocol

import httpx

log = logging.getLogger("rku.notify")

WEBHOOK_BACKOFF_SECONDS = (1.0, 2.0, 4.0)
WEBHOOK_TIMEOUT_SECONDS = 5.0


@dataclass(frozen=True)
class NotificationEvent:
    """Emitted exactly once when an order transitions into Completed."""

    nota: str
    customer_name: str
    customer_email: str
    customer_phone: str | None
    message: str
    emitted_at: datetime

    def to_json(self) -> dict:
        return {
            "nota": self.nota,
            "customer_name": self.customer_name,
            "customer_email": self.customer_email,
            "customer_phone": self.customer_phone,
            "message": self.message,
            "emitted_at": self.emitted_at.astimezone(timezone.utc)
            .replace(microsecond=0)
            .isoformat(),
        }


class NotificationSink(Protocol):
    def deliver(self, event: NotificationEvent) -> None: ...


class LogSink:
    """One line per event to standard output."""

    def deliver(self, event: NotificationEvent) -> None:
        phone = event.customer_phone or "-"
        at = event.emitted_at.astimezone(timezone.utc).replace(microsecond=0).isoformat()
        print(
            f"NOTIFY nota={event.nota} customer={event.customer_name!r} "
            f"email={event.customer_email} phone={phone} at={at} "
            f"message={event.message!r}",
            flush=True,
        )


class WebhookSink:
    """POST the event JSON to a configured URL; 3 retries, backoff 1s/2s/4s."""

    def __init__(
        self,
        url: str,
        *,
        client: httpx.Client | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.url = url
        self._client = client if client is not None else httpx.Client(
            timeout=WEBHOOK_TIMEOUT_SECONDS
        )
        self._sleep = sleep

    def deliver(self, event: NotificationEvent) -> None:
        payload = event.to_json()
        attempts = 1 + len(WEBHOOK_BACKOFF_SECONDS)
        for attempt in range(attempts):
            try:
                response = self._client.post(self.url, json=payload)
                if 200 <= response.status_code < 300:
                    return
                failure = f"HTTP {response.status_code}"
            except httpx.HTTPError as exc:
                failure = str(exc)
            if attempt < len(WEBHOOK_BACKOFF_SECONDS):
                self._sleep(WEBHOOK_BACKOFF_SECONDS[attempt])
            else:
                log.error(
                    "webhook delivery for nota %s to %s failed after %d attempts: %s",
                    event.nota,
                    self.url,
                    attempts,
                    failure,
                )


class Notifier:
    """Fan an event out to every configured sink.

    Events are counted even when no sink is configured, and a failing sink
    never propagates into the caller.
    """

    def __init__(self, sinks: list[NotificationSink] | None = None):
        self.sinks: list[NotificationSink] = list(sinks) if sinks else []
        self.emitted_total = 0

    def emit(self, event: NotificationEvent) -> None:
        self.emitted_total += 1
        for sink in self.sinks:
            try:
                sink.deliver(event)
            except Exception:
                log.exception("notification sink %r failed for nota %s", sink, event.nota)
