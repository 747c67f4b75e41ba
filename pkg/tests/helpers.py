"""Shared test utilities: independent oracles, clocks and order builders."""
from __future__ import annotations

import itertools
from datetime import datetime, timedelta, timezone

from rku import domain
from rku.auth import AuthService
from rku.domain import DeviceCategory, DeviceInfo, Division, OrderStatus, ServiceOrder
from rku.notify import Notifier
from rku.service import RkuService
from rku.store import Store

T0 = datetime(2016, 5, 20, 8, 0, 0, tzinfo=timezone.utc)

# Low PBKDF2 rounds keep the suite quick; production default stays higher.
TEST_HASH_ITERATIONS = 1200


def naive_levenshtein(s: str, t: str) -> int:
    """Plain recursive edit-distance definition; the oracle the DP is checked
    against.  Deliberately independent of rku.fuzzy."""

    def rec(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if s[i - 1] == t[j - 1] else 1
        return min(rec(i - 1, j) + 1, rec(i, j - 1) + 1, rec(i - 1, j - 1) + cost)

    return rec(len(s), len(t))


def all_strings(alphabet: str, max_len: int) -> list[str]:
    out = [""]
    for n in range(1, max_len + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=n))
    return out


class FakeClock:
    def __init__(self, start: datetime = T0):
        self.now = start

    def __call__(self) -> datetime:
        return self.now

    def advance(self, **kwargs) -> datetime:
        self.now += timedelta(**kwargs)
        return self.now


def make_service(
    root,
    clock: FakeClock | None = None,
    sinks: list | None = None,
    ttl_hours: float = 24,
) -> RkuService:
    store = Store.open(root)
    auth = AuthService(
        store, ttl_hours=ttl_hours, clock=clock, iterations=TEST_HASH_ITERATIONS
    )
    return RkuService(store=store, auth=auth, notifier=Notifier(sinks or []), clock=clock)


DEVICE = DeviceInfo(
    category=DeviceCategory.PRINTER, brand="Epson", description="L310 ink tank printer"
)

# One shortest legal path from Received to every reachable status.
PATH_TO = {
    OrderStatus.RECEIVED: (),
    OrderStatus.DIAGNOSING: (OrderStatus.DIAGNOSING,),
    OrderStatus.AWAITING_PARTS: (OrderStatus.DIAGNOSING, OrderStatus.AWAITING_PARTS),
    OrderStatus.IN_REPAIR: (OrderStatus.DIAGNOSING, OrderStatus.IN_REPAIR),
    OrderStatus.COMPLETED: (
        OrderStatus.DIAGNOSING,
        OrderStatus.IN_REPAIR,
        OrderStatus.COMPLETED,
    ),
    OrderStatus.PICKED_UP: (
        OrderStatus.DIAGNOSING,
        OrderStatus.IN_REPAIR,
        OrderStatus.COMPLETED,
        OrderStatus.PICKED_UP,
    ),
    OrderStatus.CANCELLED: (OrderStatus.CANCELLED,),
}


def order_at(status: OrderStatus, nota: str = "RKU-20160520-0001") -> ServiceOrder:
    """Build an order currently sitting at ``status`` via legal transitions."""
    order = domain.new_order(
        nota, "cust-1", Division.PRINTER, DEVICE, "won't feed paper", "staff1", T0
    )
    at = T0
    for step in PATH_TO[status]:
        at = at + timedelta(hours=1)
        order = domain.transition(order, step, "staff1", None, at)
    return order


class RecordingSink:
    """Notification sink that remembers every delivered event."""

    def __init__(self):
        self.events = []

    def deliver(self, event) -> None:
        self.events.append(event)
