"""Application layer: one façade over domain, store, auth and notifications.

Both the HTTP API and the admin CLI call through this module, so the two
entry points produce identical store contents for equivalent operations.
"""
from __future__ import annotations

from datetime import datetime, timedelta, timezone
from typing import Callable

from . import domain, ids
from .auth import AuthService
from .domain import (
    DeviceCategory,
    DeviceInfo,
    Division,
    OrderStatus,
    Role,
    ServiceOrder,
)
from .fuzzy import SearchCorpus, Suggestion, suggest
from .notify import NotificationEvent, Notifier
from .store import (
    Complaint,
    ComplaintState,
    FaqEntry,
    ForeignKeyViolation,
    Store,
    UnknownRecord,
)


class NotaNotOwned(Exception):
    """Complaint referenced an order the caller does not own (or none at all)."""


class StoreNotEmpty(Exception):
    """Demo seeding refused: the store already has data."""


COMPLETION_MESSAGE = "Your device for order {nota} has been repaired and is ready for pickup."


class RkuService:
    def __init__(
        self,
        store: Store,
        auth: AuthService,
        notifier: Notifier,
        clock: Callable[[], datetime] | None = None,
    ):
        self.store = store
        self.auth = auth
        self.notifier = notifier
        self.clock = clock if clock is not None else (lambda: domain.utc_now())

    # -- orders ---------------------------------------------------------------

    def create_order(
        self,
        customer_id: str,
        division: Division,
        device: DeviceInfo,
        problem: str,
        actor: str,
        now: datetime | None = None,
    ) -> ServiceOrder:
        at = now if now is not None else self.clock()
        with self.store.exclusive():
            if self.store.find_customer(customer_id) is None:
                raise ForeignKeyViolation(f"no such customer: {customer_id}")
            nota = self.store.issue_nota(at.date())
            order = domain.new_order(nota, customer_id, division, device, problem, actor, at)
            self.store.save_order(order)
        return order

    def apply_status(
        self,
        nota: str,
        to_status: OrderStatus,
        actor: str,
        note: str | None = None,
        now: datetime | None = None,
    ) -> ServiceOrder:
        """Advance an order's lifecycle; emits the completion notification
        exactly once, when (and only when) the order enters Completed."""
        at = now if now is not None else self.clock()
        with self.store.exclusive():
            order = self.store.find_order_by_nota(nota)
            if order is None:
                raise UnknownRecord(f"no such order: {nota}")
            previous = order.status
            updated = domain.transition(order, to_status, actor, note, at)
            self.store.update_order(updated)
            customer = self.store.find_customer(updated.customer_id)
        if updated.status is OrderStatus.COMPLETED and previous is not OrderStatus.COMPLETED:
            assert customer is not None
            self.notifier.emit(
                NotificationEvent(
                    nota=updated.nota,
                    customer_name=customer.name,
                    customer_email=customer.email,
                    customer_phone=customer.phone,
                    message=COMPLETION_MESSAGE.format(nota=updated.nota),
                    emitted_at=at,
                )
            )
        return updated

    def get_order(self, nota: str) -> ServiceOrder | None:
        return self.store.find_order_by_nota(nota)

    def list_orders(self) -> list[ServiceOrder]:
        return self.store.list_orders()

    def list_orders_for(self, customer_id: str) -> list[ServiceOrder]:
        return self.store.list_orders_by_customer(customer_id)

    # -- complaints -------------------------------------------------------------

    def submit_complaint(
        self,
        customer_id: str,
        text: str,
        nota: str | None = None,
        now: datetime | None = None,
    ) -> Complaint:
        at = now if now is not None else self.clock()
        with self.store.exclusive():
            if nota is not None:
                order = self.store.find_order_by_nota(nota)
                if order is None or order.customer_id != customer_id:
                    raise NotaNotOwned(f"nota not found or not owned by caller: {nota}")
            complaint = Complaint(
                id=ids.new_id(),
                customer_id=customer_id,
                nota=nota,
                text=text,
                created_at=at,
                state=ComplaintState.OPEN,
            )
            self.store.append_complaint(complaint)
        return complaint

    def list_complaints(self, state: ComplaintState | None = None) -> list[Complaint]:
        """All complaints, newest first."""
        return list(reversed(self.store.list_complaints(state)))

    def list_customer_complaints(self, customer_id: str) -> list[Complaint]:
        return [c for c in self.list_complaints() if c.customer_id == customer_id]

    def set_complaint_state(self, complaint_id: str, state: ComplaintState) -> Complaint:
        return self.store.set_complaint_state(complaint_id, state)

    # -- FAQ ----------------------------------------------------------------------

    def add_faq(self, question: str, answer: str, tags: tuple[str, ...] = ()) -> FaqEntry:
        entry = FaqEntry(id=ids.new_id(), question=question, answer=answer, tags=tags)
        self.store.upsert_faq(entry)
        return entry

    def list_faq(self) -> list[FaqEntry]:
        return self.store.list_faq()

    def search_faq(
        self, query: str, limit: int = 10, max_distance: int | None = None
    ) -> list[tuple[FaqEntry, Suggestion]]:
        entries = {e.id: e for e in self.store.list_faq()}
        corpus = SearchCorpus.build((e.id, e.question) for e in entries.values())
        found = suggest(query, corpus, limit, max_distance)
        return [(entries[s.entry_id], s) for s in found]

    # -- demo data -----------------------------------------------------------------

    def seed_demo(self) -> dict[str, int]:
        """Load the fixed demonstration dataset into an empty store."""
        snap = self.store.snapshot()
        if snap.customers or snap.orders or snap.faq or snap.credentials:
            raise StoreNotEmpty("seed-demo requires an empty store")
        return _seed_demo(self)


def _seed_demo(service: RkuService) -> dict[str, int]:
    """Fixed dataset; loaded through domain + store so nothing is notified."""
    base = datetime(2016, 5, 20, 8, 0, 0, tzinfo=timezone.utc)
    step = timedelta(hours=2)

    service.auth.provision_account(
        "Admin RKU", "admin@rku.example", "admin-rahasia", Role.ADMIN
    )
    service.auth.provision_account(
        "Staff Service", "staff@rku.example", "staff-rahasia", Role.STAFF
    )

    customers = [
        service.auth.create_customer(
            "Budi Santoso", "budi@example.com", "0812-1111-2222", "pelanggan-budi", now=base
        ),
        service.auth.create_customer(
            "Siti Aminah", "siti@example.com", "0813-3333-4444", "pelanggan-siti", now=base
        ),
        service.auth.create_customer(
            "Rudi Hartono", "rudi@example.com", None, "pelanggan-rudi", now=base
        ),
    ]

    def order(customer, division, category, brand, desc, problem, day, statuses):
        at = base + timedelta(days=day)
        nota = service.store.issue_nota(at.date())
        created = domain.new_order(
            nota,
            customer.id,
            division,
            DeviceInfo(category=category, brand=brand, description=desc),
            problem,
            "staff",
            at,
        )
        service.store.save_order(created)
        for i, status in enumerate(statuses, start=1):
            created = domain.transition(created, status, "staff", None, at + i * step)
            service.store.update_order(created)
        return created

    s = OrderStatus
    orders = [
        order(
            customers[0], Division.PRINTER, DeviceCategory.PRINTER, "Epson",
            "L310 ink tank printer", "paper feed jams on every print", 0,
            [s.DIAGNOSING, s.IN_REPAIR, s.COMPLETED],
        ),
        order(
            customers[1], Division.SOFTWARE, DeviceCategory.COMPUTER, "Asus",
            "X441 laptop", "boots into a virus-riddled desktop", 0,
            [s.DIAGNOSING],
        ),
        order(
            customers[2], Division.HARDWARE, DeviceCategory.COMPUTER, "Rakitan",
            "desktop tower", "randomly powers off under load", 0,
            [s.DIAGNOSING, s.AWAITING_PARTS],
        ),
        order(
            customers[0], Division.HARDWARE, DeviceCategory.ACCESSORY, "Logitech",
            "wireless keyboard", "several keys unresponsive", 1,
            [],
        ),
        order(
            customers[1], Division.SOFTWARE, DeviceCategory.COMPUTER, "Lenovo",
            "ThinkPad E14", "needs OS reinstall and data backup", 1,
            [s.DIAGNOSING, s.IN_REPAIR, s.COMPLETED, s.PICKED_UP],
        ),
    ]

    faq = [
        ("Berapa lama perbaikan printer biasanya?",
         "Perbaikan printer umumnya selesai dalam 1-3 hari kerja tergantung kerusakan.",
         ("printer", "durasi")),
        ("Bagaimana cara melacak status service saya?",
         "Masukkan nomor nota pada halaman service untuk melihat perkembangan perbaikan.",
         ("nota", "status")),
        ("Apakah ada garansi setelah perbaikan?",
         "Setiap perbaikan bergaransi 30 hari untuk keluhan yang sama.",
         ("garansi",)),
        ("Berapa biaya pemeriksaan awal?",
         "Pemeriksaan awal gratis; biaya perbaikan disampaikan sebelum dikerjakan.",
         ("biaya",)),
        ("Perangkat apa saja yang bisa diservis?",
         "Kami menangani komputer, printer, dan aksesoris seperti keyboard dan mouse.",
         ("perangkat",)),
        ("Bagaimana menghubungi divisi software?",
         "Divisi software dapat dihubungi melalui formulir keluhan setelah login.",
         ("software", "kontak")),
    ]
    for question, answer, tags in faq:
        service.add_faq(question, answer, tags)

    return {"customers": len(customers), "orders": len(orders), "faq": len(faq)}
