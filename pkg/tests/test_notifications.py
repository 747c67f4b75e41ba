"""Notification sink tests: log line format, webhook retries, isolation."""
import logging

import httpx

from helpers import T0, RecordingSink
from rku.notify import LogSink, NotificationEvent, Notifier, WebhookSink

EVENT = NotificationEvent(
    nota="RKU-20160520-0001",
    customer_name="Budi Santoso",
    customer_email="budi@example.com",
    customer_phone="0812-1111",
    message="Your device for order RKU-20160520-0001 has been repaired and is ready for pickup.",
    emitted_at=T0,
)


class TestLogSink:
    def test_one_line_to_stdout(self, capsys):
        LogSink().deliver(EVENT)
        out = capsys.readouterr().out
        lines = [line for line in out.splitlines() if line]
        assert len(lines) == 1
        assert lines[0].startswith("NOTIFY nota=RKU-20160520-0001")
        assert "budi@example.com" in lines[0]
        assert "ready for pickup" in lines[0]

    def test_missing_phone_renders_dash(self, capsys):
        event = NotificationEvent(
            nota="RKU-20160520-0002",
            customer_name="Siti",
            customer_email="siti@example.com",
            customer_phone=None,
            message="done",
            emitted_at=T0,
        )
        LogSink().deliver(event)
        assert "phone=-" in capsys.readouterr().out


def webhook_with(responses):
    """WebhookSink backed by a scripted transport; returns (sink, requests, sleeps).

    The script must hold exactly one status code or exception per expected
    attempt."""
    requests = []
    sleeps = []
    script = list(responses)

    def respond(request: httpx.Request) -> httpx.Response:
        requests.append(request)
        action = script.pop(0)
        if isinstance(action, Exception):
            raise action
        return httpx.Response(action)

    client = httpx.Client(transport=httpx.MockTransport(respond))
    sink = WebhookSink("http://hook.example/notify", client=client, sleep=sleeps.append)
    return sink, requests, sleeps


class TestWebhookSink:
    def test_delivers_once_on_success(self):
        sink, requests, sleeps = webhook_with([200])
        sink.deliver(EVENT)
        assert len(requests) == 1
        assert sleeps == []

    def test_payload_is_event_json(self):
        sink, requests, _ = webhook_with([200])
        sink.deliver(EVENT)
        import json

        body = json.loads(requests[0].content)
        assert body["nota"] == "RKU-20160520-0001"
        assert body["customer_email"] == "budi@example.com"
        assert body["emitted_at"] == "2016-05-20T08:00:00+00:00"

    def test_retries_then_succeeds(self):
        sink, requests, sleeps = webhook_with([500, 503, 200])
        sink.deliver(EVENT)
        assert len(requests) == 3
        assert sleeps == [1.0, 2.0]

    def test_gives_up_after_three_retries(self, caplog):
        sink, requests, sleeps = webhook_with([500, 500, 500, 500])
        with caplog.at_level(logging.ERROR, logger="rku.notify"):
            sink.deliver(EVENT)
        assert len(requests) == 4
        assert sleeps == [1.0, 2.0, 4.0]
        assert any("failed after 4 attempts" in r.message for r in caplog.records)

    def test_connection_errors_also_retry(self, caplog):
        boom = httpx.ConnectError("connection refused")
        sink, requests, sleeps = webhook_with([boom, boom, boom, boom])
        with caplog.at_level(logging.ERROR, logger="rku.notify"):
            sink.deliver(EVENT)  # must not raise
        assert len(requests) == 4
        assert sleeps == [1.0, 2.0, 4.0]


class TestNotifier:
    def test_counts_events_without_sinks(self):
        notifier = Notifier([])
        notifier.emit(EVENT)
        notifier.emit(EVENT)
        assert notifier.emitted_total == 2

    def test_failing_sink_never_propagates(self, caplog):
        class Exploding:
            def deliver(self, event):
                raise RuntimeError("sink on fire")

        recorder = RecordingSink()
        notifier = Notifier([Exploding(), recorder])
        with caplog.at_level(logging.ERROR, logger="rku.notify"):
            notifier.emit(EVENT)
        assert notifier.emitted_total == 1
        assert recorder.events == [EVENT]
