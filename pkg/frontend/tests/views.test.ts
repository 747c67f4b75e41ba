import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderFaq,
  renderLogin,
  renderLookup,
  renderShell,
  renderStaffConsole,
  renderTimeline,
} from "../src/views.js";
import { COMPLAINT, ORDER, PRINTER_FAQ, PRINTER_SUGGESTION, WARRANTY_FAQ } from "./support.js";

describe("renderTimeline", () => {
  it("renders events in exactly the API's history order", () => {
    const html = renderTimeline(ORDER);
    const timeline = html.slice(html.indexOf('<ol class="timeline">'));
    const received = timeline.indexOf("Received");
    const diagnosing = timeline.indexOf("Diagnosing");
    expect(received).toBeGreaterThan(-1);
    expect(diagnosing).toBeGreaterThan(received);
    expect(html).toContain("bench 2");
    expect(html).toContain("RKU-20160520-0001");
  });

  it("escapes user-controlled text", () => {
    const hostile = {
      ...ORDER,
      problem: '<img src=x onerror="alert(1)">',
    };
    const html = renderTimeline(hostile);
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;img");
  });
});

describe("renderLookup", () => {
  it("shows the format hint before any request", () => {
    const html = renderLookup({ notaInput: "RKU-123", hint: "Nota numbers look like RKU-20160520-0001", order: null, notFound: null });
    expect(html).toContain('data-role="nota-hint"');
    expect(html).toContain("Cari");
  });

  it("shows the not-found message", () => {
    const html = renderLookup({ notaInput: "RKU-20160520-0099", hint: null, order: null, notFound: "Nota RKU-20160520-0099 tidak ditemukan." });
    expect(html).toContain('data-role="not-found"');
  });

  it("renders the timeline when an order is present", () => {
    const html = renderLookup({ notaInput: ORDER.nota, hint: null, order: ORDER, notFound: null });
    expect(html).toContain('class="timeline"');
  });
});

describe("renderLogin", () => {
  it("shows an inline error after a failed attempt", () => {
    expect(renderLogin(null)).not.toContain('data-role="login-error"');
    const failed = renderLogin("Login gagal. Periksa email dan password Anda.");
    expect(failed).toContain('data-role="login-error"');
    expect(failed).toContain("Login gagal");
  });
});

describe("renderFaq", () => {
  it("null suggestions mean: show the full FAQ list", () => {
    const html = renderFaq({ entries: [PRINTER_FAQ, WARRANTY_FAQ], query: "", suggestions: null, selected: null });
    expect(html).toContain(PRINTER_FAQ.question);
    expect(html).toContain(WARRANTY_FAQ.question);
  });

  it("renders the suggestion list with match and distance", () => {
    const html = renderFaq({ entries: [], query: "printr", suggestions: [PRINTER_SUGGESTION], selected: null });
    expect(html).toContain(PRINTER_FAQ.question);
    expect(html).toContain("printer");
    expect(html).toContain("jarak 1");
  });

  it("empty suggestions show the no-match state", () => {
    const html = renderFaq({ entries: [PRINTER_FAQ], query: "zzzzzz", suggestions: [], selected: null });
    expect(html).toContain('data-role="no-suggestions"');
    expect(html).not.toContain(PRINTER_FAQ.question);
  });

  it("selecting a suggestion reveals the answer", () => {
    const html = renderFaq({ entries: [], query: "printr", suggestions: [PRINTER_SUGGESTION], selected: PRINTER_FAQ });
    expect(html).toContain('data-role="faq-answer"');
    expect(html).toContain(PRINTER_FAQ.answer);
  });
});

describe("renderStaffConsole", () => {
  it("offers exactly the API-provided legal transitions as actions", () => {
    const html = renderStaffConsole({
      orders: [ORDER],
      complaints: [],
      complaintStates: [],
      error: null,
    });
    const buttons = [...html.matchAll(/data-action="advance"[^>]*data-to="([^"]+)"/g)].map(
      (m) => m[1],
    );
    expect(buttons).toEqual(ORDER.legal_transitions);
  });

  it("an order without successors gets no action buttons", () => {
    const closed = { ...ORDER, status: "PickedUp", legal_transitions: [] };
    const html = renderStaffConsole({
      orders: [closed],
      complaints: [],
      complaintStates: [],
      error: null,
    });
    expect(html).not.toContain('data-action="advance"');
    expect(html).toContain("final");
  });

  it("complaint controls offer the other workflow states", () => {
    const html = renderStaffConsole({
      orders: [],
      complaints: [COMPLAINT],
      complaintStates: ["Open", "Acknowledged", "Resolved"],
      error: null,
    });
    const buttons = [...html.matchAll(/data-action="complaint-state"[^>]*data-state="([^"]+)"/g)].map(
      (m) => m[1],
    );
    expect(buttons).toEqual(["Acknowledged", "Resolved"]);
  });
});

describe("renderShell", () => {
  it("hides staff navigation from customers", () => {
    const customer = renderShell({ token: "t", role: "Customer", name: "Budi" }, "lookup", "");
    expect(customer).not.toContain("#staff");
    const staff = renderShell({ token: "t", role: "Staff", name: "S" }, "lookup", "");
    expect(staff).toContain("#staff");
    const admin = renderShell({ token: "t", role: "Admin", name: "A" }, "lookup", "");
    expect(admin).toContain("#staff");
  });

  it("anonymous visitors only see the FAQ", () => {
    const html = renderShell(null, "faq", "");
    expect(html).toContain("#faq");
    expect(html).not.toContain("#lookup");
    expect(html).not.toContain("#staff");
  });
});

describe("escapeHtml", () => {
  it("escapes the five significant characters", () => {
    expect(escapeHtml(`<a href="x">&'`)).toBe("&lt;a href=&quot;x&quot;&gt;&amp;&#39;");
  });
});
