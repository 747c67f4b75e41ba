// Pure render functions: application state in, HTML string out.  Nothing
// here knows the lifecycle table or the search algorithm; status names,
// timelines and action buttons render exactly what the API returned.

import type { Complaint, FaqEntry, Order, SuggestionItem } from "./models.js";
import type { Session } from "./session.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function slug(text: string): string {
  return text.toLowerCase().replace(/[^a-z0-9]+/g, "-");
}

function formatWhen(iso: string): string {
  return iso.replace("T", " ").replace("+00:00", " UTC").replace("Z", " UTC");
}

export function renderLogin(error: string | null): string {
  return `
  <section class="card login">
    <h2>Masuk</h2>
    <form data-action="login">
      <label>Email <input name="email" type="email" required autocomplete="username"></label>
      <label>Password <input name="password" type="password" required autocomplete="current-password"></label>
      ${error ? `<p class="error" data-role="login-error">${escapeHtml(error)}</p>` : ""}
      <button type="submit">Login</button>
    </form>
  </section>`;
}

export interface LookupState {
  notaInput: string;
  hint: string | null;
  order: Order | null;
  notFound: string | null;
}

export function renderTimeline(order: Order): string {
  const events = order.history
    .map(
      (event) => `
      <li class="timeline-event status-${slug(event.status)}">
        <span class="event-status">${escapeHtml(event.status)}</span>
        <span class="event-at">${escapeHtml(formatWhen(event.at))}</span>
        ${event.note ? `<span class="event-note">${escapeHtml(event.note)}</span>` : ""}
      </li>`,
    )
    .join("");
  return `
  <article class="order" data-nota="${escapeHtml(order.nota)}">
    <h3>${escapeHtml(order.nota)}</h3>
    <p class="device">${escapeHtml(order.device.brand)} — ${escapeHtml(order.device.description)}</p>
    <p class="problem">${escapeHtml(order.problem)}</p>
    <p class="current">Status: <strong class="status-${slug(order.status)}">${escapeHtml(order.status)}</strong></p>
    <ol class="timeline">${events}</ol>
  </article>`;
}

export function renderLookup(state: LookupState): string {
  const hint = state.hint
    ? `<p class="hint" data-role="nota-hint">${escapeHtml(state.hint)}</p>`
    : "";
  const notFound = state.notFound
    ? `<p class="error" data-role="not-found">${escapeHtml(state.notFound)}</p>`
    : "";
  return `
  <section class="card lookup">
    <h2>Lacak Service</h2>
    <form data-action="lookup">
      <input name="nota" placeholder="RKU-20160520-0001" value="${escapeHtml(state.notaInput)}">
      <button type="submit">Cari</button>
    </form>
    ${hint}
    ${notFound}
    ${state.order ? renderTimeline(state.order) : ""}
  </section>`;
}

export interface ComplaintsState {
  complaints: Complaint[];
  text: string;
  nota: string;
  confirmation: string | null;
  error: string | null;
}

export function renderComplaints(state: ComplaintsState): string {
  const rows = state.complaints
    .map(
      (complaint) => `
      <li class="complaint state-${slug(complaint.state)}">
        <span class="complaint-state">${escapeHtml(complaint.state)}</span>
        <span class="complaint-at">${escapeHtml(formatWhen(complaint.created_at))}</span>
        ${complaint.nota ? `<span class="complaint-nota">${escapeHtml(complaint.nota)}</span>` : ""}
        <p>${escapeHtml(complaint.text)}</p>
      </li>`,
    )
    .join("");
  return `
  <section class="card complaints">
    <h2>Keluhan</h2>
    <form data-action="complain">
      <textarea name="text" placeholder="Tuliskan keluhan Anda" required>${escapeHtml(state.text)}</textarea>
      <input name="nota" placeholder="Nota terkait (opsional)" value="${escapeHtml(state.nota)}">
      ${state.error ? `<p class="error">${escapeHtml(state.error)}</p>` : ""}
      ${state.confirmation ? `<p class="ok" data-role="complaint-ok">${escapeHtml(state.confirmation)}</p>` : ""}
      <button type="submit">Kirim</button>
    </form>
    <ul class="complaint-list">${rows}</ul>
  </section>`;
}

export interface FaqState {
  entries: FaqEntry[];
  query: string;
  suggestions: SuggestionItem[] | null;
  selected: FaqEntry | null;
}

export function renderFaq(state: FaqState): string {
  let results: string;
  if (state.suggestions === null) {
    results = `<ul class="faq-list">${state.entries
      .map(
        (entry) =>
          `<li><button class="linklike" data-action="faq-select" data-id="${escapeHtml(entry.id)}">${escapeHtml(entry.question)}</button></li>`,
      )
      .join("")}</ul>`;
  } else if (state.suggestions.length === 0) {
    results = `<p class="muted" data-role="no-suggestions">Tidak ada saran untuk pencarian ini.</p>`;
  } else {
    results = `<ul class="suggestions">${state.suggestions
      .map(
        (item) => `
        <li>
          <button class="linklike" data-action="faq-select" data-id="${escapeHtml(item.entry.id)}">
            ${escapeHtml(item.entry.question)}
          </button>
          <span class="match">cocok: ${escapeHtml(item.matched_text)} (jarak ${item.score})</span>
        </li>`,
      )
      .join("")}</ul>`;
  }
  const answer = state.selected
    ? `<article class="faq-answer" data-role="faq-answer">
        <h3>${escapeHtml(state.selected.question)}</h3>
        <p>${escapeHtml(state.selected.answer)}</p>
      </article>`
    : "";
  return `
  <section class="card faq">
    <h2>FAQ</h2>
    <input name="faq-query" data-action="faq-search" placeholder="Cari pertanyaan"
           value="${escapeHtml(state.query)}">
    ${results}
    ${answer}
  </section>`;
}

export interface StaffState {
  orders: Order[];
  complaints: Complaint[];
  complaintStates: string[];
  error: string | null;
}

export function renderStaffConsole(state: StaffState): string {
  const orderRows = state.orders
    .map((order) => {
      const actions = order.legal_transitions
        .map(
          (target) =>
            `<button data-action="advance" data-nota="${escapeHtml(order.nota)}" data-to="${escapeHtml(target)}">${escapeHtml(target)}</button>`,
        )
        .join(" ");
      return `
      <tr data-nota="${escapeHtml(order.nota)}">
        <td>${escapeHtml(order.nota)}</td>
        <td>${escapeHtml(order.division)}</td>
        <td>${escapeHtml(order.device.brand)}</td>
        <td class="status-${slug(order.status)}">${escapeHtml(order.status)}</td>
        <td class="actions">${actions || "<em>final</em>"}</td>
      </tr>`;
    })
    .join("");
  const complaintRows = state.complaints
    .map((complaint) => {
      const controls = state.complaintStates
        .filter((candidate) => candidate !== complaint.state)
        .map(
          (candidate) =>
            `<button data-action="complaint-state" data-id="${escapeHtml(complaint.id)}" data-state="${escapeHtml(candidate)}">${escapeHtml(candidate)}</button>`,
        )
        .join(" ");
      return `
      <li class="complaint state-${slug(complaint.state)}">
        <span>${escapeHtml(complaint.state)}</span>
        ${complaint.nota ? `<span>${escapeHtml(complaint.nota)}</span>` : ""}
        <p>${escapeHtml(complaint.text)}</p>
        <span class="controls">${controls}</span>
      </li>`;
    })
    .join("");
  return `
  <section class="card staff">
    <h2>Konsol Staff</h2>
    ${state.error ? `<p class="error">${escapeHtml(state.error)}</p>` : ""}
    <table class="orders">
      <thead><tr><th>Nota</th><th>Divisi</th><th>Merek</th><th>Status</th><th>Aksi</th></tr></thead>
      <tbody>${orderRows}</tbody>
    </table>
    <h3>Antrian Keluhan</h3>
    <ul class="complaint-queue">${complaintRows}</ul>
  </section>`;
}

export type Route = "login" | "lookup" | "complaints" | "faq" | "staff";

export function renderShell(session: Session | null, route: Route, inner: string): string {
  const isStaff = session !== null && (session.role === "Staff" || session.role === "Admin");
  const links: Array<[Route, string]> = [];
  if (session) {
    links.push(["lookup", "Lacak"], ["complaints", "Keluhan"]);
  }
  links.push(["faq", "FAQ"]);
  if (isStaff) {
    links.push(["staff", "Konsol"]);
  }
  const nav = links
    .map(
      ([target, label]) =>
        `<a href="#${target}" class="${route === target ? "active" : ""}">${label}</a>`,
    )
    .join("");
  const who = session
    ? `<span class="who">${escapeHtml(session.name)} · ${escapeHtml(session.role)}</span>
       <button class="linklike" data-action="logout">Keluar</button>`
    : "";
  return `
  <header>
    <h1>RKU e-Service</h1>
    <nav>${nav}</nav>
    <div class="session">${who}</div>
  </header>
  <main>${inner}</main>`;
}
