// Application logic behind the views: holds the portal state, talks to the
// API client and asks the host to re-render after every change.  Keeping
// this free of DOM access lets the whole flow run against a mock API in
// tests.

import { ApiClient, ApiError } from "./api.js";
import type { Complaint, FaqEntry, Order, SuggestionItem } from "./models.js";
import { notaFormatHint } from "./nota.js";
import { SessionStore } from "./session.js";
import { Typeahead, type Scheduler } from "./typeahead.js";
import type { Route } from "./views.js";

export interface PortalState {
  route: Route;
  loginError: string | null;
  lookup: {
    notaInput: string;
    hint: string | null;
    order: Order | null;
    notFound: string | null;
  };
  complaints: {
    complaints: Complaint[];
    text: string;
    nota: string;
    confirmation: string | null;
    error: string | null;
  };
  faq: {
    entries: FaqEntry[];
    query: string;
    suggestions: SuggestionItem[] | null;
    selected: FaqEntry | null;
  };
  staff: {
    orders: Order[];
    complaints: Complaint[];
    complaintStates: string[];
    error: string | null;
  };
}

function initialState(): PortalState {
  return {
    route: "login",
    loginError: null,
    lookup: { notaInput: "", hint: null, order: null, notFound: null },
    complaints: { complaints: [], text: "", nota: "", confirmation: null, error: null },
    faq: { entries: [], query: "", suggestions: null, selected: null },
    staff: { orders: [], complaints: [], complaintStates: [], error: null },
  };
}

// Complaint workflow states, offered as controls in the staff console.
// Presentation order only; the server validates the actual values.
const COMPLAINT_STATES = ["Open", "Acknowledged", "Resolved"];

export class PortalController {
  readonly session: SessionStore;
  readonly api: ApiClient;
  state: PortalState;
  private typeahead: Typeahead<SuggestionItem[]>;
  private renderCallback: () => void;

  constructor(options: {
    fetch?: (input: string, init?: RequestInit) => Promise<Response>;
    session?: SessionStore;
    scheduler?: Scheduler;
    onRender?: () => void;
  } = {}) {
    this.session = options.session ?? new SessionStore();
    this.renderCallback = options.onRender ?? (() => undefined);
    this.api = new ApiClient({
      fetch: options.fetch,
      token: () => this.session.token(),
      onUnauthorized: () => this.handleUnauthorized(),
    });
    this.state = initialState();
    this.typeahead = new Typeahead(
      (query) => this.api.searchFaq(query).then((response) => response.suggestions),
      (query, result) => {
        this.state.faq.query = query;
        this.state.faq.suggestions = result;
        this.render();
      },
      options.scheduler,
    );
    if (this.session.get()) {
      this.state.route = "lookup";
    }
  }

  private render(): void {
    this.renderCallback();
  }

  private handleUnauthorized(): void {
    this.session.clear();
    this.state = initialState();
    this.state.loginError = "Sesi berakhir, silakan login kembali.";
    this.render();
  }

  goto(route: Route): void {
    if (!this.session.get() && route !== "faq" && route !== "login") {
      route = "login";
    }
    this.state.route = route;
    this.render();
    if (route === "faq" && this.state.faq.entries.length === 0) {
      void this.loadFaq();
    }
    if (route === "complaints") {
      void this.refreshComplaints();
    }
    if (route === "staff") {
      void this.refreshStaff();
    }
  }

  async login(email: string, password: string): Promise<void> {
    try {
      const response = await this.api.login(email, password);
      this.session.set({ token: response.token, role: response.role, name: response.name });
      this.state.loginError = null;
      this.goto("lookup");
    } catch (error) {
      // Same generic message for every failure; no account enumeration.
      this.state.loginError = "Login gagal. Periksa email dan password Anda.";
      this.state.route = "login";
      this.render();
    }
  }

  logout(): void {
    this.session.clear();
    this.state = initialState();
    this.render();
  }

  async lookupNota(rawNota: string): Promise<void> {
    const nota = rawNota.trim();
    this.state.lookup.notaInput = nota;
    const hint = notaFormatHint(nota);
    if (hint) {
      // Malformed input never leaves the browser.
      this.state.lookup.hint = hint;
      this.state.lookup.order = null;
      this.state.lookup.notFound = null;
      this.render();
      return;
    }
    this.state.lookup.hint = null;
    try {
      this.state.lookup.order = await this.api.getOrder(nota);
      this.state.lookup.notFound = null;
    } catch (error) {
      this.state.lookup.order = null;
      if (error instanceof ApiError && error.status === 401) {
        return; // handleUnauthorized already re-rendered
      }
      this.state.lookup.notFound =
        error instanceof ApiError && error.status === 404
          ? `Nota ${nota} tidak ditemukan.`
          : "Pencarian gagal, coba lagi.";
    }
    this.render();
  }

  async refreshComplaints(): Promise<void> {
    try {
      const response = await this.api.myComplaints();
      this.state.complaints.complaints = response.complaints;
      this.render();
    } catch {
      // 401 handled globally; staff accounts simply have no history here.
    }
  }

  async submitComplaint(text: string, nota: string): Promise<void> {
    try {
      await this.api.submitComplaint(text, nota.trim() === "" ? null : nota.trim());
      this.state.complaints.text = "";
      this.state.complaints.nota = "";
      this.state.complaints.error = null;
      this.state.complaints.confirmation = "Keluhan terkirim.";
      await this.refreshComplaints();
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        return;
      }
      this.state.complaints.confirmation = null;
      this.state.complaints.text = text;
      this.state.complaints.nota = nota;
      this.state.complaints.error =
        error instanceof ApiError ? error.message : "Pengiriman gagal, coba lagi.";
      this.render();
    }
  }

  async loadFaq(): Promise<void> {
    try {
      const response = await this.api.listFaq();
      this.state.faq.entries = response.entries;
      this.render();
    } catch {
      // FAQ is public; a failure here leaves the list empty.
    }
  }

  faqInput(query: string): void {
    this.state.faq.query = query;
    this.typeahead.input(query);
  }

  selectFaq(entryId: string): void {
    const fromSuggestions = (this.state.faq.suggestions ?? []).find(
      (item) => item.entry.id === entryId,
    );
    this.state.faq.selected =
      fromSuggestions?.entry ??
      this.state.faq.entries.find((entry) => entry.id === entryId) ??
      null;
    this.render();
  }

  async refreshStaff(): Promise<void> {
    try {
      const [orders, complaints] = await Promise.all([
        this.api.staffOrders(),
        this.api.staffComplaints(),
      ]);
      this.state.staff.orders = orders.orders;
      this.state.staff.complaints = complaints.complaints;
      this.state.staff.complaintStates = COMPLAINT_STATES;
      this.render();
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        return;
      }
      this.state.staff.error =
        error instanceof ApiError ? error.message : "Gagal memuat konsol.";
      this.render();
    }
  }

  async advanceOrder(nota: string, status: string): Promise<void> {
    try {
      await this.api.advanceOrder(nota, status);
      this.state.staff.error = null;
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        return;
      }
      this.state.staff.error = error instanceof ApiError ? error.message : "Transisi gagal.";
    }
    await this.refreshStaff();
  }

  async setComplaintState(id: string, state: string): Promise<void> {
    try {
      await this.api.setComplaintState(id, state);
      this.state.staff.error = null;
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        return;
      }
      this.state.staff.error = error instanceof ApiError ? error.message : "Perubahan gagal.";
    }
    await this.refreshStaff();
  }
}
