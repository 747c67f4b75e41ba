// Thin typed client for the RKU JSON API.  All decisions (legal
// transitions, search scores, ownership) come from the server; the portal
// never re-derives them locally.

import type {
  Complaint,
  ComplaintList,
  CustomerInfo,
  FaqList,
  LoginResponse,
  Order,
  OrderList,
  SearchResponse,
} from "./models.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface ApiClientOptions {
  fetch?: FetchLike;
  base?: string;
  token?: () => string | null;
  onUnauthorized?: () => void;
}

export class ApiClient {
  private fetchImpl: FetchLike;
  private base: string;
  private token: () => string | null;
  private onUnauthorized: () => void;

  constructor(options: ApiClientOptions = {}) {
    this.fetchImpl = options.fetch ?? ((input, init) => fetch(input, init));
    this.base = options.base ?? "";
    this.token = options.token ?? (() => null);
    this.onUnauthorized = options.onUnauthorized ?? (() => undefined);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { Accept: "application/json" };
    const token = this.token();
    if (token) {
      headers["Authorization"] = `Bearer ${token}`;
    }
    const init: RequestInit = { method, headers };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let code = "HTTP_ERROR";
      let message = `request failed with status ${response.status}`;
      try {
        const parsed = (await response.json()) as { code?: string; message?: string };
        code = parsed.code ?? code;
        message = parsed.message ?? message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      if (response.status === 401) {
        this.onUnauthorized();
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  login(email: string, password: string): Promise<LoginResponse> {
    return this.request("POST", "/api/login", { email, password });
  }

  getOrder(nota: string): Promise<Order> {
    return this.request("GET", `/api/orders/${encodeURIComponent(nota)}`);
  }

  myOrders(): Promise<OrderList> {
    return this.request("GET", "/api/my/orders");
  }

  submitComplaint(text: string, nota: string | null): Promise<Complaint> {
    return this.request("POST", "/api/complaints", nota ? { text, nota } : { text });
  }

  myComplaints(): Promise<ComplaintList> {
    return this.request("GET", "/api/my/complaints");
  }

  listFaq(): Promise<FaqList> {
    return this.request("GET", "/api/faq");
  }

  searchFaq(query: string, limit = 8): Promise<SearchResponse> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return this.request("GET", `/api/faq/search?${params.toString()}`);
  }

  staffOrders(): Promise<OrderList> {
    return this.request("GET", "/api/orders");
  }

  advanceOrder(nota: string, status: string, note?: string): Promise<Order> {
    return this.request("POST", `/api/orders/${encodeURIComponent(nota)}/status`, {
      status,
      note: note ?? null,
    });
  }

  staffComplaints(state?: string): Promise<ComplaintList> {
    const suffix = state ? `?state=${encodeURIComponent(state)}` : "";
    return this.request("GET", `/api/complaints${suffix}`);
  }

  setComplaintState(id: string, state: string): Promise<Complaint> {
    return this.request("POST", `/api/complaints/${encodeURIComponent(id)}/state`, { state });
  }

  registerCustomer(body: {
    name: string;
    email: string;
    phone?: string;
    password: string;
  }): Promise<CustomerInfo> {
    return this.request("POST", "/api/customers", body);
  }
}
