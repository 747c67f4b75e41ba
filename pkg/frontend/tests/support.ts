// Shared test plumbing: a scripted fetch and canned API payloads.

import type { Complaint, FaqEntry, Order, SuggestionItem } from "../src/models.js";

export interface RecordedCall {
  url: string;
  init?: RequestInit;
}

export type RouteHandler = (init?: RequestInit) => { status: number; body: unknown };

export function fakeFetch(routes: Record<string, RouteHandler>) {
  const calls: RecordedCall[] = [];
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const key = `${init?.method ?? "GET"} ${url}`;
    const handler = routes[key];
    if (!handler) {
      throw new Error(`unexpected request: ${key}`);
    }
    const { status, body } = handler(init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchImpl, calls };
}

export function authHeader(call: RecordedCall): string | undefined {
  const headers = (call.init?.headers ?? {}) as Record<string, string>;
  return headers["Authorization"];
}

export const ORDER: Order = {
  nota: "RKU-20160520-0001",
  customer_id: "cust-1",
  division: "Printer",
  device: { category: "Printer", brand: "Epson", description: "L310 ink tank" },
  problem: "paper feed jams on every print",
  status: "Diagnosing",
  history: [
    { status: "Received", at: "2016-05-20T08:00:00+00:00", actor: "staff-1", note: null },
    { status: "Diagnosing", at: "2016-05-20T09:30:00+00:00", actor: "staff-1", note: "bench 2" },
  ],
  legal_transitions: ["InRepair", "AwaitingParts", "Cancelled"],
};

export const PRINTER_FAQ: FaqEntry = {
  id: "faq-1",
  question: "Berapa lama perbaikan printer biasanya?",
  answer: "Perbaikan printer umumnya selesai dalam 1-3 hari kerja.",
  tags: ["printer"],
};

export const WARRANTY_FAQ: FaqEntry = {
  id: "faq-2",
  question: "Apakah ada garansi setelah perbaikan?",
  answer: "Garansi 30 hari untuk keluhan yang sama.",
  tags: [],
};

export const PRINTER_SUGGESTION: SuggestionItem = {
  entry: PRINTER_FAQ,
  matched_text: "printer",
  score: 1,
};

export const COMPLAINT: Complaint = {
  id: "comp-1",
  customer_id: "cust-1",
  nota: "RKU-20160520-0001",
  text: "kabel listrik belum dikembalikan",
  created_at: "2016-05-20T12:00:00+00:00",
  state: "Open",
};

export const LOGIN_OK = {
  token: "tok-123",
  expires_at: "2016-05-21T08:00:00+00:00",
  role: "Customer",
  name: "Budi Santoso",
  customer: {
    id: "cust-1",
    name: "Budi Santoso",
    email: "budi@example.com",
    phone: "0812",
    created_at: "2016-05-20T08:00:00+00:00",
  },
};
