// Shapes of the JSON payloads served by the RKU API.

export interface CustomerInfo {
  id: string;
  name: string;
  email: string;
  phone: string | null;
  created_at: string;
}

export interface LoginResponse {
  token: string;
  expires_at: string;
  role: string;
  name: string;
  customer: CustomerInfo | null;
}

export interface StatusEvent {
  status: string;
  at: string;
  actor: string;
  note: string | null;
}

export interface DeviceInfo {
  category: string;
  brand: string;
  description: string;
}

export interface Order {
  nota: string;
  customer_id: string;
  division: string;
  device: DeviceInfo;
  problem: string;
  status: string;
  history: StatusEvent[];
  legal_transitions: string[];
}

export interface OrderList {
  orders: Order[];
}

export interface Complaint {
  id: string;
  customer_id: string;
  nota: string | null;
  text: string;
  created_at: string;
  state: string;
}

export interface ComplaintList {
  complaints: Complaint[];
}

export interface FaqEntry {
  id: string;
  question: string;
  answer: string;
  tags: string[];
}

export interface FaqList {
  entries: FaqEntry[];
}

export interface SuggestionItem {
  entry: FaqEntry;
  matched_text: string;
  score: number;
}

export interface SearchResponse {
  suggestions: SuggestionItem[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
