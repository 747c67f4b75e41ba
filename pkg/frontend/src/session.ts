// Session state for the logged-in account.  Cleared whenever any API call
// comes back 401, so an expired token always lands the user on the login
// screen instead of a broken page.

export interface Session {
  token: string;
  role: string;
  name: string;
}

export interface KeyValueStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const STORAGE_KEY = "rku.session";

export class SessionStore {
  private session: Session | null = null;

  constructor(private storage: KeyValueStorage | null = null) {
    if (storage) {
      const raw = storage.getItem(STORAGE_KEY);
      if (raw) {
        try {
          this.session = JSON.parse(raw) as Session;
        } catch {
          storage.removeItem(STORAGE_KEY);
        }
      }
    }
  }

  get(): Session | null {
    return this.session;
  }

  token(): string | null {
    return this.session ? this.session.token : null;
  }

  set(session: Session): void {
    this.session = session;
    this.storage?.setItem(STORAGE_KEY, JSON.stringify(session));
  }

  clear(): void {
    this.session = null;
    this.storage?.removeItem(STORAGE_KEY);
  }

  isStaff(): boolean {
    return this.session !== null && (this.session.role === "Staff" || this.session.role === "Admin");
  }
}
