// Typed client over the JSON API. Sessions ride in the HTTP-only cookie;
// the login response's token field is deliberately ignored so no credential
// ever touches page script or storage.

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface Account {
  id: number;
  name: string;
  email: string;
  phone: string;
  role: "school" | "company";
  status: "verified" | "not_verified";
  created_at: string;
}

export type Me =
  | {
      kind: "user";
      id: number;
      role: "school" | "company";
      name: string;
      email: string;
      status: "verified" | "not_verified";
    }
  | { kind: "admin"; id: number };

export interface InboxEntry {
  message_id: number;
  from_name: string;
  excerpt: string;
  read_state: "unread" | "read";
  created_at: string;
}

export interface Message {
  id: number;
  from_user: number;
  to_user: number;
  body: string;
  read_state: "unread" | "read";
  created_at: string;
}

export interface Recipient {
  id: number;
  name: string;
  role: "school" | "company";
}

export interface Report {
  id: number;
  company_id: number;
  school_id: number;
  student_name: string;
  period: string;
  body: string;
  created_at: string;
}

export interface Course {
  code: string;
  title: string;
  units: number;
  level: number;
  elective: boolean;
}

export interface RegisterForm {
  name: string;
  email: string;
  phone: string;
  password: string;
  password_confirm: string;
  role: string;
}

export interface ReportFormBody {
  school_id: number;
  student_name: string;
  period: string;
  body: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly fields: Record<string, string> = {},
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly base = "",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch {
      throw new ApiError(0, "network", "cannot reach the service");
    }
    const data = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        data.code ?? "internal",
        data.message ?? "request failed",
        data.fields ?? {},
      );
    }
    return data as T;
  }

  register(form: RegisterForm): Promise<Account> {
    return this.request("POST", "/api/register", form);
  }

  async login(email: string, password: string): Promise<void> {
    await this.request("POST", "/api/login", { email, password });
  }

  async adminLogin(email: string, password: string): Promise<void> {
    await this.request("POST", "/api/admin/login", { email, password });
  }

  async logout(): Promise<void> {
    await this.request("POST", "/api/logout");
  }

  async me(): Promise<Me | null> {
    try {
      return await this.request<Me>("GET", "/api/me");
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) return null;
      throw error;
    }
  }

  pending(): Promise<Account[]> {
    return this.request("GET", "/api/admin/pending");
  }

  verify(userId: number): Promise<Account> {
    return this.request("POST", `/api/admin/verify/${userId}`);
  }

  recipients(): Promise<Recipient[]> {
    return this.request("GET", "/api/recipients");
  }

  sendMessage(toUser: number, body: string): Promise<Message> {
    return this.request("POST", "/api/messages", { to_user: toUser, body });
  }

  inbox(): Promise<InboxEntry[]> {
    return this.request("GET", "/api/messages");
  }

  openMessage(messageId: number): Promise<Message> {
    return this.request("GET", `/api/messages/${messageId}`);
  }

  async unreadCount(): Promise<number> {
    const data = await this.request<{ count: number }>("GET", "/api/messages/unread_count");
    return data.count;
  }

  submitReport(form: ReportFormBody): Promise<Report> {
    return this.request("POST", "/api/reports", form);
  }

  listReports(): Promise<Report[]> {
    return this.request("GET", "/api/reports");
  }

  courses(level?: number): Promise<Course[]> {
    const query = level === undefined ? "" : `?level=${level}`;
    return this.request("GET", `/api/courses${query}`);
  }
}

export function browserClient(): ApiClient {
  return new ApiClient((input, init) => fetch(input, { ...init, credentials: "same-origin" }));
}
