// Single-page client over the JSON API: hash routing, role-aware
// navigation, inbox badge, and the register/login/messaging/report pages.

import {
  ApiClient,
  ApiError,
  type Course,
  type Me,
  type Recipient,
} from "./api.js";

export interface HashNav {
  get(): string;
  set(hash: string): void;
  onChange(listener: () => void): void;
}

type Banner = { kind: "success" | "error"; text: string };

type Route =
  | { page: "home" }
  | { page: "login" }
  | { page: "register" }
  | { page: "inbox" }
  | { page: "message"; id: number }
  | { page: "compose" }
  | { page: "send-report" }
  | { page: "reports" }
  | { page: "admin" }
  | { page: "curriculum" };

const FIELD_REASONS: Record<string, string> = {
  empty: "required",
  invalid: "not valid",
  too_long: "too long",
  too_short: "too short",
  mismatch: "passwords do not match",
};

export function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function formatTimestamp(rfc3339: string): string {
  return new Date(rfc3339).toLocaleString();
}

export function parseRoute(hash: string): Route {
  const path = hash.replace(/^#\/?/, "");
  const message = path.match(/^messages\/(\d+)$/);
  if (message) return { page: "message", id: Number(message[1]) };
  switch (path) {
    case "login":
      return { page: "login" };
    case "register":
      return { page: "register" };
    case "inbox":
      return { page: "inbox" };
    case "compose":
      return { page: "compose" };
    case "send-report":
      return { page: "send-report" };
    case "reports":
      return { page: "reports" };
    case "admin":
      return { page: "admin" };
    case "curriculum":
      return { page: "curriculum" };
    default:
      return { page: "home" };
  }
}

/** Navigation targets a principal is actually allowed to visit. */
export function navEntries(me: Me | null): { hash: string; label: string }[] {
  if (me === null) {
    return [
      { hash: "#/login", label: "Login" },
      { hash: "#/register", label: "Register" },
    ];
  }
  if (me.kind === "admin") {
    return [
      { hash: "#/admin", label: "Pending accounts" },
      { hash: "#/curriculum", label: "Curriculum" },
    ];
  }
  const entries = [
    { hash: "#/inbox", label: "Inbox" },
    { hash: "#/compose", label: "Send message" },
  ];
  if (me.role === "company") {
    entries.push({ hash: "#/send-report", label: "Send report" });
  } else {
    entries.push({ hash: "#/reports", label: "View reports" });
  }
  entries.push({ hash: "#/curriculum", label: "Curriculum" });
  return entries;
}

export class App {
  private me: Me | null = null;
  private banner: Banner | null = null;
  private unread = 0;
  private epoch = 0;
  private inflight = 0;
  private waiters: (() => void)[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly nav: HashNav,
  ) {
    nav.onChange(() => void this.run(() => this.route()));
  }

  start(): Promise<void> {
    return this.run(() => this.route());
  }

  /** Resolves once every in-flight navigation and handler has finished. */
  settled(): Promise<void> {
    if (this.inflight === 0) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  private async run(task: () => Promise<void>): Promise<void> {
    this.inflight += 1;
    try {
      await task();
    } finally {
      this.inflight -= 1;
      if (this.inflight === 0) this.waiters.splice(0).forEach((wake) => wake());
    }
  }

  private async route(): Promise<void> {
    const stamp = ++this.epoch;
    let me: Me | null = null;
    try {
      me = await this.api.me();
    } catch {
      if (stamp === this.epoch) this.renderShell("<p class='empty'>Service unreachable. Reload to retry.</p>");
      return;
    }
    if (stamp !== this.epoch) return;
    this.me = me;
    if (me?.kind === "user") {
      this.unread = await this.api.unreadCount().catch(() => 0);
      if (stamp !== this.epoch) return;
    } else {
      this.unread = 0;
    }

    const route = parseRoute(this.nav.get());
    const redirect = this.gate(route);
    if (redirect !== null) {
      this.nav.set(redirect);
      return;
    }

    switch (route.page) {
      case "login":
        return this.renderLogin();
      case "register":
        return this.renderRegister();
      case "inbox":
        return this.renderInbox(stamp);
      case "message":
        return this.renderMessageDetail(stamp, route.id);
      case "compose":
        return this.renderCompose(stamp);
      case "send-report":
        return this.renderSendReport(stamp);
      case "reports":
        return this.renderViewReports(stamp);
      case "admin":
        return this.renderAdminPending(stamp);
      case "curriculum":
        return this.renderCurriculum(stamp, undefined);
      case "home":
        this.nav.set(this.homeHash());
        return;
    }
  }

  private homeHash(): string {
    if (this.me === null) return "#/login";
    return this.me.kind === "admin" ? "#/admin" : "#/inbox";
  }

  /** Returns a redirect target when the route is not allowed, else null. */
  private gate(route: Route): string | null {
    const me = this.me;
    switch (route.page) {
      case "home":
        return null;
      case "login":
      case "register":
        return me === null ? null : this.homeHash();
      case "inbox":
      case "message":
      case "compose":
        return me?.kind === "user" ? null : this.homeHash();
      case "send-report":
        return me?.kind === "user" && me.role === "company" ? null : this.homeHash();
      case "reports":
        return me?.kind === "user" && me.role === "school" ? null : this.homeHash();
      case "admin":
        return me?.kind === "admin" ? null : this.homeHash();
      case "curriculum":
        return me === null ? "#/login" : null;
    }
  }

  // -- chrome ----------------------------------------------------------------

  private renderShell(main: string): void {
    const me = this.me;
    const links = navEntries(me)
      .map((entry) => {
        const badge =
          entry.hash === "#/inbox" && this.unread > 0
            ? ` <span class="badge" data-testid="unread-badge">${this.unread}</span>`
            : "";
        return `<a href="${entry.hash}" data-nav="${entry.hash.slice(2)}">${entry.label}${badge}</a>`;
      })
      .join("");
    const who =
      me === null
        ? ""
        : me.kind === "admin"
          ? `<span class="who">administrator</span><button type="button" data-action="logout">Log out</button>`
          : `<span class="who">${esc(me.name)} (${me.role})</span><button type="button" data-action="logout">Log out</button>`;
    const pendingNote =
      me?.kind === "user" && me.status === "not_verified"
        ? `<div class="notice">Your account is awaiting administrator verification; messaging stays disabled until then.</div>`
        : "";
    const banner = this.banner
      ? `<div class="banner ${this.banner.kind}" data-testid="banner">${esc(this.banner.text)}</div>`
      : "";
    this.banner = null;

    this.root.innerHTML = `
      <header>
        <span class="brand">Industry Curriculum Liaison</span>
        <nav>${links}</nav>
        <div class="session">${who}</div>
      </header>
      ${pendingNote}
      ${banner}
      <main>${main}</main>`;

    this.root.querySelectorAll("a[data-nav]").forEach((anchor) => {
      anchor.addEventListener("click", (event) => {
        event.preventDefault();
        this.nav.set(anchor.getAttribute("href") ?? "#/");
      });
    });
    const logout = this.root.querySelector("[data-action=logout]");
    logout?.addEventListener("click", () =>
      void this.run(async () => {
        await this.api.logout().catch(() => undefined);
        this.banner = { kind: "success", text: "Signed out." };
        this.nav.set("#/login");
      }),
    );
  }

  private showFieldErrors(fields: Record<string, string>): void {
    for (const [field, reason] of Object.entries(fields)) {
      const slot = this.root.querySelector(`[data-error-for="${field}"]`);
      if (slot) slot.textContent = FIELD_REASONS[reason] ?? reason;
    }
  }

  private clearFieldErrors(): void {
    this.root.querySelectorAll("[data-error-for]").forEach((slot) => {
      slot.textContent = "";
    });
  }

  private value(name: string): string {
    const input = this.root.querySelector(`[name="${name}"]`) as
      | HTMLInputElement
      | HTMLSelectElement
      | HTMLTextAreaElement
      | null;
    return input?.value ?? "";
  }

  // -- pages -------------------------------------------------------------------

  private renderLogin(): void {
    this.renderShell(`
      <section class="card">
        <h1>Login</h1>
        <form data-form="login" novalidate>
          <label>Email Address
            <input name="email" type="email" autocomplete="email">
          </label>
          <label>Password
            <input name="password" type="password" autocomplete="current-password">
          </label>
          <label class="inline">
            <input name="as_admin" type="checkbox"> Sign in as administrator
          </label>
          <button type="submit">Login</button>
        </form>
        <p>No account yet? <a href="#/register" data-nav="register-link">Register</a></p>
      </section>`);
    this.root.querySelector("[data-nav=register-link]")?.addEventListener("click", (event) => {
      event.preventDefault();
      this.nav.set("#/register");
    });
    const form = this.root.querySelector("[data-form=login]") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run(async () => {
        const asAdmin = (form.querySelector("[name=as_admin]") as HTMLInputElement).checked;
        try {
          if (asAdmin) {
            await this.api.adminLogin(this.value("email"), this.value("password"));
          } else {
            await this.api.login(this.value("email"), this.value("password"));
          }
          this.nav.set("#/");
        } catch (error) {
          this.banner = {
            kind: "error",
            text: error instanceof ApiError ? error.message : "cannot reach the service",
          };
          this.renderLogin();
        }
      });
    });
  }

  private renderRegister(): void {
    this.renderShell(`
      <section class="card">
        <h1>Register</h1>
        <form data-form="register" novalidate>
          <label>Full Name / Company Name
            <input name="name"><span class="field-error" data-error-for="name"></span>
          </label>
          <label>Email Address
            <input name="email" type="email"><span class="field-error" data-error-for="email"></span>
          </label>
          <label>Phone Number
            <input name="phone"><span class="field-error" data-error-for="phone"></span>
          </label>
          <label>Choose Password
            <input name="password" type="password"><span class="field-error" data-error-for="password"></span>
          </label>
          <label>Confirm password
            <input name="password_confirm" type="password"><span class="field-error" data-error-for="password_confirm"></span>
          </label>
          <label>Select
            <select name="role">
              <option value="">Select</option>
              <option value="S">School</option>
              <option value="C">Company</option>
            </select>
            <span class="field-error" data-error-for="role"></span>
          </label>
          <button type="submit">Submit</button>
        </form>
      </section>`);
    const form = this.root.querySelector("[data-form=register]") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run(async () => {
        this.clearFieldErrors();
        const password = this.value("password");
        const confirm = this.value("password_confirm");
        if (password !== confirm) {
          // no round trip needed to know these differ
          this.showFieldErrors({ password_confirm: "mismatch" });
          return;
        }
        try {
          await this.api.register({
            name: this.value("name"),
            email: this.value("email"),
            phone: this.value("phone"),
            password,
            password_confirm: confirm,
            role: this.value("role"),
          });
          this.banner = {
            kind: "success",
            text: "Registered. Sign in below; messaging unlocks once an administrator verifies the account.",
          };
          this.nav.set("#/login");
        } catch (error) {
          if (error instanceof ApiError && error.status === 400) {
            this.showFieldErrors(error.fields);
          } else if (error instanceof ApiError && error.status === 409) {
            this.banner = { kind: "error", text: error.message };
            this.renderRegister();
          } else {
            this.banner = { kind: "error", text: "cannot reach the service; try again" };
            this.renderRegister();
          }
        }
      });
    });
  }

  private async renderInbox(stamp: number): Promise<void> {
    const entries = await this.api.inbox();
    if (stamp !== this.epoch) return;
    const rows =
      entries.length === 0
        ? `<p class="empty">No messages yet.</p>`
        : `<ul class="inbox">${entries
            .map(
              (entry) => `
              <li class="${entry.read_state}" data-message="${entry.message_id}">
                <button type="button" class="entry">
                  <span class="from">${esc(entry.from_name)}</span>
                  <span class="excerpt">${esc(entry.excerpt)}</span>
                  <time>${esc(formatTimestamp(entry.created_at))}</time>
                </button>
              </li>`,
            )
            .join("")}</ul>`;
    this.renderShell(`<section><h1>Inbox</h1>${rows}</section>`);
    this.root.querySelectorAll("[data-message]").forEach((item) => {
      item.querySelector("button")?.addEventListener("click", () => {
        this.nav.set(`#/messages/${item.getAttribute("data-message")}`);
      });
    });
  }

  private async renderMessageDetail(stamp: number, id: number): Promise<void> {
    let body: string;
    let sentAt: string;
    try {
      const message = await this.api.openMessage(id);
      body = message.body;
      sentAt = message.created_at;
    } catch (error) {
      if (stamp !== this.epoch) return;
      this.banner = {
        kind: "error",
        text: error instanceof ApiError ? error.message : "cannot reach the service",
      };
      this.nav.set("#/inbox");
      return;
    }
    // opening flips the read state, so the badge has to be re-counted
    const [entries, unread] = await Promise.all([
      this.api.inbox(),
      this.api.unreadCount().catch(() => 0),
    ]);
    if (stamp !== this.epoch) return;
    this.unread = unread;
    const sender = entries.find((entry) => entry.message_id === id)?.from_name ?? "";
    this.renderShell(`
      <section class="card">
        <h1>Message</h1>
        <p class="meta">From ${esc(sender)} · <time>${esc(formatTimestamp(sentAt))}</time></p>
        <p class="body" data-testid="message-body">${esc(body)}</p>
        <a href="#/inbox" data-nav="back">Back to inbox</a>
      </section>`);
    this.root.querySelector("[data-nav=back]")?.addEventListener("click", (event) => {
      event.preventDefault();
      this.nav.set("#/inbox");
    });
  }

  private async renderCompose(stamp: number): Promise<void> {
    const recipients = await this.api.recipients();
    if (stamp !== this.epoch) return;
    this.renderShell(`
      <section class="card">
        <h1>Send Message</h1>
        <form data-form="compose" novalidate>
          <label>Select ${this.me?.kind === "user" && this.me.role === "school" ? "Company" : "School"}
            <select name="to_user">
              <option value="">---Select---</option>
              ${recipients
                .map((r: Recipient) => `<option value="${r.id}">${esc(r.name)}</option>`)
                .join("")}
            </select>
            <span class="field-error" data-error-for="to_user"></span>
          </label>
          <label>Message:
            <textarea name="body" rows="8"></textarea>
            <span class="field-error" data-error-for="body"></span>
          </label>
          <button type="submit">Submit</button>
        </form>
      </section>`);
    const form = this.root.querySelector("[data-form=compose]") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run(async () => {
        this.clearFieldErrors();
        try {
          await this.api.sendMessage(Number(this.value("to_user")), this.value("body"));
          this.banner = { kind: "success", text: "Message Sent" };
          await this.renderCompose(this.epoch);
        } catch (error) {
          if (error instanceof ApiError && error.code === "body_invalid") {
            this.showFieldErrors({ body: "empty" });
          } else if (error instanceof ApiError && error.code === "recipient_invalid") {
            this.showFieldErrors({ to_user: "invalid" });
          } else {
            this.banner = {
              kind: "error",
              text: error instanceof ApiError ? error.message : "cannot reach the service",
            };
            await this.renderCompose(this.epoch);
          }
        }
      });
    });
  }

  private async renderSendReport(stamp: number): Promise<void> {
    const recipients = await this.api.recipients();
    if (stamp !== this.epoch) return;
    this.renderShell(`
      <section class="card">
        <h1>Send Report</h1>
        <form data-form="report" novalidate>
          <label>Select School
            <select name="school_id">
              <option value="">---Select---</option>
              ${recipients
                .map((r: Recipient) => `<option value="${r.id}">${esc(r.name)}</option>`)
                .join("")}
            </select>
            <span class="field-error" data-error-for="school_id"></span>
          </label>
          <label>Student Name
            <input name="student_name"><span class="field-error" data-error-for="student_name"></span>
          </label>
          <label>Training Period
            <input name="period" placeholder="2024 SIWES"><span class="field-error" data-error-for="period"></span>
          </label>
          <label>Report
            <textarea name="body" rows="8"></textarea>
            <span class="field-error" data-error-for="body"></span>
          </label>
          <button type="submit">Submit</button>
        </form>
      </section>`);
    const form = this.root.querySelector("[data-form=report]") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run(async () => {
        this.clearFieldErrors();
        try {
          await this.api.submitReport({
            school_id: Number(this.value("school_id")),
            student_name: this.value("student_name"),
            period: this.value("period"),
            body: this.value("body"),
          });
          this.banner = { kind: "success", text: "Report Sent" };
          await this.renderSendReport(this.epoch); // success clears the form
        } catch (error) {
          if (error instanceof ApiError && error.status === 400) {
            this.showFieldErrors(
              error.code === "recipient_invalid" ? { school_id: "invalid" } : error.fields,
            );
          } else {
            this.banner = {
              kind: "error",
              text: error instanceof ApiError ? error.message : "cannot reach the service",
            };
            await this.renderSendReport(this.epoch);
          }
        }
      });
    });
  }

  private async renderViewReports(stamp: number): Promise<void> {
    const [reports, recipients] = await Promise.all([
      this.api.listReports(),
      this.api.recipients(),
    ]);
    if (stamp !== this.epoch) return;
    const companyNames = new Map(recipients.map((r) => [r.id, r.name]));
    const rows =
      reports.length === 0
        ? `<p class="empty">No reports yet.</p>`
        : `<ul class="reports">${reports
            .map(
              (report) => `
              <li class="card">
                <h2>${esc(report.student_name)} · ${esc(report.period)}</h2>
                <p class="meta">From ${esc(companyNames.get(report.company_id) ?? `company #${report.company_id}`)}
                  · <time>${esc(formatTimestamp(report.created_at))}</time></p>
                <p>${esc(report.body)}</p>
              </li>`,
            )
            .join("")}</ul>`;
    this.renderShell(`<section><h1>Student Reports</h1>${rows}</section>`);
  }

  private async renderAdminPending(stamp: number): Promise<void> {
    const accounts = await this.api.pending();
    if (stamp !== this.epoch) return;
    const rows =
      accounts.length === 0
        ? `<p class="empty">No accounts waiting for verification.</p>`
        : `<table class="pending">
            <thead><tr><th>Name</th><th>Email</th><th>Role</th><th>Registered</th><th></th></tr></thead>
            <tbody>${accounts
              .map(
                (account) => `
                <tr data-account="${account.id}">
                  <td>${esc(account.name)}</td>
                  <td>${esc(account.email)}</td>
                  <td>${account.role}</td>
                  <td><time>${esc(formatTimestamp(account.created_at))}</time></td>
                  <td><button type="button" data-verify="${account.id}">Verify</button></td>
                </tr>`,
              )
              .join("")}</tbody>
          </table>`;
    this.renderShell(`<section><h1>Pending accounts</h1>${rows}</section>`);
    this.root.querySelectorAll("[data-verify]").forEach((button) => {
      button.addEventListener("click", () =>
        void this.run(async () => {
          await this.api.verify(Number(button.getAttribute("data-verify")));
          this.banner = { kind: "success", text: "Account verified" };
          await this.renderAdminPending(this.epoch);
        }),
      );
    });
  }

  private async renderCurriculum(stamp: number, level: number | undefined): Promise<void> {
    const courses = await this.api.courses(level);
    if (stamp !== this.epoch) return;
    const levels: (number | undefined)[] = [undefined, 100, 200, 300, 400];
    const filters = levels
      .map((option) => {
        const active = option === level ? " class='active'" : "";
        const label = option === undefined ? "All" : String(option);
        return `<button type="button"${active} data-level="${label}">${label}</button>`;
      })
      .join("");
    const rows = courses
      .map(
        (course: Course) => `
        <tr>
          <td>${esc(course.code)}</td>
          <td>${esc(course.title)}</td>
          <td>${course.units}</td>
          <td>${course.level}</td>
          <td>${course.elective ? "elective" : ""}</td>
        </tr>`,
      )
      .join("");
    this.renderShell(`
      <section>
        <h1>Curriculum</h1>
        <div class="filters">${filters}</div>
        <table class="courses">
          <thead><tr><th>Code</th><th>Title</th><th>Units</th><th>Level</th><th></th></tr></thead>
          <tbody>${rows}</tbody>
        </table>
      </section>`);
    this.root.querySelectorAll("[data-level]").forEach((button) => {
      button.addEventListener("click", () =>
        void this.run(async () => {
          const label = button.getAttribute("data-level");
          await this.renderCurriculum(
            this.epoch,
            label === "All" ? undefined : Number(label),
          );
        }),
      );
    });
  }
}
