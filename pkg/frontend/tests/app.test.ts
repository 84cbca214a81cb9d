// Page behavior against the in-memory API double (happy-dom environment).

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App, formatTimestamp, navEntries, type HashNav } from "../src/app.js";
import { FakeBackend, type FakeUser } from "./fake_backend.js";

class TestNav implements HashNav {
  private hash = "#/";
  private listeners: (() => void)[] = [];

  get() {
    return this.hash;
  }

  set(hash: string) {
    this.hash = hash;
    this.listeners.forEach((listener) => listener());
  }

  onChange(listener: () => void) {
    this.listeners.push(listener);
  }
}

interface Harness {
  backend: FakeBackend;
  root: HTMLElement;
  nav: TestNav;
  app: App;
}

async function mount(backend = new FakeBackend()): Promise<Harness> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const nav = new TestNav();
  const app = new App(root, new ApiClient(backend.fetch), nav);
  await app.start();
  await app.settled();
  return { backend, root, nav, app };
}

async function go(h: Harness, hash: string) {
  h.nav.set(hash);
  await h.app.settled();
}

function fill(h: Harness, name: string, value: string) {
  const el = h.root.querySelector(`[name="${name}"]`) as HTMLInputElement;
  el.value = value;
}

async function submit(h: Harness, selector: string) {
  const form = h.root.querySelector(selector) as HTMLFormElement;
  form.dispatchEvent(new Event("submit", { cancelable: true }));
  await h.app.settled();
}

async function click(h: Harness, selector: string) {
  const el = h.root.querySelector(selector) as HTMLElement;
  el.dispatchEvent(new Event("click", { cancelable: true, bubbles: true }));
  await h.app.settled();
}

function text(h: Harness, selector: string): string {
  return h.root.querySelector(selector)?.textContent ?? "";
}

function seedVerifiedPair(backend: FakeBackend): { school: FakeUser; company: FakeUser } {
  const school = backend.addUser({
    role: "school", name: "Unity University",
    email: "dean@unity.example.edu", password: "school-pass-1",
  });
  const company = backend.addUser({
    role: "company", name: "Acme Software",
    email: "hr@acme.example.com", password: "company-pass-1",
  });
  return { school, company };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("routing and session gating", () => {
  it("lands anonymous visitors on the login page", async () => {
    const h = await mount();
    expect(h.nav.get()).toBe("#/login");
    expect(h.root.querySelector("[data-form=login]")).not.toBeNull();
  });

  it("keeps every page except register/login unreachable without a session", async () => {
    const h = await mount();
    for (const hash of ["#/inbox", "#/compose", "#/reports", "#/send-report", "#/admin", "#/curriculum", "#/messages/1"]) {
      await go(h, hash);
      expect(h.nav.get()).toBe("#/login");
    }
    await go(h, "#/register");
    expect(h.nav.get()).toBe("#/register");
  });

  it("routes a logged-in school away from company-only pages", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.loginAs(school);
    const h = await mount(backend);
    await go(h, "#/send-report");
    expect(h.nav.get()).toBe("#/inbox");
    await go(h, "#/admin");
    expect(h.nav.get()).toBe("#/inbox");
  });

  it("routes a company away from the school-only report list", async () => {
    const backend = new FakeBackend();
    const { company } = seedVerifiedPair(backend);
    backend.loginAs(company);
    const h = await mount(backend);
    await go(h, "#/reports");
    expect(h.nav.get()).toBe("#/inbox");
  });

  it("discards stale responses from a superseded page", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.loginAs(school);
    const h = await mount(backend);

    let release!: () => void;
    backend.delay("/api/reports", new Promise((resolve) => (release = resolve)));
    h.nav.set("#/reports"); // slow page, response held back
    await Promise.resolve();
    await go(h, "#/curriculum"); // user moved on
    release();
    await h.app.settled();
    expect(text(h, "h1")).toBe("Curriculum");
  });
});

describe("navigation menu", () => {
  it("offers only role-authorized targets", () => {
    expect(navEntries(null).map((e) => e.hash)).toEqual(["#/login", "#/register"]);
    expect(
      navEntries({ kind: "user", id: 1, role: "school", name: "U", email: "u@x.y", status: "verified" }).map((e) => e.hash),
    ).toEqual(["#/inbox", "#/compose", "#/reports", "#/curriculum"]);
    expect(
      navEntries({ kind: "user", id: 2, role: "company", name: "C", email: "c@x.y", status: "verified" }).map((e) => e.hash),
    ).toEqual(["#/inbox", "#/compose", "#/send-report", "#/curriculum"]);
    expect(navEntries({ kind: "admin", id: 1 }).map((e) => e.hash)).toEqual(["#/admin", "#/curriculum"]);
  });

  it("hides the send-report link from schools in the rendered chrome", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.loginAs(school);
    const h = await mount(backend);
    expect(h.root.querySelector("[data-nav=send-report]")).toBeNull();
    expect(h.root.querySelector("[data-nav=reports]")).not.toBeNull();
  });
});

describe("register page", () => {
  async function openRegister(): Promise<Harness> {
    const h = await mount();
    await go(h, "#/register");
    return h;
  }

  function fillRegister(h: Harness, overrides: Record<string, string> = {}) {
    const values: Record<string, string> = {
      name: "Acme Software",
      email: "hr@acme.example.com",
      phone: "23480001111",
      password: "company-pass-1",
      password_confirm: "company-pass-1",
      role: "C",
      ...overrides,
    };
    for (const [name, value] of Object.entries(values)) fill(h, name, value);
  }

  it("shows the account fields with a School/Company select", async () => {
    const h = await openRegister();
    for (const name of ["name", "email", "phone", "password", "password_confirm", "role"]) {
      expect(h.root.querySelector(`[name="${name}"]`)).not.toBeNull();
    }
    const options = [...h.root.querySelectorAll("select[name=role] option")].map(
      (option) => option.textContent,
    );
    expect(options).toEqual(["Select", "School", "Company"]);
  });

  it("flags mismatched passwords inline without any request", async () => {
    const h = await openRegister();
    fillRegister(h, { password_confirm: "different-pass" });
    const requestsBefore = h.backend.requests.length;
    await submit(h, "[data-form=register]");
    expect(text(h, "[data-error-for=password_confirm]")).toBe("passwords do not match");
    expect(h.backend.requests.length).toBe(requestsBefore);
  });

  it("renders per-field errors from a 400", async () => {
    const h = await openRegister();
    fillRegister(h, { phone: "nope", email: "not-an-email" });
    await submit(h, "[data-form=register]");
    expect(text(h, "[data-error-for=phone]")).toBe("not valid");
    expect(text(h, "[data-error-for=email]")).toBe("not valid");
    expect(h.nav.get()).toBe("#/register");
  });

  it("shows the 409 banner for a taken email", async () => {
    const h = await openRegister();
    h.backend.addUser({ role: "company", email: "hr@acme.example.com" });
    fillRegister(h);
    await submit(h, "[data-form=register]");
    expect(text(h, "[data-testid=banner]")).toContain("already registered");
  });

  it("routes to login with a success banner on 201", async () => {
    const h = await openRegister();
    fillRegister(h);
    await submit(h, "[data-form=register]");
    expect(h.nav.get()).toBe("#/login");
    expect(text(h, "[data-testid=banner]")).toContain("Registered");
    expect(h.backend.users.at(-1)?.status).toBe("not_verified");
  });
});

describe("login page", () => {
  it("shows the generic failure banner for wrong credentials", async () => {
    const backend = new FakeBackend();
    seedVerifiedPair(backend);
    const h = await mount(backend);
    fill(h, "email", "dean@unity.example.edu");
    fill(h, "password", "wrong-pass");
    await submit(h, "[data-form=login]");
    expect(text(h, "[data-testid=banner]")).toBe("invalid credentials");
    expect(h.nav.get()).toBe("#/login");
  });

  it("sends users to the inbox and admins to the pending queue", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.addAdmin("root@liaison.example", "admin-pass-123");
    const h = await mount(backend);

    fill(h, "email", school.email);
    fill(h, "password", school.password);
    await submit(h, "[data-form=login]");
    expect(h.nav.get()).toBe("#/inbox");

    await click(h, "[data-action=logout]");
    expect(h.nav.get()).toBe("#/login");

    fill(h, "email", "root@liaison.example");
    fill(h, "password", "admin-pass-123");
    (h.root.querySelector("[name=as_admin]") as HTMLInputElement).checked = true;
    await submit(h, "[data-form=login]");
    expect(h.nav.get()).toBe("#/admin");
  });

  it("never parks credentials or tokens in page storage", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    const h = await mount(backend);
    fill(h, "email", school.email);
    fill(h, "password", school.password);
    await submit(h, "[data-form=login]");
    expect(window.localStorage.length).toBe(0);
    expect(window.sessionStorage.length).toBe(0);
    expect(document.cookie).toBe("");
  });
});

describe("inbox", () => {
  function seedInbox(): { backend: FakeBackend; school: FakeUser; company: FakeUser } {
    const backend = new FakeBackend();
    const { school, company } = seedVerifiedPair(backend);
    backend.addMessage(company, school, "Old, already read", true);
    backend.addMessage(company, school, "First unread note");
    backend.addMessage(company, school, "Second unread note");
    backend.loginAs(school);
    return { backend, school, company };
  }

  it("shows the unread badge with the unread_count value", async () => {
    const { backend } = seedInbox();
    const h = await mount(backend);
    expect(text(h, "[data-testid=unread-badge]")).toBe("2");
  });

  it("marks unread entries and orders newest first", async () => {
    const { backend } = seedInbox();
    const h = await mount(backend);
    const items = [...h.root.querySelectorAll("ul.inbox li")];
    expect(items).toHaveLength(3);
    expect(items[0]?.classList.contains("unread")).toBe(true);
    expect(items[0]?.textContent).toContain("Second unread note");
    expect(items[2]?.classList.contains("read")).toBe(true);
  });

  it("renders an empty state without a badge when there is no mail", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.loginAs(school);
    const h = await mount(backend);
    expect(text(h, ".empty")).toBe("No messages yet.");
    expect(h.root.querySelector("[data-testid=unread-badge]")).toBeNull();
  });

  it("opening an entry shows the body and decrements the badge by exactly one", async () => {
    const { backend } = seedInbox();
    const h = await mount(backend);
    expect(text(h, "[data-testid=unread-badge]")).toBe("2");
    await click(h, "ul.inbox li button");
    expect(text(h, "[data-testid=message-body]")).toBe("Second unread note");
    expect(text(h, "[data-testid=unread-badge]")).toBe("1");
    expect(text(h, ".meta")).toContain("Acme Software");
  });

  it("renders timestamps in the viewer's locale", async () => {
    const { backend } = seedInbox();
    const h = await mount(backend);
    const shown = text(h, "ul.inbox li time");
    const raw = backend.messages.at(-1)!.created_at;
    expect(shown).toBe(formatTimestamp(raw));
    expect(shown).not.toBe(raw);
  });
});

describe("compose", () => {
  it("offers exactly the recipients the API returns and resets on success", async () => {
    const backend = new FakeBackend();
    const { school, company } = seedVerifiedPair(backend);
    backend.addUser({ role: "school", name: "Pending Poly", status: "not_verified" });
    backend.loginAs(company);
    const h = await mount(backend);
    await go(h, "#/compose");

    const options = [...h.root.querySelectorAll("select[name=to_user] option")].map(
      (option) => option.textContent,
    );
    expect(options).toEqual(["---Select---", "Unity University"]);

    fill(h, "to_user", String(school.id));
    fill(h, "body", "Please add more practical database work.");
    await submit(h, "[data-form=compose]");

    expect(text(h, "[data-testid=banner]")).toBe("Message Sent");
    expect((h.root.querySelector("[name=body]") as HTMLTextAreaElement).value).toBe("");
    expect(backend.messages).toHaveLength(1);
    expect(backend.messages[0]?.read_state).toBe("unread");
  });

  it("surfaces the sender-not-verified error", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    const pending = backend.addUser({ role: "company", status: "not_verified", name: "Pending Inc" });
    backend.loginAs(pending);
    const h = await mount(backend);
    await go(h, "#/compose");
    fill(h, "to_user", String(school.id));
    fill(h, "body", "hello");
    await submit(h, "[data-form=compose]");
    expect(text(h, "[data-testid=banner]")).toContain("awaiting verification");
    expect(backend.messages).toHaveLength(0);
  });
});

describe("send report page", () => {
  async function companyHarness() {
    const backend = new FakeBackend();
    const pair = seedVerifiedPair(backend);
    backend.loginAs(pair.company);
    const h = await mount(backend);
    await go(h, "#/send-report");
    return { h, ...pair };
  }

  it("populates the school dropdown from the recipients route", async () => {
    const { h } = await companyHarness();
    const options = [...h.root.querySelectorAll("select[name=school_id] option")].map(
      (option) => option.textContent,
    );
    expect(options).toEqual(["---Select---", "Unity University"]);
  });

  it("confirms and clears the form on success", async () => {
    const { h, school } = await companyHarness();
    fill(h, "school_id", String(school.id));
    fill(h, "student_name", "Ada Obi");
    fill(h, "period", "2024 SIWES");
    fill(h, "body", "Excellent placement.");
    await submit(h, "[data-form=report]");
    expect(text(h, "[data-testid=banner]")).toBe("Report Sent");
    for (const name of ["student_name", "period", "body"]) {
      expect((h.root.querySelector(`[name="${name}"]`) as HTMLInputElement).value).toBe("");
    }
    expect(h.backend.reports).toHaveLength(1);
  });

  it("marks an empty student name inline", async () => {
    const { h, school } = await companyHarness();
    fill(h, "school_id", String(school.id));
    fill(h, "period", "2024 SIWES");
    fill(h, "body", "Body text");
    await submit(h, "[data-form=report]");
    expect(text(h, "[data-error-for=student_name]")).toBe("required");
    expect(h.backend.reports).toHaveLength(0);
  });
});

describe("view reports page", () => {
  it("lists the school's reports with company names", async () => {
    const backend = new FakeBackend();
    const { school, company } = seedVerifiedPair(backend);
    backend.addReport(company, school, "Ada Obi");
    backend.loginAs(school);
    const h = await mount(backend);
    await go(h, "#/reports");
    expect(text(h, "ul.reports h2")).toContain("Ada Obi");
    expect(text(h, "ul.reports .meta")).toContain("Acme Software");
  });
});

describe("admin pending page", () => {
  it("verifies an account and drops it from the queue", async () => {
    const backend = new FakeBackend();
    backend.addAdmin("root@liaison.example", "admin-pass-123");
    backend.addUser({ role: "school", name: "Pending U", status: "not_verified" });
    backend.session = { kind: "admin", id: 1 };
    const h = await mount(backend);
    await go(h, "#/admin");

    expect([...h.root.querySelectorAll("[data-verify]")]).toHaveLength(1);
    await click(h, "[data-verify]");
    expect(text(h, ".empty")).toContain("No accounts waiting");
    expect(backend.users[0]?.status).toBe("verified");
  });
});

describe("curriculum page", () => {
  it("filters by level", async () => {
    const backend = new FakeBackend();
    const { school } = seedVerifiedPair(backend);
    backend.loginAs(school);
    const h = await mount(backend);
    await go(h, "#/curriculum");
    expect([...h.root.querySelectorAll("table.courses tbody tr")]).toHaveLength(4);

    await click(h, "[data-level='100']");
    const rows = [...h.root.querySelectorAll("table.courses tbody tr")];
    expect(rows).toHaveLength(2);
    expect(rows[0]?.textContent).toContain("CSC 101");
  });
});
