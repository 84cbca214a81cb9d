"""Deterministic demo dataset: fixed accounts, messages, and reports.

Two seeds into fresh stores produce row-identical databases apart from
timestamps, so demo salts are derived from the account email instead of
drawn at random.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .auth import PBKDF2_ITERATIONS, hash_password
from .domain import Role, Status
from .errors import LiaisonError
from .store import Store


@dataclass(frozen=True)
class DemoAccount:
    label: str
    name: str
    email: str
    phone: str
    password: str
    role: Role | None  # None marks the admin
    status: Status = Status.VERIFIED


DEMO_ADMIN = DemoAccount(
    "admin", "Administrator", "admin@liaison.example", "", "admin-demo-pass", None
)

DEMO_USERS = (
    DemoAccount(
        "school", "Unity University", "dean@unity.example.edu",
        "2348011111111", "school-demo-1", Role.SCHOOL,
    ),
    DemoAccount(
        "school", "Riverside Polytechnic", "liaison@riverside.example.edu",
        "2348022222222", "school-demo-2", Role.SCHOOL,
    ),
    DemoAccount(
        "company", "Acme Software", "hr@acme.example.com",
        "2348033333333", "company-demo-1", Role.COMPANY,
    ),
    DemoAccount(
        "company", "Beacon Analytics", "talent@beacon.example.com",
        "2348044444444", "company-demo-2", Role.COMPANY,
    ),
    DemoAccount(
        "company", "Neptune Robotics", "intern@neptune.example.com",
        "2348055555555", "company-demo-3", Role.COMPANY,
        status=Status.NOT_VERIFIED,
    ),
)

# (sender email, recipient email, body, opened by recipient?)
DEMO_MESSAGES = (
    (
        "hr@acme.example.com",
        "dean@unity.example.edu",
        "Our interns arrive without version-control habits. Could CSC 321 "
        "System Analysis and Design include a team project on shared "
        "repositories?",
        True,
    ),
    (
        "talent@beacon.example.com",
        "dean@unity.example.edu",
        "Graduates need stronger database fundamentals; consider expanding "
        "the practical load of CSC 304 Data Management I.",
        False,
    ),
    (
        "liaison@riverside.example.edu",
        "hr@acme.example.com",
        "Which topics from CSC 423 Computer Networks/Communications matter "
        "most for your placement roles this year?",
        False,
    ),
)

# (company email, school email, student, period, body)
DEMO_REPORTS = (
    (
        "hr@acme.example.com",
        "dean@unity.example.edu",
        "Ada Obi",
        "2024 SIWES",
        "Ada completed a six-month placement on our billing platform. "
        "Strong on algorithms, needed coaching on code review etiquette.",
    ),
    (
        "talent@beacon.example.com",
        "liaison@riverside.example.edu",
        "Chidi Eze",
        "2024 SIWES",
        "Chidi rotated through data engineering. Excellent SQL; we suggest "
        "more exposure to statistical computing before graduation.",
    ),
)


@dataclass
class SeedSummary:
    accounts: int = 0
    messages: int = 0
    reports: int = 0
    credentials: list[tuple[str, str, str]] = field(default_factory=list)


def _demo_salt(email: str) -> bytes:
    return hashlib.sha256(b"liaison-demo:" + email.encode()).digest()[:16]


def seed_demo(
    store: Store, *, force: bool = False, hash_iterations: int = PBKDF2_ITERATIONS
) -> SeedSummary:
    """Populate a fresh store with the demo dataset.

    Refuses to touch a store that already holds accounts unless `force`,
    which drops everything and starts over.
    """
    if store.count_users() or store.count_admins():
        if not force:
            raise LiaisonError("store already holds accounts; pass force to reseed")
        store.reset()

    summary = SeedSummary()

    def digest(account: DemoAccount) -> str:
        return hash_password(
            account.password, iterations=hash_iterations, salt=_demo_salt(account.email)
        )

    store.insert_admin(DEMO_ADMIN.email, digest(DEMO_ADMIN))
    summary.accounts += 1
    summary.credentials.append((DEMO_ADMIN.label, DEMO_ADMIN.email, DEMO_ADMIN.password))

    ids: dict[str, int] = {}
    for account in DEMO_USERS:
        row = store.insert_user(
            name=account.name,
            email=account.email,
            phone=account.phone,
            password_digest=digest(account),
            role=account.role,
            status=account.status,
        )
        ids[account.email] = row.id
        summary.accounts += 1
        summary.credentials.append((account.label, account.email, account.password))

    for sender, recipient, body, opened in DEMO_MESSAGES:
        message = store.insert_message(ids[sender], ids[recipient], body)
        if opened:
            store.mark_message_read(message.id)
        summary.messages += 1

    for company, school, student, period, body in DEMO_REPORTS:
        store.insert_report(ids[company], ids[school], student, period, body)
        summary.reports += 1

    return summary
