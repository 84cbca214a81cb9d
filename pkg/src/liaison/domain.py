"""Entities, enumerations, and field-level validation shared by every layer.

Everything here is a plain value type or a pure function; nothing touches
storage or the network.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from enum import Enum, IntEnum

MAX_NAME_LEN = 200
MAX_EMAIL_LEN = 1024
MAX_BODY_LEN = 65535
MAX_PERIOD_LEN = 100
MIN_PASSWORD_LEN = 8
PHONE_MIN_DIGITS = 7
PHONE_MAX_DIGITS = 15

INBOX_EXCERPT_LEN = 120

COURSE_LEVELS = (100, 200, 300, 400)
COURSE_MIN_UNITS = 1
COURSE_MAX_UNITS = 6


class Role(str, Enum):
    """School or company principal, stored as the single characters 'S'/'C'."""

    SCHOOL = "S"
    COMPANY = "C"


def opposite_role(role: Role) -> Role:
    return Role.COMPANY if role is Role.SCHOOL else Role.SCHOOL


class Status(str, Enum):
    VERIFIED = "Verified"
    NOT_VERIFIED = "Not Verified"


class ReadState(IntEnum):
    UNREAD = 0
    READ = 1


class SessionKind(str, Enum):
    USER = "U"
    ADMIN = "A"


@dataclass(frozen=True)
class UserAccount:
    id: int
    name: str
    email: str
    phone: str
    password_digest: str
    role: Role
    status: Status
    created_at: datetime


@dataclass(frozen=True)
class AdminAccount:
    id: int
    email: str
    password_digest: str


@dataclass(frozen=True)
class Message:
    id: int
    from_user: int
    to_user: int
    body: str
    read_state: ReadState
    created_at: datetime


@dataclass(frozen=True)
class Report:
    id: int
    company_id: int
    school_id: int
    student_name: str
    period: str
    body: str
    created_at: datetime


@dataclass(frozen=True)
class Session:
    token: str
    principal: int
    kind: SessionKind
    issued_at: datetime
    expires_at: datetime


@dataclass(frozen=True)
class Course:
    code: str
    title: str
    units: int
    level: int
    elective: bool


@dataclass
class RegistrationForm:
    name: str = ""
    email: str = ""
    phone: str = ""
    password: str = ""
    password_confirm: str = ""
    role: str = ""


@dataclass
class Credentials:
    """Login input. Never persisted; repr omits the password."""

    email: str = ""
    password: str = ""

    def __repr__(self) -> str:  # keep secrets out of logs and tracebacks
        return f"Credentials(email={self.email!r}, password=***)"


@dataclass(frozen=True)
class InboxEntry:
    message_id: int
    from_name: str
    excerpt: str
    read_state: ReadState
    created_at: datetime


@dataclass
class ReportForm:
    school_id: int | None = None
    student_name: str = ""
    period: str = ""
    body: str = ""


def normalize_email(raw: str) -> str:
    """Trim surrounding whitespace and lowercase. Idempotent."""
    return raw.strip().lower()


def validate_email(email: str) -> str | None:
    """Return None when valid, else one of 'empty', 'format', 'too_long'.

    Valid means local@domain with a non-empty local part and a non-empty
    domain containing a dot, at most MAX_EMAIL_LEN characters overall.
    """
    if not email:
        return "empty"
    if len(email) > MAX_EMAIL_LEN:
        return "too_long"
    parts = email.split("@")
    if len(parts) != 2:
        return "format"
    local, dom = parts
    if not local or not dom or "." not in dom:
        return "format"
    return None


def normalize_phone(raw: str) -> str | None:
    """Reduce to the bare digit string, or None when it is not a valid phone.

    Spaces, '+' and '-' are cosmetic; what remains must be 7-15 digits.
    """
    digits = re.sub(r"[ +\-]", "", raw)
    if digits.isdigit() and PHONE_MIN_DIGITS <= len(digits) <= PHONE_MAX_DIGITS:
        return digits
    return None


def validate_registration(form: RegistrationForm) -> list[str]:
    """Return error codes for every offending field; empty list means valid.

    A form that validates clean can always be turned into a UserAccount
    without violating any account invariant.
    """
    errors: list[str] = []
    if not form.name.strip():
        errors.append("name_empty")
    elif len(form.name) > MAX_NAME_LEN:
        errors.append("name_too_long")

    reason = validate_email(normalize_email(form.email))
    if reason == "too_long":
        errors.append("email_too_long")
    elif reason is not None:
        errors.append("email_invalid")

    if normalize_phone(form.phone) is None:
        errors.append("phone_invalid")

    if len(form.password) < MIN_PASSWORD_LEN:
        errors.append("password_too_short")
    if form.password != form.password_confirm:
        errors.append("password_mismatch")

    if form.role not in (Role.SCHOOL.value, Role.COMPANY.value):
        errors.append("role_invalid")
    return errors
