"""JSON wire representation: snake_case keys, RFC 3339 UTC timestamps,
long-form role/status names, and no secret material ever."""

from __future__ import annotations

from datetime import datetime, timezone

from .auth import Principal
from .domain import (
    AdminAccount,
    Course,
    InboxEntry,
    Message,
    ReadState,
    Report,
    Role,
    SessionKind,
    Status,
    UserAccount,
)
from .exchange import Recipient

ROLE_NAMES = {Role.SCHOOL: "school", Role.COMPANY: "company"}
STATUS_NAMES = {Status.VERIFIED: "verified", Status.NOT_VERIFIED: "not_verified"}
READ_STATE_NAMES = {ReadState.UNREAD: "unread", ReadState.READ: "read"}


def rfc3339(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def parse_rfc3339(text: str) -> datetime:
    return datetime.fromisoformat(text.replace("Z", "+00:00"))


def serialize_user(account: UserAccount) -> dict:
    # password digest and salt stay server-side, always
    return {
        "id": account.id,
        "name": account.name,
        "email": account.email,
        "phone": account.phone,
        "role": ROLE_NAMES[account.role],
        "status": STATUS_NAMES[account.status],
        "created_at": rfc3339(account.created_at),
    }


def serialize_admin(admin: AdminAccount) -> dict:
    return {"id": admin.id, "email": admin.email}


def serialize_principal(principal: Principal, account: UserAccount | None = None) -> dict:
    if principal.kind is SessionKind.ADMIN:
        return {"kind": "admin", "id": principal.id}
    doc = {"kind": "user", "id": principal.id, "role": ROLE_NAMES[principal.role]}
    if account is not None:
        doc.update(
            name=account.name,
            email=account.email,
            status=STATUS_NAMES[account.status],
        )
    return doc


def serialize_message(message: Message) -> dict:
    return {
        "id": message.id,
        "from_user": message.from_user,
        "to_user": message.to_user,
        "body": message.body,
        "read_state": READ_STATE_NAMES[message.read_state],
        "created_at": rfc3339(message.created_at),
    }


def serialize_inbox_entry(entry: InboxEntry) -> dict:
    return {
        "message_id": entry.message_id,
        "from_name": entry.from_name,
        "excerpt": entry.excerpt,
        "read_state": READ_STATE_NAMES[entry.read_state],
        "created_at": rfc3339(entry.created_at),
    }


def serialize_report(report: Report) -> dict:
    return {
        "id": report.id,
        "company_id": report.company_id,
        "school_id": report.school_id,
        "student_name": report.student_name,
        "period": report.period,
        "body": report.body,
        "created_at": rfc3339(report.created_at),
    }


def parse_report(doc: dict) -> Report:
    return Report(
        id=doc["id"],
        company_id=doc["company_id"],
        school_id=doc["school_id"],
        student_name=doc["student_name"],
        period=doc["period"],
        body=doc["body"],
        created_at=parse_rfc3339(doc["created_at"]),
    )


def serialize_recipient(recipient: Recipient) -> dict:
    return {
        "id": recipient.id,
        "name": recipient.name,
        "role": ROLE_NAMES[recipient.role],
    }


def serialize_course(course: Course) -> dict:
    return {
        "code": course.code,
        "title": course.title,
        "units": course.units,
        "level": course.level,
        "elective": course.elective,
    }
