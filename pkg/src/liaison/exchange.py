"""Suggestion messages and student-report exchange between verified accounts.

All flows run between a School and a Company, never within one role, and
only once both ends are admin-verified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .auth import AuthService
from .domain import (
    INBOX_EXCERPT_LEN,
    MAX_BODY_LEN,
    MAX_NAME_LEN,
    MAX_PERIOD_LEN,
    InboxEntry,
    Message,
    ReadState,
    Report,
    ReportForm,
    Role,
    Status,
    UserAccount,
)
from .errors import (
    BodyInvalid,
    Forbidden,
    FormInvalid,
    NotFound,
    RecipientInvalid,
    SenderNotVerified,
)
from .store import Store


@dataclass(frozen=True)
class Recipient:
    id: int
    name: str
    role: Role


class ExchangeService:
    def __init__(self, store: Store, auth: AuthService):
        self.store = store
        self.auth = auth

    # -- messaging -----------------------------------------------------------

    def list_recipients(self, token: str) -> list[Recipient]:
        """Verified accounts of the opposite role, sorted by name."""
        caller = self.auth.require_user(token)
        others = [
            u
            for u in self.store.query_users(status=Status.VERIFIED)
            if u.role != caller.role
        ]
        others.sort(key=lambda u: (u.name, u.id))
        return [Recipient(id=u.id, name=u.name, role=u.role) for u in others]

    def send_message(self, token: str, to_user: int | None, body: str) -> Message:
        """Persist an Unread message from a verified caller to a verified
        opposite-role recipient."""
        caller = self._verified_sender(token)
        if not body or len(body) > MAX_BODY_LEN:
            raise BodyInvalid("message body must be 1-65535 characters")
        recipient = self.store.find_user(to_user) if to_user is not None else None
        if recipient is None or recipient.status is not Status.VERIFIED \
                or recipient.role == caller.role:
            raise RecipientInvalid("recipient must be a verified opposite-role account")
        return self.store.insert_message(caller.id, recipient.id, body)

    def inbox(self, token: str) -> list[InboxEntry]:
        """Messages addressed to the caller, newest first."""
        caller = self.auth.require_user(token)
        entries = []
        for message in self.store.query_messages(to_user=caller.id):
            sender = self.store.find_user(message.from_user)
            entries.append(
                InboxEntry(
                    message_id=message.id,
                    from_name=sender.name if sender else "",
                    excerpt=message.body[:INBOX_EXCERPT_LEN],
                    read_state=message.read_state,
                    created_at=message.created_at,
                )
            )
        return entries

    def open_message(self, token: str, message_id: int) -> Message:
        """Full message for its recipient; first open flips Unread -> Read."""
        caller = self.auth.require_user(token)
        message = self.store.find_message(message_id)
        if message is None:
            raise NotFound(f"no message with id {message_id}")
        if message.to_user != caller.id:
            raise Forbidden("only the recipient may open a message")
        self.store.mark_message_read(message_id)
        opened = self.store.find_message(message_id)
        assert opened is not None
        return opened

    def unread_count(self, token: str) -> int:
        caller = self.auth.require_user(token)
        return sum(
            1
            for m in self.store.query_messages(to_user=caller.id)
            if m.read_state is ReadState.UNREAD
        )

    # -- reports -------------------------------------------------------------

    def submit_report(self, token: str, form: ReportForm) -> Report:
        """Company-only: file an immutable student report with a school."""
        caller = self.auth.require_user(token)
        if caller.role is not Role.COMPANY:
            raise Forbidden("only company accounts submit reports")
        if caller.status is not Status.VERIFIED:
            raise SenderNotVerified("account is awaiting verification")
        errors = _validate_report_form(form)
        if errors:
            raise FormInvalid(errors)
        school = self.store.find_user(form.school_id) if form.school_id else None
        if school is None or school.role is not Role.SCHOOL \
                or school.status is not Status.VERIFIED:
            raise RecipientInvalid("school_id must name a verified school")
        return self.store.insert_report(
            company_id=caller.id,
            school_id=school.id,
            student_name=form.student_name.strip(),
            period=form.period.strip(),
            body=form.body,
        )

    def list_reports(self, token: str) -> list[Report]:
        """School-only: reports filed with the caller, newest first."""
        caller = self.auth.require_user(token)
        if caller.role is not Role.SCHOOL:
            raise Forbidden("only school accounts list reports")
        return self.store.query_reports(school_id=caller.id)

    def _verified_sender(self, token: str) -> UserAccount:
        caller = self.auth.require_user(token)
        if caller.status is not Status.VERIFIED:
            raise SenderNotVerified("account is awaiting verification")
        return caller


def _validate_report_form(form: ReportForm) -> list[str]:
    errors = []
    if not form.student_name.strip():
        errors.append("student_name_empty")
    elif len(form.student_name) > MAX_NAME_LEN:
        errors.append("student_name_too_long")
    if not form.period.strip():
        errors.append("period_empty")
    elif len(form.period) > MAX_PERIOD_LEN:
        errors.append("period_too_long")
    if not form.body:
        errors.append("body_empty")
    elif len(form.body) > MAX_BODY_LEN:
        errors.append("body_too_long")
    return errors
