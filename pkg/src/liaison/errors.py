"""Exception types shared by the store, services, HTTP layer, and CLI."""

from __future__ import annotations


class LiaisonError(Exception):
    """Base class; `code` is the machine-readable error name used on the wire."""

    code = "internal"
    http_status = 500

    def __init__(self, message: str | None = None, fields: dict[str, str] | None = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.fields = fields


class ValidationFailed(LiaisonError):
    code = "validation_failed"
    http_status = 400

    def __init__(self, codes: list[str], message: str = "validation failed"):
        super().__init__(message, fields=fields_map(codes))
        self.codes = codes


class FormInvalid(LiaisonError):
    code = "form_invalid"
    http_status = 400

    def __init__(self, codes: list[str], message: str = "invalid form"):
        super().__init__(message, fields=fields_map(codes))
        self.codes = codes


class EmailTaken(LiaisonError):
    code = "email_taken"
    http_status = 409


class AuthFailed(LiaisonError):
    code = "auth_failed"
    http_status = 401

    def __init__(self):
        # Single generic message: unknown email and wrong password must be
        # indistinguishable on the wire.
        super().__init__("invalid credentials")


class Unauthorized(LiaisonError):
    code = "unauthorized"
    http_status = 401


class Forbidden(LiaisonError):
    code = "forbidden"
    http_status = 403


class NotFound(LiaisonError):
    code = "not_found"
    http_status = 404


class SenderNotVerified(LiaisonError):
    code = "sender_not_verified"
    http_status = 403


class RecipientInvalid(LiaisonError):
    code = "recipient_invalid"
    http_status = 400


class BodyInvalid(LiaisonError):
    code = "body_invalid"
    http_status = 400


class UniqueViolation(LiaisonError):
    code = "unique_violation"
    http_status = 409


class InvariantViolation(LiaisonError):
    code = "invariant_violation"
    http_status = 400


class IoError(LiaisonError):
    code = "io_error"


class CorruptStore(LiaisonError):
    code = "corrupt_store"


class MigrationFailed(LiaisonError):
    code = "migration_failed"

    def __init__(self, step: str, message: str | None = None):
        super().__init__(message or f"migration step failed: {step}")
        self.step = step


class ParseError(LiaisonError):
    code = "parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateCode(LiaisonError):
    code = "duplicate_code"

    def __init__(self, course_code: str):
        super().__init__(f"duplicate course code: {course_code}")
        self.course_code = course_code


# Field-level validation codes -> (field, reason) for ApiError.fields.
_FIELD_REASONS = {
    "name_empty": ("name", "empty"),
    "name_too_long": ("name", "too_long"),
    "email_invalid": ("email", "invalid"),
    "email_too_long": ("email", "too_long"),
    "phone_invalid": ("phone", "invalid"),
    "password_too_short": ("password", "too_short"),
    "password_mismatch": ("password_confirm", "mismatch"),
    "role_invalid": ("role", "invalid"),
    "student_name_empty": ("student_name", "empty"),
    "student_name_too_long": ("student_name", "too_long"),
    "period_empty": ("period", "empty"),
    "period_too_long": ("period", "too_long"),
    "body_empty": ("body", "empty"),
    "body_too_long": ("body", "too_long"),
}


def fields_map(codes: list[str]) -> dict[str, str]:
    """Project validation codes onto a field -> reason map for API responses."""
    out: dict[str, str] = {}
    for code in codes:
        field, reason = _FIELD_REASONS.get(code, (code, "invalid"))
        out.setdefault(field, reason)
    return out
