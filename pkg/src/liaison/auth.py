"""Registration, login/logout, session issuance, and admin verification."""

from __future__ import annotations

import hashlib
import hmac
import secrets
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Callable

from .domain import (
    Credentials,
    RegistrationForm,
    Role,
    Session,
    SessionKind,
    Status,
    UserAccount,
    normalize_email,
    normalize_phone,
    validate_email,
    validate_registration,
)
from .errors import (
    AuthFailed,
    EmailTaken,
    Forbidden,
    NotFound,
    Unauthorized,
    UniqueViolation,
    ValidationFailed,
)
from .store import Store

SESSION_TTL = timedelta(hours=24)
PBKDF2_ITERATIONS = 100_000
_HASH_NAME = "sha256"
_SALT_BYTES = 16


def hash_password(password: str, *, iterations: int = PBKDF2_ITERATIONS,
                  salt: bytes | None = None) -> str:
    """Salted PBKDF2 digest, self-describing so iteration counts can evolve."""
    if salt is None:
        salt = secrets.token_bytes(_SALT_BYTES)
    digest = hashlib.pbkdf2_hmac(_HASH_NAME, password.encode(), salt, iterations)
    return f"pbkdf2_{_HASH_NAME}${iterations}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    """Constant-time check of a password against a stored digest."""
    try:
        scheme, iterations, salt_hex, digest_hex = stored.split("$")
        if scheme != f"pbkdf2_{_HASH_NAME}":
            return False
        candidate = hashlib.pbkdf2_hmac(
            _HASH_NAME, password.encode(), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(candidate, bytes.fromhex(digest_hex))
    except (ValueError, AttributeError):
        return False


def new_token() -> str:
    """URL-safe session token with 256 bits of entropy (43 characters)."""
    return secrets.token_urlsafe(32)


@dataclass(frozen=True)
class Principal:
    """Who a live session authenticates: an admin, or a user with a role."""

    kind: SessionKind
    id: int
    role: Role | None = None


class AuthService:
    def __init__(
        self,
        store: Store,
        *,
        session_ttl: timedelta = SESSION_TTL,
        hash_iterations: int = PBKDF2_ITERATIONS,
        now: Callable[[], datetime] | None = None,
    ):
        self.store = store
        self.session_ttl = session_ttl
        self.hash_iterations = hash_iterations
        self._now = now or (lambda: datetime.now(timezone.utc))
        # Verified against when the email is unknown, so both failure paths
        # cost one hash.
        self._decoy_digest = hash_password("decoy", iterations=hash_iterations)

    # -- accounts ----------------------------------------------------------

    def register(self, form: RegistrationForm) -> UserAccount:
        """Create a NotVerified account from a clean registration form."""
        errors = validate_registration(form)
        if errors:
            raise ValidationFailed(errors)
        try:
            return self.store.insert_user(
                name=form.name.strip(),
                email=normalize_email(form.email),
                phone=normalize_phone(form.phone),  # type: ignore[arg-type]
                password_digest=hash_password(form.password, iterations=self.hash_iterations),
                role=Role(form.role),
            )
        except UniqueViolation as exc:
            raise EmailTaken("email already registered") from exc

    def login(self, credentials: Credentials) -> Session:
        """User login; unknown email and wrong password fail identically."""
        account = self.store.find_user_by_email(normalize_email(credentials.email))
        stored = account.password_digest if account else self._decoy_digest
        if not verify_password(credentials.password, stored) or account is None:
            raise AuthFailed()
        return self.issue_session(SessionKind.USER, account.id)

    def admin_login(self, credentials: Credentials) -> Session:
        admin = self.store.find_admin_by_email(normalize_email(credentials.email))
        stored = admin.password_digest if admin else self._decoy_digest
        if not verify_password(credentials.password, stored) or admin is None:
            raise AuthFailed()
        return self.issue_session(SessionKind.ADMIN, admin.id)

    # -- sessions ----------------------------------------------------------

    def issue_session(self, kind: SessionKind, principal_id: int) -> Session:
        issued = self._now()
        return self.store.insert_session(
            Session(
                token=new_token(),
                principal=principal_id,
                kind=kind,
                issued_at=issued,
                expires_at=issued + self.session_ttl,
            )
        )

    def logout(self, token: str) -> None:
        """Remove the session row; unknown tokens still acknowledge."""
        self.store.delete_session(token)

    def authenticate(self, token: str) -> Principal:
        """Resolve a live session to its principal, or raise Unauthorized."""
        if not token:
            raise Unauthorized("missing session token")
        session = self.store.find_session(token)
        if session is None or session.expires_at <= self._now():
            raise Unauthorized("unknown or expired session")
        if session.kind is SessionKind.ADMIN:
            return Principal(kind=SessionKind.ADMIN, id=session.principal)
        account = self.store.find_user(session.principal)
        if account is None:
            raise Unauthorized("session principal no longer exists")
        return Principal(kind=SessionKind.USER, id=account.id, role=account.role)

    def require_admin(self, token: str) -> Principal:
        principal = self.authenticate(token)
        if principal.kind is not SessionKind.ADMIN:
            raise Forbidden("admin session required")
        return principal

    def require_user(self, token: str) -> UserAccount:
        principal = self.authenticate(token)
        if principal.kind is not SessionKind.USER:
            raise Forbidden("user session required")
        account = self.store.find_user(principal.id)
        assert account is not None  # authenticate already resolved it
        return account

    # -- verification workflow ----------------------------------------------

    def list_pending(self, token: str) -> list[UserAccount]:
        """All NotVerified accounts, oldest first. Admin only."""
        self.require_admin(token)
        pending = self.store.query_users(status=Status.NOT_VERIFIED)
        return list(reversed(pending))

    def verify_user(self, token: str, user_id: int) -> UserAccount:
        """Flip an account to Verified; idempotent. Admin only."""
        self.require_admin(token)
        account = self.store.find_user(user_id)
        if account is None:
            raise NotFound(f"no user with id {user_id}")
        if account.status is Status.VERIFIED:
            return account
        return self.store.mark_user_verified(user_id)

    # -- admin provisioning (CLI only, no HTTP route) ------------------------

    def create_admin(self, email: str, password: str):
        normalized = normalize_email(email)
        reason = validate_email(normalized)
        if reason is not None:
            raise ValidationFailed([f"email_{'too_long' if reason == 'too_long' else 'invalid'}"])
        try:
            return self.store.insert_admin(
                normalized, hash_password(password, iterations=self.hash_iterations)
            )
        except UniqueViolation as exc:
            raise EmailTaken("admin email already registered") from exc
