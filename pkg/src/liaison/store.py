"""Embedded relational persistence over sqlite3.

One handle per database; every public method takes the internal lock, so a
handle can be shared across request-handler threads with single-writer
semantics. Rows are never deleted (sessions excepted: logout removes its
row), so foreign ids always resolve.
"""

from __future__ import annotations

import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .domain import (
    AdminAccount,
    Course,
    Message,
    ReadState,
    Report,
    Role,
    Session,
    SessionKind,
    Status,
    UserAccount,
)
from .errors import (
    CorruptStore,
    InvariantViolation,
    IoError,
    MigrationFailed,
    NotFound,
    UniqueViolation,
)

MEMORY_PATH = ":memory:"

ENTITY_TABLES = ("admin", "users", "messages", "reports", "sessions", "courses")

_SCHEMA_V1 = """
CREATE TABLE admin (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    email TEXT NOT NULL UNIQUE COLLATE NOCASE,
    password_digest TEXT NOT NULL
);
CREATE TABLE users (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    name TEXT NOT NULL,
    email TEXT NOT NULL UNIQUE COLLATE NOCASE,
    phone TEXT NOT NULL,
    password_digest TEXT NOT NULL,
    role TEXT NOT NULL CHECK (role IN ('S', 'C')),
    status TEXT NOT NULL DEFAULT 'Not Verified'
        CHECK (status IN ('Verified', 'Not Verified')),
    created_at TEXT NOT NULL
);
CREATE TABLE messages (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    from_user INTEGER NOT NULL REFERENCES users(id),
    to_user INTEGER NOT NULL REFERENCES users(id),
    body TEXT NOT NULL,
    read_state INTEGER NOT NULL DEFAULT 0 CHECK (read_state IN (0, 1)),
    created_at TEXT NOT NULL
);
CREATE TABLE reports (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    company_id INTEGER NOT NULL REFERENCES users(id),
    school_id INTEGER NOT NULL REFERENCES users(id),
    student_name TEXT NOT NULL,
    period TEXT NOT NULL,
    body TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE sessions (
    token TEXT PRIMARY KEY,
    principal INTEGER NOT NULL,
    kind TEXT NOT NULL CHECK (kind IN ('U', 'A')),
    issued_at TEXT NOT NULL,
    expires_at TEXT NOT NULL
);
CREATE TABLE courses (
    code TEXT PRIMARY KEY,
    title TEXT NOT NULL,
    units INTEGER NOT NULL CHECK (units > 0),
    level INTEGER NOT NULL CHECK (level IN (100, 200, 300, 400)),
    elective INTEGER NOT NULL DEFAULT 0 CHECK (elective IN (0, 1))
);
"""

MIGRATIONS: list[tuple[int, str, str]] = [
    (1, "initial schema", _SCHEMA_V1),
]

LATEST_VERSION = MIGRATIONS[-1][0]


@dataclass(frozen=True)
class SchemaVersion:
    version: int
    applied_at: datetime


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _dt(text: str) -> datetime:
    return datetime.fromisoformat(text)


class Store:
    """Shared handle over one sqlite database (file-backed or in-memory)."""

    def __init__(self, conn: sqlite3.Connection, path: str):
        self._conn = conn
        self._lock = threading.RLock()
        self.path = path

    @property
    def in_memory(self) -> bool:
        return self.path == MEMORY_PATH

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # -- schema ------------------------------------------------------------

    def migrate(self) -> SchemaVersion:
        """Bring the schema to the latest version. Idempotent."""
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS schema_version ("
                " version INTEGER NOT NULL, applied_at TEXT NOT NULL)"
            )
            current = self._current_version()
            for version, name, script in MIGRATIONS:
                if version <= current:
                    continue
                try:
                    with self._conn:
                        self._conn.executescript(script)
                        self._conn.execute(
                            "INSERT INTO schema_version (version, applied_at) VALUES (?, ?)",
                            (version, _utcnow().isoformat()),
                        )
                except sqlite3.Error as exc:
                    raise MigrationFailed(f"v{version} {name}", str(exc)) from exc
            return self.schema_version()

    def _current_version(self) -> int:
        row = self._conn.execute("SELECT MAX(version) FROM schema_version").fetchone()
        return row[0] or 0

    def schema_version(self) -> SchemaVersion:
        with self._lock:
            row = self._conn.execute(
                "SELECT version, applied_at FROM schema_version"
                " ORDER BY version DESC LIMIT 1"
            ).fetchone()
            if row is None:
                return SchemaVersion(0, _utcnow())
            return SchemaVersion(row[0], _dt(row[1]))

    def table_names(self) -> set[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT name FROM sqlite_master WHERE type = 'table'"
                " AND name NOT LIKE 'sqlite_%'"
            ).fetchall()
            return {r[0] for r in rows}

    def reset(self) -> None:
        """Drop every table and re-run migrations (demo reseeding only)."""
        with self._lock:
            self._conn.execute("PRAGMA foreign_keys = OFF")
            try:
                with self._conn:
                    for table in self.table_names():
                        self._conn.execute(f"DROP TABLE {table}")
            finally:
                self._conn.execute("PRAGMA foreign_keys = ON")
            self.migrate()

    # -- users ---------------------------------------------------------------

    def insert_user(
        self,
        name: str,
        email: str,
        phone: str,
        password_digest: str,
        role: Role,
        status: Status | None = None,
    ) -> UserAccount:
        """Insert with the next surrogate id and a server timestamp.

        When `status` is omitted the schema default ('Not Verified') applies.
        """
        now = _utcnow().isoformat()
        with self._lock:
            try:
                with self._conn:
                    if status is None:
                        cur = self._conn.execute(
                            "INSERT INTO users (name, email, phone, password_digest,"
                            " role, created_at) VALUES (?, ?, ?, ?, ?, ?)",
                            (name, email, phone, password_digest, role.value, now),
                        )
                    else:
                        cur = self._conn.execute(
                            "INSERT INTO users (name, email, phone, password_digest,"
                            " role, status, created_at) VALUES (?, ?, ?, ?, ?, ?, ?)",
                            (name, email, phone, password_digest, role.value, status.value, now),
                        )
            except sqlite3.IntegrityError as exc:
                raise _integrity_error(exc) from exc
            return self.find_user(cur.lastrowid)  # type: ignore[return-value]

    def find_user(self, user_id: int) -> UserAccount | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM users WHERE id = ?", (user_id,)
            ).fetchone()
            return _user(row) if row else None

    def find_user_by_email(self, email: str) -> UserAccount | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM users WHERE email = ?", (email,)
            ).fetchone()
            return _user(row) if row else None

    def query_users(
        self, status: Status | None = None, role: Role | None = None
    ) -> list[UserAccount]:
        """Filtered users, newest first (created_at desc, id desc)."""
        sql = "SELECT * FROM users"
        clauses, params = [], []
        if status is not None:
            clauses.append("status = ?")
            params.append(status.value)
        if role is not None:
            clauses.append("role = ?")
            params.append(role.value)
        if clauses:
            sql += " WHERE " + " AND ".join(clauses)
        sql += " ORDER BY created_at DESC, id DESC"
        with self._lock:
            return [_user(r) for r in self._conn.execute(sql, params).fetchall()]

    def mark_user_verified(self, user_id: int) -> UserAccount:
        """The only permitted user mutation; NotVerified -> Verified."""
        with self._lock:
            with self._conn:
                cur = self._conn.execute(
                    "UPDATE users SET status = ? WHERE id = ?",
                    (Status.VERIFIED.value, user_id),
                )
            if cur.rowcount == 0:
                raise NotFound(f"no user with id {user_id}")
            return self.find_user(user_id)  # type: ignore[return-value]

    def count_users(self) -> int:
        with self._lock:
            return self._conn.execute("SELECT COUNT(*) FROM users").fetchone()[0]

    # -- admins --------------------------------------------------------------

    def insert_admin(self, email: str, password_digest: str) -> AdminAccount:
        with self._lock:
            try:
                with self._conn:
                    cur = self._conn.execute(
                        "INSERT INTO admin (email, password_digest) VALUES (?, ?)",
                        (email, password_digest),
                    )
            except sqlite3.IntegrityError as exc:
                raise _integrity_error(exc) from exc
            return AdminAccount(cur.lastrowid, email, password_digest)

    def find_admin(self, admin_id: int) -> AdminAccount | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM admin WHERE id = ?", (admin_id,)
            ).fetchone()
            return _admin(row) if row else None

    def find_admin_by_email(self, email: str) -> AdminAccount | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM admin WHERE email = ?", (email,)
            ).fetchone()
            return _admin(row) if row else None

    def count_admins(self) -> int:
        with self._lock:
            return self._conn.execute("SELECT COUNT(*) FROM admin").fetchone()[0]

    # -- messages ------------------------------------------------------------

    def insert_message(self, from_user: int, to_user: int, body: str) -> Message:
        """Insert Unread with a server timestamp.

        Both endpoints must exist, differ, and carry opposite roles.
        """
        with self._lock:
            sender = self.find_user(from_user)
            recipient = self.find_user(to_user)
            if sender is None or recipient is None:
                raise InvariantViolation("message endpoints must be existing users")
            if from_user == to_user:
                raise InvariantViolation("message sender and recipient must differ")
            if sender.role == recipient.role:
                raise InvariantViolation("message endpoints must have opposite roles")
            with self._conn:
                cur = self._conn.execute(
                    "INSERT INTO messages (from_user, to_user, body, created_at)"
                    " VALUES (?, ?, ?, ?)",
                    (from_user, to_user, body, _utcnow().isoformat()),
                )
            return self.find_message(cur.lastrowid)  # type: ignore[return-value]

    def find_message(self, message_id: int) -> Message | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM messages WHERE id = ?", (message_id,)
            ).fetchone()
            return _message(row) if row else None

    def query_messages(self, to_user: int | None = None) -> list[Message]:
        """Messages newest first (created_at desc, id desc)."""
        sql = "SELECT * FROM messages"
        params = []
        if to_user is not None:
            sql += " WHERE to_user = ?"
            params.append(to_user)
        sql += " ORDER BY created_at DESC, id DESC"
        with self._lock:
            return [_message(r) for r in self._conn.execute(sql, params).fetchall()]

    def mark_message_read(self, message_id: int) -> bool:
        """Flip Unread -> Read; returns True only for the call that flipped.

        There is deliberately no path back to Unread.
        """
        with self._lock:
            if self.find_message(message_id) is None:
                raise NotFound(f"no message with id {message_id}")
            with self._conn:
                cur = self._conn.execute(
                    "UPDATE messages SET read_state = ? WHERE id = ? AND read_state = ?",
                    (ReadState.READ.value, message_id, ReadState.UNREAD.value),
                )
            return cur.rowcount == 1

    # -- reports -------------------------------------------------------------

    def insert_report(
        self, company_id: int, school_id: int, student_name: str, period: str, body: str
    ) -> Report:
        with self._lock:
            company = self.find_user(company_id)
            school = self.find_user(school_id)
            if company is None or company.role is not Role.COMPANY:
                raise InvariantViolation("report company_id must be a company account")
            if school is None or school.role is not Role.SCHOOL:
                raise InvariantViolation("report school_id must be a school account")
            with self._conn:
                cur = self._conn.execute(
                    "INSERT INTO reports (company_id, school_id, student_name,"
                    " period, body, created_at) VALUES (?, ?, ?, ?, ?, ?)",
                    (company_id, school_id, student_name, period, body, _utcnow().isoformat()),
                )
            return self.find_report(cur.lastrowid)  # type: ignore[return-value]

    def find_report(self, report_id: int) -> Report | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM reports WHERE id = ?", (report_id,)
            ).fetchone()
            return _report(row) if row else None

    def query_reports(self, school_id: int | None = None) -> list[Report]:
        """Reports newest first (created_at desc, id desc)."""
        sql = "SELECT * FROM reports"
        params = []
        if school_id is not None:
            sql += " WHERE school_id = ?"
            params.append(school_id)
        sql += " ORDER BY created_at DESC, id DESC"
        with self._lock:
            return [_report(r) for r in self._conn.execute(sql, params).fetchall()]

    # -- sessions ------------------------------------------------------------

    def insert_session(self, session: Session) -> Session:
        with self._lock:
            try:
                with self._conn:
                    self._conn.execute(
                        "INSERT INTO sessions (token, principal, kind, issued_at,"
                        " expires_at) VALUES (?, ?, ?, ?, ?)",
                        (
                            session.token,
                            session.principal,
                            session.kind.value,
                            session.issued_at.isoformat(),
                            session.expires_at.isoformat(),
                        ),
                    )
            except sqlite3.IntegrityError as exc:
                raise _integrity_error(exc) from exc
            return session

    def find_session(self, token: str) -> Session | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM sessions WHERE token = ?", (token,)
            ).fetchone()
            return _session(row) if row else None

    def delete_session(self, token: str) -> None:
        """Idempotent; deleting an unknown token is a no-op."""
        with self._lock:
            with self._conn:
                self._conn.execute("DELETE FROM sessions WHERE token = ?", (token,))

    # -- courses -------------------------------------------------------------

    def insert_courses(self, courses: list[Course]) -> int:
        """All-or-nothing batch insert; any duplicate code aborts the lot."""
        with self._lock:
            try:
                with self._conn:
                    self._conn.executemany(
                        "INSERT INTO courses (code, title, units, level, elective)"
                        " VALUES (?, ?, ?, ?, ?)",
                        [
                            (c.code, c.title, c.units, c.level, int(c.elective))
                            for c in courses
                        ],
                    )
            except sqlite3.IntegrityError as exc:
                raise _integrity_error(exc) from exc
            return len(courses)

    def query_courses(self, level: int | None = None) -> list[Course]:
        """Courses sorted by code."""
        sql = "SELECT * FROM courses"
        params = []
        if level is not None:
            sql += " WHERE level = ?"
            params.append(level)
        sql += " ORDER BY code"
        with self._lock:
            return [_course(r) for r in self._conn.execute(sql, params).fetchall()]

    def count_courses(self) -> int:
        with self._lock:
            return self._conn.execute("SELECT COUNT(*) FROM courses").fetchone()[0]


def open_store(path: str | Path = MEMORY_PATH) -> Store:
    """Open (creating if needed) and migrate a database.

    ':memory:' selects the in-memory mode; anything else is a file path that
    must live in a writable directory.
    """
    path = str(path)
    try:
        conn = sqlite3.connect(path, check_same_thread=False)
    except sqlite3.Error as exc:
        raise IoError(f"cannot open database at {path}: {exc}") from exc
    conn.row_factory = sqlite3.Row
    store = Store(conn, path)
    try:
        # sqlite opens lazily; a bad file only fails on the first statement.
        conn.execute("PRAGMA foreign_keys = ON")
        store.migrate()
    except (MigrationFailed, sqlite3.Error) as exc:
        conn.close()
        detail = str(exc)
        if "not a database" in detail or "malformed" in detail:
            raise CorruptStore(f"{path} exists but is not a readable store") from exc
        if isinstance(exc, MigrationFailed):
            raise
        raise IoError(f"cannot open database at {path}: {exc}") from exc
    return store


def _integrity_error(exc: sqlite3.IntegrityError) -> Exception:
    if "UNIQUE" in str(exc):
        return UniqueViolation(str(exc))
    return InvariantViolation(str(exc))


def _user(row: sqlite3.Row) -> UserAccount:
    return UserAccount(
        id=row["id"],
        name=row["name"],
        email=row["email"],
        phone=row["phone"],
        password_digest=row["password_digest"],
        role=Role(row["role"]),
        status=Status(row["status"]),
        created_at=_dt(row["created_at"]),
    )


def _admin(row: sqlite3.Row) -> AdminAccount:
    return AdminAccount(id=row["id"], email=row["email"], password_digest=row["password_digest"])


def _message(row: sqlite3.Row) -> Message:
    return Message(
        id=row["id"],
        from_user=row["from_user"],
        to_user=row["to_user"],
        body=row["body"],
        read_state=ReadState(row["read_state"]),
        created_at=_dt(row["created_at"]),
    )


def _report(row: sqlite3.Row) -> Report:
    return Report(
        id=row["id"],
        company_id=row["company_id"],
        school_id=row["school_id"],
        student_name=row["student_name"],
        period=row["period"],
        body=row["body"],
        created_at=_dt(row["created_at"]),
    )


def _session(row: sqlite3.Row) -> Session:
    return Session(
        token=row["token"],
        principal=row["principal"],
        kind=SessionKind(row["kind"]),
        issued_at=_dt(row["issued_at"]),
        expires_at=_dt(row["expires_at"]),
    )


def _course(row: sqlite3.Row) -> Course:
    return Course(
        code=row["code"],
        title=row["title"],
        units=row["units"],
        level=row["level"],
        elective=bool(row["elective"]),
    )
