"""Command-line entry point: serve the API, provision admins, verify users,
load course fixtures, and seed the demo dataset.

Flags beat environment (`LIAISON_DB`, `LIAISON_LISTEN`) beat defaults.
Data goes to stdout, diagnostics to stderr; exit code 1 on any failure.
"""

from __future__ import annotations

import socket
import sys
from pathlib import Path

import click
import uvicorn

from .api import create_app
from .auth import AuthService
from .curriculum import default_fixture_path, load_fixture
from .errors import LiaisonError, NotFound, ValidationFailed
from .seed import seed_demo
from .store import MEMORY_PATH, Store, open_store

DEFAULT_LISTEN = "127.0.0.1:8080"

_db_option = click.option(
    "--db", envvar="LIAISON_DB", default=MEMORY_PATH, show_default=True,
    help="Database file path, or ':memory:'.",
)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _open(db: str) -> Store:
    try:
        return open_store(db)
    except LiaisonError as exc:
        _fail(exc.message)
        raise AssertionError("unreachable")


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit() or not 1 <= int(port_text) <= 65535:
        _fail(f"invalid listen address {listen!r}; expected host:port")
    return host, int(port_text)


@click.group()
def main():
    """Industry curriculum liaison service."""


@main.command()
@_db_option
@click.option(
    "--listen", envvar="LIAISON_LISTEN", default=DEFAULT_LISTEN, show_default=True,
    help="Bind address as host:port.",
)
@click.option(
    "--fixture", "fixture_path", default=None,
    help="Course fixture CSV; defaults to the packaged BMAS outline.",
)
@click.option(
    "--static", "static_dir", envvar="LIAISON_STATIC", default=None,
    help="Directory of built web UI to serve at /.",
)
def serve(db: str, listen: str, fixture_path: str | None, static_dir: str | None):
    """Run the HTTP service until interrupted."""
    host, port = _parse_listen(listen)
    store = _open(db)

    path = Path(fixture_path) if fixture_path else default_fixture_path()
    try:
        courses = load_fixture(path)
    except LiaisonError as exc:
        _fail(f"fixture {path}: {exc.message}")
    if store.count_courses() == 0:
        store.insert_courses(courses)
    else:
        click.echo("courses already present; skipping fixture import", err=True)

    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = "frontend/dist"

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind((host, port))
        probe.close()
    except OSError as exc:
        _fail(f"cannot bind {host}:{port}: {exc}")

    app = create_app(store, static_dir=static_dir)
    click.echo(f"listening on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.group()
def admin():
    """Administrator account management (CLI-only, no HTTP route)."""


@admin.command("create")
@click.argument("email")
@click.argument("password")
@_db_option
def admin_create(email: str, password: str, db: str):
    """Provision an administrator and print the new id."""
    store = _open(db)
    try:
        row = AuthService(store).create_admin(email, password)
    except ValidationFailed as exc:
        _fail(", ".join(exc.codes))
    except LiaisonError as exc:
        _fail(exc.message)
    click.echo(str(row.id))


@main.group()
def user():
    """User account management."""


@user.command("verify")
@click.argument("user_id", type=int)
@_db_option
def user_verify(user_id: int, db: str):
    """Mark a registered account Verified (idempotent)."""
    store = _open(db)
    if store.find_user(user_id) is None:
        _fail(f"no user with id {user_id}")
    try:
        store.mark_user_verified(user_id)
    except NotFound as exc:
        _fail(exc.message)
    click.echo("verified")


@main.group()
def fixture():
    """Curriculum fixture management."""


@fixture.command("load")
@click.argument("path")
@_db_option
def fixture_load(path: str, db: str):
    """Validate a course CSV and load it into the store."""
    store = _open(db)
    try:
        courses = load_fixture(path)
        count = store.insert_courses(courses)
    except LiaisonError as exc:
        _fail(exc.message)
    click.echo(f"loaded {count} courses")


@main.group()
def seed():
    """Demo data."""


@seed.command("demo")
@click.option("--force", is_flag=True, help="Reseed even if accounts exist (drops everything).")
@_db_option
def seed_demo_cmd(force: bool, db: str):
    """Seed the deterministic demo dataset and print its credentials."""
    store = _open(db)
    try:
        summary = seed_demo(store, force=force)
    except LiaisonError as exc:
        _fail(exc.message)
    click.echo(
        f"seeded {summary.accounts} accounts, {summary.messages} messages, "
        f"{summary.reports} reports"
    )
    for label, email, password in summary.credentials:
        click.echo(f"{label:8} {email:32} {password}")


if __name__ == "__main__":
    main()
