"""JSON-over-HTTP surface for auth, exchange, and curriculum operations.

Session tokens ride in the HTTP-only `liaison_session` cookie (browser UI)
or an `Authorization: Bearer` header (CLI, tests). Every non-2xx response
body is a single error document: {code, message, fields?}.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import serialize as wire
from .auth import AuthService
from .domain import Credentials, RegistrationForm, ReportForm, SessionKind
from .errors import LiaisonError
from .exchange import ExchangeService
from .store import Store

SESSION_COOKIE = "liaison_session"


class RegisterBody(BaseModel):
    name: str = ""
    email: str = ""
    phone: str = ""
    password: str = ""
    password_confirm: str = ""
    role: str = ""


class LoginBody(BaseModel):
    email: str = ""
    password: str = ""


class SendMessageBody(BaseModel):
    to_user: int | None = None
    body: str = ""


class ReportBody(BaseModel):
    school_id: int | None = None
    student_name: str = ""
    period: str = ""
    body: str = ""


def _error_response(status: int, code: str, message: str,
                    fields: dict[str, str] | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if fields:
        body["fields"] = fields
    return JSONResponse(status_code=status, content=body)


def _request_token(request: Request) -> str:
    header = request.headers.get("authorization", "")
    if header.lower().startswith("bearer "):
        return header[7:].strip()
    return request.cookies.get(SESSION_COOKIE, "")


def create_app(
    store: Store,
    *,
    auth: AuthService | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Wire the services over one store into an ASGI application."""
    auth = auth or AuthService(store)
    exchange = ExchangeService(store, auth)
    app = FastAPI(title="liaison", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(LiaisonError)
    def liaison_error(_request: Request, exc: LiaisonError) -> JSONResponse:
        return _error_response(exc.http_status, exc.code, exc.message, exc.fields)

    @app.exception_handler(RequestValidationError)
    def body_invalid(_request: Request, exc: RequestValidationError) -> JSONResponse:
        fields = {}
        for err in exc.errors():
            loc = [str(part) for part in err["loc"] if part != "body"]
            fields.setdefault(".".join(loc) or "body", err["type"])
        return _error_response(400, "validation_failed", "malformed request", fields)

    @app.exception_handler(StarletteHTTPException)
    def http_error(_request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = {404: "not_found", 405: "method_not_allowed"}.get(
            exc.status_code, f"http_{exc.status_code}"
        )
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    def unhandled(_request: Request, _exc: Exception) -> JSONResponse:
        return _error_response(500, "internal", "internal error")

    # -- health / auth -------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/register", status_code=201)
    def register(body: RegisterBody):
        account = auth.register(RegistrationForm(**body.model_dump()))
        return wire.serialize_user(account)

    @app.post("/api/login")
    def login(body: LoginBody):
        session = auth.login(Credentials(body.email, body.password))
        account = store.find_user(session.principal)
        return _session_response(session, {"user": wire.serialize_user(account)})

    @app.post("/api/admin/login")
    def admin_login(body: LoginBody):
        session = auth.admin_login(Credentials(body.email, body.password))
        admin = store.find_admin(session.principal)
        return _session_response(session, {"admin": wire.serialize_admin(admin)})

    def _session_response(session, extra: dict) -> JSONResponse:
        payload = {
            "token": session.token,
            "expires_at": wire.rfc3339(session.expires_at),
            **extra,
        }
        response = JSONResponse(payload)
        response.set_cookie(
            SESSION_COOKIE,
            session.token,
            httponly=True,
            samesite="lax",
            max_age=int((session.expires_at - session.issued_at).total_seconds()),
        )
        return response

    @app.post("/api/logout")
    def logout(request: Request):
        auth.logout(_request_token(request))
        response = JSONResponse({"status": "ok"})
        response.delete_cookie(SESSION_COOKIE)
        return response

    @app.get("/api/me")
    def me(request: Request):
        principal = auth.authenticate(_request_token(request))
        account = None
        if principal.kind is SessionKind.USER:
            account = store.find_user(principal.id)
        return wire.serialize_principal(principal, account)

    # -- admin verification ----------------------------------------------------

    @app.get("/api/admin/pending")
    def pending(request: Request):
        accounts = auth.list_pending(_request_token(request))
        return [wire.serialize_user(a) for a in accounts]

    @app.post("/api/admin/verify/{user_id}")
    def verify(request: Request, user_id: int):
        account = auth.verify_user(_request_token(request), user_id)
        return wire.serialize_user(account)

    # -- messaging ---------------------------------------------------------------

    @app.get("/api/recipients")
    def recipients(request: Request):
        found = exchange.list_recipients(_request_token(request))
        return [wire.serialize_recipient(r) for r in found]

    @app.post("/api/messages", status_code=201)
    def send_message(request: Request, body: SendMessageBody):
        message = exchange.send_message(_request_token(request), body.to_user, body.body)
        return wire.serialize_message(message)

    @app.get("/api/messages")
    def inbox(request: Request):
        entries = exchange.inbox(_request_token(request))
        return [wire.serialize_inbox_entry(e) for e in entries]

    @app.get("/api/messages/unread_count")
    def unread_count(request: Request):
        return {"count": exchange.unread_count(_request_token(request))}

    @app.get("/api/messages/{message_id}")
    def open_message(request: Request, message_id: int):
        message = exchange.open_message(_request_token(request), message_id)
        return wire.serialize_message(message)

    # -- reports -------------------------------------------------------------------

    @app.post("/api/reports", status_code=201)
    def submit_report(request: Request, body: ReportBody):
        report = exchange.submit_report(
            _request_token(request), ReportForm(**body.model_dump())
        )
        return wire.serialize_report(report)

    @app.get("/api/reports")
    def list_reports(request: Request):
        reports = exchange.list_reports(_request_token(request))
        return [wire.serialize_report(r) for r in reports]

    # -- curriculum ------------------------------------------------------------------

    @app.get("/api/courses")
    def courses(level: int | None = None):
        return [wire.serialize_course(c) for c in store.query_courses(level)]

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
