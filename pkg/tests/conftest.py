import itertools

import pytest

from liaison.auth import AuthService, hash_password
from liaison.domain import Role, SessionKind, Status
from liaison.exchange import ExchangeService
from liaison.store import open_store

# Hashing is tuned down for tests that register or verify in bulk; the
# scheme and code path stay identical to production.
TEST_ITERATIONS = 2_000

# One precomputed digest for accounts bulk-inserted straight into the store.
SEEDED_PASSWORD = "seeded-password"
SEEDED_DIGEST = hash_password(SEEDED_PASSWORD, iterations=TEST_ITERATIONS)


@pytest.fixture
def store():
    handle = open_store()
    yield handle
    handle.close()


@pytest.fixture
def auth(store):
    return AuthService(store, hash_iterations=TEST_ITERATIONS)


@pytest.fixture
def exchange(store, auth):
    return ExchangeService(store, auth)


@pytest.fixture
def make_user(store):
    """Factory inserting accounts directly, skipping the registration flow."""
    counter = itertools.count(1)

    def make(role=Role.SCHOOL, status=Status.VERIFIED, name=None, email=None):
        n = next(counter)
        return store.insert_user(
            name=name or f"account {n:03d}",
            email=email or f"user{n}@example.org",
            phone="2348000000000",
            password_digest=SEEDED_DIGEST,
            role=role,
            status=status,
        )

    return make


@pytest.fixture
def user_token(auth):
    """Factory issuing a live session token for an account."""

    def issue(account):
        return auth.issue_session(SessionKind.USER, account.id).token

    return issue
