"""Industry curriculum liaison service.

Verified schools and companies exchange curriculum suggestions with read
receipts and student industrial-training reports, moderated by an admin
verification queue, over a JSON HTTP API backed by an embedded store.
"""

from .api import create_app
from .auth import AuthService
from .curriculum import Catalogue, load_fixture
from .exchange import ExchangeService
from .store import Store, open_store

__version__ = "0.1.0"

__all__ = [
    "AuthService",
    "Catalogue",
    "ExchangeService",
    "Store",
    "create_app",
    "load_fixture",
    "open_store",
    "__version__",
]
