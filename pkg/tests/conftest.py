import pytest

from quinticverify.catalog import load_entries
from quinticverify.groups import closure


class CatalogState:
    """Shared parse/closure results so the heavy entries compute once."""

    def __init__(self):
        self.entries = load_entries()
        self.by_id = {str(e.id): e for e in self.entries}
        self._polys = {}
        self._gens = {}
        self._groups = {}
        self.closure_seconds = {}

    def numbered(self):
        return [e for e in self.entries if isinstance(e.id, int)]

    def poly(self, entry_id):
        key = str(entry_id)
        if key not in self._polys:
            self._polys[key] = self.by_id[key].polynomial()
        return self._polys[key]

    def gens(self, entry_id):
        key = str(entry_id)
        if key not in self._gens:
            self._gens[key] = self.by_id[key].generators()
        return self._gens[key]

    def group(self, entry_id):
        key = str(entry_id)
        if key not in self._groups:
            import time

            started = time.monotonic()
            self._groups[key] = closure(self.gens(entry_id))
            self.closure_seconds[key] = time.monotonic() - started
        return self._groups[key]


@pytest.fixture(scope="session")
def catalog():
    return CatalogState()
