"""Digest registry backends.

Both backends expose the same observable semantics: ``store`` records the
current block/sequence number for a digest the first time it is seen and
reports whether it was already present; ``get_stored`` returns that first
height or 0; ``is_stored`` is its boolean form.

The journal backend emulates the on-chain registry at desk scale with an
append-only file of ``hex64 SP seq`` lines; the sequence number plays the
role of the block number, starting at 1.
"""

from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Protocol

from .errors import AnchorError
from .jsoncodec import AnchorSpec

_LINE_RE = re.compile(r"^([0-9a-f]{64}) (\d+)$")


class AnchorBackend(Protocol):
    def store(self, digest: bytes) -> bool: ...

    def get_stored(self, digest: bytes) -> int: ...

    def is_stored(self, digest: bytes) -> bool: ...

    def spec_for(self, digest: bytes) -> AnchorSpec: ...


class JournalAnchor:
    """File-backed registry; one record per line, first writer wins."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[bytes, int] = {}
        self._seq = 0
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            m = _LINE_RE.match(line)
            if not m:
                raise AnchorError(f"{self.path}:{lineno}: corrupt journal line")
            digest, seq = bytes.fromhex(m.group(1)), int(m.group(2))
            self._index.setdefault(digest, seq)
            self._seq = max(self._seq, seq)

    def store(self, digest: bytes) -> bool:
        _check_digest(digest)
        with self._lock:
            if digest in self._index:
                return True
            self._seq += 1
            try:
                with open(self.path, "a") as fh:
                    fh.write(f"{digest.hex()} {self._seq}\n")
            except OSError as exc:
                self._seq -= 1
                raise AnchorError(f"journal write failed: {exc}")
            self._index[digest] = self._seq
            return False

    def get_stored(self, digest: bytes) -> int:
        _check_digest(digest)
        return self._index.get(digest, 0)

    def is_stored(self, digest: bytes) -> bool:
        return self.get_stored(digest) > 0

    def spec_for(self, digest: bytes) -> AnchorSpec:
        return AnchorSpec(
            subsystem="local",
            network="journal",
            contract="BBcAnchor",
            contract_address=str(self.path),
            block=self.get_stored(digest),
        )


def _check_digest(digest: bytes) -> None:
    if len(digest) != 32:
        raise AnchorError("registry digests must be 32 bytes")


def open_anchor(target: str) -> AnchorBackend:
    """Path -> journal backend; http(s) URL -> EVM contract backend."""
    if target.startswith("http://") or target.startswith("https://"):
        from .evmanchor import EvmAnchor

        return EvmAnchor(target)
    return JournalAnchor(target)
