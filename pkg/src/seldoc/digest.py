"""Digest computation over document trees.

The base hash is SHA-256.  A leaf is hashed over its canonical single-element
XML serialization; a container hashes the concatenation of its children's raw
32-byte digests; a hidden node *is* its digest.  Because a hidden node
contributes exactly the bytes its disclosed form would have contributed,
replacing any subtree by its digest leaves every ancestor digest unchanged.

All hash invocations go through ``base_hash`` so instrumentation (see
``count_hashes``) can observe how many digest calculations an operation
performs and at what concatenation width.
"""

from __future__ import annotations

import hashlib
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EncodingError
from .model import Container, DocNode, Hidden, Leaf

DIGEST_LEN = 32


@dataclass
class HashCounter:
    """Tally of base-hash invocations within a ``count_hashes`` block.

    ``weighted`` prices a hash over k concatenated digests at k/2 units and
    any other (leaf-serialization) hash at 1 unit, so a width-2 Merkle step
    costs exactly one unit.
    """

    calls: int = 0
    weighted: Fraction = field(default_factory=lambda: Fraction(0))

    def record(self, nbytes: int, combine: bool) -> None:
        self.calls += 1
        if combine:
            self.weighted += Fraction(nbytes, 2 * DIGEST_LEN)
        else:
            self.weighted += 1


_counters: list[HashCounter] = []


@contextmanager
def count_hashes():
    counter = HashCounter()
    _counters.append(counter)
    try:
        yield counter
    finally:
        _counters.remove(counter)


def base_hash(data: bytes, combine: bool = False) -> bytes:
    """SHA-256 of ``data``; ``combine`` marks a digest-concatenation input."""
    for counter in _counters:
        counter.record(len(data), combine)
    return hashlib.sha256(data).digest()


def escape_text(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def leaf_bytes(leaf: Leaf) -> bytes:
    """Canonical serialization hashed for a leaf: one element, one salt attribute."""
    return (
        f'<{leaf.tag} salt="{leaf.salt}">{escape_text(leaf.text)}</{leaf.tag}>'
    ).encode("utf-8")


def leaf_digest(leaf: Leaf) -> bytes:
    return base_hash(leaf_bytes(leaf))


def container_digest(c: Container) -> bytes:
    unsigned = base_hash(
        b"".join(node_digest(child) for child in c.children), combine=True
    )
    if c.sig is None:
        return unsigned
    sig = c.sig
    return base_hash(
        unsigned + sig.pubkey + sig.algo_id.to_bytes(2, "big") + sig.sig,
        combine=True,
    )


def node_digest(node: DocNode) -> bytes:
    if isinstance(node, Hidden):
        return node.digest
    if isinstance(node, Leaf):
        return leaf_digest(node)
    if isinstance(node, Container):
        return container_digest(node)
    raise EncodingError(f"not a document node: {node!r}")
