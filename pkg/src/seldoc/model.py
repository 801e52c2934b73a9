"""Document tree model: disclosed leaves, containers, and hidden digests.

A document is an ordered tree.  Disclosed leaves carry a per-leaf salt so
that hiding a leaf behind its digest does not expose a guessable preimage.
Hidden parts are plain 32-byte digests.  Containers may carry a signature
block covering the unsigned digest of their contents.
"""

from __future__ import annotations

import re
import secrets
import string
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import EncodingError, MalformedSignatureBlock, UnregisteredAlgorithm

DIGEST_LEN = 32

# name -> registry number; the number is encoded as 2-byte big-endian when
# it enters a digest computation.
ALGORITHM_REGISTRY = {
    "ecdsa-p256v1": 1,
}

# Practical ASCII subset of the XML Name production.
_TAG_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")

SALT_ALPHABET = string.ascii_letters + string.digits + ".!@-"
SALT_LENGTH = 20

_SALT_OK = set(chr(c) for c in range(0x21, 0x7F)) | {" "}
_SALT_OK -= {'"', "&"}


def algorithm_id(algo: str) -> int:
    try:
        return ALGORITHM_REGISTRY[algo]
    except KeyError:
        raise UnregisteredAlgorithm(f"unknown signature algorithm: {algo!r}")


def generate_salt() -> str:
    """20 characters from a 64-character alphabet, cryptographically random."""
    return "".join(secrets.choice(SALT_ALPHABET) for _ in range(SALT_LENGTH))


def _check_tag(tag: str) -> None:
    if not _TAG_RE.match(tag):
        raise EncodingError(f"invalid element tag: {tag!r}")


def _check_salt(salt: str) -> None:
    if not 1 <= len(salt) <= 64 or any(c not in _SALT_OK for c in salt):
        raise EncodingError(f"invalid salt: {salt!r}")


@dataclass(frozen=True)
class SignatureBlock:
    """Signature attributes attached to a container stanza."""

    algo: str
    sig: bytes
    pubkey: bytes

    def __post_init__(self):
        algo_id = algorithm_id(self.algo)
        if self.algo == "ecdsa-p256v1":
            if len(self.sig) != 64:
                raise MalformedSignatureBlock(
                    f"ecdsa-p256v1 signature must be 64 bytes, got {len(self.sig)}"
                )
            if len(self.pubkey) != 65 or self.pubkey[0] != 0x04:
                raise MalformedSignatureBlock(
                    "ecdsa-p256v1 public key must be 65 bytes of uncompressed SEC1"
                )
        object.__setattr__(self, "_algo_id", algo_id)

    @property
    def algo_id(self) -> int:
        return self._algo_id


@dataclass(frozen=True)
class Leaf:
    """Disclosed leaf element: tag, salt, and text content."""

    tag: str
    salt: str
    text: str

    def __post_init__(self):
        _check_tag(self.tag)
        _check_salt(self.salt)


@dataclass(frozen=True)
class Container:
    """Ordered sequence of child nodes, optionally signed."""

    tag: str
    children: tuple
    sig: Optional[SignatureBlock] = None

    def __post_init__(self):
        _check_tag(self.tag)
        children = tuple(self.children)
        if not children:
            raise EncodingError("container must have at least one child")
        for child in children:
            if not isinstance(child, (Leaf, Container, Hidden)):
                raise EncodingError(f"invalid child node: {child!r}")
        object.__setattr__(self, "children", children)

    def with_sig(self, sig: SignatureBlock) -> "Container":
        return Container(self.tag, self.children, sig)

    def without_sig(self) -> "Container":
        return Container(self.tag, self.children, None)


@dataclass(frozen=True)
class Hidden:
    """Placeholder carrying the digest of a non-disclosed part."""

    digest: bytes

    def __post_init__(self):
        if len(self.digest) != DIGEST_LEN:
            raise EncodingError(
                f"hidden digest must be {DIGEST_LEN} bytes, got {len(self.digest)}"
            )


DocNode = Union[Leaf, Container, Hidden]
