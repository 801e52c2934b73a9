"""ECDSA P-256 key handling and container signing.

The message signed is the 32-byte unsigned container digest itself (it is
already a SHA-256 output, so no further hashing happens inside signing).
Nonces are deterministic, so signing the same container with the same key
yields identical signature bytes.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from pathlib import Path

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed,
    decode_dss_signature,
    encode_dss_signature,
)

from .digest import container_digest
from .errors import SeldocError, UnregisteredAlgorithm
from .model import ALGORITHM_REGISTRY, Container, SignatureBlock

_CURVE = ec.SECP256R1()
_PREHASHED = ec.ECDSA(Prehashed(hashes.SHA256()), deterministic_signing=True)


class Verdict(enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    UNSIGNED = "unsigned"


@dataclass(frozen=True)
class KeyPair:
    private: bytes  # 32-byte scalar
    public: bytes  # 65-byte uncompressed SEC1

    @classmethod
    def from_private_bytes(cls, private: bytes) -> "KeyPair":
        if len(private) != 32:
            raise SeldocError("private key must be 32 bytes")
        sk = ec.derive_private_key(int.from_bytes(private, "big"), _CURVE)
        pub = sk.public_key().public_bytes(
            serialization.Encoding.X962, serialization.PublicFormat.UncompressedPoint
        )
        return cls(private, pub)


def keygen() -> KeyPair:
    sk = ec.generate_private_key(_CURVE)
    private = sk.private_numbers().private_value.to_bytes(32, "big")
    return KeyPair.from_private_bytes(private)


def save_keypair(pair: KeyPair, path: str | Path) -> None:
    """Write the private key hex to ``path`` (owner-only) and pubkey to ``path + .pub``."""
    path = Path(path)
    path.write_text(pair.private.hex() + "\n")
    os.chmod(path, 0o600)
    Path(str(path) + ".pub").write_text(pair.public.hex() + "\n")


def load_keypair(path: str | Path) -> KeyPair:
    text = Path(path).read_text().strip()
    return KeyPair.from_private_bytes(bytes.fromhex(text))


def sign_container(c: Container, key: KeyPair, algo: str = "ecdsa-p256v1") -> Container:
    if c.sig is not None:
        raise SeldocError("container is already signed")
    if algo not in ALGORITHM_REGISTRY:
        raise UnregisteredAlgorithm(f"unknown signature algorithm: {algo!r}")
    message = container_digest(c)
    sk = ec.derive_private_key(int.from_bytes(key.private, "big"), _CURVE)
    der = sk.sign(message, _PREHASHED)
    r, s = decode_dss_signature(der)
    raw = r.to_bytes(32, "big") + s.to_bytes(32, "big")
    return c.with_sig(SignatureBlock(algo, raw, key.public))


def verify_container(c: Container) -> Verdict:
    """Check the container's signature against the digest of whatever is disclosed."""
    if c.sig is None:
        return Verdict.UNSIGNED
    message = container_digest(c.without_sig())
    r = int.from_bytes(c.sig.sig[:32], "big")
    s = int.from_bytes(c.sig.sig[32:], "big")
    try:
        pub = ec.EllipticCurvePublicKey.from_encoded_point(_CURVE, c.sig.pubkey)
        pub.verify(encode_dss_signature(r, s), message, _PREHASHED)
    except (InvalidSignature, ValueError):
        return Verdict.INVALID
    return Verdict.VALID
