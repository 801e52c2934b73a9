"""Minimal Ethereum wire helpers: Keccak-256, RLP, legacy tx signing.

Self-contained because the only external crypto dependency of this package
is ``cryptography``, which provides neither Keccak nor recoverable
secp256k1 signatures.  Used solely by the EVM anchor backend; throughput is
a handful of calls per registration, so pure Python is fine.
"""

from __future__ import annotations

from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed,
    decode_dss_signature,
)

# --- Keccak-256 (original padding 0x01, rate 1088) ---

_ROUND_CONSTANTS = [
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
]

_ROTATIONS = [
    [0, 36, 3, 41, 18],
    [1, 44, 10, 45, 2],
    [62, 6, 43, 15, 61],
    [28, 55, 25, 21, 56],
    [27, 20, 39, 8, 14],
]

_MASK = (1 << 64) - 1


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (64 - n))) & _MASK


def _keccak_f(state: list) -> None:
    for rc in _ROUND_CONSTANTS:
        # theta
        c = [state[x][0] ^ state[x][1] ^ state[x][2] ^ state[x][3] ^ state[x][4] for x in range(5)]
        d = [c[(x - 1) % 5] ^ _rotl(c[(x + 1) % 5], 1) for x in range(5)]
        for x in range(5):
            for y in range(5):
                state[x][y] ^= d[x]
        # rho + pi
        b = [[0] * 5 for _ in range(5)]
        for x in range(5):
            for y in range(5):
                b[y][(2 * x + 3 * y) % 5] = _rotl(state[x][y], _ROTATIONS[x][y])
        # chi
        for x in range(5):
            for y in range(5):
                state[x][y] = b[x][y] ^ ((~b[(x + 1) % 5][y]) & b[(x + 2) % 5][y])
        # iota
        state[0][0] ^= rc


def keccak256(data: bytes) -> bytes:
    rate = 136
    padded = bytearray(data)
    pad_len = rate - (len(padded) % rate)
    padded += b"\x01" + b"\x00" * (pad_len - 2) + b"\x80" if pad_len >= 2 else b"\x81"
    state = [[0] * 5 for _ in range(5)]
    for block_start in range(0, len(padded), rate):
        block = padded[block_start : block_start + rate]
        for i in range(rate // 8):
            lane = int.from_bytes(block[8 * i : 8 * i + 8], "little")
            state[i % 5][i // 5] ^= lane
        _keccak_f(state)
    out = bytearray()
    for i in range(4):  # 32 bytes = 4 lanes
        out += state[i % 5][i // 5].to_bytes(8, "little")
    return bytes(out)


# --- RLP ---


def rlp_encode(item) -> bytes:
    if isinstance(item, int):
        if item == 0:
            payload = b""
        else:
            payload = item.to_bytes((item.bit_length() + 7) // 8, "big")
        return rlp_encode(payload)
    if isinstance(item, (bytes, bytearray)):
        item = bytes(item)
        if len(item) == 1 and item[0] < 0x80:
            return item
        return _rlp_length(len(item), 0x80) + item
    if isinstance(item, (list, tuple)):
        payload = b"".join(rlp_encode(sub) for sub in item)
        return _rlp_length(len(payload), 0xC0) + payload
    raise TypeError(f"cannot RLP-encode {item!r}")


def _rlp_length(length: int, offset: int) -> bytes:
    if length < 56:
        return bytes([offset + length])
    enc = length.to_bytes((length.bit_length() + 7) // 8, "big")
    return bytes([offset + 55 + len(enc)]) + enc


# --- secp256k1 recoverable signatures ---

_P = 2**256 - 2**32 - 977
_N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
_GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
_GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8


def _inv(a: int, m: int) -> int:
    return pow(a, -1, m)


def _point_add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2 and (y1 + y2) % _P == 0:
        return None
    if p1 == p2:
        lam = (3 * x1 * x1) * _inv(2 * y1, _P) % _P
    else:
        lam = (y2 - y1) * _inv(x2 - x1, _P) % _P
    x3 = (lam * lam - x1 - x2) % _P
    y3 = (lam * (x1 - x3) - y1) % _P
    return (x3, y3)


def _point_mul(k: int, point):
    result = None
    addend = point
    while k:
        if k & 1:
            result = _point_add(result, addend)
        addend = _point_add(addend, addend)
        k >>= 1
    return result


def _recover(msg_hash: bytes, r: int, s: int, recid: int):
    x = r
    y_sq = (pow(x, 3, _P) + 7) % _P
    y = pow(y_sq, (_P + 1) // 4, _P)
    if y * y % _P != y_sq:
        return None
    if y % 2 != recid % 2:
        y = _P - y
    z = int.from_bytes(msg_hash, "big")
    r_inv = _inv(r, _N)
    point = _point_add(
        _point_mul(s * r_inv % _N, (x, y)),
        _point_mul((-z * r_inv) % _N, (_GX, _GY)),
    )
    return point


def privkey_to_pubkey(privkey: bytes) -> bytes:
    """Uncompressed SEC1 public key on secp256k1."""
    sk = ec.derive_private_key(int.from_bytes(privkey, "big"), ec.SECP256K1())
    return sk.public_key().public_bytes(
        serialization.Encoding.X962, serialization.PublicFormat.UncompressedPoint
    )


def privkey_to_address(privkey: bytes) -> bytes:
    pub = privkey_to_pubkey(privkey)
    return keccak256(pub[1:])[-20:]


def sign_recoverable(msg_hash: bytes, privkey: bytes) -> tuple:
    """Deterministic low-s signature with recovery id; returns (r, s, recid)."""
    sk = ec.derive_private_key(int.from_bytes(privkey, "big"), ec.SECP256K1())
    der = sk.sign(
        msg_hash, ec.ECDSA(Prehashed(hashes.SHA256()), deterministic_signing=True)
    )
    r, s = decode_dss_signature(der)
    if s > _N // 2:
        s = _N - s
    pub = privkey_to_pubkey(privkey)
    expected = (int.from_bytes(pub[1:33], "big"), int.from_bytes(pub[33:], "big"))
    for recid in (0, 1):
        if _recover(msg_hash, r, s, recid) == expected:
            return r, s, recid
    raise ValueError("could not determine recovery id")


def sign_legacy_tx(
    privkey: bytes,
    nonce: int,
    gas_price: int,
    gas: int,
    to: bytes,
    value: int,
    data: bytes,
    chain_id: int,
) -> bytes:
    """EIP-155 signed legacy transaction, RLP-encoded."""
    unsigned = [nonce, gas_price, gas, to, value, data, chain_id, 0, 0]
    sighash = keccak256(rlp_encode(unsigned))
    r, s, recid = sign_recoverable(sighash, privkey)
    v = chain_id * 2 + 35 + recid
    return rlp_encode([nonce, gas_price, gas, to, value, data, v, r, s])
