"""EVM-backed digest registry client (JSON-RPC).

Reads go through ``eth_call`` against the registry contract; writes send a
signed legacy transaction invoking ``store``.  Configuration comes from the
constructor or the environment: ``ANCHOR_URL`` (endpoint), ``ANCHOR_CONTRACT``
(deployed registry address), ``ANCHOR_PRIVKEY`` (hex key that signs store
transactions).
"""

from __future__ import annotations

import os
import time

import requests

from ._eth import keccak256, privkey_to_address, sign_legacy_tx
from .errors import AnchorError
from .jsoncodec import AnchorSpec

_SEL_GET_STORED = keccak256(b"getStored(uint256)")[:4]
_SEL_IS_STORED = keccak256(b"isStored(uint256)")[:4]
_SEL_STORE = keccak256(b"store(uint256)")[:4]

_STORE_GAS = 100_000


class EvmAnchor:
    def __init__(
        self,
        url: str | None = None,
        contract_address: str | None = None,
        privkey: str | None = None,
        network: str = "dev",
        timeout: float = 10.0,
    ):
        self.url = url or os.environ.get("ANCHOR_URL")
        if not self.url:
            raise AnchorError("no JSON-RPC endpoint (set ANCHOR_URL)")
        self.contract_address = contract_address or os.environ.get("ANCHOR_CONTRACT")
        if not self.contract_address:
            raise AnchorError("no contract address (set ANCHOR_CONTRACT)")
        privkey = privkey or os.environ.get("ANCHOR_PRIVKEY")
        self._privkey = bytes.fromhex(privkey.removeprefix("0x")) if privkey else None
        self.network = network
        self.timeout = timeout
        self._rpc_id = 0

    def _rpc(self, method: str, params: list):
        self._rpc_id += 1
        try:
            resp = requests.post(
                self.url,
                json={
                    "jsonrpc": "2.0",
                    "id": self._rpc_id,
                    "method": method,
                    "params": params,
                },
                timeout=self.timeout,
            )
            resp.raise_for_status()
            body = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise AnchorError(f"JSON-RPC {method} failed: {exc}")
        if "error" in body:
            raise AnchorError(f"JSON-RPC {method} error: {body['error']}")
        return body["result"]

    def _call(self, selector: bytes, digest: bytes) -> int:
        data = "0x" + (selector + digest.rjust(32, b"\x00")).hex()
        result = self._rpc(
            "eth_call", [{"to": self.contract_address, "data": data}, "latest"]
        )
        return int(result, 16) if result and result != "0x" else 0

    def get_stored(self, digest: bytes) -> int:
        return self._call(_SEL_GET_STORED, digest)

    def is_stored(self, digest: bytes) -> bool:
        return self._call(_SEL_IS_STORED, digest) != 0

    def store(self, digest: bytes) -> bool:
        if self.is_stored(digest):
            return True
        if self._privkey is None:
            raise AnchorError("no signing key for store (set ANCHOR_PRIVKEY)")
        chain_id = int(self._rpc("eth_chainId", []), 16)
        sender = "0x" + privkey_to_address(self._privkey).hex()
        nonce = int(self._rpc("eth_getTransactionCount", [sender, "pending"]), 16)
        gas_price = int(self._rpc("eth_gasPrice", []), 16)
        tx = sign_legacy_tx(
            self._privkey,
            nonce=nonce,
            gas_price=gas_price,
            gas=_STORE_GAS,
            to=bytes.fromhex(self.contract_address.removeprefix("0x")),
            value=0,
            data=_SEL_STORE + digest.rjust(32, b"\x00"),
            chain_id=chain_id,
        )
        tx_hash = self._rpc("eth_sendRawTransaction", ["0x" + tx.hex()])
        self._wait_for_receipt(tx_hash)
        return False

    def _wait_for_receipt(self, tx_hash: str, attempts: int = 50) -> None:
        for _ in range(attempts):
            receipt = self._rpc("eth_getTransactionReceipt", [tx_hash])
            if receipt is not None:
                if int(receipt.get("status", "0x1"), 16) != 1:
                    raise AnchorError(f"store transaction reverted: {tx_hash}")
                return
            time.sleep(0.1)
        raise AnchorError(f"store transaction not mined: {tx_hash}")

    def spec_for(self, digest: bytes) -> AnchorSpec:
        return AnchorSpec(
            subsystem="ethereum",
            network=self.network,
            contract="BBcAnchor",
            contract_address=self.contract_address,
            block=self.get_stored(digest),
        )
