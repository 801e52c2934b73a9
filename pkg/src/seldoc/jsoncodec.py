"""JSON document representation and lossless conversion to the tree model.

A document object maps member names to string values (disclosed leaves),
nested objects (sub-containers), or ``digestN`` members holding the hex
digest of a hidden part.  The reserved members ``salt``, ``algo``, ``sig``,
``pubkey`` and ``proof`` carry the leaf salts, the signature block and the
existence proof; they are not content and never enter the digest.

Canonical output uses two-space indentation and preserves content member
order (order is semantic: digests concatenate in document order).  The
``proof`` member, when present, is always last.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .digest import node_digest
from .errors import (
    AlreadyHidden,
    InvalidDigestHex,
    MissingSalt,
    ParseError,
    PathNotFound,
)
from .model import Container, DocNode, Hidden, Leaf, SignatureBlock

RESERVED = ("salt", "algo", "sig", "pubkey", "proof")

_POSITIONS = ("left", "right")


@dataclass(frozen=True)
class ProofStep:
    position: str  # "left" or "right": which side the carried digest joins on
    digest: bytes

    def __post_init__(self):
        if self.position not in _POSITIONS:
            raise ParseError(f"proof position must be left or right: {self.position!r}")
        if len(self.digest) != 32:
            raise ParseError("proof step digest must be 32 bytes")


@dataclass(frozen=True)
class AnchorSpec:
    subsystem: str
    network: str
    contract: str
    contract_address: str
    block: int

    def __post_init__(self):
        if self.subsystem not in ("local", "ethereum"):
            raise ParseError(f"unknown proof subsystem: {self.subsystem!r}")
        if not isinstance(self.block, int) or self.block < 0:
            raise ParseError("proof block must be a non-negative integer")


@dataclass(frozen=True)
class ProofObject:
    spec: AnchorSpec
    subtree: tuple = ()

    @classmethod
    def from_dict(cls, obj: dict) -> "ProofObject":
        if not isinstance(obj, dict) or "spec" not in obj:
            raise ParseError("proof object must contain a spec")
        spec = obj["spec"]
        try:
            anchor = AnchorSpec(
                subsystem=spec["subsystem"],
                network=spec["network"],
                contract=spec["contract"],
                contract_address=spec["contract_address"],
                block=spec["block"],
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed proof spec: {exc}")
        steps = []
        for step in obj.get("subtree", []):
            try:
                steps.append(ProofStep(step["position"], _parse_hex64(step["digest"])))
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed proof step: {exc}")
        return cls(anchor, tuple(steps))

    def to_dict(self) -> dict:
        return {
            "spec": {
                "subsystem": self.spec.subsystem,
                "network": self.spec.network,
                "contract": self.spec.contract,
                "contract_address": self.spec.contract_address,
                "block": self.spec.block,
            },
            "subtree": [
                {"position": s.position, "digest": s.digest.hex()} for s in self.subtree
            ],
        }


def _parse_hex64(value) -> bytes:
    if (
        not isinstance(value, str)
        or len(value) != 64
        or value.lower() != value
        or any(c not in "0123456789abcdef" for c in value)
    ):
        raise InvalidDigestHex(f"expected 64 lowercase hex chars, got {value!r}")
    return bytes.fromhex(value)


def _object_to_container(obj: dict, tag: str) -> Container:
    salts = obj.get("salt", {})
    if not isinstance(salts, dict):
        raise ParseError('"salt" member must be an object')

    children = []
    used_salts = set()
    for name, value in obj.items():
        if name in RESERVED:
            continue
        if name.startswith("digest"):
            children.append(Hidden(_parse_hex64(value)))
        elif isinstance(value, str):
            if name not in salts:
                raise MissingSalt(f"disclosed leaf {name!r} has no salt entry")
            children.append(Leaf(name, salts[name], value))
            used_salts.add(name)
        elif isinstance(value, dict):
            children.append(_object_to_container(value, name))
        elif isinstance(value, list):
            raise ParseError(f"arrays are not valid document content ({name!r})")
        else:
            raise ParseError(f"member {name!r} has unsupported value {value!r}")

    stray = set(salts) - used_salts
    if stray:
        raise ParseError(f"salt entries without a disclosed leaf: {sorted(stray)}")

    sig = _sig_from_members(obj)
    if not children:
        raise ParseError(f"object {tag!r} has no content members")
    return Container(tag, tuple(children), sig)


def _sig_from_members(obj: dict) -> SignatureBlock | None:
    present = [k for k in ("algo", "sig", "pubkey") if k in obj]
    if not present:
        return None
    if len(present) != 3:
        raise ParseError(f"signature members must appear together, got only {present}")
    from .model import ALGORITHM_REGISTRY

    if obj["algo"] not in ALGORITHM_REGISTRY:
        raise ParseError(f"unknown signature algorithm: {obj['algo']!r}")
    try:
        sig = bytes.fromhex(obj["sig"])
        pubkey = bytes.fromhex(obj["pubkey"])
    except (ValueError, TypeError):
        raise ParseError("sig/pubkey members must be hex strings")
    try:
        return SignatureBlock(obj["algo"], sig, pubkey)
    except Exception as exc:
        raise ParseError(str(exc))


def json_to_tree(text: str, root_tag: str = "document"):
    """Parse document JSON; returns ``(tree, proof_or_None)``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    if not isinstance(obj, dict):
        raise ParseError("document JSON must be object-rooted")
    proof = ProofObject.from_dict(obj["proof"]) if "proof" in obj else None
    return _object_to_container(obj, root_tag), proof


def plain_json_to_tree(text: str, root_tag: str = "document") -> Container:
    """Build a tree from plain issuance JSON (no salts yet): fresh salt per leaf."""
    from .model import generate_salt

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    if not isinstance(obj, dict):
        raise ParseError("document JSON must be object-rooted")

    def build(obj: dict, tag: str) -> Container:
        children = []
        for name, value in obj.items():
            if name in RESERVED or name.startswith("digest"):
                raise ParseError(f"member name {name!r} is reserved")
            if isinstance(value, str):
                children.append(Leaf(name, generate_salt(), value))
            elif isinstance(value, dict):
                children.append(build(value, name))
            else:
                raise ParseError(f"member {name!r} must be a string or object")
        if not children:
            raise ParseError(f"object {tag!r} has no content members")
        return Container(tag, tuple(children))

    return build(obj, root_tag)


def _container_to_object(c: Container) -> dict:
    obj: dict = {}
    salts: dict = {}
    hidden_no = 0
    for child in c.children:
        if not isinstance(child, Hidden) and (
            child.tag in RESERVED or child.tag.startswith("digest")
        ):
            raise ParseError(f"member name {child.tag!r} is reserved in JSON form")
        if isinstance(child, Hidden):
            hidden_no += 1
            obj[f"digest{hidden_no}"] = child.digest.hex()
        elif isinstance(child, Leaf):
            obj[child.tag] = child.text
            salts[child.tag] = child.salt
        else:
            obj[child.tag] = _container_to_object(child)
    if salts:
        obj["salt"] = salts
    if c.sig is not None:
        obj["algo"] = c.sig.algo
        obj["sig"] = c.sig.sig.hex()
        obj["pubkey"] = c.sig.pubkey.hex()
    return obj


def tree_to_json(root: DocNode, proof: ProofObject | None = None) -> str:
    if not isinstance(root, Container):
        raise ParseError("document root must be a container")
    obj = _container_to_object(root)
    if proof is not None:
        obj["proof"] = proof.to_dict()
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _redact_one(c: Container, path: list[str], full: str) -> Container:
    head, rest = path[0], path[1:]
    children = list(c.children)
    for i, child in enumerate(children):
        if isinstance(child, Hidden):
            continue
        if child.tag != head:
            continue
        if rest:
            if not isinstance(child, Container):
                raise PathNotFound(f"path {full!r} descends through a leaf")
            children[i] = _redact_one(child, rest, full)
        else:
            children[i] = Hidden(node_digest(child))
        return Container(c.tag, tuple(children), c.sig)
    if not rest and head.startswith("digest"):
        raise AlreadyHidden(f"member {head!r} is already a digest placeholder")
    raise PathNotFound(f"no disclosed member {head!r} for path {full!r}")


def redact(text: str, paths: list[str]) -> str:
    """Replace each dotted-path member by its digest; document digest is unchanged."""
    tree, proof = json_to_tree(text)
    for path in paths:
        parts = path.split(".")
        tree = _redact_one(tree, parts, path)
    return tree_to_json(tree, proof)
