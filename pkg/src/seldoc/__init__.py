"""Selective disclosure for signed structured documents.

Documents are ordered trees whose leaves carry per-leaf salts.  Any part
can be replaced by its digest without changing the digest of the signed
document, so a holder discloses only what a verifier needs.  Batches of
signed documents are committed under one Merkle root anchored in an
append-only digest registry (a local journal, or an EVM contract).
"""

from .anchor import JournalAnchor, open_anchor
from .digest import container_digest, leaf_digest, node_digest
from .jsoncodec import (
    AnchorSpec,
    ProofObject,
    ProofStep,
    json_to_tree,
    plain_json_to_tree,
    redact,
    tree_to_json,
)
from .merkle import MerkleBatch, build_batch, fold_proof, prove, verify_proof
from .model import Container, Hidden, Leaf, SignatureBlock, generate_salt
from .registrar import VerificationReport, register_batch, verify_document
from .signing import KeyPair, Verdict, keygen, sign_container, verify_container
from .xmlcodec import from_xml, to_xml

__all__ = [
    "AnchorSpec",
    "Container",
    "Hidden",
    "JournalAnchor",
    "KeyPair",
    "Leaf",
    "MerkleBatch",
    "ProofObject",
    "ProofStep",
    "SignatureBlock",
    "VerificationReport",
    "Verdict",
    "build_batch",
    "container_digest",
    "fold_proof",
    "from_xml",
    "generate_salt",
    "json_to_tree",
    "keygen",
    "leaf_digest",
    "node_digest",
    "open_anchor",
    "plain_json_to_tree",
    "prove",
    "redact",
    "register_batch",
    "sign_container",
    "to_xml",
    "tree_to_json",
    "verify_container",
    "verify_document",
    "verify_proof",
]
