"""Issuance and verification workflows.

``register_batch`` commits a batch of signed documents to the registry in
one Merkle root and embeds a per-document existence proof.  ``verify_document``
needs only the document text and a read handle on the registry: it recomputes
the signed-document digest from whatever is disclosed, folds the proof to a
root, and checks every disclosed signature.  No issuer involvement and no
registry writes happen during verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .anchor import AnchorBackend
from .digest import node_digest
from .errors import ParseError
from .jsoncodec import ProofObject, json_to_tree, tree_to_json
from .merkle import build_batch, fold_proof, prove
from .model import Container, Hidden
from .signing import Verdict, verify_container


@dataclass
class SignatureCheck:
    path: str  # dotted member path; "" for the root stanza
    verdict: Verdict


@dataclass
class ProofCheck:
    root: bytes
    anchored: bool
    block: int


@dataclass
class VerificationReport:
    signatures: list = field(default_factory=list)
    proof: ProofCheck | None = None
    reasons: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.reasons

    def to_dict(self) -> dict:
        return {
            "overall": "accepted" if self.accepted else "rejected",
            "signatures": [
                {"path": s.path or "(root)", "verdict": s.verdict.value}
                for s in self.signatures
            ],
            "proof": None
            if self.proof is None
            else {
                "root": self.proof.root.hex(),
                "anchored": self.proof.anchored,
                "block": self.proof.block,
            },
            "reasons": list(self.reasons),
        }

    def human_text(self) -> str:
        lines = []
        for s in self.signatures:
            lines.append(f"signature {s.path or '(root)'}: {s.verdict.value}")
        if self.proof is None:
            lines.append("proof: absent")
        elif self.proof.anchored:
            lines.append(
                f"proof: root {self.proof.root.hex()} anchored at block {self.proof.block}"
            )
        else:
            lines.append(f"proof: root {self.proof.root.hex()} NOT anchored")
        lines.append("overall: " + ("accepted" if self.accepted else "rejected"))
        for reason in self.reasons:
            lines.append(f"  reason: {reason}")
        return "\n".join(lines)


def register_batch(docs: list[str], backend: AnchorBackend) -> list[str]:
    """Anchor a batch under one Merkle root; returns documents with proofs embedded."""
    trees = []
    for i, text in enumerate(docs):
        tree, _ = json_to_tree(text)
        if tree.sig is None:
            raise ParseError(f"document {i} has no root signature")
        trees.append(tree)

    leaves = [node_digest(tree) for tree in trees]
    batch = build_batch(leaves)
    backend.store(batch.root)
    spec = backend.spec_for(batch.root)

    out = []
    for i, tree in enumerate(trees):
        proof = ProofObject(spec=spec, subtree=prove(batch, i))
        out.append(tree_to_json(tree, proof))
    return out


def _collect_signature_checks(node, path: str, out: list) -> None:
    if not isinstance(node, Container):
        return
    if node.sig is not None:
        out.append(SignatureCheck(path, verify_container(node)))
    for child in node.children:
        if isinstance(child, Container):
            child_path = child.tag if not path else f"{path}.{child.tag}"
            _collect_signature_checks(child, child_path, out)


def verify_document(text: str, backend: AnchorBackend) -> VerificationReport:
    report = VerificationReport()
    try:
        tree, proof = json_to_tree(text)
    except ParseError as exc:
        report.reasons.append(f"parse error: {exc}")
        return report

    _collect_signature_checks(tree, "", report.signatures)
    for check in report.signatures:
        if check.verdict is Verdict.INVALID:
            report.reasons.append(f"invalid signature at {check.path or '(root)'}")

    if proof is not None:
        leaf = node_digest(tree)
        root = fold_proof(leaf, proof.subtree)
        block = backend.get_stored(root)
        report.proof = ProofCheck(root=root, anchored=block > 0, block=block)
        if block == 0:
            report.reasons.append("merkle root not anchored in registry")
    return report
