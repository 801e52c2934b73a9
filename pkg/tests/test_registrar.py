"""End-to-end issuance and verification workflows."""

import json
import random

import pytest

from seldoc.anchor import JournalAnchor
from seldoc.digest import node_digest
from seldoc.errors import ParseError
from seldoc.jsoncodec import json_to_tree, plain_json_to_tree, redact, tree_to_json
from seldoc.registrar import register_batch, verify_document
from seldoc.signing import Verdict, keygen, sign_container


@pytest.fixture
def issuer():
    return keygen()


def _make_doc(issuer, payload: dict) -> str:
    tree = plain_json_to_tree(json.dumps(payload))
    return tree_to_json(sign_container(tree, issuer))


@pytest.fixture
def four_docs(issuer):
    return [
        _make_doc(
            issuer,
            {
                "id": f"id-{i}",
                "name": f"holder {i}",
                "born": f"19{70 + i}-01-01",
                "address": f"{i} Example Way",
            },
        )
        for i in range(4)
    ]


class TestRegisterBatch:
    def test_four_docs_one_root(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        assert len(out) == 4
        roots = set()
        for text in out:
            report = verify_document(text, backend)
            assert report.accepted
            roots.add(report.proof.root)
        assert len(roots) == 1
        assert backend.get_stored(roots.pop()) == 1

    def test_single_doc_empty_subtree(self, issuer, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        doc = _make_doc(issuer, {"a": "x"})
        (out,) = register_batch([doc], backend)
        tree, proof = json_to_tree(out)
        assert proof.subtree == ()
        assert node_digest(tree) == proof_root(out)
        assert backend.is_stored(node_digest(tree))

    def test_three_docs_promotion_step(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs[:3], backend)
        _, proof = json_to_tree(out[2])
        assert len(proof.subtree) == 1
        assert proof.subtree[0].position == "left"

    def test_unsigned_doc_rejected(self, issuer, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        unsigned = tree_to_json(plain_json_to_tree('{"a": "x"}'))
        with pytest.raises(ParseError):
            register_batch([unsigned], backend)

    def test_spec_embeds_anchor_details(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        _, proof = json_to_tree(out[0])
        assert proof.spec.subsystem == "local"
        assert proof.spec.block == 1


def proof_root(text: str) -> bytes:
    from seldoc.merkle import fold_proof

    tree, proof = json_to_tree(text)
    return fold_proof(node_digest(tree), proof.subtree)


class TestVerifyDocument:
    def test_redacted_registered_doc_accepted(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        redacted = redact(out[0], ["id", "name", "address"])
        report = verify_document(redacted, backend)
        assert report.accepted
        assert report.proof.anchored and report.proof.block == 1
        assert all(s.verdict is Verdict.VALID for s in report.signatures)

    def test_tampered_value_rejected(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        obj = json.loads(out[1])
        obj["born"] = obj["born"][:-1] + "2"
        report = verify_document(json.dumps(obj), backend)
        assert not report.accepted
        assert any("signature" in r for r in report.reasons)
        assert any("anchored" in r for r in report.reasons)

    def test_unanchored_root_rejected(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        empty_backend = JournalAnchor(tmp_path / "other.db")
        report = verify_document(out[0], empty_backend)
        assert not report.accepted
        assert report.proof is not None and not report.proof.anchored
        assert all(s.verdict is Verdict.VALID for s in report.signatures)

    def test_signature_only_mode(self, issuer, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        doc = _make_doc(issuer, {"a": "x"})
        report = verify_document(doc, backend)
        assert report.accepted
        assert report.proof is None

    def test_proof_only_mode(self, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        tree = plain_json_to_tree('{"a": "x"}')
        backend.store(node_digest(tree))
        from seldoc.jsoncodec import ProofObject

        text = tree_to_json(tree, ProofObject(backend.spec_for(node_digest(tree))))
        report = verify_document(text, backend)
        assert report.accepted
        assert report.signatures == []
        assert report.proof.anchored

    def test_every_redaction_subset_accepted(self, four_docs, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        fields = ["id", "name", "born", "address"]
        for mask in range(16):
            paths = [fields[i] for i in range(4) if mask >> i & 1]
            report = verify_document(redact(out[2], paths), backend)
            assert report.accepted

    def test_parse_failure_reported(self, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        report = verify_document("not json", backend)
        assert not report.accepted

    def test_nested_signatures_reported_per_stanza(self, tmp_path):
        backend = JournalAnchor(tmp_path / "j.db")
        lecturer, registrar_key = keygen(), keygen()
        inner = sign_container(plain_json_to_tree('{"math": "A"}', root_tag="grades"), lecturer)
        from seldoc.model import Container, Leaf
        from seldoc.model import generate_salt

        outer = Container(
            "document", (Leaf("name", generate_salt(), "W"), inner)
        )
        signed = sign_container(outer, registrar_key)
        report = verify_document(tree_to_json(signed), backend)
        assert report.accepted
        assert {s.path for s in report.signatures} == {"", "grades"}

    def test_verification_is_read_only(self, four_docs, tmp_path):
        class ReadOnlyBackend(JournalAnchor):
            def store(self, digest):
                raise AssertionError("verification must not write to the registry")

        backend = JournalAnchor(tmp_path / "j.db")
        out = register_batch(four_docs, backend)
        reader = ReadOnlyBackend(tmp_path / "j.db")
        assert verify_document(out[0], reader).accepted
