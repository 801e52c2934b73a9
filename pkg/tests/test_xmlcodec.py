"""XML stanza serialization and parsing."""

import pytest
from hypothesis import given, settings

from seldoc.digest import leaf_digest, node_digest
from seldoc.errors import InvalidDigestHex, ParseError, UnregisteredAlgorithm
from seldoc.model import Container, Hidden, Leaf, SignatureBlock
from seldoc.xmlcodec import from_xml, to_xml

from conftest import trees


def _signed(tree):
    return tree.with_sig(
        SignatureBlock("ecdsa-p256v1", bytes(range(64)), b"\x04" + bytes(64))
    )


class TestToXml:
    def test_canonical_leaf_and_attr_order(self, idcard_tree):
        signed = _signed(idcard_tree)
        text = to_xml(signed)
        assert text.startswith(
            '<document algo="ecdsa-p256v1" sig="000102'
        )
        assert '<id salt="rGheZ.V8hqDtFw4Hy!GG">4445 4558 1689</id>' in text
        assert "\n" not in text

    def test_hidden_nodes_become_digest_elements(self, idcard_tree):
        children = list(idcard_tree.children)
        for i in (0, 1, 3):  # hide id, name, address
            children[i] = Hidden(leaf_digest(children[i]))
        tree = Container("document", tuple(children))
        text = to_xml(tree)
        assert text.count("<digest>") == 3
        assert "<born" in text and "<public-key" in text
        assert "<id" not in text and "<name" not in text and "<address" not in text

    def test_single_hidden_child(self):
        d = bytes(range(32))
        tree = Container("document", (Hidden(d),))
        assert to_xml(tree) == f"<document><digest>{d.hex()}</digest></document>"

    def test_root_must_be_container(self):
        with pytest.raises(ParseError):
            to_xml(Leaf("a", "s", "x"))


class TestFromXml:
    def test_round_trip_signed(self, idcard_tree):
        signed = _signed(idcard_tree)
        assert from_xml(to_xml(signed)) == signed

    def test_invalid_digest_hex(self):
        with pytest.raises(InvalidDigestHex):
            from_xml("<document><digest>" + "zz" * 32 + "</digest></document>")

    def test_digest_wrong_length(self):
        with pytest.raises(InvalidDigestHex):
            from_xml("<document><digest>abcd</digest></document>")

    def test_unregistered_algorithm(self):
        with pytest.raises(UnregisteredAlgorithm):
            from_xml(
                '<document algo="rsa-404" sig="00" pubkey="00">'
                '<a salt="s">x</a></document>'
            )

    def test_leaf_missing_salt(self):
        with pytest.raises(ParseError, match="salt"):
            from_xml("<document><a>x</a></document>")

    def test_malformed_xml(self):
        with pytest.raises(ParseError):
            from_xml("<document><a salt='s'>x</document>")

    def test_comments_rejected(self):
        with pytest.raises(ParseError):
            from_xml('<document><!-- hi --><a salt="s">x</a></document>')

    def test_doctype_rejected(self):
        with pytest.raises(ParseError):
            from_xml('<!DOCTYPE document []><document><a salt="s">x</a></document>')

    def test_processing_instruction_rejected(self):
        with pytest.raises(ParseError):
            from_xml('<document><?pi data?><a salt="s">x</a></document>')

    def test_namespaces_rejected(self):
        with pytest.raises(ParseError):
            from_xml('<d xmlns="urn:x"><a salt="s">x</a></d>')


class TestProperties:
    @settings(max_examples=80, deadline=None)
    @given(trees())
    def test_round_trip_identity(self, tree):
        assert from_xml(to_xml(tree)) == tree

    @settings(max_examples=80, deadline=None)
    @given(trees())
    def test_digest_stable_across_codec(self, tree):
        assert node_digest(from_xml(to_xml(tree))) == node_digest(tree)

    @settings(max_examples=80, deadline=None)
    @given(trees())
    def test_pretty_parses_to_same_tree(self, tree):
        assert from_xml(to_xml(tree, pretty=True)) == from_xml(to_xml(tree))
