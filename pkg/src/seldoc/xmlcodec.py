"""Container-stanza XML serialization and parsing.

Canonical form is the normative interchange text: no inter-element
whitespace, attribute order algo, sig, pubkey, salt, lowercase hex for
digests and signature material.  Pretty form adds indentation only and
parses back to the same tree.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from .errors import InvalidDigestHex, ParseError, UnregisteredAlgorithm
from .model import ALGORITHM_REGISTRY, Container, DocNode, Hidden, Leaf, SignatureBlock
from .digest import escape_text

DIGEST_TAG = "digest"

_HEX64_RE = re.compile(r"^[0-9a-f]{64}$")

# XML declaration is tolerated on input; comments, PIs and DTDs are not.
_XML_DECL_RE = re.compile(r"^\s*<\?xml[^?]*\?>")


def _node_to_parts(node: DocNode, out: list, indent: int, pretty: bool) -> None:
    pad = "  " * indent if pretty else ""
    nl = "\n" if pretty else ""
    if isinstance(node, Hidden):
        out.append(f"{pad}<{DIGEST_TAG}>{node.digest.hex()}</{DIGEST_TAG}>{nl}")
    elif isinstance(node, Leaf):
        out.append(
            f'{pad}<{node.tag} salt="{node.salt}">{escape_text(node.text)}'
            f"</{node.tag}>{nl}"
        )
    else:
        attrs = ""
        if node.sig is not None:
            attrs = (
                f' algo="{node.sig.algo}" sig="{node.sig.sig.hex()}"'
                f' pubkey="{node.sig.pubkey.hex()}"'
            )
        out.append(f"{pad}<{node.tag}{attrs}>{nl}")
        for child in node.children:
            _node_to_parts(child, out, indent + 1, pretty)
        out.append(f"{pad}</{node.tag}>{nl}")


def to_xml(root: DocNode, pretty: bool = False) -> str:
    if not isinstance(root, Container):
        raise ParseError("document root must be a container")
    out: list = []
    _node_to_parts(root, out, 0, pretty)
    return "".join(out)


def _reject_noise(text: str) -> None:
    body = _XML_DECL_RE.sub("", text, count=1)
    if "<!--" in body:
        raise ParseError("XML comments are not accepted")
    if "<!DOCTYPE" in body or "<!doctype" in body:
        raise ParseError("DTDs are not accepted")
    if "<?" in body:
        raise ParseError("processing instructions are not accepted")


def _sig_from_attrs(attrs: dict) -> SignatureBlock | None:
    present = [k for k in ("algo", "sig", "pubkey") if k in attrs]
    if not present:
        return None
    if len(present) != 3:
        raise ParseError(
            f"signature attributes must appear together, got only {present}"
        )
    algo = attrs["algo"]
    if algo not in ALGORITHM_REGISTRY:
        raise UnregisteredAlgorithm(f"unknown signature algorithm: {algo!r}")
    try:
        sig = bytes.fromhex(attrs["sig"])
        pubkey = bytes.fromhex(attrs["pubkey"])
    except ValueError:
        raise ParseError("sig/pubkey attributes must be hex")
    try:
        return SignatureBlock(algo, sig, pubkey)
    except Exception as exc:
        raise ParseError(str(exc))


def _element_to_node(elem: ET.Element) -> DocNode:
    tag = elem.tag
    if "{" in tag or ":" in tag:
        raise ParseError("XML namespaces are not accepted")
    for name in elem.attrib:
        if name.startswith("xmlns") or ":" in name:
            raise ParseError("XML namespaces are not accepted")

    if tag == DIGEST_TAG:
        if len(elem) or elem.attrib:
            raise ParseError("digest element must be empty of children and attributes")
        value = (elem.text or "").strip()
        if not _HEX64_RE.match(value):
            raise InvalidDigestHex(f"invalid digest hex: {value!r}")
        return Hidden(bytes.fromhex(value))

    if len(elem):
        if elem.text is not None and elem.text.strip():
            raise ParseError(f"mixed content in <{tag}> is not accepted")
        for child in elem:
            if child.tail is not None and child.tail.strip():
                raise ParseError(f"mixed content in <{tag}> is not accepted")
        sig = _sig_from_attrs(elem.attrib)
        extra = set(elem.attrib) - {"algo", "sig", "pubkey"}
        if extra:
            raise ParseError(f"unexpected container attributes: {sorted(extra)}")
        children = tuple(_element_to_node(child) for child in elem)
        return Container(tag, children, sig)

    # childless element: a disclosed leaf
    if "salt" not in elem.attrib:
        raise ParseError(f"leaf <{tag}> is missing its salt attribute")
    extra = set(elem.attrib) - {"salt"}
    if extra:
        raise ParseError(f"unexpected leaf attributes on <{tag}>: {sorted(extra)}")
    return Leaf(tag, elem.attrib["salt"], elem.text or "")


def from_xml(text: str) -> DocNode:
    _reject_noise(text)
    try:
        elem = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}")
    node = _element_to_node(elem)
    if not isinstance(node, Container):
        raise ParseError("document root must be a container stanza")
    return node
