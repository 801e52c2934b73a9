import random
import string

import pytest
from hypothesis import strategies as st

from seldoc.digest import node_digest
from seldoc.model import Container, Hidden, Leaf

SALT_CHARS = string.ascii_letters + string.digits + ".!@-"

# Fig-3-style ID card used across test modules.
IDCARD_FIELDS = [
    ("id", "rGheZ.V8hqDtFw4Hy!GG", "4445 4558 1689"),
    ("name", "!f@AKAYeC63zGfMwdxtm", "Wednesday Addams"),
    ("born", "Z.uRox.GB7B3dGxPzkjB", "1980-02-12"),
    ("address", "h.g!-DKr.8P@EXE9QhxY", "0001 Cemetery Lane"),
    ("public-key", "aB3dEfGh1jKlMnOpQrSt", "04d49e0786a37efce8552d6fd156aabbcc"),
]


@pytest.fixture
def idcard_tree():
    return Container(
        "document", tuple(Leaf(tag, salt, text) for tag, salt, text in IDCARD_FIELDS)
    )


TAG_POOL = [f"m{i:02d}" for i in range(40)] + ["name", "born", "addr", "grade", "note"]


def _tags():
    return st.sampled_from(TAG_POOL)


salts = st.text(alphabet=SALT_CHARS, min_size=1, max_size=20)
texts = st.text(
    alphabet=st.characters(min_codepoint=0x20, max_codepoint=0xD7FF), max_size=30
)


def trees(max_depth: int = 4, max_fanout: int = 8):
    """Random well-formed document trees with unique member names per level."""

    def node(depth):
        leaf = st.builds(Leaf, _tags(), salts, texts)
        if depth <= 1:
            child = leaf
        else:
            child = st.one_of(leaf, container(depth - 1))
        return child

    def container(depth):
        return st.tuples(_tags(), st.lists(node(depth), min_size=1, max_size=max_fanout)).map(
            lambda tc: Container(tc[0], tuple(_uniquify(tc[1])))
        )

    return container(max_depth)


def _uniquify(children):
    seen = set()
    out = []
    for child in children:
        if child.tag in seen:
            continue
        seen.add(child.tag)
        out.append(child)
    return out


def hide_random_subset(node, rng: random.Random, p: float = 0.4):
    """Replace a random subset of nodes by their digest placeholders."""
    if not isinstance(node, Container):
        if rng.random() < p:
            return Hidden(node_digest(node))
        return node
    children = tuple(
        Hidden(node_digest(c)) if rng.random() < p else (
            hide_random_subset(c, rng, p) if isinstance(c, Container) else c
        )
        for c in node.children
    )
    return Container(node.tag, children, node.sig)
