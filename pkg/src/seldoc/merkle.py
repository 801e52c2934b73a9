"""Merkle batch construction, subtree proofs, and proof verification.

Parents hash the concatenation of two raw 32-byte child digests.  An odd
node at any level is promoted unchanged to the next level (no duplication),
so a promoted node contributes no proof step for that level.  There is no
domain separation between levels: leaves here are already digests of signed
documents, so tree-grafting second preimages are outside the threat model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digest import base_hash
from .errors import SeldocError
from .jsoncodec import ProofStep


@dataclass(frozen=True)
class MerkleBatch:
    leaves: tuple
    levels: tuple  # levels[0] = leaves, levels[-1] = (root,)

    @property
    def root(self) -> bytes:
        return self.levels[-1][0]


def build_batch(leaves: list[bytes]) -> MerkleBatch:
    if not leaves:
        raise SeldocError("cannot build a Merkle batch from zero leaves")
    for leaf in leaves:
        if len(leaf) != 32:
            raise SeldocError("Merkle leaves must be 32-byte digests")
    levels = [tuple(leaves)]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        nxt = []
        for i in range(0, len(prev) - 1, 2):
            nxt.append(base_hash(prev[i] + prev[i + 1], combine=True))
        if len(prev) % 2:
            nxt.append(prev[-1])
        levels.append(tuple(nxt))
    return MerkleBatch(tuple(leaves), tuple(levels))


def prove(batch: MerkleBatch, index: int) -> tuple:
    """Sibling steps from ``leaves[index]`` up to the root."""
    if not 0 <= index < len(batch.leaves):
        raise SeldocError(f"leaf index {index} out of range")
    steps = []
    for level in batch.levels[:-1]:
        sibling = index ^ 1
        if sibling < len(level):
            position = "left" if sibling < index else "right"
            steps.append(ProofStep(position, level[sibling]))
        index //= 2
    return tuple(steps)


def verify_proof(leaf: bytes, proof: tuple, root: bytes) -> bool:
    return fold_proof(leaf, proof) == root


def fold_proof(leaf: bytes, proof: tuple) -> bytes:
    """Root reproduced from a leaf and its subtree steps."""
    acc = leaf
    for step in proof:
        if step.position == "left":
            acc = base_hash(step.digest + acc, combine=True)
        else:
            acc = base_hash(acc + step.digest, combine=True)
    return acc
