"""Binary Huffman coding over the action vocabulary.

The hierarchical-softmax output layer walks a binary tree from the root to an
action's leaf; every inner node on the way contributes one sigmoid factor.
This module owns the tree: construction from occurrence counts, the canonical
parent/direction representation used in model files, and the per-action
root-first paths the trainer and recognizer consume.

Conventions: inner nodes are numbered by creation (merge) order, the root is
the last one. A code entry is +1 when the path continues into the left child
and -1 for the right child; the first-popped (lighter) merge operand becomes
the left child. Ties in the merge queue go to leaves before merged nodes,
lower action id first, then earlier creation order, making construction
deterministic given counts and id order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["HuffmanTree", "build_tree", "path_of"]


@dataclass(frozen=True)
class HuffmanTree:
    """Per-action Huffman paths plus the canonical parent/direction arrays.

    Node numbering covers leaves and inner nodes in one space: leaf ids are
    0..n-1 (the action ids), inner node j lives at n+j. ``parent`` maps every
    node to its parent in that space (-1 for the root); ``direction`` is +1
    for a left child, -1 for a right child, 0 for the root. ``paths`` hold
    inner-node indices (0-based merge order), root first; ``codes`` hold the
    matching branch directions.
    """

    inner_node_count: int
    parent: np.ndarray
    direction: np.ndarray
    paths: tuple[np.ndarray, ...]
    codes: tuple[np.ndarray, ...]
    # CSR layout of paths/codes for the training kernels.
    path_offsets: np.ndarray
    path_nodes: np.ndarray
    path_signs: np.ndarray

    def __len__(self) -> int:
        return len(self.paths)

    def depth_of(self, action_id: int) -> int:
        return len(self.paths[action_id])


def build_tree(counts: Sequence[int]) -> HuffmanTree:
    """Huffman tree over per-action frequencies.

    Frequent actions get short codes; total weighted code length is minimal
    among binary prefix codes. Deterministic per the module conventions.
    """
    n = len(counts)
    if n == 0:
        raise ValueError("cannot build a tree over an empty vocabulary")
    if any(c < 1 for c in counts):
        raise ValueError("all counts must be >= 1")

    parent = np.full(2 * n - 1, -1, dtype=np.int32)
    direction = np.zeros(2 * n - 1, dtype=np.int8)

    # Heap keys (count, node): node ids double as the deterministic tie-break.
    heap: list[tuple[int, int]] = [(int(c), i) for i, c in enumerate(counts)]
    heapq.heapify(heap)
    for j in range(n - 1):
        c1, left = heapq.heappop(heap)
        c2, right = heapq.heappop(heap)
        merged = n + j
        parent[left] = merged
        direction[left] = 1
        parent[right] = merged
        direction[right] = -1
        heapq.heappush(heap, (c1 + c2, merged))

    return _finish(n, parent, direction)


def from_parent_arrays(parent: Sequence[int], direction: Sequence[int]) -> HuffmanTree:
    """Rebuild a tree from its serialized parent/direction arrays."""
    parent = np.asarray(parent, dtype=np.int32)
    direction = np.asarray(direction, dtype=np.int8)
    if parent.ndim != 1 or parent.shape != direction.shape or len(parent) % 2 != 1:
        raise ValueError("parent/direction must be equal-length arrays over 2n-1 nodes")
    n = (len(parent) + 1) // 2
    return _finish(n, parent, direction)


def _finish(n: int, parent: np.ndarray, direction: np.ndarray) -> HuffmanTree:
    paths = []
    codes = []
    for a in range(n):
        rev_nodes = []
        rev_signs = []
        node = a
        while parent[node] != -1:
            rev_nodes.append(parent[node] - n)
            rev_signs.append(direction[node])
            node = parent[node]
        paths.append(np.asarray(rev_nodes[::-1], dtype=np.int32))
        codes.append(np.asarray(rev_signs[::-1], dtype=np.int8))

    offsets = np.zeros(n + 1, dtype=np.int32)
    for a in range(n):
        offsets[a + 1] = offsets[a] + len(paths[a])
    flat_nodes = np.concatenate(paths) if offsets[-1] else np.zeros(0, dtype=np.int32)
    flat_signs = np.concatenate(codes) if offsets[-1] else np.zeros(0, dtype=np.int8)

    return HuffmanTree(
        inner_node_count=n - 1,
        parent=parent,
        direction=direction,
        paths=tuple(paths),
        codes=tuple(codes),
        path_offsets=offsets,
        path_nodes=flat_nodes.astype(np.int32),
        path_signs=flat_signs.astype(np.int8),
    )


def path_of(tree: HuffmanTree, action_id: int) -> tuple[np.ndarray, np.ndarray]:
    """The (inner-node path, branch directions) pair for one action."""
    if not (0 <= action_id < len(tree)):
        raise ValueError(f"unknown action id {action_id}")
    return tree.paths[action_id], tree.codes[action_id]
