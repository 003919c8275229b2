"""Partitions of {0..n-1} in canonical block-id form.

A partition is stored as a tuple ``blocks`` of length n where ``blocks[i]``
is the id of the block containing ``i`` and ids are handed out in order of
first occurrence.  Two partitions are equal iff their tuples are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def labels(self) -> list[int]:
        return [self.find(i) for i in range(len(self.parent))]


def canonical(labels: Iterable) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True, order=True)
class Congruence:
    """An equivalence on {0..n-1}; called a congruence once it is known to be
    compatible with some algebra, but the type itself is just a partition."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        b = tuple(int(x) for x in self.blocks)
        if canonical(b) != b:
            raise ValueError(f"blocks {b} are not in first-occurrence form")
        object.__setattr__(self, "blocks", b)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Congruence":
        return cls(canonical(int(x) for x in labels))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Congruence":
        uf = UnionFind(n)
        for c in classes:
            c = list(c)
            for x in c:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} out of range for size {n}")
            for x in c[1:]:
                uf.union(c[0], x)
        return cls.from_labels(uf.labels())

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Congruence":
        """Equivalence generated by the pairs (no operations involved)."""
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls.from_labels(uf.labels())

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def num_blocks(self) -> int:
        return max(self.blocks) + 1 if self.blocks else 0

    def is_identity(self) -> bool:
        return self.num_blocks == self.size

    def is_full(self) -> bool:
        return self.num_blocks <= 1

    def classes(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for i, b in enumerate(self.blocks):
            out[b].append(i)
        return [tuple(c) for c in out]

    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes()]

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for c in self.classes() for a in c for b in c]

    def leq(self, other: "Congruence") -> bool:
        """Refinement: every block of self lies inside a block of other."""
        img: dict[int, int] = {}
        for x, y in zip(self.blocks, other.blocks):
            if img.setdefault(x, y) != y:
                return False
        return True

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(canonical(zip(self.blocks, other.blocks)))

    def join(self, other: "Congruence") -> "Congruence":
        uf = UnionFind(self.size)
        for part in (self, other):
            first: dict[int, int] = {}
            for i, b in enumerate(part.blocks):
                uf.union(first.setdefault(b, i), i)
        return Congruence.from_labels(uf.labels())

    def format(self, labels: Sequence[str] | None = None) -> str:
        name = (lambda i: labels[i]) if labels else str
        return "eq(" + ",".join("{" + ",".join(name(i) for i in c) + "}" for c in self.classes()) + ")"

    def as_lists(self, labels: Sequence[str] | None = None) -> list[list]:
        if labels:
            return [[labels[i] for i in c] for c in self.classes()]
        return [list(c) for c in self.classes()]

    def __repr__(self):
        return f"Congruence{self.format()}"


def set_partitions(n: int):
    """All partitions of {0..n-1} as restricted growth strings."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(word)
            return
        for b in range(top + 2):
            word[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)
