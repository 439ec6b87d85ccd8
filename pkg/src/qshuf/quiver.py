"""Quiver combinatorics.

A quiver is a finite directed graph with loops and parallel edges allowed.
Vertices are indexed 0..vertex_count-1, edges carry ids 0..len(edges)-1
given by their position in the edge list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]  # (source, target) per edge id

    def __post_init__(self) -> None:
        if self.vertex_count <= 0:
            raise ValueError("quiver needs at least one vertex")
        for s, t in self.edges:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError(f"edge ({s},{t}) out of range for {self.vertex_count} vertices")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def arrows(self, i: int, j: int) -> int:
        """Number of arrows i -> j."""
        return sum(1 for s, t in self.edges if s == i and t == j)

    def edge_ids(self, i: int, j: int) -> list[int]:
        """Edge ids of all arrows i -> j, in id order."""
        return [e for e, (s, t) in enumerate(self.edges) if s == i and t == j]

    def loops_at(self, i: int) -> list[int]:
        return self.edge_ids(i, i)

    @staticmethod
    def from_json(path: str) -> "Quiver":
        """Load {"vertices": int, "edges": [[src,tgt],...]}; edge_id = position."""
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            vertices = int(data["vertices"])
            edges = tuple((int(s), int(t)) for s, t in data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed quiver file {path!r}: {exc}") from exc
        return Quiver(vertices, edges)


def jordan() -> Quiver:
    """One vertex, one loop."""
    return Quiver(1, ((0, 0),))


def loop_quiver(g: int) -> Quiver:
    """One vertex, g loops."""
    return Quiver(1, tuple((0, 0) for _ in range(g)))


def kronecker(d: int) -> Quiver:
    """Two vertices, d parallel edges 0 -> 1."""
    return Quiver(2, tuple((0, 1) for _ in range(d)))
