"""Incremental graph assembly shared by the gadget constructions."""

from __future__ import annotations

from ..graph import Graph


class GraphBuilder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, u: int, v: int, length: int) -> list[int]:
        """Join ``u`` to ``v`` by a fresh path with ``length`` edges.

        Returns the full vertex sequence from ``u`` to ``v``.
        """
        if length < 1:
            raise ValueError("path length must be positive")
        seq = [u] + [self.vertex() for _ in range(length - 1)] + [v]
        for a, b in zip(seq, seq[1:]):
            self.edge(a, b)
        return seq

    def build(self) -> Graph:
        return Graph(self.n, self.edges)


def triangle_size(gamma: int) -> int:
    """Vertex count of the gamma-triangle."""
    size = 4
    for g in range(5, gamma + 1, 2):
        size += 3 * (g - 2)
    return size


def add_triangle(b: GraphBuilder, gamma: int, corners: tuple[int, int, int]) -> tuple[int, list[int], list[list[int]]]:
    """Attach a gamma-triangle whose outer corners are existing vertices.

    Returns ``(center, vertices, sides)`` where ``vertices`` lists every
    gadget vertex (corners included) and ``sides`` holds the three outer
    corner-to-corner paths.
    """
    if gamma < 3 or gamma % 2 == 0:
        raise ValueError("gamma must be odd and at least 3")
    verts = list(dict.fromkeys(corners))
    if gamma == 3:
        c = b.vertex()
        for x in corners:
            b.edge(c, x)
        sides = [[corners[0], c, corners[1]], [corners[1], c, corners[2]], [corners[2], c, corners[0]]]
        return c, verts + [c], sides
    x, y, z = corners
    half = gamma // 2
    sides = [b.path(x, y, gamma - 1), b.path(y, z, gamma - 1), b.path(z, x, gamma - 1)]
    for side in sides:
        verts.extend(side[1:-1])
    inner = tuple(side[half] for side in sides)
    c, inner_verts, _ = add_triangle(b, gamma - 2, inner)
    verts.extend(v for v in inner_verts if v not in inner)
    return c, verts, sides
