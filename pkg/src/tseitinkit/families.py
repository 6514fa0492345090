"""Deterministic graph family generators used by the CLI and the tests."""

from __future__ import annotations

import random

from .graphs import Graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple(sorted((i, (i + 1) % n)) for i in range(n)))


def path(n: int) -> Graph:
    if n < 2:
        raise ValueError("path needs n >= 2")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, tuple(edges))


def wheel(rim: int) -> Graph:
    """Cycle 0..rim-1 plus a hub (id rim) joined to every rim vertex."""
    if rim < 3:
        raise ValueError("wheel needs rim >= 3")
    edges = [tuple(sorted((i, (i + 1) % rim))) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return Graph(rim + 1, tuple(edges))


def cube(dim: int) -> Graph:
    if dim < 1:
        raise ValueError("cube needs dim >= 1")
    edges = []
    for v in range(1 << dim):
        for b in range(dim):
            w = v ^ (1 << b)
            if v < w:
                edges.append((v, w))
    return Graph(1 << dim, tuple(edges))


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph(5, ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)))


def two_k4_shared_edge() -> Graph:
    """Two K4s glued along the edge {2, 3}."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
    return Graph(6, tuple(edges))


def k4_with_pendant_path() -> Graph:
    """K4 on 0..3 plus the path 3-4-5."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]
    return Graph(6, tuple(edges))


def octahedron() -> Graph:
    """K6 minus the perfect matching {0,1},{2,3},{4,5}."""
    edges = [(u, v) for u in range(6) for v in range(u + 1, 6) if {u, v} not in ({0, 1}, {2, 3}, {4, 5})]
    return Graph(6, tuple(edges))


def random_regular(n: int, degree: int, seed: int) -> Graph:
    """Configuration model with rejection; deterministic for a fixed seed."""
    if n * degree % 2 != 0 or degree >= n:
        raise ValueError("need n*degree even and degree < n")
    rng = random.Random(seed)
    for _ in range(10000):
        stubs = [v for v in range(n) for _ in range(degree)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for u, v in zip(stubs[0::2], stubs[1::2]):
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return Graph(n, tuple(sorted(edges)))
    raise ValueError("failed to sample a simple regular graph")


def generate(family: str, params: list[str]) -> Graph:
    """Dispatch for the CLI `generate` subcommand."""
    try:
        if family == "cycle":
            return cycle(int(params[0]))
        if family == "path":
            return path(int(params[0]))
        if family == "complete":
            return complete(int(params[0]))
        if family == "grid":
            return grid(int(params[0]), int(params[1]))
        if family == "wheel":
            return wheel(int(params[0]))
        if family == "cube":
            return cube(int(params[0]))
        if family == "random-regular":
            return random_regular(int(params[0]), int(params[1]), int(params[2]))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"invalid parameters for family {family}: {exc}") from exc
    raise ValueError(f"unknown family {family}")
