"""Labeled trees on {1..n} and their enumeration via Prüfer codes.

Each elimination level picks one labeled tree; its edges say which pairs of
equations get a resultant.  The vertices of degree two or more (the
"multiple" vertices) are the ones whose slice equations certify a lift on
their own.
"""

from itertools import product

from .errors import JetsolveError

MAX_TREE_SIZE = 8


class Tree:
    """A labeled tree on vertices 1..n, stored as a sorted edge tuple."""

    __slots__ = ("n", "edges", "prufer")

    def __init__(self, n, edges):
        edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        if len(edges) != n - 1:
            raise JetsolveError(f"a tree on {n} vertices needs {n - 1} edges")
        parent = list(range(n + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in edges:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise JetsolveError(f"bad edge {(a, b)}")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise JetsolveError("edges contain a cycle")
            parent[ra] = rb
        self.n = n
        self.edges = edges
        self.prufer = prufer_encode(n, edges)

    @classmethod
    def from_prufer(cls, n, seq):
        return cls(n, prufer_decode(n, seq))

    def degrees(self):
        deg = [0] * (self.n + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def multiple_vertices(self):
        deg = self.degrees()
        return {v for v in range(1, self.n + 1) if deg[v] >= 2}

    def __eq__(self, other):
        return isinstance(other, Tree) and self.n == other.n \
            and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)})"


def prufer_decode(n, seq):
    """Edges of the labeled tree with the given Prüfer sequence
    (length n-2, entries in 1..n)."""
    seq = tuple(int(v) for v in seq)
    if len(seq) != n - 2:
        raise JetsolveError(f"Prüfer code for n={n} must have length {n - 2}")
    if any(not 1 <= v <= n for v in seq):
        raise JetsolveError("Prüfer code entry out of range")
    deg = [1] * (n + 1)
    for v in seq:
        deg[v] += 1
    edges = []
    ptr = 1
    leaf = None
    for v in seq:
        if leaf is None:
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append((leaf, v))
        deg[leaf] -= 1
        deg[v] -= 1
        if deg[v] == 1 and v < ptr:
            leaf = v
        else:
            leaf = None
    if leaf is None:
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
    last = next(u for u in range(leaf + 1, n + 1) if deg[u] == 1)
    edges.append((leaf, last))
    return edges


def prufer_encode(n, edges):
    """Canonical Prüfer sequence of a labeled tree given by its edges."""
    if n == 2:
        return ()
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seq = []
    for _ in range(n - 2):
        leaf = min(v for v in adj if len(adj[v]) == 1)
        parent = next(iter(adj[leaf]))
        seq.append(parent)
        adj[parent].discard(leaf)
        del adj[leaf]
    return tuple(seq)


def enumerate_trees(n):
    """All n^(n-2) labeled trees on n vertices, in sorted Prüfer order."""
    if not 2 <= n <= MAX_TREE_SIZE:
        raise JetsolveError(
            f"tree enumeration supports 2 <= n <= {MAX_TREE_SIZE}")
    if n == 2:
        return [Tree(2, [(1, 2)])]
    return [Tree.from_prufer(n, seq)
            for seq in product(range(1, n + 1), repeat=n - 2)]


def multiple_vertices(tree):
    return tree.multiple_vertices()
