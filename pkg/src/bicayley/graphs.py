"""Simple undirected graphs with graph6 and edge-list serialization."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import GraphParseError, InvariantViolation


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        norm = set()
        for u, v in edges:
            if u == v:
                raise InvariantViolation(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvariantViolation(f"edge ({u}, {v}) outside vertex range")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.adj)

    def is_regular(self) -> bool:
        degs = self.degrees()
        return self.n == 0 or min(degs) == max(degs)

    def valency(self) -> int:
        if not self.is_regular():
            raise InvariantViolation("graph is not regular")
        return len(self.adj[0]) if self.n else 0

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph with vertex v renamed to perm[v]."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by first vertex."""
        out = []
        seen = [False] * self.n
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            stack = [start]
            while stack:
                for w in self.adj[stack.pop()]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comp.sort()
            out.append(comp)
        return out

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex k of the result is vertices[k]."""
        index = {v: k for k, v in enumerate(vertices)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(vertices), edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


# -- graph6 ---------------------------------------------------------------
#
# Standard encoding: N(n) header, then the upper triangle of the adjacency
# matrix read column by column ((0,1), (0,2), (1,2), (0,3), ...), packed into
# 6-bit groups, each group printed as one byte with +63 offset.


def _g6_size_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise InvariantViolation("graph too large for graph6")


def graph6_encode(g: Graph) -> str:
    n = g.n
    bits = bytearray(n * (n - 1) // 2)
    for u, v in g.edges:
        # position of pair (u, v), u < v, in column-major upper-triangle order
        bits[v * (v - 1) // 2 + u] = 1
    chunks = []
    for k in range(0, len(bits), 6):
        group = bits[k : k + 6]
        val = 0
        for b in group:
            val = (val << 1) | b
        val <<= 6 - len(group)
        chunks.append(chr(63 + val))
    return _g6_size_header(n) + "".join(chunks)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphParseError("empty graph6 string", 0)
    data = s.encode("ascii", errors="replace")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphParseError(f"invalid graph6 byte {byte!r}", off)
    pos = 0
    if data[0] == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise GraphParseError("truncated graph6 size header", len(data))
            n = 0
            for byte in data[2:8]:
                n = (n << 6) | (byte - 63)
            pos = 8
        else:
            if len(data) < 4:
                raise GraphParseError("truncated graph6 size header", len(data))
            n = 0
            for byte in data[1:4]:
                n = (n << 6) | (byte - 63)
            pos = 4
    else:
        n = data[0] - 63
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise GraphParseError(
            f"graph6 body has {len(data) - pos} bytes, expected {need}", pos
        )
    edges = []
    bit_index = 0
    v = 1  # column of the current bit; positions are visited in increasing order
    for byte in data[pos:]:
        val = byte - 63
        for shift in range(5, -1, -1):
            if bit_index >= nbits:
                break
            while (v + 1) * v // 2 <= bit_index:
                v += 1
            if (val >> shift) & 1:
                edges.append((bit_index - v * (v - 1) // 2, v))
            bit_index += 1
    return Graph(n, edges)


# -- edge lists -------------------------------------------------------------


def format_edge_list(g: Graph) -> str:
    """One "u v" line per edge, 0-indexed, u < v, sorted."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_edge_list(text: str) -> Graph:
    edges = []
    n = 0
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            parts = stripped.split()
            if len(parts) != 2:
                raise GraphParseError(f"expected 'u v', got {stripped!r}", offset)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(f"non-integer endpoint in {stripped!r}", offset)
            if u < 0 or v < 0 or u == v:
                raise GraphParseError(f"bad edge ({u}, {v})", offset)
            edges.append((u, v))
            n = max(n, u + 1, v + 1)
        offset += len(line)
    return Graph(n, edges)


def parse_graph_text(text: str, fmt: str = "auto") -> Graph:
    """Read either format; auto-detection keys off the first non-blank line."""
    if fmt == "g6":
        return graph6_decode(text)
    if fmt == "edges":
        return parse_edge_list(text)
    if fmt != "auto":
        raise GraphParseError(f"unknown format {fmt!r}", 0)
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    parts = first.split()
    if len(parts) == 2 and all(p.isdigit() for p in parts):
        return parse_edge_list(text)
    return graph6_decode(text)


def graph_to_json_dict(g: Graph) -> dict:
    return {
        "vertex_count": g.n,
        "edge_count": g.edge_count,
        "edges": [[u, v] for u, v in g.edges],
    }
