"""Bi-Cayley graphs over two-generator group handles.

A graph BiCay(H, R, L, S) has vertex set H_0 | H_1 and three edge classes:
right edges {h_0, g_0} with g h^-1 in R, left edges {h_1, g_1} with
g h^-1 in L, and spokes {h_0, g_1} with g h^-1 in S.  Vertices are indexed
h_0 -> rank(h) and h_1 -> |H| + rank(h) with rank the lexicographic position
of the normal form (j, i), so identical inputs always produce identical
adjacency data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidMapError, InvariantViolation, NotAutomorphism, SetConditionError
from .graphs import Graph
from .metacyclic import Element, GroupMap, PairGroup, apply_map
from .permgroup import Perm, PermGroup


def _norm_set(group: PairGroup, items: Iterable[Element]) -> tuple[Element, ...]:
    return tuple(sorted({(j % group.mod_j, i % group.mod_i) for j, i in items}))


class BiCayleyGraph:
    """BiCay(H, R, L, S) with its vertex indexing and connection sets."""

    def __init__(
        self,
        group: PairGroup,
        R: Iterable[Element] = (),
        L: Iterable[Element] = (),
        S: Iterable[Element] = (),
    ):
        self.group = group
        self.R = _norm_set(group, R)
        self.L = _norm_set(group, L)
        self.S = _norm_set(group, S)
        ident = group.identity
        for name, conn in (("R", self.R), ("L", self.L)):
            if ident in conn:
                raise SetConditionError(f"identity element in {name}")
            if set(conn) != {group.inv(x) for x in conn}:
                raise SetConditionError(f"{name} is not inverse-closed")
        self.half = group.order
        els = group.elements()
        rank = group.rank
        edges = []
        for h in els:
            hr = rank(h)
            for r in self.R:
                edges.append((rank(group.mul(r, h)), hr))
            for l in self.L:
                edges.append((self.half + rank(group.mul(l, h)), self.half + hr))
            for s in self.S:
                edges.append((hr, self.half + rank(group.mul(s, h))))
        self.graph = Graph(2 * self.half, edges)

    def index(self, h: Element, part: int) -> int:
        """Vertex index of h_part."""
        if part not in (0, 1):
            raise InvariantViolation("part must be 0 or 1")
        return self.group.rank(h) + part * self.half

    def vertex(self, idx: int) -> tuple[Element, int]:
        part, r = divmod(idx, self.half)
        return self.group.unrank(r), part

    def __repr__(self) -> str:
        return (
            f"BiCayleyGraph(|H|={self.half}, |R|={len(self.R)}, "
            f"|L|={len(self.L)}, |S|={len(self.S)})"
        )


def build(group: PairGroup, R: Iterable[Element], L: Iterable[Element], S: Iterable[Element]) -> BiCayleyGraph:
    return BiCayleyGraph(group, R, L, S)


def _check_automorphism(bg: BiCayleyGraph, perm: Perm) -> Perm:
    g = bg.graph
    adj = g.adj
    for u, v in g.edges:
        if perm[v] not in adj[perm[u]]:
            raise NotAutomorphism("constructed map does not preserve adjacency")
    return perm


def right_translation(bg: BiCayleyGraph, g: Element) -> Perm:
    """The permutation h_i -> (hg)_i; always a graph automorphism."""
    G = bg.group
    half = bg.half
    images = [0] * (2 * half)
    for h in G.elements():
        hr = G.rank(h)
        target = G.rank(G.mul(h, g))
        images[hr] = target
        images[half + hr] = half + target
    return _check_automorphism(bg, tuple(images))


def right_group(bg: BiCayleyGraph) -> PermGroup:
    """R(H), generated by the right translations of the two group generators."""
    gens = [right_translation(bg, bg.group.gen_a), right_translation(bg, bg.group.gen_b)]
    return PermGroup(bg.graph.n, gens)


@dataclass(frozen=True)
class MapResult:
    """Outcome of a sigma/delta construction: a permutation or the failed condition."""

    permutation: Perm | None
    failed_condition: str | None = None

    @property
    def valid(self) -> bool:
        return self.permutation is not None


def sigma_map(bg: BiCayleyGraph, f: GroupMap, g: Element) -> MapResult:
    """sigma_{alpha,g}: h_0 -> (h^alpha)_0, h_1 -> (g h^alpha)_1.

    Valid exactly when R^alpha = R, L^alpha = g^-1 L g and S^alpha = g^-1 S.
    """
    G = bg.group
    img = lambda x: apply_map(G, f, x)
    if {img(x) for x in bg.R} != set(bg.R):
        return MapResult(None, "R^alpha != R")
    if {img(x) for x in bg.L} != {G.mul(G.mul(G.inv(g), x), g) for x in bg.L}:
        return MapResult(None, "L^alpha != g^-1 L g")
    if {img(x) for x in bg.S} != {G.mul(G.inv(g), x) for x in bg.S}:
        return MapResult(None, "S^alpha != g^-1 S")
    half = bg.half
    images = [0] * (2 * half)
    for h in G.elements():
        hr = G.rank(h)
        ha = img(h)
        images[hr] = G.rank(ha)
        images[half + hr] = half + G.rank(G.mul(g, ha))
    return MapResult(_check_automorphism(bg, tuple(images)))


def delta_map(bg: BiCayleyGraph, f: GroupMap, x: Element, y: Element) -> MapResult:
    """delta_{alpha,x,y}: h_0 -> (x h^alpha)_1, h_1 -> (y h^alpha)_0; swaps the parts.

    Valid exactly when R^alpha = x^-1 L x, L^alpha = y^-1 R y and
    S^alpha = y^-1 S^-1 x.
    """
    G = bg.group
    img = lambda z: apply_map(G, f, z)
    conj = lambda t, u: G.mul(G.mul(G.inv(t), u), t)
    if {img(z) for z in bg.R} != {conj(x, z) for z in bg.L}:
        return MapResult(None, "R^alpha != x^-1 L x")
    if {img(z) for z in bg.L} != {conj(y, z) for z in bg.R}:
        return MapResult(None, "L^alpha != y^-1 R y")
    want = {G.mul(G.mul(G.inv(y), G.inv(z)), x) for z in bg.S}
    if {img(z) for z in bg.S} != want:
        return MapResult(None, "S^alpha != y^-1 S^-1 x")
    half = bg.half
    images = [0] * (2 * half)
    for h in G.elements():
        hr = G.rank(h)
        ha = img(h)
        images[hr] = half + G.rank(G.mul(x, ha))
        images[half + hr] = G.rank(G.mul(y, ha))
    return MapResult(_check_automorphism(bg, tuple(images)))


def is_connected(bg: BiCayleyGraph) -> bool:
    """BFS connectivity; when 1 in S this must agree with <R u L u S> = H."""
    reachable = bg.graph.is_connected()
    if bg.group.identity in bg.S:
        generated = len(bg.group.closure(bg.R + bg.L + bg.S)) == bg.group.order
        if reachable != generated:
            raise RuntimeError("internal error: connectivity disagrees with <R u L u S> = H")
    return reachable


def swap_parts(bg: BiCayleyGraph) -> BiCayleyGraph:
    """BiCay(H, L, R, S^-1), isomorphic to the input via h_0 <-> h_1."""
    G = bg.group
    return BiCayleyGraph(G, bg.L, bg.R, [G.inv(s) for s in bg.S])


def apply_group_automorphism(bg: BiCayleyGraph, f: GroupMap) -> BiCayleyGraph:
    """BiCay(H, R^alpha, L^alpha, S^alpha), isomorphic via h_i -> (h^alpha)_i."""
    G = bg.group
    img = lambda x: apply_map(G, f, x)
    return BiCayleyGraph(G, [img(x) for x in bg.R], [img(x) for x in bg.L], [img(x) for x in bg.S])


def normalize_S(bg: BiCayleyGraph) -> BiCayleyGraph:
    """Right-translate S so it contains the identity (no-op if it already does)."""
    G = bg.group
    if not bg.S:
        raise InvariantViolation("cannot normalize an empty spoke set")
    if G.identity in bg.S:
        return bg
    s = bg.S[0]
    sinv = G.inv(s)
    return BiCayleyGraph(G, bg.R, bg.L, [G.mul(x, sinv) for x in bg.S])


def spoke_stabilizer_maps(bg: BiCayleyGraph) -> list[tuple[GroupMap, Element, Perm]]:
    """All sigma maps fixing the identity vertex of a one-matching graph
    (S = {1, x, y} generating, R = L = {}).

    A valid sigma map sends the spoke neighbour 1_1 to g_1 with g in S and
    permutes the three spokes, so its generator images are forced by one of
    the six spoke arrangements; each candidate is validated, making the
    returned family exhaustive over sigma maps.  These are exactly the
    part-preserving elements of the normalizer of R(H) fixing the identity
    vertex, so for a normal bi-Cayley graph
    |Aut| = |H| * len(result) * (2 if a part-swapping map exists else 1).
    """
    from .metacyclic import evaluate_word, express_in_images, make_automorphism

    G = bg.group
    ident = G.identity
    if bg.R or bg.L or len(bg.S) != 3 or ident not in bg.S:
        raise InvariantViolation("spoke arrangements need R = L = {} and S = {1, x, y}")
    x, y = [s for s in bg.S if s != ident]
    word_a, word_b = express_in_images(G, x, y, [G.gen_a, G.gen_b])
    out = []
    for pi in (
        (ident, x, y), (ident, y, x),
        (x, y, ident), (x, ident, y),
        (y, ident, x), (y, x, ident),
    ):
        g = pi[0]
        ginv = G.inv(g)
        x_img = G.mul(ginv, pi[1])
        y_img = G.mul(ginv, pi[2])
        a_img = evaluate_word(G, word_a, x_img, y_img)
        b_img = evaluate_word(G, word_b, x_img, y_img)
        try:
            alpha = make_automorphism(G, a_img, b_img)
        except InvalidMapError:
            continue
        res = sigma_map(bg, alpha, g)
        if res.valid:
            out.append((alpha, g, res.permutation))
    return out


@dataclass(frozen=True)
class QuotientReport:
    orbit_count: int
    orbit_sizes: tuple[int, ...]
    semiregular: bool
    valency_profile: tuple[int, ...]
    is_cubic: bool


def quotient_graph(graph: Graph | BiCayleyGraph, N: PermGroup) -> tuple[Graph, QuotientReport]:
    """Quotient by the orbits of N; N's generators must preserve adjacency."""
    if isinstance(graph, BiCayleyGraph):
        graph = graph.graph
    if N.degree != graph.n:
        raise InvariantViolation("group degree does not match the vertex count")
    adj = graph.adj
    for gen in N.generators:
        for u, v in graph.edges:
            if gen[v] not in adj[gen[u]]:
                raise NotAutomorphism("quotient group generator is not a graph automorphism")
    orbits = N.orbits()
    owner = [0] * graph.n
    for idx, orb in enumerate(orbits):
        for v in orb:
            owner[v] = idx
    qedges = {
        (owner[u], owner[v]) if owner[u] < owner[v] else (owner[v], owner[u])
        for u, v in graph.edges
        if owner[u] != owner[v]
    }
    q = Graph(len(orbits), qedges)
    sizes = tuple(sorted(len(o) for o in orbits))
    degs = tuple(sorted(q.degrees()))
    report = QuotientReport(
        orbit_count=len(orbits),
        orbit_sizes=sizes,
        semiregular=N.is_semiregular(),
        valency_profile=degs,
        is_cubic=bool(degs) and degs[0] == 3 and degs[-1] == 3,
    )
    return q, report
