"""Exact arithmetic in split metacyclic p-groups and abelian two-generator groups.

Elements are normal-form pairs (j, i) standing for b^j * a^i with
0 <= j < |b| and 0 <= i < |a|.  The twisted commutation rule
a^i b^j = b^j a^{i w^j} (w = 1 + p^r) gives closed formulas for products,
powers and inverses, so every element operation is O(log) integer work:

    (b^{j1} a^{i1}) (b^{j2} a^{i2}) = b^{j1+j2} a^{i1 w^{j2} + i2}
    (b^j a^i)^k                     = b^{kj} a^{i (1 + w^j + ... + w^{(k-1)j})}

Setting w = 1 degenerates the same law to Z_{mod_j} x Z_{mod_i}, which is how
the abelian handle used by the one-matching abelian families is realised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetError, InvalidMapError, ParameterError

Element = tuple[int, int]

CLOSURE_BUDGET = 3**12
WORD_BUDGET = 2**63
_TWIST_TABLE_CAP = 3**9


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PairGroup:
    """Group law on normal-form pairs (j, i) with a fixed twist multiplier."""

    def __init__(self, mod_j: int, mod_i: int, twist: int, twist_order: int):
        if mod_j < 1 or mod_i < 1:
            raise ParameterError("moduli must be positive")
        if mod_j >= WORD_BUDGET or mod_i >= WORD_BUDGET:
            raise OverflowError("modulus exceeds the machine word budget (2^63)")
        self.mod_j = mod_j
        self.mod_i = mod_i
        self.twist = twist % mod_i
        if pow(self.twist, twist_order, mod_i) != 1 % mod_i:
            raise ParameterError("twist multiplier order is inconsistent")
        if mod_j % twist_order != 0:
            raise ParameterError("twist order must divide the b-exponent modulus")
        self._twist_order = twist_order
        if twist_order <= _TWIST_TABLE_CAP:
            table = [1 % mod_i]
            for _ in range(twist_order - 1):
                table.append(table[-1] * self.twist % mod_i)
            self._twist_table: list[int] | None = table
        else:
            self._twist_table = None
        self.order = mod_j * mod_i
        self.identity: Element = (0, 0)
        self.gen_a: Element = (0, 1 % mod_i)
        self.gen_b: Element = (1 % mod_j, 0)
        self._order_primes = _prime_factors(self.order) if self.order > 1 else []
        self._element_list: tuple[Element, ...] | None = None

    # -- element arithmetic ------------------------------------------------

    def twist_pow(self, j: int) -> int:
        """(1+p^r)^j mod p^m, for j already reduced mod mod_j."""
        k = j % self._twist_order
        if self._twist_table is not None:
            return self._twist_table[k]
        return pow(self.twist, k, self.mod_i)

    def mul(self, g: Element, h: Element) -> Element:
        j1, i1 = g
        j2, i2 = h
        return ((j1 + j2) % self.mod_j, (i1 * self.twist_pow(j2) + i2) % self.mod_i)

    def inv(self, g: Element) -> Element:
        j, i = g
        nj = (-j) % self.mod_j
        return (nj, (-i * self.twist_pow(nj)) % self.mod_i)

    def _geom_sum(self, wj: int, k: int) -> int:
        """1 + wj + ... + wj^{k-1} mod mod_i, by halving."""
        mod = self.mod_i
        if k == 0:
            return 0
        if k % 2:
            return (self._geom_sum(wj, k - 1) + pow(wj, k - 1, mod)) % mod
        half = self._geom_sum(wj, k // 2)
        return half * (1 + pow(wj, k // 2, mod)) % mod

    def pow(self, g: Element, k: int) -> Element:
        if k < 0:
            return self.pow(self.inv(g), -k)
        j, i = g
        wj = self.twist_pow(j)
        return ((j * k) % self.mod_j, (i * self._geom_sum(wj, k)) % self.mod_i)

    def conj(self, g: Element, h: Element) -> Element:
        """h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def commutator(self, g: Element, h: Element) -> Element:
        """g^-1 h^-1 g h."""
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def element_order(self, g: Element) -> int:
        k = self.order
        for q in self._order_primes:
            while k % q == 0 and self.pow(g, k // q) == self.identity:
                k //= q
        return k

    def is_abelian(self) -> bool:
        return self.twist_pow(1 % self.mod_j) == 1 % self.mod_i

    # -- enumeration and subgroups ------------------------------------------

    def elements(self) -> tuple[Element, ...]:
        """All elements in lexicographic (j, i) order."""
        if self._element_list is None:
            if self.order > CLOSURE_BUDGET:
                raise BudgetError(f"group order {self.order} exceeds enumeration budget")
            self._element_list = tuple(
                (j, i) for j in range(self.mod_j) for i in range(self.mod_i)
            )
        return self._element_list

    def rank(self, g: Element) -> int:
        return g[0] * self.mod_i + g[1]

    def unrank(self, k: int) -> Element:
        return divmod(k, self.mod_i)

    def closure(self, generators: Iterable[Element], budget: int = CLOSURE_BUDGET) -> frozenset[Element]:
        """Subgroup generated by the given elements, as an explicit set."""
        mul = self.mul
        gens = [(j % self.mod_j, i % self.mod_i) for j, i in generators]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            if len(seen) > budget:
                raise BudgetError(f"closure exceeds enumeration budget {budget}")
            frontier = new
        return frozenset(seen)

    def normal_closure(self, seed: Iterable[Element], budget: int = CLOSURE_BUDGET) -> frozenset[Element]:
        gens = list(seed)
        while True:
            sub = self.closure(gens, budget)
            extra = []
            for s in sub:
                for t in (self.gen_a, self.gen_b):
                    c = self.conj(s, t)
                    if c not in sub:
                        extra.append(c)
            if not extra:
                return sub
            gens = list(sub) + extra

    def derived_subgroup(self) -> frozenset[Element]:
        return self.normal_closure([self.commutator(self.gen_a, self.gen_b)])

    def center(self) -> frozenset[Element]:
        mul = self.mul
        a, b = self.gen_a, self.gen_b
        return frozenset(
            g for g in self.elements()
            if mul(g, a) == mul(a, g) and mul(g, b) == mul(b, g)
        )

    def regular_representation(self):
        """Right-multiplication permutations of the two generators, as a PermGroup."""
        from .permgroup import PermGroup

        els = self.elements()
        rank = self.rank
        perms = []
        for g in (self.gen_a, self.gen_b):
            perms.append(tuple(rank(self.mul(h, g)) for h in els))
        return PermGroup(len(els), perms)

    # -- serialization -------------------------------------------------------

    def element_str(self, g: Element) -> str:
        return f"b^{g[0]}*a^{g[1]}"

    def parse_element(self, text: str) -> Element:
        parts = text.replace(" ", "").split("*")
        if len(parts) != 2 or not parts[0].startswith("b^") or not parts[1].startswith("a^"):
            raise ParameterError(f"cannot parse element {text!r}, expected 'b^j*a^i'")
        return (int(parts[0][2:]) % self.mod_j, int(parts[1][2:]) % self.mod_i)


class MetacyclicGroup(PairGroup):
    """Split metacyclic p-group <a, b | a^{p^m} = b^{p^n} = 1, b^-1 a b = a^{1+p^r}>.

    Requires p an odd prime and r < m <= n + r, which makes the presentation
    consistent of order exactly p^{m+n}; the multiplicative order of 1+p^r
    mod p^m is p^{m-r}, so the twist table has at most p^{m-r} entries.
    """

    def __init__(self, p: int, m: int, n: int, r: int):
        if not _is_odd_prime(p):
            raise ParameterError(f"p must be an odd prime, got {p}")
        if min(m, n, r) < 1:
            raise ParameterError("m, n, r must be positive")
        if not (r < m <= n + r):
            raise ParameterError(f"need r < m <= n + r, got (m, n, r) = ({m}, {n}, {r})")
        p_m = p**m
        p_n = p**n
        if p_m >= WORD_BUDGET or p_n >= WORD_BUDGET:
            raise OverflowError("p^m or p^n exceeds the machine word budget (2^63)")
        super().__init__(p_n, p_m, 1 + p**r, p ** (m - r))
        if pow(1 + p**r, p_n, p_m) != 1:
            raise ParameterError("inconsistent presentation: (1+p^r)^(p^n) != 1 mod p^m")
        self.p = p
        self.m = m
        self.n = n
        self.r = r

    def params(self) -> tuple[int, int, int, int]:
        return (self.p, self.m, self.n, self.r)

    def frattini_subgroup(self) -> frozenset[Element]:
        """G^p G' as an element set (valid since G is a p-group)."""
        a, b = self.gen_a, self.gen_b
        seed = [self.pow(a, self.p), self.pow(b, self.p), self.commutator(a, b)]
        return self.normal_closure(seed)

    def maximal_subgroups(self) -> list[tuple[list[Element], frozenset[Element]]]:
        """The p+1 index-p subgroups of a 2-generated p-group, via G/Phi(G).

        Returns (generating set, element set) pairs; the generating set is the
        Frattini seed plus one coset representative per line of G/Phi.
        """
        a, b = self.gen_a, self.gen_b
        phi_gens = [self.pow(a, self.p), self.pow(b, self.p), self.commutator(a, b)]
        reps = [a] + [self.mul(self.pow(a, k), b) for k in range(self.p)]
        out = []
        for rep in reps:
            gens = phi_gens + [rep]
            sub = self.closure(gens)
            if len(sub) * self.p != self.order:
                raise ParameterError("quotient by Frattini subgroup is not rank 2")
            out.append((gens, sub))
        return out

    def is_inner_abelian(self) -> bool:
        """Non-abelian with every maximal subgroup abelian."""
        if self.is_abelian():
            return False
        mul = self.mul
        for gens, _ in self.maximal_subgroups():
            for x in gens:
                for y in gens:
                    if mul(x, y) != mul(y, x):
                        return False
        return True


class AbelianPairGroup(PairGroup):
    """Z_{mod_j} x Z_{mod_i} in the same normal-form representation (trivial twist)."""

    def __init__(self, mod_j: int, mod_i: int):
        super().__init__(mod_j, mod_i, 1, 1)


def make_group(p: int, m: int, n: int, r: int) -> MetacyclicGroup:
    return MetacyclicGroup(p, m, n, r)


# -- generator-image maps ----------------------------------------------------


@dataclass(frozen=True)
class GroupMap:
    """Candidate endomorphism given by the images of the generators a and b."""

    image_a: Element
    image_b: Element
    validated: bool = False


@dataclass(frozen=True)
class PairRelationReport:
    """Which defining relations a candidate generator pair (x, y) satisfies.

    When the conjugation relation y^-1 x y = x^{1+p^r} fails and the defect is
    a pure power of a, forced_a_exponents lists the exponents e (as {e, -e mod
    p^m}) whose triviality a^e = 1 the relation would force.
    """

    a_order_ok: bool
    b_order_ok: bool
    conjugation_ok: bool
    generates: bool
    conj_lhs: Element
    conj_rhs: Element
    forced_a_exponents: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.a_order_ok and self.b_order_ok and self.conjugation_ok and self.generates

    def violated(self) -> str | None:
        if not self.a_order_ok:
            return "order of image of a"
        if not self.b_order_ok:
            return "order of image of b"
        if not self.conjugation_ok:
            return "conjugation relation y^-1 x y = x^(1+p^r)"
        if not self.generates:
            return "images do not generate the group"
        return None


def check_generator_images(G: PairGroup, x: Element, y: Element) -> PairRelationReport:
    """Test whether a |-> x, b |-> y satisfies the presentation and generates."""
    a_ok = G.pow(x, G.mod_i) == G.identity
    b_ok = G.pow(y, G.mod_j) == G.identity
    lhs = G.conj(x, y)
    rhs = G.pow(x, G.twist)
    conj_ok = lhs == rhs
    forced: tuple[int, ...] = ()
    if not conj_ok:
        defect = G.mul(G.inv(rhs), lhs)
        if defect[0] == 0:
            forced = tuple(sorted({defect[1], (-defect[1]) % G.mod_i}))
    generates = len(G.closure([x, y])) == G.order
    return PairRelationReport(a_ok, b_ok, conj_ok, generates, lhs, rhs, forced)


def is_automorphism_pair(G: PairGroup, x: Element, y: Element) -> bool:
    return check_generator_images(G, x, y).ok


def make_automorphism(G: PairGroup, x: Element, y: Element) -> GroupMap:
    report = check_generator_images(G, x, y)
    if not report.ok:
        raise InvalidMapError(
            f"images a -> {G.element_str(x)}, b -> {G.element_str(y)} "
            f"violate: {report.violated()}"
        )
    return GroupMap(x, y, validated=True)


def identity_map(G: PairGroup) -> GroupMap:
    return GroupMap(G.gen_a, G.gen_b, validated=True)


def apply_map(G: PairGroup, f: GroupMap, g: Element) -> Element:
    """Image of g = b^j a^i, i.e. (image of b)^j (image of a)^i."""
    if not f.validated:
        raise InvalidMapError("map has not been validated as an automorphism")
    j, i = g
    return G.mul(G.pow(f.image_b, j), G.pow(f.image_a, i))


def compose_maps(G: PairGroup, f1: GroupMap, f2: GroupMap) -> GroupMap:
    """The map 'apply f1, then f2'."""
    if not (f1.validated and f2.validated):
        raise InvalidMapError("map has not been validated as an automorphism")
    return GroupMap(
        apply_map(G, f2, f1.image_a),
        apply_map(G, f2, f1.image_b),
        validated=True,
    )


def map_order(G: PairGroup, f: GroupMap) -> int:
    if not f.validated:
        raise InvalidMapError("map has not been validated as an automorphism")
    ident = (G.gen_a, G.gen_b)
    cur = f
    k = 1
    while (cur.image_a, cur.image_b) != ident:
        cur = compose_maps(G, cur, f)
        k += 1
        if k > G.order:
            raise InvalidMapError("map does not power to the identity")
    return k


def apply_map_to_set(G: PairGroup, f: GroupMap, items: Iterable[Element]) -> frozenset[Element]:
    return frozenset(apply_map(G, f, g) for g in items)


def express_in_images(
    G: PairGroup, x: Element, y: Element, targets: Sequence[Element]
) -> list[tuple[int, ...]]:
    """Words over (x, y) reaching each target, by breadth-first search.

    Raises InvalidMapError if some target is outside <x, y>.  Used to carry a
    map defined on an arbitrary generating pair back to images of (a, b):
    evaluate the words for a and b at the desired images of x and y.
    """
    gens = (x, y)
    parent: dict[Element, tuple[Element, int] | None] = {G.identity: None}
    frontier = [G.identity]
    wanted = set(targets)
    while frontier and not wanted <= parent.keys():
        new = []
        for el in frontier:
            for idx, g in enumerate(gens):
                nxt = G.mul(el, g)
                if nxt not in parent:
                    parent[nxt] = (el, idx)
                    new.append(nxt)
        if len(parent) > CLOSURE_BUDGET:
            raise BudgetError("word search exceeds the enumeration budget")
        frontier = new
    words = []
    for t in targets:
        t = (t[0] % G.mod_j, t[1] % G.mod_i)
        if t not in parent:
            raise InvalidMapError(f"{G.element_str(t)} is not in the span of the pair")
        word = []
        cur = t
        while parent[cur] is not None:
            prev, idx = parent[cur]
            word.append(idx)
            cur = prev
        words.append(tuple(reversed(word)))
    return words


def evaluate_word(G: PairGroup, word: Sequence[int], x: Element, y: Element) -> Element:
    out = G.identity
    gens = (x, y)
    for idx in word:
        out = G.mul(out, gens[idx])
    return out
