"""Symmetrized alphabets of right-angled Artin groups.

A defining graph on generators ``a, b, ...`` yields the symbol set
``Sigma0 = {a, a^-1, b, b^-1, ...}`` together with formal inversion (a
fixpoint-free involution) and a commutation relation: two symbols
commute exactly when their underlying generators are joined by an edge
and the symbols are neither equal nor mutually inverse.  In particular
no symbol commutes with itself or with its own inverse.

Nonempty sets of pairwise commuting symbols ("letters") are the cliques
of the commutation graph; they label the diagonals of the cubes of the
universal cover of the Salvetti complex.  Label isomorphisms are the
bijections of ``Sigma0`` preserving commutation in both directions ---
equivalently, the automorphisms of the commutation graph.  They are not
required to respect inversion.
"""

import itertools
import json
import os
import re

import networkx as nx

GUARD_ENV = "CUBEAUT_GUARD_OVERRIDE"

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its configured size guard."""


def guard_limit(default, explicit=None):
    """Effective guard: explicit argument wins, else env override, else default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(GUARD_ENV)
    if env:
        return max(default, int(env))
    return default


class DefiningGraph:
    """A finite simplicial graph with named vertices (the generators)."""

    def __init__(self, name, generators, edges):
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise ValueError("duplicate generator names")
        for g in generators:
            if not _IDENT.match(g):
                raise ValueError("bad generator name: %r" % (g,))
        gen_set = set(generators)
        norm_edges = set()
        for e in edges:
            u, v = e
            if u not in gen_set or v not in gen_set:
                raise ValueError("edge endpoint %r is not a generator" % (e,))
            if u == v:
                raise ValueError("loop edge at %r" % (u,))
            norm_edges.add(frozenset((u, v)))
        self.name = name
        self.generators = generators
        self.edges = frozenset(norm_edges)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ValueError("graph document must be a JSON object")
        try:
            name = data["name"]
            generators = data["generators"]
            edges = data["edges"]
        except KeyError as exc:
            raise ValueError("graph document missing key %s" % (exc,))
        return cls(name, generators, edges)

    def to_dict(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "edges": sorted(sorted(e) for e in self.edges),
        }

    def adjacent(self, u, v):
        return frozenset((u, v)) in self.edges

    def neighbors(self, g):
        return sorted(h for h in self.generators if self.adjacent(g, h))

    def is_complete(self):
        n = len(self.generators)
        return len(self.edges) == n * (n - 1) // 2

    def __repr__(self):
        return "DefiningGraph(%r, %d generators, %d edges)" % (
            self.name, len(self.generators), len(self.edges))


def load_defining_graph(path):
    with open(path) as fh:
        return DefiningGraph.from_dict(json.load(fh))


def inverse_symbol_text(gen):
    return gen + "^-1"


class Alphabet:
    """The symmetrized alphabet of a defining graph.

    Symbols are plain strings: a generator ``a`` contributes ``"a"`` and
    ``"a^-1"``, in declaration order.  Exposes the involution, the
    commutation relation and the canonical total order on symbols.
    """

    def __init__(self, graph):
        self.graph = graph
        symbols = []
        inverse = {}
        base = {}
        for g in graph.generators:
            gi = inverse_symbol_text(g)
            symbols.extend((g, gi))
            inverse[g] = gi
            inverse[gi] = g
            base[g] = g
            base[gi] = g
        self.symbols = tuple(symbols)
        self.index = {s: i for i, s in enumerate(symbols)}
        self.inverse = inverse
        self.base = base
        # commuting partners: everything over an edge of the defining
        # graph, minus the symbol itself and its inverse (never partners)
        partners = {}
        for s in symbols:
            ps = set()
            for t in symbols:
                if t == s or t == inverse[s]:
                    continue
                if graph.adjacent(base[s], base[t]):
                    ps.add(t)
            partners[s] = frozenset(ps)
        self.partners = partners

    def commutes(self, s, t):
        return t in self.partners[s]

    def commutes_with_all(self, s, letter):
        return all(t in self.partners[s] for t in letter)

    def sort_key(self, s):
        return self.index[s]

    def letter(self, symbols):
        """Canonical letter from an iterable of symbols; validates cliqueness."""
        symbols = list(symbols)
        for s in symbols:
            if s not in self.index:
                raise ValueError("unknown symbol %r" % (s,))
        syms = sorted(set(symbols), key=self.sort_key)
        if len(syms) != len(symbols):
            raise ValueError("repeated symbol in letter")
        if not syms:
            raise ValueError("letters are nonempty")
        for s, t in itertools.combinations(syms, 2):
            if not self.commutes(s, t):
                raise ValueError("symbols %r and %r do not commute" % (s, t))
        return tuple(syms)

    def is_letter(self, symbols):
        try:
            self.letter(symbols)
        except ValueError:
            return False
        return True

    def __repr__(self):
        return "Alphabet(%r)" % (self.graph.name,)


def build_alphabet(graph):
    return Alphabet(graph)


def enumerate_letters(alphabet):
    """All letters (cliques of the commutation graph), deterministic order.

    Ordered by size then lexicographically in the symbol order, so the
    singletons come first.
    """
    found = []
    n = len(alphabet.symbols)

    def extend(clique, start):
        for i in range(start, n):
            s = alphabet.symbols[i]
            if all(alphabet.commutes(s, t) for t in clique):
                bigger = clique + (s,)
                found.append(bigger)
                extend(bigger, i + 1)

    extend((), 0)
    return sorted(found, key=lambda c: (len(c), tuple(alphabet.index[s] for s in c)))


class LabelMap:
    """A bijection of Sigma0, extended to letters symbol by symbol."""

    __slots__ = ("alphabet", "mapping", "_key")

    def __init__(self, alphabet, mapping):
        syms = alphabet.symbols
        if set(mapping) != set(syms) or set(mapping.values()) != set(syms):
            raise ValueError("mapping is not a bijection of the symbol set")
        self.alphabet = alphabet
        self.mapping = dict(mapping)
        self._key = tuple(self.mapping[s] for s in syms)

    @classmethod
    def identity(cls, alphabet):
        return cls(alphabet, {s: s for s in alphabet.symbols})

    @classmethod
    def from_cycles(cls, alphabet, cycles):
        mapping = {s: s for s in alphabet.symbols}
        for cyc in cycles:
            for s in cyc:
                if s not in alphabet.index:
                    raise ValueError("unknown symbol %r" % (s,))
            for s, t in zip(cyc, cyc[1:] + cyc[:1]):
                mapping[s] = t
        return cls(alphabet, mapping)

    def __call__(self, s):
        return self.mapping[s]

    def apply_letter(self, letter):
        return tuple(sorted((self.mapping[s] for s in letter),
                            key=self.alphabet.sort_key))

    def compose(self, other):
        """self after other."""
        return LabelMap(self.alphabet,
                        {s: self.mapping[other.mapping[s]] for s in self.alphabet.symbols})

    def inverse(self):
        return LabelMap(self.alphabet, {v: k for k, v in self.mapping.items()})

    def is_identity(self):
        return all(k == v for k, v in self.mapping.items())

    def fixes_all(self, symbols):
        return all(self.mapping[s] == s for s in symbols)

    def moved(self):
        return [s for s in self.alphabet.symbols if self.mapping[s] != s]

    def cycles(self):
        """Disjoint cycle decomposition (nontrivial cycles only)."""
        seen = set()
        out = []
        for s in self.alphabet.symbols:
            if s in seen or self.mapping[s] == s:
                continue
            cyc = [s]
            seen.add(s)
            t = self.mapping[s]
            while t != s:
                cyc.append(t)
                seen.add(t)
                t = self.mapping[t]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, LabelMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        cycs = self.cycles()
        if not cycs:
            return "LabelMap(id)"
        return "LabelMap(%s)" % "".join("(%s)" % " ".join(c) for c in cycs)


def is_label_isomorphism(alphabet, mapping):
    """Does the bijection preserve commutation in both directions?

    Accepts a LabelMap or a plain dict; raises if it is not a bijection
    of the full symbol set.
    """
    if isinstance(mapping, LabelMap):
        m = mapping.mapping
    else:
        syms = set(alphabet.symbols)
        if set(mapping) != syms or set(mapping.values()) != syms:
            raise ValueError("mapping is not a bijection of the symbol set")
        m = mapping
    for s, t in itertools.combinations(alphabet.symbols, 2):
        if alphabet.commutes(s, t) != alphabet.commutes(m[s], m[t]):
            return False
    return True


def commutation_graph(alphabet):
    g = nx.Graph()
    g.add_nodes_from(alphabet.symbols)
    for s, t in itertools.combinations(alphabet.symbols, 2):
        if alphabet.commutes(s, t):
            g.add_edge(s, t)
    return g


def enumerate_label_isomorphisms(alphabet, max_symbols=None):
    """All label isomorphisms, i.e. automorphisms of the commutation graph.

    Enumerated with VF2 on the commutation graph rather than by filtering
    all (2n)! permutations; a factorial cross-check lives in the tests.
    Deterministic order (sorted by image tuple).  Guarded by symbol count
    (default 12, raise via the max_symbols argument or CUBEAUT_GUARD_OVERRIDE).
    """
    limit = guard_limit(12, max_symbols)
    if len(alphabet.symbols) > limit:
        raise GuardExceeded(
            "label-isomorphism enumeration over %d symbols exceeds guard %d"
            % (len(alphabet.symbols), limit))
    g = commutation_graph(alphabet)
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g)
    maps = [LabelMap(alphabet, dict(m)) for m in matcher.isomorphisms_iter()]
    maps.sort(key=lambda m: m._key)
    return maps


def tau(sigma, beta):
    """Adjust a label isomorphism across a letter.

    ``tau(sigma, beta)`` post-composes sigma with the transpositions
    ``(sigma(s^-1)  sigma(s)^-1)`` for each ``s`` in beta; for the empty
    letter it is sigma itself.  The transposition supports are pairwise
    disjoint (asserted), and the result is again a label isomorphism.
    """
    alphabet = sigma.alphabet
    inv = alphabet.inverse
    swaps = []
    supports = []
    for s in beta:
        x = sigma(inv[s])
        y = inv[sigma(s)]
        swaps.append((x, y))
        supports.append({x, y})
    for i in range(len(supports)):
        for j in range(i + 1, len(supports)):
            assert not (supports[i] & supports[j]), \
                "transposition supports overlap on %r" % (supports[i] & supports[j],)
    mapping = {}
    for u in alphabet.symbols:
        v = sigma(u)
        for x, y in swaps:
            if v == x:
                v = y
            elif v == y:
                v = x
        mapping[u] = v
    return LabelMap(alphabet, mapping)
