"""Vertex geometry around a basepoint: reductions, types, compatibility, balls.

Vertices of the universal cover are identified with normal words based
at the basepoint (the empty word).  Appending a symbol either grows or
shrinks the l1 distance by one; the shrinking symbols determine the
letter alpha_v, and everything here (reducible letters, compatibility)
is a function of alpha_v alone.
"""

from dataclasses import dataclass, field

from .alphabet import GuardExceeded, enumerate_letters, guard_limit
from .words import (
    concat_letter,
    format_letter,
    format_word,
    invert_word,
    normalize,
    symbol_length,
)

TYPE1 = "Type1"
TYPE2 = "Type2"
TYPE3 = "Type3"


def reducible_append(alphabet, v, s):
    """Does appending the symbol s shorten the normal word v?"""
    return symbol_length(concat_letter(alphabet, v, s)) < symbol_length(v)


def cancelling_symbols(alphabet, v):
    # the symbols whose appending reduces; their inverses form alpha_v
    return frozenset(s for s in alphabet.symbols if reducible_append(alphabet, v, s))


def alpha_v(alphabet, v):
    """The letter of inverses of cancelling symbols (empty tuple at the basepoint)."""
    cancels = cancelling_symbols(alphabet, v)
    if not cancels:
        return ()
    return alphabet.letter(alphabet.inverse[s] for s in cancels)


def reducible_letter(alphabet, v, letter, cancels=None):
    if cancels is None:
        cancels = cancelling_symbols(alphabet, v)
    return any(s in cancels for s in letter)


def red_letters(alphabet, v):
    """All letters alpha with v*alpha reducible."""
    cancels = cancelling_symbols(alphabet, v)
    return [l for l in enumerate_letters(alphabet)
            if reducible_letter(alphabet, v, l, cancels)]


def same_reductions(alphabet, v, w):
    if not v or not w:
        raise ValueError("same_reductions is undefined at the basepoint")
    return alpha_v(alphabet, v) == alpha_v(alphabet, w)


def classify_type(alphabet, v, w):
    """Type of the vertex w relative to (basepoint, v); v must not be the basepoint.

    Type1: the path through v to w backtracks (v * w' is reducible for the
    reduced connector w').  Type2: no backtracking, and some reducible
    letter at v commutes past the whole connector.  Type3: the rest; such
    w are strictly farther from the basepoint than v.
    """
    if not v:
        raise ValueError("classify_type is undefined for the basepoint")
    w = tuple(w)
    connector = normalize(alphabet, invert_word(alphabet, v) + w)
    if symbol_length(normalize(alphabet, w)) < symbol_length(v) + symbol_length(connector):
        return TYPE1
    cancels = cancelling_symbols(alphabet, v)
    tail = [s for letter in connector for s in letter]
    for s in cancels:
        if alphabet.commutes_with_all(s, tail):
            return TYPE2
    return TYPE3


def compatible(alphabet, sigma, v):
    """Must sigma be the identity on everything a reducible letter at v touches?

    Enumerates the full letter set: for every letter alpha with v*alpha
    reducible, sigma has to fix alpha pointwise together with every
    letter commuting with alpha.
    """
    letters = enumerate_letters(alphabet)
    cancels = cancelling_symbols(alphabet, v)
    for alpha in letters:
        if not reducible_letter(alphabet, v, alpha, cancels):
            continue
        if not sigma.fixes_all(alpha):
            return False
        for beta in letters:
            if all(alphabet.commutes_with_all(s, alpha) for s in beta):
                if not sigma.fixes_all(beta):
                    return False
    return True


def compatible_symbolwise(alphabet, sigma, v):
    """Symbol-level criterion equivalent to compatible(): sigma fixes the
    cancelling symbols, everything commuting with one of them, and every
    symbol of every reducible letter."""
    cancels = cancelling_symbols(alphabet, v)
    fixed = set(cancels)
    for c in cancels:
        fixed |= alphabet.partners[c]
    return sigma.fixes_all(fixed)


@dataclass
class Ball:
    """The l1-ball of given radius about a center vertex."""
    alphabet: object
    center: tuple
    radius: int
    vertices: list = field(default_factory=list)
    distances: dict = field(default_factory=dict)

    def spheres(self):
        out = [[] for _ in range(self.radius + 1)]
        for v in self.vertices:
            out[self.distances[v]].append(v)
        return out

    def __contains__(self, v):
        return v in self.distances

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        out = []
        for v in self.vertices:
            for s in self.alphabet.symbols:
                w = concat_letter(self.alphabet, v, s)
                if w in self.distances:
                    out.append((v, s, w))
        return out

    def to_json(self):
        return {
            "radius": self.radius,
            "vertices": [format_word(v) for v in self.vertices],
            "edges": [[format_word(v), s, format_word(w)]
                      for v, s, w in self.edges()],
        }


def enumerate_ball(alphabet, radius, center=(), max_vertices=None):
    """BFS over symbol-appends; deterministic sphere-by-sphere order."""
    limit = guard_limit(10 ** 6, max_vertices)
    center = normalize(alphabet, center)
    ball = Ball(alphabet, center, radius)
    ball.vertices.append(center)
    ball.distances[center] = 0
    frontier = [center]
    for dist in range(1, radius + 1):
        grown = []
        for v in frontier:
            for s in alphabet.symbols:
                w = concat_letter(alphabet, v, s)
                if w in ball.distances:
                    continue
                if len(ball.distances) >= limit:
                    raise GuardExceeded(
                        "ball of radius %d exceeds %d vertices" % (radius, limit))
                ball.distances[w] = dist
                grown.append(w)
        grown.sort()
        ball.vertices.extend(grown)
        frontier = grown
    return ball
