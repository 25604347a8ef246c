"""Independent word-problem oracle: pilings (heaps of pieces).

Deliberately separate from the normal-form machinery in words.py; the
two decide equality by unrelated algorithms and cross-validate each
other.  A piling keeps one stack per generator.  Pushing a symbol drops
a signed token on its own generator's stack and an anonymous marker on
the stack of every non-commuting generator; pushing the inverse of the
token currently on top (with all of its markers still on top of their
stacks) annihilates instead.  Two words represent the same group element
exactly when their pilings coincide.
"""

from .alphabet import GuardExceeded, guard_limit

TOKEN_POS = 1
TOKEN_NEG = -1
MARKER = 0


class Piling:

    def __init__(self, alphabet):
        self.alphabet = alphabet
        gens = alphabet.graph.generators
        self.stacks = {g: [] for g in gens}
        # generators whose symbols never commute with g's symbols
        self.clashing = {
            g: tuple(h for h in gens
                     if h != g and not alphabet.graph.adjacent(g, h))
            for g in gens
        }

    def push(self, symbol):
        a = self.alphabet
        g = a.base[symbol]
        sign = TOKEN_NEG if symbol != g else TOKEN_POS
        own = self.stacks[g]
        others = self.clashing[g]
        if own and own[-1] == -sign and \
                all(self.stacks[h] and self.stacks[h][-1] == MARKER for h in others):
            own.pop()
            for h in others:
                self.stacks[h].pop()
            # same-generator tokens never commute, so the cancelled pair
            # really was adjacent in some representative
            return
        own.append(sign)
        for h in others:
            self.stacks[h].append(MARKER)

    def push_word(self, symbols):
        for s in symbols:
            self.push(s)
        return self

    def key(self):
        return tuple(tuple(self.stacks[g]) for g in self.alphabet.graph.generators)

    def is_trivial(self):
        return all(not st for st in self.stacks.values())

    def copy(self):
        other = Piling(self.alphabet)
        for g, st in self.stacks.items():
            other.stacks[g] = list(st)
        return other

    def __eq__(self, other):
        return isinstance(other, Piling) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def pile(alphabet, symbols):
    return Piling(alphabet).push_word(symbols)


def oracle_equal(alphabet, v, w):
    """Do two flat symbol sequences represent the same group element?"""
    for s in list(v) + list(w):
        if s not in alphabet.index:
            raise ValueError("unknown symbol %r" % (s,))
    return pile(alphabet, v).key() == pile(alphabet, w).key()


def oracle_classes(alphabet, maxlen, max_words=None):
    """Partition all symbol sequences of length <= maxlen by piling.

    Returns a dict mapping piling key -> list of words (tuples of
    symbols) in enumeration order.  Guarded by total word count.
    """
    limit = guard_limit(10 ** 6, max_words)
    n = len(alphabet.symbols)
    total = sum(n ** k for k in range(maxlen + 1))
    if total > limit:
        raise GuardExceeded("%d words exceeds guard %d" % (total, limit))
    classes = {}
    frontier = [((), Piling(alphabet))]
    classes.setdefault(frontier[0][1].key(), []).append(())
    for _ in range(maxlen):
        grown = []
        for word, piling in frontier:
            for s in alphabet.symbols:
                p2 = piling.copy()
                p2.push(s)
                w2 = word + (s,)
                classes.setdefault(p2.key(), []).append(w2)
                grown.append((w2, p2))
        frontier = grown
    return classes
