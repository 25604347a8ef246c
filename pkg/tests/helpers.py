"""Shared test utilities: random word generators and slow reference
implementations used to cross-check the library's fast routes."""

import itertools
from functools import lru_cache


def random_symbols(rng, alphabet, max_len, min_len=0):
    return [rng.choice(alphabet.symbols)
            for _ in range(rng.randint(min_len, max_len))]


def singleton_word(symbols):
    return tuple((s,) for s in symbols)


def brute_force_label_isos(alphabet):
    """Independent factorial-time enumeration (usable up to 8 symbols)."""
    syms = alphabet.symbols
    out = []
    for perm in itertools.permutations(syms):
        image = dict(zip(syms, perm))
        if all(alphabet.commutes(s, t) == alphabet.commutes(image[s], image[t])
               for i, s in enumerate(syms) for t in syms[i + 1:]):
            out.append(image)
    return out


def dp_has_pattern(bases):
    """Interval-DP reference for the well-nested same-base matching.

    A string matches iff it is empty or splits as x u x w with u, w
    matching; quadratic table, cubic time.
    """
    bases = tuple(bases)

    @lru_cache(maxsize=None)
    def match(i, j):
        if i == j:
            return True
        if (j - i) % 2:
            return False
        return any(bases[i] == bases[k] and match(i + 1, k) and match(k + 1, j)
                   for k in range(i + 1, j, 2))

    result = match(0, len(bases))
    match.cache_clear()
    return result
