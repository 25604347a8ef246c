"""Normal cube paths: words of letters and their normal forms.

A Word is a tuple of letters (each letter a canonically sorted tuple of
pairwise-commuting, non-inverse symbols).  A word is *normal* when for
every adjacent pair ``alpha, beta`` and every symbol ``s`` of ``beta``,
``s`` fails to commute with at least one symbol of ``alpha`` and
``s^-1`` is not in ``alpha``.  Every group element has exactly one
normal representative; ``normalize`` computes it by folding single
symbols in from the left, which changes the symbol count by exactly one
at each step.

Text grammar: letters are whitespace-separated; a letter is either a
bare token (``a``, ``a^-1``) abbreviating a singleton or a braced list
``{a,b^-1}``.  Canonical output always prints braces with symbols in
alphabet order.
"""

import re

from .alphabet import GuardExceeded, guard_limit


class WordSyntaxError(ValueError):
    """Unparseable word text (bad token, unknown symbol)."""


class InvalidLetterError(ValueError):
    """Syntactically fine letter whose symbols do not form a clique."""


_TOKEN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\^-1)?$")


def parse_word(alphabet, text):
    letters = []
    for chunk in text.split():
        if chunk.startswith("{"):
            if not chunk.endswith("}") or len(chunk) < 3:
                raise WordSyntaxError("malformed letter %r" % (chunk,))
            toks = chunk[1:-1].split(",")
        else:
            toks = [chunk]
        for tok in toks:
            if not _TOKEN.match(tok):
                raise WordSyntaxError("malformed token %r" % (tok,))
            if tok not in alphabet.index:
                raise WordSyntaxError("unknown symbol %r" % (tok,))
        try:
            letters.append(alphabet.letter(toks))
        except ValueError as exc:
            raise InvalidLetterError(str(exc)) from None
    return tuple(letters)


def format_letter(letter):
    return "{%s}" % ",".join(letter)


def format_word(word):
    return " ".join(format_letter(l) for l in word)


def flatten_word(word):
    """Sigma0-expansion: symbols of each letter in canonical order."""
    return tuple(s for letter in word for s in letter)


def word_from_symbols(symbols):
    return tuple((s,) for s in symbols)


def symbol_length(word):
    return sum(len(letter) for letter in word)


def normal_pair(alphabet, alpha, beta):
    # beta may follow alpha in a normal word
    for s in beta:
        if alphabet.inverse[s] in alpha:
            return False
        if alphabet.commutes_with_all(s, alpha):
            return False
    return True


def is_normal(alphabet, word):
    for letter in word:
        if alphabet.letter(letter) != tuple(letter):
            return False
    for i in range(len(word) - 1):
        if not normal_pair(alphabet, word[i], word[i + 1]):
            return False
    return True


def concat_letter_case(alphabet, v, s):
    """Append one symbol to a normal word; returns (result, case 1..4).

    Exactly one case applies and the symbol count moves by +1 (cases 1
    and 4) or -1 (cases 2 and 3).
    """
    if s not in alphabet.index:
        raise ValueError("unknown symbol %r" % (s,))
    if not v:
        return ((s,),), 1
    inv_s = alphabet.inverse[s]
    last = v[-1]
    if inv_s in last:
        trimmed = tuple(t for t in last if t != inv_s)
        return (v[:-1] + (trimmed,) if trimmed else v[:-1]), 2
    if not alphabet.commutes_with_all(s, last):
        return v + ((s,),), 1
    # s commutes with a maximal tail v[k:]; k is minimal
    k = len(v) - 1
    while k > 0 and alphabet.commutes_with_all(s, v[k - 1]):
        k -= 1
    if k > 0 and inv_s in v[k - 1]:
        trimmed = tuple(t for t in v[k - 1] if t != inv_s)
        # a normal word cannot have v[k-1] == {inv_s} here, so the
        # letter survives; keep the function total anyway
        middle = (trimmed,) if trimmed else ()
        return v[:k - 1] + middle + v[k:], 3
    merged = tuple(sorted(v[k] + (s,), key=alphabet.sort_key))
    return v[:k] + (merged,) + v[k + 1:], 4


def concat_letter(alphabet, v, s):
    return concat_letter_case(alphabet, v, s)[0]


def normalize(alphabet, word):
    v = ()
    for letter in word:
        for s in sorted(letter, key=alphabet.sort_key):
            v = concat_letter(alphabet, v, s)
    return v


def invert_word(alphabet, word):
    inv = alphabet.inverse
    rev = tuple(
        tuple(sorted((inv[s] for s in letter), key=alphabet.sort_key))
        for letter in reversed(word))
    return normalize(alphabet, rev)


def equivalent(alphabet, v, w):
    return normalize(alphabet, v) == normalize(alphabet, w)


def _find_cancellation(alphabet, word):
    # leftmost-first: by start letter, then symbol order, then end letter.
    # A pair (i, s, j) cancels when s sits in word[i], s^-1 in word[j] and
    # s commutes with every symbol strictly between them.
    for i in range(len(word)):
        for s in word[i]:
            inv_s = alphabet.inverse[s]
            for j in range(i + 1, len(word)):
                if inv_s in word[j]:
                    return i, s, j
                if not alphabet.commutes_with_all(s, word[j]):
                    break
    return None


def reduce_word(alphabet, word):
    """Delete cancelling symbol pairs until the word is reduced.

    The result is equivalent to the input, is reduced (its symbol count
    equals the l1 distance it realizes) and is reached deterministically.
    """
    word = tuple(alphabet.letter(l) for l in word)
    while True:
        found = _find_cancellation(alphabet, word)
        if found is None:
            return word
        i, s, j = found
        out = []
        for k, letter in enumerate(word):
            if k == i:
                letter = tuple(t for t in letter if t != s)
            elif k == j:
                letter = tuple(t for t in letter if t != alphabet.inverse[s])
            if letter:
                out.append(letter)
        word = tuple(out)


def l1_distance(alphabet, v, w):
    return symbol_length(normalize(alphabet, invert_word(alphabet, v) + tuple(w)))


def children_normal(alphabet, v):
    """Letters that extend the normal word v by one normal letter."""
    from .alphabet import enumerate_letters
    letters = enumerate_letters(alphabet)
    if not v:
        return list(letters)
    return [b for b in letters if normal_pair(alphabet, v[-1], b)]


INITIAL_STATE = "initial"


class NormalAutomaton:
    """Finite automaton over the letter alphabet; all states accepting.

    States are INITIAL_STATE plus letters; the transition function is
    partial.  Reading a word letter by letter succeeds exactly on the
    language the automaton encodes.
    """

    def __init__(self, alphabet, states, transitions):
        self.alphabet = alphabet
        self.states = tuple(states)
        self.transitions = transitions  # dict state -> {letter: state}

    def transition(self, state, letter):
        return self.transitions.get(state, {}).get(letter)

    def accepts(self, word):
        state = INITIAL_STATE
        for letter in word:
            state = self.transition(state, letter)
            if state is None:
                return False
        return True

    def _state_name(self, state):
        return state if isinstance(state, str) else format_letter(state)

    def edge_list(self):
        out = []
        for state in self.states:
            for letter, target in sorted(
                    self.transitions.get(state, {}).items()):
                out.append((self._state_name(state), format_letter(letter),
                            self._state_name(target)))
        return out

    def to_json(self):
        return {
            "states": [self._state_name(s) for s in self.states],
            "initial": INITIAL_STATE,
            "transitions": [list(e) for e in self.edge_list()],
        }

    def to_dot(self):
        lines = ["digraph automaton {"]
        for s in self.states:
            lines.append('  "%s";' % self._state_name(s))
        for src, letter, dst in self.edge_list():
            lines.append('  "%s" -> "%s" [label="%s"];' % (src, dst, letter))
        lines.append("}")
        return "\n".join(lines)


def build_normal_automaton(alphabet, max_letters=None):
    """The normal-word acceptor: one state per letter plus the start state.

    From the start every letter may be read; from state alpha exactly the
    letters beta with normal_pair(alpha, beta).  The reachable language is
    the set of normal words.
    """
    from .alphabet import enumerate_letters
    letters = enumerate_letters(alphabet)
    limit = guard_limit(4096, max_letters)
    if len(letters) > limit:
        raise GuardExceeded("%d letters exceeds guard %d" % (len(letters), limit))
    transitions = {INITIAL_STATE: {b: b for b in letters}}
    for a in letters:
        transitions[a] = {b: b for b in letters if normal_pair(alphabet, a, b)}
    return NormalAutomaton(alphabet, (INITIAL_STATE,) + tuple(letters), transitions)


def build_cube_automaton(alphabet, max_letters=None):
    """Single-state acceptor of all words of letters (cube paths)."""
    from .alphabet import enumerate_letters
    letters = enumerate_letters(alphabet)
    limit = guard_limit(4096, max_letters)
    if len(letters) > limit:
        raise GuardExceeded("%d letters exceeds guard %d" % (len(letters), limit))
    transitions = {INITIAL_STATE: {b: INITIAL_STATE for b in letters}}
    return NormalAutomaton(alphabet, (INITIAL_STATE,), transitions)
