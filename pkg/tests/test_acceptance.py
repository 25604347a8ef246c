"""End-to-end acceptance suite: ten numbered cross-library checks.

Each test prints one ``[criterion NN] PASS``/``FAIL`` line; run with
``pytest -v`` (or ``-s`` to see the lines on success too).  Everything
here is exact — no tolerances — and the timed criteria assert their
stated budgets.
"""

import functools
import itertools
import random
import time

from cubeaut import (
    TYPE1,
    TYPE2,
    admits_star_n,
    build_report,
    check_axioms,
    ck_link_fact,
    ck_orbit_experiment,
    classify_type,
    compatible,
    enumerate_ball,
    equivalent,
    flexibly_vertex_transitive,
    has_ad_palindrome_pattern,
    is_discrete,
    link_graph,
    normalize,
    oracle_equal,
    peel_stabilizer,
    pile,
    portrait_of,
    topological_generators,
)
from cubeaut.alphabet import (
    DefiningGraph,
    LabelMap,
    build_alphabet,
    enumerate_label_isomorphisms,
    enumerate_letters,
)
from cubeaut.analysis import nondiscreteness_witness
from cubeaut.automorphisms import TRANSLATE, GroupElement, at_vertex
from cubeaut.words import build_normal_automaton, is_normal, symbol_length

from conftest import make_alphabet
from helpers import (
    brute_force_label_isos,
    dp_has_pattern,
    random_symbols,
    singleton_word,
)

ALL_GRAPHS = ("z", "z2", "f2", "c5", "ck")


def criterion(label):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print("\n[%s] FAIL" % label)
                raise
            print("\n[%s] PASS" % label)
        return wrapper
    return deco


def all_symbol_words(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=length)


@criterion("criterion 01: oracle equivalence")
def test_criterion_01_oracle_equivalence():
    start = time.monotonic()
    for name in ALL_GRAPHS:
        alphabet = make_alphabet(name)
        # partition equality over all words of length <= 5 decides
        # equivalent(v, w) == oracle_equal(v, w) for every pair at once
        norm_to_pile = {}
        pile_to_norm = {}
        for word in all_symbol_words(alphabet, 5):
            nk = normalize(alphabet, singleton_word(word))
            pk = pile(alphabet, word).key()
            assert norm_to_pile.setdefault(nk, pk) == pk
            assert pile_to_norm.setdefault(pk, nk) == nk
        rng = random.Random(101)
        for _ in range(10_000):
            v = random_symbols(rng, alphabet, 8)
            w = random_symbols(rng, alphabet, 8)
            assert equivalent(alphabet, singleton_word(v), singleton_word(w)) \
                == oracle_equal(alphabet, v, w)
    assert time.monotonic() - start < 180


@criterion("criterion 02: normal-form soundness")
def test_criterion_02_normal_form_soundness():
    for name in ALL_GRAPHS:
        alphabet = make_alphabet(name)
        inv = alphabet.inverse
        rng = random.Random(202)
        for _ in range(1000):
            w = tuple(random_symbols(rng, alphabet, 8))
            nf = normalize(alphabet, singleton_word(w))
            assert is_normal(alphabet, nf)
            assert normalize(alphabet, nf) == nf
            for i in range(len(w) - 1):
                if alphabet.commutes(w[i], w[i + 1]):
                    swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                    assert normalize(alphabet, singleton_word(swapped)) == nf
                if w[i + 1] == inv[w[i]]:
                    dropped = w[:i] + w[i + 2:]
                    assert normalize(alphabet, singleton_word(dropped)) == nf
            for i in range(len(w) + 1):
                for s in alphabet.symbols:
                    padded = w[:i] + (s, inv[s]) + w[i:]
                    assert normalize(alphabet, singleton_word(padded)) == nf


@criterion("criterion 03: automaton matches the normal-word predicate")
def test_criterion_03_automaton_correctness():
    start = time.monotonic()
    alphabet = make_alphabet("ck")
    letters = enumerate_letters(alphabet)
    assert len(letters) == 20
    automaton = build_normal_automaton(alphabet)
    count = 0
    for length in range(5):
        for word in itertools.product(letters, repeat=length):
            assert automaton.accepts(word) == is_normal(alphabet, word)
            count += 1
    assert count == 1 + 20 + 400 + 8000 + 160_000
    assert time.monotonic() - start < 60


def _single_letter_atoms(alphabet):
    # bases are all one-letter words; a letter may be a multi-symbol clique
    out = []
    isos = enumerate_label_isomorphisms(alphabet)
    for letter in enumerate_letters(alphabet):
        base = (letter,)
        for sigma in isos:
            if sigma.is_identity() or not compatible(alphabet, sigma, base):
                continue
            out.append((base, sigma))
    return out[:100]


@criterion("criterion 04: vertex-atom axioms on the radius-5 ball")
def test_criterion_04_generator_axioms():
    for name, expected in (("ck", 24), ("f2", 20)):
        alphabet = make_alphabet(name)
        atoms = _single_letter_atoms(alphabet)
        assert len(atoms) == expected
        ball3 = enumerate_ball(alphabet, 3)
        for base, sigma in atoms:
            g = GroupElement(alphabet, (at_vertex(alphabet, base, sigma),))
            report = check_axioms(g, 5)
            assert report.passed, report.failures
            assert all(report.results.values())
            assert portrait_of(g, base) == sigma
            # independent spot check of the required fixes at radius 3
            for v in ball3.vertices:
                if classify_type(alphabet, base, v) in (TYPE1, TYPE2):
                    assert g.apply(v) == v


@criterion("criterion 05: peeling basepoint stabilizers sphere by sphere")
def test_criterion_05_peeling():
    for name in ("ck", "f2"):
        alphabet = make_alphabet(name)
        pool = [at for at in topological_generators(alphabet)
                if at.kind != TRANSLATE]
        ball4 = enumerate_ball(alphabet, 4)
        rng = random.Random(505)
        for _ in range(50):
            atoms = []
            for _ in range(rng.randint(1, 4)):
                at = rng.choice(pool)
                atoms.append(at.inverse() if rng.random() < 0.5 else at)
            g = GroupElement(alphabet, tuple(atoms))
            _, residual = peel_stabilizer(g, 3)
            for v in ball4.vertices:
                assert residual.apply(v) == v


@criterion("criterion 06: discreteness dichotomy over all small graphs")
def test_criterion_06_discreteness_dichotomy():
    names = "abcd"
    seen_on_four = 0
    for n in range(1, 5):
        gens = list(names[:n])
        for edges in itertools.chain.from_iterable(
                itertools.combinations(tuple(itertools.combinations(gens, 2)), k)
                for k in range(n * (n - 1) // 2 + 1)):
            graph = DefiningGraph("g", gens, [list(e) for e in edges])
            alphabet = build_alphabet(graph)
            witness = nondiscreteness_witness(alphabet)
            discrete = is_discrete(alphabet)
            assert discrete == graph.is_complete() == (witness is None)
            if n == 4:
                seen_on_four += 1
            if witness is None:
                continue
            s, t = witness
            sigma = LabelMap.from_cycles(alphabet, [(s, alphabet.inverse[s])])
            assert not sigma.is_identity()
            bases = [normalize(alphabet, singleton_word((t,) * k))
                     for k in range(1, 6)]
            lengths = [symbol_length(v) for v in bases]
            assert lengths == sorted(set(lengths)) and len(set(bases)) == 5
            assert all(compatible(alphabet, sigma, v) for v in bases)
    assert seen_on_four == 64


@criterion("criterion 07: the chain-link automorphisms pinned to swaps")
def test_criterion_07_ck_link_fact():
    start = time.monotonic()
    alphabet = make_alphabet("ck")
    autos = [LabelMap(alphabet, m) for m in brute_force_label_isos(alphabet)]
    assert len(autos) == 32
    swaps = [LabelMap.from_cycles(alphabet, [(x, alphabet.inverse[x])])
             for x in "abcd"]
    products = set()
    for mask in itertools.product((0, 1), repeat=4):
        prod = LabelMap.identity(alphabet)
        for bit, swap in zip(mask, swaps):
            if bit:
                prod = prod.compose(swap)
        products.add(prod)
    assert len(products) == 16
    pinned = {m for m in autos
              if any(m(s) in (s, alphabet.inverse[s]) for s in alphabet.symbols)}
    assert pinned == products
    assert ck_link_fact() == {
        "automorphisms": 32,
        "swap_products": 16,
        "pinned_are_swap_products": True,
        "reversal_present": True,
    }
    assert time.monotonic() - start < 60


@criterion("criterion 08: zig-zag orbit stays at distance >= 2n")
def test_criterion_08_orbit_distance_bound():
    start = time.monotonic()
    for n in (1, 2, 3, 4):
        report = ck_orbit_experiment(n, trials=200, pool_depth=10, seed=7)
        assert report["violations"] == []
        assert report["min_distance"] >= 2 * n
        assert report["star_n_checked"] is True
        assert len(report["distances"]) == 200
    assert time.monotonic() - start < 300


@criterion("criterion 09: matcher equals the interval-DP reference")
def test_criterion_09_palindrome_machinery():
    alphabet = make_alphabet("ck")
    positives = []
    for length in range(13):
        for bases in itertools.product("ad", repeat=length):
            witness = has_ad_palindrome_pattern(bases, alphabet)
            assert (witness is not None) == dp_has_pattern(bases)
            if witness is not None:
                assert witness.validate(alphabet, bases)
                positives.append(bases)
    rng = random.Random(909)
    for _ in range(500):
        bases = [rng.choice("ad") for _ in range(rng.randint(0, 12))]
        signed = [b if rng.random() < 0.5 else b + "^-1" for b in bases]
        plain = has_ad_palindrome_pattern(bases, alphabet)
        assert (has_ad_palindrome_pattern(signed, alphabet) is None) \
            == (plain is None)
    for _ in range(1000):
        u = rng.choice(positives)
        v = rng.choice(positives)
        joined = u + v
        witness = has_ad_palindrome_pattern(joined, alphabet)
        assert witness is not None and witness.validate(alphabet, joined)


@criterion("criterion 10: chain report facts and flexible transitivity")
def test_criterion_10_reports():
    ck = make_alphabet("ck")
    report = build_report(ck)
    assert report.simplicity_condition is False
    assert report.local_compactness_condition is True
    assert report.discrete is False
    assert flexibly_vertex_transitive(link_graph(make_alphabet("f2"))) is True
    assert flexibly_vertex_transitive(link_graph(ck)) is False
