"""Decision procedures and the orbit-distance experiment.

Graph-level criteria answer, for any defining graph: is the full
automorphism group of the universal cover discrete; does the halfspace
subgroup satisfy the simplicity condition; is it locally compact; is the
link flexibly vertex-transitive; is the graph a join / bipartite.

The second half is specific to the four-generator chain a-b-c-d: the
(a,d)-palindrome-pattern matcher, star_n decompositions, the exhaustive
link fact and the seeded experiment bounding how close products of
halfspace-fixing generators can pull (ad)^n back to the basepoint.
"""

import random
from dataclasses import dataclass

import networkx as nx

from .alphabet import (
    DefiningGraph,
    GuardExceeded,
    LabelMap,
    build_alphabet,
    commutation_graph,
    enumerate_label_isomorphisms,
    enumerate_letters,
    guard_limit,
)
from .automorphisms import (
    GroupElement,
    at_vertex,
    conjugate_generator,
    portrait_of,
)
from .geometry import compatible, same_reductions
from .words import concat_letter, flatten_word, normalize, symbol_length

# -- criteria for arbitrary defining graphs ----------------------------------


def nondiscreteness_witness(alphabet):
    """First pair of distinct, non-inverse, non-commuting symbols, if any."""
    for s in alphabet.symbols:
        for t in alphabet.symbols:
            if t in (s, alphabet.inverse[s]):
                continue
            if not alphabet.commutes(s, t):
                return (s, t)
    return None


def is_discrete(alphabet):
    """The full automorphism group is discrete iff the graph is complete."""
    return nondiscreteness_witness(alphabet) is None


def simplicity_condition(alphabet):
    """For every commuting pair, some symbol commutes with neither member.

    Returns (True, None) or (False, first offending pair).  The offending
    symbol may not be the inverse of either member of the pair.
    """
    symbols = alphabet.symbols
    for i, s in enumerate(symbols):
        for t in symbols[i + 1:]:
            if not alphabet.commutes(s, t):
                continue
            banned = {alphabet.inverse[s], alphabet.inverse[t]}
            if not any(r not in banned
                       and not alphabet.commutes(r, s)
                       and not alphabet.commutes(r, t)
                       for r in symbols):
                return False, (s, t)
    return True, None


def local_compactness_condition(alphabet):
    """Is there a symbol whose commuting set is pairwise tied?

    Tied means equal, mutually inverse, or commuting.  Returns
    (True, first witness symbol) or (False, None).
    """
    for s in alphabet.symbols:
        around = sorted(alphabet.partners[s], key=alphabet.sort_key)
        ok = True
        for i, t in enumerate(around):
            for r in around[i + 1:]:
                if t == r or t == alphabet.inverse[r] or alphabet.commutes(t, r):
                    continue
                ok = False
                break
            if not ok:
                break
        if ok:
            return True, s
    return False, None


def link_graph(alphabet):
    return commutation_graph(alphabet)


def flexibly_vertex_transitive(graph, max_vertices=None):
    """Can any vertex be carried to any other by an automorphism that
    also fixes some closed star pointwise?  Brute force over Aut(graph)."""
    limit = guard_limit(10, max_vertices)
    if graph.number_of_nodes() > limit:
        raise GuardExceeded(
            "flexible transitivity check on %d vertices exceeds guard %d"
            % (graph.number_of_nodes(), limit))
    autos = [dict(m) for m in
             nx.algorithms.isomorphism.GraphMatcher(graph, graph).isomorphisms_iter()]
    nodes = sorted(graph.nodes)
    stars = {u: {u} | set(graph.adj[u]) for u in nodes}
    for v in nodes:
        for w in nodes:
            if not any(phi[v] == w
                       and any(all(phi[x] == x for x in stars[u]) for u in nodes)
                       for phi in autos):
                return False
    return True


def defining_nx_graph(graph):
    g = nx.Graph()
    g.add_nodes_from(graph.generators)
    g.add_edges_from(tuple(e) for e in graph.edges)
    return g


def is_join(graph):
    """Is the defining graph a join of two nonempty subgraphs?"""
    g = defining_nx_graph(graph)
    if g.number_of_nodes() < 2:
        return False
    return not nx.is_connected(nx.complement(g))


def is_bipartite_graph(graph):
    return nx.is_bipartite(defining_nx_graph(graph))


@dataclass
class HypothesisReport:
    graph_name: str
    discrete: bool
    discreteness_witness: object
    simplicity_condition: bool
    simplicity_counterexample: object
    local_compactness_condition: bool
    local_compactness_witness: object
    flexibly_vertex_transitive: bool
    is_join: bool
    bipartite: bool
    sigma_size: int
    label_iso_count: int

    def to_json(self):
        return {
            "graph": self.graph_name,
            "discrete": self.discrete,
            "discreteness_witness": list(self.discreteness_witness)
            if self.discreteness_witness else None,
            "simplicity_condition": self.simplicity_condition,
            "simplicity_counterexample": list(self.simplicity_counterexample)
            if self.simplicity_counterexample else None,
            "local_compactness_condition": self.local_compactness_condition,
            "local_compactness_witness": self.local_compactness_witness,
            "flexibly_vertex_transitive": self.flexibly_vertex_transitive,
            "is_join": self.is_join,
            "bipartite": self.bipartite,
            "sigma_size": self.sigma_size,
            "label_iso_count": self.label_iso_count,
        }

    def to_text(self):
        data = self.to_json()
        width = max(len(k) for k in data)
        return "\n".join("%-*s  %s" % (width, k, v) for k, v in data.items())


def build_report(alphabet, max_symbols=None):
    witness = nondiscreteness_witness(alphabet)
    simple_ok, simple_pair = simplicity_condition(alphabet)
    lc_ok, lc_witness = local_compactness_condition(alphabet)
    return HypothesisReport(
        graph_name=alphabet.graph.name,
        discrete=witness is None,
        discreteness_witness=witness,
        simplicity_condition=simple_ok,
        simplicity_counterexample=simple_pair,
        local_compactness_condition=lc_ok,
        local_compactness_witness=lc_witness,
        flexibly_vertex_transitive=flexibly_vertex_transitive(
            link_graph(alphabet), max_vertices=max_symbols),
        is_join=is_join(alphabet.graph),
        bipartite=is_bipartite_graph(alphabet.graph),
        sigma_size=len(enumerate_letters(alphabet)),
        label_iso_count=len(enumerate_label_isomorphisms(
            alphabet, max_symbols=max_symbols)),
    )


# -- the four-generator chain -------------------------------------------------

CK_GENERATORS = ("a", "b", "c", "d")


def ck_graph():
    return DefiningGraph("ck", CK_GENERATORS,
                         [["a", "b"], ["b", "c"], ["c", "d"]])


def ck_alphabet():
    return build_alphabet(ck_graph())


def _ad_projection(alphabet, symbols):
    for s in symbols:
        if s not in alphabet.index:
            raise ValueError("unknown symbol %r" % (s,))
    return [(i, alphabet.base[s]) for i, s in enumerate(symbols)
            if alphabet.base[s] in ("a", "d")]


@dataclass(frozen=True)
class MatchWitness:
    """Non-crossing perfect matching of the a/d positions of a word.

    Pairs are (i, j) with i < j, indices into the original word; paired
    positions carry the same underlying generator.
    """
    pairs: tuple

    def matched_indices(self):
        return sorted(i for p in self.pairs for i in p)

    def validate(self, alphabet, symbols):
        proj = _ad_projection(alphabet, symbols)
        positions = [i for i, _ in proj]
        base = {i: b for i, b in proj}
        if self.matched_indices() != positions:
            return False
        for i, j in self.pairs:
            if not i < j or base[i] != base[j]:
                return False
        # well-nested: no two pairs interleave
        for i, j in self.pairs:
            for x, y in self.pairs:
                if i < x < j < y:
                    return False
        return True


def has_ad_palindrome_pattern(symbols, alphabet=None):
    """Stack matcher for (a,d)-palindrome-patterns; None when there is none.

    Drops b/c letters and signs, then cancels adjacent equal generators;
    the word has a pattern exactly when the stack empties, and the pops
    are the witness pairs.  The empty word carries the empty witness.
    """
    a = alphabet if alphabet is not None else ck_alphabet()
    stack = []
    pairs = []
    for i, b in _ad_projection(a, symbols):
        if stack and stack[-1][1] == b:
            j, _ = stack.pop()
            pairs.append((j, i))
        else:
            stack.append((i, b))
    if stack:
        return None
    return MatchWitness(tuple(sorted(pairs)))


@dataclass(frozen=True)
class StarNDecomposition:
    """Marked positions x1<y1<...<xn<yn of alternating a/d letters whose
    complementary fillers all carry (a,d)-palindrome-patterns."""
    n: int
    marked_indices: tuple
    filler_witnesses: tuple

    def validate(self, alphabet, symbols):
        marks = self.marked_indices
        if len(marks) != 2 * self.n or list(marks) != sorted(set(marks)):
            return False
        for k, i in enumerate(marks):
            want = "a" if k % 2 == 0 else "d"
            if alphabet.base[symbols[i]] != want:
                return False
        cuts = [-1] + list(marks) + [len(symbols)]
        if len(self.filler_witnesses) != 2 * self.n + 1:
            return False
        for k in range(2 * self.n + 1):
            lo, hi = cuts[k] + 1, cuts[k + 1]
            piece = symbols[lo:hi]
            if has_ad_palindrome_pattern(piece, alphabet) is None:
                return False
            # stored witness pairs index into the whole word
            local = MatchWitness(tuple(
                (i - lo, j - lo) for i, j in self.filler_witnesses[k].pairs))
            if not all(lo <= i and j < hi
                       for i, j in self.filler_witnesses[k].pairs):
                return False
            if not local.validate(alphabet, piece):
                return False
        return True


def admits_star_n(symbols, n, alphabet=None):
    """Does the word admit a star_n decomposition?  Returns one or None.

    Linear scan per alternation step over the a/d projection: a filler is
    pattern-matched exactly when the running cancellation stack returns to
    an earlier state, so reachability propagates through equal stack
    states.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = alphabet if alphabet is not None else ck_alphabet()
    symbols = list(symbols)
    proj = _ad_projection(a, symbols)
    bases = [b for _, b in proj]
    m = len(proj)
    states = [()]
    stack = []
    for b in bases:
        if stack and stack[-1] == b:
            stack.pop()
        else:
            stack.append(b)
        states.append(tuple(stack))

    reach = [[False] * (m + 1) for _ in range(2 * n + 1)]
    seen = {states[0]}
    for pos in range(m + 1):
        if states[pos] in seen:
            reach[0][pos] = True
    for k in range(1, 2 * n + 1):
        anchor = "a" if k % 2 == 1 else "d"
        seen = set()
        for pos in range(m + 1):
            if pos > 0 and reach[k - 1][pos - 1] and bases[pos - 1] == anchor:
                seen.add(states[pos])
            if states[pos] in seen:
                reach[k][pos] = True
    if not reach[2 * n][m]:
        return None

    # backtrack anchor positions, rightmost valid choice each time
    marks_proj = []
    pos = m
    for k in range(2 * n, 0, -1):
        anchor = "a" if k % 2 == 1 else "d"
        q = None
        for cand in range(pos - 1, -1, -1):
            if reach[k - 1][cand] and bases[cand] == anchor \
                    and states[cand + 1] == states[pos]:
                q = cand
                break
        assert q is not None
        marks_proj.append(q)
        pos = q
    marks_proj.reverse()

    orig = [i for i, _ in proj]
    marks = tuple(orig[q] for q in marks_proj)
    cuts = [-1] + list(marks) + [len(symbols)]
    witnesses = []
    for k in range(2 * n + 1):
        lo, hi = cuts[k] + 1, cuts[k + 1]
        piece = symbols[lo:hi]
        w = has_ad_palindrome_pattern(piece, a)
        assert w is not None
        witnesses.append(MatchWitness(
            tuple((i + lo, j + lo) for i, j in w.pairs)))
    return StarNDecomposition(n, marks, tuple(witnesses))


def _swap_products(alphabet):
    """All label maps built from the generator/inverse transpositions."""
    gens = alphabet.graph.generators
    maps = []
    for mask in range(1 << len(gens)):
        mapping = {}
        for bit, g in enumerate(gens):
            gi = alphabet.inverse[g]
            if mask >> bit & 1:
                mapping[g], mapping[gi] = gi, g
            else:
                mapping[g], mapping[gi] = g, gi
        maps.append(LabelMap(alphabet, mapping))
    return maps


def ck_link_fact():
    """Exhaustive facts about the label isomorphisms of the chain a-b-c-d.

    Every label isomorphism fixing some symbol, or carrying some symbol to
    its inverse, is a product of the four inverse swaps; the full group is
    twice that, the extra coset coming from the a<->d, b<->c reversal.
    """
    a = ck_alphabet()
    isos = enumerate_label_isomorphisms(a)
    swaps = set(_swap_products(a))
    pinned = [m for m in isos
              if any(m(s) == s or m(s) == a.inverse[s] for s in a.symbols)]
    reversal = LabelMap(a, {"a": "d", "a^-1": "d^-1", "d": "a", "d^-1": "a^-1",
                            "b": "c", "b^-1": "c^-1", "c": "b", "c^-1": "b^-1"})
    return {
        "automorphisms": len(isos),
        "swap_products": len(swaps),
        "pinned_are_swap_products": set(pinned) == swaps,
        "reversal_present": reversal in set(isos),
    }


def _halfspace_atoms(alphabet):
    """Nontrivial single-letter-base halfspace-fixing generators."""
    atoms = []
    isos = enumerate_label_isomorphisms(alphabet)
    for letter in enumerate_letters(alphabet):
        v = (letter,)
        for sigma in isos:
            if sigma.is_identity():
                continue
            if compatible(alphabet, sigma, v):
                atoms.append(at_vertex(alphabet, v, sigma))
    return atoms


def _random_conjugate(alphabet, atom, pool_depth, rng, attempts=40):
    """Conjugate of a vertex atom by a random translation, keeping the
    moved base within pool_depth and over the same halfspaces."""
    v = atom.word
    syms = alphabet.symbols
    for _ in range(attempts):
        budget = pool_depth - symbol_length(v)
        if budget < 1:
            return None
        u = normalize(alphabet, tuple(
            (rng.choice(syms),) for _ in range(rng.randint(1, budget))))
        if not u:
            continue
        moved = normalize(alphabet, u + v)
        if not moved or symbol_length(moved) > pool_depth:
            continue
        if not same_reductions(alphabet, v, moved):
            continue
        return conjugate_generator(alphabet, u, atom)
    return None


def _build_pool(alphabet, pool_depth, seed):
    rng = random.Random(seed)
    atoms = _halfspace_atoms(alphabet)
    if not atoms:
        raise ValueError("empty generator pool")
    pool = [GroupElement(alphabet, (at,)) for at in atoms]
    for at in atoms:
        conj = _random_conjugate(alphabet, at, pool_depth, rng)
        if conj is not None:
            pool.append(conj)
    pool = pool + [g.inverse() for g in pool]
    assert all(g.fixes_basepoint() for g in pool)
    return pool


def _run_trials(n, pool_depth, seed, lo, hi):
    """Run trials [lo, hi); returns (distance, star_ok) per trial.

    Each trial reseeds from (seed, trial index), so results do not depend
    on how the trial range is split across workers.
    """
    a = ck_alphabet()
    pool = _build_pool(a, pool_depth, seed)
    target = (("a",), ("d",)) * n
    out = []
    for trial in range(lo, hi):
        rng = random.Random(1_000_003 * seed + trial + 17)
        chunks = [rng.choice(pool) for _ in range(rng.randint(1, 12))]
        current = target
        path = list(flatten_word(target))
        for chunk in chunks:
            moved = flatten_word(current)
            image_syms = []
            prefix = ()
            for s in moved:
                image_syms.append(portrait_of(chunk, prefix)(s))
                prefix = concat_letter(a, prefix, s)
            path.extend(a.inverse[s] for s in reversed(moved))
            path.extend(image_syms)
            current = chunk.apply(current)
        product = GroupElement(a, tuple(
            f for chunk in reversed(chunks) for f in chunk.factors))
        assert product.apply(target) == current
        assert normalize(a, tuple((s,) for s in path)) == current
        out.append((symbol_length(current),
                    admits_star_n(path, n, a) is not None))
    return out


def ck_orbit_experiment(n, trials=200, pool_depth=10, seed=0, jobs=1):
    """Seeded check that halfspace-fixing products keep (ad)^n far out.

    Builds a pool of halfspace-fixing generators (single-letter bases plus
    random translation conjugates, all fixing the basepoint), applies
    random products to the zig-zag word (ad)^n, and verifies both the
    distance bound 2n and that the tracked edge-path word admits a star_n
    decomposition.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if trials < 1:
        raise ValueError("trials must be positive")
    if jobs < 1:
        raise ValueError("jobs must be positive")
    if jobs == 1:
        results = _run_trials(n, pool_depth, seed, 0, trials)
    else:
        import concurrent.futures
        step = -(-trials // jobs)
        spans = [(lo, min(lo + step, trials))
                 for lo in range(0, trials, step)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_run_trials, *zip(*(
                (n, pool_depth, seed, lo, hi) for lo, hi in spans)))
            results = [r for part in parts for r in part]

    bound = 2 * n
    distances = [d for d, _ in results]
    violations = []
    for trial, (distance, star_ok) in enumerate(results):
        if distance < bound:
            violations.append({"trial": trial, "kind": "distance",
                               "distance": distance})
        if not star_ok:
            violations.append({"trial": trial, "kind": "star_n"})
    return {
        "n": n,
        "trials": trials,
        "pool_depth": pool_depth,
        "seed": seed,
        "bound": bound,
        "min_distance": min(distances),
        "distances": distances,
        "violations": violations,
        "star_n_checked": True,
    }
