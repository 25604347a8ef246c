"""Automorphisms as portraits: one label map per vertex.

An automorphism fixing the basepoint is encoded by its *portrait*: for
every vertex v (a normal word) a label map pre_v describing how the
edges at the image vertex correspond to the edges at v.  The image of a
normal word is then read off letter by letter:

    g(a_1 ... a_n) = pre_()(a_1) pre_(a_1)(a_2) ... pre_(a_1...a_{n-1})(a_n)

Three kinds of generating atoms are provided:

* ``T(u)``        -- left translation by a group element u,
* ``A(eps; s)``   -- the automorphism with pre_() = s whose portrait at
                     any other vertex w is tau(pre at w-minus, last letter),
* ``A(v; s)``     -- identity portrait on Type1 vertices relative to
                     (basepoint, v), s on Type2 vertices, and the same
                     tau recursion on Type3 vertices; requires s to be
                     compatible with v.

Group elements are formal products of atoms (and atom inverses), applied
right to left.  Semantic identity is only ever tested on balls.
"""

import json
import re

from .alphabet import (
    LabelMap,
    enumerate_label_isomorphisms,
    enumerate_letters,
    is_label_isomorphism,
    tau,
)
from .geometry import (
    TYPE1,
    TYPE2,
    classify_type,
    compatible,
    enumerate_ball,
    same_reductions,
)
from .words import (
    WordSyntaxError,
    concat_letter,
    flatten_word,
    format_letter,
    format_word,
    invert_word,
    is_normal,
    normal_pair,
    normalize,
    parse_word,
)

TRANSLATE = "translate"
AT_ORIGIN = "at_origin"
AT_VERTEX = "at_vertex"


class ElementSyntaxError(ValueError):
    """Unparseable element text."""


class Atom:
    __slots__ = ("alphabet", "kind", "word", "sigma", "inverted")

    def __init__(self, alphabet, kind, word, sigma, inverted=False):
        self.alphabet = alphabet
        self.kind = kind
        self.word = word
        self.sigma = sigma
        self.inverted = inverted

    def inverse(self):
        return Atom(self.alphabet, self.kind, self.word, self.sigma,
                    not self.inverted)

    def _key(self):
        return (self.kind, self.word,
                None if self.sigma is None else self.sigma._key,
                self.inverted)

    def __eq__(self, other):
        return isinstance(other, Atom) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return format_atom(self)


def translation(alphabet, u):
    """Left translation by the element represented by the word u."""
    return Atom(alphabet, TRANSLATE, normalize(alphabet, tuple(u)), None)


def at_origin(alphabet, sigma):
    """Basepoint-stabilizing atom with prescribed portrait at the basepoint."""
    if not is_label_isomorphism(alphabet, sigma):
        raise ValueError("sigma is not a label isomorphism")
    return Atom(alphabet, AT_ORIGIN, (), sigma)


def at_vertex(alphabet, v, sigma):
    """Atom that fixes every Type1/Type2 vertex relative to (basepoint, v)
    and carries the portrait sigma at v; sigma must be compatible with v."""
    v = tuple(v)
    if not v:
        raise ValueError("use at_origin for the basepoint")
    if not is_normal(alphabet, v):
        raise ValueError("base word is not normal: %s" % format_word(v))
    if not is_label_isomorphism(alphabet, sigma):
        raise ValueError("sigma is not a label isomorphism")
    if not compatible(alphabet, sigma, v):
        raise ValueError("sigma is not compatible with %s" % format_word(v))
    return Atom(alphabet, AT_VERTEX, v, sigma)


class GroupElement:
    """A formal product of atoms; factors[0] is applied last."""

    def __init__(self, alphabet, factors=(), type_cache=None):
        self.alphabet = alphabet
        self.factors = tuple(factors)
        for f in self.factors:
            if f.alphabet is not alphabet:
                raise ValueError("atom belongs to a different alphabet")
        self._memo = {}
        self._id_map = LabelMap.identity(alphabet)
        # classify_type results may be shared between elements with
        # common base words; pass one dict to a family of elements
        self._types = {} if type_cache is None else type_cache

    # -- algebra ---------------------------------------------------------

    def compose(self, other):
        return GroupElement(self.alphabet, self.factors + other.factors,
                            type_cache=self._types)

    __mul__ = compose

    def inverse(self):
        return GroupElement(self.alphabet,
                            tuple(f.inverse() for f in reversed(self.factors)),
                            type_cache=self._types)

    def fixes_basepoint(self):
        key = ("fix",)
        if key not in self._memo:
            self._memo[key] = self.apply(()) == ()
        return self._memo[key]

    # -- evaluation ------------------------------------------------------

    def apply(self, w):
        w = normalize(self.alphabet, tuple(w))
        key = ("A", w)
        if key not in self._memo:
            x = w
            for slot in range(len(self.factors) - 1, -1, -1):
                x = self._atom_apply(slot, x)
            self._memo[key] = x
        return self._memo[key]

    def _classify(self, base, w):
        key = (base, w)
        if key not in self._types:
            self._types[key] = classify_type(self.alphabet, base, w)
        return self._types[key]

    def _atom_portrait(self, slot, w):
        """Portrait of the (non-inverted) atom in this slot at vertex w."""
        key = ("p", slot, w)
        if key in self._memo:
            return self._memo[key]
        atom = self.factors[slot]
        if atom.kind == AT_ORIGIN:
            m = atom.sigma if not w else tau(self._atom_portrait(slot, w[:-1]), w[-1])
        else:
            t = self._classify(atom.word, w)
            if t == TYPE1:
                m = self._id_map
            elif t == TYPE2:
                m = atom.sigma
            else:
                m = tau(self._atom_portrait(slot, w[:-1]), w[-1])
        self._memo[key] = m
        return m

    def _append_image(self, prefix_img, letter):
        if not prefix_img:
            return (letter,)
        if normal_pair(self.alphabet, prefix_img[-1], letter):
            return prefix_img + (letter,)
        # portraits of an honest automorphism never reach this branch
        return normalize(self.alphabet, prefix_img + (letter,))

    def _atom_apply(self, slot, w):
        key = ("a", slot, w)
        if key in self._memo:
            return self._memo[key]
        atom = self.factors[slot]
        if atom.kind == TRANSLATE:
            u = invert_word(self.alphabet, atom.word) if atom.inverted else atom.word
            res = normalize(self.alphabet, u + w)
        elif not w:
            res = ()
        elif not atom.inverted:
            prefix = self._atom_apply(slot, w[:-1])
            m = self._atom_portrait(slot, w[:-1])
            res = self._append_image(prefix, m.apply_letter(w[-1]))
        else:
            # solve g(u) = w letter by letter; portraits sit at the preimage
            prefix = self._atom_apply(slot, w[:-1])
            m = self._atom_portrait(slot, prefix)
            res = self._append_image(prefix, m.inverse().apply_letter(w[-1]))
        self._memo[key] = res
        return res

    def __repr__(self):
        return "GroupElement(%s)" % (format_element(self) or "id",)


def identity_element(alphabet):
    return GroupElement(alphabet, ())


def portrait_of(element, v):
    """Extract the portrait at v from vertex images alone.

    Sends s to the unique symbol t with element(v . s) = element(v) . t;
    raises if the images do not fit an automorphism.  The result of an
    honest automorphism is always a label isomorphism.
    """
    a = element.alphabet
    v = normalize(a, tuple(v))
    key = ("P", v)
    if key in element._memo:
        return element._memo[key]
    image = element.apply(v)
    successors = {}
    for t in a.symbols:
        successors.setdefault(concat_letter(a, image, t), t)
    mapping = {}
    for s in a.symbols:
        target = element.apply(concat_letter(a, v, s))
        if target not in successors:
            raise ValueError(
                "no single edge from %s reaches the image of %s . %s"
                % (format_word(image), format_word(v), s))
        mapping[s] = successors[target]
    m = LabelMap(a, mapping)
    element._memo[key] = m
    return m


class AxiomReport:
    """Outcome of check_axioms: per-axiom flags plus first counterexamples."""

    AXIOMS = ("admissible", "par", "inv", "normal_preserving",
              "equivalence_preserving", "fixes_required")

    def __init__(self, radius):
        self.radius = radius
        self.vertices_checked = 0
        self.results = {name: True for name in self.AXIOMS}
        self.failures = []

    def fail(self, axiom, vertex, detail):
        if self.results[axiom]:
            self.failures.append(
                {"axiom": axiom, "vertex": format_word(vertex), "detail": detail})
        self.results[axiom] = False

    @property
    def passed(self):
        return all(self.results.values())

    def to_json(self):
        return {
            "passed": self.passed,
            "radius": self.radius,
            "vertices_checked": self.vertices_checked,
            "axioms": dict(self.results),
            "failures": list(self.failures),
        }


def _letterwise_image(element, v, portraits):
    out = []
    for i in range(len(v)):
        out.append(portraits[v[:i]].apply_letter(v[i]))
    return tuple(out)


def check_axioms(element, radius, equiv_samples=2, seed=0, max_vertices=None):
    """Verify the portrait axioms of an element over a ball.

    Checks, for every vertex of the l1-ball of the given radius around
    the basepoint (portrait comparisons stay inside the ball):

    * admissible: the extracted portrait is a label isomorphism;
    * par: portraits at v and v.s agree on every letter commuting with s
      (s non-isolated);
    * inv: pre_v(s^-1) inverts pre_{v minus s}(s) for s in the last letter;
    * normal_preserving: the letterwise image of v is normal and lands on
      apply(v);
    * equivalence_preserving: rewriting a flat representative of v by
      seeded random commutation swaps and inverse-pair insertions does
      not change the endpoint of the letterwise image path;
    * fixes_required: a lone vertex atom moves no vertex that is behind
      or beside its base (kinds 1 and 2 of the three-way classification).
    """
    import random

    a = element.alphabet
    rng = random.Random(seed)
    report = AxiomReport(radius)
    ball = enumerate_ball(a, radius, max_vertices=max_vertices)
    letters = enumerate_letters(a)
    commuting = {
        s: [b for b in letters if a.commutes_with_all(s, b)]
        for s in a.symbols
    }
    non_isolated = [s for s in a.symbols if a.partners[s]]

    portraits = {}
    for v in ball.vertices:
        try:
            portraits[v] = portrait_of(element, v)
        except ValueError as exc:
            report.fail("admissible", v, str(exc))
            return report

    # a lone vertex atom must fix everything not strictly past its base
    fix_base = None
    if len(element.factors) == 1 and element.factors[0].kind == AT_VERTEX:
        fix_base = element.factors[0].word

    for v in ball.vertices:
        report.vertices_checked += 1
        m = portraits[v]
        if report.results["admissible"] and not is_label_isomorphism(a, m):
            report.fail("admissible", v, "portrait is not a label isomorphism")
        if report.results["par"]:
            for s in non_isolated:
                vs = concat_letter(a, v, s)
                if vs not in portraits:
                    continue
                m2 = portraits[vs]
                for beta in commuting[s]:
                    if m.apply_letter(beta) != m2.apply_letter(beta):
                        report.fail("par", v, "par fails for s=%s beta=%s"
                                    % (s, format_letter(beta)))
                        break
                if not report.results["par"]:
                    break
        if report.results["inv"] and v:
            for s in v[-1]:
                trimmed = tuple(t for t in v[-1] if t != s)
                shorter = v[:-1] + ((trimmed,) if trimmed else ())
                expected = a.inverse[portraits[shorter](s)]
                if m(a.inverse[s]) != expected:
                    report.fail("inv", v, "inv fails for s=%s" % (s,))
                    break
        if report.results["normal_preserving"]:
            img = _letterwise_image(element, v, portraits)
            if not is_normal(a, img):
                report.fail("normal_preserving", v, "letterwise image not normal")
            elif img != element.apply(v):
                report.fail("normal_preserving", v,
                            "letterwise image disagrees with apply")
        if report.results["fixes_required"] and fix_base is not None:
            kind = element._classify(fix_base, v)
            if kind in (TYPE1, TYPE2) and element.apply(v) != v:
                report.fail("fixes_required", v, "moves a %s vertex" % (kind,))
    if report.results["equivalence_preserving"]:
        targets = list(ball.vertices)
        if len(targets) > 200:
            targets = rng.sample(targets, 200)
        for v in targets:
            flat = list(flatten_word(v))
            for _ in range(equiv_samples):
                variant = _equivalent_variant(a, flat, rng)
                endpoint = _edge_path_image(element, variant)
                if endpoint != element.apply(v):
                    report.fail("equivalence_preserving", v,
                                "variant %s lands elsewhere" % (" ".join(variant),))
                    break
            if not report.results["equivalence_preserving"]:
                break
    return report


def _equivalent_variant(alphabet, symbols, rng):
    out = list(symbols)
    for _ in range(4):
        move = rng.randrange(2)
        if move == 0 and len(out) >= 2:
            i = rng.randrange(len(out) - 1)
            if alphabet.commutes(out[i], out[i + 1]):
                out[i], out[i + 1] = out[i + 1], out[i]
        else:
            i = rng.randrange(len(out) + 1)
            s = alphabet.symbols[rng.randrange(len(alphabet.symbols))]
            out[i:i] = [s, alphabet.inverse[s]]
    return out


def _edge_path_image(element, symbols):
    """Image endpoint of an arbitrary flat path, mapped edge by edge."""
    a = element.alphabet
    prefix = ()
    image = ()
    for s in symbols:
        m = portrait_of(element, prefix)
        image = concat_letter(a, image, m(s))
        prefix = concat_letter(a, prefix, s)
    return image


def agree_on_ball(g, h, radius, max_vertices=None):
    ball = enumerate_ball(g.alphabet, radius, max_vertices=max_vertices)
    return all(g.apply(v) == h.apply(v) for v in ball.vertices)


def conjugate_generator(alphabet, u, atom):
    """Conjugate an at_vertex atom by a translation.

    Requires the base word v and its translate norm(u v) to have the same
    reductions; the conjugate then fixes every Type1/Type2 vertex
    relative to (basepoint, norm(u v)) and carries sigma there.
    """
    if atom.kind != AT_VERTEX:
        raise ValueError("only at_vertex atoms are conjugated")
    u = normalize(alphabet, tuple(u))
    moved = normalize(alphabet, u + atom.word)
    if not same_reductions(alphabet, atom.word, moved):
        raise ValueError("translation changes the reductions of the base word")
    if not u:
        return GroupElement(alphabet, (atom,))
    t = translation(alphabet, u)
    return GroupElement(alphabet, (t, atom, t.inverse()))


def topological_generators(alphabet, max_symbols=None):
    """The dense generating family over single letters.

    Single-symbol translations, every at_origin atom (identity included)
    and every at_vertex atom with a single-letter base and a compatible
    non-identity portrait, in deterministic order.
    """
    gens = [translation(alphabet, ((s,),)) for s in alphabet.symbols]
    isos = enumerate_label_isomorphisms(alphabet, max_symbols=max_symbols)
    gens.extend(at_origin(alphabet, sigma) for sigma in isos)
    for letter in enumerate_letters(alphabet):
        base = (letter,)
        for sigma in isos:
            if sigma.is_identity():
                continue
            if compatible(alphabet, sigma, base):
                gens.append(at_vertex(alphabet, base, sigma))
    return gens


def peel_stabilizer(element, depth, max_vertices=None):
    """Factor a basepoint stabilizer into sphere atoms plus a deep residual.

    Working outward sphere by sphere, reads off the portraits of the
    current element on the sphere of radius n, multiplies the inverses of
    the corresponding atoms onto the element and keeps the atoms.  The
    returned residual fixes the ball of radius depth+1 pointwise, and
    composing the returned atoms with the residual recovers the element.
    """
    a = element.alphabet
    if not element.fixes_basepoint():
        raise ValueError("element does not fix the basepoint")
    ball = enumerate_ball(a, depth, max_vertices=max_vertices)
    spheres = ball.spheres()
    peeled = []
    current = element
    for n in range(depth + 1):
        sphere_atoms = []
        for v in spheres[n]:
            sigma = portrait_of(current, v)
            if sigma.is_identity():
                continue
            if n == 0:
                sphere_atoms.append(at_origin(a, sigma))
            else:
                sphere_atoms.append(at_vertex(a, v, sigma))
        if sphere_atoms:
            inverses = tuple(at.inverse() for at in reversed(sphere_atoms))
            current = GroupElement(a, inverses + current.factors,
                                   type_cache=current._types)
            peeled.extend(sphere_atoms)
    return peeled, current


# -- parsing and printing elements -------------------------------------------

def format_sigma(sigma):
    cycles = sigma.cycles()
    if not cycles:
        return "id"
    return "".join("(%s)" % " ".join(c) for c in cycles)


def format_atom(atom):
    if atom.kind == TRANSLATE:
        body = "T(%s)" % format_word(atom.word)
    elif atom.kind == AT_ORIGIN:
        body = "A(eps; %s)" % format_sigma(atom.sigma)
    else:
        body = "A(%s; %s)" % (format_word(atom.word), format_sigma(atom.sigma))
    return body + ("^-1" if atom.inverted else "")


def format_element(element):
    return " ".join(format_atom(f) for f in element.factors)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_sigma(alphabet, text):
    text = text.strip()
    if text == "id":
        return LabelMap.identity(alphabet)
    if text.startswith("{"):
        try:
            mapping = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ElementSyntaxError("bad sigma JSON: %s" % (exc,)) from None
        if not isinstance(mapping, dict):
            raise ElementSyntaxError("sigma JSON must be an object")
        full = {s: s for s in alphabet.symbols}
        for k, v in mapping.items():
            if k not in alphabet.index or v not in alphabet.index:
                raise ElementSyntaxError("unknown symbol in sigma mapping")
            full[k] = v
        try:
            return LabelMap(alphabet, full)
        except ValueError as exc:
            raise ElementSyntaxError(str(exc)) from None
    cycles = _CYCLE.findall(text)
    if not cycles or _CYCLE.sub("", text).strip():
        raise ElementSyntaxError("bad sigma syntax %r" % (text,))
    parsed = []
    for cyc in cycles:
        symbols = cyc.split()
        if len(symbols) < 2:
            raise ElementSyntaxError("cycle needs at least two symbols")
        for s in symbols:
            if s not in alphabet.index:
                raise ElementSyntaxError("unknown symbol %r in cycle" % (s,))
        parsed.append(tuple(symbols))
    try:
        return LabelMap.from_cycles(alphabet, parsed)
    except ValueError as exc:
        raise ElementSyntaxError(str(exc)) from None


def parse_atom(alphabet, text):
    atom, rest = _parse_one_atom(alphabet, text)
    if rest.strip():
        raise ElementSyntaxError("trailing input %r" % (rest,))
    return atom


def _parse_one_atom(alphabet, text):
    text = text.lstrip()
    if not text or text[0] not in "TA":
        raise ElementSyntaxError("expected T(...) or A(...) at %r" % (text[:20],))
    kind = text[0]
    if len(text) < 2 or text[1] != "(":
        raise ElementSyntaxError("expected '(' after %s" % kind)
    depth = 0
    end = None
    for i in range(1, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                end = i
                break
    if end is None:
        raise ElementSyntaxError("unbalanced parentheses in %r" % (text,))
    body = text[2:end]
    rest = text[end + 1:]
    inverted = False
    if rest.startswith("^-1"):
        inverted = True
        rest = rest[3:]
    try:
        if kind == "T":
            atom = translation(alphabet, parse_word(alphabet, body))
        else:
            if ";" not in body:
                raise ElementSyntaxError("A(...) needs 'base; sigma'")
            head, sigma_text = body.split(";", 1)
            sigma = parse_sigma(alphabet, sigma_text)
            head = head.strip()
            if head == "eps":
                atom = at_origin(alphabet, sigma)
            else:
                atom = at_vertex(alphabet, parse_word(alphabet, head), sigma)
    except WordSyntaxError as exc:
        raise ElementSyntaxError(str(exc)) from None
    if inverted:
        atom = atom.inverse()
    return atom, rest


def parse_element(alphabet, text):
    atoms = []
    rest = text
    while rest.strip():
        atom, rest = _parse_one_atom(alphabet, rest)
        atoms.append(atom)
    return GroupElement(alphabet, tuple(atoms))
