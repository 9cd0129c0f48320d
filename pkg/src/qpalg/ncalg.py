"""Free associative algebra over an exact coefficient field.

Words are tuples of generator indices (the empty tuple is the unit
monomial); polynomials are sparse maps word -> nonzero coefficient.
The default monomial order is deglex: degree first, then lexicographic
on letter indices, which is total and compatible with concatenation.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactnum import Cyclotomic, render_scalar

Word = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def coeff_value(c):
    """Promote plain ints to Fraction; pass Fraction/Cyclotomic through."""
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, Cyclotomic)):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def deglex_key(word: Word):
    return (len(word), word)


def compare_words(w1: Word, w2: Word) -> int:
    """-1, 0 or 1 for w1 <, =, > w2 under deglex."""
    k1, k2 = deglex_key(w1), deglex_key(w2)
    return (k1 > k2) - (k1 < k2)


class Alphabet:
    """Ordered set of distinct generator names; the order fixes deglex."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"


class NCPoly:
    """Noncommutative polynomial: finite map from words to coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                c = coeff_value(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    # -- constructors --

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet, {(): _ONE})

    @classmethod
    def scalar(cls, alphabet: Alphabet, c) -> "NCPoly":
        return cls(alphabet, {(): c})

    @classmethod
    def gen(cls, alphabet: Alphabet, g) -> "NCPoly":
        i = alphabet.index(g) if isinstance(g, str) else g
        if not 0 <= i < len(alphabet):
            raise IndexError(f"generator index {i} out of range")
        return cls(alphabet, {(i,): _ONE})

    @classmethod
    def word(cls, alphabet: Alphabet, letters, c=1) -> "NCPoly":
        idx = tuple(alphabet.index(l) if isinstance(l, str) else l for l in letters)
        return cls(alphabet, {idx: c})

    # -- inspection --

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        if not self.terms:
            return float("-inf")
        return max(len(w) for w in self.terms)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=deglex_key)

    def leading_coeff(self):
        return self.terms[self.leading_word()]

    def coeff(self, word: Word):
        return self.terms.get(tuple(word), _ZERO)

    def sorted_terms(self):
        """Terms in descending deglex order."""
        return [(w, self.terms[w]) for w in sorted(self.terms, key=deglex_key, reverse=True)]

    def constant_part(self):
        return self.terms.get((), _ZERO)

    # -- arithmetic --

    def _check(self, other: "NCPoly"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = NCPoly.scalar(self.alphabet, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, _ZERO) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        out = NCPoly(self.alphabet)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = NCPoly(self.alphabet)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = NCPoly.scalar(self.alphabet, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = coeff_value(other)
            if not c:
                return NCPoly.zero(self.alphabet)
            out = NCPoly(self.alphabet)
            out.terms = {w: v * c for w, v in self.terms.items()}
            return out
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w, _ZERO) + c1 * c2
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        out = NCPoly(self.alphabet)
        out.terms = terms
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = NCPoly.scalar(self.alphabet, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    # -- rendering --

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = render_scalar(c)
            if any(ch in cs for ch in "+- ") and not cs.lstrip("-").replace("/", "").isdigit():
                cs = f"({cs})"
            body = cs if not w else f"{cs}*" + ".".join(self.alphabet.names[i] for i in w)
            parts.append(body)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NCPoly({self.render()})"


def substitute(p: NCPoly, images: dict, antihom: bool = False,
               target: Alphabet | None = None) -> NCPoly:
    """Algebra-map (or anti-map) extension of a generator -> NCPoly table.

    Words map to the ordered product of their letters' images, reversed for
    the antihomomorphism direction; the map extends linearly and sends the
    unit to the unit.
    """
    for img in images.values():
        if target is None:
            target = img.alphabet
        break
    if target is None:
        target = p.alphabet
    for i in range(len(p.alphabet)):
        if any(i in w for w in p.terms) and i not in images:
            raise ValueError(f"no image for generator {p.alphabet.names[i]}")
    out = NCPoly.zero(target)
    for w, c in p.terms.items():
        letters = reversed(w) if antihom else w
        acc = NCPoly.scalar(target, c)
        for letter in letters:
            acc = acc * images[letter]
            if not acc:
                break
        out = out + acc
    return out


def evaluate_scalar(p: NCPoly, images: dict):
    """Evaluate p at scalar generator images (e.g. a counit)."""
    total = _ZERO
    for w, c in p.terms.items():
        acc = c
        for letter in w:
            acc = acc * coeff_value(images[letter])
            if not acc:
                break
        total = total + acc
    return total


class TensorAlgebra:
    """Tensor power of a free algebra encoded inside one free algebra.

    Factor i of a k-fold tensor product gets its own tagged copy of the
    base alphabet; letters of later factors commute past letters of
    earlier ones, so every word straightens to factor-sorted form.  The
    straightening rules decrease deglex because factor-0 letters come
    first in the combined alphabet.
    """

    def __init__(self, base: Alphabet, factors: int = 2):
        if factors < 2:
            raise ValueError("need at least two tensor factors")
        self.base = base
        self.factors = factors
        names = [f"{nm}@{t}" for t in range(factors) for nm in base.names]
        self.alphabet = Alphabet(names)

    def letter(self, base_index: int, factor: int) -> int:
        return factor * len(self.base) + base_index

    def factor_of(self, letter: int) -> int:
        return letter // len(self.base)

    def base_letter(self, letter: int) -> int:
        return letter % len(self.base)

    def inject(self, p: NCPoly, factor: int) -> NCPoly:
        """Image of p under A -> A^(tensor k) into the given factor."""
        if p.alphabet != self.base:
            raise ValueError("polynomial is not over the base alphabet")
        if not 0 <= factor < self.factors:
            raise ValueError("factor out of range")
        shift = factor * len(self.base)
        out = NCPoly(self.alphabet)
        out.terms = {tuple(i + shift for i in w): c for w, c in p.terms.items()}
        return out

    def pure_tensor(self, *parts: NCPoly) -> NCPoly:
        if len(parts) != self.factors:
            raise ValueError(f"expected {self.factors} tensor factors")
        acc = NCPoly.one(self.alphabet)
        for t, part in enumerate(parts):
            acc = acc * self.inject(part, t)
        return acc

    def straighten_relations(self) -> list[NCPoly]:
        """Cross-commutation relations: later-factor letter past earlier one."""
        rels = []
        nb = len(self.base)
        for hi in range(1, self.factors):
            for lo in range(hi):
                for g in range(nb):
                    for h in range(nb):
                        a = self.letter(g, hi)
                        b = self.letter(h, lo)
                        rels.append(NCPoly(self.alphabet, {(a, b): 1, (b, a): -1}))
        return rels

    def split_word(self, w: Word) -> list[Word]:
        """Per-factor words of a straightened (factor-sorted) word."""
        parts: list[list[int]] = [[] for _ in range(self.factors)]
        last = 0
        for letter in w:
            f = self.factor_of(letter)
            if f < last:
                raise ValueError("word is not straightened")
            last = f
            parts[f].append(self.base_letter(letter))
        return [tuple(p) for p in parts]


# -- text syntax: terms "coeff*gen1.gen2...", e.g. "1*u11.u12 - 1*u12.u11" --

_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+\s-][^+-]*)")
_COEFF_RE = re.compile(r"^\d+(?:/\d+)?$")
_WORD_RE = re.compile(r"^[A-Za-z_][\w@]*(?:\.[A-Za-z_][\w@]*)*$")


def parse_poly(text: str, alphabet: Alphabet) -> NCPoly:
    """Parse the plain-text polynomial syntax over a known alphabet."""
    text = text.strip()
    if not text or text == "0":
        return NCPoly.zero(alphabet)
    poly = NCPoly.zero(alphabet)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or (not first and m.group(1) == ""):
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        sign = Fraction(-1) if m.group(1) == "-" else Fraction(1)
        body = m.group(2).strip()
        if "*" in body:
            coeff_str, word_str = body.split("*", 1)
            coeff_str, word_str = coeff_str.strip(), word_str.strip()
        elif _COEFF_RE.match(body):
            coeff_str, word_str = body, ""
        else:
            coeff_str, word_str = "1", body
        if not _COEFF_RE.match(coeff_str):
            raise ValueError(f"bad coefficient {coeff_str!r} in {body!r}")
        if word_str and not _WORD_RE.match(word_str):
            raise ValueError(f"bad word {word_str!r} in {body!r}")
        letters = tuple(alphabet.index(nm) for nm in word_str.split(".")) if word_str else ()
        poly = poly + NCPoly(alphabet, {letters: sign * Fraction(coeff_str)})
        pos = m.end()
        first = False
    return poly
