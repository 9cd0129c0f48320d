"""Finite group machinery: S_n, functions on S_n, finite abelian groups,
characters with cyclotomic values, and transitive abelian subgroups.

Permutations act on 0-based points internally and render 1-based cycle
notation.  Finite abelian groups are canonicalized by invariant factors
d_1 | d_2 | ... | d_r (all >= 2, empty chain = trivial group); elements
are exponent tuples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Cyclotomic, zeta
from .reports import CertificateReport, IdentityCheck

_ONE = Fraction(1)
_ZERO = Fraction(0)


class Perm:
    """Permutation of {0, ..., n-1} stored as the image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images)-1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition: (self * other)(i) = self(other(i))."""
        return Perm(tuple(self.images[other.images[i]] for i in range(self.n)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm(inv)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def cycle_string(self) -> str:
        seen = [False] * self.n
        cycles = []
        for start in range(self.n):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            cycles.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
        return "".join(cycles) if cycles else "id"

    def __repr__(self):
        return f"Perm{self.images}"


def all_perms(n: int) -> list[Perm]:
    """All of S_n in lexicographic image order."""
    return [Perm(p) for p in itertools.permutations(range(n))]


class FunctionOnSn:
    """Exact-valued function on S_n with pointwise algebra operations."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values=None):
        self.n = n
        vals = {}
        if values:
            for sigma, c in values.items():
                if not isinstance(sigma, Perm):
                    sigma = Perm(sigma)
                if c:
                    vals[sigma] = c
        self.values = vals

    @classmethod
    def zero(cls, n: int) -> "FunctionOnSn":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "FunctionOnSn":
        return cls(n, {s: _ONE for s in all_perms(n)})

    @classmethod
    def indicator(cls, sigma: Perm) -> "FunctionOnSn":
        return cls(sigma.n, {sigma: _ONE})

    @classmethod
    def p_entry(cls, n: int, i: int, j: int) -> "FunctionOnSn":
        """The coordinate function sigma -> [sigma sends column j to row i] (1-based)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError("matrix indices out of range")
        return cls(n, {s: _ONE for s in all_perms(n) if s(j - 1) == i - 1})

    def __call__(self, sigma: Perm):
        return self.values.get(sigma, _ZERO)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FunctionOnSn(self.n, {s: Fraction(other) for s in all_perms(self.n)})
        vals = dict(self.values)
        for s, c in other.values.items():
            v = vals.get(s, _ZERO) + c
            if v:
                vals[s] = v
            else:
                vals.pop(s, None)
        return FunctionOnSn(self.n, vals)

    def __neg__(self):
        return FunctionOnSn(self.n, {s: -c for s, c in self.values.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FunctionOnSn(self.n, {s: c * other for s, c in self.values.items()})
        vals = {}
        small, big = (self.values, other.values) if len(self.values) <= len(other.values) \
            else (other.values, self.values)
        for s, c in small.items():
            d = big.get(s)
            if d:
                vals[s] = c * d
        return FunctionOnSn(self.n, vals)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == (FunctionOnSn.one(self.n) * Fraction(other))
        return isinstance(other, FunctionOnSn) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, frozenset(self.values.items())))

    def __bool__(self):
        return bool(self.values)

    def render(self, limit: int = 8) -> str:
        if not self.values:
            return "0"
        items = sorted(self.values.items(), key=lambda kv: kv[0].images)
        parts = [f"{c}*e[{s.cycle_string()}]" for s, c in items[:limit]]
        if len(items) > limit:
            parts.append(f"... ({len(items)} supported permutations)")
        return " + ".join(parts)

    def __repr__(self):
        return f"FunctionOnSn({self.render()})"


def e_sigma_product_check(n: int) -> CertificateReport:
    """Each permutation's indicator equals the product of its coordinate functions."""
    perms = all_perms(n)
    rows = []
    for sigma in perms:
        prod = FunctionOnSn.one(n)
        for j in range(1, n + 1):
            prod = prod * FunctionOnSn.p_entry(n, sigma(j - 1) + 1, j)
        ok = prod == FunctionOnSn.indicator(sigma)
        rows.append(IdentityCheck(
            label=f"indicator[{sigma.cycle_string()}]",
            polynomial="product of p[sigma(j),j] over columns j",
            reduced_to_zero=ok))
    return CertificateReport.from_identities(
        f"indicator functions on S_{n} factor through coordinate functions", rows,
        details={"n": n, "permutations": len(perms)})


class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form."""

    __slots__ = ("invariant_factors",)

    def __init__(self, invariant_factors):
        factors = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisibility chain: {factors}")
        self.invariant_factors = factors

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def elements(self) -> list[tuple]:
        """All exponent tuples, lexicographic."""
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def identity(self) -> tuple:
        return (0,) * len(self.invariant_factors)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: tuple) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def element_order(self, a: tuple) -> int:
        return math.lcm(*(d // math.gcd(d, x) for x, d in zip(a, self.invariant_factors))) \
            if self.invariant_factors else 1

    def descriptor(self) -> str:
        if not self.invariant_factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and \
            self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return f"FiniteAbelianGroup({self.descriptor()})"


def parse_group_descriptor(text: str) -> FiniteAbelianGroup:
    """Parse "Z4xZ2"-style descriptors (any factor order; canonicalized)."""
    parts = [p.strip() for p in text.lower().split("x")]
    sizes = []
    for p in parts:
        if not p.startswith("z") or not p[1:].isdigit():
            raise ValueError(f"bad group descriptor component {p!r}")
        d = int(p[1:])
        if d < 1:
            raise ValueError(f"bad cyclic order {d}")
        if d > 1:
            sizes.append(d)
    return abelian_group_from_cyclic_orders(sizes)


def abelian_group_from_cyclic_orders(sizes) -> FiniteAbelianGroup:
    """Canonical invariant factors of a direct product of cyclic groups."""
    primary: dict[int, list[int]] = {}
    for size in sizes:
        m = size
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                primary.setdefault(p, []).append(e)
            p += 1
        if m > 1:
            primary.setdefault(m, []).append(1)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for k in range(width):
        d = 1
        for p, exps in primary.items():
            exps_sorted = sorted(exps, reverse=True)
            if k < len(exps_sorted):
                d *= p ** exps_sorted[k]
        factors.append(d)
    return FiniteAbelianGroup(tuple(sorted(factors)))


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """One representative per isomorphism class, sorted by invariant factors."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return [FiniteAbelianGroup(())]
    primes: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            primes[p] = primes.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        primes[m] = primes.get(m, 0) + 1

    def partitions(k: int):
        def gen(k, maxpart):
            if k == 0:
                yield []
                return
            for first in range(min(k, maxpart), 0, -1):
                for rest in gen(k - first, first):
                    yield [first] + rest
        return list(gen(k, k))

    per_prime = {p: partitions(e) for p, e in primes.items()}
    result = []
    for combo in itertools.product(*[per_prime[p] for p in sorted(per_prime)]):
        width = max(len(part) for part in combo)
        # right-align each prime's parts so the largest land in the last factor
        factors = [1] * width
        for prime, part in zip(sorted(per_prime), combo):
            aligned = [0] * (width - len(part)) + sorted(part)
            for k in range(width):
                factors[k] *= prime ** aligned[k]
        result.append(FiniteAbelianGroup(tuple(factors)))
    result.sort(key=lambda g: g.invariant_factors)
    return result


def regular_embedding(G: FiniteAbelianGroup) -> list[Perm]:
    """Translation action of G on itself via the lexicographic point labeling.

    Returns the image permutations listed in the element order of G; the
    result is a transitive abelian subgroup of S_|G| acting regularly.
    """
    elems = G.elements()
    index = {e: i for i, e in enumerate(elems)}
    return [Perm(tuple(index[G.add(g, x)] for x in elems)) for g in elems]


@dataclass(frozen=True)
class Character:
    """Character of a finite abelian group, valued in roots of unity."""

    group: FiniteAbelianGroup
    exponents: tuple

    def __call__(self, element: tuple) -> Cyclotomic:
        E = self.group.exponent
        total = 0
        for c, a, d in zip(self.exponents, element, self.group.invariant_factors):
            total = (total + c * a * (E // d)) % E
        return zeta(E, total)

    def mul(self, other: "Character") -> "Character":
        return Character(self.group, self.group.add(self.exponents, other.exponents))


def characters(G: FiniteAbelianGroup) -> list[Character]:
    return [Character(G, e) for e in G.elements()]


def character_table(G: FiniteAbelianGroup) -> list[list[Cyclotomic]]:
    """Rows = characters, columns = elements, both in lexicographic order."""
    elems = G.elements()
    return [[chi(g) for g in elems] for chi in characters(G)]


def subgroup_closure(gens: list[Perm], n: int, maxsize: int | None = None) -> frozenset[Perm]:
    """Multiplicative closure; stops early once maxsize is exceeded."""
    elems = {Perm.identity(n)}
    frontier = list(elems)
    while frontier:
        new = []
        for g in gens:
            for h in frontier:
                x = g * h
                if x not in elems:
                    elems.add(x)
                    new.append(x)
                    if maxsize is not None and len(elems) > maxsize:
                        return frozenset(elems)
        frontier = new
    return frozenset(elems)


def _canonical_conjugate(elements: frozenset[Perm], n: int) -> tuple:
    """Minimal conjugate element-set tuple; conjugation-class invariant."""
    best = None
    for tau in all_perms(n):
        tinv = tau.inverse()
        conj = tuple(sorted((tau * g * tinv).images for g in elements))
        if best is None or conj < best:
            best = conj
    return best


def is_transitive(elements, n: int) -> bool:
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for g in elements:
            for x in frontier:
                y = g(x)
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(reached) == n


def is_abelian(elements) -> bool:
    elems = list(elements)
    return all(a * b == b * a for a, b in itertools.combinations(elems, 2))


def transitive_abelian_subgroups(n: int, mode: str = "classified"):
    """Transitive abelian subgroups of S_n, one per conjugacy class.

    classified mode returns (group, elements) pairs built from the regular
    embedding of each abelian group of order n (complete because a
    transitive abelian subgroup is regular).  brute_force mode (n <= 6)
    searches S_n directly and is the cross-validation oracle.
    """
    if mode == "classified":
        out = []
        for G in abelian_groups_of_order(n):
            elems = frozenset(regular_embedding(G))
            out.append((G, elems))
        return out
    if mode != "brute_force":
        raise ValueError(f"unknown mode {mode!r}")
    if n > 6:
        raise ValueError("brute-force subgroup search is capped at n = 6; "
                         "use classified mode for larger n")
    if n == 1:
        return [(FiniteAbelianGroup(()), frozenset([Perm.identity(1)]))]
    # every non-identity element of a regular subgroup is fixed-point-free
    candidates = [g for g in all_perms(n)
                  if all(g(i) != i for i in range(n)) ]
    found: dict[tuple, frozenset[Perm]] = {}
    for a, b in itertools.combinations_with_replacement(candidates, 2):
        if a * b != b * a:
            continue
        elems = subgroup_closure([a, b], n, maxsize=n)
        if len(elems) != n or not is_transitive(elems, n) or not is_abelian(elems):
            continue
        key = _canonical_conjugate(elems, n)
        found.setdefault(key, elems)
    out = []
    for key in sorted(found):
        elems = found[key]
        orders = sorted(_perm_order(g) for g in elems)
        match = None
        for G in abelian_groups_of_order(n):
            reg = regular_embedding(G)
            if sorted(_perm_order(g) for g in reg) == orders:
                match = G
                break
        out.append((match, elems))
    return out


def _perm_order(g: Perm) -> int:
    k = 1
    x = g
    ident = Perm.identity(g.n)
    while x != ident:
        x = x * g
        k += 1
    return k
