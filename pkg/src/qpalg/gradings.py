"""Group gradings on the diagonal algebra K^n.

A grading is stored by explicit component bases: a map from group elements
to lists of coordinate vectors over cyclotomic scalars, so the grading law
A_g * A_h inside A_gh becomes exact linear algebra.  Supported grading
groups are finite abelian groups (ergodic case: character gradings from
regular embeddings) and free products of block groups attached to a
partition of the point set (the general case).

Element keys: abelian gradings use exponent tuples; free-product gradings
use reduced words, i.e. tuples of (block index, exponent tuple) letters
with no identity letters and no adjacent letters in the same block.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exactnum import format_scalar, parse_scalar
from .groups import (FiniteAbelianGroup, abelian_groups_of_order, characters,
                     parse_group_descriptor)
from .reports import CertificateReport, IdentityCheck, VERIFIED, merge_verdicts

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FreeProductGroup:
    """Free product of finite abelian block groups over a partition of [n]."""

    blocks: tuple          # tuple of tuples of 0-based point indices
    groups: tuple          # FiniteAbelianGroup per block

    def __post_init__(self):
        points = sorted(p for b in self.blocks for p in b)
        n = sum(len(b) for b in self.blocks)
        if points != list(range(n)):
            raise ValueError("blocks must partition the point set")
        for b, g in zip(self.blocks, self.groups):
            if len(b) != g.order:
                raise ValueError(f"block of size {len(b)} cannot carry {g.descriptor()}")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def identity(self) -> tuple:
        return ()

    def mul(self, a: tuple, b: tuple) -> tuple:
        word = list(a) + list(b)
        out: list = []
        for letter in word:
            if out and out[-1][0] == letter[0]:
                i = letter[0]
                combined = self.groups[i].add(out[-1][1], letter[1])
                out.pop()
                if combined != self.groups[i].identity():
                    out.append((i, combined))
            else:
                out.append(letter)
        return tuple(out)

    def element_order(self, a: tuple):
        """Order of a reduced word; None means infinite."""
        if not a:
            return 1
        if len(a) == 1:
            i, c = a[0]
            return self.groups[i].element_order(c)
        return None   # a reduced word of length >= 2 in a free product

    def is_abelian(self) -> bool:
        return sum(1 for g in self.groups if g.order > 1) <= 1

    def descriptor(self) -> str:
        return "*".join(g.descriptor() for g in self.groups)

    def generates(self, support) -> bool:
        """Do the supported letters generate the whole free product?"""
        for i, g in enumerate(self.groups):
            letters = {c for key in support for j, c in key if j == i}
            if not _abelian_generates(g, letters):
                return False
        return True


def _abelian_generates(G: FiniteAbelianGroup, support) -> bool:
    closure = {G.identity()}
    frontier = [k for k in support]
    while frontier:
        x = frontier.pop()
        if x not in closure:
            closure.add(x)
            frontier.extend(G.add(x, y) for y in list(closure))
    return len(closure) == G.order


class Grading:
    """Decomposition of K^n indexed by group elements, with explicit bases."""

    def __init__(self, n: int, group, components: dict):
        self.n = n
        self.group = group
        comps = {}
        for key, vectors in components.items():
            vecs = []
            for v in vectors:
                v = tuple(v)
                if len(v) != n:
                    raise ValueError(f"component vector of length {len(v)} in K^{n}")
                if any(v):
                    vecs.append(v)
            if vecs:
                comps[key] = vecs
        self.components = comps

    # -- group-element helpers dispatching on the group kind --

    def identity_key(self):
        if isinstance(self.group, FreeProductGroup):
            return ()
        return self.group.identity()

    def mul_keys(self, a, b):
        if isinstance(self.group, FreeProductGroup):
            return self.group.mul(a, b)
        return self.group.add(a, b)

    def key_order(self, key):
        if isinstance(self.group, FreeProductGroup):
            return self.group.element_order(key)
        return self.group.element_order(key)

    def support(self) -> list:
        return sorted(self.components)

    def identity_basis(self) -> list:
        return self.components.get(self.identity_key(), [])

    def key_text(self, key) -> str:
        if isinstance(self.group, FreeProductGroup):
            if not key:
                return "e"
            return "*".join(f"b{i}:" + ".".join(str(c) for c in elem)
                            for i, elem in key)
        if key == self.group.identity():
            return "e"
        return ".".join(str(c) for c in key)


def grading_from_regular_abelian(G: FiniteAbelianGroup) -> Grading:
    """Character grading of K^|G| from the regular action of G on itself.

    Component of (the element identified with) chi is spanned by
    f_chi = sum over g of chi(g) e_g, using the lexicographic point
    labeling; every component is one-dimensional, so the grading is
    ergodic, and it is faithful.
    """
    elems = G.elements()
    components = {}
    for chi in characters(G):
        vec = tuple(chi(g) for g in elems)
        components[chi.exponents] = [vec]
    return Grading(G.order, G, components)


def grading_from_partition(sizes, groups) -> Grading:
    """Blockwise character grading of K^n for a partition with block groups.

    Blocks are laid out on consecutive points in (size-descending) order;
    block i carries the character grading of its group, embedded with
    zero coordinates outside the block.  The identity component is spanned
    by the block indicators, so its dimension equals the number of blocks.
    """
    sizes = list(sizes)
    groups = list(groups)
    if len(sizes) != len(groups):
        raise ValueError("one group per block is required")
    for m, g in zip(sizes, groups):
        if g.order != m:
            raise ValueError(f"block of size {m} cannot carry {g.descriptor()}")
    order = sorted(range(len(sizes)),
                   key=lambda i: (-sizes[i], groups[i].invariant_factors))
    sizes = [sizes[i] for i in order]
    groups = [groups[i] for i in order]
    if len(sizes) == 1:
        return grading_from_regular_abelian(groups[0])
    n = sum(sizes)
    blocks = []
    start = 0
    for m in sizes:
        blocks.append(tuple(range(start, start + m)))
        start += m
    fp = FreeProductGroup(tuple(blocks), tuple(groups))
    components: dict = {(): []}
    for i, (block, G) in enumerate(zip(blocks, groups)):
        elems = G.elements()
        for chi in characters(G):
            vec = [_ZERO] * n
            for pos, g in zip(block, elems):
                vec[pos] = chi(g)
            if chi.exponents == G.identity():
                components[()].append(tuple(vec))
            else:
                components[((i, chi.exponents),)] = [tuple(vec)]
    return Grading(n, fp, components)


def trivial_grading(n: int) -> Grading:
    """Everything in the identity component of the trivial group."""
    G = FiniteAbelianGroup(())
    basis = []
    for i in range(n):
        vec = [_ZERO] * n
        vec[i] = _ONE
        basis.append(tuple(vec))
    return Grading(n, G, {G.identity(): basis})


def _pointwise(a, b):
    return tuple(x * y for x, y in zip(a, b))


def verify_grading(grading: Grading) -> CertificateReport:
    """Exact verification of the grading axioms plus structural instance checks.

    Checks: the component bases span K^n; the all-ones unit lies in the
    identity component; every pointwise product of basis vectors lands in
    the span of its target component (witness recorded on failure); every
    supported element has finite order; when the grading is both ergodic
    and faithful the group is abelian.  Ergodicity and faithfulness are
    reported as flags in the details.
    """
    rows = []
    details: dict = {"n": grading.n}
    all_vectors = [v for key in grading.support() for v in grading.components[key]]
    rk = linalg.rank(all_vectors) if all_vectors else 0
    rows.append(IdentityCheck(
        "direct sum spans K^n",
        f"rank {rk} of {len(all_vectors)} component basis vectors (need {grading.n})",
        rk == grading.n))
    ones = tuple(_ONE for _ in range(grading.n))
    id_basis = grading.identity_basis()
    rows.append(IdentityCheck(
        "unit lies in the identity component",
        "all-ones vector against the identity component basis",
        linalg.in_span(id_basis, ones) if id_basis else False))
    witness = None
    for g in grading.support():
        for h in grading.support():
            target = grading.mul_keys(g, h)
            target_basis = grading.components.get(target, [])
            for ai, a in enumerate(grading.components[g]):
                for bi, b in enumerate(grading.components[h]):
                    prod = _pointwise(a, b)
                    if not any(prod):
                        ok = True
                    elif target_basis:
                        ok = linalg.in_span(target_basis, prod)
                    else:
                        ok = False
                    label = (f"product law [{grading.key_text(g)}][{ai}] * "
                             f"[{grading.key_text(h)}][{bi}] in "
                             f"[{grading.key_text(target)}]")
                    rows.append(IdentityCheck(
                        label, "pointwise product against target component basis", ok))
                    if not ok and witness is None:
                        witness = {
                            "g": grading.key_text(g),
                            "h": grading.key_text(h),
                            "product": [format_scalar(x) for x in prod],
                        }
    if witness:
        details["witness"] = witness
    for key in grading.support():
        order = grading.key_order(key)
        rows.append(IdentityCheck(
            f"finite order [{grading.key_text(key)}]",
            f"element order {order if order else 'infinite'}",
            order is not None))
    if isinstance(grading.group, FreeProductGroup):
        faithful = grading.group.generates(grading.support())
    else:
        faithful = _abelian_generates(grading.group, grading.support())
    ergodic = linalg.rank(id_basis) == 1 if id_basis else False
    details["faithful"] = faithful
    details["ergodic"] = ergodic
    details["dim_identity_component"] = linalg.rank(id_basis) if id_basis else 0
    if ergodic and faithful:
        abelian = grading.group.is_abelian() if isinstance(grading.group, FreeProductGroup) \
            else True
        rows.append(IdentityCheck(
            "ergodic faithful grading has abelian group",
            f"group {_group_descriptor(grading.group)} commutativity",
            abelian))
    details["group"] = _group_descriptor(grading.group)
    return CertificateReport.from_identities(
        f"grading of K^{grading.n} by {_group_descriptor(grading.group)}", rows,
        details=details)


def _group_descriptor(group) -> str:
    return group.descriptor()


@dataclass
class OrbitReport:
    """Orbit decomposition of a grading: partition, coinvariants, restrictions."""

    partition: tuple
    k: int
    blocks: tuple                   # tuple of tuples of 0-based points
    fixed_basis: tuple              # 0/1 indicator vectors, one per block
    restrictions: list              # Grading per block
    restriction_reports: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "k": self.k,
            "blocks": [[p + 1 for p in b] for b in self.blocks],
            "fixed_basis": [[str(x) for x in v] for v in self.fixed_basis],
            "restrictions": [r.to_dict() for r in self.restriction_reports],
        }

    def summary_lines(self) -> list[str]:
        lines = [f"orbit decomposition: partition {self.partition}, "
                 f"k = {self.k} coinvariant idempotents"]
        for b, rep in zip(self.blocks, self.restriction_reports):
            pts = ",".join(str(p + 1) for p in b)
            lines.append(f"  block [{pts}]: {rep.details.get('group')} "
                         f"restriction {rep.verdict}, "
                         f"ergodic={rep.details.get('ergodic')}")
        return lines


def orbit_decompose(grading: Grading) -> OrbitReport:
    """Split a verified grading along the minimal idempotents of A_identity.

    The identity component of a grading of K^n is a diagonal subalgebra,
    hence spanned by 0/1 indicators of a partition of the point set; the
    grading restricts to an ergodic grading on each block.
    """
    id_basis = grading.identity_basis()
    k = linalg.rank(id_basis)
    n = grading.n
    # points are equivalent when every coinvariant vector agrees on them
    reps: list[int] = []
    assignment = {}
    for i in range(n):
        for r in reps:
            if all(v[i] == v[r] for v in id_basis):
                assignment[i] = r
                break
        else:
            reps.append(i)
            assignment[i] = i
    blocks = [tuple(i for i in range(n) if assignment[i] == r) for r in reps]
    blocks.sort(key=lambda b: (-len(b), b))
    if len(blocks) != k:
        raise ValueError(
            f"identity component of dimension {k} does not split into 0/1 "
            f"idempotents ({len(blocks)} coordinate classes); the grading is "
            "not a verified grading of a diagonal algebra")
    fixed = []
    for b in blocks:
        vec = tuple(_ONE if i in b else _ZERO for i in range(n))
        if not linalg.in_span(id_basis, vec):
            raise ValueError("block indicator is not coinvariant; "
                             "inconsistent identity component")
        fixed.append(vec)
    restrictions = []
    for b in blocks:
        comps: dict = {}
        for key in grading.support():
            for v in grading.components[key]:
                rv = tuple(v[i] for i in b)
                if not any(rv):
                    continue
                bucket = comps.setdefault(key, [])
                if not linalg.in_span(bucket, rv):
                    bucket.append(rv)
        restrictions.append(_simplify_restriction(grading, comps, len(b)))
    reports = [verify_grading(r) for r in restrictions]
    return OrbitReport(
        partition=tuple(len(b) for b in blocks),
        k=k,
        blocks=tuple(blocks),
        fixed_basis=tuple(fixed),
        restrictions=restrictions,
        restriction_reports=reports)


def _simplify_restriction(grading: Grading, comps: dict, m: int) -> Grading:
    """Rebuild a block restriction over its own abelian group when possible."""
    if not isinstance(grading.group, FreeProductGroup):
        return Grading(m, grading.group, comps)
    factors = {i for key in comps if key for i, _ in key}
    if len(factors) > 1:
        return Grading(m, grading.group, comps)
    if not factors:
        return Grading(m, FiniteAbelianGroup(()), {(): comps.get((), [])})
    i = factors.pop()
    G = grading.group.groups[i]
    out = {}
    for key, vecs in comps.items():
        if not key:
            out[G.identity()] = vecs
        else:
            out[key[0][1]] = vecs
    return Grading(m, G, out)


@dataclass
class ClassificationEntry:
    partition: tuple
    groups: tuple
    grading: Grading
    report: CertificateReport
    orbit: OrbitReport | None

    def to_dict(self) -> dict:
        out = {
            "partition": list(self.partition),
            "groups": [g.descriptor() for g in self.groups],
            "group": (self.grading.group.descriptor()),
            "verdict": self.report.verdict,
            "ergodic": self.report.details.get("ergodic"),
            "faithful": self.report.details.get("faithful"),
        }
        if self.orbit is not None:
            out["orbit_partition"] = list(self.orbit.partition)
            out["k"] = self.orbit.k
        return out


@dataclass
class ClassificationReport:
    """All gradings of K^n from partitions with transitive abelian block groups."""

    n: int
    ergodic_only: bool
    ergodic: list
    general: list
    verdict: str
    conclusion: str

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "ergodic_only": self.ergodic_only,
            "ergodic_count": len(self.ergodic),
            "ergodic": [e.to_dict() for e in self.ergodic],
            "verdict": self.verdict,
            "conclusion": self.conclusion,
        }
        if not self.ergodic_only:
            out["general_count"] = len(self.general)
            out["general"] = [e.to_dict() for e in self.general]
        return out

    def summary_lines(self) -> list[str]:
        lines = [f"gradings of K^{self.n}:"]
        lines.append(f"  ergodic gradings ({len(self.ergodic)}):")
        for e in self.ergodic:
            lines.append(f"    {e.grading.group.descriptor()}: {e.report.verdict}")
        if not self.ergodic_only:
            lines.append(f"  partition gradings ({len(self.general)}):")
            for e in self.general:
                lines.append(
                    f"    partition {e.partition} with "
                    f"{'*'.join(g.descriptor() for g in e.groups)}: "
                    f"{e.report.verdict}, k={e.orbit.k if e.orbit else '?'}")
        lines.append(f"verdict: {self.verdict}")
        return lines


def partitions_desc(n: int) -> list[tuple]:
    """Partitions of n as nonincreasing tuples, reverse-lex order."""
    out: list[tuple] = []

    def gen(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, maxpart), 0, -1):
            gen(rest - part, part, prefix + [part])

    gen(n, n, [])
    return out


CLASSIFY_MAX_N = 12


def classify_gradings(n: int, ergodic_only: bool = False) -> ClassificationReport:
    """Enumerate and verify the gradings of K^n.

    Ergodic case: one grading per abelian group of order n (equivalently,
    per transitive abelian subgroup of S_n up to conjugacy).  General
    case: one grading per (partition of n, per-block group choice), graded
    by the free product of the block groups; quotients of the free product
    are not enumerated.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > CLASSIFY_MAX_N:
        raise ValueError(f"classification is capped at n = {CLASSIFY_MAX_N} "
                         "(exact cyclotomic linear algebra cost)")
    ergodic_entries = []
    for G in abelian_groups_of_order(n):
        grading = grading_from_regular_abelian(G)
        report = verify_grading(grading)
        orbit = orbit_decompose(grading) if report.verdict == VERIFIED else None
        ergodic_entries.append(ClassificationEntry((n,), (G,), grading, report, orbit))
    general_entries = []
    if not ergodic_only:
        for partition in partitions_desc(n):
            pools = [abelian_groups_of_order(m) for m in partition]
            for choice in itertools.product(*pools):
                grading = grading_from_partition(partition, choice)
                report = verify_grading(grading)
                orbit = orbit_decompose(grading) if report.verdict == VERIFIED else None
                general_entries.append(
                    ClassificationEntry(partition, choice, grading, report, orbit))
    verdict = merge_verdicts([e.report.verdict for e in ergodic_entries] +
                             [e.report.verdict for e in general_entries] or [VERIFIED])
    conclusion = (
        f"every faithful grading group of K^{n} is a quotient of one of the "
        "free products exhibited here (a free product of transitive abelian "
        "groups attached to a partition of the point set); the ergodic "
        "gradings are exactly those of the transitive abelian subgroups of "
        f"S_{n}, i.e. the abelian groups of order {n} acting regularly")
    return ClassificationReport(n, ergodic_only, ergodic_entries, general_entries,
                                verdict, conclusion)


# -- grading file format --

def format_grading(grading: Grading) -> str:
    lines = [f"n: {grading.n}"]
    if isinstance(grading.group, FreeProductGroup):
        lines.append("blocks: " + " | ".join(
            ",".join(str(p + 1) for p in b) for b in grading.group.blocks))
        lines.append("groups: " + " | ".join(
            g.descriptor() for g in grading.group.groups))
    else:
        lines.append(f"group: {grading.group.descriptor()}")
    for key in grading.support():
        for vec in grading.components[key]:
            coords = ",".join(format_scalar(x) for x in vec)
            lines.append(f"component {grading.key_text(key)}: ({coords})")
    return "\n".join(lines) + "\n"


def parse_grading(text: str) -> Grading:
    n = None
    group = None
    blocks = None
    block_groups = None
    components: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n:"):
            n = int(line.split(":", 1)[1])
        elif line.startswith("group:"):
            group = parse_group_descriptor(line.split(":", 1)[1].strip())
        elif line.startswith("blocks:"):
            blocks = tuple(
                tuple(int(p) - 1 for p in part.split(","))
                for part in line.split(":", 1)[1].split("|"))
        elif line.startswith("groups:"):
            block_groups = tuple(parse_group_descriptor(part.strip())
                                 for part in line.split(":", 1)[1].split("|"))
        elif line.startswith("component"):
            m = re.match(r"component\s+(\S+)\s*:\s*(.*)$", line)
            if not m:
                raise ValueError(f"cannot parse component line {line!r}")
            key_text, rest = m.group(1), m.group(2)
            vectors = []
            for chunk in rest.split(")"):
                chunk = chunk.strip().lstrip("(").strip()
                if not chunk:
                    continue
                vectors.append(tuple(parse_scalar(c) for c in chunk.split(",")))
            components.setdefault(key_text, []).extend(vectors)
        else:
            raise ValueError(f"cannot parse grading line {line!r}")
    if n is None:
        raise ValueError("grading file must declare n")
    if blocks is not None:
        if block_groups is None:
            raise ValueError("blocks given without groups")
        fp = FreeProductGroup(blocks, block_groups)
        keyed = {_parse_free_key(k, fp): v for k, v in components.items()}
        return Grading(n, fp, keyed)
    if group is None:
        raise ValueError("grading file must declare a group or blocks")
    keyed = {_parse_abelian_key(k, group): v for k, v in components.items()}
    return Grading(n, group, keyed)


def _parse_abelian_key(text: str, G: FiniteAbelianGroup) -> tuple:
    if text == "e":
        return G.identity()
    parts = tuple(int(c) for c in text.split("."))
    if len(parts) != len(G.invariant_factors):
        raise ValueError(f"element {text!r} does not match {G.descriptor()}")
    return tuple(c % d for c, d in zip(parts, G.invariant_factors))


def _parse_free_key(text: str, fp: FreeProductGroup) -> tuple:
    if text == "e":
        return ()
    letters = []
    for chunk in text.split("*"):
        if not chunk.startswith("b") or ":" not in chunk:
            raise ValueError(f"bad free-product element {text!r}")
        i_str, elem_str = chunk[1:].split(":", 1)
        i = int(i_str)
        elem = _parse_abelian_key(elem_str, fp.groups[i])
        letters.append((i, elem))
    return fp.mul(tuple(letters), ())
