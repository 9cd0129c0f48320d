import itertools
import random
from fractions import Fraction

import pytest

from qpalg.ncalg import Alphabet, NCPoly, deglex_key
from qpalg.rewrite import (CONFLUENT, RewriteSystem, complete,
                           filtration_dimension, format_presentation,
                           interreduce, normal_form, parse_presentation,
                           quotient_basis, reduces_to_zero)

F = Fraction


def idempotent_pair_system():
    A = Alphabet(["p", "q"])
    p, q = NCPoly.gen(A, 0), NCPoly.gen(A, 1)
    return RewriteSystem.from_relations(A, [p * p - p, q * q - q]), p, q


# -- normal forms --

def test_normal_form_magic_examples(magic):
    pres2 = magic[2]
    u = pres2.gen
    assert normal_form(u(1, 1) * u(1, 2), pres2.system) == 0
    for n in (2, 3, 4):
        pres = magic[n]
        nf = normal_form(pres.gen(1, 1) * pres.gen(1, 1), pres.system)
        assert nf == pres.gen(1, 1)
    assert normal_form(NCPoly.one(pres2.alphabet), pres2.system) == 1


def test_normal_form_idempotent_and_linear(magic):
    rng = random.Random(23)
    pres = magic[3]
    alpha = pres.alphabet

    def rand_poly():
        terms = {tuple(rng.randrange(9) for _ in range(rng.randrange(3))):
                 F(rng.randint(-3, 3)) for _ in range(3)}
        return NCPoly(alpha, terms)

    for _ in range(40):
        p, q = rand_poly(), rand_poly()
        a, b = F(rng.randint(-3, 3)), F(rng.randint(-3, 3))
        nfp, nfq = normal_form(p, pres.system), normal_form(q, pres.system)
        assert normal_form(nfp, pres.system) == nfp
        assert normal_form(a * p + b * q, pres.system) == a * nfp + b * nfq


def test_rewrite_strictly_decreases_leading_word(magic):
    rng = random.Random(29)
    pres = magic[3]
    for rule in pres.system.rules:
        for w in rule.rhs.terms:
            assert deglex_key(w) < deglex_key(rule.lhs)
    for _ in range(30):
        terms = {tuple(rng.randrange(9) for _ in range(rng.randrange(4))):
                 F(rng.randint(-2, 2)) for _ in range(3)}
        p = NCPoly(pres.alphabet, terms)
        nf = normal_form(p, pres.system)
        if p and nf:
            assert deglex_key(nf.leading_word()) <= deglex_key(p.leading_word())


# -- completion --

def test_complete_magic_2_exhaustive_reduction_oracle(completed_magic):
    res = completed_magic[2]
    assert res.status == CONFLUENT
    basis = quotient_basis(res.system)
    names = [".".join(res.system.alphabet.names[i] for i in w) or "1" for w in basis]
    assert names == ["1", "u11"]
    # oracle: every word of length <= 6 reduces into span{1, u11}
    allowed = {(), (0,)}
    for length in range(7):
        for word in itertools.product(range(4), repeat=length):
            nf = normal_form(NCPoly(res.system.alphabet, {word: 1}), res.system)
            assert set(nf.terms) <= allowed


def test_complete_magic_3_dimension(completed_magic):
    res = completed_magic[3]
    assert res.status == CONFLUENT
    assert len(quotient_basis(res.system)) == 6


def test_complete_idempotent_pair_no_new_rules():
    sys0, p, q = idempotent_pair_system()
    res = complete(sys0, 10)
    assert res.status == CONFLUENT
    assert len(res.system.rules) == 2
    assert {r.lhs for r in res.system.rules} == {(0, 0), (1, 1)}
    # oracle: enumerate every overlap of degree <= 10 among the input rules
    # and check both reductions of the overlap word agree
    rules = {r.lhs: r.rhs for r in sys0.rules}
    for a, b in itertools.product(rules, repeat=2):
        for olap in range(1, min(len(a), len(b))):
            if a[-olap:] != b[:olap]:
                continue
            w = a + b[olap:]
            assert len(w) <= 10
            via_a = NCPoly(sys0.alphabet, {rw + b[olap:]: c
                                           for rw, c in rules[a].terms.items()})
            via_b = NCPoly(sys0.alphabet, {a[:len(a) - olap] + rw: c
                                           for rw, c in rules[b].terms.items()})
            assert normal_form(via_a - via_b, res.system) == 0


def test_complete_rejects_low_cap(magic):
    with pytest.raises(ValueError):
        complete(magic[3].system, 1)


def test_complete_with_cyclotomic_coefficients():
    from qpalg.exactnum import zeta
    A = Alphabet(["x"])
    x = NCPoly.gen(A, 0)
    sys0 = RewriteSystem.from_relations(A, [x * x - zeta(4) * x])
    res = complete(sys0, 8)
    assert res.status == CONFLUENT
    assert normal_form(x * x * x, res.system) == -x


def test_completion_result_report_shape(completed_magic):
    payload = completed_magic[2].to_dict()
    assert payload["status"] == "confluent"
    assert payload["rule_count"] == len(completed_magic[2].system.rules)
    assert payload["rule_count_history"]


# -- zero reduction --

def test_reduces_to_zero_row_sum_expansion(magic):
    pres = magic[4]
    u = pres.gen
    rowsum = u(1, 1) + u(1, 2) + u(1, 3) + u(1, 4) - 1
    assert reduces_to_zero(u(1, 1) * rowsum, pres.system)


def test_reduces_to_zero_commutator_false(completed_magic):
    res = completed_magic[4]
    pres_alpha = res.system.alphabet
    u11 = NCPoly.gen(pres_alpha, 0)
    u33 = NCPoly.gen(pres_alpha, 10)
    assert not reduces_to_zero(u11 * u33 - u33 * u11, res.system)
    assert reduces_to_zero(NCPoly.zero(pres_alpha), res.system)


def test_quotient_multiplication_well_defined(completed_magic):
    rng = random.Random(31)
    sys3 = completed_magic[3].system

    def rand_poly():
        terms = {tuple(rng.randrange(9) for _ in range(rng.randrange(3))):
                 F(rng.randint(-2, 2)) for _ in range(3)}
        return NCPoly(sys3.alphabet, terms)

    for _ in range(30):
        p, q = rand_poly(), rand_poly()
        lhs = normal_form(p * q, sys3)
        rhs = normal_form(normal_form(p, sys3) * normal_form(q, sys3), sys3)
        assert lhs == rhs


def test_commutators_vanish_for_small_sizes(completed_magic):
    for n in (2, 3):
        sysn = completed_magic[n].system
        nn = n * n
        for a in range(nn):
            for b in range(nn):
                pa = NCPoly.gen(sysn.alphabet, a)
                pb = NCPoly.gen(sysn.alphabet, b)
                assert reduces_to_zero(pa * pb - pb * pa, sysn)


# -- filtration dimensions --

def test_filtration_idempotent_pair_alternating_oracle():
    sys0, p, q = idempotent_pair_system()
    res = complete(sys0, 10)
    dims = filtration_dimension(res.system, 10)

    def oracle(d):
        count = 0
        for length in range(d + 1):
            for word in itertools.product(range(2), repeat=length):
                if any(word[i] == word[i + 1] for i in range(length - 1)):
                    continue
                count += 1
        return count

    assert dims == [oracle(d) for d in range(11)]
    assert dims == [2 * d + 1 for d in range(11)]


def test_filtration_magic_2(completed_magic):
    assert filtration_dimension(completed_magic[2].system, 5) == [1, 2, 2, 2, 2, 2]


def test_filtration_magic_3_stabilizes(completed_magic):
    dims = filtration_dimension(completed_magic[3].system, 8)
    assert dims[-1] == 6 and dims[-2] == 6


def test_filtration_requires_completion(magic):
    with pytest.raises(ValueError, match="completion"):
        filtration_dimension(magic[3].system, 4)


# -- interreduction invariants --

def test_interreduce_invariants(magic):
    for n in (2, 3, 4):
        rules = magic[n].system.rules
        lhs = [r.lhs for r in rules]
        assert len(set(lhs)) == len(lhs)
        for a in lhs:
            for b in lhs:
                if a != b:
                    assert not any(a[i:i + len(b)] == b
                                   for i in range(len(a) - len(b) + 1))
        for r in rules:
            renf = normal_form(r.rhs, magic[n].system)
            assert renf == r.rhs


def test_inconsistent_presentation_detected():
    A = Alphabet(["x"])
    x = NCPoly.gen(A, 0)
    from qpalg.rewrite import InconsistentPresentation
    with pytest.raises(InconsistentPresentation):
        interreduce(A, [x - 1, x])


# -- presentation text format --

def test_presentation_roundtrip(magic):
    pres = magic[2]
    text = format_presentation(pres.alphabet, [p for _, p in pres.relations])
    alphabet, relations = parse_presentation(text)
    assert alphabet == pres.alphabet
    assert relations == [p for _, p in pres.relations]
    rebuilt = RewriteSystem.from_relations(alphabet, relations)
    assert rebuilt.rules == pres.system.rules


def test_presentation_parse_errors():
    with pytest.raises(ValueError):
        parse_presentation("order: deglex\n1*x")
    with pytest.raises(ValueError):
        parse_presentation("alphabet: x\norder: lex\n")
