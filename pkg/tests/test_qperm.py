from fractions import Fraction

import pytest

from qpalg.groups import FunctionOnSn, Perm
from qpalg.ncalg import NCPoly
from qpalg.qperm import (COL_ORTH, COL_SUM, ROW_ORTH, ROW_SUM,
                         MatrixOverAlgebra, check_magic, check_multiplicative,
                         check_semi_magic, coaction_algebra_map_check,
                         gram_diagonal_check, group_algebra_presentation,
                         magic_presentation, matrix_inverse_from_families,
                         semi_magic_presentation, sn_isomorphism_check,
                         sn_relations_check, to_sn_function, trivial_presentation,
                         verify_hopf_axioms, wang_block_matrix, wang_image,
                         wang_target, wang_witness)
from qpalg.reports import REFUTED, VERIFIED
from qpalg.rewrite import complete, normal_form, quotient_basis

F = Fraction


# -- presentations --

def test_presentation_relation_counts(magic):
    pres = magic[4]
    by_family = {}
    for label, _ in pres.relations:
        fam = label.split("[")[0]
        by_family[fam] = by_family.get(fam, 0) + 1
    # each orthogonality family has n^3 instances, each sum family n
    assert by_family[ROW_ORTH] == 64
    assert by_family[COL_ORTH] == 64
    assert by_family[ROW_SUM] == 4
    assert by_family[COL_SUM] == 4
    assert len(pres.alphabet) == 16


def test_presentation_n1_collapses(completed_magic):
    basis = quotient_basis(completed_magic[1].system)
    assert basis == [()]
    pres = magic_presentation(1)
    assert normal_form(pres.gen(1, 1), pres.system) == 1


def test_semi_magic_has_no_column_relations(semi_magic):
    pres = semi_magic[2]
    prod = pres.gen(1, 1) * pres.gen(2, 1)
    nf = normal_form(prod, pres.system)
    assert nf == prod   # u11.u21 is irreducible without column families
    assert pres.antipode is None


def test_semi_magic_structure_maps_well_defined(semi_magic):
    rep = verify_hopf_axioms(semi_magic[3], cap=6)
    assert rep.verdict == VERIFIED


# -- family checkers --

def test_generating_matrix_is_magic(magic):
    for n in (2, 3, 4):
        rep = check_magic(magic[n].generating_matrix())
        assert rep.verdict == VERIFIED


def test_diag_gg_semi_magic_refuted():
    hopf = group_algebra_presentation(2)
    ambient = complete(hopf.system, 4).system
    g = NCPoly.gen(ambient.alphabet, 0)
    zero = NCPoly.zero(ambient.alphabet)
    x = MatrixOverAlgebra(2, ((g, zero), (zero, g)), ambient)
    rep = check_semi_magic(x)
    assert rep.verdict == REFUTED
    failing = [c for c in rep.identities if not c.reduced_to_zero]
    assert any("row-sum" in c.label for c in failing)


def test_wang_block_matrix_is_magic():
    target = wang_target()
    for n in (4, 5):
        rep = check_magic(wang_block_matrix(n, target))
        assert rep.verdict == VERIFIED


# -- multiplicativity and the coaction equivalence --

def test_generating_matrix_multiplicative(magic):
    for n in (2, 3, 4):
        rep = check_multiplicative(magic[n].generating_matrix(), magic[n])
        assert rep.verdict == VERIFIED


def test_identity_matrix_multiplicative(magic):
    pres = magic[3]
    eye = MatrixOverAlgebra.from_scalars(
        3, [[1 if i == j else 0 for j in range(3)] for i in range(3)], pres.system)
    assert check_multiplicative(eye, pres).verdict == VERIFIED


def test_diag_gg_multiplicative_but_not_coaction():
    hopf = group_algebra_presentation(2)
    ambient = complete(hopf.system, 4).system
    g = NCPoly.gen(ambient.alphabet, 0)
    zero = NCPoly.zero(ambient.alphabet)
    x = MatrixOverAlgebra(2, ((g, zero), (zero, g)), ambient)
    assert check_multiplicative(x, hopf).verdict == VERIFIED
    rep = coaction_algebra_map_check(x, hopf)
    assert rep.verdict == REFUTED
    # both legs fail consistently: unit preservation and semi-magic
    unit_rows = [c for c in rep.identities if c.label.startswith("beta(1)")]
    assert unit_rows and all(not c.reduced_to_zero for c in unit_rows)
    assert rep.details["semi_magic"] == REFUTED
    assert rep.identities[-1].reduced_to_zero   # the equivalence held


def test_generating_matrix_coaction(magic, completed_magic):
    for n in (2, 3):
        pres = magic[n]
        x = pres.generating_matrix(completed_magic[n].system)
        rep = coaction_algebra_map_check(x, pres)
        assert rep.verdict == VERIFIED
        assert rep.details["multiplicative_precondition"] == VERIFIED


def test_permutation_matrix_coaction():
    triv = trivial_presentation()
    sigma = Perm((1, 2, 0))
    x = MatrixOverAlgebra.from_scalars(
        3, [[1 if sigma(j) == i else 0 for j in range(3)] for i in range(3)],
        triv.system)
    rep = coaction_algebra_map_check(x, triv)
    assert rep.verdict == VERIFIED
    assert check_magic(x).verdict == VERIFIED


# -- Hopf axioms --

def test_hopf_axioms_small(magic):
    for n in (1, 2, 3):
        rep = verify_hopf_axioms(magic[n], cap=8)
        assert rep.verdict == VERIFIED


def test_coassociativity_rows_present(magic):
    rep = verify_hopf_axioms(magic[3], cap=8)
    co = [c for c in rep.identities if c.label.startswith("coassociativity")]
    assert len(co) == 9 and all(c.reduced_to_zero for c in co)
    s2 = [c for c in rep.identities if c.label.startswith("S^2")]
    assert len(s2) == 9 and all(c.reduced_to_zero for c in s2)


def test_group_algebra_hopf_axioms():
    for m in (2, 3):
        rep = verify_hopf_axioms(group_algebra_presentation(m), cap=8)
        assert rep.verdict == VERIFIED


# -- transpose-product identities --

@pytest.mark.parametrize("families,expect", [
    ((ROW_ORTH, ROW_SUM, COL_ORTH), "x*xt"),
    ((ROW_ORTH, ROW_SUM, COL_SUM), "xt*x"),
    ((ROW_ORTH, COL_ORTH, COL_SUM), "xt*x"),
    ((ROW_SUM, COL_ORTH, COL_SUM), "x*xt"),
])
def test_three_families_force_transpose_inverse(families, expect):
    for n in (2, 3):
        rep = matrix_inverse_from_families(n, families)
        assert rep.verdict == VERIFIED
        assert rep.details["identity"] == expect


def test_transpose_inverse_larger_size():
    rep = matrix_inverse_from_families(5, (ROW_ORTH, ROW_SUM, COL_ORTH))
    assert rep.verdict == VERIFIED


def test_transpose_inverse_validates_input():
    with pytest.raises(ValueError):
        matrix_inverse_from_families(3, (ROW_ORTH, ROW_SUM))
    with pytest.raises(ValueError):
        matrix_inverse_from_families(3, (ROW_ORTH, ROW_ORTH, COL_SUM))


def test_gram_diagonal_examples():
    for n in (1, 2, 4):
        assert gram_diagonal_check(n).verdict == VERIFIED
    # the off-diagonal entry at n=2 visibly reduces via row orthogonality
    pres = semi_magic_presentation(2)
    off = pres.gen(1, 1) * pres.gen(1, 2) + pres.gen(2, 1) * pres.gen(2, 2)
    assert normal_form(off, pres.system) == 0


# -- the S_n quotient --

def test_pi_on_generators():
    pres = magic_presentation(2)
    f = to_sn_function(pres.gen(1, 1), 2)
    ident = Perm((0, 1))
    swap = Perm((1, 0))
    assert f(ident) == 1 and f(swap) == 0
    assert to_sn_function(pres.gen(1, 1) * pres.gen(1, 2), 2) == FunctionOnSn.zero(2)


def test_pi_kills_relations():
    for n in (1, 2, 3, 4):
        assert sn_relations_check(n).verdict == VERIFIED


def test_pi_commutator_zero():
    pres = magic_presentation(4)
    comm = pres.gen(1, 1) * pres.gen(3, 3) - pres.gen(3, 3) * pres.gen(1, 1)
    assert not to_sn_function(comm, 4)


def test_iso_check_small():
    for n, dim in ((1, 1), (2, 2), (3, 6)):
        rep = sn_isomorphism_check(n)
        assert rep.verdict == VERIFIED
        assert rep.details["basis_count"] == dim
        assert rep.details["evaluation_rank"] == dim
        assert rep.details["conclusion"] == "isomorphism"


def test_iso_check_n4_kernel_witness():
    rep = sn_isomorphism_check(4)
    assert rep.verdict == VERIFIED
    assert "kernel witness" in rep.details["conclusion"] or \
        rep.details["conclusion"].startswith("not injective")
    labels = [c.label for c in rep.identities]
    assert "kernel witness maps to zero" in labels
    assert "kernel witness is nonzero upstream" in labels


# -- the free-product certificate --

def test_wang_witness_main():
    rep = wang_witness(4, depth=10)
    assert rep.verdict == VERIFIED
    assert rep.details["filtration"] == [2 * d + 1 for d in range(11)]


def test_wang_witness_n5():
    assert wang_witness(5, depth=6).verdict == VERIFIED


def test_wang_rejects_small_n():
    with pytest.raises(ValueError):
        wang_witness(3)


def test_wang_image_examples():
    target = wang_target()
    pres = magic_presentation(4)
    p = NCPoly.gen(target.alphabet, 0)
    q = NCPoly.gen(target.alphabet, 1)
    # u12 maps to 1 - p whose square reduces back to 1 - p
    img = wang_image(pres.gen(1, 2), 4, target)
    assert img == 1 - p
    assert normal_form(img * img - img, target) == 0
    comm = pres.gen(1, 1) * pres.gen(3, 3) - pres.gen(3, 3) * pres.gen(1, 1)
    assert wang_image(comm, 4, target) == p * q - q * p
