import itertools

import numpy as np
import pytest

from so3wrt.cyclo import Level, RootChoice
from so3wrt.links import chain_link, unknot
from so3wrt.surgery import mu, rt_invariant, unknot_weights
from so3wrt.tqftrep import (GENERATORS, AlphaUndefined, RepMatrix, TwistWord, UnsupportedGenerator,
                            basis, dimension_formula, entry_11, extract_alpha, mapping_cylinder_invariant,
                            orthonormal, projectivity_scalar, rep_word, s_matrix, surgery_presentation,
                            twist_matrix)

CHAIN = ("a1", "b1", "c", "b2", "a2")


@pytest.mark.parametrize("g", [1, 2])
def test_generators_are_gram_unitary(level, g):
    B = basis(level, g)
    G = B.gram()
    for name in GENERATORS[g]:
        assert twist_matrix(level, g, name).is_unitary(G), name


@pytest.mark.parametrize("r, g", [(5, 1), (7, 1), (5, 2), (7, 2), (11, 2)])
def test_dimension(r, g):
    assert basis(r, g).dim == dimension_formula(r, g)


def test_vacuum_comes_first(level):
    for g in (1, 2):
        assert set(basis(level, g).colorings[0]) == {0}


def test_s_matrix_is_an_involution(level):
    S = s_matrix(level)
    assert S @ S == RepMatrix.identity(level, 1, S.n)


def test_genus1_relations(level):
    a, b = twist_matrix(level, 1, "a"), twist_matrix(level, 1, "b")
    assert a @ b @ a == b @ a @ b
    s = projectivity_scalar(level)
    assert s is not None and s ** level.order == 1


def test_genus2_chain_relations():
    level = Level(5)
    M = {g: twist_matrix(level, 2, g) for g in CHAIN}
    for i, j in itertools.combinations(range(5), 2):
        X, Y = M[CHAIN[i]], M[CHAIN[j]]
        if j == i + 1:
            assert X @ Y @ X == Y @ X @ Y
        else:
            assert X @ Y == Y @ X


def test_word_parsing():
    w = TwistWord.parse("a^3 b^-1 m l^{2}", 1)
    assert w.letters == (("a", 3), ("b", -1), ("a", 1), ("b", 2))
    assert str(TwistWord.parse("", 1)) == "1"
    assert (w * w.inverse()).reduced().letters == ()
    with pytest.raises(UnsupportedGenerator):
        TwistWord.parse("x", 1)
    with pytest.raises(UnsupportedGenerator):
        TwistWord.parse("a", 3)


def test_rep_word_composes(level):
    w1, w2 = TwistWord.parse("a b^-1", 1), TwistWord.parse("b^2 a", 1)
    assert rep_word(level, 1, w1 * w2) == rep_word(level, 1, w1) @ rep_word(level, 1, w2)
    assert rep_word(level, 1, w1.inverse()) == rep_word(level, 1, w1).inverse()


def test_identity_word_gives_unlink(level):
    assert mapping_cylinder_invariant(level, 1, "").exact == 1
    assert mapping_cylinder_invariant(level, 2, "").exact == 1 / mu(level)
    assert extract_alpha(level, "", 2) == 1


def test_surgery_presentation_of_lens_word():
    assert surgery_presentation("l^3", 1) == unknot(3)
    assert surgery_presentation("b^2 a b^-1", 1) == chain_link([2, 1, -1])


@pytest.mark.parametrize("p", [-6, -3, -1, 1, 2, 5, 6])
def test_alpha_is_predicted_by_weights(level, p):
    w = TwistWord.parse(f"l^{p}", 1)
    link = surgery_presentation(w)
    sp, sm = link.signature_counts()
    wp, wm = unknot_weights(level)
    alpha = extract_alpha(level, w)
    assert alpha ** level.order == 1
    assert alpha == wp ** (-sp) * wm ** (-sm)


def test_alpha_undefined_when_vacuum_entry_vanishes():
    # chain (2,-1,1) at r=5 has vanishing vacuum entry
    assert entry_11(5, 1, "b^2 a^-1 b").is_zero()
    with pytest.raises(AlphaUndefined):
        extract_alpha(5, "b^2 a^-1 b")


def test_orthonormal_version_is_unitary(level):
    for g in (1, 2):
        B = basis(level, g)
        for name in GENERATORS[g]:
            U = orthonormal(twist_matrix(level, g, name), B)
            assert np.allclose(U.conj().T @ U, np.eye(B.dim), atol=1e-10)


def test_other_roots_unitary():
    level = Level(5)
    for root in (RootChoice.E_INV, RootChoice.NEG_E):
        B = basis(level, 1, root)
        for name in GENERATORS[1]:
            assert twist_matrix(level, 1, name, root).is_unitary(B.gram())
