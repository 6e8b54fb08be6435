import mpmath
import pytest

from so3wrt.cyclo import Level
from so3wrt.density.atoms import (Atom, AtomLibrary, ConnSum, PhaseUndetermined, Power, Reverse,
                                  atom_counts, compute_atom_value, expr_from_json, expr_size,
                                  expr_to_json)
from so3wrt.links import chain_link, empty_link, unknot
from so3wrt.surgery import mu, rt_invariant


@pytest.fixture(scope="module")
def small():
    lib = AtomLibrary(5)
    lib.add_link("S3", empty_link())
    lib.add_link("L2", unknot(2))
    lib.add_link("L-3", unknot(-3))
    lib.add_link("H", chain_link([1, 3]))
    lib.add_word("w", 2, "a1 b1^2 c^-1 b2 a2^3")
    return lib


def test_unit_normalization(small):
    assert small["S3"].value == 1
    assert small["L2"].value == rt_invariant(unknot(2), 5).exact / mu(5)


def test_expression_json_roundtrip():
    e = ConnSum((Atom("a"), Reverse(Power(Atom("b"), 3)), ConnSum(())))
    assert expr_from_json(expr_to_json(e)) == e
    with pytest.raises(ValueError):
        expr_from_json({"bogus": 1})


def test_atom_counts():
    e = ConnSum((Atom("a"), Reverse(ConnSum((Atom("a"), Power(Atom("b"), 2))))))
    c = atom_counts(e)
    assert c == {("a", 1): 1, ("a", -1): 1, ("b", -1): 2}
    assert expr_size(e) == 4


def test_value_homomorphism(small):
    x = ConnSum((Atom("L2"), Reverse(Atom("H")), Power(Atom("L-3"), 2)))
    exact = small.evaluate_exact(x)
    expect = small["L2"].value * small["H"].value.conj() * small["L-3"].value ** 2
    assert exact == expect
    with mpmath.workprec(128):
        assert abs(small.evaluate(x) - exact.eval_embed(128)) < mpmath.mpf(2) ** -100


def test_phase_incomplete_atoms_need_pairing(small):
    with pytest.raises(PhaseUndetermined):
        small.evaluate(Atom("w"))
    v = small.evaluate(ConnSum((Atom("w"), Reverse(Atom("w")))))
    assert abs(v - abs(small["w"].approx()) ** 2) < 1e-12
    with pytest.raises(KeyError):
        small.evaluate(Atom("missing"))


def test_library_roundtrip_and_reproducibility(small, tmp_path):
    p = tmp_path / "lib.json"
    small.dump(p)
    again = AtomLibrary.load(p)
    assert {k: a.value for k, a in again.atoms.items()} == {k: a.value for k, a in small.atoms.items()}
    for aid in again.atoms:
        assert again.verify_atom(aid)


def test_compute_atom_value_rejects_unknown_kind():
    with pytest.raises(ValueError):
        compute_atom_value(Level(5), "mystery", {})


def test_default_library_shape(lib7):
    assert "seed" in lib7 and "S3" in lib7
    words = [a for a in lib7.atoms.values() if a.kind == "word"]
    assert len(words) == 16
    assert all(not a.phase_complete for a in words)
    # long words are what give moduli below 1
    assert min(abs(a.approx()) for a in words) < 1
