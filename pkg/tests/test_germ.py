import pytest

from germcrit.gb import LocalIdeal, ideal_equal, ideal_str
from germcrit.germ import (
    GermError,
    apply_derivation,
    corestrict,
    generic_fibre_dimension,
    image_ideal,
    is_dominant,
    log_derivations,
    relative_differentials_fitting,
    validate,
)
from germcrit.modops import Submodule
from germcrit.ring import ContextError, PolyRing

from helpers import corpus_map, make_map


def test_validate():
    assert validate(make_map(["t"], ["u", "v"], ["t^2", "t^3"], J_Y=["u^3 - v^2"])).ok
    bad = validate(make_map(["t"], ["u", "v"], ["t^2", "t^3"], J_Y=["u - v"]))
    assert not bad.ok and "outside the source ideal" in bad.message
    assert validate(corpus_map("identity")).ok
    assert not validate(make_map(["x"], ["u"], ["1 + x"])).ok


def test_construction_errors():
    with pytest.raises(ContextError):
        make_map(["x"], ["x"], ["x"])
    with pytest.raises(GermError):
        make_map(["x"], ["u", "v"], ["x"])


def test_images():
    cusp = corpus_map("cusp")
    U = cusp.target
    assert ideal_equal(image_ideal(cusp).ideal, LocalIdeal(U, [U.parse("u^3 - v^2")]))
    assert ideal_str(image_ideal(corpus_map("blowdown")).ideal) == "(0)"
    fold = corpus_map("fold")
    S = fold.source
    pt = image_ideal(fold, LocalIdeal(S, S.gens())).ideal
    assert ideal_equal(pt, LocalIdeal(fold.target, fold.target.gens()))


def test_dominance():
    assert is_dominant(corpus_map("blowdown")).dominant
    assert not is_dominant(make_map(["x", "y"], ["u", "v"], ["x", "0"])).dominant
    assert is_dominant(corestrict(corpus_map("cusp"))).dominant
    assert not is_dominant(corpus_map("cusp")).dominant


def test_corestrict():
    c = corestrict(corpus_map("cusp"))
    assert ideal_str(c.J_Y) == "(u^3 - v^2)"
    b = corpus_map("blowdown")
    assert ideal_equal(corestrict(b).J_Y, b.J_Y)
    z = corestrict(make_map(["x"], ["u", "v"], ["0", "0"]))
    assert ideal_equal(z.J_Y, LocalIdeal(z.target, z.target.gens()))


def test_log_derivations_hyperplane():
    R = PolyRing(["x", "y", "z"])
    D = log_derivations(R, [LocalIdeal(R, [R.parse("y")])])
    expected = [["1", "0", "0"], ["0", "y", "0"], ["0", "0", "1"]]
    for e in expected:
        xi = [R.parse(s) for s in e]
        # xi lies in the module spanned by D
        assert Submodule(R, 3, D.gens).contains(xi)
    assert D.check()


def test_log_derivations_free_and_circle():
    R = PolyRing(["x", "y"])
    assert len(log_derivations(R, []).gens) == 2
    I = LocalIdeal(R, [R.parse("x^2 + y^2")])
    D = log_derivations(R, [I])
    M = Submodule(R, 2, D.gens)
    euler = [R.parse("x"), R.parse("y")]
    rot = [R.parse("y"), R.parse("-x")]
    assert M.contains(euler) and M.contains(rot)
    assert apply_derivation(euler, R.parse("x^2 + y^2")) == R.parse("2*x^2 + 2*y^2")
    assert apply_derivation(rot, R.parse("x^2 + y^2")).is_zero()


def test_relative_differentials():
    w = corpus_map("whitney")
    assert ideal_equal(relative_differentials_fitting(w, 0), LocalIdeal(w.source, [w.source.parse("3*y^2 + x")]))
    c = corpus_map("cusp")
    assert ideal_str(relative_differentials_fitting(c, 0)) == "(t)"
    assert relative_differentials_fitting(corpus_map("identity"), 0).is_unit_ideal()


def test_generic_fibre_dimension():
    assert generic_fibre_dimension(corpus_map("fold")) == 0
    assert generic_fibre_dimension(corpus_map("projection")) == 1
