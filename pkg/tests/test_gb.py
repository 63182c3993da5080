import random

import sympy

from germcrit.engine import Engine, elimination_order, global_order, homogenized_std, local_order
from germcrit.gb import (
    poly_to_vec,
    LocalIdeal,
    bounded_radical_membership,
    eliminate,
    ideal_equal,
    ideal_str,
    krull_dimension,
    local_quotient_dimension,
    normal_form,
    standard_basis,
)
from germcrit.ring import GF, PolyRing

from helpers import random_poly

R = PolyRing(["x", "y"])
X = PolyRing(["x"])


def ideal(ring, *gens):
    return LocalIdeal(ring, [ring.parse(g) for g in gens])


def test_local_unit_is_absorbed():
    assert ideal_str(ideal(X, "x - x^2")) == "(x)"
    assert ideal_equal(ideal(X, "x - x^2"), ideal(X, "x"))
    assert ideal_str(ideal(R, "x", "y")) == "(x, y)"


def test_elimination_order_contains_cusp_equation():
    B = PolyRing(["t", "u", "v"])
    basis = standard_basis(ideal(B, "u - t^2", "v - t^3"), elimination_order(3, 1))
    prims = {str(g.primitive()) for g in basis}
    assert "u^3 - v^2" in prims or "-u^3 + v^2" in prims


def test_normal_forms():
    assert normal_form(X.parse("x"), ideal(X, "x - x^2")).is_zero()
    assert normal_form(R.parse("y"), ideal(R, "x")) == R.parse("y")
    nf = normal_form(R.parse("x^2"), ideal(R, "x - y^2"))
    assert nf == R.parse("y^4")


def test_ideal_equal():
    T = PolyRing(["t"])
    assert ideal_equal(ideal(T, "2*t", "3*t^2"), ideal(T, "t"))
    assert not ideal_equal(ideal(R, "x^2"), ideal(R, "x"))
    assert ideal_equal(LocalIdeal(R, []), LocalIdeal(R, []))
    # (x + x^2 y) = (x) locally but not globally
    assert ideal_equal(ideal(R, "x + x^2*y"), ideal(R, "x"))


def test_bounded_radical():
    assert str(bounded_radical_membership(R.parse("x"), ideal(R, "x^2"))) == "member(2)"
    assert str(bounded_radical_membership(R.parse("x + y"), ideal(R, "x^2", "y^2"))) == "member(3)"
    v = bounded_radical_membership(R.parse("x"), ideal(R, "y"))
    assert not v.member and str(v) == "not-decided-within-bound(8)"


def test_quotient_dimension():
    assert str(local_quotient_dimension(ideal(R, "x^2", "x*y", "y^3"))) == "finite(4)"
    assert str(local_quotient_dimension(ideal(R, "x"))) == "infinite"
    assert str(local_quotient_dimension(ideal(R, "x", "y"))) == "finite(1)"


def test_milnor_numbers():
    # gradients of A_k, E_6 and a non-homogeneous unit-twisted example
    assert local_quotient_dimension(ideal(R, "3*x^2", "4*y^3")).value == 6
    # D_4: f = x^2 y + y^3, gradient (2xy, x^2 + 3y^2)
    assert local_quotient_dimension(ideal(R, "2*x*y", "x^2 + 3*y^2")).value == 4
    # x^2 (1 - x) has local multiplicity 2 even though the global quotient has dimension 3
    assert local_quotient_dimension(ideal(X, "x^2 - x^3")).value == 2


def test_krull_dimension():
    S = PolyRing(["x", "y", "z"])
    assert krull_dimension(ideal(S, "y")) == 2
    assert krull_dimension(ideal(S, "x", "y")) == 1
    assert krull_dimension(ideal(S, "1 + x")) == -1
    assert krull_dimension(LocalIdeal(S, [])) == 3


def test_eliminate():
    B = PolyRing(["t", "u", "v"])
    U = PolyRing(["u", "v"])
    assert ideal_equal(eliminate(ideal(B, "u - t^2", "v - t^3"), ["t"]), ideal(U, "u^3 - v^2"))
    assert ideal_equal(eliminate(ideal(R, "x"), ["y"]), ideal(X, "x"))
    Z = PolyRing(["x", "y", "u", "v"])
    assert ideal_str(eliminate(ideal(Z, "u - x", "v - x*y"), ["x", "y"])) == "(0)"


def _sympy_gb(gens, names):
    syms = sympy.symbols(names)
    G = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in gens], *syms, order="grevlex")
    return {sympy.Poly(g, *syms).monic().as_expr() for g in G.exprs}


def test_global_basis_matches_sympy():
    rng = random.Random(11)
    S = PolyRing(["a", "b", "c"])
    syms = sympy.symbols(S.names)
    for _ in range(12):
        gens = [random_poly(rng, S, 3, rng.randint(1, 3)) + S.monomial((0, 0, 0), rng.choice([0, 1])) for _ in range(rng.randint(1, 3))]
        ours = standard_basis(LocalIdeal(S, gens), global_order(3))
        mine = {sympy.Poly(sympy.sympify(str(g).replace("^", "**")), *syms).monic().as_expr() for g in ours}
        assert mine == _sympy_gb(gens, S.names)


def test_char_p_membership():
    F = PolyRing(["x", "y"], GF(3))
    I = LocalIdeal(F, [F.parse("x^3 + y^3")])
    assert I.contains(F.parse("(x + y)^3"))


def test_homogenized_basis_matches_mora():
    rng = random.Random(31)
    S = PolyRing(["x", "y", "z"])
    for field in (None, GF(7)):
        ring = S if field is None else PolyRing(S.names, field)
        for _ in range(8):
            gens = [poly_to_vec(random_poly(rng, ring, 3, 3)) for _ in range(rng.randint(1, 3))]
            eng = Engine(local_order(3), ring.characteristic)
            mora = sorted(eng.lm(v) for v in eng.std(gens))
            lazard = sorted(eng.lm(v) for v in homogenized_std(gens, 3, ring.characteristic))
            assert mora == lazard
