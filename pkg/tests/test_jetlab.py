import random
from fractions import Fraction

import pytest

from germcrit.gb import LocalIdeal
from germcrit.jetlab import (
    CharacteristicError,
    JetAutomorphism,
    JetContext,
    JetDerivation,
    JetError,
    determinacy_probe,
    exp_derivation,
    lift_along_chain,
    lift_automorphism,
    log_automorphism,
    lr_solver,
    perturbation_basis,
    right_solver,
    verify_equivalence,
)
from germcrit.ring import GF, PolyRing

from helpers import make_map, random_poly

X = PolyRing(["x"])
R = PolyRing(["x", "y"])


def aut(ctx, *images):
    return JetAutomorphism(ctx, [ctx.ring.parse(s) for s in images])


def ideal(ring, *gens):
    return LocalIdeal(ring, [ring.parse(g) for g in gens])


def test_exp_examples():
    ctx = JetContext(X, 3)
    phi = exp_derivation(JetDerivation(ctx, [X.parse("x^2")]), ctx)
    assert phi.images == [X.parse("x + x^2 + x^3")]
    assert exp_derivation(JetDerivation.zero(ctx), ctx) == JetAutomorphism.identity(ctx)


def test_exp_refused_in_small_characteristic():
    F = PolyRing(["x"], GF(2))
    ctx = JetContext(F, 3)
    with pytest.raises(CharacteristicError):
        exp_derivation(JetDerivation(ctx, [F.parse("x^2")]), ctx)
    big = JetContext(PolyRing(["x"], GF(7)), 5)
    assert exp_derivation(JetDerivation(big, [big.ring.parse("x^2")]), big).images[0].coeff((2,)) == 1


def test_exp_requires_nilpotent_derivation():
    ctx = JetContext(X, 4)
    with pytest.raises(JetError):
        exp_derivation(JetDerivation(ctx, [X.parse("x")]), ctx)


def test_log_examples():
    ctx = JetContext(X, 3)
    xi = log_automorphism(aut(ctx, "x + x^2"), ctx)
    assert xi.coeffs == [X.parse("x^2 - x^3")]
    assert log_automorphism(JetAutomorphism.identity(ctx), ctx).is_zero()


def _random_derivation(rng, ctx):
    ring = ctx.ring
    coeffs = []
    for _ in range(ring.ngens):
        p = random_poly(rng, ring, ctx.K, rng.randint(0, 3))
        coeffs.append(p - p.truncate(1))
    return JetDerivation(ctx, coeffs)


def test_exp_log_roundtrip():
    rng = random.Random(5)
    ctx = JetContext(R, 10)
    for _ in range(15):
        xi = _random_derivation(rng, ctx)
        assert log_automorphism(exp_derivation(xi, ctx), ctx) == xi


def test_exp_approximation_contract():
    rng = random.Random(6)
    ctx = JetContext(R, 10)
    for _ in range(15):
        xi = _random_derivation(rng, ctx)
        phi = exp_derivation(xi, ctx)
        for x, img in zip(R.gens(), phi.images):
            rest = img - x - xi(x)
            second = xi(xi(x))
            if rest:
                assert second and rest.order() >= second.order()


def test_right_solver_square_root():
    f = make_map(["x"], ["u"], ["x^2"])
    ft = make_map(["x"], ["u"], ["x^2 + x^3"])
    ctx = JetContext(f.source, 4)
    res = right_solver(f, ft, ctx)
    assert res.success
    assert res.phi_X.images[0] == X.parse("x + 1/2*x^2 - 1/8*x^3")
    assert verify_equivalence(f, ft, res.phi_X, None, 4)


def test_right_solver_identity_and_cubic():
    f = make_map(["x", "y"], ["u", "v"], ["x", "y^2"])
    res = right_solver(f, f, JetContext(f.source, 6))
    assert res.success and res.phi_X.images == R.gens()
    g = make_map(["x"], ["u"], ["x^3"])
    gt = make_map(["x"], ["u"], ["x^3 + x^4 + x^5"])
    res = right_solver(g, gt, JetContext(g.source, 8))
    assert res.success and verify_equivalence(g, gt, res.phi_X, None, 8)


def test_right_solver_reports_failure():
    # x^2 and x^3 are not right-equivalent
    f = make_map(["x"], ["u"], ["x^2"])
    ft = make_map(["x"], ["u"], ["x^3"])
    res = right_solver(f, ft, JetContext(f.source, 6))
    assert not res.success
    assert res.label() == "not-found-at-order(6)"
    assert res.degree is not None


def test_lr_solver_examples():
    f = make_map(["x"], ["u"], ["x^2"])
    ft = make_map(["x"], ["u"], ["4*x^2"])
    res = lr_solver(f, ft, JetContext(f.source, 6))
    assert res.success and verify_equivalence(f, ft, res.phi_X, res.phi_Y, 6)
    fold = make_map(["x", "y"], ["u", "v"], ["x", "y^2"])
    res = lr_solver(fold, fold, JetContext(fold.source, 6))
    assert res.success
    ft = make_map(["x", "y"], ["u", "v"], ["x + x^2", "y^2 + x*y^2"])
    res = lr_solver(fold, ft, JetContext(fold.source, 8))
    assert res.success and verify_equivalence(fold, ft, res.phi_X, res.phi_Y, 8)


def test_lift_examples():
    ctx = JetContext(R, 8)
    J, I = ideal(R, "x*y"), ideal(R, "x")
    for N in (3, 4, 5):
        res = lift_automorphism(J, I, N, aut(ctx, "x", f"y + x^{N - 1}"), ctx)
        assert res.success and all(res.checks.values())
        assert res.phi == JetAutomorphism.identity(ctx)
    res = lift_automorphism(J, I, 3, aut(ctx, "x + x^2", "y"), ctx)
    assert res.success and res.phi == aut(ctx, "x + x^2", "y") and res.drops == [0]
    res = lift_automorphism(J, I, 3, JetAutomorphism.identity(ctx), ctx)
    assert res.phi == JetAutomorphism.identity(ctx)


def test_lift_preconditions():
    ctx = JetContext(R, 6)
    with pytest.raises(JetError):
        lift_automorphism(ideal(R, "x*y"), ideal(R, "x"), 3, aut(ctx, "x + y", "y"), ctx)
    with pytest.raises(JetError):
        # x -> x + y^2 sends xy to xy + y^3, outside (xy) + (x)^3
        lift_automorphism(ideal(R, "x*y"), ideal(R, "x"), 3, aut(ctx, "x + y^2", "y"), ctx)


def test_lift_along_chain():
    ctx = JetContext(R, 8)
    res = lift_along_chain([ideal(R, "x*y"), ideal(R, "x")], [3, 3], aut(ctx, "x", "y + x^2"), ctx)
    assert res.success and all(res.checks.values())


def test_probe_x_cubed_and_empty():
    f = make_map(["x"], ["u"], ["x^3"])
    ctx = JetContext(f.source, 12)
    rows = determinacy_probe(f, [5], 10, 0, ctx)
    assert rows[0].rate == Fraction(1)
    assert determinacy_probe(f, [5], 0, 0, ctx) == []


def test_probe_is_seeded():
    f = make_map(["x"], ["u"], ["x^2"])
    ctx = JetContext(f.source, 8)
    a = determinacy_probe(f, [3, 4], 5, 7, ctx)
    b = determinacy_probe(f, [3, 4], 5, 7, ctx)
    assert [(r.successes, r.failure_degrees) for r in a] == [(r.successes, r.failure_degrees) for r in b]


def test_perturbation_basis_degrees():
    I = ideal(X, "x")
    basis = perturbation_basis(I, 3, 5)
    assert sorted(p.order() for p in basis) == [3, 4, 5]


def test_lr_solver_recovers_from_target_choice():
    # the first correction can be absorbed by either side; only the source
    # choice extends to higher degree
    f = make_map(["x", "y"], ["u", "v"], ["x", "y^3 + x*y"])
    for images in (["x", "y + x^2"], ["x + x*y", "y"]):
        ft = make_map(["x", "y"], ["u", "v"], [f"{images[0]}", f"({images[1]})^3 + ({images[0]})*({images[1]})"])
        res = lr_solver(f, ft, JetContext(f.source, 10))
        assert res.success and verify_equivalence(f, ft, res.phi_X, res.phi_Y, 10)
