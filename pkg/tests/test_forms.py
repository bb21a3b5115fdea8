from hetlab.scalars import Scalar, ZERO, ONE, HALF, I, SQRT2, rat
from hetlab.fourier import FieldScalar
from hetlab.forms import (Form, vol_form, vol_coefficient, torus_integral,
                          inner_product, norm_data, hodge_star,
                          lambda_contraction, harmonic_part, norm_omega,
                          lambda_constant, NoMetric, DegenerateOmegaMetric,
                          NegativeNormSquared)
from hetlab.complexgeom import (dz, dzbar, standard_kaehler_form,
                                standard_volume_form, cx_from_omega,
                                holo_vector, StructureMap, vcontract,
                                DegenerateOmega, form2_to_endo, endo_to_form2)
from hetlab import linalg
from hetlab.sampling import rng_from_seed, rand_form, rand_vector

import pytest


OMEGA = standard_kaehler_form()
VOL3 = standard_volume_form()


def test_kaehler_cube_is_six_vol():
    w3 = OMEGA.wedge(OMEGA).wedge(OMEGA)
    assert w3 == vol_form() * 6
    assert vol_coefficient(w3) == Scalar(6)


def test_volume_form_pairing():
    # the complex volume form against its conjugate: -8i times the volume
    prod = VOL3.wedge(VOL3.conjugate())
    assert prod == vol_form() * (Scalar(0, 0, -8))


def test_volume_norm():
    sq, flt, root = norm_data(VOL3)
    assert sq == Scalar(8)
    assert root == SQRT2 * 2
    assert abs(flt - 8 ** 0.5) < 1e-12


def test_type_projections():
    assert OMEGA.proj(1, 1) == OMEGA
    assert OMEGA.proj(2, 0).is_zero()
    f = dz(0).wedge(dz(1))
    parts = f.pq_parts()
    assert set(parts) == {(2, 0)}
    mixed = f + f.conjugate()
    ps = mixed.pq_parts()
    assert set(ps) == {(2, 0), (0, 2)}


def test_j_action_pure_types():
    # (1,1): +1, (2,0): -1, (2,1): -i, (1,2): +i, (3,0): +i, (0,3): -i
    assert OMEGA.j_apply() == OMEGA
    f20 = dz(0).wedge(dz(1))
    assert f20.j_apply() == f20 * (-ONE)
    f21 = dzbar(0).wedge(dz(1)).wedge(dz(2))
    assert f21.j_apply() == f21 * (-I)
    assert f21.conjugate().j_apply() == f21.conjugate() * I
    assert VOL3.j_apply() == VOL3 * I
    assert VOL3.conjugate().j_apply() == VOL3.conjugate() * (-I)


def test_dc_on_functions():
    # J d J^{-1} f = i (antiholomorphic - holomorphic) derivative
    f = Form.scalar(FieldScalar.mode((1, 2, 0, 0, 1, 0), rat(1, 3), rat(5)))
    lhs = f.dc()
    rhs = (f.del_anti() - f.del_holo()) * I
    assert lhs == rhs


def test_d_squared_and_leibniz():
    rng = rng_from_seed(11)
    for _ in range(5):
        a = rand_form(rng, 2)
        b = rand_form(rng, 1)
        assert a.d().d().is_zero()
        assert b.d().d().is_zero()
        lhs = a.wedge(b).d()
        rhs = a.d().wedge(b) + a.wedge(b.d())
        assert lhs == rhs  # deg(a) even


def test_contraction_and_lie():
    rng = rng_from_seed(7)
    for _ in range(4):
        a = rand_form(rng, 3)
        v = rand_vector(rng)
        assert a.contract(v).contract(v).is_zero()
        # Lie derivative commutes with d
        assert a.lie(v).d() == a.d().lie(v)


def test_structure_map_example():
    sm = StructureMap()
    img = sm.apply([(dzbar(0), holo_vector(0))])
    want = dzbar(0).wedge(dz(1)).wedge(dz(2))
    assert img == want
    back = sm.solve(want)
    again = sm.apply(back)
    assert again == want


def test_structure_map_roundtrip_field():
    rng = rng_from_seed(3)
    sm = StructureMap()
    a = rand_form(rng, 3, complex_=True).proj(2, 1)
    assert sm.apply(sm.solve(a)) == a
    sm2 = StructureMap(anti_degree=2)
    a22 = rand_form(rng, 4, complex_=True).proj(2, 2)
    assert sm2.apply(sm2.solve(a22)) == a22


def test_cx_from_omega_standard():
    cf, jm = cx_from_omega(VOL3)
    want = linalg.zeros(6, 6)
    for j in range(3):
        want[j + 3][j] = ONE
        want[j][j + 3] = -ONE
    assert jm == want
    # the recovered coframe reproduces the (3,0) projection
    assert VOL3.proj(3, 0, cf) == VOL3


def test_cx_from_omega_degenerate():
    bad = dz(0).wedge(dz(1)).wedge(dzbar(0))
    with pytest.raises(DegenerateOmega):
        cx_from_omega(bad)


def test_hodge_star_flat():
    g = linalg.identity(6)
    assert hodge_star(Form.scalar(ONE), g) == vol_form()
    assert hodge_star(vol_form(), g) == Form.scalar(ONE)
    # on a Kaehler 3-fold: star omega = omega^2 / 2
    assert hodge_star(OMEGA, g) == OMEGA.wedge(OMEGA) * HALF
    with pytest.raises(NoMetric):
        hodge_star(OMEGA)


def test_lambda_contraction_values():
    lam = lambda_contraction(OMEGA, OMEGA)
    assert lam.get(()) == Scalar(3)
    # Lambda on a primitive (1,1) form vanishes
    prim = Form.monomial((0, 3), ONE) - Form.monomial((1, 4), ONE)
    assert lambda_contraction(prim, OMEGA).is_zero()


def test_index_raising_roundtrip():
    rng = rng_from_seed(19)
    b = rand_form(rng, 2)
    u = form2_to_endo(b)
    assert endo_to_form2(u) == b
    assert form2_to_endo(OMEGA) == cx_from_omega(VOL3)[1]


def test_torus_integral():
    f = FieldScalar.mode((1, 0, 0, 0, 0, 0), ONE) * \
        FieldScalar.mode((1, 0, 0, 0, 0, 0), ONE)
    top = vol_form() * f
    # mean of cos^2 = 1/2 in units of (2 pi)^6
    assert torus_integral(top) == HALF


def test_inner_product_hermitian():
    a = dz(0).wedge(dz(1))
    assert inner_product(a, a) == Scalar(4)
    b = dzbar(0).wedge(dzbar(1))
    assert inner_product(a, b) == ZERO


def test_harmonic_part_picks_constant_mode():
    rng = rng_from_seed(23)
    rep = Form.monomial((0, 1, 2), ONE)
    a = rep + rand_form(rng, 2).d()
    assert harmonic_part(a) == rep
    assert harmonic_part(harmonic_part(a)) == harmonic_part(a)
    assert harmonic_part(rand_form(rng, 3).d()).is_zero()
    with pytest.raises(ValueError):
        harmonic_part(a, 2)


def test_harmonic_part_oscillatory():
    cos4 = FieldScalar.mode((0, 0, 0, 1, 0, 0), ONE)
    sin4 = FieldScalar.mode((0, 0, 0, 1, 0, 0), ZERO, ONE)
    a = Form.monomial((1, 2, 3), cos4)
    # explicit primitive certifies exactness before projecting
    assert Form.monomial((1, 2), sin4).d() == a
    assert harmonic_part(a).is_zero()
    # any purely oscillatory coefficient dies, closed or not
    assert harmonic_part(Form.monomial((0, 1, 2), cos4)).is_zero()


def test_norm_omega_standard():
    sq, root, flt = norm_omega(VOL3, OMEGA)
    assert sq == Scalar(8)
    assert root == SQRT2 * 2
    assert abs(flt - 8 ** 0.5) < 1e-12


def test_norm_omega_homogeneity_and_zero():
    t = rat(-3, 2)
    sq, root, _ = norm_omega(VOL3 * t, OMEGA)
    assert sq == Scalar(8) * t * t
    assert root == SQRT2 * 2 * rat(3, 2)
    sq0, root0, flt0 = norm_omega(Form.zero(3), OMEGA)
    assert sq0 == ZERO and root0 == ZERO and flt0 == 0.0


def test_norm_omega_errors():
    degenerate = Form.monomial((0, 3), ONE)
    with pytest.raises(DegenerateOmegaMetric):
        norm_omega(VOL3, degenerate)
    # conjugate volume form has the opposite orientation
    with pytest.raises(NegativeNormSquared):
        norm_omega(VOL3.conjugate(), OMEGA)


def test_lambda_constant_values():
    assert lambda_constant(VOL3, OMEGA, Form.zero(2)) == ZERO
    lam0 = rat(2, 3)
    f = OMEGA * (I * lam0)
    # direct wedge integration oracle
    num = vol_coefficient(f.wedge(OMEGA).wedge(OMEGA))
    den = vol_coefficient(OMEGA.wedge(OMEGA).wedge(OMEGA))
    lam = lambda_constant(VOL3, OMEGA, f)
    assert lam == num / den
    assert lam == I * lam0
    # decomposable block: e^{03} ^ omega^2 = omega^3 / 3
    assert lambda_constant(VOL3, OMEGA, Form.monomial((0, 3), I)) == I / Scalar(3)
    # traceless F wedges to zero against omega^2
    traceless = Form.monomial((0, 3), I) - Form.monomial((1, 4), I)
    assert lambda_constant(VOL3, OMEGA, traceless) == ZERO
    with pytest.raises(DegenerateOmegaMetric):
        lambda_constant(VOL3, Form.monomial((0, 3), ONE), f)
