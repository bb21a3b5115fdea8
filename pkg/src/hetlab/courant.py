"""Transitive Courant algebroid on the torus: sections, bracket, axioms,
and the shear/affine automorphisms.

A background holds the gauge algebra, a connection 1-form theta, the
curvature F and the three-form H.  F is stored separately because in
the abelian case the bracket never uses theta itself, which lets us
work with curvatures (e.g. constant ones) that are not globally d(theta).

Sections are X + r + xi: a vector field (six components), a gauge
element (coefficients) and a one-form.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, ONE, HALF
from .fourier import FieldScalar, FIELD_ZERO
from .forms import Form, DIM
from . import lie as lie_mod
from .lie import (lf_add, lf_sub, lf_scale, lf_d, lf_contract, lf_zero,
                  lf_pair_wedge, lf_pair_elt, lf_wedge_bracket, lf_from_elt,
                  lf_to_elt, lf_is_zero, lf_lie, curvature, d_theta)


class Background:
    """Gauge algebra, connection, curvature and NS flux."""

    def __init__(self, lie, theta=None, H=None, F=None):
        self.lie = lie
        self.theta = theta if theta is not None else lf_zero(lie, 1)
        self.H = H if H is not None else Form.zero(3)
        self.F = F if F is not None else curvature(lie, self.theta)

    def bianchi_h_residual(self):
        """dH - c(F ^ F); must vanish for the bracket axioms."""
        return self.H.d() - lf_pair_wedge(self.lie, self.F, self.F)

    def bianchi_f_residual(self):
        """Covariant closedness of the curvature."""
        return d_theta(self.lie, self.theta, self.F)

    def d_theta_along(self, x, r):
        """Covariant derivative of a gauge element along a vector."""
        dr = lf_contract(d_theta(self.lie, self.theta, lf_from_elt(self.lie, r)), x)
        return lf_to_elt(dr)

    def f_contract(self, x):
        """iota_X F as a gauge-valued one-form."""
        return lf_contract(self.F, x)

    def f_eval(self, x, y):
        """F(X, Y) as a gauge element."""
        return lf_to_elt(lf_contract(lf_contract(self.F, x), y))


class GSection:
    """Section X + r + xi of the extended tangent bundle."""

    __slots__ = ("x", "r", "xi")

    def __init__(self, x, r, xi):
        self.x = list(x)
        self.r = list(r)
        self.xi = xi

    @staticmethod
    def zero(lie):
        return GSection([FIELD_ZERO] * DIM, lie.zero_elt(), Form.zero(1))

    def __add__(self, other):
        return GSection([a + b for a, b in zip(self.x, other.x)],
                        [a + b for a, b in zip(self.r, other.r)],
                        self.xi + other.xi)

    def __sub__(self, other):
        return GSection([a - b for a, b in zip(self.x, other.x)],
                        [a - b for a, b in zip(self.r, other.r)],
                        self.xi - other.xi)

    def __neg__(self):
        return GSection([-a for a in self.x], [-a for a in self.r], -self.xi)

    def scale(self, z):
        """Multiply by a function or constant."""
        return GSection([z * a for a in self.x],
                        [z * a if not _zn(a) else a for a in self.r],
                        self.xi * z)

    def is_zero(self):
        return (all(_zn(a) for a in self.x) and all(_zn(a) for a in self.r)
                and self.xi.is_zero())


def _zn(v):
    if isinstance(v, (Scalar, FieldScalar)):
        return v.is_zero()
    return v == 0


def pairing(bg, e1, e2):
    """<X+r+xi, Y+t+eta> = (1/2)(eta(X) + xi(Y)) + c(r, t)."""
    out = HALF * (e1.xi.contract(e2.x).get(()) + e2.xi.contract(e1.x).get(()))
    return out + bg.lie.pair(e1.r, e2.r)


def vector_bracket(x, y):
    out = []
    for i in range(DIM):
        acc = FIELD_ZERO
        for j in range(DIM):
            acc = acc + x[j] * _as_field(y[i]).partial(j)
            acc = acc - y[j] * _as_field(x[i]).partial(j)
        out.append(acc)
    return out


def _as_field(v):
    if isinstance(v, FieldScalar):
        return v
    return FieldScalar.constant(v if isinstance(v, Scalar) else Scalar(v))


def vector_apply(x, fn):
    """Directional derivative X(fn) of a function."""
    fn = _as_field(fn)
    acc = FIELD_ZERO
    for j in range(DIM):
        acc = acc + x[j] * fn.partial(j)
    return acc


def function_differential(fn):
    fn = _as_field(fn)
    out = Form.zero(1)
    for j in range(DIM):
        dj = fn.partial(j)
        if not dj.is_zero():
            out = out + Form.monomial((j,), dj)
    return out


def dorfman(bg, e1, e2):
    """The Dorfman bracket of two sections."""
    g = bg.lie
    x, r, xi = e1.x, e1.r, e1.xi
    y, t, eta = e2.x, e2.r, e2.xi

    xv = vector_bracket(x, y)

    rv = [a - b for a, b in
          zip(bg.d_theta_along(x, t), bg.d_theta_along(y, r))]
    rv = [a - b for a, b in zip(rv, g.bracket(r, t))]
    rv = [a - b for a, b in zip(rv, bg.f_eval(x, y))]

    form = eta.lie(x) - xi.d().contract(y) + bg.H.contract(x).contract(y)
    dth_r = d_theta(g, bg.theta, lf_from_elt(g, r))
    form = form + lf_pair_elt(g, t, dth_r) * Scalar(2)
    form = form + lf_pair_elt(g, t, bg.f_contract(x)) * Scalar(2)
    form = form - lf_pair_elt(g, r, bg.f_contract(y)) * Scalar(2)

    return GSection(xv, rv, form)


def pi_star_d(bg, fn):
    """The section 2 pi^* d(fn) appearing in the symmetric axiom is
    built from this: 0 + 0 + d(fn)."""
    return GSection([FIELD_ZERO] * DIM, bg.lie.zero_elt(),
                    function_differential(fn))


# -- axiom residuals ---------------------------------------------------

def axiom_d1(bg, e1, e2, e3):
    lhs = dorfman(bg, e1, dorfman(bg, e2, e3))
    rhs = dorfman(bg, dorfman(bg, e1, e2), e3) + dorfman(bg, e2, dorfman(bg, e1, e3))
    return lhs - rhs


def axiom_d2(bg, e1, e2):
    br = dorfman(bg, e1, e2)
    vb = vector_bracket(e1.x, e2.x)
    return [a - b for a, b in zip(br.x, vb)]


def axiom_d3(bg, e1, fn, e2):
    lhs = dorfman(bg, e1, e2.scale(fn))
    rhs = e2.scale(vector_apply(e1.x, fn)) + dorfman(bg, e1, e2).scale(fn)
    return lhs - rhs


def axiom_d4(bg, e1, e2, e3):
    lhs = vector_apply(e1.x, pairing(bg, e2, e3))
    rhs = pairing(bg, dorfman(bg, e1, e2), e3) + pairing(bg, e2, dorfman(bg, e1, e3))
    return lhs - rhs


def axiom_d5(bg, e1, e2):
    sym = dorfman(bg, e1, e2) + dorfman(bg, e2, e1)
    return sym - pi_star_d(bg, pairing(bg, e1, e2)).scale(Scalar(2))


def d1_anomaly(bg, e1, e2, e3):
    """The failure of the Leibniz axiom when the Bianchi identity for H
    breaks: contraction of dH - c(F^F) by the three anchors."""
    w = bg.bianchi_h_residual()
    res = w.contract(e1.x).contract(e2.x).contract(e3.x)
    return GSection([FIELD_ZERO] * DIM, bg.lie.zero_elt(), res)


# -- shear automorphisms (B, a) ----------------------------------------

class Shear:
    """Orthogonal shear by a two-form B and a gauge-valued one-form a."""

    __slots__ = ("B", "a")

    def __init__(self, B, a):
        self.B = B
        self.a = a

    def apply(self, bg, e):
        g = bg.lie
        ax = lf_to_elt(lf_contract(self.a, e.x))
        xi = e.xi + self.B.contract(e.x)
        a_of_x = lf_contract(self.a, e.x)
        # - c(a(X), a(.)) - 2 c(a(.), r)
        xi = xi - lf_pair_elt(g, lf_to_elt(a_of_x), self.a)
        xi = xi - lf_pair_elt(g, e.r, self.a) * Scalar(2)
        return GSection(e.x, [p + q for p, q in zip(e.r, ax)], xi)

    def compose(self, bg, other):
        """self after other: (B + B' + c(a ^ a'), a + a')."""
        g = bg.lie
        b = self.B + other.B + lf_pair_wedge(g, self.a, other.a)
        return Shear(b, lf_add(self.a, other.a))

    def shifted_background(self, bg):
        """Conjugating the bracket by this shear gives the bracket of
        theta + a, F_{theta+a} and the corrected flux below, with no
        condition on (B, a)."""
        g = bg.lie
        theta2 = lf_add(bg.theta, self.a)
        f2 = lf_add(bg.F, lf_add(d_theta(g, bg.theta, self.a),
                                 lf_scale(lf_wedge_bracket(g, self.a, self.a),
                                          HALF)))
        h2 = (bg.H - self.B.d()
              + lf_pair_wedge(g, self.a, bg.F) * Scalar(2)
              + lf_pair_wedge(g, self.a, d_theta(g, bg.theta, self.a))
              + lf_pair_wedge(g, self.a,
                              lf_wedge_bracket(g, self.a, self.a)) * _THIRD)
        return Background(g, theta2, h2, f2)

    def inverse(self):
        # c(a ^ a) = 0, so (-B, -a) composes to the identity
        return Shear(-self.B, [-a for a in self.a])

    def condition_residuals(self, bg):
        """What must vanish for the shear to preserve the bracket: the
        connection shift must fix F, and the flux correction must close
        up exactly."""
        g = bg.lie
        f_res = lf_add(d_theta(g, bg.theta, self.a),
                       lf_scale(lf_wedge_bracket(g, self.a, self.a), HALF))
        shifted = self.shifted_background(bg)
        h_res = bg.H - shifted.H
        return f_res, h_res


_THIRD = ONE / Scalar(3)


def gauge_shear(bg, chi):
    """The shear (2 c(chi, F), d chi) generated by a gauge parameter chi
    (exact abelian automorphism when F is closed)."""
    g = bg.lie
    a = lf_d(lf_from_elt(g, chi))
    b = lf_pair_elt(g, chi, bg.F) * Scalar(2)
    return Shear(b, a)


# -- standard backgrounds ----------------------------------------------

def flat_background():
    """Trivial gauge data: zero connection, zero flux."""
    return Background(lie_mod.abelian_imaginary())


def const_f_background(coeff=None):
    """Abelian background with constant decomposable curvature.

    F ^ F = 0, so H = 0 keeps the structure consistent; the curvature
    is prescribed directly since no global potential exists for it.
    """
    g = lie_mod.abelian_imaginary()
    c = coeff if coeff is not None else ONE
    f = [Form.monomial((0, 1), c)]
    return Background(g, lf_zero(g, 1), Form.zero(3), f)


def constructed_pair_background(gamma=None):
    """Two abelian factors with a cross pairing, a curvature with one
    constant and one oscillating leg, and the explicit flux primitive:
    dH = c(F ^ F) is nonzero yet exact.
    """
    from .fourier import FieldScalar
    ga = gamma if gamma is not None else ONE
    gram = [[ONE, ga], [ga, ONE]]
    g = lie_mod.LieAlgebra("u1+u1", 2, {}, gram)
    f1 = Form.monomial((0, 1))
    cos3 = FieldScalar.mode((0, 0, 1, 0, 0, 0), ONE, ZERO)
    sin3 = FieldScalar.mode((0, 0, 1, 0, 0, 0), ZERO, ONE)
    f2 = Form.monomial((2, 3), cos3)
    h = Form.monomial((0, 1, 3), sin3) * (Scalar(2) * ga)
    return Background(g, lf_zero(g, 1), h, [f1, f2])


def spec_broken_background():
    """Zero curvature with a non-closed flux: only the Leibniz axiom
    can fail, and its anomaly is the triple contraction of dH."""
    from .fourier import FieldScalar
    g = lie_mod.abelian_imaginary()
    sin1 = FieldScalar.mode((1, 0, 0, 0, 0, 0), ZERO, ONE)
    h = Form.monomial((1, 2, 3), sin1)
    return Background(g, lf_zero(g, 1), h)


def constructed_broken_background(gamma=None):
    """Same curvature as the constructed pair, flux replaced by a
    non-closed one; dH - c(F ^ F) is nonzero on an open set."""
    from .fourier import FieldScalar
    bg = constructed_pair_background(gamma)
    sin1 = FieldScalar.mode((1, 0, 0, 0, 0, 0), ZERO, ONE)
    h = Form.monomial((1, 2, 3), sin1)
    return Background(bg.lie, bg.theta, h, bg.F)


def twisted_abelian_background(rng=None, alpha=None):
    """Abelian background with exact curvature and the flux forced by
    it: F = d(alpha), H = alpha ^ d(alpha)."""
    from .sampling import rand_form
    g = lie_mod.abelian_imaginary()
    if alpha is None:
        alpha = rand_form(rng, 1, n_terms=3)
    theta = [alpha]
    h = alpha.wedge(alpha.d())
    return Background(g, theta, h)


def chern_simons_background(rng=None, theta=None):
    """Nonabelian background whose flux is the Chern-Simons form of the
    connection, so the flux closure identity holds exactly."""
    from .sampling import rand_form
    g = lie_mod.su2()
    if theta is None:
        theta = [rand_form(rng, 1, n_terms=2) for _ in range(3)]
    h = (lf_pair_wedge(g, theta, lf_d(theta))
         + lf_pair_wedge(g, theta,
                         lf_wedge_bracket(g, theta, theta)) * _THIRD)
    return Background(g, theta, h)


def broken_background(rng=None, alpha=None, mu=None):
    """A twisted abelian background with the flux identity spoiled by a
    non-closed perturbation; only the Leibniz axiom should fail."""
    from .sampling import rand_form
    bg = twisted_abelian_background(rng, alpha)
    if mu is None:
        while True:
            mu = rand_form(rng, 3, n_terms=2)
            if not mu.d().is_zero():
                break
    return Background(bg.lie, bg.theta, bg.H + mu, bg.F)


# -- infinitesimal symmetry membership ---------------------------------

def lie_aut_residual(v, a, B, bg):
    """Membership residuals for an infinitesimal algebroid symmetry.

    Returns (L_V F - d^theta a, L_V H + dB - 2c(a ^ F)); both vanish
    exactly when (V, a, B) generates a one-parameter automorphism
    family.
    """
    g = bg.lie
    res_f = lf_sub(lf_lie(bg.F, v), d_theta(g, bg.theta, a))
    res_h = bg.H.lie(v) + B.d() - lf_pair_wedge(g, a, bg.F) * Scalar(2)
    return res_f, res_h


def ring_lie_residual(v, r, B, bg):
    """Inner-symmetry residual on a background whose H slot carries the
    solution's d^c omega.

    Computes L_V H - 2c((d^theta r + iota_V F) ^ F) + dB.  When both
    Bianchi identities hold, the equivalent d(iota_V H - 2c(r, F)) + dB
    route is evaluated as well and must agree.
    """
    g = bg.lie
    a = lf_add(d_theta(g, bg.theta, lf_from_elt(g, r)), lf_contract(bg.F, v))
    res = bg.H.lie(v) - lf_pair_wedge(g, a, bg.F) * Scalar(2) + B.d()
    if (bg.bianchi_h_residual().is_zero()
            and lf_is_zero(bg.bianchi_f_residual())):
        alt = (bg.H.contract(v)
               - lf_pair_elt(g, r, bg.F) * Scalar(2)).d() + B.d()
        if not (alt - res).is_zero():
            raise ArithmeticError("equivalent residual routes disagree")
    return res


def ring_inner_element(bg, v, r, xi):
    """Inner symmetry (V, r, B) generated by a one-form potential.

    B = -d xi - iota_V H + 2c(r, F); on any background satisfying both
    Bianchi identities the result passes ring_lie_residual exactly.
    """
    b2 = ((-xi.d()) - bg.H.contract(v)
          + lf_pair_elt(bg.lie, r, bg.F) * Scalar(2))
    return v, r, b2


# -- affine torus symmetries -------------------------------------------

def affine_apply_section(mat_inv, mat, tau_quarters, e):
    """Push a section forward along x -> M x + (pi/2) tau.

    The vector components move by M and the inverse map pullback; the
    one-form moves by the inverse-transpose.  Gauge coefficients just
    get composed with the inverse map.
    """
    # inverse map x -> Minv (x - (pi/2) tau): tau' = -Minv tau
    tau_inv = [-sum(mat_inv[r][c] * tau_quarters[c] for c in range(DIM))
               for r in range(DIM)]

    def move(fn):
        if isinstance(fn, FieldScalar):
            return fn.pullback_affine(mat_inv, tau_inv)
        return fn

    xv = []
    for i in range(DIM):
        acc = FIELD_ZERO
        for j in range(DIM):
            if mat[i][j]:
                acc = acc + _as_field(e.x[j]).pullback_affine(mat_inv, tau_inv) * Scalar(mat[i][j])
        xv.append(acc)
    rv = [move(c) for c in e.r]
    xi = e.xi.pullback_affine(mat_inv, tau_inv)
    return GSection(xv, rv, xi)
