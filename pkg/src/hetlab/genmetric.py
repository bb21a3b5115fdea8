"""Generalized metrics on the extended bundle and their connections.

A metric is a positive pair (g, twist) splitting the bundle into V+
and V-.  On top of it we build the Bismut-type connection from the
bracket, its torsion, the canonical torsion-free connection, the
auxiliary torsion-free family with its naturality defect, and the
dilaton-weighted family.
"""
from __future__ import annotations

from .scalars import Scalar, ZERO, ONE, HALF
from .fourier import FieldScalar, FIELD_ZERO
from .forms import Form, DIM
from . import linalg
from .courant import (GSection, Shear, dorfman, pairing, vector_apply,
                      function_differential, _as_field)
from .lie import lf_zero, lf_contract, lf_pair_elt

THIRD = ONE / Scalar(3)
TWO_THIRDS = Scalar(2) / Scalar(3)
SIXTH = ONE / Scalar(6)


class NotAutomorphism(Exception):
    pass


def identity_metric():
    return [[ONE if i == j else ZERO for j in range(DIM)] for i in range(DIM)]


class GenMetric:
    """Constant metric g on the torus plus splitting twist (b, a)."""

    def __init__(self, lie, g=None, b=None, a=None):
        self.lie = lie
        self.g = g if g is not None else identity_metric()
        self.b = b if b is not None else Form.zero(2)
        self.a = a if a is not None else lf_zero(lie, 1)
        self.g_inv = linalg.inverse(self.g)
        self._twist = None

    def is_canonical(self):
        return self.b.is_zero() and all(f.is_zero() for f in self.a)

    def twist(self):
        """Shear mapping the canonical splitting onto this one."""
        if self._twist is None:
            self._twist = Shear(-self.b, [-f for f in self.a])
        return self._twist


def rank_plus(bg):
    return DIM + bg.lie.dim


def rank_minus(bg):
    return DIM


# -- frame plumbing ----------------------------------------------------

def one_form(comps):
    out = Form.zero(1)
    for j in range(DIM):
        c = comps[j]
        if isinstance(c, (Scalar, FieldScalar)) and c.is_zero():
            continue
        out = out + Form.monomial((j,), c)
    return out


def form_components(xi):
    return [xi.get((j,)) for j in range(DIM)]


def metric_apply(m, vec):
    """gX as a one-form."""
    comps = []
    for k in range(DIM):
        acc = FIELD_ZERO
        for l in range(DIM):
            gkl = m.g[k][l]
            if gkl.is_zero():
                continue
            acc = acc + gkl * vec[l]
        comps.append(acc)
    return one_form(comps)


def metric_inv_apply(m, xi):
    """g^{-1}(xi) as a vector."""
    comps = form_components(xi)
    out = []
    for k in range(DIM):
        acc = FIELD_ZERO
        for l in range(DIM):
            gkl = m.g_inv[k][l]
            if gkl.is_zero():
                continue
            acc = acc + gkl * comps[l]
        out.append(acc)
    return out


def metric_eval(m, x, y):
    """g(X, Y) as a function."""
    gy = metric_apply(m, y)
    return gy.contract(x).get(())


def plus_element(m, x, r):
    """X + r + gX in the canonical splitting."""
    return GSection(x, r, metric_apply(m, x))


def minus_element(m, x):
    """X - gX in the canonical splitting."""
    return GSection(x, m.lie.zero_elt(), -metric_apply(m, x))


# -- projections and the side swap -------------------------------------

def _project_canonical(m, e, sign):
    gx = metric_apply(m, e.x)
    giv = metric_inv_apply(m, e.xi)
    if sign > 0:
        x = [HALF * (a + b) for a, b in zip(e.x, giv)]
        return GSection(x, list(e.r), (gx + e.xi) * HALF)
    x = [HALF * (a - b) for a, b in zip(e.x, giv)]
    return GSection(x, m.lie.zero_elt(), (e.xi - gx) * HALF)


def project_pm(bg, m, e):
    """Orthogonal pieces (e+, e-) of a section."""
    if m.is_canonical():
        return (_project_canonical(m, e, +1), _project_canonical(m, e, -1))
    t = m.twist()
    e0 = t.inverse().apply(bg, e)
    return (t.apply(bg, _project_canonical(m, e0, +1)),
            t.apply(bg, _project_canonical(m, e0, -1)))


def side_swap(bg, m, e):
    """The endomorphism exchanging the two definite subbundles."""
    if m.is_canonical():
        return GSection(e.x, m.lie.zero_elt(), -e.xi)
    t = m.twist()
    e0 = t.inverse().apply(bg, e)
    return t.apply(bg, GSection(e0.x, m.lie.zero_elt(), -e0.xi))


def metric_endo(bg, m, e):
    """G(e) = e+ - e-."""
    p, q = project_pm(bg, m, e)
    return p - q


# -- Bismut connection -------------------------------------------------

def bismut(bg, m, e, ep):
    """Bracket definition: keep the side-compatible parts of four
    mixed brackets."""
    e_p, e_m = project_pm(bg, m, e)
    f_p, f_m = project_pm(bg, m, ep)
    out = project_pm(bg, m, dorfman(bg, e_m, f_p))[0]
    out = out + project_pm(bg, m, dorfman(bg, e_p, f_m))[1]
    out = out + project_pm(bg, m, dorfman(bg, side_swap(bg, m, e_m), f_m))[1]
    out = out + project_pm(bg, m, dorfman(bg, side_swap(bg, m, e_p), f_p))[0]
    return out


def _dir_vec(x, z):
    return [vector_apply(x, zk) for zk in z]


def _pair_f(bg, x, elt):
    """c(iota_X F, elt) as a one-form."""
    return lf_pair_elt(bg.lie, elt, lf_contract(bg.F, x))


def _nabla(bg, m, x, z, coeff):
    """x-derivative of z plus coeff * g^{-1} H(x, z, .)."""
    out = _dir_vec(x, z)
    if coeff.is_zero() or bg.H.is_zero():
        return out
    hv = metric_inv_apply(m, bg.H.contract(x).contract(z) * coeff)
    return [a + b for a, b in zip(out, hv)]


def _two_pi_plus(m, v, extra_r=None):
    r = list(extra_r) if extra_r is not None else m.lie.zero_elt()
    return GSection(v, r, metric_apply(m, v))


def _two_pi_minus(m, v):
    return GSection(v, m.lie.zero_elt(), -metric_apply(m, v))


def _vec_sum(u, v):
    return [a + b for a, b in zip(u, v)]


def bismut_explicit(bg, m, e, ep):
    """Componentwise formulas; canonical splitting only."""
    if not m.is_canonical():
        raise ValueError("componentwise form needs the canonical splitting")
    e_p, e_m = project_pm(bg, m, e)
    f_p, f_m = project_pm(bg, m, ep)
    x, r = e_p.x, e_p.r
    y = e_m.x
    z, t = f_p.x, f_p.r
    w = f_m.x
    # ++ : 2Pi+(nabla+_X Z + g^{-1}c(i_X F, t)) + d^theta_X t - F(X, Z)
    v = _vec_sum(_nabla(bg, m, x, z, HALF),
                 metric_inv_apply(m, _pair_f(bg, x, t)))
    radj = [a - b for a, b in zip(bg.d_theta_along(x, t), bg.f_eval(x, z))]
    out = _two_pi_plus(m, v, radj)
    # -+ : same shape with the minus-side direction
    v = _vec_sum(_nabla(bg, m, y, z, HALF),
                 metric_inv_apply(m, _pair_f(bg, y, t)))
    radj = [a - b for a, b in zip(bg.d_theta_along(y, t), bg.f_eval(y, z))]
    out = out + _two_pi_plus(m, v, radj)
    # +- : 2Pi-(nabla-_X W + g^{-1}c(i_W F, r))
    v = _vec_sum(_nabla(bg, m, x, w, -HALF),
                 metric_inv_apply(m, _pair_f(bg, w, r)))
    out = out + _two_pi_minus(m, v)
    # -- : 2Pi-(nabla-_Y W)
    out = out + _two_pi_minus(m, _nabla(bg, m, y, w, -HALF))
    return out


# -- product connection and its twists ---------------------------------

def dprime(bg, m, e, ep):
    """Slotwise derivative along the anchor of e."""
    x = e.x
    return GSection(_dir_vec(x, ep.x),
                    bg.d_theta_along(x, ep.r),
                    ep.xi.map_coeffs(lambda c: vector_apply(x, c)))


def _cinv_bracket_pairing(bg, r, t):
    """c^{-1} of the functional s -> c(r, [t, s])."""
    lie = bg.lie
    vals = []
    for k in range(lie.dim):
        basis = [ONE if a == k else ZERO for a in range(lie.dim)]
        vals.append(lie.pair(r, lie.bracket(t, basis)))
    return lie.pair_dual(vals)


def chi_prime_apply(bg, x, r, y, t, h_mult=1, r_sign=-1, fr_mult=-2):
    """so(E)-twist with direction data (x, r) applied to (y, t).

    Defaults give the torsion twist of the product connection; the
    keyword weights select its variants.
    """
    lie = bg.lie
    s = [-c for c in bg.f_eval(x, y)]
    if r_sign and not lie.is_zero_elt(r):
        cb = _cinv_bracket_pairing(bg, r, t)
        if r_sign > 0:
            s = [a + b for a, b in zip(s, cb)]
        else:
            s = [a - b for a, b in zip(s, cb)]
    xi = Form.zero(1)
    if h_mult:
        xi = bg.H.contract(x).contract(y) * Scalar(h_mult)
    if fr_mult and not lie.is_zero_elt(r):
        xi = xi + _pair_f(bg, y, r) * Scalar(fr_mult)
    xi = xi + _pair_f(bg, x, t) * Scalar(2)
    return GSection([FIELD_ZERO] * DIM, s, xi)


def chi_b_apply(bg, x, r, y, t):
    """Twist dualizing the Bismut torsion."""
    return chi_prime_apply(bg, x, r, y, t, h_mult=2, r_sign=+1, fr_mult=-2)


def chi_err_apply(bg, x, r, y, t):
    """Difference twist between the two torsion-free families."""
    return chi_prime_apply(bg, x, r, y, t, h_mult=0, r_sign=0, fr_mult=4)


def bismut_chi(bg, m, e, ep):
    """Product connection plus projected twists; canonical splitting."""
    if not m.is_canonical():
        raise ValueError("twist decomposition needs the canonical splitting")
    e_p, e_m = project_pm(bg, m, e)
    f_p, f_m = project_pm(bg, m, ep)
    zero_r = bg.lie.zero_elt()
    out = dprime(bg, m, e, ep)
    # swapped-direction twist on the plus side
    val = chi_prime_apply(bg, e_p.x, zero_r, f_p.x, f_p.r)
    out = out + _project_canonical(m, val, +1)
    val = chi_prime_apply(bg, e_m.x, zero_r, f_m.x, zero_r)
    out = out + _project_canonical(m, val, -1)
    val = chi_prime_apply(bg, e_m.x, zero_r, f_p.x, f_p.r)
    out = out + _project_canonical(m, val, +1)
    val = chi_prime_apply(bg, e_p.x, e_p.r, f_m.x, zero_r)
    out = out + _project_canonical(m, val, -1)
    return out


# -- torsion -----------------------------------------------------------

def skew_bracket(bg, e1, e2):
    return (dorfman(bg, e1, e2) - dorfman(bg, e2, e1)).scale(HALF)


def torsion_eval(bg, conn, e1, e2, e3):
    """T(a, b, c) for conn given as the map (e, e') -> D_e e'."""
    core = conn(e1, e2) - conn(e2, e1) - skew_bracket(bg, e1, e2)
    t = pairing(bg, core, e3)
    t = t + HALF * (pairing(bg, conn(e3, e1), e2)
                    - pairing(bg, conn(e3, e2), e1))
    return t


def torsion_plus(bg, x, r, y, s, z, t):
    """Closed form on three plus-side elements (X+r+gX, ...)."""
    lie = bg.lie
    acc = bg.H.contract(x).contract(y).contract(z).get(())
    acc = acc + lie.pair(r, lie.bracket(s, t))
    acc = acc - lie.pair(bg.f_eval(x, y), t)
    acc = acc + lie.pair(bg.f_eval(x, z), s)
    acc = acc - lie.pair(bg.f_eval(y, z), r)
    return acc


def torsion_minus(bg, x, y, w):
    """Closed form on three minus-side elements."""
    return bg.H.contract(x).contract(y).contract(w).get(())


# -- torsion-free families ---------------------------------------------

def basis_sections(bg):
    """Constant frame: coordinate vectors, gauge basis, coordinate
    one-forms, in that order."""
    secs = []
    lie = bg.lie
    for i in range(DIM):
        x = [FIELD_ZERO] * DIM
        x[i] = _as_field(ONE)
        secs.append(GSection(x, lie.zero_elt(), Form.zero(1)))
    for a in range(lie.dim):
        r = [ZERO] * lie.dim
        r[a] = ONE
        secs.append(GSection([FIELD_ZERO] * DIM, r, Form.zero(1)))
    for i in range(DIM):
        secs.append(GSection([FIELD_ZERO] * DIM, lie.zero_elt(),
                             Form.monomial((i,))))
    return secs


def dual_section(bg, vals):
    """Section s with <s, frame_k> = vals[k] (frame as above)."""
    lie = bg.lie
    two = Scalar(2)
    xi = one_form([two * v for v in vals[:DIM]])
    r = lie.pair_dual(vals[DIM:DIM + lie.dim])
    x = [two * v for v in vals[DIM + lie.dim:]]
    return GSection(x, r, xi)


def levi_civita_subtraction(bg, m, e, ep):
    """Definition route: Bismut minus a third of the dualized torsion."""
    if not m.is_canonical():
        # work in the metric's own frame: brackets, pairing and the
        # torsion all conjugate exactly under the twist
        t = m.twist()
        ti = t.inverse()
        bgp = ti.shifted_background(bg)
        m0 = GenMetric(m.lie, g=m.g)
        return t.apply(bg, levi_civita_subtraction(bgp, m0, ti.apply(bg, e),
                                                   ti.apply(bg, ep)))
    d12 = bismut(bg, m, e, ep)
    core = d12 - bismut(bg, m, ep, e) - skew_bracket(bg, e, ep)
    vals = []
    for s in basis_sections(bg):
        t = pairing(bg, core, s)
        t = t + HALF * (pairing(bg, bismut(bg, m, s, e), ep)
                        - pairing(bg, bismut(bg, m, s, ep), e))
        vals.append(t)
    return d12 - dual_section(bg, vals).scale(THIRD)


def levi_civita(bg, m, e, ep):
    """Torsion-free connection; componentwise route, conjugating for
    twisted splittings.  Agrees with the subtraction route."""
    if m.is_canonical():
        return levi_civita_explicit(bg, m, e, ep)
    t = m.twist()
    ti = t.inverse()
    bgp = ti.shifted_background(bg)
    m0 = GenMetric(m.lie, g=m.g)
    return t.apply(bg, levi_civita_explicit(bgp, m0, ti.apply(bg, e),
                                            ti.apply(bg, ep)))


def levi_civita_explicit(bg, m, e, ep):
    """Componentwise torsion-free formulas; canonical splitting only."""
    if not m.is_canonical():
        raise ValueError("componentwise form needs the canonical splitting")
    e_p, e_m = project_pm(bg, m, e)
    f_p, f_m = project_pm(bg, m, ep)
    x, r = e_p.x, e_p.r
    y = e_m.x
    z, t = f_p.x, f_p.r
    w = f_m.x
    # ++ : 2Pi+(nabla^{1/3}_X Z + (2/3)g^{-1}c(i_X F, t)
    #          + (1/3)g^{-1}c(i_Z F, r))
    #      + d^theta_X t - (2/3)F(X, Z) - (1/3)c^{-1}c(r, [t, .])
    v = _vec_sum(_nabla(bg, m, x, z, SIXTH),
                 metric_inv_apply(m, _pair_f(bg, x, t) * TWO_THIRDS
                                  + _pair_f(bg, z, r) * THIRD))
    radj = bg.d_theta_along(x, t)
    fxz = bg.f_eval(x, z)
    cb = _cinv_bracket_pairing(bg, r, t)
    radj = [a - TWO_THIRDS * b - THIRD * c
            for a, b, c in zip(radj, fxz, cb)]
    out = _two_pi_plus(m, v, radj)
    # -+ and +- agree with the Bismut map
    v = _vec_sum(_nabla(bg, m, y, z, HALF),
                 metric_inv_apply(m, _pair_f(bg, y, t)))
    radj = [a - b for a, b in zip(bg.d_theta_along(y, t), bg.f_eval(y, z))]
    out = out + _two_pi_plus(m, v, radj)
    v = _vec_sum(_nabla(bg, m, x, w, -HALF),
                 metric_inv_apply(m, _pair_f(bg, w, r)))
    out = out + _two_pi_minus(m, v)
    # -- : 2Pi-(nabla^{-1/3}_Y W)
    out = out + _two_pi_minus(m, _nabla(bg, m, y, w, -SIXTH))
    return out


def d_zero(bg, m, e, ep):
    """Alternative torsion-free family: subtract the difference twist.

    The twist is a fixed tensor built from the background curvature in
    the background splitting; only the projections see the metric.
    """
    e_p = project_pm(bg, m, e)[0]
    f_p = project_pm(bg, m, ep)[0]
    val = chi_err_apply(bg, e_p.x, e_p.r, f_p.x, f_p.r)
    return levi_civita(bg, m, e, ep) - project_pm(bg, m, val)[0].scale(THIRD)


def d_phi_form(bg, m, e, ep, vf):
    """Torsion-free family weighted by a one-form."""
    out = levi_civita(bg, m, e, ep)
    if vf.is_zero():
        return out
    e_p, e_m = project_pm(bg, m, e)
    f_p, f_m = project_pm(bg, m, ep)
    phi_sec = GSection([FIELD_ZERO] * DIM, bg.lie.zero_elt(), vf)
    two = Scalar(2)
    cp = ONE / Scalar(3 * (rank_plus(bg) - 1))
    val = e_p.scale(vf.contract(f_p.x).get(()))
    val = val - phi_sec.scale(two * pairing(bg, e_p, f_p))
    out = out + project_pm(bg, m, val)[0].scale(cp)
    cm = ONE / Scalar(3 * (rank_minus(bg) - 1))
    val = e_m.scale(vf.contract(f_m.x).get(()))
    val = val - phi_sec.scale(two * pairing(bg, e_m, f_m))
    out = out + project_pm(bg, m, val)[1].scale(cm)
    return out


# Weight one-form for the dilaton connection, as a multiple of dphi.
# Torsion-freeness and metric compatibility hold for any multiple; the
# value -6 is pinned by the Dirac-type identity on the minus bundle
# (see killing.equivalence_defects and the tests there).
DILATON_WEIGHT = Scalar(-6)


def d_phi(bg, m, e, ep, phi):
    """Dilaton family: the weight one-form is DILATON_WEIGHT * dphi."""
    return d_phi_form(bg, m, e, ep, function_differential(phi) * DILATON_WEIGHT)


# -- naturality --------------------------------------------------------

CONNECTIONS = {
    "bismut": bismut,
    "lc": levi_civita,
    "d0": d_zero,
}


def transformed_metric(bg, m, sh):
    """Metric whose plus bundle is the shear image of m's."""
    comp = sh.compose(bg, m.twist())
    return GenMetric(m.lie, g=m.g, b=-comp.B, a=[-f for f in comp.a])


def naturality_residual(bg, m, sh, family, e, ep):
    """Push the connection through the shear and compare with the
    connection of the moved metric."""
    f_res, h_res = sh.condition_residuals(bg)
    if not (all(f.is_zero() for f in f_res) and h_res.is_zero()):
        raise NotAutomorphism("shear does not preserve the background")
    conn = CONNECTIONS[family]
    m2 = transformed_metric(bg, m, sh)
    inv = sh.inverse()
    pushed = sh.apply(bg, conn(bg, m, inv.apply(bg, e), inv.apply(bg, ep)))
    return conn(bg, m2, e, ep) - pushed


def d_zero_defect(bg, m, sh, e, ep):
    """Expected naturality failure of the alternative family.

    Built from the shear's gauge leg against the curvature, projected
    with the moved metric.
    """
    lie = bg.lie
    m2 = transformed_metric(bg, m, sh)
    e_p = project_pm(bg, m2, e)[0]
    f_p = project_pm(bg, m2, ep)[0]
    x, y = e_p.x, f_p.x
    ax = [f.contract(x).get(()) for f in sh.a]
    ay = [f.contract(y).get(()) for f in sh.a]
    delta = lf_pair_elt(lie, bg.f_eval(x, y), sh.a) * Scalar(-2)
    delta = delta + lf_pair_elt(lie, ax, lf_contract(bg.F, y)) * Scalar(4)
    delta = delta + lf_pair_elt(lie, ay, lf_contract(bg.F, x)) * Scalar(2)
    val = GSection([FIELD_ZERO] * DIM, lie.zero_elt(), delta)
    return project_pm(bg, m2, val)[0].scale(-THIRD)
