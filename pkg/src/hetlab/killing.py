"""Killing spinor system on the flat six-torus and its hermitian
counterpart.

The plus bundle of a transitive algebroid with a generalized metric
carries a torsion-free dilaton connection.  Acting with it on spinors
for the minus bundle produces four residuals: a gaugino equation
F . eta = 0, a gravitino equation nabla^- eta = 0, a dilatino equation
(H + 2 dphi) . eta = 0 and the flux Bianchi identity.  The same data
can be packaged as hermitian geometry (a complex volume form, a
hermitian form and two unitary connections) subject to holomorphy,
stability, a conformally balanced condition and an anomaly equation.
This module evaluates both residual sets exactly and checks the
spinor-to-hermitian dictionary.

Spinor operators are only defined over the canonical orthonormal
splitting; twisted or field-valued metrics must be transported to the
canonical one first (see the naturality tests).
"""

from .scalars import Scalar, ZERO, ONE, HALF, I
from .fourier import FieldScalar
from .forms import (DIM, Form, hodge_star, lambda_contraction,
                    vol_coefficient)
from .courant import (Background, GSection, function_differential,
                      vector_apply)
from .complexgeom import (DegenerateOmega, cx_from_omega,
                          standard_kaehler_form, standard_volume_form)
from .clifford import CliffordElement, Spinor, act, so6_embed
from . import genmetric as GM
from . import lie as lie_mod
from .lie import lf_pair_wedge, lf_zero

FIELD_ZERO = FieldScalar()
TWO = Scalar(2)


class NonConstantMetric(ValueError):
    """The spinor model needs the constant orthonormal metric."""


def _require_orthonormal(m):
    # the Clifford module is tied to the standard frame; reject
    # anything that moves the minus bundle away from it
    for i in range(DIM):
        for j in range(DIM):
            v = m.g[i][j]
            if isinstance(v, FieldScalar):
                if not v.is_constant():
                    raise NonConstantMetric("metric entries must be constant")
                v = v.constant_coefficient()
            want = ONE if i == j else ZERO
            if not (v - want).is_zero():
                raise NonConstantMetric("metric must be the identity")
    if not m.is_canonical():
        raise NonConstantMetric(
            "twisted splittings are handled by transporting to the "
            "canonical one")


def _unit(k):
    x = [ZERO] * DIM
    x[k] = ONE
    return x


def minus_frame(m, k):
    return GM.minus_element(m, _unit(k))


def plus_vector_frame(m, k):
    # e_k + e^k, no gauge part
    return GM.plus_element(m, _unit(k), m.lie.zero_elt())


def gauge_frame(bg, a):
    elt = bg.lie.zero_elt()
    elt[a] = ONE
    return GSection([FIELD_ZERO] * DIM, elt, Form.zero(1))


def _clifford(form):
    return CliffordElement.from_form(form.to_real() if form.cx else form)


# -- classical two-parameter connections -------------------------------

def nabla_pm_vector(h, x, y, sign=-1):
    """nabla^{+-} on vector fields for the flat metric.

    Components of nabla_x y + (sign/2) g^{-1} H(x, y, .); the pairing
    convention is g(nabla^-_x y, z) - g(nabla_x y, z) = -H(x,y,z)/2.
    """
    hxy = h.contract(x).contract(y)
    w = HALF if sign > 0 else -HALF
    out = []
    for z in range(DIM):
        val = vector_apply(x, y[z])
        c = hxy.get((z,))
        out.append(val + c * w)
    return out


def nabla_pm(h, k, eta, sign=-1):
    """nabla^{+-} on spinors along the k-th coordinate direction.

    For sign=-1 this is d_k eta + (1/2) (i_k H) . eta, the lift whose
    plus-direction generalized derivative it matches exactly.
    """
    w = HALF if sign < 0 else -HALF
    return eta.partial(k) + act(_clifford(h.contract(_unit(k))),
                                eta).scale(w)


def dilatino_element(h, phi):
    """Clifford element of the odd form H + 2 dphi."""
    dphi = function_differential(phi)
    return (CliffordElement.from_form(h.to_real() if h.cx else h)
            + CliffordElement.from_form(dphi * TWO))


# -- spin lift of generalized connections ------------------------------

def spin_matrix(bg, m, conn, direction):
    """Minus-frame connection coefficients along a direction.

    Column j of the result expands conn(direction, b_j) in the b_i;
    the output of the connection must stay inside the minus bundle.
    """
    cols = []
    for j in range(DIM):
        out = conn(bg, m, direction, minus_frame(m, j))
        if not bg.lie.is_zero_elt(out.r):
            raise ValueError("connection output has a gauge part")
        dual = Form.zero(1)
        for i in range(DIM):
            dual = dual + Form.monomial((i,), out.x[i])
        xi = out.xi.to_real() if out.xi.cx else out.xi
        if not (xi + dual).is_zero():
            raise ValueError("connection output leaves the minus bundle")
        cols.append(list(out.x))
    return [[cols[j][i] for j in range(DIM)] for i in range(DIM)]


def spin_lift(bg, m, conn, direction):
    """Lifted Clifford element of the minus-frame coefficient matrix.

    The frame satisfies <b_i, b_j> = -delta_ij, which doubles the
    coefficients relative to the endomorphism lift.
    """
    mat = spin_matrix(bg, m, conn, direction)
    doubled = [[TWO * mat[r][c] for c in range(DIM)] for r in range(DIM)]
    return so6_embed(doubled)


def _anchor_partials(direction, eta):
    out = None
    for k in range(DIM):
        w = direction.x[k]
        if isinstance(w, FieldScalar):
            if w.is_zero():
                continue
            if not w.is_constant():
                raise ValueError("direction anchor must be constant")
            w = w.constant_coefficient()
        if w.is_zero():
            continue
        term = eta.partial(k).scale(w)
        out = term if out is None else out + term
    return out if out is not None else Spinor()


def spin_derivative(bg, m, conn, direction, eta):
    """Generalized derivative of a spinor along a constant direction."""
    out = act(spin_lift(bg, m, conn, direction), eta)
    return out + _anchor_partials(direction, eta)


class SpinConnection:
    """Precomputed spinor lift of the dilaton connection.

    The lifted Clifford elements do not depend on the spinor, so one
    instance serves any number of spinor evaluations against a fixed
    background and dilaton.
    """

    def __init__(self, bg, m, phi):
        _require_orthonormal(m)
        self.bg = bg
        self.m = m
        self.phi = phi
        conn = lambda b, mm, e, ep: GM.d_phi(b, mm, e, ep, phi)
        self.plus_vec = [spin_lift(bg, m, conn, plus_vector_frame(m, k))
                         for k in range(DIM)]
        self.gauge = [spin_lift(bg, m, conn, gauge_frame(bg, a))
                      for a in range(bg.lie.dim)]
        self.minus = [spin_lift(bg, m, conn, minus_frame(m, k))
                      for k in range(DIM)]
        self.h_contract = [_clifford(bg.H.contract(_unit(k)))
                           for k in range(DIM)]
        self.f_cliff = [_clifford(f) for f in bg.F]
        self.dilatino = dilatino_element(bg.H, phi)

    def nabla_minus(self, k, eta):
        return eta.partial(k) + act(self.h_contract[k], eta).scale(HALF)


# -- the Killing system ------------------------------------------------

class KillingData:
    """Background, metric, dilaton and spinor, with the SU(3) data
    used by the hermitian dictionary."""

    def __init__(self, bg, m, phi, eta, omega3=None, omega=None):
        if m.lie is not bg.lie:
            raise ValueError("metric and background gauge algebras differ")
        self.bg = bg
        self.m = m
        self.phi = phi
        self.eta = eta
        self.omega3 = omega3 if omega3 is not None else standard_volume_form()
        self.omega = omega if omega is not None else standard_kaehler_form()


def killing_residuals(kd):
    """Gaugino, gravitino, dilatino and Bianchi residuals.

    Returns (r1, r2, r3, r4): r1 lists F^a . eta over the gauge basis,
    r2 lists nabla^-_k eta over the coordinate frame, r3 is
    (H + 2 dphi) . eta and r4 is dH - c(F ^ F).
    """
    _require_orthonormal(kd.m)
    bg, eta = kd.bg, kd.eta
    r1 = [act(_clifford(f), eta) for f in bg.F]
    r2 = [nabla_pm(bg.H, k, eta, -1) for k in range(DIM)]
    r3 = act(dilatino_element(bg.H, kd.phi), eta)
    r4 = bg.bianchi_h_residual()
    return r1, r2, r3, r4


def killing_equivalence(kd, sc=None):
    """Defects of the dilaton connection against the classical system.

    defect_plus lists, per plus direction (six vector then gauge), the
    difference between the generalized spinor derivative and its
    classical value (nabla^-_k eta, resp. -c(F . eta, t_a)).
    defect_minus is the slashed minus-side derivative minus the
    slashed nabla^-, plus (H + 2 dphi) . eta; it vanishes exactly when
    the dilaton weight carries the sign fixed in the metric module.
    """
    if sc is None:
        sc = SpinConnection(kd.bg, kd.m, kd.phi)
    bg, eta = kd.bg, kd.eta
    defect_plus = []
    for k in range(DIM):
        lhs = act(sc.plus_vec[k], eta) + eta.partial(k)
        defect_plus.append(lhs - sc.nabla_minus(k, eta))
    for a in range(bg.lie.dim):
        lhs = act(sc.gauge[a], eta)
        rhs = Spinor()
        for b in range(bg.lie.dim):
            z = bg.lie.gram[b][a]
            if z.is_zero() or bg.F[b].is_zero():
                continue
            rhs = rhs - act(sc.f_cliff[b], eta).scale(z)
        defect_plus.append(lhs - rhs)
    slashed = Spinor()
    for k in range(DIM):
        dk = act(sc.minus[k], eta) + eta.partial(k)
        slashed = slashed + act(CliffordElement.monomial((k,)),
                                dk - sc.nabla_minus(k, eta))
    defect_minus = slashed + act(sc.dilatino, eta)
    return defect_plus, defect_minus


# -- dilatino dictionary -----------------------------------------------

def dilatino_parts(h, phi):
    """Holomorphic residual pair of the dilatino equation.

    Returns (h^{0,3}, i Lambda h^{1,2} + 2 (dphi)^{0,1}) for the
    standard structure; both vanish exactly when (h + 2 dphi) . 1
    does.
    """
    dphi = function_differential(phi)
    res1 = h.proj(0, 3)
    res2 = (lambda_contraction(h.proj(1, 2), standard_kaehler_form()) * I
            + dphi.proj(0, 1) * TWO)
    return res1, res2


def dilatino_translation(h, phi):
    """Component dictionary between (h + 2 dphi) . 1 and the residual
    pair.

    Returns eight coefficient differences, one per spinor component:
    comps[7] - 8 res1(dzbar_123), comps[2^j] - 2 res2(dzbar_j) and the
    four even components, which must vanish identically.  All-zero
    output witnesses the dictionary in both directions.
    """
    r = act(dilatino_element(h, phi), Spinor.unit())
    res1, res2 = dilatino_parts(h, phi)
    r1cx = res1.to_cx()
    r2cx = res2.to_cx()
    diffs = [r.comps[m] for m in (0, 3, 5, 6)]
    c = r1cx.coeffs.get((3, 4, 5), ZERO)
    diffs.append(r.comps[7] - Scalar(8) * c)
    for j in range(3):
        c = r2cx.coeffs.get((j + 3,), ZERO)
        diffs.append(r.comps[1 << j] - TWO * c)
    return diffs


# -- hermitian side ----------------------------------------------------

class GaugeField:
    """Lie-valued connection one-form."""

    def __init__(self, lie, conn=None):
        self.lie = lie
        self.conn = conn if conn is not None else lf_zero(lie, 1)
        if len(self.conn) != lie.dim:
            raise ValueError("connection components do not match the algebra")

    def curvature(self):
        return lie_mod.curvature(self.lie, self.conn)


def norm_omega_sq(omega3, omega):
    """Exact squared norm from 6i O ^ conj(O) = |O|^2 omega^3.

    Both top coefficients must be constant; use the field variant for
    sampled checks otherwise.
    """
    num = vol_coefficient(omega3.wedge(omega3.conjugate()))
    den = vol_coefficient(omega.wedge(omega).wedge(omega))
    if isinstance(den, FieldScalar):
        if not den.is_constant():
            raise ValueError("omega^3 must have constant coefficient")
        den = den.constant_coefficient()
    if den.is_zero():
        raise DegenerateOmega("hermitian form has zero volume")
    if isinstance(num, FieldScalar):
        if not num.is_constant():
            raise ValueError("norm is not constant; sample it instead")
        num = num.constant_coefficient()
    return num * Scalar(0, 0, 6) / den


def norm_omega_sq_field(omega3, omega):
    """Squared norm as a field, for backgrounds where it varies."""
    num = vol_coefficient(omega3.wedge(omega3.conjugate()))
    den = vol_coefficient(omega.wedge(omega).wedge(omega))
    if isinstance(den, FieldScalar):
        if not den.is_constant():
            raise ValueError("omega^3 must have constant coefficient")
        den = den.constant_coefficient()
    if den.is_zero():
        raise DegenerateOmega("hermitian form has zero volume")
    if not isinstance(num, FieldScalar):
        num = FieldScalar.constant(num)
    return num * (Scalar(0, 0, 6) / den)


class StromingerState:
    """Hermitian package: complex volume form, hermitian form, gauge
    and tangent connections, anomaly coupling.

    The complex structure is recovered from the volume form; omega
    must be of type (1,1) for it and alpha must be a positive real.
    """

    def __init__(self, omega3, omega, gauge, tangent, alpha=ONE):
        self.coframe, self.jmat = cx_from_omega(omega3)
        om = omega.to_real() if omega.cx else omega
        for p, q in ((2, 0), (0, 2)):
            if not om.proj(p, q, self.coframe).is_zero():
                raise ValueError("hermitian form is not (1,1)")
        if not alpha.is_real() or alpha.float_complex().real <= 0:
            raise ValueError("anomaly coupling must be a positive real")
        self.omega3 = omega3
        self.omega = om
        self.gauge = gauge
        self.tangent = tangent
        self.alpha = alpha


def strominger_residuals(state):
    """The six residuals of the coupled hermitian system.

    Exact path; needs a constant norm for the conformally balanced
    line (use dilatino_star_residual to sample otherwise).  Keys:
    f_02, f_hym, r_02 and r_hym are lists over the respective gauge
    bases; dilatino and anomaly are single forms.  For constant norm
    the dilatino entry is d(|O| omega^2), dropping the positive norm
    factor when it has no exact square root.
    """
    cf = state.coframe
    fcurv = state.gauge.curvature()
    rcurv = state.tangent.curvature()
    om2 = state.omega.wedge(state.omega)
    out = {}
    out["f_02"] = [f.proj(0, 2, cf) for f in fcurv]
    out["f_hym"] = [f.wedge(om2) for f in fcurv]
    out["r_02"] = [r.proj(0, 2, cf) for r in rcurv]
    out["r_hym"] = [r.wedge(om2) for r in rcurv]
    nsq = norm_omega_sq(state.omega3, state.omega)
    root = nsq.sqrt_real()
    conf = om2.d()
    if root is not None and not root.is_zero():
        conf = conf * root
    out["dilatino"] = conf
    pont = (lf_pair_wedge(state.tangent.lie, rcurv, rcurv)
            + lf_pair_wedge(state.gauge.lie, fcurv, fcurv))
    out["anomaly"] = state.omega.dc(cf).d() - pont * state.alpha
    return out


def _coeff_float(c, point):
    if isinstance(c, FieldScalar):
        return c.float_at(point)
    return c.float_complex()


def codifferential(form, gram=None):
    """-*d* for the flat orthonormal metric."""
    g = gram if gram is not None else GM.identity_metric()
    return hodge_star(hodge_star(form, g).d(), g) * (-ONE)


def dilatino_star_residual(omega3, omega, points):
    """Sampled sup norm of d*omega - i(dbar - del) log|O|.

    This is the codifferential form of the conformally balanced line;
    it covers backgrounds with non-constant norm, where the exact
    route is unavailable.  Points are 6-tuples of floats.
    """
    nsq = norm_omega_sq_field(omega3, omega)
    dn = [nsq.partial(k) for k in range(DIM)]
    codiff = codifferential(omega.to_real() if omega.cx else omega)
    worst = 0.0
    for p in points:
        nval = nsq.float_at(p).real
        if nval <= 0:
            raise DegenerateOmega("norm is not positive at a sample point")
        for k in range(DIM):
            cd = _coeff_float(codiff.get((k,)), p)
            # i(dbar - del) f has components (-d_{k+3} f, +d_k f)
            # for real f; here f = log|O| = log(nsq)/2
            if k < 3:
                lg = -dn[k + 3].float_at(p) / (2.0 * nval)
            else:
                lg = dn[k - 3].float_at(p) / (2.0 * nval)
            worst = max(worst, abs(cd - lg))
    return worst


def make_flat_cy_background():
    """The torsion-free reference solution.

    Returns (state, killing): standard volume and hermitian forms,
    flat su(2) and u(3) connections, zero flux and dilaton, unit
    spinor.  Every residual of both systems vanishes on it.
    """
    omega3 = standard_volume_form()
    omega = standard_kaehler_form()
    gauge = GaugeField(lie_mod.su2())
    tangent = GaugeField(lie_mod.u3())
    state = StromingerState(omega3, omega, gauge, tangent, alpha=ONE)
    bg = Background(gauge.lie)
    m = GM.GenMetric(bg.lie)
    kd = KillingData(bg, m, FieldScalar(), Spinor.unit(),
                     omega3=omega3, omega=omega)
    return state, kd
