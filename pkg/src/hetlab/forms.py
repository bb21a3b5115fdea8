"""Sparse exterior algebra on the 6-torus.

A Form of degree p stores {strictly increasing index tuple: coefficient}
where coefficients are Scalar (constant) or FieldScalar (trig field).
Real coordinate indices 0..5 mean (x1, x2, x3, y1, y2, y3) with
z_j = x_j + i y_j.  A form can also live in the complex coframe basis
(cx=True) where indices 0..2 are dz_1..dz_3 and 3..5 are dzbar_1..dzbar_3;
non-standard complex structures supply their own coframe matrices.

All operations are exact.
"""

from __future__ import annotations

from itertools import combinations

from .scalars import Scalar, ZERO, ONE, HALF, I, _q2_nonneg
from .fourier import FieldScalar
from . import linalg


class NoMetric(Exception):
    """An operation that needs a metric was called without one."""


class DegenerateOmegaMetric(Exception):
    """The hermitian form fails omega^3 != 0."""


class NegativeNormSquared(Exception):
    """6i O ^ conj(O) / omega^3 came out negative (incompatible
    orientation)."""


DIM = 6


def _sort_sign(idx):
    """Sort distinct indices; returns (tuple, sign) or (None, 0) on repeat."""
    lst = list(idx)
    if len(set(lst)) != len(lst):
        return None, 0
    sign = 1
    # insertion sort, counting swaps
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


def _is_zero_coeff(c):
    return c.is_zero()


def _conj_coeff(c):
    return c.conjugate()


def _scale(c, z):
    return c * z


class Form:
    __slots__ = ("degree", "coeffs", "cx")

    def __init__(self, degree, coeffs=None, cx=False):
        self.degree = degree
        self.coeffs = coeffs if coeffs is not None else {}
        self.cx = cx

    # -- construction -------------------------------------------------

    @staticmethod
    def zero(degree, cx=False):
        return Form(degree, {}, cx)

    @staticmethod
    def monomial(idx, coeff=ONE, cx=False):
        key, sign = _sort_sign(tuple(idx))
        if key is None:
            return Form(len(idx), {}, cx)
        if sign < 0:
            coeff = -coeff
        out = Form(len(key), {}, cx)
        out._add(key, coeff)
        return out

    @staticmethod
    def scalar(coeff, cx=False):
        out = Form(0, {}, cx)
        out._add((), coeff)
        return out

    def _add(self, key, coeff):
        old = self.coeffs.get(key)
        tot = coeff if old is None else old + coeff
        if _is_zero_coeff(tot):
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = tot

    def copy(self):
        return Form(self.degree, dict(self.coeffs), self.cx)

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def get(self, idx):
        key, sign = _sort_sign(tuple(idx))
        if key is None:
            return ZERO
        c = self.coeffs.get(key)
        if c is None:
            return ZERO
        return c if sign > 0 else -c

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.cx != other.cx:
            raise ValueError("comparing forms in different bases")
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("forms are mutable; not hashable")

    # -- linear structure ---------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("adding forms of different degree")
        if self.cx != other.cx:
            raise ValueError("adding forms in different bases")
        out = Form(other.degree if self.is_zero() else self.degree,
                   dict(self.coeffs), self.cx)
        for k, c in other.coeffs.items():
            out._add(k, c)
        return out

    def __neg__(self):
        return Form(self.degree, {k: -c for k, c in self.coeffs.items()}, self.cx)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, z):
        if isinstance(z, (int, Scalar, FieldScalar)):
            if isinstance(z, int):
                z = Scalar(z)
            out = Form(self.degree, {}, self.cx)
            for k, c in self.coeffs.items():
                out._add(k, _scale(c, z))
            return out
        return NotImplemented

    __rmul__ = __mul__

    # -- exterior operations ------------------------------------------

    def wedge(self, other):
        if self.cx != other.cx:
            raise ValueError("wedging forms in different bases")
        out = Form(self.degree + other.degree, {}, self.cx)
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                key, sign = _sort_sign(k1 + k2)
                if key is None:
                    continue
                c = c1 * c2
                out._add(key, c if sign > 0 else -c)
        return out

    def contract(self, vec):
        """Interior product with a vector given by 6 frame components.

        The components refer to the coordinate frame matching the basis
        of this form (real frame for cx=False).
        """
        out = Form(self.degree - 1, {}, self.cx)
        for key, c in self.coeffs.items():
            for t, idx in enumerate(key):
                v = vec[idx]
                if isinstance(v, int):
                    v = Scalar(v)
                if isinstance(v, Scalar) and v.is_zero():
                    continue
                if isinstance(v, FieldScalar) and v.is_zero():
                    continue
                rest = key[:t] + key[t + 1:]
                val = c * v
                out._add(rest, val if t % 2 == 0 else -val)
        return out

    def d(self):
        """Exterior derivative (real basis only)."""
        if self.cx:
            raise ValueError("take d in the real basis")
        out = Form(self.degree + 1, {}, False)
        for key, c in self.coeffs.items():
            if not isinstance(c, FieldScalar):
                continue  # constant coefficient
            for j in range(DIM):
                dc = c.partial(j)
                if dc.is_zero():
                    continue
                nk, sign = _sort_sign((j,) + key)
                if nk is None:
                    continue
                out._add(nk, dc if sign > 0 else -dc)
        return out

    def lie(self, vec):
        """Cartan formula Lie derivative along a real-frame vector."""
        return self.d().contract(vec) + self.contract(vec).d()

    def conjugate(self):
        if self.cx:
            # dzbar is the conjugate of dz: swap index blocks
            out = Form(self.degree, {}, True)
            for key, c in self.coeffs.items():
                nk, sign = _sort_sign(tuple((i + 3) % 6 for i in key))
                cc = _conj_coeff(c)
                out._add(nk, cc if sign > 0 else -cc)
            return out
        return Form(self.degree,
                    {k: _conj_coeff(c) for k, c in self.coeffs.items()}, False)

    def real_part(self):
        return (self + self.conjugate()) * HALF

    def imag_part(self):
        """The form beta with self = real_part + i*beta."""
        return (self - self.conjugate()) * (HALF * -I)

    def map_coeffs(self, fn):
        out = Form(self.degree, {}, self.cx)
        for k, c in self.coeffs.items():
            out._add(k, fn(c))
        return out

    # -- basis changes ------------------------------------------------

    def change_basis(self, mat, to_cx):
        """Rewrite via one-form substitution e^old = sum mat[old][new] f^new."""
        out = Form(self.degree, {}, to_cx)
        for key, c in self.coeffs.items():
            partial = {(): c}
            for idx in key:
                nxt = {}
                row = mat[idx]
                for mono, acc in partial.items():
                    for newi in range(DIM):
                        z = row[newi]
                        if z.is_zero():
                            continue
                        nk, sign = _sort_sign(mono + (newi,))
                        if nk is None:
                            continue
                        add = acc * z if sign > 0 else -(acc * z)
                        cur = nxt.get(nk)
                        nxt[nk] = add if cur is None else cur + add
                partial = nxt
            for mono, acc in partial.items():
                if not _is_zero_coeff(acc):
                    out._add(mono, acc)
        return out

    def pullback_affine(self, mat, tau_quarters):
        """Pullback along x -> M x + (pi/2) tau, M integer, tau integer."""
        if self.cx:
            raise ValueError("pull back in the real basis")
        smat = [[Scalar(mat[r][c]) for c in range(DIM)] for r in range(DIM)]
        moved = self.map_coeffs(
            lambda c: c.pullback_affine(mat, tau_quarters)
            if isinstance(c, FieldScalar) else c)
        return moved.change_basis(smat, False)

    def to_cx(self, coframe=None):
        if self.cx:
            return self
        cf = coframe if coframe is not None else STANDARD_COFRAME
        return self.change_basis(cf.real_to_cx, True)

    def to_real(self, coframe=None):
        if not self.cx:
            return self
        cf = coframe if coframe is not None else STANDARD_COFRAME
        return self.change_basis(cf.cx_to_real, False)

    # -- complex types ------------------------------------------------

    def pq_parts(self, coframe=None):
        """Split by (p, q) type; returns {(p, q): Form in input basis}."""
        cx = self.to_cx(coframe)
        buckets = {}
        for key, c in cx.coeffs.items():
            p = sum(1 for i in key if i < 3)
            q = len(key) - p
            b = buckets.setdefault((p, q), Form(self.degree, {}, True))
            b._add(key, c)
        if not self.cx:
            return {pq: f.to_real(coframe) for pq, f in buckets.items()}
        return buckets

    def proj(self, p, q, coframe=None):
        parts = self.pq_parts(coframe)
        return parts.get((p, q), Form.zero(self.degree, self.cx))

    def j_apply(self, coframe=None):
        """Complex-structure action: (p,q) parts scale by (-1)^(p+q) i^(p-q)."""
        out = Form.zero(self.degree, self.cx)
        for (p, q), part in self.pq_parts(coframe).items():
            out = out + part * _j_factor(p, q)
        return out

    def j_unapply(self, coframe=None):
        out = Form.zero(self.degree, self.cx)
        for (p, q), part in self.pq_parts(coframe).items():
            out = out + part * _j_factor(p, q).inverse()
        return out

    def dc(self, coframe=None):
        """The J-twisted derivative J d J^{-1}."""
        return self.j_unapply(coframe).d().j_apply(coframe)

    def del_holo(self, coframe=None):
        """(1,0)-part derivative, summed over pure-type pieces."""
        me = self.to_real(coframe)
        out = Form.zero(self.degree + 1, False)
        for (p, q), part in me.pq_parts(coframe).items():
            out = out + part.d().proj(p + 1, q, coframe)
        return out.to_cx(coframe) if self.cx else out

    def del_anti(self, coframe=None):
        me = self.to_real(coframe)
        out = Form.zero(self.degree + 1, False)
        for (p, q), part in me.pq_parts(coframe).items():
            out = out + part.d().proj(p, q + 1, coframe)
        return out.to_cx(coframe) if self.cx else out

    def __repr__(self):
        flavor = "cx" if self.cx else "re"
        items = ", ".join("%r" % (k,) for k in sorted(self.coeffs))
        return "Form<%d,%s>{%s}" % (self.degree, flavor, items)


def _j_factor(p, q):
    # J acts on a (p,q)-form as (-1)^(p+q) i^(p-q)
    f = ONE if (p + q) % 2 == 0 else -ONE
    k = (p - q) % 4
    return f * (ONE, I, -ONE, -I)[k]


class Coframe:
    """Change-of-basis data between the real coframe and a complex one.

    real_to_cx[j][c]: coefficient of complex coframe element c in e^j.
    cx_to_real[c][j]: coefficient of e^j in complex coframe element c.
    Rows 0..2 of cx_to_real are the (1,0)-forms, rows 3..5 their
    conjugates.
    """

    __slots__ = ("cx_to_real", "real_to_cx", "jmat")

    def __init__(self, cx_to_real, jmat=None):
        self.cx_to_real = cx_to_real
        self.real_to_cx = linalg.inverse(cx_to_real)
        self.jmat = jmat


def _standard_coframe():
    rows = linalg.zeros(DIM, DIM)
    for j in range(3):
        rows[j][j] = ONE
        rows[j][j + 3] = I
        rows[j + 3][j] = ONE
        rows[j + 3][j + 3] = -I
    jm = linalg.zeros(DIM, DIM)
    for j in range(3):
        # J dx_j = ... as endomorphism of vectors: J(d/dx_j) = d/dy_j
        jm[j + 3][j] = ONE
        jm[j][j + 3] = -ONE
    return Coframe(rows, jm)


STANDARD_COFRAME = _standard_coframe()

VOL_KEY = (0, 1, 2, 3, 4, 5)
# orientation is the complex one, dx1^dy1^dx2^dy2^dx3^dy3, which is
# minus the sorted monomial e^012345
VOL_SIGN = -1


def vol_form():
    return Form.monomial(VOL_KEY, Scalar(VOL_SIGN))


def vol_coefficient(form6):
    """Coefficient of the oriented volume dx1^dy1^...^dy3."""
    if form6.cx:
        form6 = form6.to_real()
    c = form6.get(VOL_KEY)
    return c * Scalar(VOL_SIGN)


def torus_integral(form6):
    """Integral over the torus in units of (2 pi)^6 (mean of the top
    coefficient)."""
    c = vol_coefficient(form6)
    if isinstance(c, FieldScalar):
        return c.constant_coefficient()
    return c


def inner_product(a, b, gram=None):
    """Pointwise hermitian inner product of same-degree forms.

    With the flat orthonormal metric (gram None) this is
    sum_I a_I conj(b_I) over real-basis monomials.
    """
    if a.cx or b.cx:
        a = a.to_real()
        b = b.to_real()
    if gram is None:
        tot = None
        for k, c in a.coeffs.items():
            bc = b.coeffs.get(k)
            if bc is None:
                continue
            term = c * _conj_coeff(bc)
            tot = term if tot is None else tot + term
        return tot if tot is not None else ZERO
    gp = _gram_on_monomials(a.degree, gram)
    keys = sorted(set(a.coeffs) | set(b.coeffs))
    tot = ZERO
    for i, ki in enumerate(keys):
        ai = a.coeffs.get(ki)
        if ai is None:
            continue
        for j, kj in enumerate(keys):
            bj = b.coeffs.get(kj)
            if bj is None:
                continue
            tot = tot + gp[ki][kj] * ai * _conj_coeff(bj)
    return tot


def norm_data(form, gram=None):
    """Exact squared norm, float norm, and exact sqrt when available.

    Returns (square, float_norm, exact_sqrt_or_None).  The square must
    be constant; field-valued forms with non-constant pointwise norm
    raise ValueError.
    """
    sq = inner_product(form, form, gram)
    if isinstance(sq, FieldScalar):
        if not sq.is_constant():
            raise ValueError("pointwise norm is not constant")
        sq = sq.constant_coefficient()
    root = sq.sqrt_real()
    return sq, float(sq.float_complex().real) ** 0.5, root


def _minor_det(g, rows, cols):
    n = len(rows)
    if n == 0:
        return ONE
    sub = [[g[r][c] for c in cols] for r in rows]
    # exact cofactor expansion; n <= 6 here
    if n == 1:
        return sub[0][0]
    tot = ZERO
    for j in range(n):
        if sub[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in sub[1:]]
        d = _det(minor)
        term = sub[0][j] * d
        tot = tot + (term if j % 2 == 0 else -term)
    return tot


def _det(m):
    if not m:
        return ONE
    return _minor_det(m, list(range(len(m))), list(range(len(m))))


def _gram_on_monomials(p, gram):
    """(e^I, e^J)_g = det of the I x J block of the inverse metric."""
    ginv = linalg.inverse(gram)
    keys = list(combinations(range(DIM), p))
    out = {}
    for ki in keys:
        row = {}
        for kj in keys:
            row[kj] = _minor_det(ginv, list(ki), list(kj))
        out[ki] = row
    return out


def hodge_star(form, gram=None):
    """Hodge star; defaults require an explicit metric."""
    if gram is None:
        raise NoMetric("hodge star needs a metric")
    if form.cx:
        form = form.to_real()
    det = _det(gram)
    if isinstance(det, FieldScalar):
        raise ValueError("metric must be constant")
    root = det.sqrt_real()
    if root is None:
        raise ValueError("metric volume is irrational")
    gp = _gram_on_monomials(form.degree, gram)
    out = Form(DIM - form.degree, {}, False)
    for key_i in combinations(range(DIM), form.degree):
        # raised-index component against the input
        comp = None
        for kj, c in form.coeffs.items():
            term = gp[key_i][kj] * c
            comp = term if comp is None else comp + term
        if comp is None:
            continue
        rest = tuple(i for i in range(DIM) if i not in key_i)
        _, sign = _sort_sign(key_i + rest)
        # e^I ^ e^rest = sign e^{0..5} = sign * VOL_SIGN * vol
        val = comp * root * Scalar(sign * VOL_SIGN)
        out._add(rest, val)
    return out


def lambda_contraction(form, omega, gram=None):
    """Adjoint of wedging with omega, via the monomial inner product.

    For the flat structure this gives Lambda(omega) = 3 on the standard
    Kaehler form.
    """
    if form.cx:
        form = form.to_real()
    if omega.cx:
        omega = omega.to_real()
    p = form.degree
    if p < 2:
        return Form.zero(p - 2) if p >= 2 else Form.zero(0)
    out = Form(p - 2, {}, False)
    if gram is not None:
        raise NotImplementedError("only the orthonormal metric is supported")
    # <Lambda a, b> = <a, omega ^ b> for all monomials b
    for key_b in combinations(range(DIM), p - 2):
        mono_b = Form.monomial(key_b, ONE)
        wb = omega.wedge(mono_b)
        comp = None
        for k, c in wb.coeffs.items():
            ac = form.coeffs.get(k)
            if ac is None:
                continue
            term = ac * _conj_coeff(c)
            comp = term if comp is None else comp + term
        if comp is not None and not _is_zero_coeff(comp):
            out._add(key_b, comp)
    return out


def harmonic_part(form, degree=None):
    """Constant Fourier mode of every coefficient.

    On the torus this is the harmonic projection: for closed input it
    returns the de Rham representative, and exact forms go to zero.
    Idempotent by construction.
    """
    if degree is not None and degree != form.degree:
        raise ValueError("degree mismatch")

    def const(c):
        if isinstance(c, FieldScalar):
            return c.constant_coefficient()
        return c

    return form.map_coeffs(const)


def _constant_top(form6, what):
    c = vol_coefficient(form6)
    if isinstance(c, FieldScalar):
        if not c.is_constant():
            raise ValueError(what + " must have a constant coefficient")
        c = c.constant_coefficient()
    return c


def norm_omega(omega3, omega):
    """Nonnegative norm of a complex volume form against omega.

    Solves 6i O ^ conj(O) = |O|^2 omega^3 for the unique nonnegative
    |O|.  Returns (square, root, approx): the exact squared norm, its
    exact square root when one exists in the scalar field (else None),
    and a float view.  Downstream formulas only ever need the square or
    a constant-norm background, so the exact root being None is fine.
    """
    num = _constant_top(omega3.wedge(omega3.conjugate()), "O ^ conj(O)")
    den = _constant_top(omega.wedge(omega).wedge(omega), "omega^3")
    if den.is_zero():
        raise DegenerateOmegaMetric("omega^3 = 0")
    sq = num * Scalar(0, 0, 6) / den
    if not sq.is_real() or not _q2_nonneg(sq.ra, sq.rb):
        raise NegativeNormSquared("6i O^conj(O) / omega^3 is not >= 0")
    return sq, sq.sqrt_real(), float(sq.float_complex().real) ** 0.5


def lambda_constant(omega3, omega, f2):
    """Proportionality constant lambda in F ^ omega^2 = lambda omega^3.

    All inputs are torus averages (constant coefficients); lambda is the
    imaginary scalar with int F ^ |O| omega^2 = lambda int |O| omega^3,
    the constant norm factor cancelling.
    """
    num = _constant_top(f2.wedge(omega).wedge(omega), "F ^ omega^2")
    den = _constant_top(omega.wedge(omega).wedge(omega), "omega^3")
    if den.is_zero():
        raise DegenerateOmegaMetric("omega^3 = 0")
    return num / den
